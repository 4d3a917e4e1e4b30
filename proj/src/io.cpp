#include "torext/io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

namespace torext {

namespace {

void strip(std::string& s) {
    while (!s.empty() && std::isspace((unsigned char)s.front())) s.erase(s.begin());
    while (!s.empty() && std::isspace((unsigned char)s.back())) s.pop_back();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else
            cur += ch;
    }
    out.push_back(cur);
    for (auto& x : out) strip(x);
    return out;
}

// recursive-descent polynomial parser
struct PolyParser {
    const std::string& s;
    size_t pos = 0;
    const Ring* R;

    PolyParser(const std::string& text, const Ring* ring) : s(text), R(ring) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }
    bool eat(char c) {
        if (peek(c)) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void err(const std::string& what) {
        fail(ErrorKind::Parse, what + " at position " + std::to_string(pos));
    }

    Polynomial parse() {
        Polynomial r = expr();
        skip_ws();
        if (pos != s.size()) err("trailing input");
        return r;
    }

    Polynomial expr() {
        Polynomial acc = eat('-') ? -term() : term();
        while (true) {
            if (eat('+'))
                acc = acc + term();
            else if (eat('-'))
                acc = acc - term();
            else
                break;
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = power();
        while (true) {
            skip_ws();
            if (eat('*')) {
                acc = acc * power();
            } else if (pos < s.size() &&
                       (std::isalpha((unsigned char)s[pos]) || s[pos] == '(')) {
                acc = acc * power();  // implicit multiplication
            } else
                break;
        }
        return acc;
    }

    Polynomial power() {
        Polynomial base = atom();
        skip_ws();
        if (eat('^')) {
            int e = integer();
            if (e < 0) err("negative exponent");
            Polynomial r = Polynomial::constant(R, 1);
            for (int i = 0; i < e; ++i) r = r * base;
            return r;
        }
        return base;
    }

    int integer() {
        skip_ws();
        if (pos >= s.size() || !std::isdigit((unsigned char)s[pos])) err("expected integer");
        long long v = 0;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
            v = v * 10 + (s[pos] - '0');
            if (v > (1ll << 40)) err("integer too large");
            ++pos;
        }
        return (int)v;
    }

    Polynomial atom() {
        skip_ws();
        if (pos >= s.size()) err("unexpected end of input");
        if (eat('(')) {
            Polynomial r = expr();
            if (!eat(')')) err("missing ')'");
            return r;
        }
        if (std::isdigit((unsigned char)s[pos]))
            return Polynomial::constant(R, integer());
        if (std::isalpha((unsigned char)s[pos])) {
            std::string name;
            while (pos < s.size() &&
                   (std::isalnum((unsigned char)s[pos]) || s[pos] == '_'))
                name += s[pos++];
            for (int i = 0; i < R->nvars; ++i)
                if (R->vars[i] == name) return Polynomial::variable(R, i);
            err("unknown variable '" + name + "'");
        }
        err("unexpected character");
    }
};

std::vector<std::string> expand_vars(const std::string& spec) {
    // "x1..x3" or explicit list already split by caller
    auto dots = spec.find("..");
    if (dots == std::string::npos) return {spec};
    std::string a = spec.substr(0, dots), b = spec.substr(dots + 2);
    // common alphabetic stem with numeric suffix
    size_t i = 0;
    while (i < a.size() && !std::isdigit((unsigned char)a[i])) ++i;
    std::string stem = a.substr(0, i);
    if (b.substr(0, stem.size()) != stem) fail(ErrorKind::Parse, "bad variable range");
    int lo = std::atoi(a.substr(i).c_str());
    int hi = std::atoi(b.substr(stem.size()).c_str());
    std::vector<std::string> out;
    for (int k = lo; k <= hi; ++k) out.push_back(stem + std::to_string(k));
    return out;
}

}  // namespace

Ring parse_ring_decl(const std::string& text) {
    // ring p=101 vars=x1,x2,x3;
    std::string s = text;
    strip(s);
    if (!s.empty() && s.back() == ';') s.pop_back();
    std::istringstream is(s);
    std::string word;
    is >> word;
    if (word != "ring") fail(ErrorKind::Parse, "ring declaration must start with 'ring'");
    uint32_t p = 0;
    std::vector<std::string> vars;
    while (is >> word) {
        if (word.rfind("p=", 0) == 0)
            p = (uint32_t)std::atoi(word.substr(2).c_str());
        else if (word.rfind("vars=", 0) == 0) {
            for (auto& v : split(word.substr(5), ','))
                for (auto& x : expand_vars(v)) vars.push_back(x);
        } else
            fail(ErrorKind::Parse, "unknown ring field '" + word + "'");
    }
    if (!p || vars.empty()) fail(ErrorKind::Parse, "ring declaration needs p= and vars=");
    return Ring::make(p, vars);
}

Ring parse_ring_flag(const std::string& text) {
    std::vector<std::string> parts = split(text, ',');
    uint32_t p = 0;
    std::vector<std::string> vars;
    for (auto& part : parts) {
        if (part.rfind("p=", 0) == 0)
            p = (uint32_t)std::atoi(part.substr(2).c_str());
        else
            for (auto& x : expand_vars(part)) vars.push_back(x);
    }
    if (!p || vars.empty()) fail(ErrorKind::Parse, "ring flag needs p=<prime>,<vars>");
    return Ring::make(p, vars);
}

Polynomial parse_polynomial(const std::string& text, const Ring* R) {
    PolyParser p(text, R);
    return p.parse();
}

std::vector<Polynomial> parse_poly_list(const std::string& text, const Ring* R) {
    std::vector<Polynomial> out;
    for (auto& part : split(text, ','))
        if (!part.empty()) out.push_back(parse_polynomial(part, R));
    return out;
}

GradedMap parse_matrix(const std::string& text, const Ring* R) {
    std::string s = text;
    strip(s);
    // normalize "[[a,b],[c,d]]" to "a,b;c,d"
    std::string norm;
    int depth = 0;
    for (char ch : s) {
        if (ch == '[') {
            ++depth;
            continue;
        }
        if (ch == ']') {
            --depth;
            if (depth == 1) norm += ';';
            continue;
        }
        if (ch == ',' && depth == 1) continue;  // separator between bracketed rows
        norm += ch;
    }
    while (!norm.empty() && (norm.back() == ';' || std::isspace((unsigned char)norm.back())))
        norm.pop_back();
    std::vector<std::vector<Polynomial>> rows;
    for (auto& rtext : split(norm, ';')) {
        if (rtext.empty()) continue;
        std::vector<Polynomial> row;
        for (auto& e : split(rtext, ',')) row.push_back(parse_polynomial(e, R));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) fail(ErrorKind::Parse, "empty matrix");
    size_t cols = rows[0].size();
    for (auto& r : rows)
        if (r.size() != cols) fail(ErrorKind::Parse, "ragged matrix");
    // generators in degree 0; column degrees from the entries
    FreeModule tgt;
    tgt.degs.assign(rows.size(), 0);
    FreeModule src;
    for (size_t j = 0; j < cols; ++j) {
        int d = -1;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (rows[i][j].is_zero()) continue;
            if (!rows[i][j].is_homogeneous())
                fail(ErrorKind::Parse, "matrix entries must be homogeneous");
            if (d < 0)
                d = rows[i][j].degree();
            else if (d != rows[i][j].degree())
                fail(ErrorKind::Parse, "column mixes degrees; not a graded map");
        }
        src.degs.push_back(d < 0 ? 0 : d);
    }
    GradedMap m(R, src, tgt, 0);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols; ++j)
            if (!rows[i][j].is_zero()) m.set((int)i, (int)j, rows[i][j]);
    return m;
}

std::string betti_json(const BettiTable& t, int cols) {
    nlohmann::json j;
    int imax = cols >= 0 ? cols : t.max_i();
    j["total"] = nlohmann::json::array();
    for (int i = 0; i <= imax; ++i) j["total"].push_back(t.total(i));
    int slo = INT32_MAX, shi = INT32_MIN;
    for (auto& [k, v] : t.b)
        if (v && k.first <= imax) {
            slo = std::min(slo, k.second - k.first);
            shi = std::max(shi, k.second - k.first);
        }
    j["rows"] = nlohmann::json::array();
    if (slo <= shi)
        for (int s = slo; s <= shi; ++s) {
            nlohmann::json row;
            row["slope"] = s;
            row["entries"] = nlohmann::json::array();
            for (int i = 0; i <= imax; ++i) row["entries"].push_back(t.at(i, i + s));
            j["rows"].push_back(row);
        }
    return j.dump();
}

std::string dims_json(const GradedDims& d) {
    nlohmann::json j;
    j["lo"] = d.lo;
    j["dims"] = d.dims;
    return j.dump();
}

}  // namespace torext
