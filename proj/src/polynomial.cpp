#include "torext/polynomial.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace torext {

const Ring* intern_ring(const Ring& r) {
    static std::deque<Ring> pool;
    for (auto& q : pool)
        if (q.same_as(r)) return &q;
    pool.push_back(r);
    return &pool.back();
}

std::string mono_to_string(const Monomial& m, const Ring& R) {
    std::string s;
    for (int i = 0; i < R.nvars; ++i) {
        if (!m.e[i]) continue;
        if (!s.empty()) s += "*";
        s += R.vars[i];
        if (m.e[i] > 1) s += "^" + std::to_string((int)m.e[i]);
    }
    return s.empty() ? "1" : s;
}

void Polynomial::normalize() {
    std::sort(t_.begin(), t_.end(),
              [](const PTerm& a, const PTerm& b) { return grevlex_greater(a.m, b.m); });
    std::vector<PTerm> out;
    out.reserve(t_.size());
    for (auto& tm : t_) {
        uint32_t c = tm.c % ring_->fp.p;
        if (!out.empty() && out.back().m == tm.m) {
            out.back().c = ring_->fp.add(out.back().c, c);
            if (out.back().c == 0) out.pop_back();
        } else if (c) {
            out.push_back({tm.m, c});
        }
    }
    t_ = std::move(out);
}

Polynomial Polynomial::operator-() const {
    Polynomial r(ring_);
    r.t_ = t_;
    for (auto& tm : r.t_) tm.c = ring_->fp.neg(tm.c);
    return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    check_same_ring(o);
    const Ring* R = ring_ ? ring_ : o.ring_;
    Polynomial r(R);
    r.t_.reserve(t_.size() + o.t_.size());
    size_t i = 0, j = 0;
    while (i < t_.size() && j < o.t_.size()) {
        if (t_[i].m == o.t_[j].m) {
            uint32_t c = R->fp.add(t_[i].c, o.t_[j].c);
            if (c) r.t_.push_back({t_[i].m, c});
            ++i, ++j;
        } else if (grevlex_greater(t_[i].m, o.t_[j].m)) {
            r.t_.push_back(t_[i++]);
        } else {
            r.t_.push_back(o.t_[j++]);
        }
    }
    while (i < t_.size()) r.t_.push_back(t_[i++]);
    while (j < o.t_.size()) r.t_.push_back(o.t_[j++]);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check_same_ring(o);
    const Ring* R = ring_ ? ring_ : o.ring_;
    if (is_zero() || o.is_zero()) return Polynomial(R);
    // accumulate via ordered map keyed grevlex-descending
    std::map<Monomial, uint32_t, bool (*)(const Monomial&, const Monomial&)> acc(grevlex_greater);
    for (auto& a : t_)
        for (auto& b : o.t_) {
            Monomial m = mono_mul(a.m, b.m);
            uint32_t c = R->fp.mul(a.c, b.c);
            auto it = acc.find(m);
            if (it == acc.end())
                acc.emplace(m, c);
            else {
                it->second = R->fp.add(it->second, c);
            }
        }
    Polynomial r(R);
    r.t_.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c) r.t_.push_back({m, c});
    return r;
}

Polynomial Polynomial::scaled(uint32_t c) const {
    c %= ring_->fp.p;
    Polynomial r(ring_);
    if (!c) return r;
    r.t_ = t_;
    for (auto& tm : r.t_) tm.c = ring_->fp.mul(tm.c, c);
    return r;
}

Polynomial Polynomial::times_term(const Monomial& m, uint32_t c) const {
    c %= ring_->fp.p;
    Polynomial r(ring_);
    if (!c) return r;
    r.t_.reserve(t_.size());
    for (auto& tm : t_) r.t_.push_back({mono_mul(tm.m, m), ring_->fp.mul(tm.c, c)});
    return r;
}

std::string Polynomial::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& tm : t_) {
        if (!first) os << "+";
        first = false;
        if (tm.m.is_one())
            os << tm.c;
        else if (tm.c == 1)
            os << mono_to_string(tm.m, *ring_);
        else
            os << tm.c << "*" << mono_to_string(tm.m, *ring_);
    }
    return os.str();
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) { return a + b; }
Polynomial poly_sub(const Polynomial& a, const Polynomial& b) { return a - b; }
Polynomial poly_mul(const Polynomial& a, const Polynomial& b) { return a * b; }

}  // namespace torext
