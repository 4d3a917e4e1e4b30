#include "torext/resolution.hpp"

#include <algorithm>
#include <sstream>

namespace torext {

ModulePresentation ModulePresentation::residue_field(const Ring* R,
                                                     std::vector<Polynomial> quotient) {
    FreeModule F0, F1;
    F0.degs = {0};
    GradedMap m(R, F1, F0);
    for (int i = 0; i < R->nvars; ++i) {
        F1.degs.push_back(1);
    }
    m = GradedMap(R, F1, F0);
    for (int i = 0; i < R->nvars; ++i) m.set(0, i, Polynomial::variable(R, i));
    return ModulePresentation{R, std::move(quotient), std::move(m)};
}

namespace {

// dense working form of a complex for row/column elimination
struct WorkComplex {
    const Ring* ring;
    int lo;
    std::vector<std::vector<int>> degs;                        // per term
    std::vector<std::vector<std::vector<Polynomial>>> d;       // d[k][row][col]: term k -> k-1
};

WorkComplex to_work(const ChainComplex& C) {
    WorkComplex w;
    w.ring = C.ring();
    w.lo = C.lo();
    for (int n = C.lo(); n <= C.hi(); ++n) w.degs.push_back(C.term(n).degs);
    w.d.resize(w.degs.size());
    for (int n = C.lo() + 1; n <= C.hi(); ++n) {
        const GradedMap& dm = C.dif(n);
        auto& mat = w.d[n - C.lo()];
        mat.assign(dm.rows(), std::vector<Polynomial>(dm.cols(), Polynomial::zero(w.ring)));
        for (int j = 0; j < dm.cols(); ++j)
            for (auto& [i, p] : dm.col(j)) mat[i][j] = p;
    }
    return w;
}

ChainComplex from_work(const WorkComplex& w, const std::vector<Polynomial>& quotient) {
    std::vector<FreeModule> terms;
    for (auto& dg : w.degs) {
        FreeModule F;
        F.degs = dg;
        terms.push_back(F);
    }
    std::vector<GradedMap> difs;
    difs.push_back(GradedMap());
    for (size_t k = 1; k < w.degs.size(); ++k) {
        GradedMap m(w.ring, terms[k], terms[k - 1], 0);
        for (size_t i = 0; i < w.d[k].size(); ++i)
            for (size_t j = 0; j < w.d[k][i].size(); ++j)
                if (!w.d[k][i][j].is_zero()) m.set((int)i, (int)j, w.d[k][i][j]);
        difs.push_back(std::move(m));
    }
    return ChainComplex(w.ring, w.lo, std::move(terms), std::move(difs), quotient, false);
}

void erase_row(std::vector<std::vector<Polynomial>>& m, int r) {
    if (!m.empty()) m.erase(m.begin() + r);
}
void erase_col(std::vector<std::vector<Polynomial>>& m, int c) {
    for (auto& row : m)
        if (!row.empty()) row.erase(row.begin() + c);
}

// one unit-splitting pass; returns true if a pivot was found
bool prune_once(WorkComplex& w) {
    const Ring* R = w.ring;
    for (size_t k = 1; k < w.d.size(); ++k) {
        auto& mat = w.d[k];
        for (size_t r = 0; r < mat.size(); ++r)
            for (size_t c = 0; c < mat[r].size(); ++c) {
                const Polynomial& piv = mat[r][c];
                if (piv.is_zero() || piv.degree() != 0) continue;
                uint32_t a = piv.lead().c;
                uint32_t inv = R->fp.inv(a);
                int rows = (int)mat.size(), cols = (int)mat[r].size();
                // clear row r by column operations; fix rows of d[k+1]
                std::vector<Polynomial> lambda(cols, Polynomial::zero(R));
                for (int j = 0; j < cols; ++j)
                    if (j != (int)c && !mat[r][j].is_zero()) lambda[j] = mat[r][j].scaled(inv);
                for (int j = 0; j < cols; ++j) {
                    if (lambda[j].is_zero()) continue;
                    for (int i = 0; i < rows; ++i)
                        if (!mat[i][c].is_zero())
                            mat[i][j] = mat[i][j] - lambda[j] * mat[i][c];
                }
                if (k + 1 < w.d.size()) {
                    auto& up = w.d[k + 1];
                    for (int j = 0; j < cols; ++j) {
                        if (lambda[j].is_zero()) continue;
                        for (size_t s = 0; s < up[j].size(); ++s)
                            up[(size_t)c][s] = up[(size_t)c][s] + lambda[j] * up[(size_t)j][s];
                    }
                }
                // clear column c by row operations; fix columns of d[k-1]
                std::vector<Polynomial> mu(rows, Polynomial::zero(R));
                for (int i = 0; i < rows; ++i)
                    if (i != (int)r && !mat[i][c].is_zero()) mu[i] = mat[i][c].scaled(inv);
                for (int i = 0; i < rows; ++i) {
                    if (mu[i].is_zero()) continue;
                    for (int j = 0; j < cols; ++j)
                        if (!mat[r][j].is_zero()) mat[i][j] = mat[i][j] - mu[i] * mat[r][j];
                }
                if (k >= 2) {
                    auto& down = w.d[k - 1];
                    for (int i = 0; i < rows; ++i) {
                        if (mu[i].is_zero()) continue;
                        for (size_t s = 0; s < down.size(); ++s)
                            down[s][(size_t)r] = down[s][(size_t)r] + mu[i] * down[s][(size_t)i];
                    }
                }
                // composite-zero forces the adjacent strips to vanish
                if (k >= 2)
                    for (size_t s = 0; s < w.d[k - 1].size(); ++s)
                        if (!w.d[k - 1][s][r].is_zero())
                            fail(ErrorKind::Internal, "prune: d^2 invariant broken below");
                if (k + 1 < w.d.size())
                    for (size_t s = 0; s < w.d[k + 1][c].size(); ++s)
                        if (!w.d[k + 1][(size_t)c][s].is_zero())
                            fail(ErrorKind::Internal, "prune: d^2 invariant broken above");
                // delete
                erase_row(w.d[k], (int)r);
                erase_col(w.d[k], (int)c);
                w.degs[k].erase(w.degs[k].begin() + c);
                w.degs[k - 1].erase(w.degs[k - 1].begin() + r);
                if (k >= 2) erase_col(w.d[k - 1], (int)r);
                if (k + 1 < w.d.size()) erase_row(w.d[k + 1], (int)c);
                return true;
            }
    }
    return false;
}

}  // namespace

ChainComplex prune_complex(const ChainComplex& C) {
    WorkComplex w = to_work(C);
    while (prune_once(w)) {
    }
    return from_work(w, C.quotient());
}

GradedMap minimal_presentation(const ModulePresentation& M) {
    // prune unit entries of the presentation
    std::vector<FreeModule> terms = {M.pres.target(), M.pres.source()};
    std::vector<GradedMap> difs = {GradedMap(), M.pres};
    ChainComplex two(M.ring, 0, std::move(terms), std::move(difs), M.quotient, false);
    ChainComplex pruned = prune_complex(two);
    GradedMap d1 = pruned.dif(1);
    std::optional<GroebnerBasis> igb;
    if (!M.quotient.empty()) {
        igb = ideal_gb(M.ring, M.quotient);
        d1 = reduce_entries(d1, *igb);
    }
    // minimalize relation columns
    std::vector<ModVec> cols;
    for (int j = 0; j < d1.cols(); ++j) {
        ModVec v = mv_from_column(d1, j, ModuleOrder::top());
        if (!v.is_zero()) cols.push_back(std::move(v));
    }
    auto minimal = minimalize_generators(M.ring, d1.target(), std::move(cols), M.quotient);
    return map_from_columns(M.ring, d1.target(), minimal);
}

ChainComplex resolve(const ModulePresentation& M, int length, ResolveOptions opts) {
    if (length < 0) fail(ErrorKind::ShapeError, "resolve: length must be >= 0");
    GradedMap d1 = minimal_presentation(M);
    int maxf = 0;
    for (auto& q : M.quotient) maxf = std::max(maxf, q.degree());
    int cap = opts.degree_cap;
    if (cap == 0) {
        // documented default: generous window for the requested length
        int base = std::max(d1.target().max_deg(), d1.source().max_deg());
        cap = base + (length + 1) * std::max(maxf, 2) + 4;
    }
    std::vector<FreeModule> terms = {d1.target()};
    std::vector<GradedMap> difs = {GradedMap()};
    if (length >= 1) {
        terms.push_back(d1.source());
        difs.push_back(d1);
    }
    for (int i = 2; i <= length; ++i) {
        const GradedMap& prev = difs.back();
        if (prev.cols() == 0) {
            terms.push_back(FreeModule{});
            difs.push_back(GradedMap::zero(M.ring, FreeModule{}, terms[terms.size() - 2]));
            continue;
        }
        auto syz = kernel(prev, M.quotient, cap);
        GradedMap di = map_from_columns(M.ring, prev.source(), syz);
        terms.push_back(di.source());
        difs.push_back(std::move(di));
    }
    return ChainComplex(M.ring, 0, std::move(terms), std::move(difs), M.quotient, false);
}

ModulePresentation syzygy_module(const ModulePresentation& M, int i) {
    if (i < 0) fail(ErrorKind::ShapeError, "syzygy index must be >= 0");
    if (i == 0) {
        ModulePresentation N = M;
        N.pres = minimal_presentation(M);
        return N;
    }
    ChainComplex C = resolve(M, i + 1);
    ModulePresentation N;
    N.ring = M.ring;
    N.quotient = M.quotient;
    N.pres = C.dif(i + 1);
    return N;
}

BettiTable betti(const ChainComplex& C) {
    for (int n = C.lo() + 1; n <= C.hi(); ++n)
        if (!is_minimal(C.dif(n))) fail(ErrorKind::MinimalityError, "betti: complex not minimal");
    BettiTable t;
    for (int n = C.lo(); n <= C.hi(); ++n)
        for (int dg : C.term(n).degs) t.b[{n, dg}]++;
    return t;
}

std::string render_betti(const BettiTable& t, int cols) {
    if (t.b.empty()) return "total: 0\n";
    int imax = cols >= 0 ? cols : t.max_i();
    int slope_lo = INT32_MAX, slope_hi = INT32_MIN;
    for (auto& [k, v] : t.b) {
        if (k.first > imax) continue;
        slope_lo = std::min(slope_lo, k.second - k.first);
        slope_hi = std::max(slope_hi, k.second - k.first);
    }
    if (slope_lo > slope_hi) return "total: 0\n";
    std::vector<int> width(imax + 1, 1);
    auto cell = [&](long long v) { return v == 0 ? std::string(".") : std::to_string(v); };
    for (int i = 0; i <= imax; ++i) {
        size_t w = std::to_string(t.total(i)).size();
        for (int s = slope_lo; s <= slope_hi; ++s)
            w = std::max(w, cell(t.at(i, i + s)).size());
        width[i] = (int)w;
    }
    std::ostringstream os;
    os << "total:";
    for (int i = 0; i <= imax; ++i) {
        os << " ";
        std::string s = std::to_string(t.total(i));
        os << std::string(width[i] - s.size(), ' ') << s;
    }
    os << "\n";
    for (int s = slope_lo; s <= slope_hi; ++s) {
        os << s << ":";
        for (int i = 0; i <= imax; ++i) {
            std::string c = cell(t.at(i, i + s));
            os << " " << std::string(width[i] - c.size(), ' ') << c;
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace torext
