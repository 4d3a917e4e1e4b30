#include "torext/rmodule.hpp"

#include <algorithm>
#include <set>

namespace torext {

linalg::Mat ExtModule::chi_at(int i, int d) const {
    if (d >= 0 && d <= top() && d + 2 <= top()) {
        const linalg::Mat& m = chi[i][d];
        if (m.rows == dim_at(d + 2) && m.cols == dim_at(d)) return m;
    }
    return linalg::Mat(dim_at(d + 2), dim_at(d), p);
}

linalg::Mat RHalfModule::op_at(int i, int d) const {
    if (d >= 0 && d <= window() && d + 1 <= window()) {
        const linalg::Mat& m = op[i][d];
        if (m.rows == dim_at(d + 1) && m.cols == dim_at(d)) return m;
    }
    return linalg::Mat(dim_at(d + 1), dim_at(d), p);
}

void RHalfModule::check_commutativity() const {
    for (int i = 0; i < c; ++i)
        for (int j = 0; j < i; ++j)
            for (int d = 0; d + 2 <= window(); ++d) {
                linalg::Mat ab = linalg::mul(op_at(i, d + 1), op_at(j, d));
                linalg::Mat ba = linalg::mul(op_at(j, d + 1), op_at(i, d));
                if (!(ab == ba))
                    fail(ErrorKind::Internal, "chi operators do not commute");
            }
}

ExtModule ext_rmodule(const LiftedResolution& L, const std::vector<std::vector<GradedMap>>& t2) {
    ExtModule E;
    E.c = (int)L.f.size();
    E.p = L.ring->fp.p;
    for (int d = 0; d <= L.bound; ++d) E.dims.push_back(L.term(d).rank());
    E.chi.assign(E.c, {});
    for (int i = 0; i < E.c; ++i) {
        E.chi[i].resize(E.dims.size());
        for (int d = 0; d + 2 <= L.bound; ++d) {
            // constant part of t2[i][d+2] : G_{d+2} -> G_d, transposed
            linalg::Mat m(E.dim_at(d + 2), E.dim_at(d), E.p);
            const GradedMap& t = t2[i][d + 2];
            for (int j = 0; j < t.cols(); ++j)
                for (auto& [r, poly] : t.col(j)) {
                    uint32_t cst = poly.constant_term();
                    if (cst) m.at(j, r) = cst;  // transpose
                }
            E.chi[i][d] = std::move(m);
        }
    }
    // commutativity of the chi action
    for (int i = 0; i < E.c; ++i)
        for (int j = 0; j < i; ++j)
            for (int d = 0; d + 4 <= E.top(); ++d) {
                linalg::Mat ab = linalg::mul(E.chi_at(i, d + 2), E.chi_at(j, d));
                linalg::Mat ba = linalg::mul(E.chi_at(j, d + 2), E.chi_at(i, d));
                if (!(ab == ba)) fail(ErrorKind::Internal, "CI operators do not commute mod m");
            }
    return E;
}

RHalfModule half_module(const ExtModule& E, int parity) {
    RHalfModule U;
    U.c = E.c;
    U.p = E.p;
    U.parity = parity;
    for (int d = parity; d <= E.top(); d += 2) U.dims.push_back(E.dim_at(d));
    U.op.assign(U.c, {});
    for (int i = 0; i < U.c; ++i) {
        U.op[i].resize(U.dims.size());
        for (int k = 0; k + 1 <= U.window(); ++k) U.op[i][k] = E.chi_at(i, 2 * k + parity);
    }
    U.check_commutativity();
    return U;
}

Ring make_chi_ring(uint32_t p, int c) {
    std::vector<std::string> names;
    for (int i = 1; i <= c; ++i) names.push_back("chi" + std::to_string(i));
    return Ring::make(p, names);
}

namespace {

// minimal generators (degree, coordinate) of a half module
std::vector<std::pair<int, int>> half_minimal_generators(const RHalfModule& U) {
    std::vector<std::pair<int, int>> gens;
    for (int d = 0; d <= U.window(); ++d) {
        linalg::EchelonSpace im(U.dim_at(d), U.p);
        for (int i = 0; i < U.c; ++i) {
            linalg::Mat m = U.op_at(i, d - 1);
            for (int j = 0; j < m.cols; ++j) {
                std::vector<uint32_t> v(m.rows);
                for (int r = 0; r < m.rows; ++r) v[r] = m.at(r, j);
                im.insert(std::move(v));
            }
        }
        for (int k = 0; k < U.dim_at(d); ++k) {
            std::vector<uint32_t> v(U.dim_at(d), 0);
            v[k] = 1;
            if (im.insert(std::move(v))) gens.push_back({d, k});
        }
    }
    return gens;
}

// act by the monomial mu on a vector at half-degree d
std::vector<uint32_t> act_chi(const RHalfModule& U, const Monomial& mu, int d,
                              std::vector<uint32_t> v) {
    for (int i = 0; i < U.c; ++i)
        for (int k = 0; k < mu.e[i]; ++k) {
            linalg::Mat m = U.op_at(i, d);
            std::vector<uint32_t> w(m.rows, 0);
            for (int r = 0; r < m.rows; ++r) {
                uint64_t acc = 0;
                for (int j = 0; j < m.cols; ++j) acc = (acc + (uint64_t)m.at(r, j) * v[j]) % U.p;
                w[r] = (uint32_t)acc;
            }
            v = std::move(w);
            ++d;
        }
    return v;
}

// slice of the free cover at half-degree d: columns indexed by (gen, monomial)
struct CoverSlice {
    std::vector<std::pair<int, Monomial>> basis;
    linalg::Mat to_module;  // U_d coordinates
};

CoverSlice cover_slice(const RHalfModule& U, const Ring* chiR,
                       const std::vector<std::pair<int, int>>& gens, int d) {
    CoverSlice S;
    for (size_t g = 0; g < gens.size(); ++g) {
        int gd = gens[g].first;
        if (d - gd < 0) continue;
        for (auto& mu : monomials_of_degree(chiR, d - gd)) S.basis.push_back({(int)g, mu});
    }
    S.to_module = linalg::Mat(U.dim_at(d), (int)S.basis.size(), U.p);
    for (size_t j = 0; j < S.basis.size(); ++j) {
        auto [g, mu] = S.basis[j];
        auto [gd, coord] = gens[g];
        std::vector<uint32_t> v(U.dim_at(gd), 0);
        v[coord] = 1;
        v = act_chi(U, mu, gd, std::move(v));
        for (int r = 0; r < (int)v.size(); ++r) S.to_module.at(r, (int)j) = v[r];
    }
    return S;
}

}  // namespace

ModulePresentation half_module_presentation(const RHalfModule& U, const Ring* chiR) {
    auto gens = half_minimal_generators(U);
    FreeModule F0;
    for (auto& [d, k] : gens) F0.degs.push_back(d);
    // relation space per degree, converted to module vectors over the chi ring
    std::vector<ModVec> rels;
    for (int d = 1; d <= U.window(); ++d) {
        CoverSlice S = cover_slice(U, chiR, gens, d);
        linalg::Mat ns = linalg::nullspace(S.to_module);
        for (int col = 0; col < ns.cols; ++col) {
            std::vector<MTerm> terms;
            for (int row = 0; row < ns.rows; ++row) {
                uint32_t v = ns.at(row, col);
                if (!v) continue;
                terms.push_back({S.basis[row].first, S.basis[row].second, v});
            }
            rels.push_back(mv_sorted(std::move(terms), ModuleOrder::top(), chiR->fp));
        }
    }
    auto minimal = minimalize_generators(chiR, F0, std::move(rels));
    ModulePresentation M;
    M.ring = chiR;
    M.pres = map_from_columns(chiR, F0, minimal);
    return M;
}

RResolution r_free_resolution(const RHalfModule& U, int length) {
    const Ring* Rp = intern_ring(make_chi_ring(U.p, U.c));
    if (length < 0) length = U.c + 1;
    ModulePresentation M = half_module_presentation(U, Rp);
    RResolution out;
    out.complex = resolve(M, length);
    out.table = betti(out.complex);
    out.regularity = 0;
    for (auto& [k, v] : out.table.b)
        if (v) out.regularity = std::max(out.regularity, k.second - k.first);
    // resolved module must agree with the window data
    GroebnerBasis g = buchberger(Rp, M.pres.target(),
                                 [&] {
                                     std::vector<ModVec> cols;
                                     for (int j = 0; j < M.pres.cols(); ++j)
                                         cols.push_back(mv_from_column(M.pres, j,
                                                                       ModuleOrder::top()));
                                     return cols;
                                 }(),
                                 ModuleOrder::top());
    HilbertFunction hf = hilbert_function(g, U.window());
    for (int d = 0; d <= U.window(); ++d)
        if (hf.at(d) != U.dim_at(d))
            fail(ErrorKind::Internal, "half-module presentation does not match window data");
    return out;
}

int r_regularity(const RHalfModule& U) { return r_free_resolution(U).regularity; }

HilbertFunction half_module_hilbert(const RHalfModule& U, const Ring* chiR, int through) {
    ModulePresentation M = half_module_presentation(U, chiR);
    std::vector<ModVec> cols;
    for (int j = 0; j < M.pres.cols(); ++j)
        cols.push_back(mv_from_column(M.pres, j, ModuleOrder::top()));
    GroebnerBasis g = buchberger(chiR, M.pres.target(), cols, ModuleOrder::top());
    return hilbert_function(g, through);
}

GradedDims ext_leading_term_quotient_dims(const RHalfModule& U, int window) {
    const Ring* chiR = intern_ring(make_chi_ring(U.p, U.c));
    auto gens = half_minimal_generators(U);
    int maxgen = 0;
    for (auto& [d, k] : gens) maxgen = std::max(maxgen, d);
    // lex with chi_1 > chi_2 > ... > chi_c
    auto lex_greater = [&](const Monomial& a, const Monomial& b) {
        for (int i = 0; i < U.c; ++i)
            if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
        return false;
    };
    std::set<std::pair<int, std::array<uint8_t, 8>>> lt;
    for (int d = 1; d <= maxgen + 1; ++d) {
        CoverSlice S = cover_slice(U, chiR, gens, d);
        std::vector<int> order((int)S.basis.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
        std::sort(order.begin(), order.end(), [&](int x, int y) {
            if (!(S.basis[x].second == S.basis[y].second))
                return lex_greater(S.basis[x].second, S.basis[y].second);
            return S.basis[x].first < S.basis[y].first;
        });
        linalg::Mat ns = linalg::nullspace(S.to_module);
        linalg::Mat re(ns.cols, ns.rows, U.p);
        for (int i = 0; i < ns.rows; ++i)
            for (int j = 0; j < ns.cols; ++j) re.at(j, i) = ns.at(order[i], j);
        auto piv = linalg::rref(re);
        for (int pc : piv)
            lt.insert({S.basis[order[pc]].first, S.basis[order[pc]].second.e});
    }
    GradedDims out;
    out.lo = 0;
    std::set<std::pair<int, std::array<uint8_t, 8>>> cur = lt;
    for (int d = 0; d <= window; ++d) {
        CoverSlice S = cover_slice(U, chiR, gens, d);
        int inlt = 0;
        std::set<std::pair<int, std::array<uint8_t, 8>>> next;
        for (auto& [g, mu] : S.basis) {
            if (cur.count({g, mu.e})) {
                ++inlt;
                for (int i = 0; i < U.c; ++i) {
                    Monomial m2 = mu;
                    m2.e[i]++;
                    next.insert({g, m2.e});
                }
            }
        }
        out.dims.push_back((int)S.basis.size() - inlt);
        for (auto& x : next) cur.insert(x);
    }
    return out;
}

bool presents_shifted_maximal_ideal(const GradedMap& P, const Ring* chiR) {
    int c = chiR->nvars;
    int n = P.rows();
    if (n != c) return false;
    // Koszul presentation of the shifted maximal ideal
    std::vector<Polynomial> vars;
    for (int i = 0; i < c; ++i) vars.push_back(Polynomial::variable(chiR, i));
    ChainComplex K = koszul(chiR, vars);
    GradedMap Kpres = K.dif(2);  // wedge^2 -> wedge^1, the syzygies of the variables
    // unknowns: phi (c x c), psi (Kpres.cols x P.cols); equations:
    // phi . P = Kpres . psi entrywise per chi coefficient
    int m = P.cols();
    int kc = Kpres.cols();
    int nvar = c * c + kc * m;
    std::vector<std::vector<uint32_t>> rows;
    PrimeField fp = chiR->fp;
    for (int r = 0; r < c; ++r)
        for (int col = 0; col < m; ++col)
            for (int v = 0; v < c; ++v) {
                // coefficient of chi_v in (phi.P - Kpres.psi)[r][col]
                std::vector<uint32_t> row(nvar, 0);
                for (int s = 0; s < c; ++s) {
                    // phi[r][s] * coeff_v(P[s][col])
                    uint32_t coef = 0;
                    Polynomial e = P.entry(s, col);
                    for (auto& tm : e.terms())
                        if (tm.m == Monomial::var(v)) coef = tm.c;
                    if (coef) row[r * c + s] = fp.add(row[r * c + s], coef);
                }
                for (int s = 0; s < kc; ++s) {
                    uint32_t coef = 0;
                    Polynomial e = Kpres.entry(r, s);
                    for (auto& tm : e.terms())
                        if (tm.m == Monomial::var(v)) coef = tm.c;
                    if (coef) row[c * c + s * m + col] = fp.sub(row[c * c + s * m + col], coef);
                }
                bool nz = false;
                for (auto x : row)
                    if (x) nz = true;
                if (nz) rows.push_back(std::move(row));
            }
    linalg::Mat sys((int)rows.size(), nvar, fp.p);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < nvar; ++j) sys.at((int)i, j) = rows[i][j];
    linalg::Mat sol = linalg::nullspace(sys);
    auto phi_of = [&](const std::vector<uint32_t>& coeffs) {
        linalg::Mat phi(c, c, fp.p);
        for (int r = 0; r < c; ++r)
            for (int s = 0; s < c; ++s) {
                uint64_t acc = 0;
                for (int k = 0; k < sol.cols; ++k)
                    acc = (acc + (uint64_t)coeffs[k] * sol.at(r * c + s, k)) % fp.p;
                phi.at(r, s) = (uint32_t)acc;
            }
        return phi;
    };
    for (int k = 0; k < sol.cols; ++k) {
        std::vector<uint32_t> coeffs(sol.cols, 0);
        coeffs[k] = 1;
        if (linalg::inverse(phi_of(coeffs))) return true;
    }
    uint64_t state = 0x9E3779B97F4A7C15ull;
    for (int t = 0; t < 400; ++t) {
        std::vector<uint32_t> coeffs(sol.cols);
        for (auto& x : coeffs) {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            x = (uint32_t)((state >> 33) % fp.p);
        }
        if (linalg::inverse(phi_of(coeffs))) return true;
    }
    return false;
}

ExtStructureReport ext_structure_report(const RHalfModule& U, const Ring* chiR, int window) {
    ExtStructureReport rep;
    ModulePresentation M = half_module_presentation(U, chiR);
    GradedMap P = minimal_presentation(M);
    // free summands: common left kernel of the coefficient matrices
    int n = P.rows(), m = P.cols();
    int c = chiR->nvars;
    linalg::Mat stacked(n, m * c, U.p);
    for (int r = 0; r < n; ++r)
        for (int j = 0; j < m; ++j) {
            Polynomial e = P.entry(r, j);
            for (auto& tm : e.terms())
                for (int v = 0; v < c; ++v)
                    if (tm.m == Monomial::var(v)) stacked.at(r, j * c + v) = tm.c;
        }
    // left kernel = nullspace of the transpose
    linalg::Mat lk = linalg::nullspace(stacked.transpose());
    rep.free_rank = lk.cols;
    // complement rows: complete lk columns to a basis of k^n, express P in it
    linalg::EchelonSpace rowspace(n, U.p);
    for (int j = 0; j < lk.cols; ++j) {
        std::vector<uint32_t> v(n);
        for (int r = 0; r < n; ++r) v[r] = lk.at(r, j);
        rowspace.insert(std::move(v));
    }
    std::vector<int> comp_rows;
    {
        std::vector<bool> isp(n, false);
        for (int pc : rowspace.piv) isp[pc] = true;
        for (int r = 0; r < n; ++r)
            if (!isp[r]) comp_rows.push_back(r);
    }
    // the nonfree part is presented by the complement rows of P (valid because
    // the free rows can be cleared by row operations that fix the complement)
    FreeModule tgt;
    for (size_t i = 0; i < comp_rows.size(); ++i) tgt.degs.push_back(P.target().degs[comp_rows[i]]);
    GradedMap Pn(chiR, P.source(), tgt, P.shift());
    for (int j = 0; j < m; ++j)
        for (size_t i = 0; i < comp_rows.size(); ++i) {
            Polynomial e = P.entry(comp_rows[i], j);
            if (!e.is_zero()) Pn.set((int)i, j, e);
        }
    rep.nonfree_presentation = Pn;
    // Hilbert function of the cokernel of the nonfree part
    std::vector<ModVec> cols;
    for (int j = 0; j < m; ++j) {
        ModVec v = mv_from_column(Pn, j, ModuleOrder::top());
        if (!v.is_zero()) cols.push_back(std::move(v));
    }
    GroebnerBasis g = buchberger(chiR, tgt, cols, ModuleOrder::top());
    HilbertFunction hf = hilbert_function(g, window);
    rep.nonfree_hilbert.lo = hf.lo;
    for (auto d : hf.dims) rep.nonfree_hilbert.dims.push_back((int)d);
    rep.nonfree_is_shifted_max_ideal = presents_shifted_maximal_ideal(Pn, chiR);
    return rep;
}

GradedMap nonminimal_presentation(const EModule& tor, const Ring* chiR) {
    int t0 = tor.dim_at(0), t1 = tor.dim_at(1);
    FreeModule F0, F1;
    for (int i = 0; i < t0; ++i) F0.degs.push_back(0);
    for (int i = 0; i < t1; ++i) F1.degs.push_back(1);
    GradedMap tau(chiR, F1, F0, 0);
    for (int r = 0; r < t0; ++r)
        for (int j = 0; j < t1; ++j) {
            Polynomial e = Polynomial::zero(chiR);
            for (int i = 0; i < tor.c; ++i) {
                uint32_t v = tor.op_at(i, 0).at(j, r);  // transpose of the multiplication
                if (v) e = e + Polynomial::monomial(chiR, Monomial::var(i), v);
            }
            if (!e.is_zero()) tau.set(r, j, std::move(e));
        }
    return tau;
}

}  // namespace torext
