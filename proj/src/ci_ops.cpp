#include "torext/ci_ops.hpp"

#include <algorithm>

namespace torext {

namespace {

int mask_fdeg(const std::vector<Polynomial>& f, uint32_t mask) {
    int d = 0;
    for (size_t i = 0; i < f.size(); ++i)
        if (mask & (1u << i)) d += f[i].degree();
    return d;
}

// Koszul differential wedge^{q} -> wedge^{q-1} over the mask-indexed modules
GradedMap koszul_dif(const Ring* R, const std::vector<Polynomial>& f, int q) {
    int c = (int)f.size();
    auto src_masks = wedge_masks(c, q);
    auto tgt_masks = wedge_masks(c, q - 1);
    FreeModule src, tgt;
    for (auto m : src_masks) src.degs.push_back(mask_fdeg(f, m));
    for (auto m : tgt_masks) tgt.degs.push_back(mask_fdeg(f, m));
    GradedMap d(R, src, tgt, 0);
    for (size_t col = 0; col < src_masks.size(); ++col) {
        uint32_t T = src_masks[col];
        int pos = 0;
        for (int i = 0; i < c; ++i) {
            if (!(T & (1u << i))) continue;
            ++pos;
            uint32_t rest = T & ~(1u << i);
            size_t row =
                std::lower_bound(tgt_masks.begin(), tgt_masks.end(), rest) - tgt_masks.begin();
            d.set((int)row, (int)col, pos % 2 == 1 ? f[i] : -f[i]);
        }
    }
    return d;
}

}  // namespace

LiftedResolution lift_resolution(const ChainComplex& Rres, const std::vector<Polynomial>& f) {
    LiftedResolution L;
    L.ring = Rres.ring();
    L.f = f;
    L.bound = Rres.hi();
    GroebnerBasis igb = ideal_gb(L.ring, f);
    for (int p = 0; p <= L.bound; ++p) L.G.push_back(Rres.term(p));
    L.t1.push_back(GradedMap());
    for (int p = 1; p <= L.bound; ++p) L.t1.push_back(reduce_entries(Rres.dif(p), igb));
    // (t1)^2 must vanish modulo the ideal
    for (int p = 2; p <= L.bound; ++p) {
        GradedMap sq = compose(L.t1[p - 1], L.t1[p]);
        if (!reduce_entries(sq, igb).is_zero())
            fail(ErrorKind::LiftError, "lift: the square of the lifted differential is not in I");
    }
    return L;
}

std::vector<std::vector<GradedMap>> ci_operators(const LiftedResolution& L, int tie_break) {
    const Ring* R = L.ring;
    int c = (int)L.f.size();
    // divide every entry of t1^2 by (f_1..f_c)
    FreeModule target1;
    target1.degs = {0};
    FreeModule srcF;
    for (auto& g : L.f) srcF.degs.push_back(g.degree());
    GradedMap frow(R, srcF, target1, 0);
    for (int i = 0; i < c; ++i) frow.set(0, i, L.f[i]);
    ImageSolver div(frow, {}, tie_break);
    std::vector<std::vector<GradedMap>> t2(c);
    for (int i = 0; i < c; ++i) {
        t2[i].push_back(GradedMap());
        t2[i].push_back(GradedMap());
    }
    for (int p = 2; p <= L.bound; ++p) {
        GradedMap sq = compose(L.t1[p - 1], L.t1[p]);
        std::vector<GradedMap> comp;
        for (int i = 0; i < c; ++i)
            comp.push_back(GradedMap(R, L.G[p], L.G[p - 2], -L.f[i].degree()));
        for (int j = 0; j < sq.cols(); ++j)
            for (auto& [r, poly] : sq.col(j)) {
                std::vector<MTerm> terms;
                for (auto& tm : poly.terms()) terms.push_back({0, tm.m, tm.c});
                ModVec v = mv_sorted(std::move(terms), ModuleOrder::top(), R->fp);
                auto q = div.solve(v);
                if (!q) fail(ErrorKind::LiftError, "ci_operators: entry of t1^2 not in (f)");
                for (int i = 0; i < c; ++i)
                    if (!(*q)[i].is_zero()) comp[i].set(r, j, std::move((*q)[i]));
            }
        for (int i = 0; i < c; ++i) t2[i].push_back(std::move(comp[i]));
    }
    return t2;
}

FreeModule gk_summand(const LiftedResolution& L, int p, int q) {
    FreeModule F;
    int c = (int)L.f.size();
    if (p < 0 || p > L.bound || q < 0 || q > c) return F;
    for (uint32_t m : wedge_masks(c, q)) {
        int fd = mask_fdeg(L.f, m);
        for (int d : L.G[p].degs) F.degs.push_back(d + fd);
    }
    return F;
}

GradedMap t_full(const LiftedResolution& L, const HigherCISystem& T, int i, int p, int q) {
    const Ring* R = L.ring;
    int c = (int)L.f.size();
    FreeModule src = gk_summand(L, p, q);
    FreeModule tgt = gk_summand(L, p - i, q + i - 1);
    GradedMap out(R, src, tgt, 0);
    if (src.rank() == 0 || tgt.rank() == 0) return out;
    auto src_masks = wedge_masks(c, q);
    auto tgt_masks = wedge_masks(c, q + i - 1);
    int rg_src = L.G[p].rank();
    int rg_tgt = L.term(p - i).rank();
    auto tgt_block = [&](uint32_t mask) -> int {
        auto it = std::lower_bound(tgt_masks.begin(), tgt_masks.end(), mask);
        if (it == tgt_masks.end() || *it != mask) return -1;
        return (int)(it - tgt_masks.begin());
    };
    if (i == 0) {
        // (-1)^p (1 (x) koszul differential)
        if (q == 0) return out;
        int sgn = (p % 2 == 0) ? 1 : -1;
        for (size_t bs = 0; bs < src_masks.size(); ++bs) {
            uint32_t U = src_masks[bs];
            int pos = 0;
            for (int x = 0; x < c; ++x) {
                if (!(U & (1u << x))) continue;
                ++pos;
                int bt = tgt_block(U & ~(1u << x));
                if (bt < 0) continue;
                int s2 = (pos % 2 == 1) ? sgn : -sgn;
                Polynomial entry = s2 > 0 ? L.f[x] : -L.f[x];
                for (int g = 0; g < rg_src; ++g)
                    out.set(bt * rg_tgt + g, (int)bs * rg_src + g, entry);
            }
        }
        return out;
    }
    // i >= 1: left-wedge extension of the K_0 components
    std::vector<std::pair<uint32_t, const GradedMap*>> phis;
    static const GradedMap dummy;
    if (i == 1) {
        if (p < 1 || p > L.bound) return out;
        phis.push_back({0u, &L.t1[p]});
    } else {
        auto it = T.comps.find({i, p});
        if (it == T.comps.end()) return out;
        auto masks = wedge_masks(c, i - 1);
        for (size_t k = 0; k < masks.size(); ++k) phis.push_back({masks[k], &it->second[k]});
    }
    for (auto& [Tm, phi] : phis) {
        for (size_t bs = 0; bs < src_masks.size(); ++bs) {
            uint32_t U = src_masks[bs];
            int sgn = wedge_sign_masks(Tm, U);
            if (!sgn) continue;
            int bt = tgt_block(Tm | U);
            if (bt < 0) continue;
            for (int j = 0; j < phi->cols(); ++j)
                for (auto& [r, poly] : phi->col(j)) {
                    Polynomial e = sgn > 0 ? poly : -poly;
                    int row = bt * rg_tgt + r;
                    int col = (int)bs * rg_src + j;
                    out.set(row, col, out.entry(row, col) + e);
                }
        }
    }
    return out;
}

HigherCISystem higher_ci(const LiftedResolution& L, int nmax, int tie_break) {
    if (nmax < 2) fail(ErrorKind::ShapeError, "higher_ci: nmax must be >= 2");
    const Ring* R = L.ring;
    int c = (int)L.f.size();
    HigherCISystem T;
    T.c = c;
    T.nmax = nmax;
    for (int n = 2; n <= std::min(nmax, c + 1); ++n) {
        auto masksN1 = wedge_masks(c, n - 1);  // of t_n components
        auto masksN2 = wedge_masks(c, n - 2);  // of the constraint
        GradedMap kd = koszul_dif(R, L.f, n - 1);
        ImageSolver solver(kd, {}, tie_break);
        for (int p = n; p <= L.bound; ++p) {
            // RHS_W = -sum_{i+j=n, i,j>=1} sum_{T' | T = W} sign . phi_{T'} phi_T
            std::vector<GradedMap> rhs;
            for (auto W : masksN2)
                rhs.push_back(GradedMap(R, L.G[p], L.term(p - n), -mask_fdeg(L.f, W)));
            for (int j = 1; j <= n - 1; ++j) {
                int i = n - j;
                // phi^{(j,p)}_T : G_p -> G_{p-j}; phi^{(i,p-j)}_{T'}: -> G_{p-n}
                std::vector<std::pair<uint32_t, const GradedMap*>> pj, pi;
                if (j == 1)
                    pj.push_back({0u, &L.t1[p]});
                else {
                    auto it = T.comps.find({j, p});
                    if (it == T.comps.end()) continue;
                    auto mk = wedge_masks(c, j - 1);
                    for (size_t k = 0; k < mk.size(); ++k) pj.push_back({mk[k], &it->second[k]});
                }
                if (i == 1) {
                    if (p - j >= 1) pi.push_back({0u, &L.t1[p - j]});
                } else {
                    auto it = T.comps.find({i, p - j});
                    if (it == T.comps.end()) continue;
                    auto mk = wedge_masks(c, i - 1);
                    for (size_t k = 0; k < mk.size(); ++k) pi.push_back({mk[k], &it->second[k]});
                }
                for (auto& [Tm, phj] : pj)
                    for (auto& [Tpm, phi] : pi) {
                        int sgn = wedge_sign_masks(Tpm, Tm);
                        if (!sgn) continue;
                        uint32_t W = Tpm | Tm;
                        size_t k = std::lower_bound(masksN2.begin(), masksN2.end(), W) -
                                   masksN2.begin();
                        GradedMap prod = compose(*phi, *phj);
                        rhs[k] = rhs[k] + (sgn > 0 ? -prod : prod);
                    }
            }
            // solve (1 (x) koszul dif) X = (-1)^{p-n} RHS columnwise
            int scale_sign = ((p - n) % 2 == 0) ? 1 : -1;
            std::vector<GradedMap> comp;
            for (auto Tm : masksN1)
                comp.push_back(GradedMap(R, L.G[p], L.term(p - n), -mask_fdeg(L.f, Tm)));
            int rows = L.term(p - n).rank();
            for (int g = 0; g < L.G[p].rank(); ++g)
                for (int h = 0; h < rows; ++h) {
                    // vector over masksN2
                    std::vector<MTerm> terms;
                    for (size_t k = 0; k < masksN2.size(); ++k) {
                        Polynomial e = rhs[k].entry(h, g);
                        if (scale_sign < 0) e = -e;
                        for (auto& tm : e.terms()) terms.push_back({(int)k, tm.m, tm.c});
                    }
                    ModVec v = mv_sorted(std::move(terms), ModuleOrder::top(), R->fp);
                    if (v.is_zero()) continue;
                    auto y = solver.solve(v);
                    if (!y) fail(ErrorKind::Internal, "higher_ci: lifting failed (sign bug)");
                    for (size_t k = 0; k < masksN1.size(); ++k)
                        if (!(*y)[k].is_zero()) comp[k].set(h, g, std::move((*y)[k]));
                }
            T.comps[{n, p}] = std::move(comp);
        }
    }
    return T;
}

void verify_t_identities(const LiftedResolution& L, const HigherCISystem& T, int nmax) {
    int c = (int)L.f.size();
    for (int n = 0; n <= nmax; ++n) {
        for (int p = 0; p <= L.bound; ++p)
            for (int q = 0; q + n - 1 <= c && q <= c; ++q) {
                if (p - n < 0) continue;
                FreeModule src = gk_summand(L, p, q);
                FreeModule tgt = gk_summand(L, p - n, q + n - 2);
                if (src.rank() == 0 || tgt.rank() == 0) continue;
                GradedMap acc = GradedMap::zero(L.ring, src, tgt, 0);
                for (int i = 0; i <= n; ++i) {
                    int j = n - i;
                    // t_i after t_j
                    if (q + j - 1 < 0 || q + j - 1 > c) continue;
                    if (p - j < 0) continue;
                    GradedMap tj = t_full(L, T, j, p, q);
                    GradedMap ti = t_full(L, T, i, p - j, q + j - 1);
                    if (tj.cols() == 0 || ti.rows() == 0) continue;
                    acc = acc + compose(ti, tj);
                }
                if (!acc.is_zero())
                    fail(ErrorKind::Internal, "t-identity violated at n=" + std::to_string(n) +
                                                  " p=" + std::to_string(p) +
                                                  " q=" + std::to_string(q));
            }
    }
}

ChainComplex build_gk(const LiftedResolution& L, const HigherCISystem& T) {
    const Ring* R = L.ring;
    int c = (int)L.f.size();
    int top = L.bound;
    std::vector<FreeModule> terms;
    std::vector<GradedMap> difs;
    difs.push_back(GradedMap());
    // summand order inside (GK)_m: K-degree b ascending
    auto layout = [&](int m) {
        std::vector<std::pair<int, int>> pq;  // (p, q)
        for (int q = 0; q <= std::min(c, m); ++q) {
            int p = m - q;
            if (p >= 0 && p <= top) pq.push_back({p, q});
        }
        return pq;
    };
    for (int m = 0; m <= top; ++m) {
        FreeModule F;
        for (auto& [p, q] : layout(m))
            for (int d : gk_summand(L, p, q).degs) F.degs.push_back(d);
        terms.push_back(std::move(F));
    }
    for (int m = 1; m <= top; ++m) {
        auto src_layout = layout(m);
        auto tgt_layout = layout(m - 1);
        GradedMap d(R, terms[m], terms[m - 1], 0);
        // offsets
        std::vector<int> soff(src_layout.size() + 1, 0), toff(tgt_layout.size() + 1, 0);
        for (size_t k = 0; k < src_layout.size(); ++k)
            soff[k + 1] = soff[k] + gk_summand(L, src_layout[k].first, src_layout[k].second).rank();
        for (size_t k = 0; k < tgt_layout.size(); ++k)
            toff[k + 1] = toff[k] + gk_summand(L, tgt_layout[k].first, tgt_layout[k].second).rank();
        for (size_t sk = 0; sk < src_layout.size(); ++sk) {
            auto [p, q] = src_layout[sk];
            for (size_t tk = 0; tk < tgt_layout.size(); ++tk) {
                auto [pp, qq] = tgt_layout[tk];
                int i = p - pp;  // t_i with q' = q + i - 1
                if (i < 0 || qq != q + i - 1) continue;
                GradedMap blk = t_full(L, T, i, p, q);
                for (int j = 0; j < blk.cols(); ++j)
                    for (auto& [r, poly] : blk.col(j)) d.set(toff[tk] + r, soff[sk] + j, poly);
            }
        }
        difs.push_back(std::move(d));
    }
    return ChainComplex(R, 0, std::move(terms), std::move(difs));
}

ChainComplex minimize_gk(const ChainComplex& GK) { return prune_complex(GK); }

linalg::Mat tbar_component(const LiftedResolution& L, const HigherCISystem& T, int n, int p,
                           int mask_index) {
    linalg::Mat m(L.term(p - n).rank(), L.term(p).rank(), L.ring->fp.p);
    const GradedMap* phi = nullptr;
    if (n == 1) {
        if (p >= 1 && p <= L.bound) phi = &L.t1[p];
    } else {
        auto it = T.comps.find({n, p});
        if (it != T.comps.end()) phi = &it->second[mask_index];
    }
    if (phi)
        for (int j = 0; j < phi->cols(); ++j)
            for (auto& [r, poly] : phi->col(j)) {
                uint32_t cst = poly.constant_term();
                if (cst) m.at(r, j) = cst;
            }
    return m;
}

bool kernel_contained_in_image(const GradedMap& dn, const GradedMap& dn1,
                               std::vector<Polynomial> quotient, int degree_cap) {
    auto ker = kernel(dn, quotient, degree_cap);
    ImageSolver img(dn1, quotient);
    for (auto& g : ker)
        if (!img.contains(g)) return false;
    return true;
}

bool same_image(const GradedMap& A, const GradedMap& B, std::vector<Polynomial> quotient) {
    ImageSolver ia(A, quotient), ib(B, quotient);
    for (int j = 0; j < B.cols(); ++j)
        if (!ia.contains(mv_from_column(B, j, ModuleOrder::top()))) return false;
    for (int j = 0; j < A.cols(); ++j)
        if (!ib.contains(mv_from_column(A, j, ModuleOrder::top()))) return false;
    return true;
}

}  // namespace torext
