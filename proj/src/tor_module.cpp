#include "torext/tor_module.hpp"

#include <algorithm>
#include <cmath>

namespace torext {

ModulePresentation syzygy_as_s_module(const ChainComplex& Rres, const std::vector<Polynomial>& f,
                                      int i) {
    const Ring* R = Rres.ring();
    if (i + 1 > Rres.hi())
        fail(ErrorKind::ShapeError, "syzygy_as_s_module: resolution too short");
    GradedMap next = Rres.dif(i + 1);
    const FreeModule& F0 = next.target();
    FreeModule src = next.source();
    GradedMap pres(R, src, F0, 0);
    for (int j = 0; j < next.cols(); ++j)
        for (auto& [r, poly] : next.col(j)) pres.set(r, j, poly);
    // append f_k times every ambient basis vector
    for (auto& fk : f)
        for (int r = 0; r < F0.rank(); ++r) {
            src.degs.push_back(F0.degs[r] + fk.degree());
            GradedMap wider(R, src, F0, 0);
            for (int j = 0; j < pres.cols(); ++j)
                for (auto& [rr, poly] : pres.col(j)) wider.set(rr, j, poly);
            wider.set(r, pres.cols(), fk);
            pres = std::move(wider);
        }
    ModulePresentation M;
    M.ring = R;
    M.pres = std::move(pres);
    return M;
}

TorEModule tor_emodule(const ModulePresentation& M, const std::vector<Polynomial>& f,
                       int tie_break) {
    const Ring* R = M.ring;
    if (!M.quotient.empty())
        fail(ErrorKind::ShapeError, "tor_emodule expects a presentation over S");
    // each f_i must annihilate the module
    {
        ImageSolver img(M.pres, {});
        for (auto& fi : f)
            for (int r = 0; r < M.pres.rows(); ++r) {
                std::vector<MTerm> terms;
                for (auto& tm : fi.terms()) terms.push_back({r, tm.m, tm.c});
                ModVec v = mv_sorted(std::move(terms), ModuleOrder::top(), R->fp);
                if (!img.contains(v))
                    fail(ErrorKind::AnnihilationError, "f_i does not annihilate the module");
            }
    }
    TorEModule out;
    out.sres = resolve(M, R->nvars);
    out.homotopies = compute_homotopies(out.sres, f, tie_break);
    out.T = e_action_on_tor(out.homotopies);
    return out;
}

SubQuotient tor_strand_split(const EModule& T) { return generated_submodule(T, {T.lo}); }

LayerRanks infer_layer_ranks(const std::vector<long long>& rbetti, int c) {
    if ((int)rbetti.size() < 2 * c)
        fail(ErrorKind::NotHighSyzygy, "not enough Betti numbers for the rank inference");
    auto binom = [](long long n, long long k) {
        if (k < 0 || n < k) return 0LL;
        long long r = 1;
        for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    };
    auto solve_side = [&](const std::vector<long long>& beta) {
        int n = c;
        // least structured path: solve the leading c x c system in doubles,
        // round, then verify every available equation exactly
        std::vector<std::vector<double>> A(n, std::vector<double>(n + 1, 0.0));
        for (int i = 0; i < n; ++i) {
            for (int p = 1; p <= c; ++p) A[i][p - 1] = (double)binom(c - p + i, c - p);
            A[i][n] = (double)beta[i];
        }
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int r = col; r < n; ++r)
                if (std::fabs(A[r][col]) > 1e-9) {
                    piv = r;
                    break;
                }
            if (piv < 0) fail(ErrorKind::NotHighSyzygy, "singular rank system");
            std::swap(A[piv], A[col]);
            for (int r = 0; r < n; ++r) {
                if (r == col) continue;
                double fct = A[r][col] / A[col][col];
                for (int k = col; k <= n; ++k) A[r][k] -= fct * A[col][k];
            }
        }
        std::vector<long long> b(n);
        for (int i = 0; i < n; ++i) {
            double v = A[i][n] / A[i][i];
            b[i] = (long long)std::llround(v);
            if (std::fabs(v - (double)b[i]) > 1e-6 || b[i] < 0)
                fail(ErrorKind::NotHighSyzygy, "rank system has no non-negative integer solution");
        }
        // exact forward check on the whole window
        for (size_t i = 0; i < beta.size(); ++i) {
            long long s = 0;
            for (int p = 1; p <= c; ++p) s += binom(c - p + (long long)i, c - p) * b[p - 1];
            if (s != beta[i])
                fail(ErrorKind::NotHighSyzygy, "Betti numbers do not fit the layered pattern");
        }
        return b;
    };
    std::vector<long long> evens, odds;
    for (size_t i = 0; i < rbetti.size(); i += 2) evens.push_back(rbetti[i]);
    for (size_t i = 1; i < rbetti.size(); i += 2) odds.push_back(rbetti[i]);
    LayerRanks out;
    out.b0 = solve_side(evens);
    out.b1 = solve_side(odds);
    return out;
}

GradedDims layered_quotient_dims(const LayerRanks& ranks, bool odd_side, int c, uint32_t p,
                                 int window) {
    GradedDims out;
    out.lo = 0;
    const std::vector<long long>& b = odd_side ? ranks.b1 : ranks.b0;
    int shift = odd_side ? 1 : 0;
    for (int d = 0; d <= window; ++d) {
        long long s = 0;
        for (int q = 1; q <= c; ++q) {
            // E/(e_q, ..., e_c) = exterior algebra on q-1 letters
            int internal = d - shift;
            auto binom = [](int n, int k) {
                if (k < 0 || n < k) return 0LL;
                long long r = 1;
                for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
                return r;
            };
            s += binom(q - 1, internal) * b[q - 1];
        }
        out.dims.push_back((int)s);
    }
    (void)p;
    return out;
}

StrandCone strand_cone_resolution(const LiftedResolution& L, const HigherCISystem& T) {
    int c = (int)L.f.size();
    uint32_t p = L.ring->fp.p;
    int steps = (L.bound - 1) / 2;  // step s needs G_{2s} and G_{2s+1}
    StrandCone out;
    out.cone.c = c;
    out.cone.p = p;
    auto t2bar = [&](int pp) {
        std::vector<linalg::Mat> comps;
        for (int i = 0; i < c; ++i) comps.push_back(tbar_component(L, T, 2, pp, i));
        return comps;
    };
    auto t3bar = [&](int pp) {
        std::vector<linalg::Mat> comps;
        auto masks = wedge_masks(c, 2);
        for (size_t k = 0; k < masks.size(); ++k)
            comps.push_back(tbar_component(L, T, 3, pp, (int)k));
        return comps;
    };
    for (int s = 0; s <= steps; ++s) {
        std::vector<int> g;
        int ev = L.term(2 * s).rank(), od = L.term(2 * s + 1).rank();
        for (int i = 0; i < ev; ++i) g.push_back(s);
        for (int i = 0; i < od; ++i) g.push_back(s + 1);
        out.cone.gens.push_back(std::move(g));
        out.even_row.push_back(ev);
        out.odd_row.push_back(od);
        if (s == 0) {
            out.cone.dif.push_back(EMatrix());
            continue;
        }
        int pev = L.term(2 * s - 2).rank(), pod = L.term(2 * s - 1).rank();
        EMatrix d = EMatrix::zero(pev + pod, ev + od, c, p);
        auto a2 = t2bar(2 * s);
        for (int i = 0; i < c; ++i)
            for (int r = 0; r < a2[i].rows; ++r)
                for (int cc = 0; cc < a2[i].cols; ++cc) {
                    uint32_t v = a2[i].at(r, cc);
                    if (v) d.at(r, cc).a[1u << i] = (d.at(r, cc).a[1u << i] + v) % p;
                }
        auto b2 = t2bar(2 * s + 1);
        for (int i = 0; i < c; ++i)
            for (int r = 0; r < b2[i].rows; ++r)
                for (int cc = 0; cc < b2[i].cols; ++cc) {
                    uint32_t v = b2[i].at(r, cc);
                    if (v)
                        d.at(pev + r, ev + cc).a[1u << i] =
                            (d.at(pev + r, ev + cc).a[1u << i] + v) % p;
                }
        auto c3 = t3bar(2 * s + 1);
        auto masks = wedge_masks(c, 2);
        for (size_t k = 0; k < masks.size(); ++k)
            for (int r = 0; r < c3[k].rows; ++r)
                for (int cc = 0; cc < c3[k].cols; ++cc) {
                    uint32_t v = c3[k].at(r, cc);
                    if (v) d.at(r, ev + cc).a[masks[k]] = (d.at(r, ev + cc).a[masks[k]] + v) % p;
                }
        out.cone.dif.push_back(std::move(d));
    }
    out.cone.check_d2();
    if (!out.cone.is_minimal())
        fail(ErrorKind::Internal, "strand cone: differential not minimal");
    // each row must itself be an acyclic complex in positive positions
    for (int parity = 0; parity <= 1; ++parity) {
        EFreeComplex row;
        row.c = c;
        row.p = p;
        for (int s = 0; s <= steps; ++s) {
            int rk = L.term(2 * s + parity).rank();
            row.gens.push_back(std::vector<int>(rk, s + parity));
            if (s == 0) {
                row.dif.push_back(EMatrix());
                continue;
            }
            EMatrix d = EMatrix::zero(L.term(2 * s - 2 + parity).rank(), rk, c, p);
            auto comps = t2bar(2 * s + parity);
            for (int i = 0; i < c; ++i)
                for (int r = 0; r < comps[i].rows; ++r)
                    for (int cc = 0; cc < comps[i].cols; ++cc) {
                        uint32_t v = comps[i].at(r, cc);
                        if (v) d.at(r, cc).a[1u << i] = (d.at(r, cc).a[1u << i] + v) % p;
                    }
            row.dif.push_back(std::move(d));
        }
        int maxdeg = steps + parity + c + 1;
        for (int pos = 1; pos + 1 <= steps; ++pos) {
            GradedDims H = efc_homology_dims(row, pos, maxdeg);
            if (H.total() != 0)
                fail(ErrorKind::RegularityHypothesisFailed,
                     parity == 0 ? "even strand not exact in the window"
                                 : "odd strand not exact in the window");
        }
    }
    return out;
}

StrandShiftReport strand_shift_check(const BettiTable& tm, const BettiTable& tm1, int window) {
    StrandShiftReport rep;
    rep.row0_matches = true;
    rep.row1_matches = true;
    for (int i = 0; i <= window; ++i) {
        if (tm.at(i, i + 1) != tm1.at(i, i)) rep.row0_matches = false;
        if (tm1.at(i, i + 1) != tm.at(i + 1, i + 1)) rep.row1_matches = false;
    }
    return rep;
}

}  // namespace torext
