#include "torext/bgg.hpp"

#include <algorithm>

namespace torext {

void LinearEComplex::check_delta2() const {
    for (int i = 0; i + 2 < positions(); ++i)
        if (!emat_is_zero(emat_mul(delta[i + 1], delta[i])))
            fail(ErrorKind::ChainMapError, "linear E-complex: delta^2 != 0");
}

GradedDims LinearEComplex::homology_at(int i) const {
    GradedDims H;
    if (i < 0 || i >= positions()) return H;
    int lo = -i, hi = -i + c;
    H.lo = lo;
    for (int d = lo; d <= hi; ++d) {
        auto slice = efree_slice_basis(gens[i], c, d);
        int rk_out = 0, rk_in = 0;
        if (i + 1 < positions()) {
            linalg::Mat m = emat_slice(delta[i], gens[i], gens[i + 1], d);
            rk_out = linalg::rank_of(m);
        }
        if (i >= 1) {
            linalg::Mat m = emat_slice(delta[i - 1], gens[i - 1], gens[i], d);
            rk_in = linalg::rank_of(m);
        }
        H.dims.push_back((int)slice.size() - rk_out - rk_in);
    }
    return H;
}

ChainComplex bgg_L(const EModule& T, const Ring* chiR) {
    int lo = T.lo, hi = T.hi();
    std::vector<FreeModule> terms;
    std::vector<GradedMap> difs;
    difs.push_back(GradedMap());
    for (int d = lo; d <= hi; ++d) {
        FreeModule F;
        for (int k = 0; k < T.dim_at(d); ++k) F.degs.push_back(d);
        terms.push_back(std::move(F));
    }
    for (int d = lo + 1; d <= hi; ++d) {
        GradedMap m(chiR, terms[d - lo], terms[d - 1 - lo], 0);
        for (int i = 0; i < T.c; ++i) {
            linalg::Mat e = T.op_at(i, d - 1);  // T_{d-1} -> T_d
            for (int r = 0; r < e.rows; ++r)
                for (int cc = 0; cc < e.cols; ++cc) {
                    uint32_t v = e.at(r, cc);
                    if (!v) continue;
                    // transpose: row cc, column r, entry v * chi_i
                    m.set(cc, r, m.entry(cc, r) + Polynomial::monomial(chiR, Monomial::var(i), v));
                }
        }
        difs.push_back(std::move(m));
    }
    return ChainComplex(chiR, lo, std::move(terms), std::move(difs));
}

LinearEComplex bgg_R(const RHalfModule& U) {
    LinearEComplex C;
    C.c = U.c;
    C.p = U.p;
    int n = U.window() + 1;
    for (int i = 0; i < n; ++i) {
        std::vector<int> g(U.dim_at(i), -i);
        C.gens.push_back(std::move(g));
    }
    for (int i = 0; i + 1 < n; ++i) {
        EMatrix m = EMatrix::zero(U.dim_at(i + 1), U.dim_at(i), U.c, U.p);
        for (int j = 0; j < U.c; ++j) {
            linalg::Mat chi = U.op_at(j, i);
            for (int r = 0; r < chi.rows; ++r)
                for (int cc = 0; cc < chi.cols; ++cc) {
                    uint32_t v = chi.at(r, cc);
                    if (v) m.at(r, cc).a[1u << j] = (m.at(r, cc).a[1u << j] + v) % U.p;
                }
        }
        C.delta.push_back(std::move(m));
    }
    C.check_delta2();
    return C;
}

bool is_acyclic_L(const ChainComplex& L, int through_degree, int* first_failure) {
    for (int i = L.lo() + 1; i <= L.hi(); ++i) {
        for (int d = 0; d <= through_degree; ++d) {
            if (homology_dim_at(L, i, d) != 0) {
                if (first_failure) *first_failure = i;
                return false;
            }
        }
    }
    return true;
}

bool is_acyclic_R(const LinearEComplex& R, int window, int* first_failure) {
    // the last position is a truncation boundary, not part of the window
    for (int i = 1; i <= std::min(window, R.positions() - 2); ++i) {
        GradedDims H = R.homology_at(i);
        if (H.total() != 0) {
            if (first_failure) *first_failure = i;
            return false;
        }
    }
    return true;
}

ReciprocityReport reciprocity_check(const RHalfModule& U, const EModule& T, int window) {
    ReciprocityReport rep;
    window = std::min(window, U.window());  // U is only known through its window
    const Ring* chiR = intern_ring(make_chi_ring(U.p, U.c));
    // direction 1: L(T) is a free resolution of U
    ChainComplex L = bgg_L(T, chiR);
    bool acy = is_acyclic_L(L, window);
    bool h0_matches = true;
    {
        // H0 = coker of the lowest differential; compare Hilbert functions
        GradedMap d1 = L.dif(L.lo() + 1);
        std::vector<ModVec> cols;
        for (int j = 0; j < d1.cols(); ++j) {
            ModVec v = mv_from_column(d1, j, ModuleOrder::top());
            if (!v.is_zero()) cols.push_back(std::move(v));
        }
        GroebnerBasis g = buchberger(chiR, L.term(L.lo()), cols, ModuleOrder::top());
        HilbertFunction hf = hilbert_function(g, window + L.lo());
        for (int d = 0; d <= window; ++d)
            if (hf.at(d + L.lo()) != U.dim_at(d)) h0_matches = false;
    }
    rep.l_resolves_u = acy && h0_matches;
    // direction 2: R(U) is acyclic with H^0 = dual of T
    LinearEComplex RC = bgg_R(U);
    bool racy = is_acyclic_R(RC, window);
    GradedDims H0 = RC.homology_at(0);
    // socle normalization: Hom(E,k) = E(c), so the partner shows up shifted by c
    GradedDims want = T.dual().shifted(U.c).graded_dims();
    rep.r_coresolves_t = racy && (H0 == want);
    return rep;
}

}  // namespace torext
