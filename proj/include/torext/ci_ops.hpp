#pragma once

#include "torext/homotopy.hpp"
#include "torext/resolution.hpp"

namespace torext {

// Entry-wise lift of a minimal R-free resolution to maps of free S-modules.
struct LiftedResolution {
    const Ring* ring = nullptr;
    std::vector<Polynomial> f;
    std::vector<FreeModule> G;    // G[p], p = 0..bound
    std::vector<GradedMap> t1;    // t1[p]: G_p -> G_{p-1}, p >= 1 (t1[0] unused)
    int bound = 0;

    const FreeModule& term(int p) const {
        static FreeModule empty;
        return (p >= 0 && p <= bound) ? G[p] : empty;
    }
    GradedMap t1_at(int p) const {
        if (p >= 1 && p <= bound) return t1[p];
        return GradedMap::zero(ring, term(p), term(p - 1));
    }
};

LiftedResolution lift_resolution(const ChainComplex& Rres, const std::vector<Polynomial>& f);

// Classic CI operators: exact decomposition t1^2 = sum_i f_i t2[i], found by
// tracked division of every entry; t2[i][p] : G_p -> G_{p-2}.
std::vector<std::vector<GradedMap>> ci_operators(const LiftedResolution& L, int tie_break = 0);

// Higher operators t_n, n >= 2, stored through their K_0 components
// phi_T : G_p -> G_{p-n} for subsets T of size n-1; t_0 and t_1 are implicit.
struct HigherCISystem {
    int c = 0;
    int nmax = 0;
    // comps.at({n,p})[k] corresponds to wedge_masks(c, n-1)[k]
    std::map<std::pair<int, int>, std::vector<GradedMap>> comps;
};

HigherCISystem higher_ci(const LiftedResolution& L, int nmax, int tie_break = 0);

// the full component t_i^{p,q} : G_p (x) K_q -> G_{p-i} (x) K_{q+i-1} on the
// flattened modules (mask-major basis)
GradedMap t_full(const LiftedResolution& L, const HigherCISystem& T, int i, int p, int q);

// flattened G_p (x) K_q
FreeModule gk_summand(const LiftedResolution& L, int p, int q);

// check sum_{i+j=n} t_i t_j = 0 for all 0 <= n <= nmax on the computed range
void verify_t_identities(const LiftedResolution& L, const HigherCISystem& T, int nmax);

// The total complex GK with block differentials; an S-free resolution of M
// when R (x) G resolves M.
ChainComplex build_gk(const LiftedResolution& L, const HigherCISystem& T);

// split off unit summands until minimal
ChainComplex minimize_gk(const ChainComplex& GK);

// constant parts of the stored components, for the strand complexes:
// t2_bar(L,T,i)[p] : scalar matrix G_p -> G_{p-2} for e_i
linalg::Mat tbar_component(const LiftedResolution& L, const HigherCISystem& T, int n, int p,
                           int mask_index);

// image-membership helpers used by the acceptance checks
bool kernel_contained_in_image(const GradedMap& dn, const GradedMap& dn1,
                               std::vector<Polynomial> quotient = {}, int degree_cap = 1 << 20);
bool same_image(const GradedMap& A, const GradedMap& B, std::vector<Polynomial> quotient = {});

}  // namespace torext
