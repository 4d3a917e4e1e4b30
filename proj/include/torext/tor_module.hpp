#pragma once

#include "torext/bgg.hpp"

namespace torext {

struct TorEModule {
    EModule T;
    ChainComplex sres;  // minimal S-free resolution used
    HomotopySystem homotopies;
};

// S-module presentation of the i-th syzygy of coker(pres over R): the lifted
// next differential augmented by f times the ambient basis
ModulePresentation syzygy_as_s_module(const ChainComplex& Rres, const std::vector<Polynomial>& f,
                                      int i);

// E-module structure on Tor^S(M,k) from the homotopies on the minimal S-free
// resolution; degrees are homological. Throws AnnihilationError when some f_i
// does not annihilate M.
TorEModule tor_emodule(const ModulePresentation& M_over_S, const std::vector<Polynomial>& f,
                       int tie_break = 0);

// T' = E . T_0 and T'' = T / T'
SubQuotient tor_strand_split(const EModule& T);

struct LayerRanks {
    std::vector<long long> b0, b1;  // index p-1, p = 1..c
};

// Invert beta_i = sum_p C(c-p+i, c-p) b(p) on the even and odd R-Betti
// numbers; throws NotHighSyzygy unless a non-negative integer solution fits
// every computed Betti number.
LayerRanks infer_layer_ranks(const std::vector<long long>& rbetti, int c);

// expected graded dims of (+)_p E/(e_p..e_c) (x) k^{b(p)} through `window`
GradedDims layered_quotient_dims(const LayerRanks& ranks, bool odd_side, int c, uint32_t p,
                                 int window);

struct StrandCone {
    EFreeComplex cone;
    std::vector<long long> even_row, odd_row;  // strand ranks by position
};

// Two linear strands built from the reduced CI operators with the t3
// connecting maps; the total complex is the candidate minimal E-free
// resolution of Tor^S(M,k). Throws RegularityHypothesisFailed when a strand
// is not exact in the checked window.
StrandCone strand_cone_resolution(const LiftedResolution& L, const HigherCISystem& T);

struct StrandShiftReport {
    bool row0_matches = false;  // degree-1 strand of M vs degree-0 strand of M1
    bool row1_matches = false;  // degree-1 strand of M1 vs truncated degree-0 strand of M
};

StrandShiftReport strand_shift_check(const BettiTable& tor_betti_M,
                                     const BettiTable& tor_betti_M1, int window);

}  // namespace torext
