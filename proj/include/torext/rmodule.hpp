#pragma once

#include "torext/ci_ops.hpp"

namespace torext {

// Ext_R(M,k) with the chi operators of degree 2: dims per homological degree,
// chi[i][d] : Ext^d -> Ext^{d+2}.
struct ExtModule {
    int c = 0;
    uint32_t p = 101;
    std::vector<int> dims;
    std::vector<std::vector<linalg::Mat>> chi;

    int top() const { return (int)dims.size() - 1; }
    int dim_at(int d) const { return (d >= 0 && d <= top()) ? dims[d] : 0; }
    linalg::Mat chi_at(int i, int d) const;
};

// Even or odd half, reindexed so the operators have degree 1.
struct RHalfModule {
    int c = 0;
    uint32_t p = 101;
    std::vector<int> dims;                     // half-degrees 0..window
    std::vector<std::vector<linalg::Mat>> op;  // op[i][d]: U_d -> U_{d+1}
    int parity = 0;                            // 0 even, 1 odd; display shift only

    int window() const { return (int)dims.size() - 1; }
    int dim_at(int d) const { return (d >= 0 && d <= window()) ? dims[d] : 0; }
    linalg::Mat op_at(int i, int d) const;
    GradedDims graded_dims() const { return GradedDims{0, dims}; }
    void check_commutativity() const;
};

// chi_i = transpose of (t2,i mod m); dims are the R-Betti numbers
ExtModule ext_rmodule(const LiftedResolution& L, const std::vector<std::vector<GradedMap>>& t2);

RHalfModule half_module(const ExtModule& E, int parity);

// the polynomial ring of CI operators, one variable per f_i
Ring make_chi_ring(uint32_t p, int c);

// presentation of the half module over the chi ring, valid through its window
ModulePresentation half_module_presentation(const RHalfModule& U, const Ring* chiR);

struct RResolution {
    ChainComplex complex;  // minimal free resolution over the chi ring
    BettiTable table;
    int regularity = 0;  // max over i of (top generator degree at i) - i
};

// finite minimal free resolution over the chi ring
RResolution r_free_resolution(const RHalfModule& U, int length = -1);

int r_regularity(const RHalfModule& U);

// Hilbert function of the presented module through a degree
HilbertFunction half_module_hilbert(const RHalfModule& U, const Ring* chiR, int through);

// leading-term quotient dims under lex chi_1 > ... > chi_c (relations taken in
// degrees <= max generator degree + 1, then closed upward)
GradedDims ext_leading_term_quotient_dims(const RHalfModule& U, int window);

struct ExtStructureReport {
    int free_rank = 0;            // split free summands generated in degree 0
    GradedDims nonfree_hilbert;   // Hilbert function of the complement
    bool nonfree_is_shifted_max_ideal = false;
    GradedMap nonfree_presentation;
};

// Does the c x c matrix of linear forms present the maximal ideal shifted to
// degree 0? Certified by an explicit isomorphism of cokernels against the
// Koszul presentation; two matrices passing this test present isomorphic
// modules and are therefore row/column equivalent over k.
bool presents_shifted_maximal_ideal(const GradedMap& P, const Ring* chiR);

// structure of a module generated in degree 0 from its minimal presentation
ExtStructureReport ext_structure_report(const RHalfModule& U, const Ring* chiR, int window);

// tau : Ext^1_S (x) R(-1) -> Hom(M,k) (x) R built from the Tor multiplication;
// returns the presentation map over the chi ring
GradedMap nonminimal_presentation(const EModule& tor, const Ring* chiR);

}  // namespace torext
