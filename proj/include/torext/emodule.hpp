#pragma once

#include <optional>

#include "torext/resolution.hpp"

namespace torext {

// Finite-dimensional graded module over the exterior algebra E = k<e_1..e_c>,
// given by dimensions per degree and c operators raising degree by one.
// Operators must square to zero and anticommute.
struct EModule {
    int c = 0;
    uint32_t p = 101;
    int lo = 0;
    std::vector<int> dims;                     // degrees lo .. lo+dims.size()-1
    std::vector<std::vector<linalg::Mat>> op;  // op[i][k]: T_{lo+k} -> T_{lo+k+1}

    int hi() const { return lo + (int)dims.size() - 1; }
    int dim_at(int d) const {
        if (d < lo || d > hi()) return 0;
        return dims[d - lo];
    }
    int total_dim() const {
        int s = 0;
        for (int x : dims) s += x;
        return s;
    }
    GradedDims graded_dims() const { return GradedDims{lo, dims}; }

    // e_{i+1} as a matrix T_d -> T_{d+1} (zero-shaped outside the support)
    linalg::Mat op_at(int i, int d) const;

    void check_relations() const;  // throws on violated exterior relations
    EModule dual() const;          // degrees negated, operators transposed
    EModule shifted(int s) const;  // degree shift: (T(s))_d = T_{d+s}... see impl

    static EModule zero(int c, uint32_t p) { return EModule{c, p, 0, {}, {}}; }
};

// direct sum, dimensions and operators block-wise
EModule emodule_direct_sum(const EModule& A, const EModule& B);

// E itself as an EModule (dims C(c,q), operators = left wedge)
EModule exterior_algebra_module(int c, uint32_t p);

// E/(e_{p+1},...,e_c): the sub-exterior algebra on e_1..e_p as an E-module
EModule exterior_quotient_module(int c, uint32_t p_char, int keep);

// restrict the module structure to the subalgebra on e_1..e_keep
EModule restrict_to_subalgebra(const EModule& T, int keep);

// Submodule generated by the listed degrees' full slices (closure under the
// operators), with the induced quotient; inclusion/projection per degree.
struct SubQuotient {
    EModule sub, quot;
    std::vector<linalg::Mat> inclusion;   // sub_d -> T_d coordinates
    std::vector<linalg::Mat> projection;  // T_d -> quot_d coordinates
};
SubQuotient generated_submodule(const EModule& T, const std::vector<int>& seed_degrees);

// element of E: coefficients per subset mask
struct EElem {
    std::vector<uint32_t> a;  // size 2^c

    bool is_zero() const {
        for (auto x : a)
            if (x) return false;
        return true;
    }
};

EElem eelem_zero(int c);
EElem eelem_mul(const EElem& x, const EElem& y, int c, uint32_t p);

// matrix over E
struct EMatrix {
    int rows = 0, cols = 0;
    int c = 0;
    uint32_t p = 101;
    std::vector<EElem> a;

    EElem& at(int i, int j) { return a[(size_t)i * cols + j]; }
    const EElem& at(int i, int j) const { return a[(size_t)i * cols + j]; }
    static EMatrix zero(int r, int cl, int c_, uint32_t p_);
};

EMatrix emat_mul(const EMatrix& x, const EMatrix& y);
bool emat_is_zero(const EMatrix& m);
// no constant coefficients anywhere
bool emat_minimal(const EMatrix& m);

// Complex of free E-modules; step s has generators in listed degrees,
// dif[s] : step s -> step s-1 (dif[0] unused).
struct EFreeComplex {
    int c = 0;
    uint32_t p = 101;
    std::vector<std::vector<int>> gens;
    std::vector<EMatrix> dif;

    int length() const { return (int)gens.size() - 1; }
    BettiTable betti() const;
    bool is_minimal() const;
    void check_d2() const;
};

// degree-d slice basis of a free E-module: pairs (generator, mask), ordered by
// generator then mask ascending
std::vector<std::pair<int, uint32_t>> efree_slice_basis(const std::vector<int>& gen_degs, int c,
                                                        int d);
linalg::Mat emat_slice(const EMatrix& m, const std::vector<int>& src_gens,
                       const std::vector<int>& tgt_gens, int d);

// homology dims of the free complex at step n, per internal degree
GradedDims efc_homology_dims(const EFreeComplex& C, int n, int max_internal_degree);

// expand a free E-module into an EModule (for acyclicity/H0 computations)
EModule efree_to_emodule(const std::vector<int>& gen_degs, int c, uint32_t p, int top_degree);

// H0 = coker(dif[1]) of an E-free complex, as an EModule, degrees up to `top`
EModule efc_h0(const EFreeComplex& C, int top);

// Minimal free resolution over E by iterated minimal covers; exact linear
// algebra, deterministic generator choices.
EFreeComplex e_free_resolution(const EModule& T, int length);

struct ERegularity {
    int value = 0;
    bool stabilized = false;
    BettiTable table;
};
// sup(j - i) over the computed window, with a stabilization report
ERegularity e_regularity(const EModule& T, int window);

// isomorphism test for E-modules: returns degreewise matrices of an
// isomorphism commuting with all operators, if one exists
std::optional<std::vector<linalg::Mat>> emodule_isomorphism(const EModule& A, const EModule& B);

// Leading-term analysis of the relations of the minimal cover of T under the
// lex order with e_c > ... > e_1 (ties by generator index): dims of the
// quotient by the monomial module generated by relation leading terms taken in
// degrees up to max generator degree + 1.
GradedDims leading_term_quotient_dims(const EModule& T, int window);

}  // namespace torext
