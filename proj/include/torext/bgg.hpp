#pragma once

#include "torext/rmodule.hpp"

namespace torext {

// Linear free complex over E, written cohomologically: delta[i]: term^i ->
// term^{i+1}. Term^i is free of rank dim U_i with generators in degree -i, so
// the degree-one entries give degree-preserving maps. Under this normalization
// the module coresolved by R(U) appears shifted by c (the identification
// Hom(E,k) = E(c), fixed once here).
struct LinearEComplex {
    int c = 0;
    uint32_t p = 101;
    std::vector<std::vector<int>> gens;  // generator degrees of term^i
    std::vector<EMatrix> delta;          // delta[i]: term^i -> term^{i+1}

    int positions() const { return (int)gens.size(); }
    void check_delta2() const;
    GradedDims homology_at(int i) const;
};

// L(T): homological positions T.lo .. T.hi over the chi ring, term at position
// d free with generators in degree d, differential transposed from the
// operators. Resolves the BGG partner module with U_d = (T_d)^dual.
ChainComplex bgg_L(const EModule& T, const Ring* chiR);

// R(U): the linear E-free cochain complex of a half module
LinearEComplex bgg_R(const RHalfModule& U);

// homology of L(T) is concentrated in the lowest position
bool is_acyclic_L(const ChainComplex& L, int through_degree, int* first_failure = nullptr);

// homology of R(U) concentrated in position 0 within the window
bool is_acyclic_R(const LinearEComplex& R, int window, int* first_failure = nullptr);

struct ReciprocityReport {
    bool l_resolves_u = false;    // H(L(T)) concentrated, H0 matches U
    bool r_coresolves_t = false;  // H(R(U)) concentrated, H^0 matches dual(T)
    bool ok() const { return l_resolves_u && r_coresolves_t; }
};

ReciprocityReport reciprocity_check(const RHalfModule& U, const EModule& T, int window);

}  // namespace torext
