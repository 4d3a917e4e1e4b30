#pragma once

#include <optional>

#include "torext/groebner.hpp"
#include "torext/linalg.hpp"

namespace torext {

// Bounded complex of graded free modules ... -> C_{i} -> C_{i-1} -> ...
// term(k) is the module in homological degree lo+k; dif(i) maps C_i -> C_{i-1}.
// Over a quotient ring the ideal generators are carried along and d^2 is
// checked modulo them.
class ChainComplex {
  public:
    ChainComplex() = default;
    ChainComplex(const Ring* R, int lo, std::vector<FreeModule> terms, std::vector<GradedMap> difs,
                 std::vector<Polynomial> quotient = {}, bool check = true);

    const Ring* ring() const { return ring_; }
    const std::vector<Polynomial>& quotient() const { return quotient_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + (int)terms_.size() - 1; }

    const FreeModule& term(int i) const;
    bool has_term(int i) const { return i >= lo_ && i <= hi(); }
    // differential C_i -> C_{i-1}; identity-shaped zero outside the support
    GradedMap dif(int i) const;

    ChainComplex shifted(int s) const;  // C[s]_n = C_{n-s}, d scaled by (-1)^s

    void check_d2() const;

  private:
    const Ring* ring_ = nullptr;
    int lo_ = 0;
    std::vector<FreeModule> terms_;
    std::vector<GradedMap> difs_;  // difs_[k]: terms_[k] -> terms_[k-1], difs_[0] unused
    std::vector<Polynomial> quotient_;
};

// reduce a matrix entrywise modulo a Groebner basis of the quotient ideal
Polynomial poly_normal_form(const Polynomial& f, const GroebnerBasis& ideal_gb);
GradedMap reduce_entries(const GradedMap& m, const GroebnerBasis& ideal_gb);

// rank-1 Groebner basis of an ideal
GroebnerBasis ideal_gb(const Ring* R, const std::vector<Polynomial>& gens,
                       int degree_cap = 1 << 20);

// Koszul complex on homogeneous f_1..f_c; term q has rank C(c,q), basis
// indexed by subsets as bitmasks enumerated in increasing numeric order.
ChainComplex koszul(const Ring* R, const std::vector<Polynomial>& f);

// masks with popcount q, increasing; the fixed basis enumeration of wedge^q
std::vector<uint32_t> wedge_masks(int c, int q);
// sign of e_i ^ e_T, 0 if i in T; fills the resulting mask
int wedge_sign(int i, uint32_t mask);
// sign of e_A ^ e_B (A, B disjoint masks), 0 if they intersect
int wedge_sign_masks(uint32_t a, uint32_t b);

// left-multiplication homotopy family sigma_p : K_p -> K_{p+1} for f_i
std::vector<GradedMap> koszul_homotopy(const ChainComplex& K, const std::vector<Polynomial>& f,
                                       int i);

ChainComplex tensor(const ChainComplex& C, const ChainComplex& D);

// mapping cone of a chain map phi: C -> D, phi[i]: C_i -> D_i
ChainComplex cone(const ChainComplex& C, const ChainComplex& D,
                  const std::vector<GradedMap>& phi);

// Complex of graded vector spaces: what is left after -.k. Generator degrees
// are retained; differentials are the constant parts of the entries.
struct KComplex {
    uint32_t p = 101;
    int lo = 0;
    std::vector<FreeModule> terms;
    std::vector<linalg::Mat> dif;  // dif[k]: terms[k] -> terms[k-1] (dif[0] unused)

    const FreeModule& term(int i) const { return terms[i - lo]; }
    bool has_term(int i) const { return i >= lo && i <= lo + (int)terms.size() - 1; }
    int hi() const { return lo + (int)terms.size() - 1; }
};

KComplex reduce_mod_m(const ChainComplex& C);

struct GradedDims {
    int lo = 0;
    std::vector<int> dims;
    int at(int d) const {
        if (d < lo || d >= lo + (int)dims.size()) return 0;
        return dims[d - lo];
    }
    int total() const {
        int s = 0;
        for (int x : dims) s += x;
        return s;
    }
    friend bool operator==(const GradedDims& a, const GradedDims& b);
};

struct HomologyAtDegree {
    GradedDims dims;
    // cycle representatives per internal degree: columns are coordinates in the
    // full term basis (all generators of the term, fixed order)
    std::vector<linalg::Mat> reps;  // indexed parallel to dims.dims
};

// homology of a K-complex in homological degree n, split by internal degree;
// representatives chosen by echelon with lowest-index pivot preference
HomologyAtDegree homology(const KComplex& C, int n);

GradedDims homology_dims(const KComplex& C, int n);

// --- graded slice machinery ----------------------------------------------

// basis of the degree-d part of a free module over S/(ideal lt's): pairs
// (generator, standard monomial); deterministic order (gen asc, grevlex desc)
struct SliceBasis {
    std::vector<std::pair<int, Monomial>> elems;
    int size() const { return (int)elems.size(); }
};

SliceBasis slice_basis(const Ring* R, const FreeModule& F, int d,
                       const GroebnerBasis* ideal = nullptr);

// matrix of the degree-d slice of f (source degree d, target degree d+shift)
linalg::Mat slice_matrix(const GradedMap& f, int d, const GroebnerBasis* ideal = nullptr);

// dim H_i(C) in internal degree d via rank-nullity on slices (test oracle)
int homology_dim_at(const ChainComplex& C, int i, int d, const GroebnerBasis* ideal = nullptr);

}  // namespace torext
