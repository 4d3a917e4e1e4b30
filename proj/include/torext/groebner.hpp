#pragma once

#include <map>
#include <vector>

#include "torext/graded.hpp"

namespace torext {

// Term of an element of a free module: c * m * e_comp.
struct MTerm {
    int comp;
    Monomial m;
    uint32_t c;
};

// Element of a graded free module, terms sorted descending in the active
// module order.
struct ModVec {
    std::vector<MTerm> t;

    bool is_zero() const { return t.empty(); }
    const MTerm& lead() const { return t.front(); }
    friend bool operator==(const ModVec& a, const ModVec& b) {
        if (a.t.size() != b.t.size()) return false;
        for (size_t i = 0; i < a.t.size(); ++i)
            if (a.t[i].comp != b.t[i].comp || a.t[i].m != b.t[i].m || a.t[i].c != b.t[i].c)
                return false;
        return true;
    }
};

// Module monomial orders. TopGrevlex compares the monomial part first
// (grevlex), then prefers lower component. Schreyer compares images under the
// parent basis leading terms, then lower component.
struct ModuleOrder {
    enum Kind { TopGrevlex, Schreyer };
    Kind kind = TopGrevlex;
    std::vector<Monomial> parent_mono;  // Schreyer: lt monomial of parent gen per component
    std::vector<int> parent_comp;       // Schreyer: lt component of parent gen per component

    static ModuleOrder top() { return ModuleOrder{}; }
    static ModuleOrder schreyer(std::vector<Monomial> pm, std::vector<int> pc) {
        ModuleOrder o;
        o.kind = Schreyer;
        o.parent_mono = std::move(pm);
        o.parent_comp = std::move(pc);
        return o;
    }

    bool greater(int c1, const Monomial& m1, int c2, const Monomial& m2) const;
    bool greater(const MTerm& a, const MTerm& b) const { return greater(a.comp, a.m, b.comp, b.m); }
};

// degree of a homogeneous module element (ambient generator degrees + monomial)
int modvec_degree(const ModVec& v, const FreeModule& ambient);
bool modvec_homogeneous(const ModVec& v, const FreeModule& ambient);

ModVec mv_from_column(const GradedMap& f, int j, const ModuleOrder& ord);
ModVec mv_unit(int comp);
ModVec mv_scaled(const ModVec& v, uint32_t c, const PrimeField& fp);
// a - c * (m * b)
ModVec mv_axpy(const ModVec& a, uint32_t c, const Monomial& m, const ModVec& b,
               const ModuleOrder& ord, const PrimeField& fp);
ModVec mv_sorted(std::vector<MTerm> terms, const ModuleOrder& ord, const PrimeField& fp);

struct GBOptions {
    int degree_cap = 1 << 20;
    bool track = false;
    ModuleOrder order = ModuleOrder::top();
};

// Buchberger engine over a graded free module, optionally modulo a quotient
// ideal (generators of I times every basis vector are appended as untracked
// elements). Tracks expressions of basis elements in the input generators so
// that zero reductions yield syzygies and normal forms yield division
// certificates.
class GBEngine {
  public:
    GBEngine(const Ring* R, FreeModule ambient, std::vector<Polynomial> quotient, GBOptions opt);

    // returns the tracking component assigned to this generator
    int add_generator(ModVec v);
    void add_aux(ModVec v);  // participates in the basis, no tracking component

    void run(int through_degree);
    void run_all() { run(opt_.degree_cap); }

    struct NFResult {
        ModVec rem;    // normal form
        ModVec combo;  // over tracked generator components: v - rem = combo . gens (mod aux)
    };
    NFResult normal_form(const ModVec& v) const;
    bool contains(const ModVec& v) const;

    // syzygies of the tracked generators collected so far (projected away from aux)
    const std::vector<ModVec>& syzygies() const { return syz_; }
    const FreeModule& syzygy_ambient() const { return track_ambient_; }

    // canonical reduced basis: minimal, monic, tail-reduced, sorted
    std::vector<ModVec> reduced_basis() const;

    const Ring* ring() const { return R_; }
    const FreeModule& ambient() const { return ambient_; }
    const ModuleOrder& order() const { return opt_.order; }
    const std::vector<Polynomial>& quotient() const { return quotient_; }
    int generators_added() const { return n_tracked_; }

  private:
    struct Elem {
        ModVec v, w;
        int deg;
    };
    struct PairKey {
        int deg, i, j;
        bool operator<(const PairKey& o) const {
            if (deg != o.deg) return deg < o.deg;
            if (j != o.j) return j < o.j;
            return i < o.i;
        }
    };

    const Ring* R_;
    FreeModule ambient_;
    std::vector<Polynomial> quotient_;
    GBOptions opt_;
    FreeModule track_ambient_;
    int n_tracked_ = 0;

    std::vector<Elem> basis_;
    std::vector<std::vector<int>> by_comp_;
    std::map<PairKey, Monomial> pairs_;  // value: lcm monomial
    std::multimap<int, Elem> pending_;   // inputs by degree
    std::vector<ModVec> syz_;
    int done_through_ = -1;

    void reduce_full(ModVec& v, ModVec& w) const;
    void insert_basis(ModVec v, ModVec w, int deg);
    void process(Elem e);
};

// Auto-reduced Gröbner basis of the submodule generated by homogeneous
// elements (plus I times the ambient basis when quotient is nonempty).
struct GroebnerBasis {
    const Ring* ring = nullptr;
    FreeModule ambient;
    std::vector<Polynomial> quotient;
    ModuleOrder order;
    std::vector<ModVec> gens;

    int max_lt_degree() const;
};

GroebnerBasis buchberger(const Ring* R, const FreeModule& ambient,
                         const std::vector<ModVec>& gens, const ModuleOrder& order,
                         std::vector<Polynomial> quotient = {}, int degree_cap = 1 << 20);

ModVec normal_form(const ModVec& v, const GroebnerBasis& gb);

// Minimal homogeneous generating set of ker(f) (over S, or over S/quotient),
// sorted by (degree, leading module monomial).
std::vector<ModVec> kernel(const GradedMap& f, std::vector<Polynomial> quotient = {},
                           int degree_cap = 1 << 20);

// Drop generators lying in the submodule spanned by the others (constant
// coefficients allowed in equal degree); result generates the same module.
std::vector<ModVec> minimalize_generators(const Ring* R, const FreeModule& ambient,
                                          std::vector<ModVec> gens,
                                          std::vector<Polynomial> quotient = {});

struct HilbertFunction {
    int lo = 0;
    std::vector<long long> dims;  // dims[d - lo]

    long long at(int d) const {
        if (d < lo || d >= lo + (int)dims.size()) return 0;
        return dims[d - lo];
    }
    long long total() const {
        long long s = 0;
        for (auto x : dims) s += x;
        return s;
    }
};

// Hilbert function of ambient/<gb> per degree, by counting standard monomials.
HilbertFunction hilbert_function(const GroebnerBasis& gb, int through_degree);

// Krull dimension of S/(ideal), from the leading-term ideal: the largest set
// of variables meeting no leading monomial's support.
int krull_dim_quotient(const GroebnerBasis& ideal);

// all monomials of given total degree in R->nvars variables, grevlex-descending
std::vector<Monomial> monomials_of_degree(const Ring* R, int d);

GradedMap map_from_columns(const Ring* R, const FreeModule& target,
                           const std::vector<ModVec>& cols, int shift = 0);

}  // namespace torext
