#pragma once

#include <map>
#include <string>

#include "torext/complexes.hpp"

namespace torext {

// Module given by a homogeneous presentation matrix; the module is the
// cokernel. Over R = S/(quotient) the matrix entries are normal-form
// representatives.
struct ModulePresentation {
    const Ring* ring = nullptr;
    std::vector<Polynomial> quotient;  // empty: module over S
    GradedMap pres;

    static ModulePresentation of_ring(const Ring* R, std::vector<Polynomial> quotient = {}) {
        FreeModule F0;
        F0.degs = {0};
        ModulePresentation M;
        M.ring = R;
        M.quotient = std::move(quotient);
        M.pres = GradedMap::zero(R, FreeModule{}, F0);
        return M;
    }
    static ModulePresentation residue_field(const Ring* R, std::vector<Polynomial> quotient = {});
    static ModulePresentation cokernel(const Ring* R, GradedMap m,
                                       std::vector<Polynomial> quotient = {}) {
        return ModulePresentation{R, std::move(quotient), std::move(m)};
    }
};

struct BettiTable {
    std::map<std::pair<int, int>, long long> b;  // (homological i, internal j) -> rank

    long long at(int i, int j) const {
        auto it = b.find({i, j});
        return it == b.end() ? 0 : it->second;
    }
    long long total(int i) const {
        long long s = 0;
        for (auto& [k, v] : b)
            if (k.first == i) s += v;
        return s;
    }
    int max_i() const {
        int m = -1;
        for (auto& [k, v] : b) m = std::max(m, k.first);
        return m;
    }
    friend bool operator==(const BettiTable& x, const BettiTable& y) { return x.b == y.b; }
};

// Split off all rank-one summands with unit differential entries; homotopy
// equivalent minimal-candidate complex.
ChainComplex prune_complex(const ChainComplex& C);

// minimal presentation: prune units, then drop redundant relation columns
GradedMap minimal_presentation(const ModulePresentation& M);

struct ResolveOptions {
    int degree_cap = 0;  // 0: derive from the data (spec default bound)
};

// Minimal free resolution of coker(pres) to homological degree `length`:
// term(0) is the minimal cover, dif(i) for 1 <= i <= length.
ChainComplex resolve(const ModulePresentation& M, int length, ResolveOptions opts = {});

// i-th syzygy presented by the (i+1)-st differential of the minimal resolution
ModulePresentation syzygy_module(const ModulePresentation& M, int i);

// Betti numbers of a minimal complex: counts of generators by degree
BettiTable betti(const ChainComplex& C);

// internal degrees are homological positions shifted: used by E/R-side tables
std::string render_betti(const BettiTable& t, int cols = -1);

}  // namespace torext
