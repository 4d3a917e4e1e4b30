#pragma once

#include "torext/emodule.hpp"

namespace torext {

// Solve A.x = b columnwise over the column span of A (optionally modulo a
// quotient ideal), with deterministic quotient selection. tie_break != 0
// permutes the generator insertion order to exercise a different but equally
// valid particular solution.
class ImageSolver {
  public:
    ImageSolver(const GradedMap& A, std::vector<Polynomial> quotient = {}, int tie_break = 0);

    // b as a column into A.target(); returns the coefficient column, or
    // nullopt if b is not in the image
    std::optional<std::vector<Polynomial>> solve(const ModVec& b);
    // solve for every column of B; nullopt if any column fails
    std::optional<GradedMap> solve_map(const GradedMap& B, int extra_shift);

    bool contains(const ModVec& b);

  private:
    const Ring* ring_;
    GradedMap A_;
    std::vector<int> perm_;  // engine component -> column of A
    GBEngine eng_;
};

struct HomotopySystem {
    ChainComplex base;  // finite free resolution over S
    std::vector<Polynomial> f;
    // sigma[i][p] : F_p -> F_{p+1}, internal degree shift deg(f_i)
    std::vector<std::vector<GradedMap>> sigma;
};

// one homotopy sigma for f on F, found degree by degree
std::vector<GradedMap> compute_homotopy(const ChainComplex& F, const Polynomial& f,
                                        int tie_break = 0);

HomotopySystem compute_homotopies(const ChainComplex& F, std::vector<Polynomial> f,
                                  int tie_break = 0);

struct HomotopyRelationReport {
    struct Entry {
        int i, j;
        bool exact;      // sigma_i sigma_j + sigma_j sigma_i == 0 on the nose
        bool certified;  // null-homotopy certificate found and re-checked
    };
    std::vector<Entry> entries;
    bool all_certified = true;
};

HomotopyRelationReport verify_homotopy_relations(const HomotopySystem& H);

// E-action on Tor via the constant parts of the homotopies; requires a
// minimal base resolution
EModule e_action_on_tor(const HomotopySystem& H);

// same action computed on homology representatives (works for non-minimal F)
EModule e_action_on_tor_via_homology(const HomotopySystem& H);

}  // namespace torext
