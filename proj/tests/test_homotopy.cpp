#include <doctest.h>

#include <algorithm>
#include <random>

#include "torext/tor_module.hpp"

using namespace torext;

namespace {

const Ring* ring3() { return intern_ring(Ring::make(101, {"x1", "x2", "x3"})); }

std::vector<Polynomial> cubes(const Ring* R) {
    std::vector<Polynomial> f;
    for (int i = 0; i < R->nvars; ++i) {
        Polynomial x = Polynomial::variable(R, i);
        f.push_back(x * x * x);
    }
    return f;
}

std::vector<Polynomial> vars_of(const Ring* R) {
    std::vector<Polynomial> f;
    for (int i = 0; i < R->nvars; ++i) f.push_back(Polynomial::variable(R, i));
    return f;
}

// direct check of sigma d + d sigma = f id
void check_homotopy_identity(const ChainComplex& F, const std::vector<GradedMap>& sig,
                             const Polynomial& f) {
    const Ring* R = F.ring();
    for (int p = 0; p <= F.hi(); ++p) {
        GradedMap want(R, F.term(p), F.term(p), f.degree());
        for (int r = 0; r < F.term(p).rank(); ++r) want.set(r, r, f);
        GradedMap acc(R, F.term(p), F.term(p), f.degree());
        bool have = false;
        if (p >= 1 && p - 1 < (int)sig.size()) {
            acc = compose(sig[p - 1], F.dif(p));
            have = true;
        }
        if (p < (int)sig.size()) {
            GradedMap t = compose(F.dif(p + 1), sig[p]);
            acc = have ? acc + t : t;
        }
        CHECK(acc == want);
    }
}

}  // namespace

TEST_CASE("homotopy for a cube on the Koszul resolution; x^2 scaling of the wedge homotopy") {
    const Ring* R = ring3();
    ChainComplex K = resolve(ModulePresentation::residue_field(R), 3);
    Polynomial f0 = cubes(R)[0];
    auto sig = compute_homotopy(K, f0);
    check_homotopy_identity(K, sig, f0);
    // x1^2 times the wedge homotopy satisfies the same identity on the Koszul complex
    ChainComplex KZ = koszul(R, vars_of(R));
    auto wedge = koszul_homotopy(KZ, vars_of(R), 0);
    Polynomial x1sq = Polynomial::variable(R, 0) * Polynomial::variable(R, 0);
    auto scaled_at = [&](int p) {
        GradedMap s(R, KZ.term(p), KZ.term(p + 1), 3);
        for (int j = 0; j < KZ.term(p).rank(); ++j)
            for (auto& [i, e] : wedge[p].col(j)) s.set(i, j, e * x1sq);
        return s;
    };
    for (int p = 0; p <= 3; ++p) {
        GradedMap want(R, KZ.term(p), KZ.term(p), 3);
        for (int r = 0; r < KZ.term(p).rank(); ++r) want.set(r, r, f0);
        GradedMap acc(R, KZ.term(p), KZ.term(p), 3);
        bool have = false;
        if (p >= 1) {
            acc = compose(scaled_at(p - 1), KZ.dif(p));
            have = true;
        }
        if (p < 3) {
            GradedMap t = compose(KZ.dif(p + 1), scaled_at(p));
            acc = have ? acc + t : t;
        }
        CHECK(acc == want);
    }
}

TEST_CASE("zero is a homotopy for f = 0") {
    const Ring* R = ring3();
    ChainComplex K = resolve(ModulePresentation::residue_field(R), 3);
    auto sig = compute_homotopy(K, Polynomial::zero(R));
    for (auto& s : sig) CHECK(s.is_zero());
}

TEST_CASE("homotopy identity is exact on the second syzygy fixture") {
    const Ring* R = ring3();
    auto f = cubes(R);
    ChainComplex kres = resolve(ModulePresentation::residue_field(R, f), 4);
    ModulePresentation N2s = syzygy_as_s_module(kres, f, 2);
    ChainComplex F = resolve(N2s, 3);
    auto sig = compute_homotopy(F, f[0]);
    check_homotopy_identity(F, sig, f[0]);
}

TEST_CASE("homotopy fails when f does not annihilate the module") {
    const Ring* R = ring3();
    ChainComplex K = resolve(ModulePresentation::residue_field(R), 3);
    CHECK_THROWS_AS(compute_homotopy(K, Polynomial::constant(R, 1)), Error);
}

TEST_CASE("homotopy defining identity on random small cyclic fixtures") {
    const Ring* R = ring3();
    std::mt19937 rng(2024);
    int done = 0;
    while (done < 20) {
        auto mons2 = monomials_of_degree(R, 2);
        auto mons3 = monomials_of_degree(R, 3);
        Polynomial g1(R, {{mons2[rng() % mons2.size()], (uint32_t)(1 + rng() % 100)},
                          {mons2[rng() % mons2.size()], (uint32_t)(1 + rng() % 100)}});
        Polynomial g2(R, {{mons3[rng() % mons3.size()], (uint32_t)(1 + rng() % 100)}});
        if (g1.is_zero() || g2.is_zero()) continue;
        FreeModule F0{{0}};
        FreeModule F1{{2, 3}};
        GradedMap pres(R, F1, F0, 0);
        pres.set(0, 0, g1);
        pres.set(0, 1, g2);
        ModulePresentation M{R, {}, pres};
        Polynomial f = g1 * Polynomial::variable(R, rng() % 3);
        ChainComplex res = resolve(M, 3);
        auto sig = compute_homotopy(res, f);
        check_homotopy_identity(res, sig, f);
        ++done;
    }
}

TEST_CASE("relations certified on the Koszul resolution of k") {
    const Ring* R = ring3();
    auto f = cubes(R);
    ChainComplex K = resolve(ModulePresentation::residue_field(R), 3);
    HomotopySystem H = compute_homotopies(K, f);
    auto rep = verify_homotopy_relations(H);
    CHECK(rep.all_certified);
    CHECK(rep.entries.size() == 6);
}

TEST_CASE("single-element systems only test the square") {
    const Ring* R = intern_ring(Ring::make(101, {"x1"}));
    Polynomial x = Polynomial::variable(R, 0);
    FreeModule F0{{0}}, F1{{2}};
    GradedMap pres(R, F1, F0, 0);
    pres.set(0, 0, x * x);
    ChainComplex F = resolve(ModulePresentation{R, {}, pres}, 1);
    HomotopySystem H = compute_homotopies(F, {x * x * x});
    auto rep = verify_homotopy_relations(H);
    CHECK(rep.entries.size() == 1);
    CHECK(rep.all_certified);
}

TEST_CASE("all nine relations certified on the second syzygy fixture") {
    const Ring* R = ring3();
    auto f = cubes(R);
    ChainComplex kres = resolve(ModulePresentation::residue_field(R, f), 4);
    ModulePresentation N2s = syzygy_as_s_module(kres, f, 2);
    ChainComplex F = resolve(N2s, 3);
    HomotopySystem H = compute_homotopies(F, f);
    auto rep = verify_homotopy_relations(H);
    CHECK(rep.all_certified);
    CHECK(rep.entries.size() == 6);
}

TEST_CASE("action on Tor of the residue field is trivial") {
    const Ring* R = ring3();
    auto f = cubes(R);
    TorEModule tk = tor_emodule(ModulePresentation::residue_field(R), f);
    CHECK(tk.T.dims == std::vector<int>{1, 3, 3, 1});
    for (int i = 0; i < 3; ++i)
        for (auto& m : tk.T.op[i]) CHECK(m.is_zero());
}

TEST_CASE("one-variable matrix factorization has zero action") {
    const Ring* R = intern_ring(Ring::make(101, {"x1"}));
    Polynomial x = Polynomial::variable(R, 0);
    FreeModule F0{{0}}, F1{{2}};
    GradedMap pres(R, F1, F0, 0);
    pres.set(0, 0, x * x);
    TorEModule t = tor_emodule(ModulePresentation{R, {}, pres}, {x * x * x});
    CHECK(t.T.dims == std::vector<int>{1, 1});
    CHECK(t.T.op[0][0].is_zero());
}

TEST_CASE("first syzygy of k has action generated in degrees 0,1,2") {
    const Ring* R = ring3();
    auto f = cubes(R);
    ChainComplex kres = resolve(ModulePresentation::residue_field(R, f), 4);
    ModulePresentation N1s = syzygy_as_s_module(kres, f, 1);
    TorEModule t1 = tor_emodule(N1s, f);
    EFreeComplex res = e_free_resolution(t1.T, 0);
    std::vector<int> gdegs = res.gens[0];
    CHECK(std::count(gdegs.begin(), gdegs.end(), 0) == 3);
    CHECK(std::count(gdegs.begin(), gdegs.end(), 1) == 6);
    CHECK(std::count(gdegs.begin(), gdegs.end(), 2) == 1);
    CHECK(std::count(gdegs.begin(), gdegs.end(), 3) == 0);
}

TEST_CASE("tor_emodule rejects non-annihilating sequences") {
    const Ring* R = ring3();
    // x1^2 does not annihilate k = S/(x1,x2,x3)? it does; use a module not
    // killed by the sequence: S/(x1) with f = x2^3
    FreeModule F0{{0}}, F1{{1}};
    GradedMap pres(R, F1, F0, 0);
    pres.set(0, 0, Polynomial::variable(R, 0));
    Polynomial x2 = Polynomial::variable(R, 1);
    CHECK_THROWS_AS(tor_emodule(ModulePresentation{R, {}, pres}, {x2 * x2 * x2}), Error);
}

TEST_CASE("independence of homotopy choices") {
    const Ring* R = ring3();
    auto f = cubes(R);
    ChainComplex kres = resolve(ModulePresentation::residue_field(R, f), 4);
    ModulePresentation N2s = syzygy_as_s_module(kres, f, 2);
    TorEModule a = tor_emodule(N2s, f, 0);
    TorEModule b = tor_emodule(N2s, f, 1);
    CHECK(a.T.dims == b.T.dims);
    for (int i = 0; i < 3; ++i)
        for (size_t k = 0; k < a.T.op[i].size(); ++k) CHECK(a.T.op[i][k] == b.T.op[i][k]);
}

TEST_CASE("minimal and homology-representative paths agree") {
    const Ring* R = ring3();
    auto f = cubes(R);
    ChainComplex kres = resolve(ModulePresentation::residue_field(R, f), 4);
    ModulePresentation N1s = syzygy_as_s_module(kres, f, 1);
    ChainComplex F = resolve(N1s, 3);
    HomotopySystem H = compute_homotopies(F, f);
    EModule direct = e_action_on_tor(H);
    EModule via_h = e_action_on_tor_via_homology(H);
    CHECK(direct.dims == via_h.dims);
    for (int i = 0; i < 3; ++i)
        for (size_t k = 0; k < direct.op[i].size(); ++k) CHECK(direct.op[i][k] == via_h.op[i][k]);
}
