#include <doctest.h>

#include <set>

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

struct PeriodicFixture {
    const Ring* R;
    std::vector<Polynomial> f;
    ModulePresentation M;  // over R = S/(x^3)
    ModulePresentation Ms; // over S
};

PeriodicFixture periodic() {
    const Ring* R = intern_ring(Ring::make(101, {"x1"}));
    Polynomial x = Polynomial::variable(R, 0);
    std::vector<Polynomial> f = {x * x * x};
    FreeModule F0{{0}}, F1{{2}};
    GradedMap pres(R, F1, F0, 0);
    pres.set(0, 0, x * x);
    return {R, f, ModulePresentation{R, f, pres}, ModulePresentation{R, {}, pres}};
}

struct N2Fixture {
    const Ring* R;
    std::vector<Polynomial> f;
    ChainComplex kres;
    ChainComplex rres;
    LiftedResolution L;
};

N2Fixture n2fix(int length = 9) {
    N2Fixture fx;
    fx.R = ring3();
    fx.f = cubes(fx.R);
    fx.kres = resolve(ModulePresentation::residue_field(fx.R, fx.f), length + 3);
    ModulePresentation N2r{fx.R, fx.f, fx.kres.dif(3)};
    fx.rres = resolve(N2r, length);
    fx.L = lift_resolution(fx.rres, fx.f);
    return fx;
}

}  // namespace

TEST_CASE("lift of the rank-one resolution of R is zero maps") {
    const Ring* R = ring3();
    auto f = cubes(R);
    ChainComplex one = resolve(ModulePresentation::of_ring(R, f), 3);
    LiftedResolution L = lift_resolution(one, f);
    for (int p = 1; p <= L.bound; ++p) CHECK(L.t1_at(p).is_zero());
}

TEST_CASE("periodic one-variable fixture lifts verbatim with t1^2 = f") {
    auto fx = periodic();
    ChainComplex rres = resolve(fx.M, 8);
    for (int i = 0; i <= 8; ++i) CHECK(rres.term(i).rank() == 1);
    LiftedResolution L = lift_resolution(rres, fx.f);
    for (int p = 2; p <= 8; ++p) {
        GradedMap sq = compose(L.t1[p - 1], L.t1[p]);
        CHECK(sq.entry(0, 0) == fx.f[0]);
    }
    auto t2 = ci_operators(L);
    for (int p = 2; p <= 8; ++p)
        CHECK(t2[0][p].entry(0, 0) == Polynomial::constant(fx.R, 1));
}

TEST_CASE("lifted second-syzygy resolution squares into the ideal") {
    auto fx = n2fix(6);
    GroebnerBasis igb = ideal_gb(fx.R, fx.f);
    for (int p = 2; p <= fx.L.bound; ++p) {
        GradedMap sq = compose(fx.L.t1[p - 1], fx.L.t1[p]);
        CHECK(reduce_entries(sq, igb).is_zero());
    }
}

TEST_CASE("chi action of the residue field matches the free-polynomial count") {
    const Ring* R = ring3();
    auto f = cubes(R);
    ChainComplex kres = resolve(ModulePresentation::residue_field(R, f), 10);
    LiftedResolution L = lift_resolution(kres, f);
    auto t2 = ci_operators(L);
    ExtModule E = ext_rmodule(L, t2);
    // dims follow (1+t)^3/(1-t^2)^3; the series equals 1/(1-t)^3
    for (int d = 0; d <= 8; ++d) CHECK(E.dim_at(d) == (d + 2) * (d + 1) / 2);
    // chi_1 acts injectively (Ext is free over the polynomial subalgebra)
    for (int d = 0; d + 2 <= 8; ++d) {
        linalg::Mat m = E.chi_at(0, d);
        CHECK(linalg::rank_of(m) == E.dim_at(d));
    }
}

TEST_CASE("higher operators reproduce the classic ones at n = 2") {
    auto fx = n2fix(6);
    auto t2 = ci_operators(fx.L);
    HigherCISystem T = higher_ci(fx.L, 2);
    for (int p = 2; p <= fx.L.bound; ++p) {
        auto it = T.comps.find({2, p});
        REQUIRE(it != T.comps.end());
        for (int i = 0; i < 3; ++i) {
            // phi_i = (-1)^{p+1} t2_i
            GradedMap want = (p % 2 == 0) ? -t2[i][p] : t2[i][p];
            CHECK(it->second[i] == want);
        }
    }
}

TEST_CASE("one-variable system has vanishing higher operators") {
    auto fx = periodic();
    ChainComplex rres = resolve(fx.M, 8);
    LiftedResolution L = lift_resolution(rres, fx.f);
    HigherCISystem T = higher_ci(L, 4);
    verify_t_identities(L, T, 4);  // includes n = 3: t1 t2 + t2 t1 = 0 exactly
    for (auto& [key, comps] : T.comps)
        if (key.first >= 3)
            for (auto& m : comps) CHECK(m.is_zero());
}

TEST_CASE("identity suite holds exactly for the second syzygy") {
    auto fx = n2fix(8);
    HigherCISystem T = higher_ci(fx.L, 5);
    // n = 5 exceeds the top nonzero operator; the sum must still vanish
    verify_t_identities(fx.L, T, 5);
    CHECK(true);
}

TEST_CASE("reduced operators are unique once the lift is fixed") {
    auto fx = n2fix(6);
    GroebnerBasis igb = ideal_gb(fx.R, fx.f);
    HigherCISystem A = higher_ci(fx.L, 3, 0);
    HigherCISystem B = higher_ci(fx.L, 3, 1);
    for (auto& [key, comps] : A.comps) {
        if (key.first != 2) continue;
        auto it = B.comps.find(key);
        REQUIRE(it != B.comps.end());
        for (size_t k = 0; k < comps.size(); ++k) {
            GradedMap diff = comps[k] + (-it->second[k]);
            CHECK(reduce_entries(diff, igb).is_zero());
        }
    }
}

TEST_CASE("total complex of R itself is the Koszul complex") {
    const Ring* R = ring3();
    auto f = cubes(R);
    ChainComplex one = resolve(ModulePresentation::of_ring(R, f), 3);
    LiftedResolution L = lift_resolution(one, f);
    HigherCISystem T = higher_ci(L, 3);
    ChainComplex GK = build_gk(L, T);
    ChainComplex K = koszul(R, f);
    for (int q = 0; q <= 3; ++q) {
        CHECK(GK.term(q).rank() == K.term(q).rank());
        std::multiset<int> a(GK.term(q).degs.begin(), GK.term(q).degs.end());
        std::multiset<int> b(K.term(q).degs.begin(), K.term(q).degs.end());
        CHECK(a == b);
    }
    // acyclic with H0 = R
    for (int i = 1; i <= 2; ++i) CHECK(kernel_contained_in_image(GK.dif(i), GK.dif(i + 1)));
}

TEST_CASE("one-variable total complex resolves the matrix factorization module") {
    auto fx = periodic();
    ChainComplex rres = resolve(fx.M, 6);
    LiftedResolution L = lift_resolution(rres, fx.f);
    HigherCISystem T = higher_ci(L, 4);
    ChainComplex GK = build_gk(L, T);
    GK.check_d2();
    CHECK(same_image(GK.dif(1), minimal_presentation(fx.Ms)));
    for (int i = 1; i + 1 <= GK.hi(); ++i)
        CHECK(kernel_contained_in_image(GK.dif(i), GK.dif(i + 1)));
    ChainComplex GKmin = minimize_gk(GK);
    ChainComplex sres = resolve(fx.Ms, 1);
    // compare away from the truncation boundary
    for (int i = 0; i < GKmin.hi(); ++i) CHECK(GKmin.term(i).rank() == sres.term(i).rank());
}

TEST_CASE("total complex of the second syzygy resolves it over S") {
    auto fx = n2fix(8);
    HigherCISystem T = higher_ci(fx.L, 8);
    ChainComplex GK = build_gk(fx.L, T);
    GK.check_d2();
    ModulePresentation N2s = syzygy_as_s_module(fx.kres, fx.f, 2);
    CHECK(same_image(GK.dif(1), minimal_presentation(N2s)));
    for (int i = 1; i <= 6; ++i)
        CHECK(kernel_contained_in_image(GK.dif(i), GK.dif(i + 1)));
    // homology of GK (x) k matches the S-Betti numbers
    ChainComplex sres = resolve(N2s, 3);
    KComplex GKk = reduce_mod_m(GK);
    for (int i = 0; i <= 3; ++i)
        CHECK(homology_dims(GKk, i).total() == sres.term(i).rank());
    // minimization reproduces the minimal S-resolution away from the boundary
    ChainComplex GKmin = minimize_gk(GK);
    for (int i = 0; i < GKmin.hi(); ++i)
        CHECK(GKmin.term(i).rank() == (i <= 3 ? sres.term(i).rank() : 0));
}

TEST_CASE("a corrupted sign breaks the total complex") {
    auto fx = periodic();
    ChainComplex rres = resolve(fx.M, 6);
    LiftedResolution L = lift_resolution(rres, fx.f);
    HigherCISystem T = higher_ci(L, 4);
    // flip the sign of one stored component: d^2 = 0 must now fail
    auto it = T.comps.find({2, 2});
    REQUIRE(it != T.comps.end());
    it->second[0] = -it->second[0];
    bool caught = false;
    try {
        ChainComplex GK = build_gk(L, T);
        GK.check_d2();
    } catch (const Error&) {
        caught = true;
    }
    CHECK(caught);
}

TEST_CASE("already-minimal complexes are unchanged by minimization") {
    const Ring* R = ring3();
    ChainComplex K = koszul(R, cubes(R));
    ChainComplex P = minimize_gk(K);
    for (int i = 0; i <= 3; ++i) CHECK(P.term(i).rank() == K.term(i).rank());
}

TEST_CASE("truncating the total complex by lift degree gives subcomplexes") {
    auto fx = n2fix(6);
    HigherCISystem T = higher_ci(fx.L, 6);
    ChainComplex GK = build_gk(fx.L, T);
    // entries of the assembled differential from a summand with lift index p
    // never land in a summand with lift index above p
    for (int m = 1; m <= GK.hi(); ++m) {
        const GradedMap& d = GK.dif(m);
        // summand layout in position m: K-degree ascending, so lift index descending
        auto offsets = [&](int pos) {
            std::vector<std::tuple<int, int, int>> v;  // (p, q, offset)
            int off = 0;
            for (int q = 0; q <= std::min(3, pos); ++q) {
                int p = pos - q;
                if (p < 0 || p > fx.L.bound) continue;
                int rk = gk_summand(fx.L, p, q).rank();
                v.emplace_back(p, q, off);
                off += rk;
            }
            return v;
        };
        auto src = offsets(m), tgt = offsets(m - 1);
        auto lift_of = [&](const std::vector<std::tuple<int, int, int>>& v, int idx) {
            int lift = -1;
            for (auto& [p, q, off] : v)
                if (idx >= off) lift = p;
            return lift;
        };
        for (int j = 0; j < d.cols(); ++j) {
            int pj = lift_of(src, j);
            for (auto& [i, poly] : d.col(j)) {
                (void)poly;
                CHECK(lift_of(tgt, i) <= pj);
            }
        }
    }
}
