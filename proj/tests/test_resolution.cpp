#include <doctest.h>

#include "torext/resolution.hpp"

using namespace torext;

namespace {

const Ring* ring3(uint32_t p = 101) {
    return intern_ring(Ring::make(p, {"x1", "x2", "x3"}));
}

std::vector<Polynomial> cubes(const Ring* R) {
    std::vector<Polynomial> f;
    for (int i = 0; i < R->nvars; ++i) {
        Polynomial x = Polynomial::variable(R, i);
        f.push_back(x * x * x);
    }
    return f;
}

}  // namespace

TEST_CASE("resolution of k over S is the Koszul complex") {
    const Ring* R = ring3();
    ChainComplex C = resolve(ModulePresentation::residue_field(R), 4);
    long long want[] = {1, 3, 3, 1, 0};
    for (int i = 0; i <= 4; ++i) CHECK(C.term(i).rank() == want[i]);
    BettiTable t = betti(C);
    CHECK(t.at(0, 0) == 1);
    CHECK(t.at(1, 1) == 3);
    CHECK(t.at(2, 2) == 3);
    CHECK(t.at(3, 3) == 1);
}

TEST_CASE("resolution of k over the cubes quotient") {
    const Ring* R = ring3();
    auto f = cubes(R);
    ChainComplex C = resolve(ModulePresentation::residue_field(R, f), 6);
    // Poincare series 1/(1-t)^3: beta_i = C(i+2,2)
    for (int i = 0; i <= 6; ++i) CHECK(C.term(i).rank() == (i + 2) * (i + 1) / 2);
    // exactness oracle per internal degree, via slice ranks over the quotient
    GroebnerBasis igb = ideal_gb(R, f);
    for (int i = 1; i <= 5; ++i) {
        for (int d = 0; d <= 10; ++d) {
            linalg::Mat di = slice_matrix(C.dif(i), d, &igb);
            linalg::Mat di1 = slice_matrix(C.dif(i + 1), d, &igb);
            int nullity = di.cols - linalg::rank_of(di);
            CHECK(nullity == linalg::rank_of(di1));
        }
    }
    // graded pattern of the second step: 3 linear syzygies + 3 from the cubes
    BettiTable t = betti(C);
    CHECK(t.at(2, 2) == 3);
    CHECK(t.at(2, 3) == 3);
}

TEST_CASE("syzygy module basics") {
    const Ring* R = ring3();
    auto f = cubes(R);
    ModulePresentation k = ModulePresentation::residue_field(R, f);
    // i = 0 returns the module itself (minimalized)
    ModulePresentation N0 = syzygy_module(k, 0);
    CHECK(N0.pres.cols() == 3);
    // N1 has three generators in degree 1
    ModulePresentation N1 = syzygy_module(k, 1);
    CHECK(N1.pres.target().degs == std::vector<int>{1, 1, 1});
    // N3 has 10 generators
    ModulePresentation N3 = syzygy_module(k, 3);
    CHECK(N3.pres.target().rank() == 10);
}

TEST_CASE("betti rejects non-minimal complexes") {
    const Ring* R = ring3();
    FreeModule F{{0}};
    GradedMap u(R, F, F, 0);
    u.set(0, 0, Polynomial::constant(R, 1));
    ChainComplex C(R, 0, {F, F}, {GradedMap(), u});
    CHECK_THROWS_AS(betti(C), Error);
}

TEST_CASE("prune splits off unit summands") {
    const Ring* R = ring3();
    // [S --1--> S] (+) Koszul(x1): prune leaves only the Koszul part
    FreeModule F1{{0, 1}}, F0{{0, 0}};
    GradedMap d(R, F1, F0, 0);
    d.set(0, 0, Polynomial::constant(R, 1));
    d.set(1, 1, Polynomial::variable(R, 0));
    ChainComplex C(R, 0, {F0, F1}, {GradedMap(), d});
    ChainComplex P = prune_complex(C);
    CHECK(P.term(0).rank() == 1);
    CHECK(P.term(1).rank() == 1);
    CHECK(P.dif(1).entry(0, 0) == Polynomial::variable(R, 0));
}

TEST_CASE("betti numbers are presentation invariant") {
    const Ring* R = ring3();
    auto f = cubes(R);
    // k presented minimally vs padded with a split unit relation
    ModulePresentation k = ModulePresentation::residue_field(R, f);
    BettiTable t1 = betti(resolve(k, 5));
    FreeModule F0{{0, 1}};  // extra generator killed by a unit relation
    FreeModule F1{{1, 1, 1, 1}};
    GradedMap pres(R, F1, F0, 0);
    for (int i = 0; i < 3; ++i) pres.set(0, i, Polynomial::variable(R, i));
    pres.set(1, 3, Polynomial::constant(R, 1));
    ModulePresentation padded{R, f, pres};
    BettiTable t2 = betti(resolve(padded, 5));
    CHECK(t1 == t2);
}

TEST_CASE("consecutive syzygies shift the betti table") {
    const Ring* R = ring3();
    auto f = cubes(R);
    ModulePresentation k = ModulePresentation::residue_field(R, f);
    ChainComplex Ck = resolve(k, 7);
    ModulePresentation N2 = syzygy_module(k, 2);
    ChainComplex C2 = resolve(N2, 5);
    BettiTable tk = betti(Ck), t2 = betti(C2);
    for (int i = 0; i <= 5; ++i) CHECK(t2.total(i) == tk.total(i + 2));
}

TEST_CASE("minimal presentation of the residue field over S drops the cubes") {
    const Ring* R = ring3();
    // presentation [vars | cubes] minimalizes to just the variables
    FreeModule F0{{0}};
    FreeModule F1{{1, 1, 1, 3, 3, 3}};
    GradedMap pres(R, F1, F0, 0);
    auto f = cubes(R);
    for (int i = 0; i < 3; ++i) pres.set(0, i, Polynomial::variable(R, i));
    for (int i = 0; i < 3; ++i) pres.set(0, 3 + i, f[i]);
    ModulePresentation M{R, {}, pres};
    GradedMap d1 = minimal_presentation(M);
    CHECK(d1.cols() == 3);
}

TEST_CASE("betti column sums match homology of a non-minimal resolution") {
    const Ring* R = ring3();
    ChainComplex C = resolve(ModulePresentation::residue_field(R), 3);
    BettiTable t = betti(C);
    // pad with a split exact piece to make the complex non-minimal
    FreeModule P{{2}};
    GradedMap u(R, P, P, 0);
    u.set(0, 0, Polynomial::constant(R, 1));
    std::vector<FreeModule> terms;
    std::vector<GradedMap> difs = {GradedMap()};
    for (int i = 0; i <= 3; ++i) {
        FreeModule F = C.term(i);
        if (i == 1 || i == 2) F.degs.push_back(2);
        terms.push_back(F);
    }
    for (int i = 1; i <= 3; ++i) {
        GradedMap d(R, terms[i], terms[i - 1], 0);
        const GradedMap& cd = C.dif(i);
        for (int j = 0; j < cd.cols(); ++j)
            for (auto& [r, p] : cd.col(j)) d.set(r, j, p);
        if (i == 2) d.set(C.term(1).rank(), C.term(2).rank(), Polynomial::constant(R, 1));
        difs.push_back(std::move(d));
    }
    ChainComplex padded(R, 0, std::move(terms), std::move(difs));
    KComplex K = reduce_mod_m(padded);
    for (int i = 0; i <= 3; ++i) CHECK(homology_dims(K, i).total() == t.total(i));
}

TEST_CASE("betti table renders in the expected layout") {
    BettiTable t;
    t.b[{0, 0}] = 1;
    t.b[{1, 1}] = 3;
    t.b[{2, 2}] = 3;
    t.b[{3, 3}] = 1;
    std::string s = render_betti(t);
    CHECK(s == "total: 1 3 3 1\n0: 1 3 3 1\n");
}
