#include <doctest.h>

#include <random>

#include "torext/complexes.hpp"
#include "torext/graded.hpp"

using namespace torext;

namespace {

const Ring* ring3(uint32_t p = 101) {
    return intern_ring(Ring::make(p, {"x1", "x2", "x3"}));
}

Polynomial rnd_homog(const Ring* R, int deg, int terms, std::mt19937& rng) {
    auto mons = monomials_of_degree(R, deg);
    std::vector<PTerm> ts;
    for (int i = 0; i < terms; ++i) {
        Monomial m = mons[rng() % mons.size()];
        uint32_t c = 1 + rng() % (R->fp.p - 1);
        ts.push_back({m, c});
    }
    return Polynomial(R, ts);
}

// naive double-loop multiplication oracle
Polynomial mul_oracle(const Polynomial& a, const Polynomial& b) {
    const Ring* R = a.ring();
    Polynomial acc = Polynomial::zero(R);
    for (auto& ta : a.terms())
        for (auto& tb : b.terms())
            acc = acc + Polynomial::monomial(R, mono_mul(ta.m, tb.m), R->fp.mul(ta.c, tb.c));
    return acc;
}

}  // namespace

TEST_CASE("characteristic-2 cancellation") {
    const Ring* R = intern_ring(Ring::make(2, {"x1"}));
    Polynomial x = Polynomial::variable(R, 0);
    CHECK((x + x).is_zero());
}

TEST_CASE("difference of squares") {
    const Ring* R = ring3();
    Polynomial x1 = Polynomial::variable(R, 0), x2 = Polynomial::variable(R, 1);
    Polynomial lhs = (x1 + x2) * (x1 - x2);
    Polynomial rhs = x1 * x1 - x2 * x2;
    CHECK(lhs == rhs);
}

TEST_CASE("random homogeneous products match the naive oracle") {
    const Ring* R = ring3();
    std::mt19937 rng(12345);
    for (int t = 0; t < 10; ++t) {
        Polynomial a = rnd_homog(R, 3, 20, rng), b = rnd_homog(R, 4, 20, rng);
        CHECK(a * b == mul_oracle(a, b));
        CHECK((a * b).is_homogeneous());
    }
}

TEST_CASE("arithmetic matches integers reduced mod p") {
    const Ring* R = ring3(7);
    std::mt19937 rng(99);
    for (int t = 0; t < 50; ++t) {
        long long a = (long long)(rng() % 1000) - 500, b = (long long)(rng() % 1000) - 500;
        Polynomial pa = Polynomial::constant(R, a), pb = Polynomial::constant(R, b);
        CHECK(pa * pb == Polynomial::constant(R, a * b));
        CHECK(pa + pb == Polynomial::constant(R, a + b));
        CHECK(pa - pb == Polynomial::constant(R, a - b));
    }
}

TEST_CASE("mixed-ring operands are rejected") {
    const Ring* R1 = ring3();
    const Ring* R2 = intern_ring(Ring::make(101, {"y1", "y2"}));
    Polynomial a = Polynomial::variable(R1, 0), b = Polynomial::variable(R2, 0);
    CHECK_THROWS_AS(a + b, Error);
    CHECK_THROWS_AS(a * b, Error);
}

TEST_CASE("compose with identity and Koszul d^2") {
    const Ring* R = ring3();
    std::vector<Polynomial> vars;
    for (int i = 0; i < 3; ++i) vars.push_back(Polynomial::variable(R, i));
    ChainComplex K = koszul(R, vars);
    GradedMap id = GradedMap::identity(R, K.term(1));
    CHECK(compose(id, K.dif(2)) == K.dif(2));
    CHECK(compose(K.dif(1), K.dif(2)).is_zero());
}

TEST_CASE("random compose matches the dot-product oracle") {
    const Ring* R = ring3();
    std::mt19937 rng(7);
    FreeModule A, B, C;
    for (int i = 0; i < 4; ++i) {
        A.degs.push_back(0);
        B.degs.push_back(1);
        C.degs.push_back(2);
    }
    GradedMap f(R, B, A, 0), g(R, C, B, 0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            f.set(i, j, rnd_homog(R, 1, 2, rng));
            g.set(i, j, rnd_homog(R, 1, 2, rng));
        }
    GradedMap fg = compose(f, g);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Polynomial dot = Polynomial::zero(R);
            for (int k = 0; k < 4; ++k) dot = dot + f.entry(i, k) * g.entry(k, j);
            CHECK(fg.entry(i, j) == dot);
        }
}

TEST_CASE("compose associativity on compatible homogeneous maps") {
    const Ring* R = ring3();
    std::mt19937 rng(21);
    FreeModule A{{0, 0}}, B{{1, 1, 1}}, C{{2, 2}}, D{{3, 3}};
    auto rnd_map = [&](const FreeModule& src, const FreeModule& tgt) {
        GradedMap m(R, src, tgt, 0);
        for (int i = 0; i < tgt.rank(); ++i)
            for (int j = 0; j < src.rank(); ++j)
                m.set(i, j, rnd_homog(R, src.degs[j] - tgt.degs[i], 2, rng));
        m.validate();
        return m;
    };
    GradedMap f = rnd_map(B, A), g = rnd_map(C, B), h = rnd_map(D, C);
    CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
}

TEST_CASE("graded map constructor rejects inhomogeneous entries") {
    const Ring* R = ring3();
    FreeModule A{{0}}, B{{2}};
    GradedMap m(R, B, A, 0);
    Polynomial bad = Polynomial::variable(R, 0) + Polynomial::constant(R, 1);
    m.set(0, 0, bad);
    CHECK_THROWS_AS(m.validate(), Error);
    GradedMap m2(R, B, A, 0);
    m2.set(0, 0, Polynomial::variable(R, 0));  // degree 1 where degree 2 is forced
    CHECK_THROWS_AS(m2.validate(), Error);
}

TEST_CASE("is_minimal") {
    const Ring* R = ring3();
    FreeModule A{{0}}, B{{0}};
    GradedMap zero(R, B, A, 0);
    CHECK(is_minimal(zero));
    GradedMap unit(R, B, A, 0);
    unit.set(0, 0, Polynomial::constant(R, 1));
    CHECK_FALSE(is_minimal(unit));
    std::vector<Polynomial> vars;
    for (int i = 0; i < 3; ++i) vars.push_back(Polynomial::variable(R, i));
    ChainComplex K = koszul(R, vars);
    for (int i = 1; i <= 3; ++i) CHECK(is_minimal(K.dif(i)));
}
