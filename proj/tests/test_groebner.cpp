#include <doctest.h>

#include <algorithm>
#include <random>

#include "torext/complexes.hpp"

using namespace torext;

namespace {

const Ring* ring3(uint32_t p = 101) {
    return intern_ring(Ring::make(p, {"x1", "x2", "x3"}));
}

ModVec ideal_elem(const Polynomial& f) {
    std::vector<MTerm> ts;
    for (auto& tm : f.terms()) ts.push_back({0, tm.m, tm.c});
    return mv_sorted(std::move(ts), ModuleOrder::top(), f.ring()->fp);
}

std::vector<Polynomial> cubes(const Ring* R) {
    std::vector<Polynomial> f;
    for (int i = 0; i < R->nvars; ++i) {
        Polynomial x = Polynomial::variable(R, i);
        f.push_back(x * x * x);
    }
    return f;
}

Polynomial rnd_homog(const Ring* R, int deg, int terms, std::mt19937& rng) {
    auto mons = monomials_of_degree(R, deg);
    std::vector<PTerm> ts;
    for (int i = 0; i < terms; ++i)
        ts.push_back({mons[rng() % mons.size()], (uint32_t)(1 + rng() % (R->fp.p - 1))});
    return Polynomial(R, ts);
}

}  // namespace

TEST_CASE("monomial generators are already a basis") {
    const Ring* R = ring3();
    FreeModule amb{{0}};
    auto gb = buchberger(R, amb,
                         {ideal_elem(Polynomial::variable(R, 0)),
                          ideal_elem(Polynomial::variable(R, 1))},
                         ModuleOrder::top());
    CHECK(gb.gens.size() == 2);
}

TEST_CASE("x1^2-x2^2, x1x2 produces x2^3") {
    const Ring* R = ring3();
    Polynomial x1 = Polynomial::variable(R, 0), x2 = Polynomial::variable(R, 1);
    FreeModule amb{{0}};
    auto gb = buchberger(R, amb, {ideal_elem(x1 * x1 - x2 * x2), ideal_elem(x1 * x2)},
                         ModuleOrder::top());
    bool has_cube = false;
    Monomial want = Monomial::var(1, 3);
    for (auto& g : gb.gens)
        if (g.lead().m == want) has_cube = true;
    CHECK(has_cube);
}

TEST_CASE("cubes ideal has total dimension 27 and the box Hilbert function") {
    const Ring* R = ring3();
    FreeModule amb{{0}};
    std::vector<ModVec> gens;
    for (auto& f : cubes(R)) gens.push_back(ideal_elem(f));
    auto gb = buchberger(R, amb, gens, ModuleOrder::top());
    HilbertFunction hf = hilbert_function(gb, 12);
    CHECK(hf.total() == 27);
    // independent oracle: count monomials with all exponents <= 2 per degree
    for (int d = 0; d <= 9; ++d) {
        long long cnt = 0;
        for (auto& m : monomials_of_degree(R, d)) {
            bool ok = true;
            for (int i = 0; i < 3; ++i)
                if (m.e[i] > 2) ok = false;
            if (ok) ++cnt;
        }
        CHECK(hf.at(d) == cnt);
    }
}

TEST_CASE("normal form basics") {
    const Ring* R = ring3();
    FreeModule amb{{0}};
    std::vector<ModVec> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(ideal_elem(Polynomial::variable(R, i)));
    auto gb = buchberger(R, amb, gens, ModuleOrder::top());
    // element of the span reduces to zero
    Polynomial v = Polynomial::variable(R, 0) * Polynomial::variable(R, 1);
    CHECK(normal_form(ideal_elem(v), gb).is_zero());
    // the unit survives
    ModVec one = ideal_elem(Polynomial::constant(R, 1));
    CHECK(normal_form(one, gb) == one);
}

TEST_CASE("normal form is idempotent on random input") {
    const Ring* R = ring3();
    std::mt19937 rng(5);
    FreeModule amb{{0}};
    auto gb = buchberger(R, amb,
                         {ideal_elem(rnd_homog(R, 2, 4, rng)), ideal_elem(rnd_homog(R, 3, 5, rng))},
                         ModuleOrder::top());
    for (int t = 0; t < 10; ++t) {
        ModVec v = ideal_elem(rnd_homog(R, 5, 8, rng));
        ModVec n1 = normal_form(v, gb);
        CHECK(normal_form(n1, gb) == n1);
    }
}

TEST_CASE("kernel of the zero map is the standard basis") {
    const Ring* R = ring3();
    FreeModule src{{0, 1}}, tgt{{0}};
    GradedMap z(R, src, tgt, 0);
    auto ker = kernel(z);
    REQUIRE(ker.size() == 2);
    CHECK(ker[0] == mv_unit(0));
    CHECK(ker[1] == mv_unit(1));
}

TEST_CASE("kernel of the first Koszul differential is the image of the second") {
    const Ring* R = ring3();
    std::vector<Polynomial> vars;
    for (int i = 0; i < 3; ++i) vars.push_back(Polynomial::variable(R, i));
    ChainComplex K = koszul(R, vars);
    auto ker = kernel(K.dif(1));
    // mutual containment against the columns of dif(2)
    GroebnerBasis gker = buchberger(R, K.term(1), ker, ModuleOrder::top());
    for (int j = 0; j < K.dif(2).cols(); ++j)
        CHECK(normal_form(mv_from_column(K.dif(2), j, ModuleOrder::top()), gker).is_zero());
    std::vector<ModVec> im2;
    for (int j = 0; j < K.dif(2).cols(); ++j)
        im2.push_back(mv_from_column(K.dif(2), j, ModuleOrder::top()));
    GroebnerBasis gim = buchberger(R, K.term(1), im2, ModuleOrder::top());
    for (auto& g : ker) CHECK(normal_form(g, gim).is_zero());
}

TEST_CASE("kernel over the quotient by the cubes of the cube row map is everything") {
    const Ring* R = ring3();
    auto f = cubes(R);
    FreeModule src{{3, 3, 3}}, tgt{{0}};
    GradedMap m(R, src, tgt, 0);
    for (int i = 0; i < 3; ++i) m.set(0, i, f[i]);
    auto ker = kernel(m, f);
    REQUIRE(ker.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(ker[i] == mv_unit(i));
}

TEST_CASE("kernel generators satisfy f.g = 0") {
    const Ring* R = ring3();
    std::mt19937 rng(11);
    FreeModule tgt{{0, 0}};
    FreeModule src{{1, 1, 2}};
    GradedMap m(R, src, tgt, 0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) m.set(i, j, rnd_homog(R, src.degs[j], 2, rng));
    auto ker = kernel(m);
    GradedMap kmat = map_from_columns(R, src, ker);
    CHECK(compose(m, kmat).is_zero());
}

TEST_CASE("syzygies of kernel generators compose to zero") {
    const Ring* R = ring3();
    std::mt19937 rng(45);
    FreeModule tgt{{0, 0}};
    FreeModule src{{1, 1, 2, 2}};
    GradedMap m(R, src, tgt, 0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 4; ++j) m.set(i, j, rnd_homog(R, src.degs[j], 2, rng));
    auto ker = kernel(m);
    GradedMap kmat = map_from_columns(R, src, ker);
    CHECK(compose(m, kmat).is_zero());
    auto syz2 = kernel(kmat);
    GradedMap s2 = map_from_columns(R, kmat.source(), syz2);
    CHECK(compose(kmat, s2).is_zero());
}

TEST_CASE("buchberger rejects inhomogeneous input") {
    const Ring* R = ring3();
    FreeModule amb{{0}};
    Polynomial bad = Polynomial::variable(R, 0) + Polynomial::constant(R, 1);
    CHECK_THROWS_AS(buchberger(R, amb, {ideal_elem(bad)}, ModuleOrder::top()), Error);
}

TEST_CASE("groebner output is insensitive to generator order") {
    const Ring* R = ring3();
    std::mt19937 rng(31);
    std::vector<ModVec> gens;
    for (int t = 0; t < 4; ++t) gens.push_back(ideal_elem(rnd_homog(R, 2 + t % 2, 4, rng)));
    FreeModule amb{{0}};
    auto gb1 = buchberger(R, amb, gens, ModuleOrder::top());
    for (int shuffle = 0; shuffle < 3; ++shuffle) {
        std::shuffle(gens.begin(), gens.end(), rng);
        auto gb2 = buchberger(R, amb, gens, ModuleOrder::top());
        REQUIRE(gb1.gens.size() == gb2.gens.size());
        for (size_t i = 0; i < gb1.gens.size(); ++i) CHECK(gb1.gens[i] == gb2.gens[i]);
        HilbertFunction h1 = hilbert_function(gb1, 8), h2 = hilbert_function(gb2, 8);
        CHECK(h1.dims == h2.dims);
    }
}

TEST_CASE("hilbert function of the zero submodule gives binomial coefficients") {
    const Ring* R = ring3();
    FreeModule amb{{0}};
    auto gb = buchberger(R, amb, {}, ModuleOrder::top());
    HilbertFunction hf = hilbert_function(gb, 5);
    long long want[] = {1, 3, 6, 10, 15, 21};
    for (int d = 0; d <= 5; ++d) CHECK(hf.at(d) == want[d]);
}

TEST_CASE("hilbert function of a random image matches dense rank per degree") {
    const Ring* R = ring3();
    std::mt19937 rng(17);
    FreeModule tgt{{0, 0, 1}};
    FreeModule src{{1, 2, 2}};
    GradedMap m(R, src, tgt, 0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int d = src.degs[j] - tgt.degs[i];
            if (d >= 0) m.set(i, j, rnd_homog(R, d, 2, rng));
        }
    std::vector<ModVec> cols;
    for (int j = 0; j < 3; ++j) cols.push_back(mv_from_column(m, j, ModuleOrder::top()));
    auto gb = buchberger(R, tgt, cols, ModuleOrder::top());
    HilbertFunction hf = hilbert_function(gb, 8);
    for (int d = 0; d <= 8; ++d) {
        // dense oracle: dim coker slice = dim target slice - rank of the map slice
        linalg::Mat sl = slice_matrix(m, d);
        int tgtdim = slice_basis(R, tgt, d).size();
        CHECK(hf.at(d) == tgtdim - linalg::rank_of(sl));
    }
}

TEST_CASE("kernel over quotient matches lifted kernel reduced") {
    const Ring* R = ring3();
    auto f = cubes(R);
    // presentation of the maximal ideal of R: kernel of (x1 x2 x3) over R
    FreeModule tgt{{0}}, src{{1, 1, 1}};
    GradedMap m(R, src, tgt, 0);
    for (int i = 0; i < 3; ++i) m.set(0, i, Polynomial::variable(R, i));
    auto ker_r = kernel(m, f);
    // lifted: kernel over S of [m | f * basis], projected to the first three coords
    FreeModule src2{{1, 1, 1, 3, 3, 3}};
    GradedMap m2(R, src2, tgt, 0);
    for (int i = 0; i < 3; ++i) m2.set(0, i, Polynomial::variable(R, i));
    for (int i = 0; i < 3; ++i) m2.set(0, 3 + i, f[i]);
    auto ker_s = kernel(m2);
    std::vector<ModVec> proj;
    for (auto& g : ker_s) {
        ModVec v;
        for (auto& t : g.t)
            if (t.comp < 3) v.t.push_back(t);
        if (!v.is_zero()) proj.push_back(v);
    }
    // mutual containment over R
    GroebnerBasis gr = buchberger(R, src, ker_r, ModuleOrder::top(), f);
    for (auto& g : proj) CHECK(normal_form(g, gr).is_zero());
    GroebnerBasis gs = buchberger(R, src, proj, ModuleOrder::top(), f);
    for (auto& g : ker_r) CHECK(normal_form(g, gs).is_zero());
}

TEST_CASE("schreyer order is a valid module order") {
    // leading terms under a Schreyer order respect the parent images
    const Ring* R = ring3();
    std::vector<Monomial> pm = {Monomial::var(0, 2), Monomial::var(1, 1)};
    std::vector<int> pc = {0, 0};
    ModuleOrder sch = ModuleOrder::schreyer(pm, pc);
    // x2 * e_0 vs x1^2 * e_1: images are x1^2 x2 in both; tie broken by component
    CHECK(sch.greater(0, Monomial::var(1), 1, Monomial::var(0, 2)));
    // x1 * e_1 (image x1 x2) loses against e_0 (image x1^2) in grevlex
    CHECK(sch.greater(0, Monomial::one(), 1, Monomial::var(0)));
}
