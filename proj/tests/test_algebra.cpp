#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "starmod/sampling.hpp"
#include "test_util.hpp"

using namespace starmod;
using namespace starmod::testutil;

namespace {
const DescriptorPtr torus1 = AlgebraDescriptor::torus(Rational(1));
const DescriptorPtr plane2 = AlgebraDescriptor::plane_standard(2);
} // namespace

TEST_CASE("undeformed product on torus modes") {
    CHECK(mode(torus1, 1, 0) * mode(torus1, 0, 1) == mode(torus1, 1, 1));
    AlgebraElement f = mode(torus1, 1, 0) + mode(torus1, -1, 0);
    AlgebraElement g = mode(torus1, 1, 0) - mode(torus1, -1, 0);
    CHECK(f * g == mode(torus1, 2, 0) - mode(torus1, -2, 0));
}

TEST_CASE("undeformed product on plane monomials") {
    AlgebraElement x = mono(plane2, {1, 0});
    AlgebraElement y = mono(plane2, {0, 1});
    CHECK(x * y == mono(plane2, {1, 1}));
    CHECK_THROWS_AS(mode(torus1, 1, 0) * x, DescriptorMismatchError);
}

TEST_CASE("derivations") {
    CHECK(mode(torus1, 2, 0).derive(1) == mode(torus1, 2, 0, gi(2)));
    CHECK(mono(plane2, {2, 0}).derive(2).is_zero());
    CHECK(mono(plane2, {2, 1}).derive(1) == mono(plane2, {1, 1}, gr(2)));
    CHECK_THROWS_AS(mono(plane2, {1, 0}).derive(3), IndexRangeError);
}

TEST_CASE("conjugation") {
    CHECK(mode(torus1, 1, 0).conjugate() == mode(torus1, -1, 0));
    CHECK(mono(plane2, {1, 0}, GaussianRational::i()).conjugate() ==
          mono(plane2, {1, 0}, -GaussianRational::i()));
    Xoshiro256 rng(7);
    for (int t = 0; t < 20; ++t) {
        AlgebraElement f = sample_element(rng, torus1);
        CHECK(f.conjugate().conjugate() == f);
        AlgebraElement g = sample_element(rng, torus1);
        CHECK((f * g).conjugate() == g.conjugate() * f.conjugate());
    }
}

TEST_CASE("torus integration") {
    CHECK(AlgebraElement::one(torus1).integrate() == GaussianRational(1));
    CHECK(mode(torus1, 3, -2).integrate() == GaussianRational(0));
    AlgebraElement f = AlgebraElement::constant(torus1, gr(5)) + mode(torus1, 1, 1, gr(2));
    CHECK(f.integrate() == gr(5));
    CHECK_THROWS_AS(mono(plane2, {1, 0}).integrate(), UnsupportedOperationError);

    Xoshiro256 rng(31);
    for (int t = 0; t < 10; ++t) {
        AlgebraElement a = sample_element(rng, torus1);
        AlgebraElement b = sample_element(rng, torus1);
        CHECK((a * b).integrate() == (b * a).integrate());
    }
}

TEST_CASE("poisson bracket examples") {
    AlgebraElement x = mono(plane2, {1, 0});
    AlgebraElement y = mono(plane2, {0, 1});
    CHECK(poisson_bracket(x, y) == AlgebraElement::one(plane2));

    // theta = 1: {e_(1,0), e_(0,1)} = theta (i)(i) e_(1,1) = -e_(1,1)
    CHECK(poisson_bracket(mode(torus1, 1, 0), mode(torus1, 0, 1)) == mode(torus1, 1, 1, gr(-1)));

    // oracle: expand theta (d1 f d2 g - d2 f d1 g) directly
    Xoshiro256 rng(11);
    for (int t = 0; t < 15; ++t) {
        AlgebraElement f = sample_element(rng, torus1);
        AlgebraElement g = sample_element(rng, torus1);
        AlgebraElement expanded = f.derive(1) * g.derive(2) - f.derive(2) * g.derive(1);
        CHECK(poisson_bracket(f, g) == expanded);
        CHECK(poisson_bracket(f, f).is_zero());
    }
}

TEST_CASE("ring and bracket laws on random elements") {
    Xoshiro256 rng(23);
    for (const auto& desc : {torus1, plane2}) {
        for (int t = 0; t < 15; ++t) {
            AlgebraElement f = sample_element(rng, desc);
            AlgebraElement g = sample_element(rng, desc);
            AlgebraElement h = sample_element(rng, desc);
            CHECK((f * g) * h == f * (g * h));
            CHECK(f * g == g * f);
            CHECK((f * g).derive(1) == f.derive(1) * g + f * g.derive(1));
            // Jacobi
            AlgebraElement jac = poisson_bracket(f, poisson_bracket(g, h)) +
                                 poisson_bracket(g, poisson_bracket(h, f)) +
                                 poisson_bracket(h, poisson_bracket(f, g));
            CHECK(jac.is_zero());
        }
    }
}

TEST_CASE("descriptor validation") {
    CHECK_THROWS_AS(AlgebraDescriptor::plane_standard(3), PreconditionError);
    std::vector<std::vector<Rational>> bad{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
    CHECK_THROWS_AS(AlgebraDescriptor::plane(2, bad), PreconditionError);
    CHECK_THROWS_AS(mono(plane2, {-1, 0}), PreconditionError);
}
