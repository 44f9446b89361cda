#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "starmod/sampling.hpp"
#include "starmod/trace.hpp"
#include "test_util.hpp"

using namespace starmod;
using namespace starmod::testutil;

namespace {

const DescriptorPtr torus1 = AlgebraDescriptor::torus(Rational(1));
const StarProductPtr star4 = StarProduct::moyal(torus1, 4);

ScalarSeries index_of_matrix(const StarMatrix& p) { return trace_functional(p.trace()); }

} // namespace

TEST_CASE("trace functional basics") {
    CHECK(trace_functional(FormalSeries::one(torus1, 4)).coeff(0) == GaussianRational(1));

    // opposite modes multiply to e_0 with no lambda corrections at all
    FormalSeries a = FormalSeries::embed(mode(torus1, 1, 0), 4);
    FormalSeries b = FormalSeries::embed(mode(torus1, -1, 0), 4);
    FormalSeries comm = star4->multiply(a, b) - star4->multiply(b, a);
    CHECK(comm.is_zero());
    CHECK(trace_functional(comm) == ScalarSeries(4));

    const DescriptorPtr plane2 = AlgebraDescriptor::plane_standard(2);
    CHECK_THROWS_AS(trace_functional(FormalSeries::one(plane2, 4)), UnsupportedOperationError);
}

TEST_CASE("trace property on random scalar pairs") {
    Xoshiro256 rng(55);
    for (int t = 0; t < 30; ++t) {
        FormalSeries f = sample_series(rng, torus1, 4);
        FormalSeries g = sample_series(rng, torus1, 4);
        FormalSeries comm = star4->multiply(f, g) - star4->multiply(g, f);
        CHECK(trace_functional(comm) == ScalarSeries(4));
    }
}

TEST_CASE("cyclicity of the matrix trace up to K = 6") {
    for (int K : {4, 6}) {
        auto star = StarProduct::moyal(torus1, K);
        Xoshiro256 rng(77 + K);
        for (int t = 0; t < 15; ++t) {
            StarMatrix a = sample_star_matrix(rng, star, 2, 2);
            StarMatrix b = sample_star_matrix(rng, star, 2, 2);
            CHECK(trace_functional(a.star_mul(b).trace()) ==
                  trace_functional(b.star_mul(a).trace()));
        }
    }
}

TEST_CASE("index values on the corpus") {
    // constant diag(1,0): exactly 1, no higher orders
    DeformedProjection constant = deform_projection(corpus_constant(torus1), star4);
    ScalarSeries one_exact(4);
    one_exact.set_coeff(0, GaussianRational(1));
    CHECK(index_of(constant) == one_exact);

    for (const auto& entry : projection_corpus(torus1)) {
        CAPTURE(entry.name);
        DeformedProjection d = deform_projection(entry.projection, star4);
        ScalarSeries idx = index_of(d);
        CHECK(idx.coeff(0) == GaussianRational(entry.rank));
    }
}

TEST_CASE("index is additive over direct sums") {
    DeformedProjection a = deform_projection(corpus_two_angle(torus1), star4);
    DeformedProjection b = deform_projection(corpus_constant(torus1), star4);
    DeformedProjection sum = DeformedProjection::direct_sum(a, b);
    CHECK(index_of(sum) == index_of(a) + index_of(b));
}

TEST_CASE("index is invariant under star-invertible conjugation") {
    DeformedProjection d = deform_projection(corpus_two_angle(torus1), star4);

    CHECK(index_invariance_check(d, StarMatrix::identity(star4, 2)).equal);
    CHECK(index_invariance_check(d, conj_nilpotent(star4, 2)).equal);
    CHECK(index_invariance_check(d, conj_monomial_diag(star4)).equal);
    CHECK(index_invariance_check(d, conj_scalar_monomial(star4, 2)).equal);

    // the conjugated projection is a genuine deformation of a different shape
    StarMatrix u = conj_monomial_diag(star4);
    StarMatrix p_conj = u.star_mul(d.matrix()).star_mul(u.star_inverse());
    CHECK(p_conj != d.matrix());
    CHECK(index_of_matrix(p_conj) == index_of(d));

    StarMatrix singular(star4, 2, 2);
    singular.set(0, 0, FormalSeries::embed(AlgebraElement::one(torus1) + mode(torus1, 1, 0), 4));
    singular.set(1, 1, FormalSeries::one(torus1, 4));
    CHECK_THROWS_AS(index_invariance_check(d, singular), SingularError);
}

TEST_CASE("index of a nontrivial projection records higher orders") {
    // theta = 1/2 keeps denominators distinct from the theta = 1 run
    auto star = StarProduct::moyal(AlgebraDescriptor::torus(Rational(1, 2)), 4);
    DeformedProjection d = deform_projection(corpus_two_angle(star->descriptor()), star);
    ScalarSeries idx = index_of(d);
    CHECK(idx.coeff(0) == GaussianRational(1));
    // all corrections are reported, whether or not they vanish; the
    // acceptance gate only pins theorem-backed facts
    CHECK(idx.truncation_order() == 4);
}
