#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "starmod/sampling.hpp"
#include "starmod/transform.hpp"
#include "test_util.hpp"

using namespace starmod;
using namespace starmod::testutil;

namespace {

const DescriptorPtr torus1 = AlgebraDescriptor::torus(Rational(1));

EquivalenceTransform sample_transform(Xoshiro256& rng, const DescriptorPtr& desc, int K,
                                      int max_order = 2) {
    EquivalenceTransform t(desc, K);
    for (int r = 1; r <= std::min(K, max_order); ++r) {
        DifferentialOperator d(desc);
        const int terms = 1 + static_cast<int>(rng.bounded(2));
        for (int s = 0; s < terms; ++s) {
            DifferentialOperator::MultiIndex alpha(desc->dim(), 0);
            alpha[rng.bounded(desc->dim())] += 1 + static_cast<int>(rng.bounded(2));
            d.add_term(alpha, sample_element(rng, desc));
        }
        t.set_op(r, std::move(d));
    }
    return t;
}

} // namespace

TEST_CASE("differential operator application and composition") {
    DifferentialOperator d1 = DifferentialOperator::partial(torus1, 1);
    CHECK(d1.apply(mode(torus1, 2, 0)) == mode(torus1, 2, 0, gi(2)));
    CHECK_THROWS_AS(DifferentialOperator::partial(torus1, 3), IndexRangeError);

    // Leibniz expansion: (c d^beta) . (d^alpha) against direct application
    Xoshiro256 rng(17);
    const DescriptorPtr plane2 = AlgebraDescriptor::plane_standard(2);
    for (const auto& desc : {torus1, plane2}) {
        for (int t = 0; t < 10; ++t) {
            DifferentialOperator a =
                DifferentialOperator::term(sample_element(rng, desc), {1, static_cast<int>(rng.bounded(2))});
            DifferentialOperator b =
                DifferentialOperator::term(sample_element(rng, desc), {static_cast<int>(rng.bounded(2)), 1});
            AlgebraElement f = sample_element(rng, desc);
            CHECK(a.compose(b).apply(f) == a.apply(b.apply(f)));
        }
    }
}

TEST_CASE("transform application") {
    // T = id + lambda d1 sends e_(1,0) to e_(1,0) + i lambda e_(1,0)
    EquivalenceTransform t(torus1, 3);
    t.set_op(1, DifferentialOperator::partial(torus1, 1));
    FormalSeries f = FormalSeries::embed(mode(torus1, 1, 0), 3);
    FormalSeries tf = t.apply(f);
    CHECK(tf.coeff(0) == mode(torus1, 1, 0));
    CHECK(tf.coeff(1) == mode(torus1, 1, 0, gi(1)));
    CHECK(tf.coeff(2).is_zero());

    CHECK(EquivalenceTransform::identity(torus1, 3).apply(f) == f);
    // constants are killed by every derivative order
    FormalSeries one = FormalSeries::one(torus1, 3);
    CHECK(t.apply(one) == one);
}

TEST_CASE("transform inversion") {
    // (id + lambda D)^{-1} = id - lambda D + lambda^2 D^2 - ...
    EquivalenceTransform t(torus1, 3);
    DifferentialOperator d = DifferentialOperator::partial(torus1, 2);
    t.set_op(1, d);
    EquivalenceTransform inv = t.inverse();
    CHECK(inv.op(1) == d.scaled(GaussianRational(-1)));
    CHECK(inv.op(2) == d.compose(d));
    CHECK(inv.op(3) == d.compose(d).compose(d).scaled(GaussianRational(-1)));

    CHECK(EquivalenceTransform::identity(torus1, 4).inverse().is_identity());

    Xoshiro256 rng(29);
    for (int t2 = 0; t2 < 8; ++t2) {
        EquivalenceTransform s = sample_transform(rng, torus1, 4);
        EquivalenceTransform s_inv = s.inverse();
        CHECK(s.compose(s_inv).is_identity());
        CHECK(s_inv.compose(s).is_identity());
        CHECK(s_inv.inverse() == s);
        FormalSeries f = sample_series(rng, torus1, 4);
        CHECK(s_inv.apply(s.apply(f)) == f);
    }
}
