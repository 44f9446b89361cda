#pragma once

#include "starmod/rng.hpp"
#include "starmod/series.hpp"

namespace starmod {

/// Random element for property checks: 1..3 monomials, torus modes in
/// [-3,3]^2, plane total degree <= 3, coefficients drawn from
/// {0, 1, -1, i, -i, 1/2, -1/2}.
AlgebraElement sample_element(Xoshiro256& rng, const DescriptorPtr& desc);

/// Smaller variant: up to `max_terms` monomials with modes (resp. degree)
/// bounded by `bound`. Used where sampled data feeds long product chains and
/// term growth, not sample richness, is the limiting factor.
AlgebraElement sample_element_bounded(Xoshiro256& rng, const DescriptorPtr& desc, int max_terms,
                                      int bound);

/// Random series: one sampled element per lambda order.
FormalSeries sample_series(Xoshiro256& rng, const DescriptorPtr& desc, int K);

GaussianRational sample_coefficient(Xoshiro256& rng);

} // namespace starmod
