#pragma once

#include "starmod/bundle.hpp"

namespace starmod {

/// Normalized torus trace applied per lambda order. The normalization is
/// fixed to integral(1) = 1 (unit-volume torus) and recorded in reports.
ScalarSeries trace_functional(const FormalSeries& f);

/// index(P) = integral of tr(P) as a scalar lambda series; order 0 is the
/// classical rank for vector-bundle data.
ScalarSeries index_of(const DeformedProjection& p);

struct IndexInvarianceReport {
    bool equal = false;
    ScalarSeries reference;
    ScalarSeries conjugated;
};

/// Compares index(P) with index(U * P * U^{-1}) for a star-invertible U.
IndexInvarianceReport index_invariance_check(const DeformedProjection& p, const StarMatrix& u);

} // namespace starmod
