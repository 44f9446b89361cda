#include "starmod/trace.hpp"

#include "starmod/error.hpp"

namespace starmod {

ScalarSeries trace_functional(const FormalSeries& f) {
    if (f.descriptor()->kind() != AlgebraKind::torus)
        throw UnsupportedOperationError("trace_functional: torus algebra only");
    ScalarSeries out(f.truncation_order());
    for (int r = 0; r <= f.truncation_order(); ++r) out.set_coeff(r, f.coeff(r).integrate());
    return out;
}

ScalarSeries index_of(const DeformedProjection& p) {
    return trace_functional(p.matrix().trace());
}

IndexInvarianceReport index_invariance_check(const DeformedProjection& p, const StarMatrix& u) {
    if (u.rows() != p.size() || u.cols() != p.size())
        throw DimensionMismatchError("index_invariance_check: conjugator shape mismatch");
    StarMatrix u_inv = u.star_inverse(); // throws SingularError when not invertible
    StarMatrix conjugated = u.star_mul(p.matrix()).star_mul(u_inv);
    ScalarSeries ref = index_of(p);
    ScalarSeries conj = trace_functional(conjugated.trace());
    return IndexInvarianceReport{ref == conj, std::move(ref), std::move(conj)};
}

} // namespace starmod
