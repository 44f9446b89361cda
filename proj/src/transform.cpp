#include "starmod/transform.hpp"

#include <functional>

#include "starmod/error.hpp"

namespace starmod {

namespace {

/// Product of binomial(beta_i, gamma_i) over coordinates.
Rational multi_binomial(const std::vector<int>& beta, const std::vector<int>& gamma) {
    Rational out(1);
    for (std::size_t j = 0; j < beta.size(); ++j) {
        // binom(beta_j, gamma_j)
        long b = beta[j], g = gamma[j];
        Rational c(1);
        for (long t = 0; t < g; ++t) {
            Rational step(b - t, t + 1);
            step.canonicalize(); // mpq arithmetic requires canonical operands
            c *= step;
        }
        out *= c;
    }
    return out;
}

/// Enumerate all gamma with 0 <= gamma <= beta coordinatewise.
void for_each_sub_index(const std::vector<int>& beta,
                        const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> gamma(beta.size(), 0);
    while (true) {
        fn(gamma);
        std::size_t j = 0;
        while (j < beta.size()) {
            if (gamma[j] < beta[j]) {
                ++gamma[j];
                break;
            }
            gamma[j] = 0;
            ++j;
        }
        if (j == beta.size()) return;
    }
}

} // namespace

DifferentialOperator DifferentialOperator::partial(DescriptorPtr desc, int j) {
    if (j < 1 || j > desc->dim()) throw IndexRangeError("partial: direction index out of range");
    MultiIndex alpha(desc->dim(), 0);
    alpha[j - 1] = 1;
    return term(AlgebraElement::one(std::move(desc)), std::move(alpha));
}

DifferentialOperator DifferentialOperator::term(AlgebraElement coeff, MultiIndex alpha) {
    DifferentialOperator d(coeff.descriptor());
    if (static_cast<int>(alpha.size()) != d.desc_->dim())
        throw DimensionMismatchError("operator multi-index length mismatch");
    for (int v : alpha)
        if (v < 0) throw PreconditionError("operator multi-index must be non-negative");
    d.add_term(alpha, coeff);
    return d;
}

void DifferentialOperator::add_term(const MultiIndex& alpha, const AlgebraElement& coeff) {
    require_same_descriptor(desc_, coeff.descriptor(), "operator term");
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.emplace(alpha, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

AlgebraElement DifferentialOperator::apply(const AlgebraElement& f) const {
    require_same_descriptor(desc_, f.descriptor(), "operator apply");
    AlgebraElement out = AlgebraElement::zero(desc_);
    for (const auto& [alpha, coeff] : terms_) out += coeff * f.derive_multi(alpha);
    return out;
}

DifferentialOperator& DifferentialOperator::operator+=(const DifferentialOperator& o) {
    require_same_descriptor(desc_, o.desc_, "operator add");
    for (const auto& [alpha, coeff] : o.terms_) add_term(alpha, coeff);
    return *this;
}

DifferentialOperator DifferentialOperator::scaled(const GaussianRational& c) const {
    DifferentialOperator out(desc_);
    if (c.is_zero()) return out;
    for (const auto& [alpha, coeff] : terms_) out.terms_.emplace(alpha, coeff.scaled(c));
    return out;
}

DifferentialOperator DifferentialOperator::compose(const DifferentialOperator& other) const {
    require_same_descriptor(desc_, other.desc_, "operator compose");
    const int dim = desc_->dim();
    DifferentialOperator out(desc_);
    // (c1 d^beta) . (c2 d^alpha) f = c1 sum_{gamma<=beta} binom(beta,gamma)
    //                                (d^gamma c2) d^{beta-gamma+alpha} f
    for (const auto& [beta, c1] : terms_) {
        for (const auto& [alpha, c2] : other.terms_) {
            for_each_sub_index(beta, [&](const std::vector<int>& gamma) {
                AlgebraElement dc2 = c2.derive_multi(gamma);
                if (dc2.is_zero()) return;
                MultiIndex target(dim);
                for (int j = 0; j < dim; ++j) target[j] = beta[j] - gamma[j] + alpha[j];
                Rational binom = multi_binomial(beta, gamma);
                out.add_term(target, (c1 * dc2).scaled(GaussianRational(binom)));
            });
        }
    }
    return out;
}

bool DifferentialOperator::operator==(const DifferentialOperator& o) const {
    return same_descriptor(desc_, o.desc_) && terms_ == o.terms_;
}

EquivalenceTransform::EquivalenceTransform(DescriptorPtr desc, int K)
    : desc_(std::move(desc)), K_(K) {
    if (K_ < 0) throw PreconditionError("transform truncation order must be non-negative");
    ops_.assign(K_, DifferentialOperator::zero(desc_));
}

const DifferentialOperator& EquivalenceTransform::op(int r) const {
    if (r < 1 || r > K_) throw IndexRangeError("transform order out of range");
    return ops_[r - 1];
}

void EquivalenceTransform::set_op(int r, DifferentialOperator d) {
    if (r < 1 || r > K_) throw IndexRangeError("transform order out of range");
    require_same_descriptor(desc_, d.descriptor(), "transform set_op");
    ops_[r - 1] = std::move(d);
}

bool EquivalenceTransform::is_identity() const {
    for (const auto& d : ops_)
        if (!d.is_zero()) return false;
    return true;
}

FormalSeries EquivalenceTransform::apply(const FormalSeries& f) const {
    require_same_descriptor(desc_, f.descriptor(), "transform apply");
    if (f.truncation_order() != K_)
        throw TruncationMismatchError("transform apply: truncation orders differ");
    FormalSeries out = f;
    for (int r = 0; r <= K_; ++r) {
        AlgebraElement acc = f.coeff(r);
        for (int s = 1; s <= r; ++s) acc += ops_[s - 1].apply(f.coeff(r - s));
        out.set_coeff(r, std::move(acc));
    }
    return out;
}

EquivalenceTransform EquivalenceTransform::compose(const EquivalenceTransform& other) const {
    require_same_descriptor(desc_, other.desc_, "transform compose");
    if (K_ != other.K_) throw TruncationMismatchError("transform compose: truncation orders differ");
    EquivalenceTransform out(desc_, K_);
    for (int r = 1; r <= K_; ++r) {
        DifferentialOperator acc = ops_[r - 1];
        acc += other.ops_[r - 1];
        for (int s = 1; s < r; ++s) acc += ops_[s - 1].compose(other.ops_[r - s - 1]);
        out.ops_[r - 1] = std::move(acc);
    }
    return out;
}

EquivalenceTransform EquivalenceTransform::inverse() const {
    // strict (no identity) powers N^k of N = T - id; N^k only contributes at
    // orders >= k, so the alternating sum is finite
    EquivalenceTransform result(desc_, K_);
    std::vector<DifferentialOperator> power(ops_.begin(), ops_.end()); // N^1
    int sign = -1;
    for (int k = 1; k <= K_; ++k) {
        for (int r = 1; r <= K_; ++r) {
            if (power[r - 1].is_zero()) continue;
            if (sign > 0)
                result.ops_[r - 1] += power[r - 1];
            else
                result.ops_[r - 1] += power[r - 1].scaled(GaussianRational(-1));
        }
        if (k == K_) break;
        // next strict power: (N^{k+1})_r = sum_{s+t=r} N_s (N^k)_t
        std::vector<DifferentialOperator> next(K_, DifferentialOperator::zero(desc_));
        for (int r = 1; r <= K_; ++r) {
            for (int s = 1; s < r; ++s) {
                if (ops_[s - 1].is_zero() || power[r - s - 1].is_zero()) continue;
                next[r - 1] += ops_[s - 1].compose(power[r - s - 1]);
            }
        }
        power = std::move(next);
        sign = -sign;
    }
    return result;
}

bool EquivalenceTransform::operator==(const EquivalenceTransform& o) const {
    return same_descriptor(desc_, o.desc_) && K_ == o.K_ && ops_ == o.ops_;
}

} // namespace starmod
