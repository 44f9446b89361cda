#pragma once

#include <map>

#include "starmod/series.hpp"

namespace starmod {

/// Finite-order differential operator f -> sum_alpha c_alpha d^alpha f with
/// algebra-element coefficients.
class DifferentialOperator {
  public:
    using MultiIndex = std::vector<int>;

    explicit DifferentialOperator(DescriptorPtr desc) : desc_(std::move(desc)) {}

    static DifferentialOperator zero(DescriptorPtr desc) { return DifferentialOperator(std::move(desc)); }
    /// d_j (1-based direction).
    static DifferentialOperator partial(DescriptorPtr desc, int j);
    static DifferentialOperator term(AlgebraElement coeff, MultiIndex alpha);

    const DescriptorPtr& descriptor() const { return desc_; }
    const std::map<MultiIndex, AlgebraElement>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const MultiIndex& alpha, const AlgebraElement& coeff);

    AlgebraElement apply(const AlgebraElement& f) const;

    DifferentialOperator& operator+=(const DifferentialOperator& o);
    friend DifferentialOperator operator+(DifferentialOperator a, const DifferentialOperator& b) {
        return a += b;
    }
    DifferentialOperator scaled(const GaussianRational& c) const;
    /// Operator composition this . other, expanded by the Leibniz rule so the
    /// result is again in normal form.
    DifferentialOperator compose(const DifferentialOperator& other) const;

    bool operator==(const DifferentialOperator& o) const;
    bool operator!=(const DifferentialOperator& o) const { return !(*this == o); }

  private:
    DescriptorPtr desc_;
    std::map<MultiIndex, AlgebraElement> terms_;
};

/// T = id + sum_{r>=1} lambda^r T_r with differential-operator orders. The
/// order-0 part is the identity by construction, so T is invertible mod
/// lambda^{K+1}.
class EquivalenceTransform {
  public:
    EquivalenceTransform(DescriptorPtr desc, int K);

    static EquivalenceTransform identity(DescriptorPtr desc, int K) {
        return EquivalenceTransform(std::move(desc), K);
    }

    const DescriptorPtr& descriptor() const { return desc_; }
    int truncation_order() const { return K_; }
    /// 1-based order access, r in 1..K.
    const DifferentialOperator& op(int r) const;
    void set_op(int r, DifferentialOperator d);

    bool is_identity() const;

    /// (Tf)_r = f_r + sum_{s=1}^{r} T_s(f_{r-s}).
    FormalSeries apply(const FormalSeries& f) const;

    /// this . other as maps (apply other first).
    EquivalenceTransform compose(const EquivalenceTransform& other) const;
    /// Neumann series sum_k (-1)^k (T - id)^k truncated at K.
    EquivalenceTransform inverse() const;

    bool operator==(const EquivalenceTransform& o) const;
    bool operator!=(const EquivalenceTransform& o) const { return !(*this == o); }

  private:
    DescriptorPtr desc_;
    int K_;
    std::vector<DifferentialOperator> ops_; // index r-1 holds T_r
};

} // namespace starmod
