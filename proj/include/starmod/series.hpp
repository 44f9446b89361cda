#pragma once

#include <optional>
#include <string>
#include <vector>

#include "starmod/algebra.hpp"

namespace starmod {

/// Truncated power series in the formal parameter: sum_{r=0}^{K} lambda^r c_r,
/// understood mod lambda^{K+1}. All coefficients share one descriptor and
/// arithmetic never reads beyond K.
class FormalSeries {
  public:
    FormalSeries(DescriptorPtr desc, int truncation_order);

    static FormalSeries zero(DescriptorPtr desc, int K) { return FormalSeries(std::move(desc), K); }
    static FormalSeries one(DescriptorPtr desc, int K);
    /// Order-zero embedding of an algebra element.
    static FormalSeries embed(const AlgebraElement& e, int K);
    static FormalSeries scalar(DescriptorPtr desc, int K, const GaussianRational& c);
    static FormalSeries from_coeffs(std::vector<AlgebraElement> coeffs);

    const DescriptorPtr& descriptor() const { return desc_; }
    int truncation_order() const { return K_; }
    const AlgebraElement& coeff(int r) const;
    void set_coeff(int r, AlgebraElement e);

    bool is_zero() const;
    /// Lowest order whose coefficient differs from `o`; nullopt when equal.
    std::optional<int> first_difference_order(const FormalSeries& o) const;

    FormalSeries operator-() const;
    FormalSeries& operator+=(const FormalSeries& o);
    FormalSeries& operator-=(const FormalSeries& o);
    friend FormalSeries operator+(FormalSeries a, const FormalSeries& b) { return a += b; }
    friend FormalSeries operator-(FormalSeries a, const FormalSeries& b) { return a -= b; }

    FormalSeries scaled(const GaussianRational& c) const;
    /// Multiplication by lambda^k (drops orders beyond K).
    FormalSeries shifted(int k) const;
    FormalSeries conjugate() const;

    bool operator==(const FormalSeries& o) const;
    bool operator!=(const FormalSeries& o) const { return !(*this == o); }

    std::string to_string() const;

  private:
    DescriptorPtr desc_;
    int K_;
    std::vector<AlgebraElement> coeffs_;
};

void require_same_truncation(const FormalSeries& a, const FormalSeries& b, const char* where);

/// Series with plain scalar coefficients (trace values, indices).
class ScalarSeries {
  public:
    explicit ScalarSeries(int K) : coeffs_(K + 1, GaussianRational(0)) {}

    int truncation_order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const GaussianRational& coeff(int r) const { return coeffs_.at(r); }
    void set_coeff(int r, GaussianRational c) { coeffs_.at(r) = std::move(c); }

    ScalarSeries& operator+=(const ScalarSeries& o);
    friend ScalarSeries operator+(ScalarSeries a, const ScalarSeries& b) { return a += b; }

    bool operator==(const ScalarSeries& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const ScalarSeries& o) const { return !(*this == o); }

    std::string to_string() const;

  private:
    std::vector<GaussianRational> coeffs_;
};

} // namespace starmod
