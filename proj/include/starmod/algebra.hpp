#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "starmod/rational.hpp"

namespace starmod {

enum class AlgebraKind { torus, plane };

/// Immutable description of a coefficient algebra: the 2-torus Fourier
/// algebra with Poisson tensor theta d1^d2, or the polynomial algebra on
/// R^{2n} with a constant antisymmetric Poisson matrix.
class AlgebraDescriptor {
  public:
    static std::shared_ptr<const AlgebraDescriptor> torus(Rational theta);
    static std::shared_ptr<const AlgebraDescriptor> plane(int dim,
                                                          std::vector<std::vector<Rational>> poisson);
    /// Plane with the standard symplectic matrix (pi^{2k-1,2k} = 1).
    static std::shared_ptr<const AlgebraDescriptor> plane_standard(int dim);

    AlgebraKind kind() const { return kind_; }
    int dim() const { return dim_; }
    const Rational& poisson(int j, int k) const { return poisson_[j][k]; }
    Rational theta() const;

    bool operator==(const AlgebraDescriptor& o) const {
        return kind_ == o.kind_ && dim_ == o.dim_ && poisson_ == o.poisson_;
    }

  private:
    AlgebraDescriptor(AlgebraKind kind, int dim, std::vector<std::vector<Rational>> poisson);
    AlgebraKind kind_;
    int dim_;
    std::vector<std::vector<Rational>> poisson_;
};

using DescriptorPtr = std::shared_ptr<const AlgebraDescriptor>;

bool same_descriptor(const DescriptorPtr& a, const DescriptorPtr& b);
void require_same_descriptor(const DescriptorPtr& a, const DescriptorPtr& b, const char* where);

/// Element of the coefficient algebra, a finite sum of monomials. Keys are
/// Fourier modes (torus, any sign) or exponent multi-indices (plane,
/// non-negative); zero coefficients are never stored and the term map is
/// ordered, so equality and serialization are canonical.
class AlgebraElement {
  public:
    using Key = std::vector<int>;
    using TermMap = std::map<Key, GaussianRational>;

    explicit AlgebraElement(DescriptorPtr desc) : desc_(std::move(desc)) {}

    static AlgebraElement zero(DescriptorPtr desc) { return AlgebraElement(std::move(desc)); }
    static AlgebraElement constant(DescriptorPtr desc, GaussianRational c);
    static AlgebraElement one(DescriptorPtr desc) { return constant(std::move(desc), GaussianRational(1)); }
    /// Single monomial c * e_m (torus) or c * x^alpha (plane).
    static AlgebraElement monomial(DescriptorPtr desc, Key key, GaussianRational c);

    const DescriptorPtr& descriptor() const { return desc_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term (coefficient of the zero key).
    GaussianRational constant_part() const;

    void add_term(const Key& key, const GaussianRational& c);

    AlgebraElement operator-() const;
    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement& operator-=(const AlgebraElement& o);
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    /// Undeformed (pointwise) product.
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
    AlgebraElement scaled(const GaussianRational& c) const;

    /// Partial derivative in direction j (1-based).
    AlgebraElement derive(int j) const;
    /// Iterated derivative d^alpha.
    AlgebraElement derive_multi(const Key& alpha) const;
    /// Complex conjugation of the function.
    AlgebraElement conjugate() const;
    /// Normalized torus integral: coefficient of the zero mode.
    GaussianRational integrate() const;

    bool operator==(const AlgebraElement& o) const;
    bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

    std::string to_string() const;

  private:
    DescriptorPtr desc_;
    TermMap terms_;
};

/// { f, g } = sum pi^{jk} d_j f d_k g.
AlgebraElement poisson_bracket(const AlgebraElement& f, const AlgebraElement& g);

} // namespace starmod
