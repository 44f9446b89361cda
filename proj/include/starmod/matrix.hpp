#pragma once

#include "starmod/rng.hpp"
#include "starmod/star.hpp"

namespace starmod {

/// Matrix over the coefficient algebra (no lambda), used for order-0 parts.
class ClassicalMatrix {
  public:
    ClassicalMatrix(DescriptorPtr desc, int rows, int cols);

    static ClassicalMatrix identity(DescriptorPtr desc, int n);

    const DescriptorPtr& descriptor() const { return desc_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const AlgebraElement& at(int i, int j) const { return entries_[idx(i, j)]; }
    void set(int i, int j, AlgebraElement e);

    ClassicalMatrix operator*(const ClassicalMatrix& o) const;
    ClassicalMatrix operator+(const ClassicalMatrix& o) const;
    ClassicalMatrix operator-(const ClassicalMatrix& o) const;
    bool operator==(const ClassicalMatrix& o) const;
    bool operator!=(const ClassicalMatrix& o) const { return !(*this == o); }

    AlgebraElement det() const;
    /// Adjugate/determinant inverse; the determinant must be a unit of the
    /// algebra (nonzero constant, or a single Fourier monomial on the torus).
    ClassicalMatrix inverse() const;
    ClassicalMatrix transpose() const;

  private:
    int idx(int i, int j) const { return i * cols_ + j; }
    DescriptorPtr desc_;
    int rows_, cols_;
    std::vector<AlgebraElement> entries_;
};

/// Invert a unit of the coefficient algebra; throws SingularError otherwise.
AlgebraElement invert_unit(const AlgebraElement& u);

/// Matrix of truncated formal series sharing one star product. Column
/// vectors (cols == 1) double as module elements.
class StarMatrix {
  public:
    StarMatrix(StarProductPtr star, int rows, int cols);

    static StarMatrix identity(StarProductPtr star, int n);
    static StarMatrix zero(StarProductPtr star, int rows, int cols) {
        return StarMatrix(std::move(star), rows, cols);
    }
    /// Order-0 embedding of a classical matrix.
    static StarMatrix embed(const ClassicalMatrix& m, StarProductPtr star);
    /// Matrix unit with a scalar entry at (i, j) shifted to lambda^order.
    static StarMatrix scalar_unit(StarProductPtr star, int n, int i, int j,
                                  const GaussianRational& c, int order = 0);

    const StarProductPtr& star() const { return star_; }
    const DescriptorPtr& descriptor() const { return star_->descriptor(); }
    int truncation_order() const { return star_->truncation_order(); }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const FormalSeries& at(int i, int j) const { return entries_[idx(i, j)]; }
    void set(int i, int j, FormalSeries f);

    /// Order-r coefficients as a classical matrix.
    ClassicalMatrix order_part(int r) const;

    StarMatrix operator+(const StarMatrix& o) const;
    StarMatrix operator-(const StarMatrix& o) const;
    StarMatrix operator-() const;
    StarMatrix scaled(const GaussianRational& c) const;

    /// (A * B)_{ik} = sum_j A_{ij} * B_{jk} with the star product.
    StarMatrix star_mul(const StarMatrix& o) const;
    /// Conjugate transpose.
    StarMatrix adjoint() const;
    /// Sum of diagonal entries; square matrices only.
    FormalSeries trace() const;

    /// Order-by-order inverse. The order-0 part must be classically
    /// invertible; a caller-supplied classical inverse is verified and used
    /// when the adjugate route is inconvenient.
    StarMatrix star_inverse(const ClassicalMatrix* classical_inverse_hint = nullptr) const;

    /// (1 + D)^{-1/2} via the binomial series; requires the order-0 part to
    /// equal the identity.
    StarMatrix star_inv_sqrt() const;

    bool is_zero() const;
    std::optional<int> first_difference_order(const StarMatrix& o) const;

    static StarMatrix direct_sum(const StarMatrix& a, const StarMatrix& b);

    bool operator==(const StarMatrix& o) const;
    bool operator!=(const StarMatrix& o) const { return !(*this == o); }

  private:
    int idx(int i, int j) const { return i * cols_ + j; }
    StarProductPtr star_;
    int rows_, cols_;
    std::vector<FormalSeries> entries_;
};

/// Random matrix with sampled series entries.
StarMatrix sample_star_matrix(Xoshiro256& rng, const StarProductPtr& star, int rows, int cols);

/// Random matrix of order-0 embeddings with small mode support; the choice
/// for operands of long product chains, where coefficient support, not the
/// lambda depth, drives cost.
StarMatrix sample_star_matrix_classical(Xoshiro256& rng, const StarProductPtr& star, int rows,
                                        int cols);

} // namespace starmod
