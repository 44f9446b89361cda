#include "starmod/matrix.hpp"

#include "starmod/error.hpp"
#include "starmod/sampling.hpp"

namespace starmod {

ClassicalMatrix::ClassicalMatrix(DescriptorPtr desc, int rows, int cols)
    : desc_(std::move(desc)), rows_(rows), cols_(cols) {
    if (rows_ < 1 || cols_ < 1) throw DimensionMismatchError("matrix dimensions must be positive");
    entries_.assign(static_cast<std::size_t>(rows_) * cols_, AlgebraElement::zero(desc_));
}

ClassicalMatrix ClassicalMatrix::identity(DescriptorPtr desc, int n) {
    ClassicalMatrix m(desc, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, AlgebraElement::one(desc));
    return m;
}

void ClassicalMatrix::set(int i, int j, AlgebraElement e) {
    require_same_descriptor(desc_, e.descriptor(), "classical matrix set");
    entries_[idx(i, j)] = std::move(e);
}

ClassicalMatrix ClassicalMatrix::operator*(const ClassicalMatrix& o) const {
    require_same_descriptor(desc_, o.desc_, "classical matrix multiply");
    if (cols_ != o.rows_) throw DimensionMismatchError("classical matrix multiply: inner dimensions");
    ClassicalMatrix out(desc_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < o.cols_; ++k) {
            AlgebraElement acc = AlgebraElement::zero(desc_);
            for (int j = 0; j < cols_; ++j) acc += at(i, j) * o.at(j, k);
            out.set(i, k, std::move(acc));
        }
    return out;
}

ClassicalMatrix ClassicalMatrix::operator+(const ClassicalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatchError("classical matrix add");
    ClassicalMatrix out = *this;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.set(i, j, at(i, j) + o.at(i, j));
    return out;
}

ClassicalMatrix ClassicalMatrix::operator-(const ClassicalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatchError("classical matrix subtract");
    ClassicalMatrix out = *this;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.set(i, j, at(i, j) - o.at(i, j));
    return out;
}

bool ClassicalMatrix::operator==(const ClassicalMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && same_descriptor(desc_, o.desc_) &&
           entries_ == o.entries_;
}

AlgebraElement ClassicalMatrix::det() const {
    if (rows_ != cols_) throw DimensionMismatchError("determinant: square matrices only");
    if (rows_ == 1) return at(0, 0);
    // cofactor expansion along the first row; fine at bundle scale (N <= 8)
    AlgebraElement acc = AlgebraElement::zero(desc_);
    for (int j = 0; j < cols_; ++j) {
        if (at(0, j).is_zero()) continue;
        ClassicalMatrix minor(desc_, rows_ - 1, cols_ - 1);
        for (int r = 1; r < rows_; ++r) {
            int cc = 0;
            for (int c = 0; c < cols_; ++c) {
                if (c == j) continue;
                minor.set(r - 1, cc++, at(r, c));
            }
        }
        AlgebraElement term = at(0, j) * minor.det();
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

AlgebraElement invert_unit(const AlgebraElement& u) {
    if (u.is_zero()) throw SingularError("unit inverse: element is zero");
    if (u.terms().size() != 1)
        throw SingularError("unit inverse: element is not a monomial unit of the algebra");
    const auto& [key, c] = *u.terms().begin();
    if (u.descriptor()->kind() == AlgebraKind::plane) {
        for (int v : key)
            if (v != 0)
                throw SingularError("unit inverse: plane units are nonzero constants only");
    }
    AlgebraElement::Key neg(key.size());
    for (std::size_t j = 0; j < key.size(); ++j) neg[j] = -key[j];
    return AlgebraElement::monomial(u.descriptor(), std::move(neg), GaussianRational(1) / c);
}

ClassicalMatrix ClassicalMatrix::inverse() const {
    if (rows_ != cols_) throw DimensionMismatchError("inverse: square matrices only");
    AlgebraElement d = det();
    AlgebraElement dinv = invert_unit(d); // throws SingularError when not a unit
    ClassicalMatrix out(desc_, rows_, cols_);
    if (rows_ == 1) {
        out.set(0, 0, dinv);
        return out;
    }
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            ClassicalMatrix minor(desc_, rows_ - 1, cols_ - 1);
            for (int r = 0, rr = 0; r < rows_; ++r) {
                if (r == j) continue; // adjugate: transposed cofactors
                for (int c = 0, cc = 0; c < cols_; ++c) {
                    if (c == i) continue;
                    minor.set(rr, cc++, at(r, c));
                }
                ++rr;
            }
            AlgebraElement cof = minor.det() * dinv;
            out.set(i, j, ((i + j) % 2 == 0) ? cof : -cof);
        }
    }
    return out;
}

ClassicalMatrix ClassicalMatrix::transpose() const {
    ClassicalMatrix out(desc_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.set(j, i, at(i, j));
    return out;
}

StarMatrix::StarMatrix(StarProductPtr star, int rows, int cols)
    : star_(std::move(star)), rows_(rows), cols_(cols) {
    if (rows_ < 1 || cols_ < 1) throw DimensionMismatchError("matrix dimensions must be positive");
    entries_.assign(static_cast<std::size_t>(rows_) * cols_,
                    FormalSeries::zero(star_->descriptor(), star_->truncation_order()));
}

StarMatrix StarMatrix::identity(StarProductPtr star, int n) {
    StarMatrix m(star, n, n);
    for (int i = 0; i < n; ++i)
        m.set(i, i, FormalSeries::one(m.descriptor(), m.truncation_order()));
    return m;
}

StarMatrix StarMatrix::embed(const ClassicalMatrix& m, StarProductPtr star) {
    require_same_descriptor(m.descriptor(), star->descriptor(), "matrix embed");
    StarMatrix out(std::move(star), m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            out.set(i, j, FormalSeries::embed(m.at(i, j), out.truncation_order()));
    return out;
}

StarMatrix StarMatrix::scalar_unit(StarProductPtr star, int n, int i, int j,
                                   const GaussianRational& c, int order) {
    StarMatrix out(star, n, n);
    FormalSeries f = FormalSeries::scalar(out.descriptor(), out.truncation_order(), c).shifted(order);
    out.set(i, j, std::move(f));
    return out;
}

void StarMatrix::set(int i, int j, FormalSeries f) {
    require_series_fits(*star_, f, "matrix set");
    entries_[idx(i, j)] = std::move(f);
}

ClassicalMatrix StarMatrix::order_part(int r) const {
    ClassicalMatrix out(descriptor(), rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.set(i, j, at(i, j).coeff(r));
    return out;
}

StarMatrix StarMatrix::operator+(const StarMatrix& o) const {
    require_same_star(star_, o.star_, "matrix add");
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatchError("matrix add: shapes differ");
    StarMatrix out = *this;
    for (std::size_t t = 0; t < entries_.size(); ++t) out.entries_[t] += o.entries_[t];
    return out;
}

StarMatrix StarMatrix::operator-(const StarMatrix& o) const {
    require_same_star(star_, o.star_, "matrix subtract");
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw DimensionMismatchError("matrix subtract: shapes differ");
    StarMatrix out = *this;
    for (std::size_t t = 0; t < entries_.size(); ++t) out.entries_[t] -= o.entries_[t];
    return out;
}

StarMatrix StarMatrix::operator-() const {
    StarMatrix out = *this;
    for (auto& e : out.entries_) e = -e;
    return out;
}

StarMatrix StarMatrix::scaled(const GaussianRational& c) const {
    StarMatrix out = *this;
    for (auto& e : out.entries_) e = e.scaled(c);
    return out;
}

StarMatrix StarMatrix::star_mul(const StarMatrix& o) const {
    require_same_star(star_, o.star_, "matrix star multiply");
    if (cols_ != o.rows_)
        throw DimensionMismatchError("matrix star multiply: inner dimensions differ");
    StarMatrix out(star_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < o.cols_; ++k) {
            FormalSeries acc = FormalSeries::zero(descriptor(), truncation_order());
            for (int j = 0; j < cols_; ++j) {
                if (at(i, j).is_zero() || o.at(j, k).is_zero()) continue;
                acc += star_->multiply(at(i, j), o.at(j, k));
            }
            out.set(i, k, std::move(acc));
        }
    return out;
}

StarMatrix StarMatrix::adjoint() const {
    StarMatrix out(star_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.set(j, i, at(i, j).conjugate());
    return out;
}

FormalSeries StarMatrix::trace() const {
    if (rows_ != cols_) throw DimensionMismatchError("trace: square matrices only");
    FormalSeries acc = FormalSeries::zero(descriptor(), truncation_order());
    for (int i = 0; i < rows_; ++i) acc += at(i, i);
    return acc;
}

StarMatrix StarMatrix::star_inverse(const ClassicalMatrix* classical_inverse_hint) const {
    if (rows_ != cols_) throw DimensionMismatchError("star inverse: square matrices only");
    const int K = truncation_order();
    ClassicalMatrix a0 = order_part(0);
    ClassicalMatrix b0(descriptor(), rows_, cols_);
    if (classical_inverse_hint) {
        b0 = *classical_inverse_hint;
        if (a0 * b0 != ClassicalMatrix::identity(descriptor(), rows_) ||
            b0 * a0 != ClassicalMatrix::identity(descriptor(), rows_))
            throw PreconditionError("star inverse: supplied classical inverse fails verification");
    } else {
        b0 = a0.inverse();
    }

    // order-by-order defect correction: A0 B_r = -(A * B_{<r})_r
    StarMatrix inv = StarMatrix::embed(b0, star_);
    for (int r = 1; r <= K; ++r) {
        StarMatrix defect = star_mul(inv);
        ClassicalMatrix defect_r = defect.order_part(r);
        ClassicalMatrix correction = b0 * defect_r;
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) {
                FormalSeries e = inv.at(i, j);
                e.set_coeff(r, -correction.at(i, j));
                inv.set(i, j, std::move(e));
            }
    }

    StarMatrix id = StarMatrix::identity(star_, rows_);
    if (star_mul(inv) != id || inv.star_mul(*this) != id)
        throw InconsistencyError("star inverse failed its own verification");
    return inv;
}

StarMatrix StarMatrix::star_inv_sqrt() const {
    if (rows_ != cols_) throw DimensionMismatchError("star inverse sqrt: square matrices only");
    StarMatrix delta = *this - StarMatrix::identity(star_, rows_);
    ClassicalMatrix zero(descriptor(), rows_, cols_);
    if (delta.order_part(0) != zero)
        throw PreconditionError("star inverse sqrt: order-0 part must equal the identity");

    // sum_k binom(-1/2, k) Delta^{* k}; Delta^{* k} = O(lambda^k) keeps it finite
    const int K = truncation_order();
    StarMatrix acc = StarMatrix::identity(star_, rows_);
    StarMatrix power = StarMatrix::identity(star_, rows_);
    GaussianRational binom(1);
    for (int k = 1; k <= K; ++k) {
        power = power.star_mul(delta);
        Rational step(-1 - 2 * (k - 1), 2 * k); // binom(-1/2,k)/binom(-1/2,k-1)
        step.canonicalize();
        binom *= GaussianRational(step);
        acc = acc + power.scaled(binom);
    }
    return acc;
}

bool StarMatrix::is_zero() const {
    for (const auto& e : entries_)
        if (!e.is_zero()) return false;
    return true;
}

std::optional<int> StarMatrix::first_difference_order(const StarMatrix& o) const {
    require_same_star(star_, o.star_, "matrix first_difference_order");
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw DimensionMismatchError("matrix first_difference_order: shapes differ");
    std::optional<int> best;
    for (std::size_t t = 0; t < entries_.size(); ++t) {
        if (auto d = entries_[t].first_difference_order(o.entries_[t]))
            if (!best || *d < *best) best = d;
    }
    return best;
}

StarMatrix StarMatrix::direct_sum(const StarMatrix& a, const StarMatrix& b) {
    require_same_star(a.star_, b.star_, "matrix direct sum");
    StarMatrix out(a.star_, a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int j = 0; j < a.cols_; ++j) out.set(i, j, a.at(i, j));
    for (int i = 0; i < b.rows_; ++i)
        for (int j = 0; j < b.cols_; ++j) out.set(a.rows_ + i, a.cols_ + j, b.at(i, j));
    return out;
}

bool StarMatrix::operator==(const StarMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && same_star(star_, o.star_) &&
           entries_ == o.entries_;
}

StarMatrix sample_star_matrix(Xoshiro256& rng, const StarProductPtr& star, int rows, int cols) {
    StarMatrix out(star, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            out.set(i, j, sample_series(rng, star->descriptor(), star->truncation_order()));
    return out;
}

StarMatrix sample_star_matrix_classical(Xoshiro256& rng, const StarProductPtr& star, int rows,
                                        int cols) {
    StarMatrix out(star, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            out.set(i, j, FormalSeries::embed(sample_element_bounded(rng, star->descriptor(), 2, 2),
                                              star->truncation_order()));
    return out;
}

} // namespace starmod
