#include "starmod/algebra.hpp"

#include <sstream>

#include "starmod/error.hpp"

namespace starmod {

AlgebraDescriptor::AlgebraDescriptor(AlgebraKind kind, int dim,
                                     std::vector<std::vector<Rational>> poisson)
    : kind_(kind), dim_(dim), poisson_(std::move(poisson)) {
    if (dim_ < 2 || dim_ % 2 != 0) throw PreconditionError("algebra dimension must be even and >= 2");
    if (static_cast<int>(poisson_.size()) != dim_)
        throw DimensionMismatchError("poisson matrix must be dim x dim");
    for (int j = 0; j < dim_; ++j) {
        if (static_cast<int>(poisson_[j].size()) != dim_)
            throw DimensionMismatchError("poisson matrix must be dim x dim");
        for (int k = 0; k <= j; ++k) {
            if (poisson_[j][k] != -poisson_[k][j])
                throw PreconditionError("poisson matrix must be antisymmetric");
        }
    }
}

std::shared_ptr<const AlgebraDescriptor> AlgebraDescriptor::torus(Rational theta) {
    std::vector<std::vector<Rational>> pi(2, std::vector<Rational>(2, Rational(0)));
    pi[0][1] = theta;
    pi[1][0] = -theta;
    return std::shared_ptr<const AlgebraDescriptor>(
        new AlgebraDescriptor(AlgebraKind::torus, 2, std::move(pi)));
}

std::shared_ptr<const AlgebraDescriptor> AlgebraDescriptor::plane(
    int dim, std::vector<std::vector<Rational>> poisson) {
    return std::shared_ptr<const AlgebraDescriptor>(
        new AlgebraDescriptor(AlgebraKind::plane, dim, std::move(poisson)));
}

std::shared_ptr<const AlgebraDescriptor> AlgebraDescriptor::plane_standard(int dim) {
    std::vector<std::vector<Rational>> pi(dim, std::vector<Rational>(dim, Rational(0)));
    for (int k = 0; k + 1 < dim; k += 2) {
        pi[k][k + 1] = Rational(1);
        pi[k + 1][k] = Rational(-1);
    }
    return plane(dim, std::move(pi));
}

Rational AlgebraDescriptor::theta() const {
    if (kind_ != AlgebraKind::torus) throw UnsupportedOperationError("theta: torus algebras only");
    return poisson_[0][1];
}

bool same_descriptor(const DescriptorPtr& a, const DescriptorPtr& b) {
    return a.get() == b.get() || (a && b && *a == *b);
}

void require_same_descriptor(const DescriptorPtr& a, const DescriptorPtr& b, const char* where) {
    if (!same_descriptor(a, b))
        throw DescriptorMismatchError(std::string(where) + ": operands over different algebras");
}

AlgebraElement AlgebraElement::constant(DescriptorPtr desc, GaussianRational c) {
    AlgebraElement e(std::move(desc));
    e.add_term(Key(e.desc_->dim(), 0), c);
    return e;
}

AlgebraElement AlgebraElement::monomial(DescriptorPtr desc, Key key, GaussianRational c) {
    AlgebraElement e(std::move(desc));
    if (static_cast<int>(key.size()) != e.desc_->dim())
        throw DimensionMismatchError("monomial key length must equal algebra dimension");
    if (e.desc_->kind() == AlgebraKind::plane) {
        for (int v : key)
            if (v < 0) throw PreconditionError("plane exponents must be non-negative");
    }
    e.add_term(key, c);
    return e;
}

bool AlgebraElement::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    for (int v : terms_.begin()->first)
        if (v != 0) return false;
    return true;
}

GaussianRational AlgebraElement::constant_part() const {
    auto it = terms_.find(Key(desc_->dim(), 0));
    return it == terms_.end() ? GaussianRational(0) : it->second;
}

void AlgebraElement::add_term(const Key& key, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

AlgebraElement AlgebraElement::operator-() const {
    AlgebraElement out(desc_);
    for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
    return out;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    require_same_descriptor(desc_, o.desc_, "add");
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
    require_same_descriptor(desc_, o.desc_, "subtract");
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_descriptor(a.desc_, b.desc_, "multiply");
    AlgebraElement out(a.desc_);
    const int dim = a.desc_->dim();
    AlgebraElement::Key sum(dim);
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            for (int j = 0; j < dim; ++j) sum[j] = ka[j] + kb[j];
            out.add_term(sum, ca * cb);
        }
    }
    return out;
}

AlgebraElement AlgebraElement::scaled(const GaussianRational& c) const {
    AlgebraElement out(desc_);
    if (c.is_zero()) return out;
    for (const auto& [k, t] : terms_) out.terms_.emplace(k, t * c);
    return out;
}

AlgebraElement AlgebraElement::derive(int j) const {
    if (j < 1 || j > desc_->dim()) throw IndexRangeError("derive: direction index out of range");
    const int jj = j - 1;
    AlgebraElement out(desc_);
    if (desc_->kind() == AlgebraKind::torus) {
        // d_j e_m = i m_j e_m
        for (const auto& [k, c] : terms_) {
            if (k[jj] == 0) continue;
            out.terms_.emplace(k, c * GaussianRational(Rational(0), Rational(k[jj])));
        }
    } else {
        for (const auto& [k, c] : terms_) {
            if (k[jj] == 0) continue;
            Key shifted = k;
            shifted[jj] -= 1;
            out.add_term(shifted, c * GaussianRational(Rational(k[jj])));
        }
    }
    return out;
}

AlgebraElement AlgebraElement::derive_multi(const Key& alpha) const {
    if (static_cast<int>(alpha.size()) != desc_->dim())
        throw DimensionMismatchError("derive_multi: multi-index length mismatch");
    AlgebraElement out = *this;
    for (int j = 0; j < desc_->dim(); ++j)
        for (int n = 0; n < alpha[j]; ++n) out = out.derive(j + 1);
    return out;
}

AlgebraElement AlgebraElement::conjugate() const {
    AlgebraElement out(desc_);
    if (desc_->kind() == AlgebraKind::torus) {
        // conj(sum c_m e_m) = sum conj(c_m) e_{-m}
        for (const auto& [k, c] : terms_) {
            Key neg(k.size());
            for (std::size_t j = 0; j < k.size(); ++j) neg[j] = -k[j];
            out.terms_.emplace(std::move(neg), c.conj());
        }
    } else {
        for (const auto& [k, c] : terms_) out.terms_.emplace(k, c.conj());
    }
    return out;
}

GaussianRational AlgebraElement::integrate() const {
    if (desc_->kind() != AlgebraKind::torus)
        throw UnsupportedOperationError("integrate: no normalized trace on the plane algebra");
    return constant_part();
}

bool AlgebraElement::operator==(const AlgebraElement& o) const {
    return same_descriptor(desc_, o.desc_) && terms_ == o.terms_;
}

std::string AlgebraElement::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string() << ")";
        if (desc_->kind() == AlgebraKind::torus) {
            os << "*e[" << k[0] << "," << k[1] << "]";
        } else {
            for (std::size_t j = 0; j < k.size(); ++j)
                if (k[j] != 0) os << "*x" << (j + 1) << "^" << k[j];
        }
    }
    return os.str();
}

AlgebraElement poisson_bracket(const AlgebraElement& f, const AlgebraElement& g) {
    require_same_descriptor(f.descriptor(), g.descriptor(), "poisson_bracket");
    const auto& desc = f.descriptor();
    AlgebraElement out = AlgebraElement::zero(desc);
    for (int j = 1; j <= desc->dim(); ++j) {
        for (int k = 1; k <= desc->dim(); ++k) {
            const Rational& pi = desc->poisson(j - 1, k - 1);
            if (pi == 0) continue;
            out += (f.derive(j) * g.derive(k)).scaled(GaussianRational(pi));
        }
    }
    return out;
}

} // namespace starmod
