#include "starmod/series.hpp"

#include <sstream>

#include "starmod/error.hpp"

namespace starmod {

FormalSeries::FormalSeries(DescriptorPtr desc, int truncation_order)
    : desc_(std::move(desc)), K_(truncation_order) {
    if (K_ < 0) throw PreconditionError("truncation order must be non-negative");
    coeffs_.assign(K_ + 1, AlgebraElement::zero(desc_));
}

FormalSeries FormalSeries::one(DescriptorPtr desc, int K) {
    FormalSeries s(desc, K);
    s.coeffs_[0] = AlgebraElement::one(desc);
    return s;
}

FormalSeries FormalSeries::embed(const AlgebraElement& e, int K) {
    FormalSeries s(e.descriptor(), K);
    s.coeffs_[0] = e;
    return s;
}

FormalSeries FormalSeries::scalar(DescriptorPtr desc, int K, const GaussianRational& c) {
    FormalSeries s(desc, K);
    s.coeffs_[0] = AlgebraElement::constant(std::move(desc), c);
    return s;
}

FormalSeries FormalSeries::from_coeffs(std::vector<AlgebraElement> coeffs) {
    if (coeffs.empty()) throw PreconditionError("series needs at least the order-0 coefficient");
    FormalSeries s(coeffs[0].descriptor(), static_cast<int>(coeffs.size()) - 1);
    for (std::size_t r = 1; r < coeffs.size(); ++r)
        require_same_descriptor(coeffs[0].descriptor(), coeffs[r].descriptor(), "from_coeffs");
    s.coeffs_ = std::move(coeffs);
    return s;
}

const AlgebraElement& FormalSeries::coeff(int r) const {
    if (r < 0 || r > K_) throw IndexRangeError("series coefficient order out of range");
    return coeffs_[r];
}

void FormalSeries::set_coeff(int r, AlgebraElement e) {
    if (r < 0 || r > K_) throw IndexRangeError("series coefficient order out of range");
    require_same_descriptor(desc_, e.descriptor(), "set_coeff");
    coeffs_[r] = std::move(e);
}

bool FormalSeries::is_zero() const {
    for (const auto& c : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

std::optional<int> FormalSeries::first_difference_order(const FormalSeries& o) const {
    require_same_descriptor(desc_, o.desc_, "first_difference_order");
    require_same_truncation(*this, o, "first_difference_order");
    for (int r = 0; r <= K_; ++r)
        if (coeffs_[r] != o.coeffs_[r]) return r;
    return std::nullopt;
}

FormalSeries FormalSeries::operator-() const {
    FormalSeries out(desc_, K_);
    for (int r = 0; r <= K_; ++r) out.coeffs_[r] = -coeffs_[r];
    return out;
}

FormalSeries& FormalSeries::operator+=(const FormalSeries& o) {
    require_same_descriptor(desc_, o.desc_, "series add");
    require_same_truncation(*this, o, "series add");
    for (int r = 0; r <= K_; ++r) coeffs_[r] += o.coeffs_[r];
    return *this;
}

FormalSeries& FormalSeries::operator-=(const FormalSeries& o) {
    require_same_descriptor(desc_, o.desc_, "series subtract");
    require_same_truncation(*this, o, "series subtract");
    for (int r = 0; r <= K_; ++r) coeffs_[r] -= o.coeffs_[r];
    return *this;
}

FormalSeries FormalSeries::scaled(const GaussianRational& c) const {
    FormalSeries out(desc_, K_);
    for (int r = 0; r <= K_; ++r) out.coeffs_[r] = coeffs_[r].scaled(c);
    return out;
}

FormalSeries FormalSeries::shifted(int k) const {
    if (k < 0) throw PreconditionError("shift exponent must be non-negative");
    FormalSeries out(desc_, K_);
    for (int r = 0; r + k <= K_; ++r) out.coeffs_[r + k] = coeffs_[r];
    return out;
}

FormalSeries FormalSeries::conjugate() const {
    FormalSeries out(desc_, K_);
    for (int r = 0; r <= K_; ++r) out.coeffs_[r] = coeffs_[r].conjugate();
    return out;
}

bool FormalSeries::operator==(const FormalSeries& o) const {
    return same_descriptor(desc_, o.desc_) && K_ == o.K_ && coeffs_ == o.coeffs_;
}

std::string FormalSeries::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int r = 0; r <= K_; ++r) {
        if (coeffs_[r].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (r > 0) os << "L^" << r << "*";
        os << "[" << coeffs_[r].to_string() << "]";
    }
    if (first) return "0";
    return os.str();
}

void require_same_truncation(const FormalSeries& a, const FormalSeries& b, const char* where) {
    if (a.truncation_order() != b.truncation_order())
        throw TruncationMismatchError(std::string(where) + ": truncation orders differ");
}

ScalarSeries& ScalarSeries::operator+=(const ScalarSeries& o) {
    if (truncation_order() != o.truncation_order())
        throw TruncationMismatchError("scalar series add: truncation orders differ");
    for (std::size_t r = 0; r < coeffs_.size(); ++r) coeffs_[r] += o.coeffs_[r];
    return *this;
}

std::string ScalarSeries::to_string() const {
    std::ostringstream os;
    for (std::size_t r = 0; r < coeffs_.size(); ++r) {
        if (r > 0) os << " + ";
        os << coeffs_[r].to_string();
        if (r > 0) os << " L^" << r;
    }
    return os.str();
}

} // namespace starmod
