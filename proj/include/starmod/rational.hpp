#pragma once

#include <gmpxx.h>

#include <string>

#include "starmod/error.hpp"

namespace starmod {

/// Exact rational scalar. GMP keeps numerators/denominators arbitrary size,
/// so identities that hold do so bit-exactly at every truncation order.
using Rational = mpq_class;

Rational rational_from_string(const std::string& s);

/// Canonical form: "n" when the denominator is 1, else "n/d".
std::string rational_to_string(const Rational& r);

bool rational_is_integer(const Rational& r);

/// Element of Q(i): re + im*i. All engine arithmetic bottoms out here.
class GaussianRational {
  public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(long n) : re_(n), im_(0) {}
    explicit GaussianRational(Rational re) : re_(std::move(re)), im_(0) {}
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return GaussianRational(Rational(0), Rational(1)); }
    static GaussianRational of(long num, long den) {
        Rational r(num, den);
        r.canonicalize();
        return GaussianRational(r);
    }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }
    bool is_integer() const { return im_ == 0 && rational_is_integer(re_); }

    GaussianRational conj() const { return GaussianRational(re_, Rational(-im_)); }

    GaussianRational operator-() const { return GaussianRational(Rational(-re_), Rational(-im_)); }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational re = re_ * o.re_ - im_ * o.im_;
        Rational im = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw Error("GaussianRational: division by zero");
        Rational n = o.re_ * o.re_ + o.im_ * o.im_;
        Rational re = (re_ * o.re_ + im_ * o.im_) / n;
        Rational im = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    /// Total order used only for canonical container keys.
    friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
        int c = cmp(a.re_, b.re_);
        if (c != 0) return c < 0;
        return cmp(a.im_, b.im_) < 0;
    }

    /// Wire format "a/b+c/d i" with zero parts omitted ("0" for zero).
    std::string to_string() const;
    static GaussianRational from_string(const std::string& s);

  private:
    Rational re_;
    Rational im_;
};

} // namespace starmod
