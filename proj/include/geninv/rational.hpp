#ifndef GENINV_RATIONAL_HPP
#define GENINV_RATIONAL_HPP

#include <complex>
#include <string>

#include <gmpxx.h>

#include "geninv/error.hpp"

namespace geninv {

// Complex number with arbitrary-precision rational real and imaginary parts.
// Closed under +, -, *, / and conjugation, so every formula in the library
// evaluates without rounding. mpq_class keeps both parts canonical
// (gcd(num, den) = 1, den > 0) after every arithmetic operation.
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(long value) : re_(value), im_(0) {} // NOLINT: implicit by design
    GaussianRational(mpq_class re, mpq_class im = mpq_class(0))
        : re_(std::move(re)), im_(std::move(im)) {
        // arithmetic keeps mpq values canonical, but injected ones need not be
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussianRational ratio(long num, long den) {
        if (den == 0) throw DivisionByZero("rational with zero denominator");
        mpq_class q(num, den);
        q.canonicalize();
        return GaussianRational(q);
    }

    const mpq_class& re() const noexcept { return re_; }
    const mpq_class& im() const noexcept { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussianRational conj() const { return GaussianRational(re_, -im_); }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

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
        mpq_class re = re_ * o.re_ - im_ * o.im_;
        mpq_class im = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }

    GaussianRational& operator/=(const GaussianRational& o) {
        mpq_class norm = o.re_ * o.re_ + o.im_ * o.im_;
        if (sgn(norm) == 0) throw DivisionByZero("division by zero scalar");
        mpq_class re = (re_ * o.re_ + im_ * o.im_) / norm;
        mpq_class im = (im_ * o.re_ - re_ * o.im_) / norm;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }

    GaussianRational operator-() const { return GaussianRational(-re_, -im_); }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    // Canonical text form: "p/q" (or "p" when q = 1), with an optional
    // imaginary part appended as "+r/si" / "-r/si". Round-trips through
    // the matrix-file entry parser unchanged.
    std::string str() const {
        std::string out = re_.get_str();
        if (sgn(im_) != 0) {
            if (sgn(im_) > 0) out += '+';
            out += im_.get_str();
            out += 'i';
        }
        return out;
    }

private:
    mpq_class re_;
    mpq_class im_;
};

} // namespace geninv

#endif // GENINV_RATIONAL_HPP
