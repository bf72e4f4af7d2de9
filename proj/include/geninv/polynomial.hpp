#ifndef GENINV_POLYNOMIAL_HPP
#define GENINV_POLYNOMIAL_HPP

#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "geninv/rational.hpp"
#include "geninv/scalar.hpp"

namespace geninv {

// Univariate polynomial in the shift parameter with exact Gaussian-rational
// coefficients, stored densely in ascending order with no trailing zeros.
// Element type of the shifted matrices that the exact limit evaluator
// eliminates on; division is polynomial exact division (the fraction-free
// algorithms only ever divide when the quotient stays in the ring).
class Poly {
public:
    Poly() = default;
    Poly(GaussianRational c) { // NOLINT: implicit by design
        if (!c.is_zero()) coeffs_.push_back(std::move(c));
    }
    explicit Poly(std::vector<GaussianRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static Poly variable() {
        return Poly(std::vector<GaussianRational>{GaussianRational(0), GaussianRational(1)});
    }

    bool is_zero() const { return coeffs_.empty(); }

    // Degree of the zero polynomial is reported as -1.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    static constexpr std::size_t kNoValuation = std::numeric_limits<std::size_t>::max();

    // Order of vanishing at 0; kNoValuation for the zero polynomial.
    std::size_t valuation() const {
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (!coeffs_[i].is_zero()) return i;
        return kNoValuation;
    }

    GaussianRational coeff(std::size_t i) const {
        return i < coeffs_.size() ? coeffs_[i] : GaussianRational();
    }

    Poly& operator+=(const Poly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }

    Poly& operator-=(const Poly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        trim();
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    Poly operator-() const {
        Poly out = *this;
        for (auto& c : out.coeffs_) c = -c;
        return out;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        Poly out;
        out.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, GaussianRational());
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        out.trim();
        return out;
    }

    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    // Exact division: remainder must vanish. A nonzero remainder means a
    // fraction-free invariant was broken upstream, which is a library bug.
    friend Poly operator/(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
        if (a.is_zero()) return Poly();
        if (a.coeffs_.size() < b.coeffs_.size())
            throw InternalError("inexact polynomial division (degree)");
        std::vector<GaussianRational> rem = a.coeffs_;
        std::vector<GaussianRational> quot(a.coeffs_.size() - b.coeffs_.size() + 1);
        const GaussianRational& lead = b.coeffs_.back();
        for (std::size_t k = quot.size(); k-- > 0;) {
            GaussianRational q = rem[k + b.coeffs_.size() - 1] / lead;
            quot[k] = q;
            if (q.is_zero()) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                rem[k + j] -= q * b.coeffs_[j];
        }
        for (const auto& c : rem)
            if (!c.is_zero()) throw InternalError("inexact polynomial division (remainder)");
        return Poly(std::move(quot));
    }

    Poly& operator/=(const Poly& o) { return *this = *this / o; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    GaussianRational eval(const GaussianRational& x) const {
        GaussianRational acc;
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
        return acc;
    }

    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::string out;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + coeffs_[i].str() + ")";
            if (i == 1) out += "*x";
            if (i > 1) out += "*x^" + std::to_string(i);
        }
        return out.empty() ? "0" : out;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<GaussianRational> coeffs_;
};

template <>
struct ScalarTraits<Poly> {
    static constexpr bool is_exact = true;
    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(GaussianRational(1)); }
    static bool is_zero(const Poly& p) { return p.is_zero(); }
    static std::string str(const Poly& p) { return p.str(); }
};

} // namespace geninv

#endif // GENINV_POLYNOMIAL_HPP
