#ifndef GENINV_SCALAR_HPP
#define GENINV_SCALAR_HPP

#include <cmath>
#include <complex>
#include <string>

#include "geninv/rational.hpp"

namespace geninv {

// The two arithmetic modes are two distinct scalar types; an exact matrix and
// a float matrix can never meet inside one expression because no operator
// accepts the mixed pair. The runtime boundary (matrix files, CLI) rejects
// mixed modes explicitly instead of coercing.
using FloatScalar = std::complex<double>;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussianRational> {
    static constexpr bool is_exact = true;
    static GaussianRational zero() { return GaussianRational(); }
    static GaussianRational one() { return GaussianRational(1); }
    static GaussianRational conjugate(const GaussianRational& s) { return s.conj(); }
    static bool is_zero(const GaussianRational& s) { return s.is_zero(); }
    static double magnitude(const GaussianRational& s) { return std::abs(s.to_complex()); }
    static std::complex<double> to_complex(const GaussianRational& s) { return s.to_complex(); }
    static std::string str(const GaussianRational& s) { return s.str(); }
    static const char* mode_name() { return "exact"; }
};

template <>
struct ScalarTraits<FloatScalar> {
    static constexpr bool is_exact = false;
    static FloatScalar zero() { return {0.0, 0.0}; }
    static FloatScalar one() { return {1.0, 0.0}; }
    static FloatScalar conjugate(const FloatScalar& s) { return std::conj(s); }
    static bool is_zero(const FloatScalar& s) { return s.real() == 0.0 && s.imag() == 0.0; }
    static double magnitude(const FloatScalar& s) { return std::abs(s); }
    static std::complex<double> to_complex(const FloatScalar& s) { return s; }
    static std::string str(const FloatScalar& s) {
        std::string out = std::to_string(s.real());
        if (s.imag() != 0.0) out += (s.imag() > 0 ? "+" : "") + std::to_string(s.imag()) + "i";
        return out;
    }
    static const char* mode_name() { return "float"; }
};

template <class S>
inline constexpr bool is_exact_scalar_v = ScalarTraits<S>::is_exact;

} // namespace geninv

#endif // GENINV_SCALAR_HPP
