#ifndef GENINV_VERIFY_HPP
#define GENINV_VERIFY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geninv/inverses.hpp"
#include "geninv/matrix.hpp"

namespace geninv {

enum class ArithmeticMode { Exact, Float };

struct EquationResidual {
    std::string id;
    double residual = 0.0;  // max-entry magnitude of the residual matrix
    bool exact_zero = false; // meaningful in exact mode only
};

struct RangeCheck {
    std::string id;
    bool ok = false;
};

// Outcome of checking a candidate inverse against its defining equations.
// In exact mode `passed` is arithmetic truth: any nonzero residual fails.
// In float mode residuals are compared against `tolerance`.
struct VerificationReport {
    InverseKind kind = InverseKind::MoorePenrose;
    ArithmeticMode mode = ArithmeticMode::Exact;
    std::vector<EquationResidual> equations;
    std::vector<RangeCheck> range_checks;
    std::optional<double> tolerance; // float mode only
    bool passed = false;
};

template <class S>
double default_tolerance(const Matrix<S>& a) {
    return 1e-8 * (1.0 + norm_max(a));
}

// range_subset(X, Y): columns of X lie in the column space of Y, decided by
// rank([Y | X]) = rank(Y). Float mode inherits the rank threshold of the
// stacked matrix.
template <class S>
bool range_subset(const Matrix<S>& x, const Matrix<S>& y) {
    if (x.rows() != y.rows()) throw DimensionMismatch("range comparison row counts differ");
    return rank(hstack(y, x)) == rank(y);
}

template <class S>
bool range_equal(const Matrix<S>& x, const Matrix<S>& y) {
    return range_subset(x, y) && range_subset(y, x);
}

namespace detail {

template <class S>
void add_residual(VerificationReport& report, std::string id, const Matrix<S>& residual) {
    EquationResidual e;
    e.id = std::move(id);
    e.residual = norm_max(residual);
    e.exact_zero = is_zero_matrix(residual);
    report.equations.push_back(std::move(e));
}

template <class S>
VerificationReport make_report(InverseKind kind, const Matrix<S>& a, std::optional<double> tol) {
    VerificationReport report;
    report.kind = kind;
    if constexpr (ScalarTraits<S>::is_exact) {
        report.mode = ArithmeticMode::Exact;
    } else {
        report.mode = ArithmeticMode::Float;
        report.tolerance = tol.value_or(default_tolerance(a));
    }
    return report;
}

inline void finish_report(VerificationReport& report) {
    bool ok = true;
    for (const auto& e : report.equations) {
        if (report.mode == ArithmeticMode::Exact)
            ok = ok && e.exact_zero;
        else
            ok = ok && e.residual <= *report.tolerance;
    }
    for (const auto& c : report.range_checks) ok = ok && c.ok;
    report.passed = ok;
}

} // namespace detail

// The four defining equations of the Moore-Penrose inverse:
// AXA = A, XAX = X, (AX)* = AX, (XA)* = XA.
template <class S>
VerificationReport check_moore_penrose(const Matrix<S>& a, const Matrix<S>& x,
                                       std::optional<double> tol = {}) {
    if (x.rows() != a.cols() || x.cols() != a.rows())
        throw DimensionMismatch("candidate pseudoinverse has wrong shape");
    auto report = detail::make_report(InverseKind::MoorePenrose, a, tol);
    auto ax = a * x;
    auto xa = x * a;
    detail::add_residual(report, "AXA=A", ax * a - a);
    detail::add_residual(report, "XAX=X", xa * x - x);
    detail::add_residual(report, "(AX)*=AX", conj_transpose(ax) - ax);
    detail::add_residual(report, "(XA)*=XA", conj_transpose(xa) - xa);
    detail::finish_report(report);
    return report;
}

// Drazin equations at index k: A^{k+1} X = A^k, XAX = X, AX = XA.
template <class S>
VerificationReport check_drazin(const Matrix<S>& a, const Matrix<S>& x, std::size_t k,
                                std::optional<double> tol = {}) {
    if (!a.is_square() || a.rows() != x.rows() || a.cols() != x.cols())
        throw DimensionMismatch("drazin check needs square matrices of equal size");
    auto report = detail::make_report(InverseKind::Drazin, a, tol);
    detail::add_residual(report, "A^{k+1}X=A^k", power(a, k + 1) * x - power(a, k));
    detail::add_residual(report, "XAX=X", x * a * x - x);
    detail::add_residual(report, "AX=XA", a * x - x * a);
    detail::finish_report(report);
    return report;
}

// Group inverse = Drazin inverse with k = 1; only defined for ind(A) <= 1.
template <class S>
VerificationReport check_group(const Matrix<S>& a, const Matrix<S>& x,
                               std::optional<double> tol = {}) {
    if (!a.is_square() || a.rows() != x.rows() || a.cols() != x.cols())
        throw DimensionMismatch("group check needs square matrices of equal size");
    if (matrix_index(a) > 1) throw IndexTooLarge("group inverse requires index at most 1");
    auto report = check_drazin(a, x, 1, tol);
    report.kind = InverseKind::Group;
    return report;
}

// Core inverse: AX must be the orthogonal projector onto the range of A
// (Hermitian + idempotent + same range), and the range of X must lie in the
// range of A.
template <class S>
VerificationReport check_core(const Matrix<S>& a, const Matrix<S>& x,
                              std::optional<double> tol = {}) {
    if (!a.is_square() || a.rows() != x.rows() || a.cols() != x.cols())
        throw DimensionMismatch("core check needs square matrices of equal size");
    if (matrix_index(a) > 1) throw IndexTooLarge("core inverse requires index at most 1");
    auto report = detail::make_report(InverseKind::Core, a, tol);
    auto ax = a * x;
    detail::add_residual(report, "(AX)*=AX", conj_transpose(ax) - ax);
    detail::add_residual(report, "(AX)^2=AX", ax * ax - ax);
    report.range_checks.push_back({"R(AX)=R(A)", range_equal(ax, a)});
    report.range_checks.push_back({"R(X) in R(A)", range_subset(x, a)});
    detail::finish_report(report);
    return report;
}

template <class S>
VerificationReport check_dual_core(const Matrix<S>& a, const Matrix<S>& x,
                                   std::optional<double> tol = {}) {
    if (!a.is_square() || a.rows() != x.rows() || a.cols() != x.cols())
        throw DimensionMismatch("dual core check needs square matrices of equal size");
    if (matrix_index(a) > 1) throw IndexTooLarge("dual core inverse requires index at most 1");
    auto report = detail::make_report(InverseKind::DualCore, a, tol);
    auto xa = x * a;
    auto as = conj_transpose(a);
    detail::add_residual(report, "(XA)*=XA", conj_transpose(xa) - xa);
    detail::add_residual(report, "(XA)^2=XA", xa * xa - xa);
    report.range_checks.push_back({"R(XA)=R(A*)", range_equal(xa, as)});
    report.range_checks.push_back({"R(X) in R(A*)", range_subset(x, as)});
    detail::finish_report(report);
    return report;
}

// Core-EP inverse: XAX = X with R(X) = R(X*) = R(A^D), plus the derived
// identity X A^{k+1} = A^k as an extra residual.
template <class S>
VerificationReport check_core_ep(const Matrix<S>& a, const Matrix<S>& x,
                                 std::optional<double> tol = {}) {
    if (!a.is_square() || a.rows() != x.rows() || a.cols() != x.cols())
        throw DimensionMismatch("core-EP check needs square matrices of equal size");
    auto report = detail::make_report(InverseKind::CoreEP, a, tol);
    const std::size_t k = matrix_index(a);
    detail::add_residual(report, "XAX=X", x * a * x - x);
    detail::add_residual(report, "XA^{k+1}=A^k", x * power(a, k + 1) - power(a, k));
    auto d = drazin(a);
    report.range_checks.push_back({"R(X)=R(X*)", range_equal(x, conj_transpose(x))});
    report.range_checks.push_back({"R(X)=R(A^D)", range_equal(x, d)});
    detail::finish_report(report);
    return report;
}

template <class S>
VerificationReport check_dual_core_ep(const Matrix<S>& a, const Matrix<S>& x,
                                      std::optional<double> tol = {}) {
    if (!a.is_square() || a.rows() != x.rows() || a.cols() != x.cols())
        throw DimensionMismatch("dual core-EP check needs square matrices of equal size");
    auto report = detail::make_report(InverseKind::DualCoreEP, a, tol);
    const std::size_t k = matrix_index(a);
    detail::add_residual(report, "XAX=X", x * a * x - x);
    detail::add_residual(report, "A^{k+1}X=A^k", power(a, k + 1) * x - power(a, k));
    auto d = drazin(conj_transpose(a));
    report.range_checks.push_back({"R(X)=R(X*)", range_equal(x, conj_transpose(x))});
    report.range_checks.push_back({"R(X)=R((A*)^D)", range_equal(x, d)});
    detail::finish_report(report);
    return report;
}

} // namespace geninv

#endif // GENINV_VERIFY_HPP
