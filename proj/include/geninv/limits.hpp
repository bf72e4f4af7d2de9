#ifndef GENINV_LIMITS_HPP
#define GENINV_LIMITS_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geninv/decompose.hpp"
#include "geninv/matrix.hpp"
#include "geninv/polynomial.hpp"

namespace geninv {

// Families of shifted-resolvent limit formulas. Every formula evaluates
// C (Z + lambda I)^{-1} D as lambda -> 0+; the family decides how C, Z, D are
// built from the input, the side decides which of the two displayed
// orderings is used (resolvent applied to the left or right factor).
//
// CLI spellings: Chain = "t31", CrossPower = "t41", GramPower = "t43",
// MoorePenrose = "mp". PairProduct is the two-matrix identity family used by
// general_limit_identity and the group-inverse limit route.
enum class LimitFamily {
    Chain,        // built from the full-rank chain: head and core factors
    CrossPower,   // A^k (A^k)* against A^{k+1} (A^k)*
    GramPower,    // A^k (A^{k+1})* against the Gram matrix of A^{k+1}
    MoorePenrose, // A* against A A*
    PairProduct,  // (M* N + lambda I)^{-1} M*  vs  M* (N M* + lambda I)^{-1}
};

enum class ShiftSide { Left, Right };

enum class LimitTarget {
    CoreEP,
    DualCoreEP,
    Core,
    DualCore,
    MoorePenrose,
    GeneralIdentity,
};

struct LimitFormula {
    LimitFamily family;
    ShiftSide side;
    LimitTarget target;
};

// Only combinations with a displayed ordering exist; in particular the
// cross-power family has exactly one ordering per target and its mirrors are
// intentionally absent.
inline bool formula_supported(const LimitFormula& f) {
    const bool primal = f.target == LimitTarget::CoreEP || f.target == LimitTarget::Core;
    const bool dual = f.target == LimitTarget::DualCoreEP || f.target == LimitTarget::DualCore;
    switch (f.family) {
        case LimitFamily::Chain:
        case LimitFamily::GramPower:
            return primal || dual;
        case LimitFamily::CrossPower:
            return (primal && f.side == ShiftSide::Right) || (dual && f.side == ShiftSide::Left);
        case LimitFamily::MoorePenrose:
            return f.target == LimitTarget::MoorePenrose;
        case LimitFamily::PairProduct:
            return f.target == LimitTarget::GeneralIdentity;
    }
    return false;
}

// First-displayed ordering of each supported family/target pair.
inline ShiftSide default_side(LimitFamily family, LimitTarget target) {
    const bool dual = target == LimitTarget::DualCoreEP || target == LimitTarget::DualCore;
    if (family == LimitFamily::PairProduct) return ShiftSide::Left;
    return dual ? ShiftSide::Left : ShiftSide::Right;
}

// Constant factors around the shifted inverse: the formula's value at a
// given lambda is left * (shifted + lambda I)^{-1} * right.
template <class S>
struct Assembly {
    Matrix<S> left;
    Matrix<S> shifted;
    Matrix<S> right;
};

// General two-matrix identity family, with M and N supplied directly.
template <class S>
Assembly<S> assemble_pair(ShiftSide side, const Matrix<S>& m, const Matrix<S>& n) {
    if (m.rows() != n.rows() || m.cols() != n.cols())
        throw DimensionMismatch("pair formula needs two matrices of one shape");
    auto ms = conj_transpose(m);
    if (side == ShiftSide::Left) {
        // (M* N + lambda I)^{-1} M*
        return {Matrix<S>::identity(m.cols()), ms * n, ms};
    }
    // M* (N M* + lambda I)^{-1}
    return {ms, n * ms, Matrix<S>::identity(m.rows())};
}

template <class S>
Assembly<S> assemble(const LimitFormula& f, const Matrix<S>& a,
                     const FullRankChain<S>* chain = nullptr) {
    if (!formula_supported(f))
        throw UnsupportedCombination("limit formula combination is not defined");
    if (f.family == LimitFamily::PairProduct)
        throw UnsupportedCombination("pair formulas take two matrices; use assemble_pair");

    if (f.family == LimitFamily::MoorePenrose) {
        auto as = conj_transpose(a);
        if (f.side == ShiftSide::Right) return {as, a * as, Matrix<S>::identity(a.rows())};
        return {Matrix<S>::identity(a.cols()), as * a, as};
    }

    if (!a.is_square()) throw NonSquare("limit formula needs a square matrix");
    const std::size_t ind = matrix_index(a);
    if ((f.target == LimitTarget::Core || f.target == LimitTarget::DualCore) && ind > 1)
        throw IndexTooLarge("core-type limit formulas require index at most 1");
    const std::size_t k = std::max<std::size_t>(ind, 1);
    const bool dual = f.target == LimitTarget::DualCoreEP || f.target == LimitTarget::DualCore;
    const auto eye = Matrix<S>::identity(a.rows());

    if (f.family == LimitFamily::CrossPower) {
        auto ak = power(a, k);
        auto aks = conj_transpose(ak);
        if (!dual) return {ak * aks, a * ak * aks, eye};
        return {eye, aks * power(a, k + 1), aks * ak};
    }

    if (f.family == LimitFamily::GramPower) {
        auto ak = power(a, k);
        auto ak1 = power(a, k + 1);
        auto ak1s = conj_transpose(ak1);
        if (!dual) {
            if (f.side == ShiftSide::Right) return {ak * ak1s, ak1 * ak1s, eye};
            return {ak, ak1s * ak1, ak1s};
        }
        if (f.side == ShiftSide::Left) return {eye, ak1s * ak1, ak1s * ak};
        return {ak1s, ak1 * ak1s, ak};
    }

    // Chain family. The chain is computed canonically when not supplied;
    // alternative valid chains give the same limit.
    FullRankChain<S> local;
    const FullRankChain<S>* ch = chain;
    if (ch == nullptr) {
        local = full_rank_chain(a);
        ch = &local;
    }
    if (!dual) {
        auto be = ch->head * ch->core;
        auto bes = conj_transpose(be);
        if (f.side == ShiftSide::Right) return {ch->head * bes, be * bes, eye};
        return {ch->head, bes * be, bes};
    }
    auto fmat = ch->core * ch->tail;
    auto fs = conj_transpose(fmat);
    if (f.side == ShiftSide::Left) return {eye, fs * fmat, fs * ch->tail};
    return {fs, fmat * fs, ch->tail};
}

// ---------------------------------------------------------------------------
// Exact evaluation over polynomials in the shift parameter.

namespace detail {

inline Matrix<Poly> lift_to_poly(const ExactMatrix& m) {
    Matrix<Poly> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Poly(m(i, j));
    return out;
}

} // namespace detail

// Evaluates lim_{lambda->0} C (Z + lambda I)^{-1} D exactly. The shifted
// matrix becomes a polynomial matrix P(lambda) = Z + lambda I whose
// determinant and adjugate are computed fraction-free; every entry of
// C adj(P) D over det(P) then has its common lambda power cancelled before
// evaluation at 0. An entry whose denominator still vanishes at 0 means the
// limit does not exist for this input (LimitUndefined).
inline ExactMatrix evaluate_exact_limit(const Assembly<GaussianRational>& assembly) {
    const std::size_t n = assembly.shifted.rows();
    if (!assembly.shifted.is_square()) throw NonSquare("shifted block must be square");

    Matrix<Poly> p = detail::lift_to_poly(assembly.shifted);
    const Poly lambda = Poly::variable();
    for (std::size_t i = 0; i < n; ++i) p(i, i) += lambda;

    const Poly det = determinant_bareiss(p);
    if (det.is_zero()) throw InternalError("shifted determinant vanished identically");
    const std::size_t s = det.valuation();
    const GaussianRational q = det.coeff(s);

    Matrix<Poly> numer =
        detail::lift_to_poly(assembly.left) * adjugate(p) * detail::lift_to_poly(assembly.right);

    ExactMatrix out(numer.rows(), numer.cols());
    for (std::size_t i = 0; i < numer.rows(); ++i) {
        for (std::size_t j = 0; j < numer.cols(); ++j) {
            const std::size_t v = numer(i, j).valuation();
            if (v < s) throw LimitUndefined("limit diverges in entry (" + std::to_string(i) +
                                            "," + std::to_string(j) + ")");
            if (v == s) out(i, j) = numer(i, j).coeff(s) / q;
        }
    }
    return out;
}

inline ExactMatrix limit_exact(const LimitFormula& f, const ExactMatrix& a,
                               const FullRankChain<GaussianRational>* chain = nullptr) {
    return evaluate_exact_limit(assemble(f, a, chain));
}

// Both orderings of the two-matrix limit identity, compared bit-exactly.
// Presumes both limits exist; LimitUndefined propagates otherwise.
inline bool general_limit_identity(const ExactMatrix& m, const ExactMatrix& n) {
    auto left = evaluate_exact_limit(assemble_pair(ShiftSide::Left, m, n));
    auto right = evaluate_exact_limit(assemble_pair(ShiftSide::Right, m, n));
    return left == right;
}

// ---------------------------------------------------------------------------
// Numeric evaluation along a geometric shift schedule.

// lambda_j = lambda0 * ratio^j for j = 0 .. max_steps-1, stopping once
// consecutive iterates differ by at most tol * (1 + |X_j|). The shifts are
// applied relative to the magnitude of the shifted block so the schedule
// keeps its truncation/round-off balance regardless of the data's scale.
struct LambdaSchedule {
    double lambda0 = 1e-2;
    double ratio = 1e-1;
    int max_steps = 8;
    double tol = 1e-10;
};

struct TraceRow {
    double lambda = 0.0;   // absolute shift used for this step
    double delta = std::numeric_limits<double>::quiet_NaN();    // |X_j - X_{j-1}|
    double residual = std::numeric_limits<double>::quiet_NaN(); // |X_j - reference|
};

struct NumericLimitRun {
    FloatMatrix extrapolated; // one-step Richardson extrapolation of the tail
    FloatMatrix last_iterate;
    std::vector<TraceRow> trace;
    bool converged = false;
};

namespace detail {

inline FloatMatrix shift_diagonal(const FloatMatrix& z, double lambda) {
    FloatMatrix out = z;
    for (std::size_t i = 0; i < out.rows(); ++i) out(i, i) += lambda;
    return out;
}

} // namespace detail

// Runs the schedule and reports the full convergence history without
// throwing on a non-converged tail; callers that require convergence use
// limit_numeric below. `reference` fills the residual trace column.
inline NumericLimitRun limit_numeric_run(const Assembly<FloatScalar>& assembly,
                                         const LambdaSchedule& schedule,
                                         const FloatMatrix* reference = nullptr) {
    if (!(schedule.lambda0 > 0.0) || !(schedule.ratio > 0.0) || !(schedule.ratio < 1.0) ||
        schedule.max_steps < 1)
        throw UnsupportedCombination("schedule needs lambda0 > 0, 0 < ratio < 1, max_steps >= 1");

    const double scale = norm_max(assembly.shifted) > 0.0 ? norm_max(assembly.shifted) : 1.0;

    NumericLimitRun run;
    FloatMatrix prev;
    double prev_lambda = 0.0;
    bool have_prev = false;

    for (int j = 0; j < schedule.max_steps; ++j) {
        double lambda = schedule.lambda0 * std::pow(schedule.ratio, j) * scale;
        FloatMatrix w;
        bool solved = false;
        for (int attempt = 0; attempt < 2 && !solved; ++attempt) {
            try {
                w = inverse(detail::shift_diagonal(assembly.shifted, lambda));
                solved = true;
            } catch (const SingularMatrix&) {
                // perturb once, then give the step up
                lambda *= 1.0 + std::ldexp(1.0, -20);
            }
        }
        if (!solved) {
            run.trace.push_back({lambda, std::numeric_limits<double>::quiet_NaN(),
                                 std::numeric_limits<double>::quiet_NaN()});
            continue;
        }
        FloatMatrix x = assembly.left * w * assembly.right;

        TraceRow row;
        row.lambda = lambda;
        if (reference != nullptr) row.residual = max_abs_diff(x, *reference);
        if (have_prev) row.delta = max_abs_diff(x, prev);
        run.trace.push_back(row);

        if (have_prev) {
            const double r = lambda / prev_lambda;
            run.extrapolated = x + (r / (1.0 - r)) * (x - prev);
            run.last_iterate = x;
            if (row.delta <= schedule.tol * (1.0 + norm_max(prev))) {
                run.converged = true;
                return run;
            }
        } else {
            run.extrapolated = x;
            run.last_iterate = x;
        }
        prev = std::move(x);
        prev_lambda = lambda;
        have_prev = true;
    }
    if (!have_prev) throw NoConvergence("every schedule step was singular");
    return run;
}

inline NumericLimitRun limit_numeric_run(const LimitFormula& f, const FloatMatrix& a,
                                         const LambdaSchedule& schedule,
                                         const FloatMatrix* reference = nullptr,
                                         const FullRankChain<FloatScalar>* chain = nullptr) {
    return limit_numeric_run(assemble(f, a, chain), schedule, reference);
}

inline FloatMatrix limit_numeric(const LimitFormula& f, const FloatMatrix& a,
                                 const LambdaSchedule& schedule = {},
                                 const FullRankChain<FloatScalar>* chain = nullptr) {
    auto run = limit_numeric_run(f, a, schedule, nullptr, chain);
    if (!run.converged)
        throw NoConvergence("schedule exhausted after " + std::to_string(schedule.max_steps) +
                            " steps without meeting tol");
    return run.extrapolated;
}

// Least-squares slope of log(y) against log(x) over the trailing `points`
// samples with positive y; NaN when fewer than two usable samples exist.
inline double fit_loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys,
                               std::size_t points = 4) {
    std::vector<std::pair<double, double>> logs;
    for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i)
        if (xs[i] > 0.0 && ys[i] > 0.0) logs.emplace_back(std::log(xs[i]), std::log(ys[i]));
    if (logs.size() > points) logs.erase(logs.begin(), logs.end() - static_cast<std::ptrdiff_t>(points));
    if (logs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : logs) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(logs.size());
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

} // namespace geninv

#endif // GENINV_LIMITS_HPP
