#ifndef GENINV_INVERSES_HPP
#define GENINV_INVERSES_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <utility>

#include "geninv/decompose.hpp"
#include "geninv/matrix.hpp"

namespace geninv {

enum class InverseKind {
    MoorePenrose,
    Group,
    Drazin,
    Core,
    DualCore,
    CoreEP,
    DualCoreEP,
};

enum class Method {
    ChainClosedForm,
    PowerFormula,
    DrazinProjector,
    LimitNumeric,
    LimitExact,
};

// Published support table. Group, core and dual core additionally require
// ind(A) <= 1 at call time; everything else is total on square inputs
// (nilpotent matrices get the zero inverse).
inline constexpr std::array<std::pair<InverseKind, Method>, 23> kSupportedMethods{{
    {InverseKind::MoorePenrose, Method::ChainClosedForm},
    {InverseKind::MoorePenrose, Method::LimitNumeric},
    {InverseKind::MoorePenrose, Method::LimitExact},
    {InverseKind::Group, Method::ChainClosedForm},
    {InverseKind::Group, Method::LimitNumeric},
    {InverseKind::Group, Method::LimitExact},
    {InverseKind::Drazin, Method::ChainClosedForm},
    {InverseKind::Core, Method::ChainClosedForm},
    {InverseKind::Core, Method::LimitNumeric},
    {InverseKind::Core, Method::LimitExact},
    {InverseKind::DualCore, Method::ChainClosedForm},
    {InverseKind::DualCore, Method::LimitNumeric},
    {InverseKind::DualCore, Method::LimitExact},
    {InverseKind::CoreEP, Method::ChainClosedForm},
    {InverseKind::CoreEP, Method::PowerFormula},
    {InverseKind::CoreEP, Method::DrazinProjector},
    {InverseKind::CoreEP, Method::LimitNumeric},
    {InverseKind::CoreEP, Method::LimitExact},
    {InverseKind::DualCoreEP, Method::ChainClosedForm},
    {InverseKind::DualCoreEP, Method::PowerFormula},
    {InverseKind::DualCoreEP, Method::DrazinProjector},
    {InverseKind::DualCoreEP, Method::LimitNumeric},
    {InverseKind::DualCoreEP, Method::LimitExact},
}};

inline constexpr bool method_supported(InverseKind kind, Method method) {
    for (const auto& [k, m] : kSupportedMethods)
        if (k == kind && m == method) return true;
    return false;
}

// Moore-Penrose inverse from the canonical full-rank pair:
// A^+ = G* (G G*)^{-1} (B* B)^{-1} B*. The pseudoinverse of a zero matrix is
// the zero matrix of transposed shape.
template <class S>
Matrix<S> moore_penrose(const Matrix<S>& a) {
    auto [b, g] = full_rank_decompose(a);
    if (b.cols() == 0) return Matrix<S>::zeros(a.cols(), a.rows());
    auto gs = conj_transpose(g);
    auto bs = conj_transpose(b);
    return gs * inverse(g * gs) * inverse(bs * b) * bs;
}

namespace detail {

template <class S>
void require_index_at_most_one(const Matrix<S>& a, const char* what) {
    if (matrix_index(a) > 1)
        throw IndexTooLarge(std::string(what) + " requires a matrix of index at most 1");
}

} // namespace detail

// Drazin inverse via the chain closed form head * (core)^{-(k+1)} * tail.
// Nilpotent input gives 0; invertible input gives the ordinary inverse.
template <class S>
Matrix<S> drazin(const Matrix<S>& a) {
    if (!a.is_square()) throw NonSquare("drazin inverse of non-square matrix");
    if (is_nilpotent(a)) return Matrix<S>::zeros(a.rows(), a.cols());
    auto chain = full_rank_chain(a);
    return chain.head * inverse(power(chain.core, chain.k + 1)) * chain.tail;
}

// Group inverse B (G B)^{-2} G; defined only for index <= 1.
template <class S>
Matrix<S> group_inverse(const Matrix<S>& a) {
    if (!a.is_square()) throw NonSquare("group inverse of non-square matrix");
    detail::require_index_at_most_one(a, "group inverse");
    auto [b, g] = full_rank_decompose(a);
    if (b.cols() == 0) return Matrix<S>::zeros(a.rows(), a.cols());
    return b * inverse(power(g * b, 2)) * g;
}

// Core inverse M (N M)^{-1} (M* M)^{-1} M* from the canonical pair (M, N).
template <class S>
Matrix<S> core(const Matrix<S>& a) {
    if (!a.is_square()) throw NonSquare("core inverse of non-square matrix");
    detail::require_index_at_most_one(a, "core inverse");
    auto [m, n] = full_rank_decompose(a);
    if (m.cols() == 0) return Matrix<S>::zeros(a.rows(), a.cols());
    auto ms = conj_transpose(m);
    return m * inverse(n * m) * inverse(ms * m) * ms;
}

// Mirror of the core formula acting through A*: N* (N N*)^{-1} (N M)^{-1} N.
template <class S>
Matrix<S> dual_core(const Matrix<S>& a) {
    if (!a.is_square()) throw NonSquare("dual core inverse of non-square matrix");
    detail::require_index_at_most_one(a, "dual core inverse");
    auto [m, n] = full_rank_decompose(a);
    if (m.cols() == 0) return Matrix<S>::zeros(a.rows(), a.cols());
    auto ns = conj_transpose(n);
    return ns * inverse(n * ns) * inverse(n * m) * n;
}

// Core-EP inverse through one of three closed forms that agree exactly:
//   ChainClosedForm   head * (head * core)^+
//   PowerFormula      A^k (A^{k+1})^+
//   DrazinProjector   A^D A^m (A^m)^+   for any m >= k (default m = k)
// with k = max(ind(A), 1). projector_power sets m for the last form.
template <class S>
Matrix<S> core_ep(const Matrix<S>& a, Method method = Method::ChainClosedForm,
                  std::optional<std::size_t> projector_power = {}) {
    if (!a.is_square()) throw NonSquare("core-EP inverse of non-square matrix");
    if (is_nilpotent(a)) return Matrix<S>::zeros(a.rows(), a.cols());
    const std::size_t k = std::max<std::size_t>(matrix_index(a), 1);
    switch (method) {
        case Method::ChainClosedForm: {
            auto chain = full_rank_chain(a);
            return chain.head * moore_penrose(chain.head * chain.core);
        }
        case Method::PowerFormula:
            return power(a, k) * moore_penrose(power(a, k + 1));
        case Method::DrazinProjector: {
            const std::size_t m = projector_power.value_or(k);
            if (m < k)
                throw UnsupportedCombination("projector power must be at least the matrix index");
            auto am = power(a, m);
            return drazin(a) * am * moore_penrose(am);
        }
        default:
            throw UnsupportedCombination("core_ep expects a closed-form method");
    }
}

// Dual core-EP inverse; mirrors of the three core-EP forms.
template <class S>
Matrix<S> dual_core_ep(const Matrix<S>& a, Method method = Method::ChainClosedForm,
                       std::optional<std::size_t> projector_power = {}) {
    if (!a.is_square()) throw NonSquare("dual core-EP inverse of non-square matrix");
    if (is_nilpotent(a)) return Matrix<S>::zeros(a.rows(), a.cols());
    const std::size_t k = std::max<std::size_t>(matrix_index(a), 1);
    switch (method) {
        case Method::ChainClosedForm: {
            auto chain = full_rank_chain(a);
            return moore_penrose(chain.core * chain.tail) * chain.tail;
        }
        case Method::PowerFormula:
            return moore_penrose(power(a, k + 1)) * power(a, k);
        case Method::DrazinProjector: {
            const std::size_t m = projector_power.value_or(k);
            if (m < k)
                throw UnsupportedCombination("projector power must be at least the matrix index");
            auto am = power(a, m);
            return moore_penrose(am) * am * drazin(a);
        }
        default:
            throw UnsupportedCombination("dual_core_ep expects a closed-form method");
    }
}

// Checks the index-1 pseudoinverse identity (A^2 A^+)^+ = A (A^2)^+,
// exactly in exact mode and within tol in float mode.
template <class S>
bool squared_pinv_identity_holds(const Matrix<S>& a, double tol = 0.0) {
    if (!a.is_square()) throw NonSquare("identity check needs a square matrix");
    detail::require_index_at_most_one(a, "squared-pseudoinverse identity");
    auto lhs = moore_penrose(power(a, 2) * moore_penrose(a));
    auto rhs = a * moore_penrose(power(a, 2));
    if constexpr (ScalarTraits<S>::is_exact) {
        return lhs == rhs;
    } else {
        return max_abs_diff(lhs, rhs) <= tol;
    }
}

// Splits A into A1 + A2 with rank(A1^2) = rank(A1), A2^k = 0 and
// A1* A2 = A2 A1 = 0, via the orthogonal projector A^k (A^k)^+ onto the
// range of A^k (k = max(ind(A), 1)).
template <class S>
struct CoreEPDecomposition {
    Matrix<S> range_part;     // A1
    Matrix<S> nilpotent_part; // A2
    std::size_t k = 0;
};

template <class S>
CoreEPDecomposition<S> core_ep_decompose(const Matrix<S>& a) {
    if (!a.is_square()) throw NonSquare("core-EP decomposition of non-square matrix");
    const std::size_t k = std::max<std::size_t>(matrix_index(a), 1);
    auto ak = power(a, k);
    auto a1 = ak * moore_penrose(ak) * a;
    auto a2 = a - a1;
    return {std::move(a1), std::move(a2), k};
}

} // namespace geninv

#endif // GENINV_INVERSES_HPP
