#ifndef GENINV_DECOMPOSE_HPP
#define GENINV_DECOMPOSE_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "geninv/matrix.hpp"

namespace geninv {

// Smallest k >= 0 with rank(A^k) = rank(A^{k+1}); at most n.
template <class S>
std::size_t matrix_index(const Matrix<S>& a) {
    if (!a.is_square()) throw NonSquare("index of non-square matrix");
    const std::size_t n = a.rows();
    std::size_t prev_rank = n; // rank(A^0)
    Matrix<S> p = a;
    for (std::size_t k = 0; k <= n; ++k) {
        const std::size_t r = rank(p);
        if (r == prev_rank) return k;
        prev_rank = r;
        p = p * a;
    }
    throw InternalError("matrix index exceeded dimension");
}

// True when rank(A^k) = 0 for k = ind(A), i.e. some power of A vanishes.
template <class S>
bool is_nilpotent(const Matrix<S>& a) {
    if (!a.is_square()) throw NonSquare("nilpotency of non-square matrix");
    return rank(power(a, matrix_index(a))) == 0;
}

// A = B * G with B of full column rank and G of full row rank. A rank-0
// input yields the empty pair (m x 0, 0 x n).
template <class S>
struct FullRankPair {
    Matrix<S> B;
    Matrix<S> G;
};

// Canonical choice: B = pivot columns of A in pivot order, G = nonzero rows
// of rref(A). Deterministic, exact in exact mode, and total (rank 0 gives
// empty factors rather than an error).
template <class S>
FullRankPair<S> full_rank_decompose(const Matrix<S>& a) {
    auto red = rref(a);
    return {select_columns(a, red.pivot_cols), top_rows(red.R, red.pivot_cols.size())};
}

// Chained full-rank decomposition: A = B_1 G_1, then G_i B_i = B_{i+1} G_{i+1}
// down to an invertible core block G_k B_k. head = B_1 ... B_k and
// tail = G_k ... G_1 multiply back to A^k.
template <class S>
struct FullRankChain {
    std::vector<FullRankPair<S>> pairs;
    std::size_t k = 0;       // chain length; max(ind(A), 1)
    Matrix<S> head;          // B_1 B_2 ... B_k
    Matrix<S> tail;          // G_k ... G_2 G_1
    Matrix<S> core;          // G_k B_k, invertible
};

namespace detail {

template <class S>
FullRankChain<S> finish_chain(std::vector<FullRankPair<S>> pairs, Matrix<S> core) {
    FullRankChain<S> chain;
    chain.pairs = std::move(pairs);
    chain.k = chain.pairs.size();
    chain.head = chain.pairs.front().B;
    chain.tail = chain.pairs.front().G;
    for (std::size_t i = 1; i < chain.pairs.size(); ++i) {
        chain.head = chain.head * chain.pairs[i].B;
        chain.tail = chain.pairs[i].G * chain.tail;
    }
    chain.core = std::move(core);
    if (rank(chain.core) != chain.core.rows())
        throw InternalError("chain core block is singular");
    return chain;
}

} // namespace detail

// Builds the canonical chain of length max(ind(A), 1). Nilpotent inputs have
// no invertible core block and are reported as NilpotentInput; inverse
// computations catch that case earlier and return the zero inverse instead.
template <class S>
FullRankChain<S> full_rank_chain(const Matrix<S>& a) {
    if (!a.is_square()) throw NonSquare("full-rank chain of non-square matrix");
    const std::size_t ind = matrix_index(a);
    const std::size_t steps = std::max<std::size_t>(ind, 1);
    if (rank(power(a, ind)) == 0)
        throw NilpotentInput("nilpotent matrix has no full-rank chain");
    std::vector<FullRankPair<S>> pairs;
    Matrix<S> m = a;
    for (std::size_t i = 0; i < steps; ++i) {
        pairs.push_back(full_rank_decompose(m));
        m = pairs.back().G * pairs.back().B;
    }
    return detail::finish_chain(std::move(pairs), std::move(m));
}

// Assembles a chain from externally supplied factors, validating every
// defining property. Different valid factorizations of the same matrix give
// different chains but identical downstream inverses.
template <class S>
FullRankChain<S> chain_from_pairs(std::vector<FullRankPair<S>> pairs, const Matrix<S>& a) {
    if (pairs.empty()) throw Error("invalid_chain", "chain needs at least one pair");
    auto check_pair = [](const FullRankPair<S>& p, const Matrix<S>& target, std::size_t step) {
        const std::size_t r = p.B.cols();
        if (p.G.rows() != r)
            throw Error("invalid_chain", "factor shapes disagree at step " + std::to_string(step));
        if (!(p.B * p.G == target)) {
            if constexpr (ScalarTraits<S>::is_exact) {
                throw Error("invalid_chain", "product B*G mismatch at step " + std::to_string(step));
            } else if (max_abs_diff(p.B * p.G, target) > rank_threshold(target) * 16) {
                throw Error("invalid_chain", "product B*G mismatch at step " + std::to_string(step));
            }
        }
        if (rank(p.B) != r || rank(p.G) != r)
            throw Error("invalid_chain", "factor ranks deficient at step " + std::to_string(step));
    };
    Matrix<S> target = a;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        check_pair(pairs[i], target, i + 1);
        target = pairs[i].G * pairs[i].B;
    }
    if (rank(target) != target.rows())
        throw Error("invalid_chain", "final core block is singular");
    return detail::finish_chain(std::move(pairs), std::move(target));
}

} // namespace geninv

#endif // GENINV_DECOMPOSE_HPP
