#ifndef GENINV_TESTS_SUPPORT_HPP
#define GENINV_TESTS_SUPPORT_HPP

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "geninv/geninv.hpp"

namespace testsupport {

using geninv::ExactMatrix;
using geninv::FloatMatrix;
using geninv::GaussianRational;

inline GaussianRational q(long num, long den = 1) { return GaussianRational::ratio(num, den); }

inline ExactMatrix em(std::initializer_list<std::initializer_list<long>> rows) {
    ExactMatrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (long v : row) m(i, j++) = GaussianRational(v);
        ++i;
    }
    return m;
}

inline std::string fixture_path(const std::string& name) {
    return std::string(GENINV_FIXTURE_DIR) + "/" + name;
}

inline nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing fixture " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

inline ExactMatrix load_exact_fixture(const std::string& name) {
    auto any = geninv::parse_matrix_json(load_json(fixture_path(name)));
    return std::get<ExactMatrix>(any);
}

inline std::vector<geninv::FullRankPair<GaussianRational>> load_chain_fixture(const std::string& name) {
    auto doc = load_json(fixture_path(name));
    std::vector<geninv::FullRankPair<GaussianRational>> pairs;
    for (const auto& p : doc.at("pairs")) {
        pairs.push_back({std::get<ExactMatrix>(geninv::parse_matrix_json(p.at("B"))),
                         std::get<ExactMatrix>(geninv::parse_matrix_json(p.at("G")))});
    }
    return pairs;
}

// The two bundled demo matrices.
inline ExactMatrix fixture_ind2() { return load_exact_fixture("ind2_4x4.json"); }
inline ExactMatrix fixture_ind2_core_ep() { return load_exact_fixture("ind2_4x4_core_ep.json"); }
inline ExactMatrix fixture_ind1() { return load_exact_fixture("ind1_3x3.json"); }
inline ExactMatrix fixture_ind1_core() { return load_exact_fixture("ind1_3x3_core.json"); }

using Rng = std::mt19937_64;

inline long rand_int(Rng& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline ExactMatrix random_int_matrix(Rng& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
    ExactMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = GaussianRational(rand_int(rng, lo, hi));
    return m;
}

// Product of random integer elementary row operations: unimodular, so the
// inverse is an exact integer matrix as well.
inline ExactMatrix random_unimodular(Rng& rng, std::size_t n) {
    ExactMatrix s = ExactMatrix::identity(n);
    for (std::size_t t = 0; t < 2 * n + 2; ++t) {
        std::size_t i = static_cast<std::size_t>(rand_int(rng, 0, static_cast<long>(n) - 1));
        std::size_t j = static_cast<std::size_t>(rand_int(rng, 0, static_cast<long>(n) - 1));
        if (i == j) {
            s.swap_rows(i, (i + 1) % n);
            continue;
        }
        long c = rand_int(rng, 1, 2) * (rand_int(rng, 0, 1) ? 1 : -1);
        for (std::size_t col = 0; col < n; ++col)
            s(i, col) += GaussianRational(c) * s(j, col);
    }
    return s;
}

inline ExactMatrix random_invertible(Rng& rng, std::size_t n, long lo = -3, long hi = 3) {
    for (;;) {
        ExactMatrix c = random_int_matrix(rng, n, n, lo, hi);
        if (!geninv::determinant_bareiss(c).is_zero()) return c;
    }
}

// Block-diagonal invertible (+) nilpotent, conjugated by a random unimodular
// integer matrix. The nilpotent block holds one shift chain of length
// exactly `index`, so ind(result) = index.
inline ExactMatrix random_with_index(Rng& rng, std::size_t n, std::size_t index) {
    if (index == 0) return random_invertible(rng, n);
    if (n < index + 1) throw std::invalid_argument("need n >= index + 1");
    const std::size_t nil =
        index + static_cast<std::size_t>(rand_int(rng, 0, static_cast<long>(n - index - 1)));
    const std::size_t r = n - nil; // >= 1
    ExactMatrix d(n, n);
    ExactMatrix c = random_invertible(rng, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) d(i, j) = c(i, j);
    for (std::size_t i = 0; i + 1 < index; ++i) d(r + i, r + i + 1) = GaussianRational(1);
    ExactMatrix s = random_unimodular(rng, n);
    return s * d * geninv::inverse(s);
}

// A = B * G with B, G of full rank r and G * B invertible, so ind(A) <= 1.
inline ExactMatrix random_index_one_product(Rng& rng, std::size_t n, std::size_t r) {
    for (;;) {
        ExactMatrix b = random_int_matrix(rng, n, r, -5, 5);
        ExactMatrix g = random_int_matrix(rng, r, n, -5, 5);
        if (geninv::rank(b) != r || geninv::rank(g) != r) continue;
        if (geninv::determinant_bareiss(g * b).is_zero()) continue;
        return b * g;
    }
}

} // namespace testsupport

#endif // GENINV_TESTS_SUPPORT_HPP
