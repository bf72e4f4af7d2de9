#ifndef GENINV_MATRIX_HPP
#define GENINV_MATRIX_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "geninv/error.hpp"
#include "geninv/scalar.hpp"

namespace geninv {

// Dense row-major matrix over a single scalar type. Values are immutable in
// practice: every operation returns a fresh matrix, so concurrent readers
// need no locking. Degenerate shapes (0 rows or 0 columns) are legal; they
// show up as the factors of rank-0 matrices.
template <class S>
class Matrix {
public:
    using scalar_type = S;

    Matrix() : rows_(0), cols_(0) {}

    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, ScalarTraits<S>::zero()) {}

    Matrix(std::initializer_list<std::initializer_list<S>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_) throw DimensionMismatch("ragged initializer rows");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = ScalarTraits<S>::one();
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool is_empty() const noexcept { return data_.empty(); }

    S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    S& at(std::size_t i, std::size_t j) {
        if (i >= rows_ || j >= cols_) throw DimensionMismatch("matrix index out of range");
        return data_[i * cols_ + j];
    }
    const S& at(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) throw DimensionMismatch("matrix index out of range");
        return data_[i * cols_ + j];
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    Matrix& operator+=(const Matrix& o) {
        require_same_shape(o, "matrix addition");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }

    Matrix& operator-=(const Matrix& o) {
        require_same_shape(o, "matrix subtraction");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

    Matrix operator-() const {
        Matrix out(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = -data_[i];
        return out;
    }

    friend Matrix operator*(const S& s, const Matrix& m) {
        Matrix out(m.rows_, m.cols_);
        for (std::size_t i = 0; i < m.data_.size(); ++i) out.data_[i] = s * m.data_[i];
        return out;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw DimensionMismatch("matrix product of " + shape_str(a) + " and " + shape_str(b));
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const S& aik = a(i, k);
                if (ScalarTraits<S>::is_zero(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    out(i, j) += aik * b(k, j);
                }
            }
        }
        return out;
    }

private:
    static std::string shape_str(const Matrix& m) {
        return std::to_string(m.rows_) + "x" + std::to_string(m.cols_);
    }

    void require_same_shape(const Matrix& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionMismatch(std::string(op) + " of " + shape_str(*this) + " and " + shape_str(o));
    }

    std::size_t rows_;
    std::size_t cols_;
    std::vector<S> data_;
};

using ExactMatrix = Matrix<GaussianRational>;
using FloatMatrix = Matrix<FloatScalar>;

template <class S>
Matrix<S> conj_transpose(const Matrix<S>& a) {
    Matrix<S> out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(j, i) = ScalarTraits<S>::conjugate(a(i, j));
    return out;
}

template <class S>
Matrix<S> hstack(const Matrix<S>& a, const Matrix<S>& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("hstack row counts differ");
    Matrix<S> out(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
    }
    return out;
}

template <class S>
Matrix<S> select_columns(const Matrix<S>& a, const std::vector<std::size_t>& cols) {
    Matrix<S> out(a.rows(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j] >= a.cols()) throw DimensionMismatch("column selection out of range");
        for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) = a(i, cols[j]);
    }
    return out;
}

template <class S>
Matrix<S> top_rows(const Matrix<S>& a, std::size_t count) {
    if (count > a.rows()) throw DimensionMismatch("row selection out of range");
    Matrix<S> out(count, a.cols());
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    return out;
}

template <class S>
double norm_max(const Matrix<S>& a) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            best = std::max(best, ScalarTraits<S>::magnitude(a(i, j)));
    return best;
}

template <class S>
double max_abs_diff(const Matrix<S>& a, const Matrix<S>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("difference of unequal shapes");
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            best = std::max(best, ScalarTraits<S>::magnitude(a(i, j) - b(i, j)));
    return best;
}

template <class S>
bool is_zero_matrix(const Matrix<S>& a) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!ScalarTraits<S>::is_zero(a(i, j))) return false;
    return true;
}

inline FloatMatrix to_float(const ExactMatrix& a) {
    FloatMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j).to_complex();
    return out;
}

// Rank threshold for float elimination: entries at or below
// max(rows, cols) * machine-eps * (max magnitude of the whole matrix)
// are treated as zero. Exact mode always uses exact zero tests.
template <class S>
double rank_threshold(const Matrix<S>& a) {
    if constexpr (ScalarTraits<S>::is_exact) {
        (void)a;
        return 0.0;
    } else {
        const double scale = norm_max(a);
        const double dim = static_cast<double>(std::max(a.rows(), a.cols()));
        return dim * std::numeric_limits<double>::epsilon() * scale;
    }
}

template <class S>
struct RrefResult {
    Matrix<S> R;
    std::vector<std::size_t> pivot_cols;
};

namespace detail {

// Pivot choice: first structurally nonzero entry in exact mode (any nonzero
// pivot is valid and the reduced form is unique anyway); largest magnitude
// above tau in float mode.
template <class S>
std::ptrdiff_t find_pivot_row(const Matrix<S>& m, std::size_t col, std::size_t from_row, double tau) {
    if constexpr (ScalarTraits<S>::is_exact) {
        for (std::size_t i = from_row; i < m.rows(); ++i)
            if (!ScalarTraits<S>::is_zero(m(i, col))) return static_cast<std::ptrdiff_t>(i);
        return -1;
    } else {
        std::ptrdiff_t best = -1;
        double best_mag = tau;
        for (std::size_t i = from_row; i < m.rows(); ++i) {
            double mag = ScalarTraits<S>::magnitude(m(i, col));
            if (mag > best_mag) {
                best_mag = mag;
                best = static_cast<std::ptrdiff_t>(i);
            }
        }
        return best;
    }
}

} // namespace detail

// Reduced row-echelon form. The forward sweep is fraction-free in exact mode
// (Bareiss update, divisions stay exact and intermediate entries are minors
// of the input, which bounds coefficient growth); the backward sweep
// normalizes pivots to 1 and clears entries above them with exact field
// division. Float mode uses partial pivoting with the tau threshold.
template <class S>
RrefResult<S> rref(const Matrix<S>& a) {
    Matrix<S> r = a;
    std::vector<std::size_t> pivots;
    const double tau = rank_threshold(a);
    const std::size_t rows = r.rows();
    const std::size_t cols = r.cols();

    S prev = ScalarTraits<S>::one();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::ptrdiff_t p = detail::find_pivot_row(r, col, row, tau);
        if (p < 0) continue;
        r.swap_rows(row, static_cast<std::size_t>(p));
        const S pivot = r(row, col);
        for (std::size_t i = row + 1; i < rows; ++i) {
            if constexpr (ScalarTraits<S>::is_exact) {
                const S head = r(i, col);
                for (std::size_t j = col + 1; j < cols; ++j)
                    r(i, j) = (r(i, j) * pivot - head * r(row, j)) / prev;
            } else {
                const S factor = r(i, col) / pivot;
                for (std::size_t j = col + 1; j < cols; ++j)
                    r(i, j) -= factor * r(row, j);
            }
            r(i, col) = ScalarTraits<S>::zero();
        }
        prev = pivot;
        pivots.push_back(col);
        ++row;
    }

    for (std::size_t k = pivots.size(); k-- > 0;) {
        const std::size_t pr = k;
        const std::size_t pc = pivots[k];
        const S d = r(pr, pc);
        for (std::size_t j = pc; j < cols; ++j) r(pr, j) = r(pr, j) / d;
        r(pr, pc) = ScalarTraits<S>::one();
        for (std::size_t i = 0; i < pr; ++i) {
            const S factor = r(i, pc);
            if (ScalarTraits<S>::is_zero(factor)) continue;
            for (std::size_t j = pc; j < cols; ++j) r(i, j) -= factor * r(pr, j);
            r(i, pc) = ScalarTraits<S>::zero();
        }
    }
    return {std::move(r), std::move(pivots)};
}

template <class S>
std::size_t rank(const Matrix<S>& a) {
    return rref(a).pivot_cols.size();
}

// Inverse via elimination on [A | I]; reuses the rref kernel so exact and
// float modes share one code path.
template <class S>
Matrix<S> inverse(const Matrix<S>& a) {
    if (!a.is_square()) throw NonSquare("inverse of non-square matrix");
    const std::size_t n = a.rows();
    auto aug = rref(hstack(a, Matrix<S>::identity(n)));
    if (aug.pivot_cols.size() != n ||
        (n > 0 && aug.pivot_cols.back() != n - 1))
        throw SingularMatrix("matrix is singular");
    Matrix<S> out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = aug.R(i, n + j);
    return out;
}

template <class S>
Matrix<S> power(const Matrix<S>& a, std::size_t p) {
    if (!a.is_square()) throw NonSquare("power of non-square matrix");
    Matrix<S> out = Matrix<S>::identity(a.rows());
    for (std::size_t i = 0; i < p; ++i) out = out * a;
    return out;
}

// Fraction-free determinant (Bareiss). Valid for any element type whose
// division is exact when the algorithm requests it -- rational scalars and
// polynomials over them. Intermediate entries are minors of the input.
template <class T>
T determinant_bareiss(const Matrix<T>& m) {
    if (!m.is_square()) throw NonSquare("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return ScalarTraits<T>::one();
    Matrix<T> b = m;
    bool negate = false;
    T prev = ScalarTraits<T>::one();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t p = k;
        while (p < n && ScalarTraits<T>::is_zero(b(p, k))) ++p;
        if (p == n) return ScalarTraits<T>::zero();
        if (p != k) {
            b.swap_rows(k, p);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                b(i, j) = (b(i, j) * b(k, k) - b(i, k) * b(k, j)) / prev;
            b(i, k) = ScalarTraits<T>::zero();
        }
        prev = b(k, k);
    }
    T det = b(n - 1, n - 1);
    return negate ? -det : det;
}

// Adjugate by cofactor expansion: adj(M)(j, i) = (-1)^{i+j} det(minor_ij),
// one fraction-free determinant per entry.
template <class T>
Matrix<T> adjugate(const Matrix<T>& m) {
    if (!m.is_square()) throw NonSquare("adjugate of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return m;
    if (n == 1) {
        Matrix<T> out(1, 1);
        out(0, 0) = ScalarTraits<T>::one();
        return out;
    }
    Matrix<T> out(n, n);
    Matrix<T> minor(n - 1, n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t r = 0, mr = 0; r < n; ++r) {
                if (r == i) continue;
                for (std::size_t c = 0, mc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor(mr, mc) = m(r, c);
                    ++mc;
                }
                ++mr;
            }
            T d = determinant_bareiss(minor);
            out(j, i) = ((i + j) % 2 == 0) ? d : -d;
        }
    }
    return out;
}

template <class S>
std::ostream& operator<<(std::ostream& os, const Matrix<S>& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i == 0 ? "[" : " [");
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ", ";
            os << ScalarTraits<S>::str(m(i, j));
        }
        os << ']';
        if (i + 1 < m.rows()) os << '\n';
    }
    return os << ']';
}

} // namespace geninv

#endif // GENINV_MATRIX_HPP
