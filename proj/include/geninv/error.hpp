#ifndef GENINV_ERROR_HPP
#define GENINV_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace geninv {

// Every library error carries a stable machine-readable code (used verbatim
// in CLI error reports) next to the human-readable message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& m) : Error("dimension_mismatch", m) {}
};

struct ModeMismatch : Error {
    explicit ModeMismatch(const std::string& m) : Error("mode_mismatch", m) {}
};

struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& m) : Error("division_by_zero", m) {}
};

struct SingularMatrix : Error {
    explicit SingularMatrix(const std::string& m) : Error("singular_matrix", m) {}
};

struct NonSquare : Error {
    explicit NonSquare(const std::string& m) : Error("non_square", m) {}
};

struct NilpotentInput : Error {
    explicit NilpotentInput(const std::string& m) : Error("nilpotent_input", m) {}
};

struct IndexTooLarge : Error {
    explicit IndexTooLarge(const std::string& m) : Error("index_too_large", m) {}
};

struct UnsupportedCombination : Error {
    explicit UnsupportedCombination(const std::string& m) : Error("unsupported_combination", m) {}
};

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& m) : Error("no_convergence", m) {}
};

struct LimitUndefined : Error {
    explicit LimitUndefined(const std::string& m) : Error("limit_undefined", m) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& m) : Error("parse_error", m) {}
};

struct InternalError : Error {
    explicit InternalError(const std::string& m) : Error("internal_error", m) {}
};

} // namespace geninv

#endif // GENINV_ERROR_HPP
