#ifndef GENINV_IO_HPP
#define GENINV_IO_HPP

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "geninv/limits.hpp"
#include "geninv/matrix.hpp"
#include "geninv/verify.hpp"

namespace geninv {

// Runtime-tagged matrix for the file/CLI boundary. Library code is typed on
// the scalar; mixing the two alternatives is rejected here, never coerced.
using AnyMatrix = std::variant<ExactMatrix, FloatMatrix>;

inline const char* mode_name(const AnyMatrix& m) {
    return std::holds_alternative<ExactMatrix>(m) ? "exact" : "float";
}

namespace detail {

inline bool parse_rational_token(std::string_view text, std::size_t& pos, mpq_class& out,
                                 bool sign_required) {
    std::size_t p = pos;
    std::string tok;
    if (p < text.size() && (text[p] == '+' || text[p] == '-')) {
        if (text[p] == '-') tok += '-';
        ++p;
    } else if (sign_required) {
        return false;
    }
    std::size_t digits = 0;
    while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) {
        tok += text[p];
        ++p;
        ++digits;
    }
    if (digits == 0) return false;
    if (p < text.size() && text[p] == '/') {
        tok += '/';
        ++p;
        std::size_t den_digits = 0;
        while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) {
            tok += text[p];
            ++p;
            ++den_digits;
        }
        if (den_digits == 0) return false;
    }
    mpq_class q;
    if (q.set_str(tok, 10) != 0) return false;
    if (sgn(q.get_den()) == 0) throw ParseError("zero denominator in entry '" + std::string(text) + "'");
    q.canonicalize();
    out = std::move(q);
    pos = p;
    return true;
}

} // namespace detail

// Exact entry grammar: a rational "p" or "p/q" with optional sign, followed
// by an optional signed imaginary rational ending in 'i' (e.g. "3",
// "-2/5", "1/2+3/4i", "0-1i"). Spaces around the parts are tolerated.
inline GaussianRational parse_exact_entry(const std::string& text) {
    std::string_view sv(text);
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < sv.size() && sv[pos] == ' ') ++pos;
    };
    skip_ws();
    mpq_class re;
    if (!detail::parse_rational_token(sv, pos, re, false))
        throw ParseError("bad exact entry '" + text + "'");
    skip_ws();
    mpq_class im(0);
    if (pos < sv.size()) {
        if (sv[pos] != '+' && sv[pos] != '-') throw ParseError("bad exact entry '" + text + "'");
        const bool negative = sv[pos] == '-';
        ++pos;
        skip_ws();
        if (!detail::parse_rational_token(sv, pos, im, false))
            throw ParseError("bad exact entry '" + text + "'");
        if (negative) im = -im;
        skip_ws();
        if (pos >= sv.size() || sv[pos] != 'i')
            throw ParseError("bad exact entry '" + text + "'");
        ++pos;
        skip_ws();
    }
    if (pos != sv.size()) throw ParseError("bad exact entry '" + text + "'");
    return {std::move(re), std::move(im)};
}

inline std::string format_exact_entry(const GaussianRational& s) { return s.str(); }

// Matrix file schema:
//   {"rows": R, "cols": C, "mode": "exact"|"float", "data": [[..], ..]}
// Exact entries are strings in the grammar above; float entries are JSON
// numbers (real data). Entry counts must match the declared shape.
inline AnyMatrix parse_matrix_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("matrix document must be a JSON object");
    for (const char* key : {"rows", "cols", "mode", "data"})
        if (!j.contains(key)) throw ParseError(std::string("matrix document missing '") + key + "'");
    if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
        throw ParseError("rows/cols must be integers");
    const long long rows = j["rows"].get<long long>();
    const long long cols = j["cols"].get<long long>();
    if (rows < 0 || cols < 0) throw ParseError("rows/cols must be nonnegative");
    const std::string mode = j["mode"].get<std::string>();
    if (mode != "exact" && mode != "float") throw ParseError("mode must be 'exact' or 'float'");
    const auto& data = j["data"];
    if (!data.is_array() || data.size() != static_cast<std::size_t>(rows))
        throw ParseError("data must hold exactly 'rows' rows");

    auto fill = [&](auto& m, auto&& entry_of) {
        for (std::size_t i = 0; i < static_cast<std::size_t>(rows); ++i) {
            const auto& row = data[i];
            if (!row.is_array() || row.size() != static_cast<std::size_t>(cols))
                throw ParseError("row " + std::to_string(i) + " must hold exactly 'cols' entries");
            for (std::size_t jcol = 0; jcol < static_cast<std::size_t>(cols); ++jcol)
                m(i, jcol) = entry_of(row[jcol]);
        }
    };

    if (mode == "exact") {
        ExactMatrix m(rows, cols);
        fill(m, [](const nlohmann::json& e) {
            if (!e.is_string()) throw ParseError("exact entries must be strings");
            return parse_exact_entry(e.get<std::string>());
        });
        return m;
    }
    FloatMatrix m(rows, cols);
    fill(m, [](const nlohmann::json& e) -> FloatScalar {
        if (!e.is_number()) throw ParseError("float entries must be numbers");
        return {e.get<double>(), 0.0};
    });
    return m;
}

inline nlohmann::json matrix_to_json(const ExactMatrix& m) {
    nlohmann::json data = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(format_exact_entry(m(i, j)));
        data.push_back(std::move(row));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"mode", "exact"}, {"data", std::move(data)}};
}

inline nlohmann::json matrix_to_json(const FloatMatrix& m) {
    nlohmann::json data = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).real());
        data.push_back(std::move(row));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"mode", "float"}, {"data", std::move(data)}};
}

inline nlohmann::json matrix_to_json(const AnyMatrix& m) {
    return std::visit([](const auto& v) { return matrix_to_json(v); }, m);
}

// Scales every entry to one shared denominator so results can be eyeballed
// against tables printed over a common divisor.
inline nlohmann::json common_denominator_form(const ExactMatrix& m) {
    mpz_class denom(1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            denom = lcm(denom, m(i, j).re().get_den());
            denom = lcm(denom, m(i, j).im().get_den());
        }
    }
    nlohmann::json numerators = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            mpq_class re = m(i, j).re() * denom;
            mpq_class im = m(i, j).im() * denom;
            GaussianRational scaled(re, im);
            row.push_back(scaled.str());
        }
        numerators.push_back(std::move(row));
    }
    return {{"denominator", denom.get_str()}, {"numerators", std::move(numerators)}};
}

inline const char* inverse_kind_name(InverseKind kind) {
    switch (kind) {
        case InverseKind::MoorePenrose: return "mp";
        case InverseKind::Group: return "group";
        case InverseKind::Drazin: return "drazin";
        case InverseKind::Core: return "core";
        case InverseKind::DualCore: return "dual-core";
        case InverseKind::CoreEP: return "core-ep";
        case InverseKind::DualCoreEP: return "dual-core-ep";
    }
    return "?";
}

inline nlohmann::json verification_to_json(const VerificationReport& report) {
    nlohmann::json equations = nlohmann::json::array();
    for (const auto& e : report.equations)
        equations.push_back({{"id", e.id}, {"residual", e.residual}});
    nlohmann::json ranges = nlohmann::json::array();
    for (const auto& c : report.range_checks) ranges.push_back({{"id", c.id}, {"ok", c.ok}});
    nlohmann::json out{{"kind", inverse_kind_name(report.kind)},
                       {"mode", report.mode == ArithmeticMode::Exact ? "exact" : "float"},
                       {"equations", std::move(equations)},
                       {"range_checks", std::move(ranges)},
                       {"passed", report.passed}};
    out["tolerance"] = report.tolerance ? nlohmann::json(*report.tolerance) : nlohmann::json();
    return out;
}

inline nlohmann::json trace_to_json(const std::vector<TraceRow>& trace) {
    auto number_or_null = [](double v) {
        return std::isnan(v) ? nlohmann::json() : nlohmann::json(v);
    };
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : trace)
        rows.push_back({{"lambda", row.lambda},
                        {"delta", number_or_null(row.delta)},
                        {"residual", number_or_null(row.residual)}});
    return rows;
}

inline std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace geninv

#endif // GENINV_IO_HPP
