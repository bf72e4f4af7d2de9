// Command-line front end: matrix file I/O, inverse computation, decomposition
// dumps, candidate verification, and shift-schedule convergence sweeps.
// Exit codes: 0 = success / verification passed, 1 = error,
// 2 = verification or convergence failure.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "geninv/geninv.hpp"

namespace {

using nlohmann::json;
using namespace geninv;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitFailed = 2;

struct LoadedMatrix {
    AnyMatrix matrix;
    json echo; // hash + shape + mode
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("io_error", "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

LoadedMatrix load_matrix(const std::string& path) {
    const std::string bytes = read_file(path);
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::exception& e) {
        throw ParseError("invalid JSON in '" + path + "': " + e.what());
    }
    LoadedMatrix out{parse_matrix_json(doc), {}};
    const auto [rows, cols] = std::visit(
        [](const auto& m) { return std::pair<std::size_t, std::size_t>{m.rows(), m.cols()}; },
        out.matrix);
    out.echo = {{"hash", fnv1a_hex(bytes)},
                {"rows", rows},
                {"cols", cols},
                {"mode", mode_name(out.matrix)}};
    return out;
}

void emit(const json& report, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << report.dump(2) << "\n";
        return;
    }
    std::ofstream out(output_path);
    if (!out) throw Error("io_error", "cannot write '" + output_path + "'");
    out << report.dump(2) << "\n";
}

InverseKind parse_kind(const std::string& s) {
    if (s == "mp") return InverseKind::MoorePenrose;
    if (s == "group") return InverseKind::Group;
    if (s == "drazin") return InverseKind::Drazin;
    if (s == "core") return InverseKind::Core;
    if (s == "dual-core") return InverseKind::DualCore;
    if (s == "core-ep") return InverseKind::CoreEP;
    if (s == "dual-core-ep") return InverseKind::DualCoreEP;
    throw UnsupportedCombination("unknown inverse kind '" + s + "'");
}

Method parse_method(const std::string& s) {
    if (s == "chain") return Method::ChainClosedForm;
    if (s == "power") return Method::PowerFormula;
    if (s == "drazin-projector") return Method::DrazinProjector;
    if (s == "limit-numeric") return Method::LimitNumeric;
    if (s == "limit-exact") return Method::LimitExact;
    throw UnsupportedCombination("unknown method '" + s + "'");
}

LimitFamily parse_family(const std::string& s) {
    if (s == "t31") return LimitFamily::Chain;
    if (s == "t41") return LimitFamily::CrossPower;
    if (s == "t43") return LimitFamily::GramPower;
    if (s == "mp") return LimitFamily::MoorePenrose;
    throw UnsupportedCombination("unknown formula '" + s + "'");
}

ShiftSide parse_side(const std::string& s) {
    if (s == "left") return ShiftSide::Left;
    if (s == "right") return ShiftSide::Right;
    throw UnsupportedCombination("unknown side '" + s + "'");
}

LimitTarget target_of_kind(InverseKind kind) {
    switch (kind) {
        case InverseKind::MoorePenrose: return LimitTarget::MoorePenrose;
        case InverseKind::Core: return LimitTarget::Core;
        case InverseKind::DualCore: return LimitTarget::DualCore;
        case InverseKind::CoreEP: return LimitTarget::CoreEP;
        case InverseKind::DualCoreEP: return LimitTarget::DualCoreEP;
        default:
            throw UnsupportedCombination("no limit formula family for this inverse kind");
    }
}

std::optional<double> env_tolerance() {
    if (const char* v = std::getenv("GENINV_DEFAULT_TOL")) return std::strtod(v, nullptr);
    return {};
}

template <class S>
VerificationReport verify_candidate(InverseKind kind, const Matrix<S>& a, const Matrix<S>& x) {
    const auto tol = env_tolerance();
    switch (kind) {
        case InverseKind::MoorePenrose: return check_moore_penrose(a, x, tol);
        case InverseKind::Group: return check_group(a, x, tol);
        case InverseKind::Drazin: return check_drazin(a, x, matrix_index(a), tol);
        case InverseKind::Core: return check_core(a, x, tol);
        case InverseKind::DualCore: return check_dual_core(a, x, tol);
        case InverseKind::CoreEP: return check_core_ep(a, x, tol);
        case InverseKind::DualCoreEP: return check_dual_core_ep(a, x, tol);
    }
    throw InternalError("unhandled inverse kind");
}

struct ComputeOptions {
    InverseKind kind = InverseKind::MoorePenrose;
    Method method = Method::ChainClosedForm;
    std::optional<LimitFamily> family;
    std::optional<ShiftSide> side;
    std::optional<std::size_t> projector_power;
    LambdaSchedule schedule;
};

// Closed-form computation shared by both scalar modes.
template <class S>
Matrix<S> closed_form(const ComputeOptions& opt, const Matrix<S>& a) {
    switch (opt.kind) {
        case InverseKind::MoorePenrose: return moore_penrose(a);
        case InverseKind::Group: return group_inverse(a);
        case InverseKind::Drazin: return drazin(a);
        case InverseKind::Core: return core(a);
        case InverseKind::DualCore: return dual_core(a);
        case InverseKind::CoreEP: return core_ep(a, opt.method, opt.projector_power);
        case InverseKind::DualCoreEP: return dual_core_ep(a, opt.method, opt.projector_power);
    }
    throw InternalError("unhandled inverse kind");
}

// Assembly for the limit methods. The group inverse has no family flag of
// its own; it rides the two-matrix product family with M = A*, N = A, which
// shifts A^2 and converges exactly when ind(A) <= 1.
template <class S>
Assembly<S> limit_assembly(const ComputeOptions& opt, const Matrix<S>& a) {
    if (opt.kind == InverseKind::Group) {
        if (opt.family)
            throw UnsupportedCombination("group limit takes no --formula; it uses the pair identity");
        if (!a.is_square()) throw NonSquare("group inverse of non-square matrix");
        if (matrix_index(a) > 1) throw IndexTooLarge("group inverse requires index at most 1");
        return assemble_pair(opt.side.value_or(ShiftSide::Right), conj_transpose(a), a);
    }
    const LimitTarget target = target_of_kind(opt.kind);
    LimitFamily family = opt.family.value_or(
        opt.kind == InverseKind::MoorePenrose ? LimitFamily::MoorePenrose : LimitFamily::CrossPower);
    const ShiftSide side = opt.side.value_or(default_side(family, target));
    return assemble(LimitFormula{family, side, target}, a);
}

int cmd_compute(const std::string& input, const std::string& output, const ComputeOptions& opt) {
    if (!method_supported(opt.kind, opt.method))
        throw UnsupportedCombination("inverse kind does not support this method");
    auto loaded = load_matrix(input);

    json report;
    report["command"] = "compute";
    report["input"] = loaded.echo;
    report["inverse"] = inverse_kind_name(opt.kind);

    const auto started = std::chrono::steady_clock::now();
    VerificationReport verification;
    std::optional<json> trace;

    std::visit(
        [&](const auto& a) {
            using S = typename std::decay_t<decltype(a)>::scalar_type;
            Matrix<S> x;
            if (opt.method == Method::LimitExact) {
                if constexpr (ScalarTraits<S>::is_exact) {
                    x = evaluate_exact_limit(limit_assembly(opt, a));
                } else {
                    throw ModeMismatch("limit-exact needs an exact-mode input");
                }
            } else if (opt.method == Method::LimitNumeric) {
                if constexpr (!ScalarTraits<S>::is_exact) {
                    auto run = limit_numeric_run(limit_assembly(opt, a), opt.schedule);
                    if (!run.converged)
                        throw NoConvergence("schedule exhausted without meeting tol");
                    x = run.extrapolated;
                    trace = trace_to_json(run.trace);
                } else {
                    throw ModeMismatch("limit-numeric needs a float-mode input");
                }
            } else {
                x = closed_form(opt, a);
            }
            verification = verify_candidate(opt.kind, a, x);
            report["result"] = matrix_to_json(x);
            if constexpr (ScalarTraits<S>::is_exact)
                report["result_common_denominator"] = common_denominator_form(x);
        },
        loaded.matrix);

    const auto elapsed = std::chrono::steady_clock::now() - started;
    report["method"] = [&] {
        switch (opt.method) {
            case Method::ChainClosedForm: return "chain";
            case Method::PowerFormula: return "power";
            case Method::DrazinProjector: return "drazin-projector";
            case Method::LimitNumeric: return "limit-numeric";
            case Method::LimitExact: return "limit-exact";
        }
        return "?";
    }();
    report["verification"] = verification_to_json(verification);
    if (trace) report["trace"] = *trace;
    report["wall_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
    emit(report, output);
    return verification.passed ? kExitOk : kExitFailed;
}

int cmd_decompose(const std::string& input, const std::string& output, const std::string& kind) {
    auto loaded = load_matrix(input);
    json report;
    report["command"] = "decompose";
    report["kind"] = kind;
    report["input"] = loaded.echo;
    const auto started = std::chrono::steady_clock::now();

    std::visit(
        [&](const auto& a) {
            if (kind == "index") {
                report["index"] = matrix_index(a);
                report["rank"] = rank(a);
                report["nilpotent"] = is_nilpotent(a);
            } else if (kind == "full-rank") {
                auto pair = full_rank_decompose(a);
                report["B"] = matrix_to_json(pair.B);
                report["G"] = matrix_to_json(pair.G);
                report["checks"] = {{"product_matches", pair.B * pair.G == a},
                                    {"rank_B", rank(pair.B)},
                                    {"rank_G", rank(pair.G)}};
            } else if (kind == "chain") {
                auto chain = full_rank_chain(a);
                json pairs = json::array();
                for (const auto& p : chain.pairs)
                    pairs.push_back({{"B", matrix_to_json(p.B)}, {"G", matrix_to_json(p.G)}});
                bool links_ok = true;
                for (std::size_t i = 0; i + 1 < chain.pairs.size(); ++i)
                    links_ok = links_ok && (chain.pairs[i].G * chain.pairs[i].B ==
                                            chain.pairs[i + 1].B * chain.pairs[i + 1].G);
                report["k"] = chain.k;
                report["pairs"] = std::move(pairs);
                report["head_product"] = matrix_to_json(chain.head);
                report["tail_product"] = matrix_to_json(chain.tail);
                report["core_block"] = matrix_to_json(chain.core);
                report["checks"] = {
                    {"links_match", links_ok},
                    {"core_invertible", rank(chain.core) == chain.core.rows()},
                    {"head_tail_is_power", chain.head * chain.tail == power(a, chain.k)}};
            } else if (kind == "core-ep-decomp") {
                auto dec = core_ep_decompose(a);
                report["k"] = dec.k;
                report["A1"] = matrix_to_json(dec.range_part);
                report["A2"] = matrix_to_json(dec.nilpotent_part);
                report["checks"] = {
                    {"sum_matches", dec.range_part + dec.nilpotent_part == a},
                    {"rank_square_stable",
                     rank(dec.range_part * dec.range_part) == rank(dec.range_part)},
                    {"nilpotent_power_zero", is_zero_matrix(power(dec.nilpotent_part, dec.k))},
                    {"star_orthogonal",
                     is_zero_matrix(conj_transpose(dec.range_part) * dec.nilpotent_part)},
                    {"product_orthogonal",
                     is_zero_matrix(dec.nilpotent_part * dec.range_part)}};
            } else {
                throw UnsupportedCombination("unknown decomposition kind '" + kind + "'");
            }
        },
        loaded.matrix);

    const auto elapsed = std::chrono::steady_clock::now() - started;
    report["wall_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
    emit(report, output);
    return kExitOk;
}

int cmd_verify(const std::string& input, const std::string& candidate, const std::string& output,
               InverseKind kind) {
    auto loaded = load_matrix(input);
    auto cand = load_matrix(candidate);
    json report;
    report["command"] = "verify";
    report["input"] = loaded.echo;
    report["candidate"] = cand.echo;
    report["inverse"] = inverse_kind_name(kind);
    const auto started = std::chrono::steady_clock::now();

    VerificationReport verification;
    if (loaded.matrix.index() != cand.matrix.index())
        throw ModeMismatch("input and candidate must share one arithmetic mode");
    std::visit(
        [&](const auto& a) {
            using M = std::decay_t<decltype(a)>;
            verification = verify_candidate(kind, a, std::get<M>(cand.matrix));
        },
        loaded.matrix);

    const auto elapsed = std::chrono::steady_clock::now() - started;
    report["verification"] = verification_to_json(verification);
    report["wall_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
    emit(report, output);
    return verification.passed ? kExitOk : kExitFailed;
}

struct SweepOptions {
    LimitFamily family = LimitFamily::CrossPower;
    std::optional<ShiftSide> side;
    std::optional<LimitTarget> target;
    LambdaSchedule schedule;
};

int cmd_sweep(const std::string& input, const std::string& output, const SweepOptions& opt) {
    auto loaded = load_matrix(input);
    const LimitTarget target = opt.target.value_or(
        opt.family == LimitFamily::MoorePenrose ? LimitTarget::MoorePenrose : LimitTarget::CoreEP);
    const ShiftSide side = opt.side.value_or(default_side(opt.family, target));
    const LimitFormula formula{opt.family, side, target};
    if (!formula_supported(formula))
        throw UnsupportedCombination("limit formula combination is not defined");

    json report;
    report["command"] = "sweep";
    report["input"] = loaded.echo;
    report["formula"] = [&] {
        switch (opt.family) {
            case LimitFamily::Chain: return "t31";
            case LimitFamily::CrossPower: return "t41";
            case LimitFamily::GramPower: return "t43";
            case LimitFamily::MoorePenrose: return "mp";
            default: return "?";
        }
    }();
    report["side"] = side == ShiftSide::Left ? "left" : "right";
    report["target"] = [&] {
        switch (target) {
            case LimitTarget::CoreEP: return "core-ep";
            case LimitTarget::DualCoreEP: return "dual-core-ep";
            case LimitTarget::Core: return "core";
            case LimitTarget::DualCore: return "dual-core";
            case LimitTarget::MoorePenrose: return "mp";
            default: return "?";
        }
    }();
    report["schedule"] = {{"lambda0", opt.schedule.lambda0},
                          {"ratio", opt.schedule.ratio},
                          {"max_steps", opt.schedule.max_steps},
                          {"tol", opt.schedule.tol}};
    const auto started = std::chrono::steady_clock::now();

    // Exact inputs provide an exact reference for the residual column; the
    // schedule itself always runs in float arithmetic.
    std::optional<FloatMatrix> reference;
    FloatMatrix af;
    if (const auto* exact = std::get_if<ExactMatrix>(&loaded.matrix)) {
        const ExactMatrix exact_limit = limit_exact(formula, *exact);
        reference = to_float(exact_limit);
        af = to_float(*exact);
        report["reference"] = matrix_to_json(exact_limit);
    } else {
        af = std::get<FloatMatrix>(loaded.matrix);
        report["reference"] = nullptr;
    }

    auto run = limit_numeric_run(formula, af, opt.schedule, reference ? &*reference : nullptr);

    std::vector<double> lambdas, residuals;
    for (const auto& row : run.trace) {
        lambdas.push_back(row.lambda);
        residuals.push_back(row.residual);
    }
    const double slope = fit_loglog_slope(lambdas, residuals, 4);

    report["trace"] = trace_to_json(run.trace);
    report["converged"] = run.converged;
    report["result"] = matrix_to_json(run.extrapolated);
    report["slope"] = std::isnan(slope) ? json() : json(slope);
    if (reference) {
        report["final_error"] = max_abs_diff(run.last_iterate, *reference);
        report["extrapolated_error"] = max_abs_diff(run.extrapolated, *reference);
    } else {
        report["final_error"] = nullptr;
        report["extrapolated_error"] = nullptr;
    }
    const auto elapsed = std::chrono::steady_clock::now() - started;
    report["wall_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
    emit(report, output);
    return run.converged ? kExitOk : kExitFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dense generalized-inverse toolkit"};
    app.require_subcommand(1);

    std::string input, output, candidate;
    std::string kind_str = "mp", method_str = "chain", formula_str, side_str, decomp_kind = "index";
    std::optional<std::size_t> projector_power;
    LambdaSchedule schedule;

    auto add_schedule_flags = [&](CLI::App* cmd) {
        cmd->add_option("--lambda0", schedule.lambda0, "first shift, relative to |Z|");
        cmd->add_option("--ratio", schedule.ratio, "geometric shift ratio in (0,1)");
        cmd->add_option("--steps", schedule.max_steps, "maximum schedule steps");
        cmd->add_option("--tol", schedule.tol, "relative stop tolerance on iterate deltas");
    };

    auto* compute = app.add_subcommand("compute", "compute a generalized inverse and verify it");
    compute->add_option("--input", input, "matrix file")->required();
    compute->add_option("--output", output, "report file (stdout when absent)");
    compute->add_option("--inverse", kind_str,
                        "mp|group|drazin|core|dual-core|core-ep|dual-core-ep")
        ->required();
    compute->add_option("--method", method_str,
                        "chain|power|drazin-projector|limit-numeric|limit-exact");
    compute->add_option("--formula", formula_str, "t31|t41|t43 (limit methods)");
    compute->add_option("--side", side_str, "left|right resolvent placement");
    compute->add_option("--m", projector_power, "power m >= index for drazin-projector");
    add_schedule_flags(compute);

    auto* index_cmd = app.add_subcommand("index", "matrix index and rank");
    index_cmd->add_option("--input", input, "matrix file")->required();
    index_cmd->add_option("--output", output, "report file (stdout when absent)");

    auto* decompose_cmd = app.add_subcommand("decompose", "decomposition dumps");
    decompose_cmd->add_option("--input", input, "matrix file")->required();
    decompose_cmd->add_option("--output", output, "report file (stdout when absent)");
    decompose_cmd->add_option("--kind", decomp_kind, "index|full-rank|chain|core-ep-decomp");

    auto* verify_cmd = app.add_subcommand("verify", "verify a candidate inverse");
    verify_cmd->add_option("--input", input, "matrix file")->required();
    verify_cmd->add_option("--candidate", candidate, "candidate inverse file")->required();
    verify_cmd->add_option("--output", output, "report file (stdout when absent)");
    verify_cmd->add_option("--inverse", kind_str,
                           "mp|group|drazin|core|dual-core|core-ep|dual-core-ep")
        ->required();

    auto* sweep_cmd = app.add_subcommand("sweep", "shift-schedule convergence trace");
    sweep_cmd->add_option("--input", input, "matrix file")->required();
    sweep_cmd->add_option("--output", output, "report file (stdout when absent)");
    sweep_cmd->add_option("--formula", formula_str, "t31|t41|t43|mp")->required();
    sweep_cmd->add_option("--side", side_str, "left|right resolvent placement");
    std::string target_str;
    sweep_cmd->add_option("--target", target_str, "core-ep|dual-core-ep|core|dual-core");
    add_schedule_flags(sweep_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (compute->parsed()) {
            ComputeOptions opt;
            opt.kind = parse_kind(kind_str);
            opt.method = parse_method(method_str);
            if (!formula_str.empty()) opt.family = parse_family(formula_str);
            if (!side_str.empty()) opt.side = parse_side(side_str);
            opt.projector_power = projector_power;
            opt.schedule = schedule;
            return cmd_compute(input, output, opt);
        }
        if (index_cmd->parsed()) return cmd_decompose(input, output, "index");
        if (decompose_cmd->parsed()) return cmd_decompose(input, output, decomp_kind);
        if (verify_cmd->parsed()) return cmd_verify(input, candidate, output, parse_kind(kind_str));
        if (sweep_cmd->parsed()) {
            SweepOptions opt;
            opt.family = parse_family(formula_str);
            if (!side_str.empty()) opt.side = parse_side(side_str);
            if (!target_str.empty()) {
                if (target_str == "core-ep") opt.target = LimitTarget::CoreEP;
                else if (target_str == "dual-core-ep") opt.target = LimitTarget::DualCoreEP;
                else if (target_str == "core") opt.target = LimitTarget::Core;
                else if (target_str == "dual-core") opt.target = LimitTarget::DualCore;
                else throw UnsupportedCombination("unknown target '" + target_str + "'");
            }
            opt.schedule = schedule;
            return cmd_sweep(input, output, opt);
        }
    } catch (const Error& e) {
        json err{{"error", {{"code", e.code()}, {"message", e.what()}}}};
        emit(err, output);
        return kExitError;
    } catch (const std::exception& e) {
        json err{{"error", {{"code", "internal_error"}, {"message", e.what()}}}};
        emit(err, output);
        return kExitError;
    }
    return kExitError;
}
