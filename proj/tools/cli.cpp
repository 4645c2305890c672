#include "cli.hpp"

#include "norlund/error.hpp"
#include "norlund/expr.hpp"
#include "norlund/inequalities.hpp"
#include "norlund/integrals.hpp"
#include "norlund/operators.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <optional>
#include <ostream>

namespace norlund::cli {

namespace {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Serialization

json to_json(double value)
{
    if (!std::isfinite(value)) {
        return nullptr;
    }
    return value;
}

json to_json(const std::optional<double>& value)
{
    return value ? to_json(*value) : json(nullptr);
}

json to_json(const SeriesResult& series)
{
    return {{"value", to_json(series.value)},
            {"terms_used", series.terms_used},
            {"tail_estimate", to_json(series.tail_estimate)},
            {"verdict", std::string(to_string(series.verdict))}};
}

json side_to_json(const std::optional<IntegralMode>& mode, const std::optional<SeriesPair>& diag,
                  const std::optional<GridAlignment>& alignment)
{
    if (!mode) {
        return nullptr;
    }
    json side{{"mode", std::string(to_string(*mode))}, {"alignment", nullptr}, {"series", nullptr}};
    if (alignment) {
        side["alignment"] = {{"k1", alignment->k1}, {"residual", to_json(alignment->residual)}};
    }
    if (diag) {
        side["series"] = {{"lower", to_json(diag->lower)}, {"upper", to_json(diag->upper)}};
    }
    return side;
}

json to_json(const IntegralResult& result)
{
    return {{"value", to_json(result.value)},
            {"mode_used", std::string(to_string(result.mode_used))},
            {"mixed_modes", result.mixed_modes()},
            {"forward", side_to_json(result.forward_mode, result.forward_diag, result.forward_alignment)},
            {"backward",
             side_to_json(result.backward_mode, result.backward_diag, result.backward_alignment)}};
}

json to_json(const InequalityContext& context)
{
    json modes = json::array();
    for (const auto& use : context.modes) {
        modes.push_back({{"integrand", use.integrand}, {"mode", std::string(to_string(use.mode))}});
    }
    return {{"a", to_json(context.a)},        {"b", to_json(context.b)},
            {"alpha", to_json(context.alpha)}, {"beta", to_json(context.beta)},
            {"p", to_json(context.p)},         {"q", to_json(context.q)},
            {"modes", modes}};
}

json to_json(const InequalityReport& report)
{
    json clauses = json::array();
    for (const auto& clause : report.clauses) {
        clauses.push_back({{"name", clause.name},
                           {"lhs", to_json(clause.lhs)},
                           {"rhs", to_json(clause.rhs)},
                           {"margin", to_json(clause.margin)},
                           {"holds", clause.holds}});
    }
    return {{"inequality", report.name},
            {"lhs", to_json(report.lhs)},
            {"rhs", to_json(report.rhs)},
            {"margin", to_json(report.margin)},
            {"viol_tol", to_json(report.viol_tol)},
            {"holds", report.holds},
            {"clauses", clauses},
            {"context", to_json(report.context)}};
}

json to_json(const MvtReport& report)
{
    return {{"K", to_json(report.K)},
            {"m", to_json(report.m)},
            {"M", to_json(report.M)},
            {"degenerate", report.degenerate},
            {"integral_fg", to_json(report.integral_fg)},
            {"integral_g", to_json(report.integral_g)},
            {"within_bounds", report.within_bounds()},
            {"context", to_json(report.context)}};
}

std::string format_number(double value)
{
    std::array<char, 32> buffer{};
    const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), result.ptr);
}

std::string scalar_text(const json& value)
{
    if (value.is_number_float()) return format_number(value.get<double>());
    if (value.is_string()) return value.get<std::string>();
    return value.dump();
}

void flatten(const json& value, const std::string& prefix, std::ostream& out)
{
    if (value.is_object() && !value.empty()) {
        for (const auto& [key, child] : value.items()) {
            flatten(child, prefix.empty() ? key : prefix + "." + key, out);
        }
        return;
    }
    if (value.is_array() && !value.empty()) {
        for (std::size_t i = 0; i < value.size(); ++i) {
            flatten(value[i], prefix + "[" + std::to_string(i) + "]", out);
        }
        return;
    }
    out << prefix << ": " << scalar_text(value) << '\n';
}

// ---------------------------------------------------------------------------
// Run report

struct Report {
    std::string command;
    json inputs = json::object();
    json result = json::object();
    Status status = Status::Ok;
    std::vector<std::string> diagnostics;

    void fail(const std::string& message)
    {
        status = Status::Error;
        result = json::object();
        diagnostics.push_back(message);
    }
};

std::string status_name(Status status)
{
    switch (status) {
        case Status::Ok: return "ok";
        case Status::CheckFailed: return "check_failed";
        case Status::Error: return "error";
    }
    return "error";
}

int emit(const Report& report, bool as_json, std::ostream& out, std::ostream& err)
{
    if (as_json) {
        json doc{{"command", report.command},
                 {"inputs", report.inputs},
                 {"result", report.result},
                 {"status", status_name(report.status)},
                 {"diagnostics", report.diagnostics}};
        out << doc.dump() << '\n';
    } else {
        out << "command: " << report.command << '\n';
        flatten(report.result, "", out);
        out << "status: " << status_name(report.status) << '\n';
        for (const auto& line : report.diagnostics) {
            out << "note: " << line << '\n';
            if (report.status == Status::Error) {
                err << "error: " << line << '\n';
            }
        }
    }
    return static_cast<int>(report.status);
}

// ---------------------------------------------------------------------------
// Commands

struct CommonFlags {
    double a = 0.0;
    double b = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    std::string mode = "auto";
    double tol = 1e-12;
    std::size_t max_terms = 1'000'000;
    bool json = false;

    SeriesConfig series() const
    {
        SeriesConfig cfg;
        cfg.tol = tol;
        cfg.max_terms = max_terms;
        cfg.validate();
        return cfg;
    }
    IntegralMode integral_mode() const { return *parse_mode(mode); }
};

void add_interval_flags(CLI::App& cmd, CommonFlags& flags)
{
    cmd.add_option("--a", flags.a, "Lower endpoint")->required();
    cmd.add_option("--b", flags.b, "Upper endpoint")->required();
    cmd.add_option("--alpha", flags.alpha, "Forward step (>= 0)")->required();
    cmd.add_option("--beta", flags.beta, "Backward step (>= 0)")->required();
    cmd.add_option("--mode", flags.mode, "strict | telescoped | auto")
        ->check(CLI::IsMember({"strict", "telescoped", "auto"}))
        ->capture_default_str();
    cmd.add_option("--tol", flags.tol, "Series tail tolerance")->capture_default_str();
    cmd.add_option("--max-terms", flags.max_terms, "Series term cap")->capture_default_str();
    cmd.add_flag("--json", flags.json, "Single-line JSON report");
}

json interval_inputs(const CommonFlags& flags)
{
    return {{"a", to_json(flags.a)},         {"b", to_json(flags.b)},
            {"alpha", to_json(flags.alpha)}, {"beta", to_json(flags.beta)},
            {"mode", flags.mode},            {"tol", to_json(flags.tol)},
            {"max_terms", flags.max_terms}};
}

void describe_sides(const IntegralResult& result, std::vector<std::string>& diagnostics)
{
    const auto describe = [&](const char* name, const std::optional<IntegralMode>& mode,
                              const std::optional<SeriesPair>& diag,
                              const std::optional<GridAlignment>& alignment) {
        if (!mode) {
            diagnostics.push_back(std::string(name) + " side skipped (zero step)");
            return;
        }
        std::string line = std::string(name) + " side: " + std::string(to_string(*mode));
        if (alignment) {
            line += ", " + std::to_string(alignment->k1) + " grid steps";
        }
        if (diag) {
            line += ", series terms " + std::to_string(diag->lower.terms_used) + "/" +
                    std::to_string(diag->upper.terms_used) + ", tails " +
                    format_number(diag->lower.tail_estimate) + "/" +
                    format_number(diag->upper.tail_estimate);
        }
        diagnostics.push_back(line);
    };
    describe("forward", result.forward_mode, result.forward_diag, result.forward_alignment);
    describe("backward", result.backward_mode, result.backward_diag, result.backward_alignment);
}

struct EvalCommand {
    CommonFlags flags;
    std::string expression;

    void configure(CLI::App& cmd)
    {
        cmd.add_option("--expr", expression, "Integrand f(t)")->required();
        add_interval_flags(cmd, flags);
    }

    void run(Report& report) const
    {
        report.inputs = {{"expr", expression}};
        report.inputs.update(interval_inputs(flags));
        const StepPair steps(flags.alpha, flags.beta);
        const RealFunction f = expr::to_function(expr::parse(expression));
        const IntegralResult result =
            symmetric_integral(f, flags.a, flags.b, steps, flags.integral_mode(), flags.series());
        report.result = to_json(result);
        describe_sides(result, report.diagnostics);
    }
};

struct DiffCommand {
    std::string expression;
    double t = 0.0;
    std::optional<double> alpha;
    std::optional<double> beta;
    bool json = false;

    void configure(CLI::App& cmd)
    {
        cmd.add_option("--expr", expression, "Function f(t)")->required();
        cmd.add_option("--t", t, "Evaluation point")->required();
        cmd.add_option("--alpha", alpha, "Forward step");
        cmd.add_option("--beta", beta, "Backward step");
        cmd.add_flag("--json", json, "Single-line JSON report");
    }

    void run(Report& report) const
    {
        report.inputs = {{"expr", expression},
                         {"t", to_json(t)},
                         {"alpha", to_json(alpha)},
                         {"beta", to_json(beta)}};
        const RealFunction f = expr::to_function(expr::parse(expression));
        std::string op;
        double value = 0.0;
        if (alpha && beta) {
            op = "symmetric";
            value = symmetric_difference(f, t, StepPair(*alpha, *beta));
        } else if (alpha) {
            op = "forward";
            value = forward_difference(f, t, *alpha);
        } else if (beta) {
            op = "backward";
            value = backward_difference(f, t, *beta);
        } else {
            throw Error(ErrorKind::InvalidArgument, "diff needs --alpha, --beta or both");
        }
        report.result = {{"operator", op}, {"value", to_json(value)}};
    }
};

struct CheckCommand {
    CommonFlags flags;
    std::string kind;
    std::string f_text;
    std::optional<std::string> g_text;
    std::optional<double> p;
    double residual_tol = 1e-9;

    void configure(CLI::App& cmd)
    {
        cmd.add_option("--kind", kind, "holder | cs | minkowski | mvt | comparison | ftc | ibp")
            ->required()
            ->check(CLI::IsMember({"holder", "cs", "minkowski", "mvt", "comparison", "ftc", "ibp"}));
        cmd.add_option("--f", f_text, "First function f(t)")->required();
        cmd.add_option("--g", g_text, "Second function g(t)");
        cmd.add_option("--p", p, "Exponent p > 1 (holder, minkowski; default 2)");
        cmd.add_option("--residual-tol", residual_tol, "Residual threshold for ftc and ibp")
            ->capture_default_str();
        add_interval_flags(cmd, flags);
    }

    void run(Report& report) const
    {
        report.inputs = {{"kind", kind}, {"f", f_text}, {"g", g_text ? json(*g_text) : json(nullptr)}};
        report.inputs.update(interval_inputs(flags));
        report.inputs["p"] = to_json(p);

        const RealFunction f = expr::to_function(expr::parse(f_text));
        const SeriesConfig cfg = flags.series();
        const IntegralMode mode = flags.integral_mode();

        if (kind == "ftc") {
            const FtcResiduals r = ftc_residuals(f, flags.a, flags.b, flags.alpha, cfg);
            const bool holds = r.derivative <= residual_tol && r.integral <= residual_tol;
            report.result = {{"r1", to_json(r.derivative)},
                             {"r2", to_json(r.integral)},
                             {"tolerance", to_json(residual_tol)},
                             {"holds", holds}};
            if (!holds) report.status = Status::CheckFailed;
            return;
        }

        if (!g_text) {
            throw Error(ErrorKind::InvalidArgument, "--g is required for --kind " + kind);
        }
        const RealFunction g = expr::to_function(expr::parse(*g_text));

        if (kind == "ibp") {
            const double residual =
                integration_by_parts_residual(f, g, flags.a, flags.b, flags.alpha, cfg);
            const bool holds = residual <= residual_tol;
            report.result = {{"residual", to_json(residual)},
                             {"tolerance", to_json(residual_tol)},
                             {"holds", holds}};
            if (!holds) report.status = Status::CheckFailed;
            return;
        }

        const StepPair steps(flags.alpha, flags.beta);
        if (kind == "mvt") {
            const MvtReport mvt = mvt_constant(f, g, flags.a, flags.b, steps, mode, cfg);
            report.result = to_json(mvt);
            if (!mvt.within_bounds()) report.status = Status::CheckFailed;
            if (mvt.degenerate) report.diagnostics.push_back("integral of g vanishes; K set to 0");
            return;
        }

        InequalityReport inequality;
        if (kind == "holder") {
            inequality = holder_check(f, g, flags.a, flags.b, steps, p.value_or(2.0), mode, cfg);
        } else if (kind == "cs") {
            inequality = cauchy_schwarz_check(f, g, flags.a, flags.b, steps, mode, cfg);
        } else if (kind == "minkowski") {
            inequality = minkowski_check(f, g, flags.a, flags.b, steps, p.value_or(2.0), mode, cfg);
        } else {
            inequality = comparison_check(f, g, flags.a, flags.b, steps, mode, cfg);
        }
        report.result = to_json(inequality);
        if (!inequality.all_hold()) report.status = Status::CheckFailed;
    }
};

bool wants_json(const std::vector<std::string>& args)
{
    return std::find(args.begin() + (args.empty() ? 0 : 1), args.end(), "--json") != args.end();
}

template <typename Command>
void execute(const Command& command, Report& report)
{
    try {
        command.run(report);
    } catch (const Error& e) {
        report.fail(std::string(to_string(e.kind())) + ": " + e.what());
    } catch (const std::exception& e) {
        report.fail(std::string("error: ") + e.what());
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Nörlund-sum calculus: symmetric integrals, difference quotients, inequality checks",
                 "norlund"};
    app.require_subcommand(1);

    EvalCommand eval;
    DiffCommand diff;
    CheckCommand check;
    eval.configure(*app.add_subcommand("eval", "Evaluate the alpha,beta-symmetric integral of f over [a,b]"));
    diff.configure(*app.add_subcommand("diff", "Evaluate a forward, backward or symmetric difference quotient"));
    check.configure(*app.add_subcommand("check", "Verify an inequality or identity numerically"));

    std::vector<const char*> argv{"norlund"};
    for (std::size_t i = 1; i < args.size(); ++i) argv.push_back(args[i].c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        Report report;
        for (const char* name : {"eval", "diff", "check"}) {
            if (std::find(args.begin(), args.end(), name) != args.end()) {
                report.command = name;
                break;
            }
        }
        report.fail(std::string("usage: ") + e.what());
        return emit(report, wants_json(args), out, err);
    }

    Report report;
    bool as_json = false;
    if (app.got_subcommand("eval")) {
        report.command = "eval";
        as_json = eval.flags.json;
        execute(eval, report);
    } else if (app.got_subcommand("diff")) {
        report.command = "diff";
        as_json = diff.json;
        execute(diff, report);
    } else {
        report.command = "check";
        as_json = check.flags.json;
        execute(check, report);
    }
    return emit(report, as_json, out, err);
}

} // namespace norlund::cli
