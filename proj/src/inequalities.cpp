#include "norlund/inequalities.hpp"

#include "norlund/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace norlund {

double violation_tolerance(double lhs, double rhs) noexcept
{
    return 1e-9 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

bool InequalityReport::all_hold() const noexcept
{
    return holds && std::all_of(clauses.begin(), clauses.end(),
                                [](const InequalityClause& c) { return c.holds; });
}

bool MvtReport::within_bounds() const noexcept
{
    if (degenerate) {
        return true;
    }
    const double slack = violation_tolerance(m, M);
    return m - slack <= K && K <= M + slack;
}

namespace {

void require_interval(double a, double b)
{
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        throw Error(ErrorKind::InvalidArgument, "inequality checks require finite a < b");
    }
}

void require_exponent(double p)
{
    if (!std::isfinite(p) || !(p > 1.0)) {
        std::ostringstream os;
        os << "exponent p must satisfy p > 1 (got " << p << ")";
        throw Error(ErrorKind::BadExponent, os.str());
    }
}

std::uint64_t samples_on_side(double lo, double hi, double step, GridDirection direction)
{
    const double anchor = direction == GridDirection::Forward ? lo : hi;
    const double target = direction == GridDirection::Forward ? hi : lo;
    if (const auto alignment = grid_align(anchor, target, step, direction)) {
        return alignment->k1;
    }
    return static_cast<std::uint64_t>(std::floor((hi - lo) / step)) + 1;
}

// Evaluates the symmetric integrals of one check and records their modes.
class Integrator {
public:
    Integrator(double a, double b, const StepPair& steps, IntegralMode mode, const SeriesConfig& cfg)
        : a_(a), b_(b), steps_(steps), mode_(mode), cfg_(cfg)
    {
        context_.a = a;
        context_.b = b;
        context_.alpha = steps.alpha();
        context_.beta = steps.beta();
        const bool forward_ok = !steps.has_forward() || grid_align(a, b, steps.alpha()).has_value();
        const bool backward_ok =
            !steps.has_backward() ||
            grid_align(b, a, steps.beta(), GridDirection::Backward).has_value();
        aligned_ = forward_ok && backward_ok;
    }

    double operator()(const std::string& name, const RealFunction& integrand)
    {
        try {
            const IntegralResult result = symmetric_integral(integrand, a_, b_, steps_, mode_, cfg_);
            context_.modes.push_back({name, result.mode_used});
            return result.value;
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::NotIntegrable && mode_ == IntegralMode::Auto && !aligned_) {
                throw Error(ErrorKind::NotAligned,
                            "endpoints are not grid-aligned and the series for " + name +
                                " did not converge: " + e.what());
            }
            throw;
        }
    }

    InequalityContext& context() noexcept { return context_; }

private:
    double a_;
    double b_;
    StepPair steps_;
    IntegralMode mode_;
    SeriesConfig cfg_;
    bool aligned_ = false;
    InequalityContext context_;
};

InequalityReport make_report(std::string name, double lhs, double rhs, InequalityContext context)
{
    InequalityReport report;
    report.name = std::move(name);
    report.lhs = lhs;
    report.rhs = rhs;
    report.margin = rhs - lhs;
    report.viol_tol = violation_tolerance(lhs, rhs);
    report.holds = report.margin >= -report.viol_tol;
    report.context = std::move(context);
    return report;
}

InequalityClause make_clause(std::string name, double lhs, double rhs)
{
    const double margin = rhs - lhs;
    return {std::move(name), lhs, rhs, margin, margin >= -violation_tolerance(lhs, rhs)};
}

double finite_sample(const RealFunction& f, double t, const char* name)
{
    const double value = f(t);
    if (!std::isfinite(value)) {
        std::ostringstream os;
        os << name << "(" << t << ") is not finite";
        throw Error(ErrorKind::NonFiniteValue, os.str());
    }
    return value;
}

} // namespace

std::vector<double> sample_points(double a, double b, const StepPair& steps)
{
    std::vector<double> points;
    if (!(a < b)) {
        return points;
    }
    if (steps.has_forward()) {
        const GridSpec grid{a, steps.alpha(), GridDirection::Forward};
        const auto count = samples_on_side(a, b, steps.alpha(), GridDirection::Forward);
        for (std::uint64_t k = 0; k < count; ++k) {
            points.push_back(grid.point(k));
        }
    }
    if (steps.has_backward()) {
        const GridSpec grid{b, steps.beta(), GridDirection::Backward};
        const auto count = samples_on_side(a, b, steps.beta(), GridDirection::Backward);
        for (std::uint64_t k = 0; k < count; ++k) {
            points.push_back(grid.point(k));
        }
    }
    return points;
}

InequalityReport holder_check(const RealFunction& f, const RealFunction& g, double a, double b,
                              const StepPair& steps, double p, IntegralMode mode,
                              const SeriesConfig& cfg)
{
    require_exponent(p);
    require_interval(a, b);
    const double q = p / (p - 1.0);
    Integrator integrate(a, b, steps, mode, cfg);

    const double product = integrate("|f*g|", [&](double t) { return std::abs(f(t) * g(t)); });
    const double f_norm = integrate("|f|^p", [&](double t) { return std::pow(std::abs(f(t)), p); });
    const double g_norm = integrate("|g|^q", [&](double t) { return std::pow(std::abs(g(t)), q); });

    integrate.context().p = p;
    integrate.context().q = q;
    return make_report("holder", product, std::pow(f_norm, 1.0 / p) * std::pow(g_norm, 1.0 / q),
                       std::move(integrate.context()));
}

InequalityReport cauchy_schwarz_check(const RealFunction& f, const RealFunction& g, double a,
                                      double b, const StepPair& steps, IntegralMode mode,
                                      const SeriesConfig& cfg)
{
    require_interval(a, b);
    Integrator integrate(a, b, steps, mode, cfg);

    const double product = integrate("|f*g|", [&](double t) { return std::abs(f(t) * g(t)); });
    const double f_square = integrate("|f|^2", [&](double t) { const double v = f(t); return v * v; });
    const double g_square = integrate("|g|^2", [&](double t) { const double v = g(t); return v * v; });

    integrate.context().p = 2.0;
    integrate.context().q = 2.0;
    return make_report("cauchy_schwarz", product, std::sqrt(f_square * g_square),
                       std::move(integrate.context()));
}

InequalityReport minkowski_check(const RealFunction& f, const RealFunction& g, double a, double b,
                                 const StepPair& steps, double p, IntegralMode mode,
                                 const SeriesConfig& cfg)
{
    require_exponent(p);
    require_interval(a, b);
    Integrator integrate(a, b, steps, mode, cfg);

    const double sum = integrate("|f+g|^p", [&](double t) { return std::pow(std::abs(f(t) + g(t)), p); });
    const double f_norm = integrate("|f|^p", [&](double t) { return std::pow(std::abs(f(t)), p); });
    const double g_norm = integrate("|g|^p", [&](double t) { return std::pow(std::abs(g(t)), p); });

    integrate.context().p = p;
    integrate.context().q = p / (p - 1.0);
    const double inv = 1.0 / p;
    return make_report("minkowski", std::pow(sum, inv),
                       std::pow(f_norm, inv) + std::pow(g_norm, inv),
                       std::move(integrate.context()));
}

MvtReport mvt_constant(const RealFunction& f, const RealFunction& g, double a, double b,
                       const StepPair& steps, IntegralMode mode, const SeriesConfig& cfg)
{
    require_interval(a, b);
    const std::vector<double> points = sample_points(a, b, steps);

    MvtReport report;
    report.m = std::numeric_limits<double>::infinity();
    report.M = -std::numeric_limits<double>::infinity();
    for (const double t : points) {
        const double weight = finite_sample(g, t, "g");
        if (weight < -violation_tolerance(weight, 0.0)) {
            std::ostringstream os;
            os << "weight g is negative at grid point t=" << t << " (g=" << weight << ")";
            throw Error(ErrorKind::NegativeWeight, os.str());
        }
        const double value = finite_sample(f, t, "f");
        report.m = std::min(report.m, value);
        report.M = std::max(report.M, value);
    }

    Integrator integrate(a, b, steps, mode, cfg);
    report.integral_g = integrate("g", g);
    report.integral_fg = integrate("f*g", [&](double t) { return f(t) * g(t); });
    report.degenerate = std::abs(report.integral_g) <= violation_tolerance(report.integral_g, 0.0);
    report.K = report.degenerate ? 0.0 : report.integral_fg / report.integral_g;
    report.context = std::move(integrate.context());
    return report;
}

InequalityReport comparison_check(const RealFunction& f, const RealFunction& g, double a, double b,
                                  const StepPair& steps, IntegralMode mode, const SeriesConfig& cfg)
{
    require_interval(a, b);
    for (const double t : sample_points(a, b, steps)) {
        const double bound = finite_sample(g, t, "g");
        const double value = finite_sample(f, t, "f");
        if (std::abs(value) > bound) {
            std::ostringstream os;
            os << "hypothesis |f| <= g fails at grid point t=" << t << " (|f|=" << std::abs(value)
               << ", g=" << bound << ")";
            throw HypothesisFailed(t, os.str());
        }
    }

    Integrator integrate(a, b, steps, mode, cfg);
    const double f_integral = integrate("f", f);
    const double g_integral = integrate("g", g);

    InequalityReport report =
        make_report("comparison", std::abs(f_integral), g_integral, std::move(integrate.context()));
    report.clauses.push_back(make_clause("nonnegativity", 0.0, g_integral));
    report.clauses.push_back(make_clause("monotonicity", f_integral, g_integral));
    return report;
}

} // namespace norlund
