#include "norlund/integrals.hpp"

#include "norlund/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace norlund {

std::string_view to_string(IntegralMode mode) noexcept
{
    switch (mode) {
        case IntegralMode::Strict: return "strict";
        case IntegralMode::Telescoped: return "telescoped";
        case IntegralMode::Auto: return "auto";
    }
    return "unknown";
}

std::optional<IntegralMode> parse_mode(std::string_view text) noexcept
{
    if (text == "strict") return IntegralMode::Strict;
    if (text == "telescoped") return IntegralMode::Telescoped;
    if (text == "auto") return IntegralMode::Auto;
    return std::nullopt;
}

double IntegralResult::tail() const noexcept
{
    double total = 0.0;
    if (forward_diag) total += forward_diag->tail();
    if (backward_diag) total += backward_diag->tail();
    return total;
}

namespace {

// One side of a symmetric integral, over an ordered interval lo ≤ hi.
struct SideResult {
    double value = 0.0;
    IntegralMode mode = IntegralMode::Telescoped;
    std::optional<SeriesPair> diag;
    std::optional<GridAlignment> alignment;
};

void require_positive_step(double step, const char* name)
{
    if (step == 0.0) {
        throw Error(ErrorKind::ZeroStep, std::string(name) + " must be nonzero");
    }
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw Error(ErrorKind::InvalidArgument, std::string(name) + " must be positive and finite");
    }
}

void require_finite_endpoints(double a, double b)
{
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw Error(ErrorKind::InvalidArgument, "integration endpoints must be finite");
    }
}

double telescoped_sum(const RealFunction& f, const GridSpec& grid, std::uint64_t count)
{
    double total = 0.0;
    for (std::uint64_t k = 0; k < count; ++k) {
        const double t = grid.point(k);
        const double value = f(t);
        if (!std::isfinite(value)) {
            std::ostringstream os;
            os << "function value at t=" << t << " is not finite (" << value << ")";
            throw Error(ErrorKind::NonFiniteValue, os.str());
        }
        total += value;
    }
    return grid.step * total;
}

void require_converged(const SeriesResult& series, const char* side, double x)
{
    if (series.converged()) {
        return;
    }
    std::ostringstream os;
    os << "f is not " << side << "-integrable: series at x=" << x << " ended "
       << to_string(series.verdict) << " after " << series.terms_used << " terms (tail estimate "
       << series.tail_estimate << ")";
    throw Error(ErrorKind::NotIntegrable, os.str());
}

std::string not_aligned_message(const char* side, double lo, double hi, double step)
{
    std::ostringstream os;
    os << "telescoped " << side << " integral needs grid-aligned endpoints; " << hi << " - " << lo
       << " is not a multiple of " << step;
    return os.str();
}

SideResult forward_side(const RealFunction& f, double lo, double hi, double alpha,
                        IntegralMode mode, const SeriesConfig& cfg)
{
    SideResult side;
    const auto alignment = grid_align(lo, hi, alpha, GridDirection::Forward);
    if (mode == IntegralMode::Telescoped && !alignment) {
        throw Error(ErrorKind::NotAligned, not_aligned_message("forward", lo, hi, alpha));
    }
    if (lo == hi) {
        side.mode = mode == IntegralMode::Strict ? IntegralMode::Strict : IntegralMode::Telescoped;
        if (side.mode == IntegralMode::Telescoped) side.alignment = alignment;
        return side;
    }
    if (mode != IntegralMode::Strict && alignment) {
        side.mode = IntegralMode::Telescoped;
        side.alignment = alignment;
        side.value = telescoped_sum(f, {lo, alpha, GridDirection::Forward}, alignment->k1);
        return side;
    }
    SeriesPair diag{forward_integral_to_infinity(f, lo, alpha, cfg),
                    forward_integral_to_infinity(f, hi, alpha, cfg)};
    require_converged(diag.lower, "alpha-forward", lo);
    require_converged(diag.upper, "alpha-forward", hi);
    side.mode = IntegralMode::Strict;
    side.value = diag.lower.value - diag.upper.value;
    side.diag = diag;
    return side;
}

SideResult backward_side(const RealFunction& f, double lo, double hi, double beta,
                         IntegralMode mode, const SeriesConfig& cfg)
{
    SideResult side;
    const auto alignment = grid_align(hi, lo, beta, GridDirection::Backward);
    if (mode == IntegralMode::Telescoped && !alignment) {
        throw Error(ErrorKind::NotAligned, not_aligned_message("backward", lo, hi, beta));
    }
    if (lo == hi) {
        side.mode = mode == IntegralMode::Strict ? IntegralMode::Strict : IntegralMode::Telescoped;
        if (side.mode == IntegralMode::Telescoped) side.alignment = alignment;
        return side;
    }
    if (mode != IntegralMode::Strict && alignment) {
        side.mode = IntegralMode::Telescoped;
        side.alignment = alignment;
        side.value = telescoped_sum(f, {hi, beta, GridDirection::Backward}, alignment->k1);
        return side;
    }
    SeriesPair diag{backward_integral_from_minus_infinity(f, lo, beta, cfg),
                    backward_integral_from_minus_infinity(f, hi, beta, cfg)};
    require_converged(diag.lower, "beta-backward", lo);
    require_converged(diag.upper, "beta-backward", hi);
    side.mode = IntegralMode::Strict;
    side.value = diag.upper.value - diag.lower.value;
    side.diag = diag;
    return side;
}

template <typename Side>
SideResult oriented(Side&& side, double a, double b)
{
    if (a <= b) {
        return side(a, b);
    }
    SideResult result = side(b, a);
    result.value = -result.value;
    return result;
}

} // namespace

SeriesResult forward_integral_to_infinity(const RealFunction& f, double x, double alpha,
                                          const SeriesConfig& cfg)
{
    require_positive_step(alpha, "alpha");
    return sum_series(
        [&](std::size_t k) { return alpha * f(x + static_cast<double>(k) * alpha); }, cfg);
}

SeriesResult backward_integral_from_minus_infinity(const RealFunction& f, double x, double beta,
                                                   const SeriesConfig& cfg)
{
    require_positive_step(beta, "beta");
    return sum_series(
        [&](std::size_t k) { return beta * f(x - static_cast<double>(k) * beta); }, cfg);
}

IntegralResult forward_integral(const RealFunction& f, double a, double b, double alpha,
                                IntegralMode mode, const SeriesConfig& cfg)
{
    require_positive_step(alpha, "alpha");
    require_finite_endpoints(a, b);
    cfg.validate();
    SideResult side = oriented(
        [&](double lo, double hi) { return forward_side(f, lo, hi, alpha, mode, cfg); }, a, b);

    IntegralResult result;
    result.value = side.value;
    result.mode_used = side.mode;
    result.forward_mode = side.mode;
    result.forward_diag = side.diag;
    result.forward_alignment = side.alignment;
    return result;
}

IntegralResult backward_integral(const RealFunction& f, double a, double b, double beta,
                                 IntegralMode mode, const SeriesConfig& cfg)
{
    require_positive_step(beta, "beta");
    require_finite_endpoints(a, b);
    cfg.validate();
    SideResult side = oriented(
        [&](double lo, double hi) { return backward_side(f, lo, hi, beta, mode, cfg); }, a, b);

    IntegralResult result;
    result.value = side.value;
    result.mode_used = side.mode;
    result.backward_mode = side.mode;
    result.backward_diag = side.diag;
    result.backward_alignment = side.alignment;
    return result;
}

IntegralResult symmetric_integral(const RealFunction& f, double a, double b, const StepPair& steps,
                                  IntegralMode mode, const SeriesConfig& cfg)
{
    std::optional<IntegralResult> forward;
    std::optional<IntegralResult> backward;
    if (steps.has_forward()) {
        forward = forward_integral(f, a, b, steps.alpha(), mode, cfg);
    }
    if (steps.has_backward()) {
        backward = backward_integral(f, a, b, steps.beta(), mode, cfg);
    }

    IntegralResult result;
    if (forward && backward) {
        result.value = steps.forward_weight() * forward->value + steps.backward_weight() * backward->value;
    } else if (forward) {
        result.value = steps.forward_weight() * forward->value;
    } else {
        result.value = steps.backward_weight() * backward->value;
    }
    const bool any_strict = (forward && forward->mode_used == IntegralMode::Strict) ||
                            (backward && backward->mode_used == IntegralMode::Strict);
    result.mode_used = any_strict ? IntegralMode::Strict : IntegralMode::Telescoped;
    if (forward) {
        result.forward_mode = forward->mode_used;
        result.forward_diag = forward->forward_diag;
        result.forward_alignment = forward->forward_alignment;
    }
    if (backward) {
        result.backward_mode = backward->mode_used;
        result.backward_diag = backward->backward_diag;
        result.backward_alignment = backward->backward_alignment;
    }
    return result;
}

RealFunction antiderivative(RealFunction f, double a, double alpha, SeriesConfig cfg)
{
    require_positive_step(alpha, "alpha");
    cfg.validate();
    return [f = std::move(f), a, alpha, cfg](double x) {
        return forward_integral(f, a, x, alpha, IntegralMode::Auto, cfg).value;
    };
}

FtcResiduals ftc_residuals(const RealFunction& f, double a, double b, double alpha,
                           const SeriesConfig& cfg)
{
    require_positive_step(alpha, "alpha");
    require_finite_endpoints(a, b);
    if (a > b) {
        throw Error(ErrorKind::InvalidArgument, "ftc_residuals requires a <= b");
    }
    const auto alignment = grid_align(a, b, alpha);
    const std::uint64_t samples =
        alignment ? alignment->k1 : static_cast<std::uint64_t>(std::floor((b - a) / alpha));

    const RealFunction F = antiderivative(f, a, alpha, cfg);
    const GridSpec grid{a, alpha, GridDirection::Forward};
    FtcResiduals residuals;
    for (std::uint64_t k = 0; k <= samples; ++k) {
        const double x = grid.point(k);
        const double defect = std::abs(forward_difference(F, x, alpha) - f(x));
        residuals.derivative = std::max(residuals.derivative, defect);
    }

    const RealFunction difference = [&](double t) { return forward_difference(f, t, alpha); };
    const double lhs = forward_integral(difference, a, b, alpha, IntegralMode::Auto, cfg).value;
    residuals.integral = std::abs(lhs - (f(b) - f(a)));
    return residuals;
}

double integration_by_parts_residual(const RealFunction& f, const RealFunction& g, double a,
                                     double b, double alpha, const SeriesConfig& cfg)
{
    require_positive_step(alpha, "alpha");
    const RealFunction left_integrand = [&](double t) {
        return f(t) * forward_difference(g, t, alpha);
    };
    const RealFunction right_integrand = [&](double t) {
        return forward_difference(f, t, alpha) * g(t + alpha);
    };
    const double lhs = forward_integral(left_integrand, a, b, alpha, IntegralMode::Auto, cfg).value;
    const double boundary = f(b) * g(b) - f(a) * g(a);
    const double rhs =
        boundary - forward_integral(right_integrand, a, b, alpha, IntegralMode::Auto, cfg).value;
    return std::abs(lhs - rhs);
}

RealFunction zero_extension(RealFunction f, std::optional<double> lo, std::optional<double> hi)
{
    if (lo && hi && *lo > *hi) {
        throw Error(ErrorKind::InvalidArgument, "zero_extension requires lo <= hi");
    }
    return [f = std::move(f), lo, hi](double t) {
        if ((lo && t < *lo) || (hi && t > *hi)) {
            return 0.0;
        }
        return f(t);
    };
}

} // namespace norlund
