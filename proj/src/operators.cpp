#include "norlund/operators.hpp"

#include "norlund/error.hpp"

#include <cmath>
#include <sstream>

namespace norlund {

namespace {

double checked_eval(const RealFunction& f, double t)
{
    const double value = f(t);
    if (!std::isfinite(value)) {
        std::ostringstream os;
        os << "function value at t=" << t << " is not finite (" << value << ")";
        throw Error(ErrorKind::NonFiniteValue, os.str());
    }
    return value;
}

void require_step(double step, const char* name)
{
    if (step == 0.0) {
        throw Error(ErrorKind::ZeroStep, std::string(name) + " must be nonzero");
    }
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw Error(ErrorKind::InvalidArgument, std::string(name) + " must be positive and finite");
    }
}

} // namespace

StepPair::StepPair(double alpha, double beta) : alpha_(alpha), beta_(beta)
{
    if (!std::isfinite(alpha) || !std::isfinite(beta) || alpha < 0.0 || beta < 0.0) {
        throw Error(ErrorKind::InvalidArgument, "alpha and beta must be finite and nonnegative");
    }
    if (!(alpha + beta > 0.0)) {
        throw Error(ErrorKind::ZeroStep, "alpha and beta may not both be zero");
    }
}

double GridSpec::point(std::uint64_t k) const noexcept
{
    const double offset = static_cast<double>(k) * step;
    return direction == GridDirection::Forward ? anchor + offset : anchor - offset;
}

double forward_difference(const RealFunction& f, double t, double alpha)
{
    require_step(alpha, "alpha");
    return (checked_eval(f, t + alpha) - checked_eval(f, t)) / alpha;
}

double backward_difference(const RealFunction& f, double t, double beta)
{
    require_step(beta, "beta");
    return (checked_eval(f, t) - checked_eval(f, t - beta)) / beta;
}

double symmetric_difference(const RealFunction& f, double t, const StepPair& steps)
{
    return (checked_eval(f, t + steps.alpha()) - checked_eval(f, t - steps.beta())) / steps.sum();
}

std::optional<GridAlignment> grid_align(double anchor, double target, double step,
                                        GridDirection direction)
{
    require_step(step, "grid step");
    const double distance = direction == GridDirection::Forward ? target - anchor : anchor - target;
    const double steps = distance / step;
    // Beyond 2^53 consecutive integers are no longer representable.
    if (!std::isfinite(steps) || steps > 9007199254740992.0) {
        return std::nullopt;
    }
    const double k1 = std::round(steps);
    const double residual = steps - k1;
    if (k1 < 0.0 || std::abs(residual) > eps_grid) {
        return std::nullopt;
    }
    return GridAlignment{static_cast<std::uint64_t>(k1), residual};
}

} // namespace norlund
