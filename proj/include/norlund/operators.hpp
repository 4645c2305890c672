#pragma once

#include <cstdint>
#include <functional>
#include <optional>

namespace norlund {

/// An evaluable real function of one real variable.
using RealFunction = std::function<double(double)>;

/// Step sizes (α, β) of the symmetric calculus: both ≥ 0, not both zero.
/// A zero step switches its side off entirely.
class StepPair {
public:
    /// Throws Error(InvalidArgument) unless alpha ≥ 0, beta ≥ 0, alpha + beta > 0, both finite.
    StepPair(double alpha, double beta);

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    double sum() const noexcept { return alpha_ + beta_; }
    double forward_weight() const noexcept { return alpha_ / (alpha_ + beta_); }
    double backward_weight() const noexcept { return beta_ / (alpha_ + beta_); }

    bool has_forward() const noexcept { return alpha_ > 0.0; }
    bool has_backward() const noexcept { return beta_ > 0.0; }

private:
    double alpha_;
    double beta_;
};

enum class GridDirection { Forward, Backward };

/// {anchor + k·step} for Forward, {anchor − k·step} for Backward, k ∈ ℕ₀.
struct GridSpec {
    double anchor;
    double step;
    GridDirection direction;

    double point(std::uint64_t k) const noexcept;
};

struct GridAlignment {
    std::uint64_t k1 = 0;
    /// Signed alignment defect in units of the step.
    double residual = 0.0;
};

/// Tolerance on |residual| for grid_align, in step units.
inline constexpr double eps_grid = 1e-9;

/// (f(t+α) − f(t)) / α. Throws ZeroStep for α = 0 and NonFiniteValue when an
/// evaluation is not finite.
double forward_difference(const RealFunction& f, double t, double alpha);

/// (f(t) − f(t−β)) / β.
double backward_difference(const RealFunction& f, double t, double beta);

/// (f(t+α) − f(t−β)) / (α+β); reduces to the one-sided quotients when a step is 0.
double symmetric_difference(const RealFunction& f, double t, const StepPair& steps);

/// Number of steps from anchor to target along the grid, if target lies on it.
std::optional<GridAlignment> grid_align(double anchor, double target, double step,
                                        GridDirection direction = GridDirection::Forward);

} // namespace norlund
