#pragma once

/**
 * @file integrals.hpp
 * @brief Forward (Nörlund), backward and α,β-symmetric sums.
 *
 * Forward integral of f from a to b with step α:
 *
 *     ∫_a^b f Δ_α t = α Σ_{k≥0} f(a+kα) − α Σ_{k≥0} f(b+kα)
 *
 * Backward integral with step β:
 *
 *     ∫_a^b f ∇_β t = β Σ_{k≥0} f(b−kβ) − β Σ_{k≥0} f(a−kβ)
 *
 * Symmetric integral: α/(α+β)·forward + β/(α+β)·backward, with a zero step
 * dropping its side without evaluating it.
 *
 * Strict mode evaluates both infinite series and requires each to converge.
 * Telescoped mode requires b = a + k₁α (forward) or a = b − k₂β (backward) and
 * evaluates the finite sum left after the two series cancel, α Σ_{k<k₁} f(a+kα)
 * or β Σ_{k<k₂} f(b−kβ), in plain left-to-right order. Auto picks Telescoped
 * whenever the side is aligned. Reversed endpoints (a > b) are handled by
 * negating the integral over [b, a].
 */

#include "norlund/operators.hpp"
#include "norlund/series.hpp"

#include <optional>
#include <string_view>

namespace norlund {

enum class IntegralMode { Strict, Telescoped, Auto };

std::string_view to_string(IntegralMode mode) noexcept;
std::optional<IntegralMode> parse_mode(std::string_view text) noexcept;

/// The two series of a Strict side, at the lower and upper endpoint of the
/// ordered interval.
struct SeriesPair {
    SeriesResult lower;
    SeriesResult upper;

    double tail() const noexcept { return lower.tail_estimate + upper.tail_estimate; }
};

struct IntegralResult {
    double value = 0.0;
    /// Strict if any active side ran Strict, else Telescoped. Never Auto.
    IntegralMode mode_used = IntegralMode::Telescoped;
    std::optional<IntegralMode> forward_mode;
    std::optional<IntegralMode> backward_mode;
    std::optional<SeriesPair> forward_diag;
    std::optional<SeriesPair> backward_diag;
    std::optional<GridAlignment> forward_alignment;
    std::optional<GridAlignment> backward_alignment;

    bool mixed_modes() const noexcept
    {
        return forward_mode && backward_mode && *forward_mode != *backward_mode;
    }
    /// Sum of the tail estimates of every series involved (0 when none).
    double tail() const noexcept;
};

/// α Σ_{k≥0} f(x+kα).
SeriesResult forward_integral_to_infinity(const RealFunction& f, double x, double alpha,
                                          const SeriesConfig& cfg = {});

/// β Σ_{k≥0} f(x−kβ).
SeriesResult backward_integral_from_minus_infinity(const RealFunction& f, double x, double beta,
                                                   const SeriesConfig& cfg = {});

/// Throws NotIntegrable when a Strict series does not converge and NotAligned
/// when Telescoped is requested for unaligned endpoints.
IntegralResult forward_integral(const RealFunction& f, double a, double b, double alpha,
                                IntegralMode mode = IntegralMode::Auto,
                                const SeriesConfig& cfg = {});

IntegralResult backward_integral(const RealFunction& f, double a, double b, double beta,
                                 IntegralMode mode = IntegralMode::Auto,
                                 const SeriesConfig& cfg = {});

/// In Auto mode the two sides resolve independently.
IntegralResult symmetric_integral(const RealFunction& f, double a, double b, const StepPair& steps,
                                  IntegralMode mode = IntegralMode::Auto,
                                  const SeriesConfig& cfg = {});

/// x ↦ ∫_a^x f Δ_α t in Auto mode; errors surface when the result is evaluated.
RealFunction antiderivative(RealFunction f, double a, double alpha, SeriesConfig cfg = {});

struct FtcResiduals {
    /// max_x |Δ_α[F](x) − f(x)| over x = a + kα, 0 ≤ k ≤ k₁.
    double derivative = 0.0;
    /// |∫_a^b Δ_α[f] Δ_α t − (f(b) − f(a))|.
    double integral = 0.0;
};

/// Requires a ≤ b. When b is not aligned with a the sample count is ⌊(b−a)/α⌋.
FtcResiduals ftc_residuals(const RealFunction& f, double a, double b, double alpha,
                           const SeriesConfig& cfg = {});

/// |∫_a^b f Δ_α[g] Δ_α t − (f g|_a^b − ∫_a^b Δ_α[f](t) g(t+α) Δ_α t)|, Auto mode.
double integration_by_parts_residual(const RealFunction& f, const RealFunction& g, double a,
                                     double b, double alpha, const SeriesConfig& cfg = {});

/// f on the closed interval [lo, hi], 0 outside. A missing bound is unbounded.
RealFunction zero_extension(RealFunction f, std::optional<double> lo, std::optional<double> hi);

} // namespace norlund
