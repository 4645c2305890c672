#pragma once

/**
 * @file inequalities.hpp
 * @brief Numerical checks of the inequalities satisfied by the symmetric integral.
 *
 * Each check evaluates the integrals on both sides of one inequality instance
 * and reports lhs, rhs and margin = rhs − lhs. An instance holds when
 * margin ≥ −viol_tol with viol_tol = 1e-9·max(1, |lhs|, |rhs|); the inequalities
 * are exact on aligned endpoints, so anything beyond that is rounding.
 *
 * The grid 𝒜 ∪ ℬ sampled by the hypothesis checks is {a+kα} ∩ [a, b) together
 * with {b−kβ} ∩ (a, b]: exactly the points a telescoped integral reads.
 */

#include "norlund/integrals.hpp"

#include <optional>
#include <string>
#include <vector>

namespace norlund {

double violation_tolerance(double lhs, double rhs) noexcept;

struct IntegralUse {
    std::string integrand;
    IntegralMode mode;
};

struct InequalityContext {
    double a = 0.0;
    double b = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    std::optional<double> p;
    std::optional<double> q;
    std::vector<IntegralUse> modes;
};

/// A secondary clause checked in the same run (comparison theorem corollaries).
struct InequalityClause {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool holds = false;
};

struct InequalityReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    double viol_tol = 0.0;
    bool holds = false;
    InequalityContext context;
    std::vector<InequalityClause> clauses;

    bool all_hold() const noexcept;
};

struct MvtReport {
    double K = 0.0;
    double m = 0.0;
    double M = 0.0;
    bool degenerate = false;
    double integral_fg = 0.0;
    double integral_g = 0.0;
    InequalityContext context;

    /// m ≤ K ≤ M within viol_tol, or the degenerate branch.
    bool within_bounds() const noexcept;
};

/// Grid points of 𝒜 ∪ ℬ inside [a, b], forward points first. Unaligned
/// endpoints keep every grid point that falls in the half-open range.
std::vector<double> sample_points(double a, double b, const StepPair& steps);

/// ∫|fg| ≤ (∫|f|^p)^{1/p} (∫|g|^q)^{1/q}, q = p/(p−1). Throws BadExponent for p ≤ 1.
InequalityReport holder_check(const RealFunction& f, const RealFunction& g, double a, double b,
                              const StepPair& steps, double p,
                              IntegralMode mode = IntegralMode::Auto, const SeriesConfig& cfg = {});

/// ∫|fg| ≤ √(∫|f|² · ∫|g|²).
InequalityReport cauchy_schwarz_check(const RealFunction& f, const RealFunction& g, double a,
                                      double b, const StepPair& steps,
                                      IntegralMode mode = IntegralMode::Auto,
                                      const SeriesConfig& cfg = {});

/// (∫|f+g|^p)^{1/p} ≤ (∫|f|^p)^{1/p} + (∫|g|^p)^{1/p}.
InequalityReport minkowski_check(const RealFunction& f, const RealFunction& g, double a, double b,
                                 const StepPair& steps, double p,
                                 IntegralMode mode = IntegralMode::Auto,
                                 const SeriesConfig& cfg = {});

/// K = ∫fg / ∫g with m, M the extrema of f over the sampled grid. A vanishing
/// ∫g gives degenerate = true and K = 0. Throws NegativeWeight if g < 0 on the grid.
MvtReport mvt_constant(const RealFunction& f, const RealFunction& g, double a, double b,
                       const StepPair& steps, IntegralMode mode = IntegralMode::Auto,
                       const SeriesConfig& cfg = {});

/// |∫f| ≤ ∫g given |f| ≤ g on the grid, plus the clauses 0 ≤ ∫g and ∫f ≤ ∫g.
/// Throws HypothesisFailed at the first grid point with |f(t)| > g(t).
InequalityReport comparison_check(const RealFunction& f, const RealFunction& g, double a, double b,
                                  const StepPair& steps, IntegralMode mode = IntegralMode::Auto,
                                  const SeriesConfig& cfg = {});

} // namespace norlund
