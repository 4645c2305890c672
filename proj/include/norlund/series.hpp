#pragma once

/**
 * @file series.hpp
 * @brief Summation of infinite series Σ_{k≥0} a_k with tail control.
 *
 * Terms are accumulated strictly in index order with Neumaier-compensated
 * addition. After `warmup` terms every new term triggers a check on a window
 * of the latest terms, split into an older and a newer half of about
 * `stall_window`/2 terms each. With P_old and P_new the peak magnitudes of the
 * halves, d the distance between the peaks and n the index of P_new:
 *
 *   - tail estimate: the larger of a ratio bound P_new·ρ/(1−ρ) with
 *     ρ = (P_new/P_old)^{1/d}, and an integral-comparison bound P_new·n/(s−1)
 *     for terms decaying like n^−s, s fitted to the two peaks. Either one is
 *     +∞ when its rate is not summable (ρ ≥ 1 or s ≤ 1).
 *   - convergence: tail estimate ≤ tol.
 *   - divergence: |a_k| failed to decrease over `stall_window` consecutive
 *     checks while still above tol.
 *
 * A window whose older or newer half is entirely zero, while the other is
 * not, yields an infinite tail; an all-zero window yields 0.
 */

#include <cstddef>
#include <functional>
#include <string_view>

namespace norlund {

struct SeriesConfig {
    double tol = 1e-12;
    std::size_t max_terms = 1'000'000;
    std::size_t warmup = 16;
    std::size_t stall_window = 32;

    /// Throws Error(InvalidArgument) unless tol > 0, max_terms ≥ warmup ≥ 1, stall_window ≥ 1.
    void validate() const;
};

enum class SeriesVerdict { Converged, TruncationLimit, Divergent };

std::string_view to_string(SeriesVerdict verdict) noexcept;

struct SeriesResult {
    double value = 0.0;
    std::size_t terms_used = 0;
    double tail_estimate = 0.0;
    SeriesVerdict verdict = SeriesVerdict::TruncationLimit;

    bool converged() const noexcept { return verdict == SeriesVerdict::Converged; }

    friend bool operator==(const SeriesResult&, const SeriesResult&) = default;
};

using SeriesTerm = std::function<double(std::size_t)>;

/// Sums term(0), term(1), ... under `cfg`. The value is the compensated partial
/// sum in every verdict. Throws NonFiniteTerm on a NaN/±∞ term.
SeriesResult sum_series(const SeriesTerm& term, const SeriesConfig& cfg = {});

/// Neumaier's variant of Kahan summation; also correct when the addend is
/// larger in magnitude than the running sum.
class CompensatedSum {
public:
    void add(double value) noexcept;
    double value() const noexcept { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

} // namespace norlund
