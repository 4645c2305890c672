#include "norlund/series.hpp"

#include "norlund/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <vector>

namespace norlund {

void SeriesConfig::validate() const
{
    if (!(tol > 0.0) || !std::isfinite(tol)) {
        throw Error(ErrorKind::InvalidArgument, "series tolerance must be positive and finite");
    }
    if (warmup < 1) {
        throw Error(ErrorKind::InvalidArgument, "series warmup must be at least 1");
    }
    if (max_terms < warmup) {
        throw Error(ErrorKind::InvalidArgument, "series max_terms must be at least warmup");
    }
    if (stall_window < 1) {
        throw Error(ErrorKind::InvalidArgument, "series stall_window must be at least 1");
    }
}

std::string_view to_string(SeriesVerdict verdict) noexcept
{
    switch (verdict) {
        case SeriesVerdict::Converged: return "Converged";
        case SeriesVerdict::TruncationLimit: return "TruncationLimit";
        case SeriesVerdict::Divergent: return "Divergent";
    }
    return "Unknown";
}

void CompensatedSum::add(double value) noexcept
{
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
        compensation_ += (sum_ - t) + value;
    } else {
        compensation_ += (value - t) + sum_;
    }
    sum_ = t;
}

namespace {

constexpr double infinity = std::numeric_limits<double>::infinity();

// Magnitudes of the most recent terms, split into an older and a newer half.
// Rates come from the peak magnitude of each half, so isolated small or zero
// terms do not set the rate.
class MagnitudeWindow {
public:
    struct Peak {
        double magnitude = 0.0;
        double index = 0.0; // 1-based position in the series
    };

    struct Halves {
        Peak older;
        Peak newer;
        bool all_zero = true;
    };

    explicit MagnitudeWindow(std::size_t stall_window)
        : half_(std::max<std::size_t>(1, (stall_window + 1) / 2)), ring_(2 * half_, 0.0)
    {
    }

    void push(double magnitude)
    {
        const std::size_t slot = count_ % ring_.size();
        if (count_ >= ring_.size()) {
            nonzero_ -= ring_[slot] != 0.0;
        }
        ring_[slot] = magnitude;
        nonzero_ += magnitude != 0.0;
        ++count_;

        const Peak peak{magnitude, static_cast<double>(count_)};
        push_back(newer_, peak);
        if (count_ > half_) {
            const double leaving = static_cast<double>(count_ - half_);
            if (newer_.front().index <= leaving) {
                newer_.pop_front();
            }
            push_back(older_, {ring_[(count_ - half_ - 1) % ring_.size()], leaving});
        }
        if (count_ > 2 * half_ && older_.front().index <= static_cast<double>(count_ - 2 * half_)) {
            older_.pop_front();
        }
    }

    // Requires at least two terms.
    Halves halves() const noexcept
    {
        if (count_ >= 2 * half_) {
            return {older_.front(), newer_.front(), nonzero_ == 0};
        }
        const std::size_t h = count_ / 2;
        Halves result;
        for (std::size_t back = 0; back < 2 * h; ++back) {
            const std::size_t position = count_ - back;
            const double magnitude = ring_[(position - 1) % ring_.size()];
            Peak& peak = back < h ? result.newer : result.older;
            if (peak.index == 0.0 || magnitude > peak.magnitude) {
                peak = {magnitude, static_cast<double>(position)};
            }
            result.all_zero = result.all_zero && magnitude == 0.0;
        }
        return result;
    }

    std::size_t count() const noexcept { return count_; }

private:
    // Sliding maximum; ties keep the newest entry.
    static void push_back(std::deque<Peak>& queue, const Peak& peak)
    {
        while (!queue.empty() && queue.back().magnitude <= peak.magnitude) {
            queue.pop_back();
        }
        queue.push_back(peak);
    }

    std::size_t half_;
    std::vector<double> ring_;
    std::size_t count_ = 0;
    std::size_t nonzero_ = 0;
    std::deque<Peak> newer_;
    std::deque<Peak> older_;
};

struct TailInputs {
    double newest;  // peak magnitude of the newer half
    double oldest;  // peak magnitude of the older half
    double steps;   // distance between the two peaks
    double index;   // 1-based position of the newer peak
};

// Cheap lower bound on exact_tail(), from ln(1/R) <= 1/R - 1 and
// ln(n/(n-d)) >= d/n. Used to skip transcendental work far from convergence.
double tail_lower_bound(const TailInputs& in)
{
    const double ratio = in.newest / in.oldest;
    if (!(ratio < 1.0)) {
        return infinity;
    }
    const double x = 1.0 / ratio - 1.0;
    double bound = 0.0;
    if (x < in.steps) {
        bound = in.newest * (in.steps / x - 1.0);
    }
    const double s_upper = x * in.index / in.steps;
    if (!(s_upper > 1.0)) {
        return infinity;
    }
    return std::max(bound, in.newest * in.index / (s_upper - 1.0));
}

double exact_tail(const TailInputs& in)
{
    const double log_ratio = std::log(in.newest / in.oldest);
    if (!(log_ratio < 0.0)) {
        return infinity;
    }
    const double per_step = log_ratio / in.steps;
    const double rho = std::exp(per_step);
    const double geometric = in.newest * rho / -std::expm1(per_step);

    const double lower_index = in.index - in.steps;
    const double decay_exponent = -log_ratio / std::log1p(in.steps / lower_index);
    const double power_law = decay_exponent > 1.0 ? in.newest * in.index / (decay_exponent - 1.0)
                                                  : infinity;
    return std::max(geometric, power_law);
}

enum class WindowState { AllZero, Indeterminate, Rated };

struct Assessment {
    WindowState state = WindowState::Indeterminate;
    TailInputs inputs{};
};

Assessment assess(const MagnitudeWindow& window)
{
    if (window.count() < 2) {
        return {};
    }
    const auto halves = window.halves();
    if (halves.all_zero) {
        return {WindowState::AllZero, {}};
    }
    if (halves.newer.magnitude == 0.0 || halves.older.magnitude == 0.0) {
        return {WindowState::Indeterminate, {}};
    }
    return {WindowState::Rated,
            {halves.newer.magnitude, halves.older.magnitude,
             halves.newer.index - halves.older.index, halves.newer.index}};
}

double final_tail(const MagnitudeWindow& window)
{
    const Assessment a = assess(window);
    switch (a.state) {
        case WindowState::AllZero: return 0.0;
        case WindowState::Indeterminate: return infinity;
        case WindowState::Rated: return exact_tail(a.inputs);
    }
    return infinity;
}

} // namespace

SeriesResult sum_series(const SeriesTerm& term, const SeriesConfig& cfg)
{
    cfg.validate();

    MagnitudeWindow window(cfg.stall_window);
    CompensatedSum sum;
    std::size_t stalled_checks = 0;
    double previous = 0.0;

    for (std::size_t k = 0; k < cfg.max_terms; ++k) {
        const double a = term(k);
        if (!std::isfinite(a)) {
            throw NonFiniteTerm(k, a);
        }
        sum.add(a);
        const double magnitude = std::abs(a);
        window.push(magnitude);
        const std::size_t terms = k + 1;

        if (terms >= cfg.warmup) {
            const Assessment assessment = assess(window);
            const bool converged =
                assessment.state == WindowState::AllZero ||
                (assessment.state == WindowState::Rated &&
                 tail_lower_bound(assessment.inputs) <= cfg.tol &&
                 exact_tail(assessment.inputs) <= cfg.tol);
            if (converged) {
                return {sum.value(), terms, final_tail(window), SeriesVerdict::Converged};
            }

            stalled_checks = (k > 0 && magnitude >= previous) ? stalled_checks + 1 : 0;
            if (stalled_checks >= cfg.stall_window && magnitude > cfg.tol) {
                return {sum.value(), terms, final_tail(window), SeriesVerdict::Divergent};
            }
        }
        previous = magnitude;
    }
    return {sum.value(), cfg.max_terms, final_tail(window), SeriesVerdict::TruncationLimit};
}

} // namespace norlund
