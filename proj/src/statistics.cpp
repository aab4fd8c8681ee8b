#include "mcnull/statistics.hpp"

#include "mcnull/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mcnull {
namespace {

void check_binomial_args(std::int64_t t, std::int64_t n, double p) {
    if (n < 0 || t < 0 || t > n) {
        throw ValidationError("binomial tail needs 0 <= t <= n (t=" + std::to_string(t) + ", n=" + std::to_string(n) + ")");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ValidationError("binomial probability must lie in [0, 1]");
    }
}

// log pmf(k) - log pmf(mode), built by the ratio recurrence so that no
// lgamma error enters; tails are normalized by the full sum afterwards.
std::vector<double> relative_log_pmf(std::int64_t n, double p) {
    std::vector<double> logw(static_cast<std::size_t>(n + 1));
    const auto mode = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor((n + 1) * p)), 0, n);
    const double log_odds = std::log(p) - std::log1p(-p);
    logw[static_cast<std::size_t>(mode)] = 0.0;
    for (std::int64_t k = mode + 1; k <= n; ++k) {
        logw[static_cast<std::size_t>(k)] = logw[static_cast<std::size_t>(k - 1)] +
                                            std::log(static_cast<double>(n - k + 1) / static_cast<double>(k)) + log_odds;
    }
    for (std::int64_t k = mode - 1; k >= 0; --k) {
        logw[static_cast<std::size_t>(k)] = logw[static_cast<std::size_t>(k + 1)] +
                                            std::log(static_cast<double>(k + 1) / static_cast<double>(n - k)) - log_odds;
    }
    return logw;
}

double log_sum_exp(std::span<const double> xs) {
    if (xs.empty()) {
        return -std::numeric_limits<double>::infinity();
    }
    const double m = *std::max_element(xs.begin(), xs.end());
    double s = 0.0;
    for (double x : xs) {
        s += std::exp(x - m);
    }
    return m + std::log(s);
}

// P(lo <= T <= hi)
double binomial_range(std::int64_t lo, std::int64_t hi, std::int64_t n, double p) {
    lo = std::max<std::int64_t>(lo, 0);
    hi = std::min(hi, n);
    if (lo > hi) {
        return 0.0;
    }
    if (lo == 0 && hi == n) {
        return 1.0;
    }
    if (p == 0.0) {
        return lo == 0 ? 1.0 : 0.0;
    }
    if (p == 1.0) {
        return hi == n ? 1.0 : 0.0;
    }
    const auto logw = relative_log_pmf(n, p);
    const std::span<const double> all(logw);
    const double total = log_sum_exp(all);
    const double part = log_sum_exp(all.subspan(static_cast<std::size_t>(lo), static_cast<std::size_t>(hi - lo + 1)));
    return std::min(1.0, std::exp(part - total));
}

} // namespace

Direction parse_direction(std::string_view name) {
    if (name == "greater") {
        return Direction::Greater;
    }
    if (name == "less") {
        return Direction::Less;
    }
    if (name == "two-sided") {
        return Direction::TwoSided;
    }
    throw ConfigError("unknown direction '" + std::string(name) + "' (greater, less, two-sided)");
}

std::string_view to_string(Direction d) noexcept {
    switch (d) {
    case Direction::Greater:
        return "greater";
    case Direction::Less:
        return "less";
    case Direction::TwoSided:
        return "two-sided";
    }
    return "greater";
}

WeightVector WeightVector::segment_indicator(const SegmentTrack& segments) {
    WeightVector w;
    w.values.assign(static_cast<std::size_t>(segments.bin().length()), 0.0);
    for (const Interval& s : segments.segments()) {
        for (Coord p = s.start; p < s.end; ++p) {
            w.values[static_cast<std::size_t>(p - segments.bin().start())] = 1.0;
        }
    }
    return w;
}

std::int64_t count_points_in_segments(std::span<const Coord> points, std::span<const Interval> segments) noexcept {
    std::int64_t count = 0;
    std::size_t s = 0;
    for (Coord p : points) {
        while (s < segments.size() && segments[s].end <= p) {
            ++s;
        }
        if (s == segments.size()) {
            break;
        }
        if (segments[s].start <= p) {
            ++count;
        }
    }
    return count;
}

std::int64_t count_points_in_segments(const PointTrack& points, const SegmentTrack& segments) {
    if (!(points.bin() == segments.bin())) {
        throw ValidationError("point track bin '" + points.bin().id() + "' differs from segment track bin '" +
                              segments.bin().id() + "'");
    }
    return count_points_in_segments(points.positions(), segments.segments());
}

double weighted_sum_statistic(const BinarySequence& seq, const WeightVector& weights) {
    if (seq.size() != weights.size()) {
        throw ValidationError("weight vector length " + std::to_string(weights.size()) +
                              " differs from sequence length " + std::to_string(seq.size()));
    }
    const auto x = seq.values();
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i]) {
            sum += weights.values[i];
        }
    }
    return sum / static_cast<double>(x.size());
}

double binomial_upper_pvalue(std::int64_t t, std::int64_t n, double p) {
    check_binomial_args(t, n, p);
    return binomial_range(t, n, n, p);
}

double binomial_lower_pvalue(std::int64_t t, std::int64_t n, double p) {
    check_binomial_args(t, n, p);
    return binomial_range(0, t, n, p);
}

double binomial_lower_strict(std::int64_t t, std::int64_t n, double p) {
    check_binomial_args(t, n, p);
    return binomial_range(0, t - 1, n, p);
}

double two_sided(double upper, double lower) noexcept {
    return std::min(1.0, 2.0 * std::min(upper, lower));
}

double binomial_pvalue(std::int64_t t, std::int64_t n, double p, Direction direction) {
    switch (direction) {
    case Direction::Greater:
        return binomial_upper_pvalue(t, n, p);
    case Direction::Less:
        return binomial_lower_pvalue(t, n, p);
    case Direction::TwoSided:
        return two_sided(binomial_upper_pvalue(t, n, p), binomial_lower_pvalue(t, n, p));
    }
    return 1.0;
}

Moments statistic_moments_under_stationarity(double lambda, double sigma2, std::span<const double> rho,
                                             const WeightVector& weights) {
    if (rho.empty() || rho[0] != 1.0) {
        throw ValidationError("correlation function must satisfy rho(0) = 1");
    }
    for (std::size_t d = 1; d < rho.size(); ++d) {
        if (rho[d] < 0.0 || rho[d] > rho[d - 1]) {
            throw ValidationError("correlation function must be non-negative and non-increasing (d=" +
                                  std::to_string(d) + ")");
        }
    }
    const auto& y = weights.values;
    const std::size_t n = y.size();
    if (n == 0) {
        throw ValidationError("weight vector must be non-empty");
    }
    const double nn = static_cast<double>(n);

    double weight_sum = 0.0;
    double diagonal = 0.0;
    for (double v : y) {
        weight_sum += v;
        diagonal += v * v;
    }
    double off_diagonal = 0.0;
    const std::size_t d_max = std::min(rho.size() - 1, n - 1);
    for (std::size_t d = 1; d <= d_max; ++d) {
        if (rho[d] == 0.0) {
            break;
        }
        double lagged = 0.0;
        for (std::size_t i = 0; i + d < n; ++i) {
            lagged += y[i] * y[i + d];
        }
        off_diagonal += rho[d] * lagged;
    }
    Moments m;
    m.mean = weight_sum * lambda / nn;
    m.variance = sigma2 * (diagonal + 2.0 * off_diagonal) / (nn * nn);
    return m;
}

} // namespace mcnull
