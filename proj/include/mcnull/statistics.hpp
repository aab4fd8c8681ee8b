#pragma once

#include "mcnull/track.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace mcnull {

/// Which tail counts as evidence against the null. Greater is the default:
/// large values of the statistic are taken as evidence of a relation.
enum class Direction { Greater, Less, TwoSided };

Direction parse_direction(std::string_view name);
std::string_view to_string(Direction d) noexcept;

struct StatisticValue {
    double value = 0.0;
    std::int64_t n_points = 0;
    Direction direction = Direction::Greater;
};

/// Fixed weights y_1..y_n, one per base pair of a bin.
struct WeightVector {
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
    /// Indicator of the covered base pairs of a segment track.
    static WeightVector segment_indicator(const SegmentTrack& segments);
};

/// Number of points that fall inside some segment. Two-pointer sweep, O(n + k).
/// Throws ValidationError if the tracks live in different bins.
std::int64_t count_points_in_segments(const PointTrack& points, const SegmentTrack& segments);
std::int64_t count_points_in_segments(std::span<const Coord> points, std::span<const Interval> segments) noexcept;

/// T = (1/n) sum_i y_i x_i.
double weighted_sum_statistic(const BinarySequence& seq, const WeightVector& weights);

/// P(T >= t) for T ~ Binomial(n, p), summed in log space.
double binomial_upper_pvalue(std::int64_t t, std::int64_t n, double p);
/// P(T <= t).
double binomial_lower_pvalue(std::int64_t t, std::int64_t n, double p);
/// P(T < t), the complement of the upper tail.
double binomial_lower_strict(std::int64_t t, std::int64_t n, double p);
/// Tail probability for the requested direction. Two-sided doubles the
/// smaller one-sided tail and caps at 1.
double binomial_pvalue(std::int64_t t, std::int64_t n, double p, Direction direction);

/// Doubles the smaller of two one-sided p-values, capped at 1.
double two_sided(double upper, double lower) noexcept;

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Mean and variance of T = (1/n) sum y_i X_i for a stationary process with
/// E X_i = lambda, Var X_i = sigma2 and Cov(X_i, X_j) = sigma2 * rho(|i-j|).
/// `rho` tabulates rho(0..d_max) and is zero beyond d_max; it must satisfy
/// rho(0) = 1 and be non-negative and non-increasing (ValidationError otherwise).
/// Runs in O(n * d_max).
Moments statistic_moments_under_stationarity(double lambda, double sigma2, std::span<const double> rho,
                                             const WeightVector& weights);

} // namespace mcnull
