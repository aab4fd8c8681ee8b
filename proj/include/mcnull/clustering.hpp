#pragma once

#include "mcnull/track.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace mcnull {

/// Scaled Ripley's K across distance scales. L > 1 indicates attraction
/// between points, L = 1 independence and L < 1 repulsion.
struct ClusteringProfile {
    std::vector<std::int64_t> scales;
    std::vector<double> k_values;
    std::vector<double> l_values;
    double lambda_hat = 0.0;
};

/// Scales used when none are given: 10, 25, 50, 100, 250, 500.
std::vector<std::int64_t> default_scales();

/// Fraction of ones.
double estimate_lambda(const BinarySequence& seq);

/// Edge-correction weight for 1-indexed positions i != j in a sequence of
/// length n: (min(max(i,j), n) - max(min(i,j), 1)) / |i - j|.
double edge_weight(std::int64_t i, std::int64_t j, std::int64_t n);

/// K-hat(tau) = n^-1 lambda-hat^-2 sum_i sum_{0<|i-j|<=tau} x_i x_j / w_ij,
/// with x treated as 0 outside [1, n]. Pairs are enumerated from the point
/// positions, so the cost is O(pairs within tau) rather than O(n * tau).
/// Throws ValidationError with fewer than 2 points or tau outside [1, n).
double estimate_k(const BinarySequence& seq, std::int64_t tau);
double estimate_k(const PointTrack& track, std::int64_t tau);

/// L-hat(tau) = K-hat(tau) / (2 tau) for every scale, duplicates included.
ClusteringProfile estimate_l_profile(const BinarySequence& seq, std::span<const std::int64_t> scales);
ClusteringProfile estimate_l_profile(const PointTrack& track, std::span<const std::int64_t> scales);

} // namespace mcnull
