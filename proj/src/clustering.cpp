#include "mcnull/clustering.hpp"

#include "mcnull/errors.hpp"

#include <algorithm>
#include <cassert>
#include <string>

namespace mcnull {
namespace {

// Positions are 1-indexed, as in the estimator's definition.
double k_from_positions(std::span<const std::int64_t> pos, std::int64_t n, std::int64_t tau) {
    if (pos.size() < 2) {
        throw ValidationError("K undefined: need at least 2 points, have " + std::to_string(pos.size()));
    }
    if (tau < 1 || tau >= n) {
        throw ValidationError("scale tau must satisfy 1 <= tau < n (tau=" + std::to_string(tau) +
                              ", n=" + std::to_string(n) + ")");
    }
    const double nn = static_cast<double>(n);
    const double lambda = static_cast<double>(pos.size()) / nn;
    double sum = 0.0;
    for (std::size_t a = 0; a < pos.size(); ++a) {
        for (std::size_t b = a + 1; b < pos.size() && pos[b] - pos[a] <= tau; ++b) {
            const double w = edge_weight(pos[a], pos[b], n);
            assert(w > 0.0 && w <= 1.0);
            // ordered pairs (i,j) and (j,i) share the same weight
            sum += 2.0 / w;
        }
    }
    return sum / (nn * lambda * lambda);
}

std::vector<std::int64_t> one_based(const BinarySequence& seq) {
    std::vector<std::int64_t> pos;
    const auto x = seq.values();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i]) {
            pos.push_back(static_cast<std::int64_t>(i) + 1);
        }
    }
    return pos;
}

std::vector<std::int64_t> one_based(const PointTrack& track) {
    std::vector<std::int64_t> pos;
    pos.reserve(track.size());
    for (Coord p : track.positions()) {
        pos.push_back(p - track.bin().start() + 1);
    }
    return pos;
}

ClusteringProfile profile_from_positions(std::span<const std::int64_t> pos, std::int64_t n,
                                         std::span<const std::int64_t> scales) {
    ClusteringProfile prof;
    prof.lambda_hat = static_cast<double>(pos.size()) / static_cast<double>(n);
    for (std::int64_t tau : scales) {
        const double k = k_from_positions(pos, n, tau);
        prof.scales.push_back(tau);
        prof.k_values.push_back(k);
        prof.l_values.push_back(k / (2.0 * static_cast<double>(tau)));
    }
    return prof;
}

} // namespace

std::vector<std::int64_t> default_scales() {
    return {10, 25, 50, 100, 250, 500};
}

double estimate_lambda(const BinarySequence& seq) {
    return static_cast<double>(seq.count_ones()) / static_cast<double>(seq.size());
}

double edge_weight(std::int64_t i, std::int64_t j, std::int64_t n) {
    const std::int64_t hi = std::max(i, j);
    const std::int64_t lo = std::min(i, j);
    return static_cast<double>(std::min(hi, n) - std::max(lo, std::int64_t{1})) / static_cast<double>(hi - lo);
}

double estimate_k(const BinarySequence& seq, std::int64_t tau) {
    return k_from_positions(one_based(seq), static_cast<std::int64_t>(seq.size()), tau);
}

double estimate_k(const PointTrack& track, std::int64_t tau) {
    return k_from_positions(one_based(track), track.bin().length(), tau);
}

ClusteringProfile estimate_l_profile(const BinarySequence& seq, std::span<const std::int64_t> scales) {
    return profile_from_positions(one_based(seq), static_cast<std::int64_t>(seq.size()), scales);
}

ClusteringProfile estimate_l_profile(const PointTrack& track, std::span<const std::int64_t> scales) {
    return profile_from_positions(one_based(track), track.bin().length(), scales);
}

} // namespace mcnull
