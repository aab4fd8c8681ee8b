#pragma once

#include "mcnull/rng.hpp"
#include "mcnull/track.hpp"

#include <cstdint>
#include <string_view>

namespace mcnull {

enum class PointGenMode { Independent, Clustered };

PointGenMode parse_point_gen_mode(std::string_view name);

/// Renewal process on the base-pair lattice. Each step to the next point is
/// 1 + Geometric(rate). Independent mode uses lambda_inter throughout, which
/// makes every base pair a point with probability lambda_inter independently.
/// Clustered mode first draws Bernoulli(new_cluster_prob) per point: success
/// starts a new cluster with a step at lambda_inter, failure stays in the
/// current cluster with a step at lambda_intra.
struct PointGenConfig {
    PointGenMode mode = PointGenMode::Independent;
    double lambda_inter = 0.01;
    double lambda_intra = 0.1;
    double new_cluster_prob = 0.3;

    static PointGenConfig independent() { return {}; }
    static PointGenConfig clustered() { return {PointGenMode::Clustered, 0.01, 0.1, 0.3}; }

    /// Throws ConfigError unless rates are in (0, 1) and the probability in [0, 1].
    void validate() const;
};

/// Segments are laid down like points: the distance from the last covered
/// base of one segment to the start of the next is 1 + Geometric(gap_lambda)
/// (or the two-rate cluster step when `clustered`). Lengths are uniform
/// integers in [length_min, length_max]; the last segment is truncated at
/// the bin end.
struct SegmentGenConfig {
    double gap_lambda = 0.01;
    std::int64_t length_min = 10;
    std::int64_t length_max = 100;
    bool clustered = false;
    // Cluster mechanics when `clustered`; lambda_inter is overridden by gap_lambda.
    PointGenConfig cluster = PointGenConfig::clustered();

    static SegmentGenConfig independent() { return {}; }
    static SegmentGenConfig clustered_starts() {
        SegmentGenConfig c;
        c.clustered = true;
        return c;
    }

    void validate() const;
};

PointTrack generate_points(const Bin& bin, const PointGenConfig& cfg, Seed seed);
SegmentTrack generate_segments(const Bin& bin, const SegmentGenConfig& cfg, Seed seed);

} // namespace mcnull
