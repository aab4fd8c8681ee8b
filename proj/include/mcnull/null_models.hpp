#pragma once

#include "mcnull/rng.hpp"
#include "mcnull/track.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace mcnull {

enum class RandomizedSide { Points, Segments };
enum class Preservation { UniformLocation, PreserveInterDistances };

/// Which track a null model randomizes and how much of its structure is kept.
///
/// The four side x preservation combinations form the point/segment null
/// models. A block size selects block permutation of the point indicator
/// sequence instead; it is only valid with side Points and UniformLocation.
///
/// CLI names: uniform-points, preserve-interpoint, uniform-segments,
/// preserve-intersegment, block:<k>.
struct NullModelSpec {
    RandomizedSide side = RandomizedSide::Points;
    Preservation preservation = Preservation::UniformLocation;
    std::optional<std::int64_t> block_size;

    static NullModelSpec uniform_points() { return {}; }
    static NullModelSpec preserve_interpoint() {
        return {RandomizedSide::Points, Preservation::PreserveInterDistances, std::nullopt};
    }
    static NullModelSpec uniform_segments() {
        return {RandomizedSide::Segments, Preservation::UniformLocation, std::nullopt};
    }
    static NullModelSpec preserve_intersegment() {
        return {RandomizedSide::Segments, Preservation::PreserveInterDistances, std::nullopt};
    }
    static NullModelSpec block(std::int64_t size) {
        return {RandomizedSide::Points, Preservation::UniformLocation, size};
    }

    /// Throws ConfigError on unknown names or a non-positive block size.
    static NullModelSpec parse(std::string_view name);
    std::string name() const;
    /// Throws ConfigError if block_size is combined with anything but uniform points.
    void validate() const;

    friend bool operator==(const NullModelSpec&, const NullModelSpec&) = default;
};

// Resamplers. All are pure functions of (input, seed) and never touch the input.

/// n distinct positions drawn uniformly from the bin.
PointTrack resample_points_uniform(const PointTrack& track, Seed seed);

/// Consecutive inter-point distances permuted uniformly; the first point is
/// placed uniformly over every offset that keeps the pattern inside the bin.
PointTrack resample_points_preserve_distances(const PointTrack& track, Seed seed);

/// Segment lengths kept as a multiset in random order, with the free space
/// split into k+1 gaps by a uniform random composition.
SegmentTrack resample_segments_uniform(const SegmentTrack& track, Seed seed);

/// Inter-segment gaps and segment lengths permuted independently; the whole
/// block is placed at a uniform feasible offset.
SegmentTrack resample_segments_preserve_distances(const SegmentTrack& track, Seed seed);

/// Consecutive blocks of `block_size` shuffled; a trailing partial block stays put.
BinarySequence block_permutation(const BinarySequence& seq, std::int64_t block_size, Seed seed);

/// Dispatch on spec for the point side (uniform, preserve-interpoint, block).
PointTrack resample_points(const PointTrack& track, const NullModelSpec& spec, Seed seed);
/// Dispatch on spec for the segment side.
SegmentTrack resample_segments(const SegmentTrack& track, const NullModelSpec& spec, Seed seed);

/// Number of distinct states the corresponding resampler can produce, or
/// nullopt when the count does not fit in 64 bits.
std::optional<std::uint64_t> state_space_size(const PointTrack& track, const NullModelSpec& spec);
std::optional<std::uint64_t> state_space_size(const SegmentTrack& track, const NullModelSpec& spec);
std::optional<std::uint64_t> state_space_size(const BinarySequence& seq, std::int64_t block_size);

/// Uniform random k-subset of {0, ..., universe-1}, ascending.
std::vector<std::int64_t> sample_sorted_subset(std::int64_t universe, std::int64_t k, Rng& rng);

} // namespace mcnull
