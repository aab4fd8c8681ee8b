#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mcnull {

/// Base-pair coordinate. 0-based; intervals are half-open [start, end).
using Coord = std::int64_t;

struct Interval {
    Coord start = 0;
    Coord end = 0;

    Coord length() const noexcept { return end - start; }
    bool contains(Coord p) const noexcept { return start <= p && p < end; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Analysis region: one hypothesis test is run per bin.
class Bin {
public:
    Bin() = default;
    /// Throws ValidationError unless 0 <= start < end.
    Bin(std::string id, Coord start, Coord end);

    const std::string& id() const noexcept { return id_; }
    Coord start() const noexcept { return start_; }
    Coord end() const noexcept { return end_; }
    Coord length() const noexcept { return end_ - start_; }
    bool contains(Coord p) const noexcept { return start_ <= p && p < end_; }
    bool contains(const Interval& iv) const noexcept { return start_ <= iv.start && iv.end <= end_; }

    friend bool operator==(const Bin&, const Bin&) = default;

private:
    std::string id_;
    Coord start_ = 0;
    Coord end_ = 1;
};

/// Unmarked points in a bin, strictly increasing.
class PointTrack {
public:
    /// Validates ordering, uniqueness and bin membership; throws ValidationError.
    PointTrack(Bin bin, std::vector<Coord> positions);

    /// Sorts first, then validates (duplicates are still rejected).
    static PointTrack from_unsorted(Bin bin, std::vector<Coord> positions);

    const Bin& bin() const noexcept { return bin_; }
    std::span<const Coord> positions() const noexcept { return positions_; }
    std::size_t size() const noexcept { return positions_.size(); }
    bool empty() const noexcept { return positions_.empty(); }

    friend bool operator==(const PointTrack&, const PointTrack&) = default;

private:
    Bin bin_;
    std::vector<Coord> positions_;
};

/// Sorted, non-overlapping, non-empty intervals inside a bin.
/// Adjacent intervals (a.end == b.start) are allowed.
class SegmentTrack {
public:
    /// Validates the invariants as given; throws ValidationError.
    SegmentTrack(Bin bin, std::vector<Interval> segments);

    /// Sorts and merges overlapping input into maximal disjoint intervals.
    static SegmentTrack merged(Bin bin, std::vector<Interval> segments);

    const Bin& bin() const noexcept { return bin_; }
    std::span<const Interval> segments() const noexcept { return segments_; }
    std::size_t size() const noexcept { return segments_.size(); }
    bool empty() const noexcept { return segments_.empty(); }
    Coord covered_length() const noexcept;

    friend bool operator==(const SegmentTrack&, const SegmentTrack&) = default;

private:
    Bin bin_;
    std::vector<Interval> segments_;
};

/// Per-base-pair indicator sequence X_1..X_n.
class BinarySequence {
public:
    /// Throws ValidationError for empty input or values outside {0,1}.
    explicit BinarySequence(std::vector<std::uint8_t> values);

    std::span<const std::uint8_t> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::size_t count_ones() const noexcept;

    friend bool operator==(const BinarySequence&, const BinarySequence&) = default;

private:
    std::vector<std::uint8_t> values_;
};

BinarySequence to_binary_sequence(const PointTrack& track);

/// Inverse of to_binary_sequence for a sequence spanning `bin`.
PointTrack from_binary_sequence(const BinarySequence& seq, const Bin& bin);

/// Covered length over bin length.
double coverage_fraction(const SegmentTrack& segments);

} // namespace mcnull
