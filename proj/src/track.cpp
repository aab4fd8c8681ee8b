#include "mcnull/track.hpp"

#include "mcnull/errors.hpp"

#include <algorithm>

namespace mcnull {

Bin::Bin(std::string id, Coord start, Coord end) : id_(std::move(id)), start_(start), end_(end) {
    if (start_ < 0) {
        throw ValidationError("bin '" + id_ + "': start must be >= 0");
    }
    if (end_ <= start_) {
        throw ValidationError("bin '" + id_ + "': end must be greater than start");
    }
}

PointTrack::PointTrack(Bin bin, std::vector<Coord> positions)
    : bin_(std::move(bin)), positions_(std::move(positions)) {
    for (std::size_t i = 0; i < positions_.size(); ++i) {
        const Coord p = positions_[i];
        if (!bin_.contains(p)) {
            throw ValidationError("position " + std::to_string(p) + " outside bin '" + bin_.id() + "' [" +
                                  std::to_string(bin_.start()) + ", " + std::to_string(bin_.end()) + ")");
        }
        if (i > 0 && positions_[i - 1] >= p) {
            throw ValidationError(positions_[i - 1] == p
                                      ? "duplicate position " + std::to_string(p)
                                      : "positions not strictly increasing at " + std::to_string(p));
        }
    }
}

PointTrack PointTrack::from_unsorted(Bin bin, std::vector<Coord> positions) {
    std::sort(positions.begin(), positions.end());
    return PointTrack(std::move(bin), std::move(positions));
}

SegmentTrack::SegmentTrack(Bin bin, std::vector<Interval> segments)
    : bin_(std::move(bin)), segments_(std::move(segments)) {
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const Interval& s = segments_[i];
        if (s.end <= s.start) {
            throw ValidationError("empty segment [" + std::to_string(s.start) + ", " + std::to_string(s.end) + ")");
        }
        if (!bin_.contains(s)) {
            throw ValidationError("segment [" + std::to_string(s.start) + ", " + std::to_string(s.end) +
                                  ") outside bin '" + bin_.id() + "'");
        }
        if (i > 0 && segments_[i - 1].end > s.start) {
            throw ValidationError("segments overlap or are unsorted at " + std::to_string(s.start));
        }
    }
}

SegmentTrack SegmentTrack::merged(Bin bin, std::vector<Interval> segments) {
    for (const Interval& s : segments) {
        if (s.end <= s.start) {
            throw ValidationError("empty segment [" + std::to_string(s.start) + ", " + std::to_string(s.end) + ")");
        }
    }
    std::sort(segments.begin(), segments.end(),
              [](const Interval& a, const Interval& b) { return a.start < b.start || (a.start == b.start && a.end < b.end); });
    std::vector<Interval> out;
    out.reserve(segments.size());
    for (const Interval& s : segments) {
        if (!out.empty() && s.start < out.back().end) {
            out.back().end = std::max(out.back().end, s.end);
        } else {
            out.push_back(s);
        }
    }
    return SegmentTrack(std::move(bin), std::move(out));
}

Coord SegmentTrack::covered_length() const noexcept {
    Coord total = 0;
    for (const Interval& s : segments_) {
        total += s.length();
    }
    return total;
}

BinarySequence::BinarySequence(std::vector<std::uint8_t> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw ValidationError("binary sequence must have length >= 1");
    }
    for (auto v : values_) {
        if (v > 1) {
            throw ValidationError("binary sequence values must be 0 or 1");
        }
    }
}

std::size_t BinarySequence::count_ones() const noexcept {
    return static_cast<std::size_t>(std::count(values_.begin(), values_.end(), std::uint8_t{1}));
}

BinarySequence to_binary_sequence(const PointTrack& track) {
    std::vector<std::uint8_t> x(static_cast<std::size_t>(track.bin().length()), 0);
    for (Coord p : track.positions()) {
        x[static_cast<std::size_t>(p - track.bin().start())] = 1;
    }
    return BinarySequence(std::move(x));
}

PointTrack from_binary_sequence(const BinarySequence& seq, const Bin& bin) {
    if (static_cast<Coord>(seq.size()) != bin.length()) {
        throw ValidationError("sequence length does not match bin length");
    }
    std::vector<Coord> positions;
    const auto values = seq.values();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i]) {
            positions.push_back(bin.start() + static_cast<Coord>(i));
        }
    }
    return PointTrack(bin, std::move(positions));
}

double coverage_fraction(const SegmentTrack& segments) {
    return static_cast<double>(segments.covered_length()) / static_cast<double>(segments.bin().length());
}

} // namespace mcnull
