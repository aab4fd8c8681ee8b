#pragma once

#include "mcnull/track.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace mcnull {

/// One data row of a track file: a coordinate, or a half-open interval.
struct TrackRow {
    Coord start = 0;
    std::optional<Coord> end;
    std::size_t line = 0;

    bool is_interval() const noexcept { return end.has_value(); }
    /// Point representative: the coordinate itself, or floor((start+end)/2).
    Coord midpoint() const noexcept;
};

/// Tab-separated, 1 or 2 integer columns per row. Blank lines and lines
/// starting with '#' are skipped. Throws ParseError with the line number.
std::vector<TrackRow> read_track_rows(std::istream& in);
std::vector<TrackRow> read_track_rows(const std::filesystem::path& path);

/// Rows reduced to midpoints, sorted and validated against `bin`.
PointTrack points_from_rows(const std::vector<TrackRow>& rows, const Bin& bin);

/// Interval rows, merged and validated against `bin`. Single-column rows are
/// rejected, as is any interval with end <= start.
SegmentTrack segments_from_rows(const std::vector<TrackRow>& rows, const Bin& bin);

PointTrack load_point_track(const std::filesystem::path& path, const Bin& bin);
SegmentTrack load_segment_track(const std::filesystem::path& path, const Bin& bin);

/// Genome-wide rows split per bin: points whose midpoint falls in the bin,
/// and segments clipped to the bin. Rows outside the bin are ignored.
PointTrack points_in_bin(const std::vector<TrackRow>& rows, const Bin& bin);
SegmentTrack segments_in_bin(const std::vector<TrackRow>& rows, const Bin& bin);

/// Three columns: id, start, end.
std::vector<Bin> read_bins(std::istream& in);
std::vector<Bin> load_bins(const std::filesystem::path& path);

void write_point_track(std::ostream& out, const PointTrack& track);
void write_segment_track(std::ostream& out, const SegmentTrack& track);
void write_bins(std::ostream& out, const std::vector<Bin>& bins);

} // namespace mcnull
