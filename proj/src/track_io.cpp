#include "mcnull/track_io.hpp"

#include "mcnull/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

namespace mcnull {
namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        const auto tab = line.find('\t', pos);
        fields.push_back(line.substr(pos, tab == std::string_view::npos ? std::string_view::npos : tab - pos));
        if (tab == std::string_view::npos) {
            break;
        }
        pos = tab + 1;
    }
    return fields;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) {
        s.remove_suffix(1);
    }
    while (!s.empty() && s.front() == ' ') {
        s.remove_prefix(1);
    }
    return s;
}

Coord parse_coord(std::string_view field, std::size_t line) {
    field = trim(field);
    Coord value = 0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (field.empty() || ec != std::errc{} || ptr != last) {
        throw ParseError(line, "expected integer coordinate, got '" + std::string(field) + "'");
    }
    return value;
}

bool skip_line(std::string_view line) {
    line = trim(line);
    return line.empty() || line.front() == '#';
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open '" + path.string() + "'");
    }
    return in;
}

} // namespace

Coord TrackRow::midpoint() const noexcept {
    if (!end) {
        return start;
    }
    // floor division; coordinates are non-negative in practice
    const Coord sum = start + *end;
    return sum >= 0 ? sum / 2 : -((-sum + 1) / 2);
}

std::vector<TrackRow> read_track_rows(std::istream& in) {
    std::vector<TrackRow> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skip_line(line)) {
            continue;
        }
        const auto fields = split_tabs(trim(line));
        TrackRow row;
        row.line = line_no;
        if (fields.size() == 1) {
            row.start = parse_coord(fields[0], line_no);
        } else if (fields.size() == 2) {
            row.start = parse_coord(fields[0], line_no);
            row.end = parse_coord(fields[1], line_no);
            if (*row.end <= row.start) {
                throw ValidationError("line " + std::to_string(line_no) + ": interval end must exceed start");
            }
        } else {
            throw ParseError(line_no, "expected 1 or 2 tab-separated columns, got " + std::to_string(fields.size()));
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<TrackRow> read_track_rows(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    return read_track_rows(in);
}

PointTrack points_from_rows(const std::vector<TrackRow>& rows, const Bin& bin) {
    std::vector<Coord> positions;
    positions.reserve(rows.size());
    for (const TrackRow& r : rows) {
        const Coord p = r.midpoint();
        if (!bin.contains(p)) {
            throw ValidationError("line " + std::to_string(r.line) + ": position " + std::to_string(p) +
                                  " outside bin '" + bin.id() + "'");
        }
        positions.push_back(p);
    }
    return PointTrack::from_unsorted(bin, std::move(positions));
}

SegmentTrack segments_from_rows(const std::vector<TrackRow>& rows, const Bin& bin) {
    std::vector<Interval> segments;
    segments.reserve(rows.size());
    for (const TrackRow& r : rows) {
        if (!r.end) {
            throw ParseError(r.line, "segment rows need two columns (start, end)");
        }
        const Interval iv{r.start, *r.end};
        if (!bin.contains(iv)) {
            throw ValidationError("line " + std::to_string(r.line) + ": segment outside bin '" + bin.id() + "'");
        }
        segments.push_back(iv);
    }
    return SegmentTrack::merged(bin, std::move(segments));
}

PointTrack load_point_track(const std::filesystem::path& path, const Bin& bin) {
    return points_from_rows(read_track_rows(path), bin);
}

SegmentTrack load_segment_track(const std::filesystem::path& path, const Bin& bin) {
    return segments_from_rows(read_track_rows(path), bin);
}

PointTrack points_in_bin(const std::vector<TrackRow>& rows, const Bin& bin) {
    std::vector<Coord> positions;
    for (const TrackRow& r : rows) {
        const Coord p = r.midpoint();
        if (bin.contains(p)) {
            positions.push_back(p);
        }
    }
    return PointTrack::from_unsorted(bin, std::move(positions));
}

SegmentTrack segments_in_bin(const std::vector<TrackRow>& rows, const Bin& bin) {
    std::vector<Interval> segments;
    for (const TrackRow& r : rows) {
        if (!r.end) {
            throw ParseError(r.line, "segment rows need two columns (start, end)");
        }
        const Interval clipped{std::max(r.start, bin.start()), std::min(*r.end, bin.end())};
        if (clipped.end > clipped.start) {
            segments.push_back(clipped);
        }
    }
    return SegmentTrack::merged(bin, std::move(segments));
}

std::vector<Bin> read_bins(std::istream& in) {
    std::vector<Bin> bins;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skip_line(line)) {
            continue;
        }
        const auto fields = split_tabs(trim(line));
        if (fields.size() != 3) {
            throw ParseError(line_no, "bins need 3 tab-separated columns (id, start, end)");
        }
        try {
            bins.emplace_back(std::string(trim(fields[0])), parse_coord(fields[1], line_no),
                              parse_coord(fields[2], line_no));
        } catch (const ValidationError& e) {
            throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return bins;
}

std::vector<Bin> load_bins(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    return read_bins(in);
}

void write_point_track(std::ostream& out, const PointTrack& track) {
    out << "# bin\t" << track.bin().id() << '\t' << track.bin().start() << '\t' << track.bin().end() << '\n';
    for (Coord p : track.positions()) {
        out << p << '\n';
    }
}

void write_segment_track(std::ostream& out, const SegmentTrack& track) {
    out << "# bin\t" << track.bin().id() << '\t' << track.bin().start() << '\t' << track.bin().end() << '\n';
    for (const Interval& s : track.segments()) {
        out << s.start << '\t' << s.end << '\n';
    }
}

void write_bins(std::ostream& out, const std::vector<Bin>& bins) {
    for (const Bin& b : bins) {
        out << b.id() << '\t' << b.start() << '\t' << b.end() << '\n';
    }
}

} // namespace mcnull
