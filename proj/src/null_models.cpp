#include "mcnull/null_models.hpp"

#include "mcnull/errors.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <limits>
#include <map>
#include <unordered_set>

namespace mcnull {
namespace {

// Bitmap rejection is cheap up to this universe size; Floyd's algorithm beyond.
constexpr std::int64_t kBitmapLimit = std::int64_t{1} << 27;

std::vector<std::int64_t> subset_by_bitmap(std::int64_t universe, std::int64_t k, Rng& rng) {
    const bool complement = 2 * k > universe;
    const std::int64_t draws = complement ? universe - k : k;
    std::vector<std::uint64_t> bits(static_cast<std::size_t>((universe + 63) / 64), 0);
    for (std::int64_t taken = 0; taken < draws;) {
        const auto x = rng.below(static_cast<std::uint64_t>(universe));
        auto& word = bits[x >> 6];
        const std::uint64_t mask = std::uint64_t{1} << (x & 63);
        if (!(word & mask)) {
            word |= mask;
            ++taken;
        }
    }
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(k));
    for (std::size_t w = 0; w < bits.size(); ++w) {
        std::uint64_t word = complement ? ~bits[w] : bits[w];
        while (word) {
            const auto x = static_cast<std::int64_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
            if (x >= universe) {
                break;
            }
            out.push_back(x);
            word &= word - 1;
        }
    }
    return out;
}

std::vector<std::int64_t> subset_by_floyd(std::int64_t universe, std::int64_t k, Rng& rng) {
    std::unordered_set<std::int64_t> chosen;
    chosen.reserve(static_cast<std::size_t>(k) * 2);
    for (std::int64_t j = universe - k; j < universe; ++j) {
        const auto t = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(j + 1)));
        if (!chosen.insert(t).second) {
            chosen.insert(j);
        }
    }
    std::vector<std::int64_t> out(chosen.begin(), chosen.end());
    std::sort(out.begin(), out.end());
    return out;
}

// Checked combinatorics. nullopt signals overflow.
using Count = std::optional<std::uint64_t>;

Count checked_mul(Count a, Count b) {
    if (!a || !b) {
        return std::nullopt;
    }
    std::uint64_t r = 0;
    if (__builtin_mul_overflow(*a, *b, &r)) {
        return std::nullopt;
    }
    return r;
}

Count binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // r == C(n-k+i-1, i-1) here, so the division is exact
        r = r * (n - k + i) / i;
        if (r > std::numeric_limits<std::uint64_t>::max()) {
            return std::nullopt;
        }
    }
    return static_cast<std::uint64_t>(r);
}

// Distinct orderings of a multiset with the given group sizes.
template <typename Key>
Count multiset_orderings(const std::map<Key, std::uint64_t>& groups) {
    Count result = 1;
    std::uint64_t placed = 0;
    for (const auto& [key, count] : groups) {
        placed += count;
        result = checked_mul(result, binomial(placed, count));
    }
    return result;
}

template <typename T>
Count orderings_of(const std::vector<T>& values) {
    std::map<T, std::uint64_t> groups;
    for (const T& v : values) {
        ++groups[v];
    }
    return multiset_orderings(groups);
}

std::vector<Coord> point_gaps(const PointTrack& track) {
    const auto pos = track.positions();
    std::vector<Coord> gaps;
    gaps.reserve(pos.size());
    for (std::size_t i = 1; i < pos.size(); ++i) {
        gaps.push_back(pos[i] - pos[i - 1]);
    }
    return gaps;
}

std::vector<Coord> segment_lengths(const SegmentTrack& track) {
    std::vector<Coord> lengths;
    lengths.reserve(track.size());
    for (const Interval& s : track.segments()) {
        lengths.push_back(s.length());
    }
    return lengths;
}

std::vector<Coord> segment_gaps(const SegmentTrack& track) {
    const auto segs = track.segments();
    std::vector<Coord> gaps;
    for (std::size_t i = 1; i < segs.size(); ++i) {
        gaps.push_back(segs[i].start - segs[i - 1].end);
    }
    return gaps;
}

Coord sum_of(const std::vector<Coord>& v) {
    Coord total = 0;
    for (Coord x : v) {
        total += x;
    }
    return total;
}

} // namespace

NullModelSpec NullModelSpec::parse(std::string_view name) {
    if (name == "uniform-points") {
        return uniform_points();
    }
    if (name == "preserve-interpoint") {
        return preserve_interpoint();
    }
    if (name == "uniform-segments") {
        return uniform_segments();
    }
    if (name == "preserve-intersegment") {
        return preserve_intersegment();
    }
    if (name.starts_with("block:")) {
        const auto digits = name.substr(6);
        std::int64_t k = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
        if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size() || k < 1) {
            throw ConfigError("block size must be a positive integer: '" + std::string(name) + "'");
        }
        return block(k);
    }
    throw ConfigError("unknown null model '" + std::string(name) + "'");
}

std::string NullModelSpec::name() const {
    if (block_size) {
        return "block:" + std::to_string(*block_size);
    }
    const bool uniform = preservation == Preservation::UniformLocation;
    if (side == RandomizedSide::Points) {
        return uniform ? "uniform-points" : "preserve-interpoint";
    }
    return uniform ? "uniform-segments" : "preserve-intersegment";
}

void NullModelSpec::validate() const {
    if (block_size) {
        if (*block_size < 1) {
            throw ConfigError("block size must be >= 1");
        }
        if (side != RandomizedSide::Points || preservation != Preservation::UniformLocation) {
            throw ConfigError("block permutation applies to the point indicator sequence only");
        }
    }
}

std::vector<std::int64_t> sample_sorted_subset(std::int64_t universe, std::int64_t k, Rng& rng) {
    if (k < 0 || k > universe) {
        throw ValidationError("cannot draw " + std::to_string(k) + " distinct values from " + std::to_string(universe));
    }
    if (k == 0) {
        return {};
    }
    if (universe <= kBitmapLimit) {
        return subset_by_bitmap(universe, k, rng);
    }
    return subset_by_floyd(universe, k, rng);
}

PointTrack resample_points_uniform(const PointTrack& track, Seed seed) {
    const Bin& bin = track.bin();
    const auto n = static_cast<std::int64_t>(track.size());
    if (n > bin.length()) {
        throw ValidationError("bin too small for " + std::to_string(n) + " distinct points");
    }
    Rng rng(seed);
    auto offsets = sample_sorted_subset(bin.length(), n, rng);
    for (auto& x : offsets) {
        x += bin.start();
    }
    return PointTrack(bin, std::move(offsets));
}

PointTrack resample_points_preserve_distances(const PointTrack& track, Seed seed) {
    const Bin& bin = track.bin();
    if (track.empty()) {
        return track;
    }
    auto gaps = point_gaps(track);
    const Coord span = track.positions().back() - track.positions().front();
    if (span > bin.length() - 1) {
        throw ValidationError("point span exceeds bin");
    }
    Rng rng(seed);
    rng.shuffle(std::span<Coord>(gaps));
    const Coord first = rng.between(bin.start(), bin.end() - span - 1);
    std::vector<Coord> positions;
    positions.reserve(track.size());
    positions.push_back(first);
    for (Coord g : gaps) {
        positions.push_back(positions.back() + g);
    }
    return PointTrack(bin, std::move(positions));
}

SegmentTrack resample_segments_uniform(const SegmentTrack& track, Seed seed) {
    const Bin& bin = track.bin();
    if (track.empty()) {
        return track;
    }
    auto lengths = segment_lengths(track);
    const Coord slack = bin.length() - sum_of(lengths);
    if (slack < 0) {
        throw ValidationError("total segment length exceeds bin");
    }
    Rng rng(seed);
    rng.shuffle(std::span<Coord>(lengths));
    // Stars and bars: k bar positions among slack + k slots.
    const auto k = static_cast<std::int64_t>(lengths.size());
    const auto bars = sample_sorted_subset(slack + k, k, rng);
    std::vector<Interval> out;
    out.reserve(lengths.size());
    Coord cursor = bin.start();
    std::int64_t previous_bar = -1;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        cursor += bars[i] - previous_bar - 1;
        previous_bar = bars[i];
        out.push_back({cursor, cursor + lengths[i]});
        cursor += lengths[i];
    }
    return SegmentTrack(bin, std::move(out));
}

SegmentTrack resample_segments_preserve_distances(const SegmentTrack& track, Seed seed) {
    const Bin& bin = track.bin();
    if (track.empty()) {
        return track;
    }
    auto lengths = segment_lengths(track);
    auto gaps = segment_gaps(track);
    const Coord extent = sum_of(lengths) + sum_of(gaps);
    Rng rng(seed);
    rng.shuffle(std::span<Coord>(gaps));
    rng.shuffle(std::span<Coord>(lengths));
    Coord cursor = rng.between(bin.start(), bin.end() - extent);
    std::vector<Interval> out;
    out.reserve(lengths.size());
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        if (i > 0) {
            cursor += gaps[i - 1];
        }
        out.push_back({cursor, cursor + lengths[i]});
        cursor += lengths[i];
    }
    return SegmentTrack(bin, std::move(out));
}

BinarySequence block_permutation(const BinarySequence& seq, std::int64_t block_size, Seed seed) {
    const auto n = static_cast<std::int64_t>(seq.size());
    if (block_size < 1 || block_size > n) {
        throw ValidationError("block size must be in [1, " + std::to_string(n) + "]");
    }
    const auto blocks = static_cast<std::size_t>(n / block_size);
    std::vector<std::size_t> order(blocks);
    for (std::size_t i = 0; i < blocks; ++i) {
        order[i] = i;
    }
    Rng rng(seed);
    rng.shuffle(std::span<std::size_t>(order));
    const auto in = seq.values();
    const auto b = static_cast<std::size_t>(block_size);
    std::vector<std::uint8_t> out(in.begin(), in.end());
    for (std::size_t i = 0; i < blocks; ++i) {
        std::copy_n(in.begin() + static_cast<std::ptrdiff_t>(order[i] * b), b,
                    out.begin() + static_cast<std::ptrdiff_t>(i * b));
    }
    return BinarySequence(std::move(out));
}

PointTrack resample_points(const PointTrack& track, const NullModelSpec& spec, Seed seed) {
    spec.validate();
    if (spec.side != RandomizedSide::Points) {
        throw ConfigError("null model '" + spec.name() + "' does not randomize points");
    }
    if (spec.block_size) {
        const auto permuted = block_permutation(to_binary_sequence(track), *spec.block_size, seed);
        return from_binary_sequence(permuted, track.bin());
    }
    if (spec.preservation == Preservation::UniformLocation) {
        return resample_points_uniform(track, seed);
    }
    return resample_points_preserve_distances(track, seed);
}

SegmentTrack resample_segments(const SegmentTrack& track, const NullModelSpec& spec, Seed seed) {
    spec.validate();
    if (spec.side != RandomizedSide::Segments) {
        throw ConfigError("null model '" + spec.name() + "' does not randomize segments");
    }
    if (spec.preservation == Preservation::UniformLocation) {
        return resample_segments_uniform(track, seed);
    }
    return resample_segments_preserve_distances(track, seed);
}

std::optional<std::uint64_t> state_space_size(const PointTrack& track, const NullModelSpec& spec) {
    spec.validate();
    if (spec.side != RandomizedSide::Points) {
        throw ConfigError("null model '" + spec.name() + "' does not randomize points");
    }
    if (spec.block_size) {
        return state_space_size(to_binary_sequence(track), *spec.block_size);
    }
    const auto length = static_cast<std::uint64_t>(track.bin().length());
    if (spec.preservation == Preservation::UniformLocation) {
        return binomial(length, track.size());
    }
    if (track.empty()) {
        return 1;
    }
    const auto span = static_cast<std::uint64_t>(track.positions().back() - track.positions().front());
    return checked_mul(orderings_of(point_gaps(track)), length - span);
}

std::optional<std::uint64_t> state_space_size(const SegmentTrack& track, const NullModelSpec& spec) {
    spec.validate();
    if (spec.side != RandomizedSide::Segments) {
        throw ConfigError("null model '" + spec.name() + "' does not randomize segments");
    }
    if (track.empty()) {
        return 1;
    }
    const auto lengths = segment_lengths(track);
    const auto k = static_cast<std::uint64_t>(lengths.size());
    const auto length = static_cast<std::uint64_t>(track.bin().length());
    if (spec.preservation == Preservation::UniformLocation) {
        const auto slack = length - static_cast<std::uint64_t>(sum_of(lengths));
        return checked_mul(orderings_of(lengths), binomial(slack + k, k));
    }
    const auto gaps = segment_gaps(track);
    const auto extent = static_cast<std::uint64_t>(sum_of(lengths) + sum_of(gaps));
    return checked_mul(checked_mul(orderings_of(lengths), orderings_of(gaps)), length - extent + 1);
}

std::optional<std::uint64_t> state_space_size(const BinarySequence& seq, std::int64_t block_size) {
    const auto n = static_cast<std::int64_t>(seq.size());
    if (block_size < 1 || block_size > n) {
        throw ValidationError("block size must be in [1, " + std::to_string(n) + "]");
    }
    const auto values = seq.values();
    std::map<std::vector<std::uint8_t>, std::uint64_t> groups;
    for (std::int64_t b = 0; b + block_size <= n; b += block_size) {
        ++groups[std::vector<std::uint8_t>(values.begin() + b, values.begin() + b + block_size)];
    }
    return multiset_orderings(groups);
}

} // namespace mcnull
