#include "mcnull/simgen.hpp"

#include "mcnull/errors.hpp"

#include <string>
#include <vector>

namespace mcnull {
namespace {

bool open_unit(double x) { return x > 0.0 && x < 1.0; }

class StepDrawer {
public:
    StepDrawer(bool clustered, double inter, double intra, double new_cluster)
        : clustered_(clustered), inter_(inter), intra_(intra), new_cluster_(new_cluster) {}

    Coord next(Rng& rng) const {
        double rate = inter_;
        if (clustered_ && new_cluster_ < 1.0 && !rng.bernoulli(new_cluster_)) {
            rate = intra_;
        }
        return 1 + rng.geometric(rate);
    }

private:
    bool clustered_;
    double inter_;
    double intra_;
    double new_cluster_;
};

} // namespace

PointGenMode parse_point_gen_mode(std::string_view name) {
    if (name == "independent") {
        return PointGenMode::Independent;
    }
    if (name == "clustered") {
        return PointGenMode::Clustered;
    }
    throw ConfigError("unknown generation mode '" + std::string(name) + "' (independent, clustered)");
}

void PointGenConfig::validate() const {
    if (!open_unit(lambda_inter) || !open_unit(lambda_intra)) {
        throw ConfigError("point rates must lie in (0, 1)");
    }
    if (!(new_cluster_prob >= 0.0 && new_cluster_prob <= 1.0)) {
        throw ConfigError("new-cluster probability must lie in [0, 1]");
    }
}

void SegmentGenConfig::validate() const {
    if (!open_unit(gap_lambda)) {
        throw ConfigError("segment gap rate must lie in (0, 1)");
    }
    if (length_min < 1 || length_min > length_max) {
        throw ConfigError("segment lengths need 0 < length_min <= length_max");
    }
    if (clustered) {
        cluster.validate();
    }
}

PointTrack generate_points(const Bin& bin, const PointGenConfig& cfg, Seed seed) {
    cfg.validate();
    Rng rng(seed);
    const StepDrawer step(cfg.mode == PointGenMode::Clustered, cfg.lambda_inter, cfg.lambda_intra,
                          cfg.new_cluster_prob);
    std::vector<Coord> positions;
    for (Coord pos = bin.start() - 1 + step.next(rng); pos < bin.end(); pos += step.next(rng)) {
        positions.push_back(pos);
    }
    return PointTrack(bin, std::move(positions));
}

SegmentTrack generate_segments(const Bin& bin, const SegmentGenConfig& cfg, Seed seed) {
    cfg.validate();
    Rng rng(seed);
    const StepDrawer step(cfg.clustered, cfg.gap_lambda, cfg.cluster.lambda_intra, cfg.cluster.new_cluster_prob);
    std::vector<Interval> segments;
    Coord last_covered = bin.start() - 1;
    while (true) {
        const Coord start = last_covered + step.next(rng);
        if (start >= bin.end()) {
            break;
        }
        const Coord length = rng.between(cfg.length_min, cfg.length_max);
        const Coord end = std::min(start + length, bin.end());
        segments.push_back({start, end});
        last_covered = end - 1;
    }
    return SegmentTrack(bin, std::move(segments));
}

} // namespace mcnull
