#include "mcnull/mc_engine.hpp"

#include "mcnull/errors.hpp"
#include "parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <ostream>

namespace mcnull {
namespace {

struct Counts {
    std::int64_t at_least = 0;  // t_i >= t
    std::int64_t at_most = 0;   // t_i <= t
};

Counts tally(std::span<const std::int64_t> sampled, std::int64_t observed) {
    Counts c;
    for (std::int64_t t : sampled) {
        c.at_least += t >= observed;
        c.at_most += t <= observed;
    }
    return c;
}

std::int64_t sampled_statistic(const PointTrack& points, const SegmentTrack& segments, const NullModelSpec& spec,
                               Seed seed) {
    if (spec.side == RandomizedSide::Points) {
        const PointTrack resampled = resample_points(points, spec, seed);
        return count_points_in_segments(resampled.positions(), segments.segments());
    }
    const SegmentTrack resampled = resample_segments(segments, spec, seed);
    return count_points_in_segments(points.positions(), resampled.segments());
}

} // namespace

EstimatorMode parse_estimator(std::string_view name) {
    if (name == "raw") {
        return EstimatorMode::Raw;
    }
    if (name == "add-one") {
        return EstimatorMode::AddOne;
    }
    throw ConfigError("unknown estimator '" + std::string(name) + "' (raw, add-one)");
}

std::string_view to_string(EstimatorMode mode) noexcept {
    return mode == EstimatorMode::Raw ? "raw" : "add-one";
}

void MCConfig::validate() const {
    if (n_samples < 1) {
        throw ConfigError("number of Monte Carlo samples must be >= 1");
    }
}

double empirical_pvalue(std::int64_t n_exceed, std::int64_t n_samples, EstimatorMode mode) {
    if (mode == EstimatorMode::Raw) {
        return static_cast<double>(n_exceed) / static_cast<double>(n_samples);
    }
    return static_cast<double>(n_exceed + 1) / static_cast<double>(n_samples + 1);
}

Seed bin_seed(Seed master_seed, std::string_view bin_id) noexcept {
    return derive_seed(master_seed, bin_id);
}

TestResult run_mc_test(const PointTrack& points, const SegmentTrack& segments, const NullModelSpec& spec,
                       const MCConfig& cfg) {
    cfg.validate();
    spec.validate();
    if (!(points.bin() == segments.bin())) {
        throw ValidationError("point and segment tracks are in different bins ('" + points.bin().id() + "' vs '" +
                              segments.bin().id() + "')");
    }
    const std::int64_t observed = count_points_in_segments(points, segments);
    const Seed seed = bin_seed(cfg.master_seed, points.bin().id());

    std::vector<std::int64_t> sampled(static_cast<std::size_t>(cfg.n_samples));
    detail::parallel_for(sampled.size(), cfg.workers, [&](std::size_t i) {
        sampled[i] = sampled_statistic(points, segments, spec, derive_seed(seed, static_cast<std::uint64_t>(i)));
    });
    const Counts counts = tally(sampled, observed);

    TestResult r;
    r.bin_id = points.bin().id();
    r.n_points = static_cast<std::int64_t>(points.size());
    r.observed = static_cast<double>(observed);
    r.n_samples = cfg.n_samples;
    r.null_model = spec;
    switch (cfg.direction) {
    case Direction::Greater:
        r.n_exceed = counts.at_least;
        r.p_value = empirical_pvalue(counts.at_least, cfg.n_samples, cfg.estimator);
        break;
    case Direction::Less:
        r.n_exceed = counts.at_most;
        r.p_value = empirical_pvalue(counts.at_most, cfg.n_samples, cfg.estimator);
        break;
    case Direction::TwoSided:
        r.n_exceed = std::min(counts.at_least, counts.at_most);
        r.p_value = std::min(1.0, 2.0 * empirical_pvalue(r.n_exceed, cfg.n_samples, cfg.estimator));
        break;
    }
    return r;
}

BatchOutcome run_mc_batch(std::span<const BatchItem> tests, const NullModelSpec& spec, const MCConfig& cfg) {
    cfg.validate();
    if (tests.empty()) {
        throw ConfigError("batch needs at least one bin");
    }
    // Bins are the outer parallel unit; each test then samples serially.
    MCConfig inner = cfg;
    inner.workers = 1;
    std::vector<std::optional<TestResult>> results(tests.size());
    std::vector<std::string> failures(tests.size());
    detail::parallel_for(tests.size(), cfg.workers, [&](std::size_t i) {
        try {
            results[i] = run_mc_test(tests[i].points, tests[i].segments, spec, inner);
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    });
    BatchOutcome out;
    for (std::size_t i = 0; i < tests.size(); ++i) {
        if (results[i]) {
            out.results.push_back(std::move(*results[i]));
        } else {
            out.errors.push_back({tests[i].points.bin().id(), failures[i]});
        }
    }
    return out;
}

void write_results_tsv(std::ostream& out, std::span<const TestResult> results) {
    const bool with_q = std::any_of(results.begin(), results.end(), [](const TestResult& r) { return r.q_value; });
    out << "bin_id\tn_points\tstatistic\tp_value\tn_samples\tnull_model";
    if (with_q) {
        out << "\tq_value";
    }
    out << '\n';
    const auto flags = out.flags();
    const auto precision = out.precision();
    out << std::setprecision(10);
    for (const TestResult& r : results) {
        out << r.bin_id << '\t' << r.n_points << '\t' << r.observed << '\t' << r.p_value << '\t' << r.n_samples << '\t'
            << r.null_model.name();
        if (with_q) {
            out << '\t';
            if (r.q_value) {
                out << *r.q_value;
            } else {
                out << "NA";
            }
        }
        out << '\n';
    }
    out.flags(flags);
    out.precision(precision);
}

std::string results_to_json(std::span<const TestResult> results, const MCConfig& cfg, const NullModelSpec& spec) {
    nlohmann::ordered_json doc;
    doc["config"] = {
        {"null_model", spec.name()},
        {"n_samples", cfg.n_samples},
        {"master_seed", cfg.master_seed},
        {"estimator", std::string(to_string(cfg.estimator))},
        {"direction", std::string(to_string(cfg.direction))},
    };
    auto& rows = doc["results"] = nlohmann::ordered_json::array();
    for (const TestResult& r : results) {
        nlohmann::ordered_json row = {
            {"bin_id", r.bin_id},     {"n_points", r.n_points},   {"statistic", r.observed},
            {"p_value", r.p_value},   {"n_samples", r.n_samples}, {"n_exceed", r.n_exceed},
            {"null_model", r.null_model.name()},
        };
        if (r.q_value) {
            row["q_value"] = *r.q_value;
        }
        rows.push_back(std::move(row));
    }
    return doc.dump(2);
}

} // namespace mcnull
