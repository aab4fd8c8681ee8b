#include "mcnull/harness.hpp"

#include "mcnull/clustering.hpp"
#include "mcnull/errors.hpp"
#include "mcnull/multiple_testing.hpp"
#include "mcnull/statistics.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace mcnull {
namespace {

std::string replicate_id(GenerationColumn column, int replicate) {
    std::ostringstream id;
    id << to_string(column) << '-' << std::setw(3) << std::setfill('0') << replicate;
    return id.str();
}

MCConfig mc_config(const StudyConfig& cfg) {
    MCConfig mc;
    mc.n_samples = cfg.mc_samples;
    mc.master_seed = derive_seed(cfg.master_seed, std::string_view("mc"));
    mc.estimator = cfg.estimator;
    mc.direction = cfg.direction;
    mc.workers = 1;
    return mc;
}

double quantile_type1(std::vector<double> values, double prob) {
    std::sort(values.begin(), values.end());
    const auto m = static_cast<double>(values.size());
    auto rank = static_cast<std::size_t>(std::ceil(prob * m - 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, values.size());
    return values[rank - 1];
}

} // namespace

std::string_view to_string(GenerationColumn column) noexcept {
    switch (column) {
    case GenerationColumn::Uniform:
        return "uniform";
    case GenerationColumn::ClusteredPoints:
        return "clustered-points";
    case GenerationColumn::ClusteredSegments:
        return "clustered-segments";
    }
    return "uniform";
}

GenerationColumn parse_generation_column(std::string_view name) {
    for (auto c : {GenerationColumn::Uniform, GenerationColumn::ClusteredPoints, GenerationColumn::ClusteredSegments}) {
        if (name == to_string(c)) {
            return c;
        }
    }
    throw ConfigError("unknown generation scheme '" + std::string(name) +
                      "' (uniform, clustered-points, clustered-segments)");
}

std::vector<Assumption> false_rejection_assumptions() {
    return {
        {"uniform-point-location-analytic", NullModelSpec::uniform_points(), true},
        {"uniform-point-location-mc", NullModelSpec::uniform_points(), false},
        {"preserve-interpoint-distances", NullModelSpec::preserve_interpoint(), false},
        {"uniform-segment-location-mc", NullModelSpec::uniform_segments(), false},
    };
}

void StudyConfig::validate() const {
    if (n_replicates < 1) {
        throw ConfigError("need at least one replicate");
    }
    if (bin_length < 1) {
        throw ConfigError("bin length must be positive");
    }
    if (!(fdr_threshold > 0.0 && fdr_threshold < 1.0)) {
        throw ConfigError("FDR threshold must lie in (0, 1)");
    }
    if (mc_samples < 1) {
        throw ConfigError("number of Monte Carlo samples must be >= 1");
    }
    independent_points.validate();
    clustered_points.validate();
    independent_segments.validate();
    clustered_segments.validate();
    for (const Assumption& a : assumptions) {
        a.null_model.validate();
        if (a.analytic && !(a.null_model == NullModelSpec::uniform_points())) {
            throw ConfigError("analytic p-values exist for uniform point location only");
        }
    }
}

ReplicateData generate_replicate(const StudyConfig& cfg, GenerationColumn column, int replicate) {
    const std::string id = replicate_id(column, replicate);
    const Bin bin(id, 0, cfg.bin_length);
    const PointGenConfig& point_cfg =
        column == GenerationColumn::ClusteredPoints ? cfg.clustered_points : cfg.independent_points;
    const SegmentGenConfig& segment_cfg =
        column == GenerationColumn::ClusteredSegments ? cfg.clustered_segments : cfg.independent_segments;
    const Seed base = derive_seed(cfg.master_seed, id);
    return {generate_points(bin, point_cfg, derive_seed(base, std::string_view("points"))),
            generate_segments(bin, segment_cfg, derive_seed(base, std::string_view("segments")))};
}

double assumption_pvalue(const ReplicateData& data, const Assumption& assumption, const StudyConfig& cfg) {
    if (assumption.analytic) {
        const auto n = static_cast<std::int64_t>(data.points.size());
        const std::int64_t t = count_points_in_segments(data.points, data.segments);
        return binomial_pvalue(t, n, coverage_fraction(data.segments), cfg.direction);
    }
    return run_mc_test(data.points, data.segments, assumption.null_model, mc_config(cfg)).p_value;
}

int StudyReport::count(std::size_t row, GenerationColumn column) const {
    const auto it = std::find(columns.begin(), columns.end(), column);
    if (it == columns.end()) {
        throw ConfigError("column not part of this study");
    }
    return rejected.at(row).at(static_cast<std::size_t>(it - columns.begin()));
}

void StudyReport::write_tsv(std::ostream& out) const {
    out << "assumption";
    for (GenerationColumn c : columns) {
        out << '\t' << to_string(c);
    }
    out << '\n';
    for (std::size_t r = 0; r < row_labels.size(); ++r) {
        out << row_labels[r];
        for (std::size_t c = 0; c < columns.size(); ++c) {
            out << '\t' << rejected[r][c] << '/' << n_replicates;
        }
        out << '\n';
    }
}

StudyReport run_false_rejection_study(const StudyConfig& cfg) {
    cfg.validate();
    const std::size_t rows = cfg.assumptions.size();
    const std::size_t cols = cfg.columns.size();
    const auto reps = static_cast<std::size_t>(cfg.n_replicates);

    StudyReport report;
    report.columns = cfg.columns;
    report.n_replicates = cfg.n_replicates;
    report.fdr_threshold = cfg.fdr_threshold;
    for (const Assumption& a : cfg.assumptions) {
        report.row_labels.push_back(a.label);
    }
    report.pvalues.assign(rows, std::vector<std::vector<double>>(cols, std::vector<double>(reps, 1.0)));

    detail::parallel_for(cols * reps, cfg.workers, [&](std::size_t unit) {
        const std::size_t c = unit / reps;
        const std::size_t r = unit % reps;
        const ReplicateData data = generate_replicate(cfg, cfg.columns[c], static_cast<int>(r));
        for (std::size_t a = 0; a < rows; ++a) {
            report.pvalues[a][c][r] = assumption_pvalue(data, cfg.assumptions[a], cfg);
        }
    });

    report.rejected.assign(rows, std::vector<int>(cols, 0));
    for (std::size_t a = 0; a < rows; ++a) {
        for (std::size_t c = 0; c < cols; ++c) {
            const QValueReport q = qvalue_correction(report.pvalues[a][c], cfg.fdr_threshold);
            report.rejected[a][c] = static_cast<int>(q.rejections());
        }
    }
    return report;
}

std::vector<NullModelSpec> ordering_models() {
    return {NullModelSpec::uniform_points(), NullModelSpec::preserve_interpoint(), NullModelSpec::uniform_segments(),
            NullModelSpec::preserve_intersegment()};
}

double OrderingReport::median(std::size_t model) const {
    auto v = pvalues.at(model);
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size();
    return m % 2 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

std::vector<double> OrderingReport::deciles(std::size_t model) const {
    std::vector<double> out;
    for (int k = 1; k <= 9; ++k) {
        out.push_back(quantile_type1(pvalues.at(model), k / 10.0));
    }
    return out;
}

void OrderingReport::write_tsv(std::ostream& out) const {
    out << "replicate";
    for (const NullModelSpec& m : models) {
        out << '\t' << m.name();
    }
    out << '\n';
    const auto flags = out.flags();
    const auto precision = out.precision();
    out << std::setprecision(10);
    const std::size_t reps = pvalues.empty() ? 0 : pvalues.front().size();
    for (std::size_t r = 0; r < reps; ++r) {
        out << replicate_id(column, static_cast<int>(r));
        for (std::size_t m = 0; m < models.size(); ++m) {
            out << '\t' << pvalues[m][r];
        }
        out << '\n';
    }
    out.flags(flags);
    out.precision(precision);
}

void OrderingReport::write_deciles_tsv(std::ostream& out) const {
    out << "quantile";
    for (const NullModelSpec& m : models) {
        out << '\t' << m.name();
    }
    out << '\n';
    std::vector<std::vector<double>> q;
    for (std::size_t m = 0; m < models.size(); ++m) {
        q.push_back(deciles(m));
    }
    const auto flags = out.flags();
    const auto precision = out.precision();
    out << std::setprecision(10);
    for (std::size_t k = 0; k < 9; ++k) {
        out << (k + 1) / 10.0;
        for (std::size_t m = 0; m < models.size(); ++m) {
            out << '\t' << q[m][k];
        }
        out << '\n';
    }
    out.flags(flags);
    out.precision(precision);
}

OrderingReport run_ordering_experiment(const StudyConfig& cfg, GenerationColumn column,
                                       const std::vector<NullModelSpec>& models) {
    cfg.validate();
    OrderingReport report;
    report.models = models;
    report.column = column;
    const auto reps = static_cast<std::size_t>(cfg.n_replicates);
    report.pvalues.assign(models.size(), std::vector<double>(reps, 1.0));
    detail::parallel_for(reps, cfg.workers, [&](std::size_t r) {
        const ReplicateData data = generate_replicate(cfg, column, static_cast<int>(r));
        for (std::size_t m = 0; m < models.size(); ++m) {
            report.pvalues[m][r] = run_mc_test(data.points, data.segments, models[m], mc_config(cfg)).p_value;
        }
    });
    return report;
}

OrderingReport run_ordering_experiment(const StudyConfig& cfg) {
    return run_ordering_experiment(cfg, GenerationColumn::ClusteredPoints, ordering_models());
}

std::vector<Bin> filter_bins(std::span<const Bin> bins, std::span<const PointTrack> points,
                             std::span<const SegmentTrack> segments, std::size_t min_points,
                             std::size_t min_segments) {
    if (points.size() != bins.size() || segments.size() != bins.size()) {
        throw ValidationError("need one point track and one segment track per bin");
    }
    std::vector<Bin> kept;
    for (std::size_t i = 0; i < bins.size(); ++i) {
        if (points[i].size() >= min_points && segments[i].size() >= min_segments) {
            kept.push_back(bins[i]);
        }
    }
    return kept;
}

void SurveyReport::write_tsv(std::ostream& out) const {
    out << "track_id\ttau\tK_hat\tL_hat\n";
    const auto flags = out.flags();
    const auto precision = out.precision();
    out << std::setprecision(10);
    for (const SurveyRow& r : rows) {
        out << r.track_id << '\t' << r.tau << '\t' << r.k_hat << '\t' << r.l_hat << '\n';
    }
    out.flags(flags);
    out.precision(precision);
}

SurveyReport run_clustering_survey(std::span<const PointTrack> tracks, std::span<const std::int64_t> scales) {
    SurveyReport report;
    for (const PointTrack& t : tracks) {
        try {
            const ClusteringProfile prof = estimate_l_profile(t, scales);
            for (std::size_t i = 0; i < prof.scales.size(); ++i) {
                report.rows.push_back({t.bin().id(), prof.scales[i], prof.k_values[i], prof.l_values[i]});
            }
        } catch (const std::exception& e) {
            report.errors.push_back({t.bin().id(), e.what()});
        }
    }
    return report;
}

} // namespace mcnull
