#pragma once

#include "mcnull/mc_engine.hpp"
#include "mcnull/null_models.hpp"
#include "mcnull/simgen.hpp"
#include "mcnull/track.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mcnull {

/// How the two independent tracks of a replicate are generated.
enum class GenerationColumn { Uniform, ClusteredPoints, ClusteredSegments };

std::string_view to_string(GenerationColumn column) noexcept;
GenerationColumn parse_generation_column(std::string_view name);

/// One testing assumption: a null model, resolved analytically (binomial,
/// uniform points only) or by Monte Carlo.
struct Assumption {
    std::string label;
    NullModelSpec null_model;
    bool analytic = false;
};

/// The four rows of the false-rejection table.
std::vector<Assumption> false_rejection_assumptions();

struct StudyConfig {
    int n_replicates = 100;
    Coord bin_length = 100000;
    double fdr_threshold = 0.20;
    std::int64_t mc_samples = 1000;
    Seed master_seed = 2013;
    EstimatorMode estimator = EstimatorMode::AddOne;
    Direction direction = Direction::Greater;
    unsigned workers = 1;

    PointGenConfig independent_points = PointGenConfig::independent();
    PointGenConfig clustered_points = PointGenConfig::clustered();
    SegmentGenConfig independent_segments = SegmentGenConfig::independent();
    SegmentGenConfig clustered_segments = SegmentGenConfig::clustered_starts();

    std::vector<GenerationColumn> columns = {GenerationColumn::Uniform, GenerationColumn::ClusteredPoints,
                                             GenerationColumn::ClusteredSegments};
    std::vector<Assumption> assumptions = false_rejection_assumptions();

    void validate() const;
};

struct ReplicateData {
    PointTrack points;
    SegmentTrack segments;
};

/// The (points, segments) pair for one replicate of one column. Depends only
/// on (master seed, column, replicate index).
ReplicateData generate_replicate(const StudyConfig& cfg, GenerationColumn column, int replicate);

/// p-value of one replicate under one assumption.
double assumption_pvalue(const ReplicateData& data, const Assumption& assumption, const StudyConfig& cfg);

/// Rejected-count matrix, rows = assumptions, columns = generation schemes.
struct StudyReport {
    std::vector<std::string> row_labels;
    std::vector<GenerationColumn> columns;
    int n_replicates = 0;
    double fdr_threshold = 0.0;
    std::vector<std::vector<int>> rejected;                 // [row][column]
    std::vector<std::vector<std::vector<double>>> pvalues;  // [row][column][replicate]

    int count(std::size_t row, GenerationColumn column) const;
    void write_tsv(std::ostream& out) const;
};

/// For every column and replicate, generates independent tracks and tests
/// them under every assumption. q-values are computed per (row, column) over
/// the n_replicates p-values and rejections counted at the FDR threshold.
StudyReport run_false_rejection_study(const StudyConfig& cfg);

/// Paired p-values under several null models on identical replicates.
struct OrderingReport {
    std::vector<NullModelSpec> models;
    GenerationColumn column = GenerationColumn::ClusteredPoints;
    std::vector<std::vector<double>> pvalues;  // [model][replicate]

    double median(std::size_t model) const;
    /// Empirical quantiles at 0.1, ..., 0.9 (inverse ECDF).
    std::vector<double> deciles(std::size_t model) const;

    void write_tsv(std::ostream& out) const;
    void write_deciles_tsv(std::ostream& out) const;
};

/// The four point/segment null models, least to most preserving within each side.
std::vector<NullModelSpec> ordering_models();

/// Runs every model in `models` on the replicates of `column`, using the
/// study configuration's sample count, seed, estimator and direction.
OrderingReport run_ordering_experiment(const StudyConfig& cfg, GenerationColumn column,
                                       const std::vector<NullModelSpec>& models);
OrderingReport run_ordering_experiment(const StudyConfig& cfg);

/// Bins with at least `min_points` points and `min_segments` segments, in input order.
std::vector<Bin> filter_bins(std::span<const Bin> bins, std::span<const PointTrack> points,
                             std::span<const SegmentTrack> segments, std::size_t min_points,
                             std::size_t min_segments);

struct SurveyRow {
    std::string track_id;
    std::int64_t tau = 0;
    double k_hat = 0.0;
    double l_hat = 0.0;
};

struct SurveyReport {
    std::vector<SurveyRow> rows;
    std::vector<BatchError> errors;

    void write_tsv(std::ostream& out) const;
};

/// L-hat per (track, scale). A track whose estimate fails is reported in
/// `errors` and the survey continues.
SurveyReport run_clustering_survey(std::span<const PointTrack> tracks, std::span<const std::int64_t> scales);

} // namespace mcnull
