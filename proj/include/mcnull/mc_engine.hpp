#pragma once

#include "mcnull/null_models.hpp"
#include "mcnull/rng.hpp"
#include "mcnull/statistics.hpp"
#include "mcnull/track.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mcnull {

/// Raw: n_exceed / n_samples. AddOne: (n_exceed + 1) / (n_samples + 1), which
/// counts the observed statistic in the pool and is a valid p-value.
enum class EstimatorMode { Raw, AddOne };

EstimatorMode parse_estimator(std::string_view name);
std::string_view to_string(EstimatorMode mode) noexcept;

struct MCConfig {
    std::int64_t n_samples = 10000;
    Seed master_seed = 1;
    EstimatorMode estimator = EstimatorMode::AddOne;
    Direction direction = Direction::Greater;
    // Execution only: never changes any result.
    unsigned workers = 1;

    void validate() const;
};

struct TestResult {
    std::string bin_id;
    std::int64_t n_points = 0;
    double observed = 0.0;
    double p_value = 1.0;
    std::int64_t n_samples = 0;
    // For two-sided tests, the smaller of the two one-sided counts.
    std::int64_t n_exceed = 0;
    NullModelSpec null_model;
    std::optional<double> q_value;
};

/// p-value from an exceedance count.
double empirical_pvalue(std::int64_t n_exceed, std::int64_t n_samples, EstimatorMode mode);

/// Seed for one bin: hash of (master seed, bin id). Sample i then uses
/// derive_seed(bin_seed(...), i).
Seed bin_seed(Seed master_seed, std::string_view bin_id) noexcept;

/// Monte Carlo test of "points fall inside segments" for one bin. The side
/// named by `spec` is resampled n_samples times while the other side is held
/// fixed; the statistic is the number of points inside segments and ties
/// count as exceedances.
TestResult run_mc_test(const PointTrack& points, const SegmentTrack& segments, const NullModelSpec& spec,
                       const MCConfig& cfg);

struct BatchItem {
    PointTrack points;
    SegmentTrack segments;
};

struct BatchError {
    std::string bin_id;
    std::string message;
};

struct BatchOutcome {
    std::vector<TestResult> results;
    std::vector<BatchError> errors;
};

/// One test per bin; results are returned in input order. Each bin's seed
/// depends only on (master seed, bin id), so reordering bins or changing the
/// worker count leaves every p-value unchanged. Failing bins are reported in
/// `errors` and the rest of the batch still runs.
BatchOutcome run_mc_batch(std::span<const BatchItem> tests, const NullModelSpec& spec, const MCConfig& cfg);

/// TSV: bin_id, n_points, statistic, p_value, n_samples, null_model
/// (plus q_value when any result carries one).
void write_results_tsv(std::ostream& out, std::span<const TestResult> results);

/// JSON document with the configuration echoed next to the results.
std::string results_to_json(std::span<const TestResult> results, const MCConfig& cfg, const NullModelSpec& spec);

} // namespace mcnull
