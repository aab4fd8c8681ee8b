#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mcnull {

struct QValueEntry {
    std::string id;
    double p_value = 1.0;
    double q_value = 1.0;
    bool rejected = false;
};

/// q-values in input order, with the pi0 estimate that produced them.
struct QValueReport {
    std::vector<QValueEntry> entries;
    double pi0 = 1.0;
    std::optional<double> fdr_threshold;

    std::size_t rejections() const noexcept;
};

/// Robust proportion-of-nulls estimate min(1, 2 * mean(p)). If every p-value
/// is 0 the estimate would be 0, which is not a usable pi0; 1 is returned
/// instead. Throws ValidationError on empty input or p outside [0, 1].
double estimate_pi0(std::span<const double> pvalues);

/// q_(i) = min_{j >= i} m * pi0 * p_(j) / j over the ascending p-values,
/// capped at 1 and mapped back to input order. Ids default to 1-based indices.
QValueReport qvalues(std::span<const double> pvalues, double pi0);
QValueReport qvalues(std::span<const double> pvalues, double pi0, std::span<const std::string> ids);

/// Flags entries with q <= threshold. threshold must lie in (0, 1).
QValueReport reject_at_fdr(QValueReport report, double threshold);

/// estimate_pi0, qvalues and reject_at_fdr in one call.
QValueReport qvalue_correction(std::span<const double> pvalues, double threshold);

} // namespace mcnull
