#include "mcnull/multiple_testing.hpp"

#include "mcnull/errors.hpp"

#include <algorithm>
#include <numeric>

namespace mcnull {
namespace {

void check_pvalues(std::span<const double> pvalues) {
    if (pvalues.empty()) {
        throw ValidationError("need at least one p-value");
    }
    for (double p : pvalues) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw ValidationError("p-values must lie in [0, 1]");
        }
    }
}

} // namespace

std::size_t QValueReport::rejections() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [](const QValueEntry& e) { return e.rejected; }));
}

double estimate_pi0(std::span<const double> pvalues) {
    check_pvalues(pvalues);
    const double mean = std::accumulate(pvalues.begin(), pvalues.end(), 0.0) / static_cast<double>(pvalues.size());
    const double pi0 = std::min(1.0, 2.0 * mean);
    return pi0 > 0.0 ? pi0 : 1.0;
}

QValueReport qvalues(std::span<const double> pvalues, double pi0) {
    std::vector<std::string> ids(pvalues.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        ids[i] = std::to_string(i + 1);
    }
    return qvalues(pvalues, pi0, ids);
}

QValueReport qvalues(std::span<const double> pvalues, double pi0, std::span<const std::string> ids) {
    check_pvalues(pvalues);
    if (!(pi0 > 0.0 && pi0 <= 1.0)) {
        throw ValidationError("pi0 must lie in (0, 1]");
    }
    if (ids.size() != pvalues.size()) {
        throw ValidationError("one id per p-value required");
    }
    const std::size_t m = pvalues.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pvalues[a] < pvalues[b]; });

    QValueReport report;
    report.pi0 = pi0;
    report.entries.resize(m);
    const double md = static_cast<double>(m);
    double running = 1.0;
    for (std::size_t r = m; r-- > 0;) {
        const std::size_t i = order[r];
        const double candidate = md * pi0 * pvalues[i] / static_cast<double>(r + 1);
        running = std::min(running, candidate);
        report.entries[i] = {ids[i], pvalues[i], running, false};
    }
    return report;
}

QValueReport reject_at_fdr(QValueReport report, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw ValidationError("FDR threshold must lie in (0, 1)");
    }
    report.fdr_threshold = threshold;
    for (QValueEntry& e : report.entries) {
        e.rejected = e.q_value <= threshold;
    }
    return report;
}

QValueReport qvalue_correction(std::span<const double> pvalues, double threshold) {
    return reject_at_fdr(qvalues(pvalues, estimate_pi0(pvalues)), threshold);
}

} // namespace mcnull
