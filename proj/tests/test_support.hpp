#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

namespace testsupport {

// Pearson statistic for observed counts against equal expected frequencies.
template <typename Key>
double chi_square_uniform(const std::map<Key, std::int64_t>& counts, std::size_t n_states, std::int64_t draws) {
    const double expected = static_cast<double>(draws) / static_cast<double>(n_states);
    double stat = 0.0;
    for (const auto& [key, c] : counts) {
        const double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    // States never observed contribute expected each.
    stat += static_cast<double>(n_states - counts.size()) * expected;
    return stat;
}

// Upper 1% points of the chi-square distribution.
inline double chi2_crit_99(int df) {
    switch (df) {
    case 1: return 6.6348966010212145;
    case 5: return 15.08627246938899;
    case 7: return 18.475306906582357;
    case 11: return 24.724970311318277;
    case 13: return 27.68824961045705;
    case 30: return 50.89218131151707;
    case 119: return 157.79954116016174;
    default: return -1.0;
    }
}

// All k-subsets of {0..n-1}, ascending within each subset.
inline std::vector<std::vector<std::int64_t>> all_subsets(std::int64_t n, std::int64_t k) {
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> cur;
    auto rec = [&](auto&& self, std::int64_t next) -> void {
        if (static_cast<std::int64_t>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (std::int64_t v = next; v < n; ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace testsupport
