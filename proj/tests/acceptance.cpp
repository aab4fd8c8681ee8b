// Acceptance suite: one PASS/FAIL line per criterion, detail lines indented.
// Exit status is the number of failing criteria (capped at 1).

#include "test_support.hpp"

#include <mcnull/harness.hpp>
#include <mcnull/multiple_testing.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

using namespace mcnull;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "  failed: " << what << '\n';
        }
    }
};

int failures = 0;

template <typename Fn>
void criterion(int id, const std::string& title, Fn&& fn) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        fn(out);
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail << "  exception: " << e.what() << '\n';
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << out.detail.str();
    std::cout << (out.pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << "  (" << std::fixed
              << std::setprecision(1) << secs << " s)" << std::endl;
    std::cout.unsetf(std::ios::fixed);
    if (!out.pass) ++failures;
}

fs::path out_dir() {
    const auto dir = fs::temp_directory_path() / "mcnull_acceptance";
    fs::create_directories(dir);
    return dir;
}

template <typename Writer>
void write_file(const fs::path& path, Writer&& w) {
    std::ofstream f(path, std::ios::binary);
    w(f);
}

std::string slurp(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

// Criterion 1 ---------------------------------------------------------------

void write_study(const StudyConfig& cfg, const fs::path& path, StudyReport* keep = nullptr) {
    auto report = run_false_rejection_study(cfg);
    write_file(path, [&](std::ostream& o) { report.write_tsv(o); });
    if (keep) *keep = std::move(report);
}

// Criterion 2 ---------------------------------------------------------------

StudyConfig ordering_config() {
    StudyConfig cfg;
    cfg.direction = Direction::TwoSided;
    return cfg;
}

void write_ordering(const StudyConfig& cfg, const fs::path& path, OrderingReport* keep = nullptr) {
    auto report = run_ordering_experiment(cfg);
    write_file(path, [&](std::ostream& o) {
        report.write_tsv(o);
        report.write_deciles_tsv(o);
    });
    if (keep) *keep = std::move(report);
}

// Criterion 4 ---------------------------------------------------------------

std::vector<BatchItem> agreement_bins() {
    std::vector<BatchItem> items;
    Rng rng(4004);
    for (int i = 0; i < 20; ++i) {
        const Coord len = rng.between(20000, 100000);
        const Bin bin("syn" + std::to_string(i), 0, len);
        const auto n = rng.between(20, 200);
        auto pos = sample_sorted_subset(len, n, rng);
        auto segs = generate_segments(bin, SegmentGenConfig::independent(), rng.next());
        items.push_back({PointTrack(bin, std::move(pos)), std::move(segs)});
    }
    return items;
}

MCConfig agreement_config() {
    MCConfig cfg;
    cfg.n_samples = 10000;
    cfg.master_seed = 404;
    cfg.estimator = EstimatorMode::Raw;
    return cfg;
}

void write_batch(const std::vector<BatchItem>& items, const MCConfig& cfg, const fs::path& path,
                 BatchOutcome* keep = nullptr) {
    auto out = run_mc_batch(items, NullModelSpec::uniform_points(), cfg);
    write_file(path, [&](std::ostream& o) { write_results_tsv(o, out.results); });
    if (keep) *keep = std::move(out);
}

// Oracles ---------------------------------------------------------------------

std::vector<double> brute_q(const std::vector<double>& p, double pi0) {
    const auto m = static_cast<double>(p.size());
    std::vector<double> q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        double best = 1.0;
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (p[k] < p[i]) continue;
            const auto rank = std::count_if(p.begin(), p.end(), [&](double v) { return v <= p[k]; });
            best = std::min(best, m * pi0 * p[k] / static_cast<double>(rank));
        }
        q[i] = best;
    }
    return q;
}

double brute_variance(double sigma2, const std::vector<double>& rho, const std::vector<double>& y) {
    const auto n = static_cast<std::int64_t>(y.size());
    double var = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t j = 0; j < n; ++j) {
            const auto d = static_cast<std::size_t>(std::llabs(i - j));
            const double r = d < rho.size() ? rho[d] : 0.0;
            var += y[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)] * sigma2 * r;
        }
    }
    return var / static_cast<double>(n * n);
}

std::multiset<Coord> gaps_of(const std::vector<Coord>& p) {
    std::multiset<Coord> g;
    for (std::size_t i = 1; i < p.size(); ++i) g.insert(p[i] - p[i - 1]);
    return g;
}

} // namespace

int main() {
    const auto dir = out_dir();
    std::cout << "output files in " << dir.string() << "\n";

    criterion(1, "false-rejection table with default settings", [&](Outcome& o) {
        StudyConfig cfg;
        StudyReport report;
        write_study(cfg, dir / "study_w1.tsv", &report);
        o.detail << "  rejections out of " << cfg.n_replicates << " at FDR " << cfg.fdr_threshold << ":\n";
        o.detail << "  " << std::left << std::setw(34) << "assumption";
        for (auto c : report.columns) o.detail << std::setw(20) << to_string(c);
        o.detail << '\n';
        for (std::size_t r = 0; r < report.row_labels.size(); ++r) {
            o.detail << "  " << std::setw(34) << report.row_labels[r];
            for (std::size_t c = 0; c < report.columns.size(); ++c) o.detail << std::setw(20) << report.rejected[r][c];
            o.detail << '\n';
        }
        o.detail << std::right;

        for (std::size_t r = 0; r < 4; ++r) {
            o.require(report.count(r, GenerationColumn::Uniform) <= 3, report.row_labels[r] + " on uniform data <= 3");
        }
        for (std::size_t r : {0u, 1u}) {
            const int k = report.count(r, GenerationColumn::ClusteredPoints);
            o.require(k >= 5 && k <= 40, report.row_labels[r] + " on clustered points in [5, 40]");
            o.require(report.count(r, GenerationColumn::ClusteredSegments) <= 3,
                      report.row_labels[r] + " on clustered segments <= 3");
        }
        o.require(report.count(2, GenerationColumn::ClusteredPoints) <= 3,
                  "preserve-interpoint on clustered points <= 3");
        o.detail << "  preserve-interpoint minus uniform-point (mc) on clustered points: "
                 << report.count(2, GenerationColumn::ClusteredPoints) - report.count(1, GenerationColumn::ClusteredPoints)
                 << " (structure bound: <= 2)\n";
    });

    criterion(2, "null-complexity ordering on clustered points", [&](Outcome& o) {
        const auto cfg = ordering_config();
        OrderingReport report;
        write_ordering(cfg, dir / "ordering_w1.tsv", &report);
        const std::size_t up = 0, pp = 1, us = 2, ps = 3;
        o.detail << "  direction " << to_string(cfg.direction) << ", " << cfg.n_replicates << " replicates, "
                 << cfg.mc_samples << " samples\n";
        o.detail << "  median p: ";
        for (std::size_t m = 0; m < report.models.size(); ++m)
            o.detail << report.models[m].name() << '=' << report.median(m) << ' ';
        o.detail << '\n';
        o.require(report.median(pp) >= report.median(up), "median(preserve-interpoint) >= median(uniform-points)");

        std::vector<std::vector<double>> q;
        for (std::size_t m = 0; m < report.models.size(); ++m) q.push_back(report.deciles(m));
        o.detail << "  decile  uniform-points  preserve-interpoint  uniform-segments  preserve-intersegment\n";
        for (std::size_t d = 0; d < 9; ++d) {
            o.detail << "  " << 0.1 * static_cast<double>(d + 1) << "     " << q[up][d] << "  " << q[pp][d] << "  "
                     << q[us][d] << "  " << q[ps][d] << '\n';
            const std::string at = " at decile " + std::to_string(d + 1);
            o.require(q[up][d] <= q[pp][d], "uniform-points <= preserve-interpoint" + at);
            o.require(std::min(q[us][d], q[ps][d]) >= std::max(q[up][d], q[pp][d]),
                      "segment models >= point models" + at);
        }
    });

    criterion(3, "Ripley identity for independent points, excess for clustered", [&](Outcome& o) {
        std::vector<PointTrack> ind, clu;
        for (int r = 0; r < 50; ++r) {
            const Bin bin("rep" + std::to_string(r), 0, 10000);
            ind.push_back(generate_points(bin, PointGenConfig::independent(), derive_seed(3003, r)));
            clu.push_back(generate_points(bin, PointGenConfig::clustered(), derive_seed(3004, r)));
        }
        const std::vector<std::int64_t> scales{25, 50};
        const auto si = run_clustering_survey(ind, scales);
        const auto sc = run_clustering_survey(clu, scales);
        write_file(dir / "survey.tsv", [&](std::ostream& f) {
            si.write_tsv(f);
            sc.write_tsv(f);
        });
        o.require(si.errors.empty() && sc.errors.empty(), "every track has an estimate");
        auto mean_at = [](const SurveyReport& s, std::int64_t tau) {
            double sum = 0.0, n = 0.0;
            for (const auto& row : s.rows) {
                if (row.tau == tau) {
                    sum += row.l_hat;
                    n += 1.0;
                }
            }
            return sum / n;
        };
        for (std::int64_t tau : scales) {
            const double l = mean_at(si, tau);
            o.detail << "  independent mean L(" << tau << ") = " << l << '\n';
            o.require(l >= 0.9 && l <= 1.1, "independent mean L(" + std::to_string(tau) + ") in [0.9, 1.1]");
        }
        const double lc = mean_at(sc, 50);
        o.detail << "  clustered mean L(50) = " << lc << '\n';
        o.require(lc > 1.5, "clustered mean L(50) > 1.5");
    });

    criterion(4, "binomial tail agrees with raw Monte Carlo on 20 bins", [&](Outcome& o) {
        const auto items = agreement_bins();
        BatchOutcome out;
        write_batch(items, agreement_config(), dir / "batch_w1.tsv", &out);
        o.require(out.errors.empty() && out.results.size() == items.size(), "every bin tested");
        double worst = 0.0;
        for (std::size_t i = 0; i < out.results.size(); ++i) {
            const auto& r = out.results[i];
            const double exact = binomial_upper_pvalue(static_cast<std::int64_t>(r.observed), r.n_points,
                                                       coverage_fraction(items[i].segments));
            const double diff = std::abs(exact - r.p_value);
            worst = std::max(worst, diff);
            o.require(diff <= 0.02, r.bin_id + ": |binomial - mc| <= 0.02");
        }
        o.detail << "  largest difference " << worst << '\n';
    });

    criterion(5, "q-values equal the quadratic oracle", [&](Outcome& o) {
        const std::vector<double> example{0.01, 0.02, 0.9};
        const auto ex = qvalues(example, 1.0);
        o.require(ex.entries[0].q_value == 0.03 && ex.entries[1].q_value == 0.03 && ex.entries[2].q_value == 0.9,
                  "worked example {0.01,0.02,0.9} -> {0.03,0.03,0.9}");
        Rng rng(5005);
        int mismatches = 0;
        for (int v = 0; v < 1000; ++v) {
            const auto m = static_cast<std::size_t>(rng.between(1, 200));
            std::vector<double> p(m);
            for (auto& x : p) {
                const double u = rng.uniform();
                x = u < 0.1 ? 0.0 : u < 0.2 ? rng.uniform() * 1e-4 : u < 0.3 ? 0.5 : rng.uniform();
            }
            const double pi0 = estimate_pi0(p);
            const auto got = qvalues(p, pi0);
            const auto want = brute_q(p, pi0);
            for (std::size_t i = 0; i < m; ++i) {
                if (got.entries[i].q_value != want[i]) ++mismatches;
            }
        }
        o.detail << "  mismatching entries: " << mismatches << '\n';
        o.require(mismatches == 0, "1000 random vectors match exactly");
    });

    criterion(6, "minimum add-one p-value with 10,000 samples", [&](Outcome& o) {
        const Bin bin("min", 0, 100000);
        std::vector<Coord> inside;
        for (Coord i = 0; i < 50; ++i) inside.push_back(i * 2);
        const PointTrack pts(bin, inside);
        const SegmentTrack segs(bin, {{0, 100}});
        MCConfig cfg;
        cfg.n_samples = 10000;
        cfg.estimator = EstimatorMode::AddOne;
        const auto r = run_mc_test(pts, segs, NullModelSpec::uniform_points(), cfg);
        o.detail << "  exceedances " << r.n_exceed << ", p = " << r.p_value << '\n';
        o.require(r.n_exceed == 0, "no sampled statistic reaches the observed one");
        o.require(std::abs(r.p_value - 1e-4) <= 0.01 * 1e-4, "p within 1% of 1e-4");
    });

    criterion(7, "preserve-interpoint support inside uniform-points support", [&](Outcome& o) {
        std::int64_t tracks = 0;
        for (Coord len = 1; len <= 12; ++len) {
            const Bin bin("enum", 0, len);
            for (std::int64_t n = 0; n <= std::min<std::int64_t>(4, len); ++n) {
                const auto all = testsupport::all_subsets(len, n);
                const std::set<std::vector<Coord>> uniform(all.begin(), all.end());
                for (const auto& original : all) {
                    ++tracks;
                    const PointTrack t(bin, original);
                    std::set<std::vector<Coord>> preserve;
                    const auto g = gaps_of(original);
                    for (const auto& s : all) {
                        if (gaps_of(s) == g) preserve.insert(s);
                    }
                    bool inside = true;
                    for (const auto& s : preserve) inside = inside && uniform.count(s) == 1;
                    for (int d = 0; d < 20; ++d) {
                        const auto r = resample_points_preserve_distances(t, derive_seed(7007, tracks * 100 + d));
                        inside = inside && preserve.count({r.positions().begin(), r.positions().end()}) == 1;
                    }
                    const auto sp = state_space_size(t, NullModelSpec::preserve_interpoint());
                    const auto su = state_space_size(t, NullModelSpec::uniform_points());
                    const bool sizes = sp && su && *sp == preserve.size() && *su == uniform.size() && *sp <= *su;
                    if (!inside || !sizes) {
                        o.require(false, "track of " + std::to_string(n) + " points in " + std::to_string(len) + " bp");
                    }
                }
            }
        }
        o.detail << "  enumerated " << tracks << " tracks\n";
    });

    criterion(8, "variance ordering under dominating correlation", [&](Outcome& o) {
        Rng rng(8008);
        double worst = 0.0;
        for (int inst = 0; inst < 100; ++inst) {
            const double lambda = 0.001 + 0.5 * rng.uniform();
            const double sigma2 = lambda * (1.0 - lambda);
            const auto n = static_cast<std::size_t>(rng.between(1, 120));
            std::vector<double> y(n);
            for (auto& v : y) v = rng.uniform() * 2.0;
            const auto dmax = static_cast<std::size_t>(rng.between(0, 30));
            std::vector<double> rho2(dmax + 1), rho1(dmax + 1);
            rho1[0] = rho2[0] = 1.0;
            for (std::size_t d = 1; d <= dmax; ++d) {
                rho2[d] = rho2[d - 1] * rng.uniform();
                rho1[d] = std::min(rho1[d - 1], rho2[d] + (rho1[d - 1] - rho2[d]) * rng.uniform());
            }
            const auto m1 = statistic_moments_under_stationarity(lambda, sigma2, rho1, WeightVector{y});
            const auto m2 = statistic_moments_under_stationarity(lambda, sigma2, rho2, WeightVector{y});
            const double b1 = brute_variance(sigma2, rho1, y);
            const double b2 = brute_variance(sigma2, rho2, y);
            worst = std::max({worst, std::abs(m1.variance - b1), std::abs(m2.variance - b2)});
            o.require(m1.variance >= m2.variance, "instance " + std::to_string(inst) + ": Var(rho1) >= Var(rho2)");
        }
        o.detail << "  largest deviation from the double sum " << worst << '\n';
        o.require(worst <= 1e-10, "variances match the double sum within 1e-10");
    });

    criterion(9, "byte-identical outputs with 4 workers", [&](Outcome& o) {
        StudyConfig study;
        study.workers = 4;
        write_study(study, dir / "study_w4.tsv");
        auto ordering = ordering_config();
        ordering.workers = 4;
        write_ordering(ordering, dir / "ordering_w4.tsv");
        auto mc = agreement_config();
        mc.workers = 4;
        write_batch(agreement_bins(), mc, dir / "batch_w4.tsv");
        for (const char* name : {"study", "ordering", "batch"}) {
            const auto a = slurp(dir / (std::string(name) + "_w1.tsv"));
            const auto b = slurp(dir / (std::string(name) + "_w4.tsv"));
            o.detail << "  " << name << ": " << a.size() << " bytes, " << (a == b ? "identical" : "DIFFERENT") << '\n';
            o.require(!a.empty() && a == b, std::string(name) + " output identical");
        }
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
