// mcnull: Monte Carlo null-model tests for point and segment tracks.

#include "mcnull/clustering.hpp"
#include "mcnull/errors.hpp"
#include "mcnull/harness.hpp"
#include "mcnull/mc_engine.hpp"
#include "mcnull/multiple_testing.hpp"
#include "mcnull/simgen.hpp"
#include "mcnull/track_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace mcnull;

namespace {

struct McOptions {
    std::string null_model = "uniform-points";
    std::int64_t samples = 10000;
    std::uint64_t seed = 1;
    std::string direction = "greater";
    std::string estimator = "add-one";
    unsigned workers = 1;

    void add_to(CLI::App& app) {
        app.add_option("--null-model", null_model,
                       "uniform-points | preserve-interpoint | uniform-segments | preserve-intersegment | block:<k>")
            ->capture_default_str();
        app.add_option("--samples", samples, "Monte Carlo samples")->capture_default_str();
        app.add_option("--seed", seed, "master seed")->capture_default_str();
        app.add_option("--direction", direction, "greater | less | two-sided")->capture_default_str();
        app.add_option("--estimator", estimator, "raw | add-one")->capture_default_str();
        app.add_option("--workers", workers, "worker threads (never changes results)")->capture_default_str();
    }

    MCConfig config() const {
        MCConfig cfg;
        cfg.n_samples = samples;
        cfg.master_seed = seed;
        cfg.direction = parse_direction(direction);
        cfg.estimator = parse_estimator(estimator);
        cfg.workers = workers;
        cfg.validate();
        return cfg;
    }

    void echo(std::ostream& out) const {
        out << "# null_model=" << null_model << "\n# samples=" << samples << "\n# seed=" << seed
            << "\n# direction=" << direction << "\n# estimator=" << estimator << '\n';
    }
};

// Writes to the named file, or stdout when the name is empty or "-".
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path);
            if (!file_) {
                throw ValidationError("cannot write '" + path + "'");
            }
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) {
        throw ValidationError("cannot write '" + path + "'");
    }
    out << text << '\n';
}

std::vector<std::string> split_tsv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, '\t')) {
        fields.push_back(f);
    }
    if (!line.empty() && line.back() == '\t') {
        fields.emplace_back();
    }
    return fields;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo null-model hypothesis tests for genomic point and segment tracks"};
    app.require_subcommand(1);
    std::string output;
    app.add_option("-o,--output", output, "output file (default stdout)");

    // test
    auto* test = app.add_subcommand("test", "test one bin: are points enriched inside segments?");
    McOptions test_opts;
    test_opts.add_to(*test);
    std::string points_path, segments_path, bin_id = "bin", json_path;
    Coord bin_start = 0, bin_end = 0;
    test->add_option("--points", points_path, "point track (1 or 2 columns)")->required();
    test->add_option("--segments", segments_path, "segment track (2 columns)")->required();
    test->add_option("--bin-id", bin_id)->capture_default_str();
    test->add_option("--bin-start", bin_start)->capture_default_str();
    test->add_option("--bin-end", bin_end)->required();
    test->add_option("--json", json_path, "also write JSON with the configuration");

    // batch
    auto* batch = app.add_subcommand("batch", "one test per bin, with q-values");
    McOptions batch_opts;
    batch_opts.add_to(*batch);
    std::string bins_path;
    double fdr = 0.1;
    std::size_t min_points = 0, min_segments = 0;
    batch->add_option("--bins", bins_path, "bins file (id, start, end)")->required();
    batch->add_option("--points", points_path)->required();
    batch->add_option("--segments", segments_path)->required();
    batch->add_option("--fdr", fdr, "FDR threshold for the rejected column")->capture_default_str();
    batch->add_option("--min-points", min_points, "skip bins with fewer points")->capture_default_str();
    batch->add_option("--min-segments", min_segments, "skip bins with fewer segments")->capture_default_str();
    batch->add_option("--json", json_path, "also write JSON with the configuration");

    // qvalue
    auto* qvalue = app.add_subcommand("qvalue", "append q-values to a TSV with a p-value column");
    std::string input_path, column = "p_value";
    std::optional<double> pi0_override;
    qvalue->add_option("--input", input_path, "TSV with a header row")->required();
    qvalue->add_option("--column", column, "p-value column name")->capture_default_str();
    qvalue->add_option("--fdr", fdr)->capture_default_str();
    qvalue->add_option("--pi0", pi0_override, "use this pi0 instead of estimating it");

    // ripley
    auto* ripley = app.add_subcommand("ripley", "scaled Ripley's K profile of a point track");
    std::vector<std::int64_t> scales = default_scales();
    ripley->add_option("--points", points_path)->required();
    ripley->add_option("--bin-id", bin_id)->capture_default_str();
    ripley->add_option("--bin-start", bin_start)->capture_default_str();
    ripley->add_option("--bin-end", bin_end)->required();
    ripley->add_option("--scales", scales, "distance scales tau")->delimiter(',')->capture_default_str();

    // simulate
    auto* simulate = app.add_subcommand("simulate", "generate a synthetic track");
    std::string kind = "points", mode = "independent";
    Coord length = 100000;
    std::uint64_t seed = 1;
    simulate->add_option("--kind", kind, "points | segments")->capture_default_str();
    simulate->add_option("--mode", mode, "independent | clustered")->capture_default_str();
    simulate->add_option("--length", length, "bin length in bp")->capture_default_str();
    simulate->add_option("--bin-id", bin_id)->capture_default_str();
    simulate->add_option("--seed", seed)->capture_default_str();

    // study / ordering
    StudyConfig study_cfg;
    std::string study_estimator = "add-one", study_direction = "greater";
    auto add_study_options = [&](CLI::App& sub) {
        sub.add_option("--replicates", study_cfg.n_replicates)->capture_default_str();
        sub.add_option("--bin-length", study_cfg.bin_length)->capture_default_str();
        sub.add_option("--samples", study_cfg.mc_samples, "Monte Carlo samples per test")->capture_default_str();
        sub.add_option("--fdr", study_cfg.fdr_threshold)->capture_default_str();
        sub.add_option("--seed", study_cfg.master_seed)->capture_default_str();
        sub.add_option("--workers", study_cfg.workers, "worker threads (never changes results)")
            ->capture_default_str();
        sub.add_option("--estimator", study_estimator, "raw | add-one")->capture_default_str();
    };
    auto* study = app.add_subcommand("study", "false-rejection study on independently generated tracks");
    add_study_options(*study);
    study->add_option("--direction", study_direction, "greater | less | two-sided")->capture_default_str();

    auto* ordering = app.add_subcommand("ordering", "paired p-values under the four null models");
    add_study_options(*ordering);
    std::string ordering_direction = "two-sided", ordering_column = "clustered-points", deciles_path;
    ordering->add_option("--direction", ordering_direction, "greater | less | two-sided")->capture_default_str();
    ordering->add_option("--generation", ordering_column, "uniform | clustered-points | clustered-segments")
        ->capture_default_str();
    ordering->add_option("--deciles", deciles_path, "also write per-model deciles here");

    CLI11_PARSE(app, argc, argv);

    try {
        Output out(output);
        std::ostream& os = out.stream();

        if (*test) {
            const MCConfig cfg = test_opts.config();
            const NullModelSpec spec = NullModelSpec::parse(test_opts.null_model);
            const Bin bin(bin_id, bin_start, bin_end);
            const PointTrack points = load_point_track(points_path, bin);
            const SegmentTrack segments = load_segment_track(segments_path, bin);
            const TestResult r = run_mc_test(points, segments, spec, cfg);
            os << "# mcnull test\n";
            test_opts.echo(os);
            write_results_tsv(os, std::span(&r, 1));
            if (!json_path.empty()) {
                write_file(json_path, results_to_json(std::span(&r, 1), cfg, spec));
            }
        } else if (*batch) {
            const MCConfig cfg = batch_opts.config();
            const NullModelSpec spec = NullModelSpec::parse(batch_opts.null_model);
            const auto bins = load_bins(bins_path);
            const auto point_rows = read_track_rows(points_path);
            const auto segment_rows = read_track_rows(segments_path);
            std::vector<BatchItem> items;
            for (const Bin& b : bins) {
                BatchItem item{points_in_bin(point_rows, b), segments_in_bin(segment_rows, b)};
                if (item.points.size() >= min_points && item.segments.size() >= min_segments) {
                    items.push_back(std::move(item));
                }
            }
            BatchOutcome outcome = run_mc_batch(items, spec, cfg);
            if (!outcome.results.empty()) {
                std::vector<double> p;
                for (const auto& r : outcome.results) {
                    p.push_back(r.p_value);
                }
                const QValueReport q = qvalue_correction(p, fdr);
                for (std::size_t i = 0; i < q.entries.size(); ++i) {
                    outcome.results[i].q_value = q.entries[i].q_value;
                }
                os << "# mcnull batch\n";
                batch_opts.echo(os);
                os << "# bins_tested=" << outcome.results.size() << "\n# pi0=" << q.pi0 << "\n# fdr=" << fdr
                   << "\n# rejected=" << q.rejections() << '\n';
            }
            write_results_tsv(os, outcome.results);
            for (const BatchError& e : outcome.errors) {
                std::cerr << "bin " << e.bin_id << ": " << e.message << '\n';
            }
            if (!json_path.empty()) {
                write_file(json_path, results_to_json(outcome.results, cfg, spec));
            }
            if (!outcome.errors.empty()) {
                return 1;
            }
        } else if (*qvalue) {
            std::ifstream in(input_path);
            if (!in) {
                throw ValidationError("cannot open '" + input_path + "'");
            }
            std::vector<std::string> comments, lines;
            std::string header, line;
            while (std::getline(in, line)) {
                if (line.empty()) {
                    continue;
                }
                if (line.front() == '#') {
                    comments.push_back(line);
                } else if (header.empty()) {
                    header = line;
                } else {
                    lines.push_back(line);
                }
            }
            const auto names = split_tsv_line(header);
            const auto it = std::find(names.begin(), names.end(), column);
            if (it == names.end()) {
                throw ConfigError("column '" + column + "' not found in header");
            }
            const auto idx = static_cast<std::size_t>(it - names.begin());
            std::vector<double> p;
            for (std::size_t i = 0; i < lines.size(); ++i) {
                const auto fields = split_tsv_line(lines[i]);
                try {
                    p.push_back(std::stod(fields.at(idx)));
                } catch (const std::exception&) {
                    throw ParseError(i + 2 + comments.size(), "cannot read p-value in column '" + column + "'");
                }
            }
            const double pi0 = pi0_override ? *pi0_override : estimate_pi0(p);
            const QValueReport q = reject_at_fdr(qvalues(p, pi0), fdr);
            for (const auto& c : comments) {
                os << c << '\n';
            }
            os << "# pi0=" << q.pi0 << "\n# fdr=" << fdr << '\n';
            os << header << "\tq_value\trejected\n" << std::setprecision(10);
            for (std::size_t i = 0; i < lines.size(); ++i) {
                os << lines[i] << '\t' << q.entries[i].q_value << '\t' << (q.entries[i].rejected ? 1 : 0) << '\n';
            }
        } else if (*ripley) {
            const Bin bin(bin_id, bin_start, bin_end);
            const PointTrack points = load_point_track(points_path, bin);
            const ClusteringProfile prof = estimate_l_profile(points, scales);
            os << "# mcnull ripley\n# bin=" << bin.id() << '\t' << bin.start() << '\t' << bin.end()
               << "\n# lambda_hat=" << std::setprecision(10) << prof.lambda_hat << '\n';
            os << "tau\tK_hat\tL_hat\n";
            for (std::size_t i = 0; i < prof.scales.size(); ++i) {
                os << prof.scales[i] << '\t' << prof.k_values[i] << '\t' << prof.l_values[i] << '\n';
            }
        } else if (*simulate) {
            const Bin bin(bin_id, 0, length);
            os << "# mcnull simulate kind=" << kind << " mode=" << mode << " seed=" << seed << '\n';
            const bool clustered = parse_point_gen_mode(mode) == PointGenMode::Clustered;
            if (kind == "points") {
                write_point_track(os, generate_points(bin, clustered ? PointGenConfig::clustered()
                                                                     : PointGenConfig::independent(), seed));
            } else if (kind == "segments") {
                write_segment_track(os, generate_segments(bin, clustered ? SegmentGenConfig::clustered_starts()
                                                                         : SegmentGenConfig::independent(), seed));
            } else {
                throw ConfigError("--kind must be points or segments");
            }
        } else if (*study) {
            study_cfg.estimator = parse_estimator(study_estimator);
            study_cfg.direction = parse_direction(study_direction);
            const StudyReport report = run_false_rejection_study(study_cfg);
            os << "# mcnull study\n# replicates=" << study_cfg.n_replicates << "\n# bin_length=" << study_cfg.bin_length
               << "\n# samples=" << study_cfg.mc_samples << "\n# fdr=" << study_cfg.fdr_threshold
               << "\n# seed=" << study_cfg.master_seed << "\n# estimator=" << study_estimator
               << "\n# direction=" << study_direction << '\n';
            report.write_tsv(os);
        } else if (*ordering) {
            study_cfg.estimator = parse_estimator(study_estimator);
            study_cfg.direction = parse_direction(ordering_direction);
            const OrderingReport report =
                run_ordering_experiment(study_cfg, parse_generation_column(ordering_column), ordering_models());
            os << "# mcnull ordering\n# generation=" << ordering_column << "\n# replicates=" << study_cfg.n_replicates
               << "\n# bin_length=" << study_cfg.bin_length << "\n# samples=" << study_cfg.mc_samples
               << "\n# seed=" << study_cfg.master_seed << "\n# estimator=" << study_estimator
               << "\n# direction=" << ordering_direction << '\n';
            report.write_tsv(os);
            if (!deciles_path.empty()) {
                std::ofstream d(deciles_path);
                if (!d) {
                    throw ValidationError("cannot write '" + deciles_path + "'");
                }
                report.write_deciles_tsv(d);
            }
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
