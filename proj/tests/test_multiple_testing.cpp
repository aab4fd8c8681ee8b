#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <mcnull/errors.hpp>
#include <mcnull/multiple_testing.hpp>
#include <mcnull/rng.hpp>

#include <algorithm>

using namespace mcnull;

namespace {

// Sort-free O(m^2) form: q(p_i) = min over p_k >= p_i of m*pi0*p_k / rank(p_k),
// where rank counts every p-value <= p_k.
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

std::vector<double> random_pvalues(Rng& rng, std::size_t m) {
    std::vector<double> p(m);
    for (auto& v : p) {
        // mix of tiny values, ties and uniforms
        const double u = rng.uniform();
        v = u < 0.2 ? rng.uniform() * 1e-3 : u < 0.3 ? 0.05 : rng.uniform();
    }
    return p;
}

std::vector<double> q_of(const QValueReport& r) {
    std::vector<double> q;
    for (const auto& e : r.entries) q.push_back(e.q_value);
    return q;
}

} // namespace

TEST_CASE("pi0 estimate") {
    CHECK(estimate_pi0(std::vector<double>{0.1, 0.2, 0.3}) == doctest::Approx(0.4));
    CHECK(estimate_pi0(std::vector<double>{0.9, 0.8}) == 1.0);
    CHECK(estimate_pi0(std::vector<double>{0.0, 0.0}) == 1.0);
    CHECK_THROWS_AS(estimate_pi0(std::vector<double>{}), ValidationError);
    CHECK_THROWS_AS(estimate_pi0(std::vector<double>{0.5, 1.2}), ValidationError);
}

TEST_CASE("q-values: worked example") {
    const std::vector<double> p{0.01, 0.02, 0.9};
    const auto r = qvalues(p, 1.0);
    REQUIRE(r.entries.size() == 3);
    CHECK(r.entries[0].q_value == 0.03);
    CHECK(r.entries[1].q_value == 0.03);
    CHECK(r.entries[2].q_value == 0.9);
    CHECK(r.entries[0].id == "1");
}

TEST_CASE("q-values keep input order and ids") {
    const std::vector<double> p{0.9, 0.01, 0.02};
    const std::vector<std::string> ids{"c", "a", "b"};
    const auto r = qvalues(p, 1.0, ids);
    CHECK(r.entries[0].id == "c");
    CHECK(r.entries[0].q_value == 0.9);
    CHECK(r.entries[1].q_value == 0.03);
    CHECK_THROWS_AS(qvalues(p, 0.0), ValidationError);
    CHECK_THROWS_AS(qvalues(p, 1.0, std::vector<std::string>{"x"}), ValidationError);
}

TEST_CASE("property: q-values match the quadratic oracle") {
    Rng rng(404);
    for (int trial = 0; trial < 500; ++trial) {
        const auto m = static_cast<std::size_t>(rng.between(1, 200));
        const auto p = random_pvalues(rng, m);
        const double pi0 = estimate_pi0(p);
        const auto got = q_of(qvalues(p, pi0));
        const auto want = brute_q(p, pi0);
        for (std::size_t i = 0; i < m; ++i) CHECK(got[i] == want[i]);
    }
}

TEST_CASE("property: q-values are monotone in p and bounded") {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = random_pvalues(rng, static_cast<std::size_t>(rng.between(1, 100)));
        const auto q = q_of(qvalues(p, estimate_pi0(p)));
        for (std::size_t i = 0; i < p.size(); ++i) {
            CHECK(q[i] <= 1.0);
            CHECK(q[i] >= 0.0);
            for (std::size_t j = 0; j < p.size(); ++j) {
                if (p[i] <= p[j]) CHECK(q[i] <= q[j]);
            }
        }
    }
}

TEST_CASE("property: appending a p-value of 1 never lowers a q-value") {
    Rng rng(6);
    for (int trial = 0; trial < 200; ++trial) {
        auto p = random_pvalues(rng, static_cast<std::size_t>(rng.between(1, 80)));
        const auto before = q_of(qvalues(p, estimate_pi0(p)));
        p.push_back(1.0);
        const auto after = q_of(qvalues(p, estimate_pi0(p)));
        for (std::size_t i = 0; i < before.size(); ++i) CHECK(after[i] >= before[i]);
    }
}

TEST_CASE("rejections at an FDR threshold") {
    const std::vector<double> p{0.01, 0.02, 0.9};
    auto r = reject_at_fdr(qvalues(p, 1.0), 0.05);
    CHECK(r.rejections() == 2);
    CHECK(r.entries[0].rejected);
    CHECK_FALSE(r.entries[2].rejected);
    CHECK(r.fdr_threshold == 0.05);

    r = reject_at_fdr(qvalues(p, 1.0), 0.03);
    CHECK(r.rejections() == 2);  // q <= threshold
    r = reject_at_fdr(qvalues(p, 1.0), 0.02);
    CHECK(r.rejections() == 0);

    CHECK_THROWS_AS(reject_at_fdr(qvalues(p, 1.0), 1.0), ValidationError);
    CHECK_THROWS_AS(reject_at_fdr(qvalues(p, 1.0), 0.0), ValidationError);
}

TEST_CASE("full correction estimates pi0") {
    const std::vector<double> p{0.001, 0.002, 0.003, 0.5};
    const auto r = qvalue_correction(p, 0.1);
    CHECK(r.pi0 == doctest::Approx(std::min(1.0, 2.0 * (0.506 / 4.0))));
    CHECK(r.rejections() == 3);
}
