#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "imgnn/sir.hpp"
#include "test_util.hpp"

using namespace imgnn;

TEST_CASE("mu=1 on a connected graph always infects everyone") {
    const Graph g = generate_ba(30, 2, 4);
    for (int run = 0; run < 5; ++run) {
        Rng rng = make_rng(run);
        const std::vector<int> seeds{run % g.n};
        CHECK(sir_run(g, seeds, 1.0, rng) == doctest::Approx(1.0));
    }
}

TEST_CASE("mu=0 infects exactly the seeds") {
    const Graph g = generate_er(20, 0.3, 1);
    const std::vector<int> seeds{1, 5, 7};
    SirConfig cfg;
    cfg.mu = 0.0;
    cfg.runs = 50;
    const auto est = estimate_spread(g, seeds, cfg);
    CHECK(est.mean_fraction == doctest::Approx(3.0 / 20));
    CHECK(est.stderr_mean == doctest::Approx(0.0));
}

TEST_CASE("mu=1 spread equals the touched-component fraction") {
    const Graph g = test::two_triangles();
    Rng rng = make_rng(0);
    CHECK(sir_run(g, std::vector<int>{0}, 1.0, rng) == doctest::Approx(0.5));
    CHECK(sir_run(g, std::vector<int>{0, 3}, 1.0, rng) == doctest::Approx(1.0));
}

TEST_CASE("seed validation") {
    const Graph g = test::path(3);
    Rng rng = make_rng(0);
    CHECK_THROWS_AS(sir_run(g, std::vector<int>{}, 0.5, rng), std::invalid_argument);
    CHECK_THROWS_AS(sir_run(g, std::vector<int>{7}, 0.5, rng), std::invalid_argument);
}

TEST_CASE("star closed form: center seed infects each leaf with prob mu") {
    // E[fraction] = (1 + k mu) / (k + 1).
    const Graph g = test::star(4);
    SirConfig cfg;
    cfg.mu = 0.5;
    cfg.runs = 20000;
    cfg.rng_seed = 11;
    const auto est = estimate_spread(g, std::vector<int>{0}, cfg);
    CHECK(std::abs(est.mean_fraction - 0.6) < 4 * est.stderr_mean);
}

TEST_CASE("estimate_spread is bit-identical across calls") {
    const Graph g = generate_ba(25, 2, 9);
    SirConfig cfg;
    cfg.mu = 0.3;
    cfg.runs = 500;
    cfg.rng_seed = 123;
    const auto a = estimate_spread(g, std::vector<int>{0, 4}, cfg);
    const auto b = estimate_spread(g, std::vector<int>{0, 4}, cfg);
    CHECK(a.mean_fraction == b.mean_fraction);
    CHECK(a.stderr_mean == b.stderr_mean);
}

TEST_CASE("mean_fraction is at least |seeds|/n and positive") {
    const Graph g = generate_er(15, 0.2, 3);
    SirConfig cfg;
    cfg.mu = 0.4;
    cfg.runs = 200;
    const auto est = estimate_spread(g, std::vector<int>{2, 6, 9}, cfg);
    CHECK(est.mean_fraction >= 3.0 / 15);
    CHECK(est.mean_fraction <= 1.0);
}

TEST_CASE("coupled randomness is monotone in the seed set") {
    const Graph g = generate_er(20, 0.15, 7);
    for (std::uint64_t coin_seed = 0; coin_seed < 30; ++coin_seed) {
        const std::vector<int> small{3, 8};
        const std::vector<int> large{3, 8, 12, 15};
        const int a = sir_run_coupled_count(g, small, 0.4, coin_seed);
        const int b = sir_run_coupled_count(g, large, 0.4, coin_seed);
        CHECK(a <= b);
    }
}

TEST_CASE("spread estimate serializes to json") {
    SpreadEstimate est;
    est.mean_fraction = 0.5;
    est.runs = 10;
    est.stderr_mean = 0.01;
    est.rng_seed = 3;
    const std::string j = est.to_json();
    CHECK(j.find("\"mean_fraction\":0.5") != std::string::npos);
    CHECK(j.find("\"runs\":10") != std::string::npos);
}

TEST_CASE("epidemic thresholds") {
    // 2-regular K3: heterogeneous 1/(k-1) = 1, mean-degree 1/k = 0.5.
    const Graph k3 = test::complete(3);
    CHECK(epidemic_threshold(k3, ThresholdKind::heterogeneous) == doctest::Approx(1.0));
    CHECK(epidemic_threshold(k3, ThresholdKind::mean_degree) == doctest::Approx(0.5));
    // Star K1,4: <k>=1.6, <k^2>=4 -> 1.6/2.4.
    CHECK(epidemic_threshold(test::star(4), ThresholdKind::heterogeneous) ==
          doctest::Approx(2.0 / 3));
    // K2 is 1-regular: <k^2> = <k>, degenerate.
    CHECK_THROWS_AS(epidemic_threshold(test::path(2), ThresholdKind::heterogeneous),
                    std::invalid_argument);
}
