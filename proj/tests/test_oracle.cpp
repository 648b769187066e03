#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <set>

#include "imgnn/oracle.hpp"
#include "test_util.hpp"

using namespace imgnn;

namespace {

/// Independent component-cover brute force, valid at mu = 1: the spread
/// from a seed set is the union of the components it touches.
OptimalSolutionSet component_cover_oracle(const Graph& g, double threshold) {
    const auto comp = imgnn::test::components(g);
    const int n_comp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<int> comp_size(n_comp, 0);
    for (int c : comp) ++comp_size[c];

    OptimalSolutionSet sol;
    sol.threshold = threshold;
    sol.mu_t = 1.0;
    for (int r = 1; r <= g.n; ++r) {
        std::vector<int> idx(r);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            std::set<int> touched;
            for (int v : idx) touched.insert(comp[v]);
            int covered = 0;
            for (int c : touched) covered += comp_size[c];
            if (static_cast<double>(covered) / g.n > threshold) sol.sets.push_back(idx);
            // Advance combination.
            int i = r - 1;
            while (i >= 0 && idx[i] == g.n - r + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!sol.sets.empty()) {
            sol.r = r;
            return sol;
        }
    }
    return sol;
}

}  // namespace

TEST_CASE("P3 at mu=1: every single node is an optimal seed") {
    SirConfig cfg;
    cfg.runs = 1;
    const auto sol = search_optimal_sets(test::path(3), 1.0, cfg);
    CHECK(sol.r == 1);
    REQUIRE(sol.sets.size() == 3);
    CHECK(sol.sets[0] == std::vector<int>{0});
    CHECK(sol.sets[1] == std::vector<int>{1});
    CHECK(sol.sets[2] == std::vector<int>{2});
}

TEST_CASE("two disjoint triangles need one seed per component") {
    SirConfig cfg;
    cfg.runs = 1;
    const auto sol = search_optimal_sets(test::two_triangles(), 1.0, cfg);
    CHECK(sol.r == 2);
    CHECK(sol.sets.size() == 9);
    for (const auto& s : sol.sets) {
        CHECK(s[0] <= 2);
        CHECK(s[1] >= 3);
    }
}

TEST_CASE("K3 at mu=0 needs every node") {
    SirConfig cfg;
    cfg.runs = 1;
    const auto sol = search_optimal_sets(test::complete(3), 0.0, cfg);
    CHECK(sol.r == 3);
    REQUIRE(sol.sets.size() == 1);
    CHECK(sol.sets[0] == std::vector<int>{0, 1, 2});
}

TEST_CASE("node cap is enforced with an override") {
    const Graph g = generate_er(20, 0.3, 1);
    SirConfig cfg;
    cfg.runs = 1;
    CHECK_THROWS_AS(search_optimal_sets(g, 1.0, cfg), std::invalid_argument);
    const auto sol = search_optimal_sets(g, 1.0, cfg, 0.8, 18, true);
    CHECK(sol.r >= 1);
}

TEST_CASE("oracle equals component-cover brute force at mu=1") {
    for (int seed = 0; seed < 12; ++seed) {
        const Graph g = generate_er(8, 0.2, seed);
        SirConfig cfg;
        cfg.runs = 1;
        const auto a = search_optimal_sets(g, 1.0, cfg);
        const auto b = component_cover_oracle(g, 0.8);
        CHECK(a.r == b.r);
        CHECK(a.sets == b.sets);
    }
}

TEST_CASE("returned sets are minimal at mu=1") {
    for (int seed = 0; seed < 6; ++seed) {
        const Graph g = generate_er(9, 0.25, seed);
        SirConfig cfg;
        cfg.runs = 1;
        const auto sol = search_optimal_sets(g, 1.0, cfg);
        if (sol.r == 1) continue;  // removing the only node leaves nothing
        for (const auto& s : sol.sets) {
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                std::vector<int> reduced;
                for (std::size_t i = 0; i < s.size(); ++i)
                    if (i != drop) reduced.push_back(s[i]);
                const auto est = estimate_spread(g, reduced, cfg);
                CHECK(est.mean_fraction <= 0.8);
            }
        }
    }
}

TEST_CASE("oracle output is deterministic") {
    const Graph g = generate_er(10, 0.3, 3);
    SirConfig cfg;
    cfg.mu = 0;
    cfg.runs = 200;
    cfg.rng_seed = 77;
    const auto a = search_optimal_sets(g, 0.6, cfg);
    const auto b = search_optimal_sets(g, 0.6, cfg);
    CHECK(a.r == b.r);
    CHECK(a.sets == b.sets);
}

TEST_CASE("label assignment follows set membership") {
    OptimalSolutionSet sol;
    sol.r = 2;
    SUBCASE("single set marks members 1") {
        sol.sets = {{1, 4}};
        const auto labels = assign_labels(sol, 6);
        CHECK(labels == std::vector<double>{0, 1, 0, 0, 1, 0});
    }
    SUBCASE("two sets mark shared nodes 1 and unique nodes 0.5") {
        sol.sets = {{1, 4}, {1, 5}};
        const auto labels = assign_labels(sol, 6);
        CHECK(labels[1] == doctest::Approx(1.0));
        CHECK(labels[4] == doctest::Approx(0.5));
        CHECK(labels[5] == doctest::Approx(0.5));
        CHECK(labels[0] == doctest::Approx(0.0));
    }
}

TEST_CASE("P3 labels are all one third") {
    SirConfig cfg;
    cfg.runs = 1;
    const auto sol = search_optimal_sets(test::path(3), 1.0, cfg);
    for (double l : assign_labels(sol, 3)) CHECK(l == doctest::Approx(1.0 / 3));
}

TEST_CASE("desk corpus has the right shape and label sums") {
    CorpusSpec spec;
    spec.groups = {{"ba", 8, 2, 3}, {"er", 8, 0.3, 3}};
    SirConfig cfg;
    cfg.runs = 100;
    const auto corpus = build_training_corpus(spec, 1.5, cfg, 42);
    REQUIRE(corpus.size() == 6);
    for (const auto& s : corpus) {
        CHECK(s.graph.n == 8);
        CHECK(s.features.n == 8);
        CHECK(static_cast<int>(s.labels.size()) == 8);
        double sum = 0.0;
        for (double l : s.labels) {
            CHECK(l >= 0.0);
            CHECK(l <= 1.0);
            sum += l;
        }
        CHECK(sum == doctest::Approx(s.solution.r).epsilon(1e-9));
        CHECK(s.provenance.mu_t > 0.0);
        CHECK(s.provenance.mu_t <= 1.0);
    }
}

TEST_CASE("corpus generation is deterministic in the seed") {
    CorpusSpec spec;
    spec.groups = {{"er", 7, 0.3, 2}};
    SirConfig cfg;
    cfg.runs = 50;
    const auto a = build_training_corpus(spec, 1.5, cfg, 9);
    const auto b = build_training_corpus(spec, 1.5, cfg, 9);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].graph.adj == b[i].graph.adj);
        CHECK(a[i].labels == b[i].labels);
    }
}

TEST_CASE("corpus round-trips through the directory format") {
    CorpusSpec spec;
    spec.groups = {{"ba", 8, 2, 2}};
    SirConfig cfg;
    cfg.runs = 50;
    const auto corpus = build_training_corpus(spec, 1.5, cfg, 4);
    const std::string dir =
        (std::filesystem::temp_directory_path() / "imgnn_corpus_test").string();
    std::filesystem::remove_all(dir);
    save_corpus(corpus, dir);
    const auto loaded = load_corpus(dir);
    REQUIRE(loaded.size() == corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        CHECK(loaded[i].graph.adj == corpus[i].graph.adj);
        for (std::size_t k = 0; k < corpus[i].labels.size(); ++k)
            CHECK(loaded[i].labels[k] == doctest::Approx(corpus[i].labels[k]));
        CHECK(loaded[i].features.data == corpus[i].features.data);
        CHECK(loaded[i].provenance.mu_t == doctest::Approx(corpus[i].provenance.mu_t));
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("paper default corpus spec matches the quoted group counts") {
    const auto spec = CorpusSpec::paper_default();
    int total = 0;
    for (const auto& grp : spec.groups) {
        CHECK(grp.n == 15);
        total += grp.count;
    }
    CHECK(total == 250);
}
