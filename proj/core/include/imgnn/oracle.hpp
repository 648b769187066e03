#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "imgnn/centrality.hpp"
#include "imgnn/graph.hpp"
#include "imgnn/sir.hpp"

namespace imgnn {

/// All minimum-size seed sets whose estimated spread exceeds the target
/// threshold.
struct OptimalSolutionSet {
    int r = 0;                          // minimal seed-set size
    std::vector<std::vector<int>> sets; // each of size r, lexicographic order
    double threshold = 0.8;
    double mu_t = 0.0;
    int runs = 0;
};

struct SampleProvenance {
    std::string generator;   // "ba" or "er"
    double generator_param = 0.0;
    double mu_t = 0.0;
    double mu_t_ratio = 0.0;
    double threshold = 0.8;
    int runs = 0;
    std::uint64_t rng_seed = 0;
    double elapsed_seconds = 0.0;
};

struct LabeledSample {
    Graph graph;
    FeatureMatrix features;
    std::vector<double> labels;  // label(i) = sets containing i / total sets
    SampleProvenance provenance;
    OptimalSolutionSet solution;
};

/// Exhaustive search: for r = 1, 2, ... evaluate every C(n, r) seed
/// combination in lexicographic order; return all combinations whose
/// estimated spread strictly exceeds the threshold at the first r where
/// at least one qualifies. Each candidate draws its Monte Carlo budget
/// from a stream derived from (cfg.rng_seed, r, combination rank).
/// Refuses graphs above the hard cap unless override_cap is set.
OptimalSolutionSet search_optimal_sets(const Graph& g, double mu_t,
                                       const SirConfig& cfg,
                                       double threshold = 0.8,
                                       int hard_cap = 18,
                                       bool override_cap = false);

/// label(i) = |{s in sets : i in s}| / |sets|.
std::vector<double> assign_labels(const OptimalSolutionSet& sol, int n);

struct CorpusGroup {
    std::string generator;  // "ba" or "er"
    int n = 15;
    double param = 2;       // m_attach for ba, p for er
    int count = 50;
};

struct CorpusSpec {
    std::vector<CorpusGroup> groups;

    /// BA(15, m in {2,4,6}) x 50 + ER(15, p in {0.2,0.4}) x 50.
    static CorpusSpec paper_default();
    /// BA(10, m=2) x 10 + ER(10, p=0.3) x 10.
    static CorpusSpec desk_default();
};

/// Generate the corpus: per network, compute features, run the oracle at
/// mu_t = mu_t_ratio * <k>/(<k^2>-<k>) (clamped to [0,1]; falls back to
/// 1/<k> when the heterogeneous denominator degenerates), assign labels.
/// Fully deterministic in rng_seed.
std::vector<LabeledSample> build_training_corpus(const CorpusSpec& spec,
                                                 double mu_t_ratio,
                                                 const SirConfig& cfg,
                                                 std::uint64_t rng_seed);

/// Corpus directory layout: net_XXXX.edges + net_XXXX.csv
/// (node_id, 6 features, label) per network, plus manifest.json with
/// provenance and per-network timings.
void save_corpus(const std::vector<LabeledSample>& corpus, const std::string& dir);
std::vector<LabeledSample> load_corpus(const std::string& dir);

}  // namespace imgnn
