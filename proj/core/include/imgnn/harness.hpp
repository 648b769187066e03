#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "imgnn/baselines.hpp"
#include "imgnn/centrality.hpp"
#include "imgnn/gnn.hpp"
#include "imgnn/graph.hpp"
#include "imgnn/oracle.hpp"
#include "imgnn/sir.hpp"

namespace imgnn {

struct EvalConfig {
    double target_fraction = 0.8;
    int runs = 1000;
    std::uint64_t rng_seed = 0;
};

struct EvalRecord {
    std::string network;
    std::string method;
    double mu = 0.0;
    double mu_ratio = 0.0;       // mu / mu_c, 0 when not applicable
    int k_star = 0;              // minimal prefix length
    double seed_fraction = 0.0;  // k_star / n
    double spread_at_k = 0.0;
    double spread_below = 0.0;   // estimate at k_star - 1 (0 when k_star = 1)
    bool verified = false;       // spread_at_k > target >= spread_below
    double seconds = 0.0;
    std::string error;           // nonempty for failed sweep cells

    static std::string csv_header();
    std::string to_csv_row() const;
    static std::optional<EvalRecord> from_csv_row(const std::string& line);
};

/// Returns the top-k prefix of some node ordering. Implementations may
/// compute lazily; they must be deterministic in k.
using RankingProvider = std::function<std::vector<int>(int k)>;

RankingProvider provider_from_ranking(RankingResult ranking);
RankingProvider provider_from_trace(SelectionTrace trace);

/// Minimal prefix length over a monotone predicate: the smallest
/// k in [1, n] with spread_of_prefix(k) > target. spread_of_prefix is
/// treated as nondecreasing; each k is probed at most once.
int binary_search_min_prefix(int n, const std::function<double(int)>& spread_of_prefix,
                             double target);

/// Binary search for the smallest top-k prefix whose Monte Carlo spread
/// exceeds the target fraction. Each prefix length k draws its runs from
/// an RNG keyed by (cfg.rng_seed, mu bits, k), so repeated probes and
/// the post-search verification see identical estimates.
EvalRecord minimal_seed_fraction(const Graph& g, const RankingProvider& provider,
                                 double mu, const EvalConfig& cfg);

/// Named (method -> provider) resolution. Supported methods: degree,
/// pagerank, kshell, h-index, clustering, voterank, ncvoterank, enrenew,
/// improved-kshell, imgnn (requires model), and rinf:<base> for the
/// reordered variant of any of the static rankings.
RankingProvider make_provider(const std::string& method, const Graph& g,
                              const ModelParams* model = nullptr);

struct SweepCell {
    std::string network;
    std::string method;
    double mu;
    double mu_ratio;
};

/// Full cross-product sweep. Records are appended to records.csv in
/// out_dir as they complete and a manifest.json is written; cells whose
/// (network, method, mu) key is already present in records.csv are
/// skipped, making interrupted sweeps resumable. Per-cell failures are
/// recorded as error rows and do not abort the sweep.
std::vector<EvalRecord> run_experiment(
    const std::vector<std::pair<std::string, Graph>>& networks,
    const std::vector<std::string>& methods, const std::vector<double>& mu_ratios,
    ThresholdKind mu_c_kind, const EvalConfig& cfg, const std::string& out_dir,
    const ModelParams* model = nullptr);

struct TimingRow {
    double mu_t_ratio = 0.0;
    double seconds = 0.0;
    long long nonzero_label_nodes = 0;
    long long total_optimal_sets = 0;
    double mean_optimal_size = 0.0;
};

/// Builds the corpus once per ratio and records wall time plus a label
/// distribution summary.
std::vector<TimingRow> label_timing_sweep(const CorpusSpec& spec,
                                          const std::vector<double>& ratios,
                                          const SirConfig& cfg,
                                          std::uint64_t rng_seed);

}  // namespace imgnn
