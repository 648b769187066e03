#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "imgnn/graph.hpp"
#include "imgnn/rng.hpp"

namespace imgnn {

/// SIR with recovery probability 1: every infected node is infectious for
/// exactly one synchronous step.
struct SirConfig {
    double mu = 0.1;           // per-contact infection probability
    int runs = 1000;           // Monte Carlo runs
    std::uint64_t rng_seed = 0;
};

struct SpreadEstimate {
    double mean_fraction = 0.0;  // mean over runs of |Recovered|/n
    int runs = 0;
    double stderr_mean = 0.0;    // standard error of the mean
    std::uint64_t rng_seed = 0;

    std::string to_json() const;
};

/// One synchronous SIR run; returns the number of nodes ever infected.
/// Each infected node attempts to infect each susceptible neighbor
/// independently with probability mu, then recovers.
int sir_run_count(const Graph& g, std::span<const int> seeds, double mu, Rng& rng);

/// As sir_run_count, returned as a fraction of n.
double sir_run(const Graph& g, std::span<const int> seeds, double mu, Rng& rng);

/// Coupled-randomness run: the infection attempt across edge {u,v} uses
/// a coin that is a pure function of (coin_seed, u, v). With one-step
/// infectiousness each edge is attempted at most once, so the outbreak
/// distribution is unchanged, and nested seed sets simulated with the
/// same coin_seed give nested infected sets.
int sir_run_coupled_count(const Graph& g, std::span<const int> seeds, double mu,
                          std::uint64_t coin_seed);

/// Mean over cfg.runs independent runs. Run i draws from a stream derived
/// from (cfg.rng_seed, i), and runs are aggregated as exact integer
/// counts, so the estimate does not depend on execution order.
SpreadEstimate estimate_spread(const Graph& g, std::span<const int> seeds,
                               const SirConfig& cfg);

enum class ThresholdKind {
    heterogeneous,  // <k> / (<k^2> - <k>)
    mean_degree,    // 1 / <k>
};

double epidemic_threshold(const Graph& g, ThresholdKind kind);
double epidemic_threshold(const GraphStats& s, ThresholdKind kind);

}  // namespace imgnn
