#include "imgnn/sir.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace imgnn {

std::string SpreadEstimate::to_json() const {
    std::ostringstream out;
    out.precision(17);
    out << "{\"mean_fraction\":" << mean_fraction << ",\"runs\":" << runs
        << ",\"stderr\":" << stderr_mean << ",\"rng_seed\":" << rng_seed << "}";
    return out.str();
}

namespace {

enum : char { kSusceptible = 0, kInfected = 1, kRecovered = 2 };

void check_seeds(const Graph& g, std::span<const int> seeds) {
    if (seeds.empty()) throw std::invalid_argument("SIR: empty seed set");
    for (int s : seeds)
        if (s < 0 || s >= g.n)
            throw std::invalid_argument("SIR: seed id out of range");
}

template <typename Coin>
int run_impl(const Graph& g, std::span<const int> seeds, Coin&& infect) {
    std::vector<char> state(g.n, kSusceptible);
    std::vector<int> frontier(seeds.begin(), seeds.end());
    std::sort(frontier.begin(), frontier.end());
    frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
    for (int s : frontier) state[s] = kInfected;
    int infected_ever = static_cast<int>(frontier.size());

    std::vector<int> next;
    // The frontier advances at least one hop per step, so n steps bound
    // the loop even in degenerate cases.
    for (int step = 0; step < g.n && !frontier.empty(); ++step) {
        next.clear();
        for (int u : frontier) {
            for (int v : g.adj[u]) {
                if (state[v] != kSusceptible) continue;
                if (infect(u, v, step)) {
                    state[v] = kInfected;
                    next.push_back(v);
                    ++infected_ever;
                }
            }
            state[u] = kRecovered;
        }
        std::sort(next.begin(), next.end());
        frontier.swap(next);
    }
    return infected_ever;
}

}  // namespace

int sir_run_count(const Graph& g, std::span<const int> seeds, double mu, Rng& rng) {
    check_seeds(g, seeds);
    return run_impl(g, seeds,
                    [&](int, int, int) { return uniform01(rng) < mu; });
}

double sir_run(const Graph& g, std::span<const int> seeds, double mu, Rng& rng) {
    return static_cast<double>(sir_run_count(g, seeds, mu, rng)) / g.n;
}

int sir_run_coupled_count(const Graph& g, std::span<const int> seeds, double mu,
                          std::uint64_t coin_seed) {
    check_seeds(g, seeds);
    return run_impl(g, seeds, [&](int u, int v, int) {
        const int a = std::min(u, v), b = std::max(u, v);
        return keyed_uniform01(coin_seed, a, b) < mu;
    });
}

SpreadEstimate estimate_spread(const Graph& g, std::span<const int> seeds,
                               const SirConfig& cfg) {
    if (cfg.runs < 1) throw std::invalid_argument("estimate_spread: runs >= 1");
    if (cfg.mu < 0.0 || cfg.mu > 1.0)
        throw std::invalid_argument("estimate_spread: mu in [0,1]");
    check_seeds(g, seeds);

    long long sum = 0;
    long long sum_sq = 0;
    for (int run = 0; run < cfg.runs; ++run) {
        Rng rng = make_rng(derive_seed(cfg.rng_seed, run));
        const long long c = sir_run_count(g, seeds, cfg.mu, rng);
        sum += c;
        sum_sq += c * c;
    }
    SpreadEstimate est;
    est.runs = cfg.runs;
    est.rng_seed = cfg.rng_seed;
    const double n = g.n, r = cfg.runs;
    est.mean_fraction = static_cast<double>(sum) / (r * n);
    if (cfg.runs > 1) {
        const double mean_c = static_cast<double>(sum) / r;
        const double var_c =
            (static_cast<double>(sum_sq) - r * mean_c * mean_c) / (r - 1.0);
        est.stderr_mean = std::sqrt(std::max(0.0, var_c) / r) / n;
    }
    return est;
}

double epidemic_threshold(const GraphStats& s, ThresholdKind kind) {
    switch (kind) {
        case ThresholdKind::heterogeneous: {
            const double denom = s.mean_degree_sq - s.mean_degree;
            if (denom <= 0.0)
                throw std::invalid_argument(
                    "epidemic_threshold: <k^2> must exceed <k>");
            return s.mean_degree / denom;
        }
        case ThresholdKind::mean_degree:
            if (s.mean_degree <= 0.0)
                throw std::invalid_argument("epidemic_threshold: <k> must be > 0");
            return 1.0 / s.mean_degree;
    }
    throw std::logic_error("unreachable");
}

double epidemic_threshold(const Graph& g, ThresholdKind kind) {
    return epidemic_threshold(stats(g), kind);
}

}  // namespace imgnn
