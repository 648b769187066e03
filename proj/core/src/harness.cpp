#include "imgnn/harness.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include <json.hpp>

namespace imgnn {

namespace fs = std::filesystem;

std::string EvalRecord::csv_header() {
    return "network,method,mu,mu_ratio,k_star,seed_fraction,spread_at_k,"
           "spread_below,verified,seconds,error";
}

std::string EvalRecord::to_csv_row() const {
    std::ostringstream out;
    out.precision(17);
    out << network << ',' << method << ',' << mu << ',' << mu_ratio << ','
        << k_star << ',' << seed_fraction << ',' << spread_at_k << ','
        << spread_below << ',' << (verified ? 1 : 0) << ',' << seconds << ','
        << error;
    return out.str();
}

std::optional<EvalRecord> EvalRecord::from_csv_row(const std::string& line) {
    std::istringstream ls(line);
    std::vector<std::string> f;
    std::string tok;
    while (std::getline(ls, tok, ',')) f.push_back(tok);
    if (f.size() < 10) return std::nullopt;
    try {
        EvalRecord r;
        r.network = f[0];
        r.method = f[1];
        r.mu = std::stod(f[2]);
        r.mu_ratio = std::stod(f[3]);
        r.k_star = std::stoi(f[4]);
        r.seed_fraction = std::stod(f[5]);
        r.spread_at_k = std::stod(f[6]);
        r.spread_below = std::stod(f[7]);
        r.verified = f[8] == "1";
        r.seconds = std::stod(f[9]);
        if (f.size() > 10) r.error = f[10];
        return r;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

RankingProvider provider_from_ranking(RankingResult ranking) {
    auto order = std::make_shared<std::vector<int>>(std::move(ranking.order));
    return [order](int k) {
        if (k > static_cast<int>(order->size()))
            throw std::invalid_argument("ranking shorter than requested prefix");
        return std::vector<int>(order->begin(), order->begin() + k);
    };
}

RankingProvider provider_from_trace(SelectionTrace trace) {
    auto order = std::make_shared<std::vector<int>>(std::move(trace.order));
    return [order](int k) {
        if (k > static_cast<int>(order->size()))
            throw std::invalid_argument("selection trace shorter than requested prefix");
        return std::vector<int>(order->begin(), order->begin() + k);
    };
}

int binary_search_min_prefix(int n, const std::function<double(int)>& spread_of_prefix,
                             double target) {
    int lo = 1, hi = n;
    while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        if (spread_of_prefix(mid) > target)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

EvalRecord minimal_seed_fraction(const Graph& g, const RankingProvider& provider,
                                 double mu, const EvalConfig& cfg) {
    if (mu < 0.0 || mu > 1.0)
        throw std::invalid_argument("minimal_seed_fraction: mu in [0,1]");
    const auto t0 = std::chrono::steady_clock::now();

    std::map<int, double> cache;
    auto spread_at = [&](int k) {
        if (auto it = cache.find(k); it != cache.end()) return it->second;
        SirConfig sir_cfg;
        sir_cfg.mu = mu;
        sir_cfg.runs = cfg.runs;
        sir_cfg.rng_seed = derive_seed(cfg.rng_seed, std::bit_cast<std::uint64_t>(mu), k);
        const auto seeds = provider(k);
        const double v = estimate_spread(g, seeds, sir_cfg).mean_fraction;
        cache[k] = v;
        return v;
    };

    EvalRecord rec;
    rec.mu = mu;
    rec.k_star = binary_search_min_prefix(g.n, spread_at, cfg.target_fraction);
    rec.seed_fraction = static_cast<double>(rec.k_star) / g.n;
    rec.spread_at_k = spread_at(rec.k_star);
    rec.spread_below = rec.k_star > 1 ? spread_at(rec.k_star - 1) : 0.0;
    rec.verified = rec.spread_at_k > cfg.target_fraction &&
                   rec.spread_below <= cfg.target_fraction;
    rec.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

namespace {

bool starts_with(const std::string& s, const std::string& prefix) {
    return s.rfind(prefix, 0) == 0;
}

// Stable string hash for RNG keying; std::hash is not pinned by the
// standard.
std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

RankingResult static_ranking(const std::string& method, const Graph& g,
                             const ModelParams* model) {
    if (method == "degree") {
        std::vector<double> deg(g.n);
        for (int i = 0; i < g.n; ++i) deg[i] = g.degree(i);
        return rank(deg);
    }
    if (method == "pagerank") return rank(pagerank(g).value);
    if (method == "kshell") {
        const auto core = coreness(g);
        return rank(std::vector<double>(core.begin(), core.end()));
    }
    if (method == "h-index" || method == "hindex") {
        const auto h = h_index(g);
        return rank(std::vector<double>(h.begin(), h.end()));
    }
    if (method == "clustering") return rank(clustering_coefficient(g));
    if (method == "imgnn") {
        if (!model)
            throw std::invalid_argument("method imgnn requires a trained model");
        return score_nodes(g, *model);
    }
    throw std::invalid_argument("unknown ranking method: " + method);
}

}  // namespace

RankingProvider make_provider(const std::string& method, const Graph& g,
                              const ModelParams* model) {
    if (method == "voterank") return provider_from_trace(voterank(g, g.n));
    if (method == "ncvoterank") return provider_from_trace(ncvoterank(g, g.n));
    if (method == "enrenew") return provider_from_trace(enrenew(g, g.n));
    if (method == "improved-kshell" || method == "improved_kshell")
        return provider_from_trace(improved_kshell(g, g.n));
    if (starts_with(method, "rinf:")) {
        const auto base = static_ranking(method.substr(5), g, model);
        return provider_from_trace(rinf_reorder(g, base, g.n));
    }
    return provider_from_ranking(static_ranking(method, g, model));
}

std::vector<EvalRecord> run_experiment(
    const std::vector<std::pair<std::string, Graph>>& networks,
    const std::vector<std::string>& methods, const std::vector<double>& mu_ratios,
    ThresholdKind mu_c_kind, const EvalConfig& cfg, const std::string& out_dir,
    const ModelParams* model) {
    fs::create_directories(out_dir);
    const std::string records_path = out_dir + "/records.csv";

    // Load already-completed cells for resume.
    std::set<std::string> done;
    std::vector<EvalRecord> records;
    const bool existed = fs::exists(records_path);
    if (existed) {
        std::ifstream in(records_path);
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            if (auto rec = EvalRecord::from_csv_row(line)) {
                std::ostringstream key;
                key.precision(17);
                key << rec->network << '|' << rec->method << '|' << rec->mu;
                done.insert(key.str());
                records.push_back(*rec);
            }
        }
    }
    std::ofstream out(records_path, std::ios::app);
    if (!existed) out << EvalRecord::csv_header() << '\n';

    for (const auto& [net_name, g] : networks) {
        const double mu_c = epidemic_threshold(g, mu_c_kind);
        for (const auto& method : methods) {
            // One provider per (network, method); prefix probes reuse it.
            RankingProvider provider;
            std::string provider_error;
            try {
                provider = make_provider(method, g, model);
            } catch (const std::exception& e) {
                provider_error = e.what();
            }
            for (double ratio : mu_ratios) {
                const double mu = std::clamp(ratio * mu_c, 0.0, 1.0);
                std::ostringstream key;
                key.precision(17);
                key << net_name << '|' << method << '|' << mu;
                if (done.count(key.str())) continue;

                EvalRecord rec;
                rec.network = net_name;
                rec.method = method;
                rec.mu = mu;
                rec.mu_ratio = ratio;
                try {
                    if (!provider_error.empty())
                        throw std::runtime_error(provider_error);
                    EvalConfig cell_cfg = cfg;
                    cell_cfg.rng_seed = derive_seed(cfg.rng_seed, fnv1a(net_name),
                                                    fnv1a(method));
                    rec = minimal_seed_fraction(g, provider, mu, cell_cfg);
                    rec.network = net_name;
                    rec.method = method;
                    rec.mu_ratio = ratio;
                } catch (const std::exception& e) {
                    rec.error = e.what();
                    std::replace(rec.error.begin(), rec.error.end(), ',', ';');
                }
                out << rec.to_csv_row() << '\n';
                out.flush();
                records.push_back(rec);
            }
        }
    }

    nlohmann::json manifest;
    manifest["target_fraction"] = cfg.target_fraction;
    manifest["runs"] = cfg.runs;
    manifest["rng_seed"] = cfg.rng_seed;
    manifest["mu_c_kind"] =
        mu_c_kind == ThresholdKind::heterogeneous ? "heterogeneous" : "mean_degree";
    manifest["mu_ratios"] = mu_ratios;
    manifest["methods"] = methods;
    manifest["record_count"] = records.size();
    std::ofstream mf(out_dir + "/manifest.json");
    mf << manifest.dump(2) << '\n';
    return records;
}

std::vector<TimingRow> label_timing_sweep(const CorpusSpec& spec,
                                          const std::vector<double>& ratios,
                                          const SirConfig& cfg,
                                          std::uint64_t rng_seed) {
    std::vector<TimingRow> rows;
    for (double ratio : ratios) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto corpus = build_training_corpus(spec, ratio, cfg, rng_seed);
        TimingRow row;
        row.mu_t_ratio = ratio;
        row.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        long long size_sum = 0;
        for (const auto& s : corpus) {
            for (double l : s.labels)
                if (l > 0.0) ++row.nonzero_label_nodes;
            row.total_optimal_sets += static_cast<long long>(s.solution.sets.size());
            size_sum += s.solution.r;
        }
        row.mean_optimal_size =
            corpus.empty() ? 0.0 : static_cast<double>(size_sum) / corpus.size();
        rows.push_back(row);
    }
    return rows;
}

}  // namespace imgnn
