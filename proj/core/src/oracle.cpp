#include "imgnn/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace imgnn {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

/// Advance a lexicographic r-combination of 0..n-1; false when exhausted.
bool next_combination(std::vector<int>& c, int n) {
    const int r = static_cast<int>(c.size());
    for (int i = r - 1; i >= 0; --i) {
        if (c[i] < n - r + i) {
            ++c[i];
            for (int j = i + 1; j < r; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

OptimalSolutionSet search_optimal_sets(const Graph& g, double mu_t,
                                       const SirConfig& cfg, double threshold,
                                       int hard_cap, bool override_cap) {
    if (threshold <= 0.0 || threshold >= 1.0)
        throw std::invalid_argument("search_optimal_sets: threshold in (0,1)");
    if (g.n > hard_cap && !override_cap)
        throw std::invalid_argument(
            "search_optimal_sets: n = " + std::to_string(g.n) +
            " exceeds the combinatorial cap of " + std::to_string(hard_cap) +
            "; pass override_cap to force");

    OptimalSolutionSet sol;
    sol.threshold = threshold;
    sol.mu_t = mu_t;
    sol.runs = cfg.runs;
    for (int r = 1; r <= g.n; ++r) {
        std::vector<int> comb(r);
        for (int i = 0; i < r; ++i) comb[i] = i;
        std::uint64_t rank = 0;
        do {
            SirConfig cand_cfg = cfg;
            cand_cfg.mu = mu_t;
            cand_cfg.rng_seed = derive_seed(cfg.rng_seed, r, rank);
            if (estimate_spread(g, comb, cand_cfg).mean_fraction > threshold)
                sol.sets.push_back(comb);
            ++rank;
        } while (next_combination(comb, g.n));
        if (!sol.sets.empty()) {
            sol.r = r;
            return sol;
        }
    }
    // r = n seeds every node, so the fraction is 1 > threshold.
    throw std::logic_error("search_optimal_sets: no solution up to r = n");
}

std::vector<double> assign_labels(const OptimalSolutionSet& sol, int n) {
    if (sol.sets.empty())
        throw std::invalid_argument("assign_labels: empty solution set");
    std::vector<double> labels(n, 0.0);
    for (const auto& s : sol.sets)
        for (int v : s) labels[v] += 1.0;
    const double total = static_cast<double>(sol.sets.size());
    for (double& l : labels) l /= total;
    return labels;
}

CorpusSpec CorpusSpec::paper_default() {
    return {{{"ba", 15, 2, 50},
             {"ba", 15, 4, 50},
             {"ba", 15, 6, 50},
             {"er", 15, 0.2, 50},
             {"er", 15, 0.4, 50}}};
}

CorpusSpec CorpusSpec::desk_default() {
    return {{{"ba", 10, 2, 10}, {"er", 10, 0.3, 10}}};
}

namespace {

Graph generate_from_group(const CorpusGroup& grp, std::uint64_t seed) {
    if (grp.generator == "ba")
        return generate_ba(grp.n, static_cast<int>(grp.param), seed);
    if (grp.generator == "er") return generate_er(grp.n, grp.param, seed);
    throw std::invalid_argument("unknown generator: " + grp.generator);
}

double training_mu(const Graph& g, double ratio) {
    const GraphStats s = stats(g);
    double mu_c;
    if (s.mean_degree_sq > s.mean_degree)
        mu_c = epidemic_threshold(s, ThresholdKind::heterogeneous);
    else if (s.mean_degree > 0.0)
        mu_c = epidemic_threshold(s, ThresholdKind::mean_degree);
    else
        return 1.0;  // edgeless graph; spread is seed-only either way
    return std::clamp(ratio * mu_c, 0.0, 1.0);
}

}  // namespace

std::vector<LabeledSample> build_training_corpus(const CorpusSpec& spec,
                                                 double mu_t_ratio,
                                                 const SirConfig& cfg,
                                                 std::uint64_t rng_seed) {
    std::vector<LabeledSample> corpus;
    const double threshold = 0.8;
    for (std::size_t gi = 0; gi < spec.groups.size(); ++gi) {
        const auto& grp = spec.groups[gi];
        for (int i = 0; i < grp.count; ++i) {
            const auto t0 = std::chrono::steady_clock::now();
            const std::uint64_t net_seed = derive_seed(rng_seed, gi, i);
            try {
                LabeledSample sample;
                sample.graph = generate_from_group(grp, net_seed);
                sample.features = feature_matrix(sample.graph);
                const double mu_t = training_mu(sample.graph, mu_t_ratio);
                SirConfig oracle_cfg = cfg;
                oracle_cfg.rng_seed = derive_seed(rng_seed, gi, i, 0xabcdULL);
                sample.solution =
                    search_optimal_sets(sample.graph, mu_t, oracle_cfg, threshold);
                sample.labels = assign_labels(sample.solution, sample.graph.n);
                sample.provenance = {grp.generator, grp.param,        mu_t,
                                     mu_t_ratio,    threshold,        cfg.runs,
                                     net_seed,      0.0};
                sample.provenance.elapsed_seconds =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                  t0)
                        .count();
                corpus.push_back(std::move(sample));
            } catch (const std::exception& e) {
                throw std::runtime_error("corpus group " + grp.generator + "(n=" +
                                         std::to_string(grp.n) + ", param=" +
                                         std::to_string(grp.param) + ") network " +
                                         std::to_string(i) + ": " + e.what());
            }
        }
    }
    return corpus;
}

void save_corpus(const std::vector<LabeledSample>& corpus, const std::string& dir) {
    fs::create_directories(dir);
    json manifest;
    manifest["format_version"] = 1;
    manifest["networks"] = json::array();
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& s = corpus[i];
        std::ostringstream base;
        base << "net_" << std::setw(4) << std::setfill('0') << i;
        save_edge_list_file(s.graph, dir + "/" + base.str() + ".edges");

        std::ofstream csv(dir + "/" + base.str() + ".csv");
        csv.precision(17);
        csv << "node_id";
        for (const auto& c : FeatureMatrix::column_names()) csv << ',' << c;
        csv << ",label\n";
        for (int v = 0; v < s.graph.n; ++v) {
            csv << v;
            for (int c = 0; c < FeatureMatrix::kCols; ++c)
                csv << ',' << s.features.at(v, c);
            csv << ',' << s.labels[v] << '\n';
        }

        json rec;
        rec["file"] = base.str();
        rec["generator"] = s.provenance.generator;
        rec["generator_param"] = s.provenance.generator_param;
        rec["mu_t"] = s.provenance.mu_t;
        rec["mu_t_ratio"] = s.provenance.mu_t_ratio;
        rec["threshold"] = s.provenance.threshold;
        rec["runs"] = s.provenance.runs;
        rec["rng_seed"] = s.provenance.rng_seed;
        rec["elapsed_seconds"] = s.provenance.elapsed_seconds;
        rec["optimal_size"] = s.solution.r;
        rec["optimal_set_count"] = s.solution.sets.size();
        manifest["networks"].push_back(rec);
    }
    std::ofstream mf(dir + "/manifest.json");
    mf << manifest.dump(2) << '\n';
}

std::vector<LabeledSample> load_corpus(const std::string& dir) {
    std::ifstream mf(dir + "/manifest.json");
    if (!mf) throw std::runtime_error("cannot open corpus manifest in " + dir);
    json manifest = json::parse(mf);
    std::vector<LabeledSample> corpus;
    for (const auto& rec : manifest.at("networks")) {
        LabeledSample s;
        const std::string base = rec.at("file").get<std::string>();
        s.provenance.generator = rec.value("generator", "");
        s.provenance.generator_param = rec.value("generator_param", 0.0);
        s.provenance.mu_t = rec.value("mu_t", 0.0);
        s.provenance.mu_t_ratio = rec.value("mu_t_ratio", 0.0);
        s.provenance.threshold = rec.value("threshold", 0.8);
        s.provenance.runs = rec.value("runs", 0);
        s.provenance.rng_seed = rec.value("rng_seed", std::uint64_t{0});
        s.provenance.elapsed_seconds = rec.value("elapsed_seconds", 0.0);
        s.solution.r = rec.value("optimal_size", 0);

        // The node csv has one row per node, so it fixes n; the edge
        // file alone would drop trailing isolated nodes.
        std::ifstream csv(dir + "/" + base + ".csv");
        if (!csv) throw std::runtime_error("cannot open " + base + ".csv");
        std::string line;
        std::getline(csv, line);  // header
        std::vector<std::vector<double>> rows;
        while (std::getline(csv, line)) {
            if (line.empty()) continue;
            std::istringstream ls(line);
            std::string tok;
            std::vector<double> row;
            while (std::getline(ls, tok, ',')) row.push_back(std::stod(tok));
            if (row.size() != 2 + FeatureMatrix::kCols)
                throw std::runtime_error("malformed row in " + base + ".csv");
            rows.push_back(std::move(row));
        }
        const int n = static_cast<int>(rows.size());
        s.features.n = n;
        s.features.data.assign(static_cast<std::size_t>(n) * FeatureMatrix::kCols, 0.0);
        s.labels.assign(n, 0.0);
        for (const auto& row : rows) {
            const int v = static_cast<int>(row[0]);
            if (v < 0 || v >= n)
                throw std::runtime_error("node id out of range in " + base + ".csv");
            for (int c = 0; c < FeatureMatrix::kCols; ++c)
                s.features.at(v, c) = row[1 + c];
            s.labels[v] = row.back();
        }

        // Parse edges with their literal numeric ids so node identity
        // matches the csv rows.
        std::ifstream ef(dir + "/" + base + ".edges");
        if (!ef) throw std::runtime_error("cannot open " + base + ".edges");
        std::vector<std::pair<int, int>> edges;
        while (std::getline(ef, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ls(line);
            int u, v;
            if (!(ls >> u >> v))
                throw std::runtime_error("malformed edge in " + base + ".edges");
            edges.emplace_back(u, v);
        }
        s.graph = graph_from_edges(n, edges);
        corpus.push_back(std::move(s));
    }
    return corpus;
}

}  // namespace imgnn
