#include "imgnn/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace imgnn {

namespace {

void check_k(const Graph& g, int k) {
    if (k < 1 || k > g.n)
        throw std::invalid_argument("selection requires 1 <= k <= n");
}

/// Highest-score unselected node, ties by ascending id; -1 when none.
int argmax_unselected(const std::vector<double>& score,
                      const std::vector<char>& selected) {
    int best = -1;
    for (int i = 0; i < static_cast<int>(score.size()); ++i) {
        if (selected[i]) continue;
        if (best < 0 || score[i] > score[best]) best = i;
    }
    return best;
}

SelectionTrace vote_select(const Graph& g, int k, const std::string& method,
                           const std::vector<double>& neighbor_weight,
                           std::vector<std::pair<std::string, double>> params) {
    check_k(g, k);
    const double mean_deg = g.n > 0 ? 2.0 * static_cast<double>(g.m) / g.n : 0.0;
    const double suppression = mean_deg > 0.0 ? 1.0 / mean_deg : 0.0;

    std::vector<double> ability(g.n, 1.0), score(g.n);
    std::vector<char> selected(g.n, 0);
    SelectionTrace trace;
    trace.method = method;
    trace.parameters = std::move(params);
    for (int round = 0; round < k; ++round) {
        for (int i = 0; i < g.n; ++i) {
            score[i] = 0.0;
            if (selected[i]) continue;
            for (int j : g.adj[i]) score[i] += ability[j] * neighbor_weight[j];
        }
        const int pick = argmax_unselected(score, selected);
        selected[pick] = 1;
        ability[pick] = 0.0;
        for (int j : g.adj[pick])
            ability[j] = std::max(0.0, ability[j] - suppression);
        trace.order.push_back(pick);
        trace.score_at_selection.push_back(score[pick]);
    }
    return trace;
}

}  // namespace

std::string SelectionTrace::to_csv() const {
    std::ostringstream out;
    out << "# method=" << method;
    for (const auto& [k, v] : parameters) out << ' ' << k << '=' << v;
    out << "\nstep,node_id,score_at_selection\n";
    out.precision(17);
    for (std::size_t i = 0; i < order.size(); ++i)
        out << i << ',' << order[i] << ',' << score_at_selection[i] << '\n';
    return out.str();
}

SelectionTrace voterank(const Graph& g, int k) {
    return vote_select(g, k, "voterank", std::vector<double>(g.n, 1.0), {});
}

SelectionTrace ncvoterank(const Graph& g, int k, double coreness_weight) {
    const auto core = coreness(g);
    const int core_max = core.empty() ? 0 : *std::max_element(core.begin(), core.end());
    std::vector<double> weight(g.n, 1.0);
    if (core_max > 0)
        for (int i = 0; i < g.n; ++i)
            weight[i] = (1.0 - coreness_weight) +
                        coreness_weight * static_cast<double>(core[i]) / core_max;
    return vote_select(g, k, "ncvoterank", weight,
                       {{"coreness_weight", coreness_weight}});
}

std::vector<double> information_entropy(const Graph& g) {
    std::vector<double> entropy(g.n, 0.0);
    for (int i = 0; i < g.n; ++i) {
        double deg_sum = 0.0;
        for (int j : g.adj[i]) deg_sum += g.degree(j);
        if (deg_sum <= 0.0) continue;
        double e = 0.0;
        for (int j : g.adj[i]) {
            const double p = g.degree(j) / deg_sum;
            if (p > 0.0) e -= p * std::log(p);
        }
        entropy[i] = e;
    }
    return entropy;
}

SelectionTrace enrenew(const Graph& g, int k, double attenuation) {
    check_k(g, k);
    if (attenuation <= 0.0 || attenuation >= 1.0)
        throw std::invalid_argument("enrenew: attenuation in (0,1)");
    std::vector<double> entropy = information_entropy(g);
    std::vector<char> selected(g.n, 0);
    SelectionTrace trace;
    trace.method = "enrenew";
    trace.parameters = {{"attenuation", attenuation}};
    for (int round = 0; round < k; ++round) {
        const int pick = argmax_unselected(entropy, selected);
        selected[pick] = 1;
        trace.order.push_back(pick);
        trace.score_at_selection.push_back(entropy[pick]);
        for (int j : g.adj[pick]) entropy[j] *= attenuation;
    }
    return trace;
}

SelectionTrace improved_kshell(const Graph& g, int k) {
    check_k(g, k);
    const auto core = coreness(g);
    const auto entropy = information_entropy(g);
    // Shells in descending coreness order.
    std::vector<int> shell_values(core.begin(), core.end());
    std::sort(shell_values.begin(), shell_values.end(), std::greater<>());
    shell_values.erase(std::unique(shell_values.begin(), shell_values.end()),
                       shell_values.end());

    std::vector<char> selected(g.n, 0);
    SelectionTrace trace;
    trace.method = "improved_kshell";
    std::size_t shell_idx = 0;
    while (static_cast<int>(trace.order.size()) < k) {
        // Cyclic sweep; exhausted shells are skipped. Some shell always
        // has an unselected node while order.size() < n.
        const int shell = shell_values[shell_idx % shell_values.size()];
        ++shell_idx;
        int pick = -1;
        for (int i = 0; i < g.n; ++i) {
            if (selected[i] || core[i] != shell) continue;
            if (pick < 0 || entropy[i] > entropy[pick]) pick = i;
        }
        if (pick < 0) continue;
        selected[pick] = 1;
        trace.order.push_back(pick);
        trace.score_at_selection.push_back(entropy[pick]);
    }
    return trace;
}

SelectionTrace rinf_reorder(const Graph& g, const RankingResult& base, int k,
                            int suppression_radius, double suppression_factor) {
    check_k(g, k);
    if (static_cast<int>(base.scores.size()) != g.n)
        throw std::invalid_argument("rinf_reorder: base ranking must cover all nodes");
    std::vector<double> score = base.scores;
    std::vector<char> selected(g.n, 0);
    SelectionTrace trace;
    trace.method = "rinf";
    trace.parameters = {{"suppression_radius", static_cast<double>(suppression_radius)},
                        {"suppression_factor", suppression_factor}};
    std::vector<int> dist(g.n);
    for (int round = 0; round < k; ++round) {
        const int pick = argmax_unselected(score, selected);
        selected[pick] = 1;
        trace.order.push_back(pick);
        trace.score_at_selection.push_back(score[pick]);
        // BFS out to the suppression radius.
        std::fill(dist.begin(), dist.end(), -1);
        dist[pick] = 0;
        std::queue<int> q;
        q.push(pick);
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            if (dist[u] >= suppression_radius) continue;
            for (int v : g.adj[u])
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    score[v] *= suppression_factor;
                    q.push(v);
                }
        }
    }
    return trace;
}

}  // namespace imgnn
