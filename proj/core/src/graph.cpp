#include "imgnn/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "imgnn/rng.hpp"

namespace imgnn {

bool Graph::has_edge(int u, int v) const {
    const auto& a = adj[u];
    return std::binary_search(a.begin(), a.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(m));
    for (int u = 0; u < n; ++u)
        for (int v : adj[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

void Graph::validate() const {
    if (static_cast<int>(adj.size()) != n)
        throw std::logic_error("adjacency size mismatch");
    long long deg_sum = 0;
    for (int u = 0; u < n; ++u) {
        const auto& a = adj[u];
        if (!std::is_sorted(a.begin(), a.end()))
            throw std::logic_error("adjacency not sorted");
        if (std::adjacent_find(a.begin(), a.end()) != a.end())
            throw std::logic_error("duplicate edge");
        for (int v : a) {
            if (v < 0 || v >= n) throw std::logic_error("neighbor id out of range");
            if (v == u) throw std::logic_error("self-loop");
            if (!has_edge(v, u)) throw std::logic_error("adjacency not symmetric");
        }
        deg_sum += static_cast<long long>(a.size());
    }
    if (deg_sum != 2 * m) throw std::logic_error("edge count mismatch");
}

Graph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g;
    g.n = n;
    g.adj.assign(n, {});
    for (auto [u, v] : edges) {
        if (u == v) continue;
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& a : g.adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    long long deg_sum = 0;
    for (const auto& a : g.adj) deg_sum += static_cast<long long>(a.size());
    g.m = deg_sum / 2;
    return g;
}

Graph load_edge_list(std::istream& in, LoadReport* report) {
    std::vector<std::pair<std::string, std::string>> token_pairs;
    LoadReport rep;
    std::string line;
    long long line_no = 0;
    auto numeric = [](const std::string& tok) {
        return !tok.empty() &&
               std::all_of(tok.begin(), tok.end(),
                           [](unsigned char c) { return std::isdigit(c); });
    };
    bool all_numeric = true;
    while (std::getline(in, line)) {
        ++line_no;
        ++rep.lines_read;
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a)) continue;  // blank line
        if (a[0] == '#' || a[0] == '%') continue;
        if (!(ls >> b) || (ls >> extra))
            throw ParseError("expected exactly two node tokens", line_no);
        all_numeric = all_numeric && numeric(a) && numeric(b);
        token_pairs.emplace_back(std::move(a), std::move(b));
    }
    if (token_pairs.empty()) throw ParseError("empty edge list", line_no);

    std::vector<std::pair<int, int>> edges;
    edges.reserve(token_pairs.size());
    int n = 0;
    if (all_numeric) {
        // Keep literal ids so saved graphs round-trip unchanged.
        for (const auto& [a, b] : token_pairs) {
            const long ia = std::stol(a), ib = std::stol(b);
            if (ia > 50'000'000 || ib > 50'000'000)
                throw ParseError("node id too large", 0);
            edges.emplace_back(static_cast<int>(ia), static_cast<int>(ib));
            n = std::max({n, static_cast<int>(ia) + 1, static_cast<int>(ib) + 1});
        }
    } else {
        std::unordered_map<std::string, int> id_of;
        auto intern = [&](const std::string& tok) {
            auto [it, inserted] = id_of.emplace(tok, static_cast<int>(id_of.size()));
            return it->second;
        };
        for (const auto& [a, b] : token_pairs) {
            const int ia = intern(a);  // sequenced: first appearance wins
            const int ib = intern(b);
            edges.emplace_back(ia, ib);
        }
        n = static_cast<int>(id_of.size());
    }

    Graph g = graph_from_edges(n, edges);
    // Count what graph_from_edges dropped.
    long long self_loops = 0;
    for (auto [u, v] : edges)
        if (u == v) ++self_loops;
    rep.dropped_self_loops = self_loops;
    rep.dropped_duplicates =
        static_cast<long long>(edges.size()) - self_loops - g.m;
    if (report) *report = rep;
    return g;
}

Graph load_edge_list_file(const std::string& path, LoadReport* report) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list: " + path);
    return load_edge_list(in, report);
}

void save_edge_list(const Graph& g, std::ostream& out) {
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void save_edge_list_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write edge list: " + path);
    save_edge_list(g, out);
}

Graph generate_ba(int n, int m_attach, std::uint64_t rng_seed) {
    if (m_attach < 1 || n <= m_attach)
        throw std::invalid_argument("generate_ba requires n > m_attach >= 1");
    Rng rng = make_rng(rng_seed);
    std::vector<std::pair<int, int>> edges;
    // Repeated-endpoint list; sampling an index uniformly is sampling a
    // node proportional to degree.
    std::vector<int> endpoints;
    const int n0 = m_attach + 1;
    for (int u = 0; u < n0; ++u)
        for (int v = u + 1; v < n0; ++v) {
            edges.emplace_back(u, v);
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
    std::vector<int> targets;
    for (int u = n0; u < n; ++u) {
        targets.clear();
        while (static_cast<int>(targets.size()) < m_attach) {
            std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
            int t = endpoints[pick(rng)];
            if (std::find(targets.begin(), targets.end(), t) == targets.end())
                targets.push_back(t);
        }
        for (int t : targets) {
            edges.emplace_back(u, t);
            endpoints.push_back(u);
            endpoints.push_back(t);
        }
    }
    return graph_from_edges(n, edges);
}

Graph generate_er(int n, double p, std::uint64_t rng_seed) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("generate_er requires p in [0,1]");
    if (n < 1) throw std::invalid_argument("generate_er requires n >= 1");
    Rng rng = make_rng(rng_seed);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (uniform01(rng) < p) edges.emplace_back(u, v);
    return graph_from_edges(n, edges);
}

namespace {

double local_clustering(const Graph& g, int v) {
    const int k = g.degree(v);
    if (k < 2) return 0.0;
    long long links = 0;
    const auto& a = g.adj[v];
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (g.has_edge(a[i], a[j])) ++links;
    return 2.0 * static_cast<double>(links) / (static_cast<double>(k) * (k - 1));
}

bool is_connected(const Graph& g) {
    if (g.n <= 1) return true;
    std::vector<char> seen(g.n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : g.adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
    }
    return count == g.n;
}

}  // namespace

GraphStats stats(const Graph& g) {
    if (g.n < 1) throw std::invalid_argument("stats requires n >= 1");
    GraphStats s;
    s.n = g.n;
    s.m = g.m;
    double ksum = 0.0, k2sum = 0.0, csum = 0.0;
    for (int v = 0; v < g.n; ++v) {
        const double k = g.degree(v);
        ksum += k;
        k2sum += k * k;
        csum += local_clustering(g, v);
        s.max_degree = std::max(s.max_degree, g.degree(v));
    }
    s.mean_degree = ksum / g.n;
    s.mean_degree_sq = k2sum / g.n;
    s.mean_clustering = csum / g.n;
    s.heterogeneity = s.mean_degree > 0.0
                          ? s.mean_degree_sq / (s.mean_degree * s.mean_degree)
                          : 1.0;
    s.connected = is_connected(g);
    return s;
}

}  // namespace imgnn
