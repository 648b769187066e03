#include "imgnn/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace imgnn {

const std::array<std::string, FeatureMatrix::kCols>& FeatureMatrix::column_names() {
    static const std::array<std::string, kCols> names = {
        "degree_centrality", "chi2_degree",  "clustering",
        "chi2_clustering",   "pagerank",     "coreness"};
    return names;
}

std::string FeatureMatrix::to_csv() const {
    std::ostringstream out;
    out << "node_id";
    for (const auto& c : column_names()) out << ',' << c;
    out << '\n';
    out.precision(17);
    for (int i = 0; i < n; ++i) {
        out << i;
        for (int c = 0; c < kCols; ++c) out << ',' << at(i, c);
        out << '\n';
    }
    return out.str();
}

std::string RankingResult::to_csv() const {
    std::ostringstream out;
    out << "node_id,score,rank\n";
    out.precision(17);
    for (std::size_t r = 0; r < order.size(); ++r)
        out << order[r] << ',' << scores[order[r]] << ',' << r << '\n';
    return out.str();
}

std::vector<double> degree_centrality(const Graph& g) {
    if (g.n < 2) throw std::invalid_argument("degree_centrality requires n >= 2");
    std::vector<double> dc(g.n);
    for (int i = 0; i < g.n; ++i)
        dc[i] = static_cast<double>(g.degree(i)) / (g.n - 1);
    return dc;
}

std::vector<double> clustering_coefficient(const Graph& g) {
    std::vector<double> c(g.n, 0.0);
    for (int v = 0; v < g.n; ++v) {
        const int k = g.degree(v);
        if (k < 2) continue;
        long long links = 0;
        const auto& a = g.adj[v];
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = i + 1; j < a.size(); ++j)
                if (g.has_edge(a[i], a[j])) ++links;
        c[v] = 2.0 * static_cast<double>(links) /
               (static_cast<double>(k) * (k - 1));
    }
    return c;
}

PageRankResult pagerank(const Graph& g, double teleport, double tol, int max_iter) {
    if (teleport <= 0.0 || teleport >= 1.0)
        throw std::invalid_argument("pagerank teleport must be in (0,1)");
    const int n = g.n;
    PageRankResult res;
    res.value.assign(n, 1.0 / n);
    std::vector<double> next(n);
    for (int it = 0; it < max_iter; ++it) {
        double dangling = 0.0;
        for (int j = 0; j < n; ++j)
            if (g.degree(j) == 0) dangling += res.value[j];
        const double base = teleport / n + (1.0 - teleport) * dangling / n;
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j : g.adj[i]) acc += res.value[j] / g.degree(j);
            next[i] = base + (1.0 - teleport) * acc;
        }
        double delta = 0.0;
        for (int i = 0; i < n; ++i)
            delta = std::max(delta, std::abs(next[i] - res.value[i]));
        res.value.swap(next);
        res.iterations = it + 1;
        if (delta < tol) {
            res.converged = true;
            break;
        }
    }
    return res;
}

std::vector<int> coreness(const Graph& g) {
    const int n = g.n;
    std::vector<int> deg(n), core(n, 0);
    int max_deg = 0;
    for (int v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        max_deg = std::max(max_deg, deg[v]);
    }
    // Bucket sort nodes by degree, then peel in nondecreasing order.
    std::vector<int> bin(max_deg + 2, 0), pos(n), vert(n);
    for (int v = 0; v < n; ++v) ++bin[deg[v]];
    int start = 0;
    for (int d = 0; d <= max_deg; ++d) {
        int cnt = bin[d];
        bin[d] = start;
        start += cnt;
    }
    for (int v = 0; v < n; ++v) {
        pos[v] = bin[deg[v]]++;
        vert[pos[v]] = v;
    }
    for (int d = max_deg; d > 0; --d) bin[d] = bin[d - 1];
    bin[0] = 0;

    for (int i = 0; i < n; ++i) {
        int v = vert[i];
        core[v] = deg[v];
        for (int u : g.adj[v]) {
            if (deg[u] > deg[v]) {
                int du = deg[u], pu = pos[u];
                int pw = bin[du], w = vert[pw];
                if (u != w) {
                    std::swap(vert[pu], vert[pw]);
                    std::swap(pos[u], pos[w]);
                }
                ++bin[du];
                --deg[u];
            }
        }
    }
    return core;
}

std::vector<int> h_index(const Graph& g) {
    std::vector<int> h(g.n, 0);
    std::vector<int> nd;
    for (int v = 0; v < g.n; ++v) {
        nd.clear();
        for (int u : g.adj[v]) nd.push_back(g.degree(u));
        std::sort(nd.begin(), nd.end(), std::greater<>());
        int x = 0;
        while (x < static_cast<int>(nd.size()) && nd[x] >= x + 1) ++x;
        h[v] = x;
    }
    return h;
}

std::vector<double> chi2_transform(const std::vector<double>& observed, const Graph& g) {
    std::vector<double> chi2(g.n, 0.0);
    for (int v = 0; v < g.n; ++v) {
        const int k = g.degree(v);
        if (k == 0) continue;
        double e = 0.0;
        for (int u : g.adj[v]) e += observed[u];
        e /= k;
        const double o = observed[v];
        if (e == 0.0)
            chi2[v] = (o == 0.0) ? 0.0 : o;
        else
            chi2[v] = (o - e) * (o - e) / e;
    }
    return chi2;
}

FeatureMatrix feature_matrix(const Graph& g, bool min_max_scale) {
    if (g.n < 2) throw std::invalid_argument("feature_matrix requires n >= 2");
    std::vector<double> raw_degree(g.n);
    for (int v = 0; v < g.n; ++v) raw_degree[v] = g.degree(v);
    const auto dc = degree_centrality(g);
    const auto chi2_deg = chi2_transform(raw_degree, g);
    const auto clus = clustering_coefficient(g);
    const auto chi2_clus = chi2_transform(clus, g);
    const auto pr = pagerank(g).value;
    const auto core = coreness(g);

    FeatureMatrix fm;
    fm.n = g.n;
    fm.data.resize(static_cast<std::size_t>(g.n) * FeatureMatrix::kCols);
    for (int i = 0; i < g.n; ++i) {
        fm.at(i, 0) = dc[i];
        fm.at(i, 1) = chi2_deg[i];
        fm.at(i, 2) = clus[i];
        fm.at(i, 3) = chi2_clus[i];
        fm.at(i, 4) = pr[i];
        fm.at(i, 5) = static_cast<double>(core[i]);
    }
    if (min_max_scale) {
        for (int c = 0; c < FeatureMatrix::kCols; ++c) {
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (int i = 0; i < g.n; ++i) {
                lo = std::min(lo, fm.at(i, c));
                hi = std::max(hi, fm.at(i, c));
            }
            if (hi > lo)
                for (int i = 0; i < g.n; ++i)
                    fm.at(i, c) = (fm.at(i, c) - lo) / (hi - lo);
            else
                for (int i = 0; i < g.n; ++i) fm.at(i, c) = 0.0;
        }
    }
    return fm;
}

RankingResult rank(const std::vector<double>& scores) {
    for (double s : scores)
        if (std::isnan(s)) throw std::invalid_argument("rank: NaN score");
    RankingResult r;
    r.scores = scores;
    r.order.resize(scores.size());
    std::iota(r.order.begin(), r.order.end(), 0);
    std::stable_sort(r.order.begin(), r.order.end(), [&](int a, int b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });
    return r;
}

}  // namespace imgnn
