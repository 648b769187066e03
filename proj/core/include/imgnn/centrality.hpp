#pragma once

#include <array>
#include <string>
#include <vector>

#include "imgnn/graph.hpp"

namespace imgnn {

/// Per-node feature matrix with the fixed 6-column layout used as model
/// input: degree centrality, chi2 of raw degree, clustering, chi2 of
/// clustering, PageRank, coreness.
struct FeatureMatrix {
    static constexpr int kCols = 6;
    static const std::array<std::string, kCols>& column_names();

    int n = 0;
    std::vector<double> data;  // row-major, n x 6

    double& at(int row, int col) { return data[static_cast<std::size_t>(row) * kCols + col]; }
    double at(int row, int col) const { return data[static_cast<std::size_t>(row) * kCols + col]; }

    std::string to_csv() const;
};

struct RankingResult {
    std::vector<double> scores;
    std::vector<int> order;  // node ids, descending score, ties by ascending id

    std::string to_csv() const;
};

struct PageRankResult {
    std::vector<double> value;
    bool converged = false;
    int iterations = 0;
};

/// DC(i) = k_i / (N-1). Requires n >= 2.
std::vector<double> degree_centrality(const Graph& g);

/// C(i) = 2 * triangles(i) / (k_i (k_i - 1)); 0 when k_i < 2.
std::vector<double> clustering_coefficient(const Graph& g);

/// Undirected PageRank with teleport mass c/N:
///   PR_i = (1-c) * sum_j PR_j / k_j + c / N
/// iterated from uniform until max per-node change < tol. Mass from
/// isolated nodes is spread uniformly so the vector keeps summing to 1.
PageRankResult pagerank(const Graph& g, double teleport = 0.15,
                        double tol = 1e-10, int max_iter = 200);

/// k-core index via iterative minimum-degree peeling; isolated nodes 0.
std::vector<int> coreness(const Graph& g);

/// h(i) = max x such that at least x neighbors of i have degree >= x.
std::vector<int> h_index(const Graph& g);

/// chi2(i) = (o - e)^2 / e with o = observed(i) and e = mean of observed
/// over the neighbors of i. Degenerate cases: k_i = 0 -> 0; e = 0 with
/// o = 0 -> 0; e = 0 with o > 0 -> o.
std::vector<double> chi2_transform(const std::vector<double>& observed, const Graph& g);

/// Assemble the 6-column matrix. chi2 columns are computed from raw
/// degree and raw clustering. min_max_scale rescales each column to
/// [0,1] (off by default).
FeatureMatrix feature_matrix(const Graph& g, bool min_max_scale = false);

/// Descending-score ranking with ties broken by ascending node id.
/// Throws on NaN scores.
RankingResult rank(const std::vector<double>& scores);

}  // namespace imgnn
