#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace imgnn {

/// Immutable undirected simple graph with dense node ids 0..n-1.
/// Adjacency lists are sorted and symmetric; m counts each undirected
/// edge once.
struct Graph {
    int n = 0;
    long long m = 0;
    std::vector<std::vector<int>> adj;

    int degree(int v) const { return static_cast<int>(adj[v].size()); }
    bool has_edge(int u, int v) const;

    /// All edges as (u, v) with u < v, lexicographic.
    std::vector<std::pair<int, int>> edges() const;

    /// Checks adjacency symmetry, sortedness, absence of self-loops and
    /// duplicates, and the m = sum(deg)/2 identity. Throws on violation.
    void validate() const;
};

/// Build a graph from an (unordered, possibly duplicated) edge list over
/// ids 0..n-1. Self-loops and duplicates are dropped.
Graph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges);

struct GraphStats {
    int n = 0;
    long long m = 0;
    double mean_degree = 0.0;        // <k>
    int max_degree = 0;              // k_max
    double mean_clustering = 0.0;    // <C>
    double mean_degree_sq = 0.0;     // <k^2>
    double heterogeneity = 1.0;      // H = <k^2>/<k>^2
    bool connected = false;
};

struct LoadReport {
    long long dropped_self_loops = 0;
    long long dropped_duplicates = 0;
    long long lines_read = 0;
};

class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& msg, long long line)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ")"),
          line_(line) {}
    long long line() const { return line_; }

  private:
    long long line_;
};

/// Parse a whitespace-separated edge list. Lines starting with '#' or '%'
/// are comments. When every node token is a nonnegative integer the
/// literal values are kept as ids (so saved graphs round-trip); otherwise
/// tokens are mapped to dense ids in first-appearance order. Duplicate
/// edges and self-loops are dropped and counted in the report. Throws
/// ParseError on a malformed line and on empty input.
Graph load_edge_list(std::istream& in, LoadReport* report = nullptr);
Graph load_edge_list_file(const std::string& path, LoadReport* report = nullptr);

/// Write the graph as one "u v" line per edge, u < v, decimal ids.
void save_edge_list(const Graph& g, std::ostream& out);
void save_edge_list_file(const Graph& g, const std::string& path);

/// Barabasi-Albert preferential attachment. Starts from a complete graph
/// on m_attach+1 nodes; each subsequent node attaches m_attach edges to
/// distinct existing nodes with probability proportional to degree.
Graph generate_ba(int n, int m_attach, std::uint64_t rng_seed);

/// Erdos-Renyi G(n, p): every unordered pair linked independently with
/// probability p.
Graph generate_er(int n, double p, std::uint64_t rng_seed);

GraphStats stats(const Graph& g);

}  // namespace imgnn
