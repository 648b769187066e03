#pragma once

#include <string>
#include <vector>

#include "imgnn/centrality.hpp"
#include "imgnn/graph.hpp"

namespace imgnn {

/// Nodes in selection order plus the score each carried when picked.
struct SelectionTrace {
    std::string method;
    std::vector<std::pair<std::string, double>> parameters;
    std::vector<int> order;
    std::vector<double> score_at_selection;

    std::string to_csv() const;  // metadata header + step,node_id,score
};

/// VoteRank: every node starts with voting ability 1; each round the node
/// with the largest sum of neighbor abilities is selected, its ability
/// zeroed, and each neighbor's ability reduced by 1/<k> (floored at 0).
SelectionTrace voterank(const Graph& g, int k);

/// VoteRank variant with votes weighted by normalized neighbor coreness:
/// weight(j) = (1 - w) + w * coreness(j)/max_coreness. Reconstruction of
/// the coreness-weighted scheme; w is configurable.
SelectionTrace ncvoterank(const Graph& g, int k, double coreness_weight = 0.5);

/// Per-node information entropy of the neighbor degree distribution:
/// E_i = -sum_j p_j ln p_j with p_j = k_j / sum of neighbor degrees.
std::vector<double> information_entropy(const Graph& g);

/// EnRenew-style selection: pick the max-entropy node each round and
/// multiply each neighbor's current entropy by the attenuation factor.
/// The renewal schedule is a documented reconstruction.
SelectionTrace enrenew(const Graph& g, int k, double attenuation = 0.5);

/// Cyclic sweep over coreness shells in descending order, picking the
/// unselected node with the highest information entropy from each shell
/// in turn; exhausted shells are skipped.
SelectionTrace improved_kshell(const Graph& g, int k);

/// Overlap-aware reordering of a static ranking: repeatedly select the
/// highest-score unselected node, then multiply the working score of
/// every node within suppression_radius hops by suppression_factor.
/// A reconstruction; with factor 1 it reproduces the base order.
SelectionTrace rinf_reorder(const Graph& g, const RankingResult& base, int k,
                            int suppression_radius = 1,
                            double suppression_factor = 0.5);

}  // namespace imgnn
