#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "imgnn/centrality.hpp"
#include "imgnn/graph.hpp"
#include "imgnn/oracle.hpp"

namespace imgnn {

/// Row-major dense matrix, just enough linear algebra for the model.
struct Matrix {
    int rows = 0, cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

    double& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    double operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

Matrix matmul(const Matrix& x, const Matrix& y);

struct GatHead {
    Matrix w;                  // in_dim x head_dim
    std::vector<double> attn;  // 2 * head_dim, split as [a_self | a_neighbor]
};

/// One graph-convolution block: multi-head GAT (ELU per head, heads
/// concatenated) summed with a parallel linear transform of the block
/// input.
struct ConvBlock {
    std::vector<GatHead> heads;
    Matrix linear_w;               // in_dim x (heads * head_dim)
    std::vector<double> linear_b;  // heads * head_dim

    int in_dim() const { return linear_w.rows; }
    int out_dim() const { return linear_w.cols; }
    int head_dim() const { return heads.empty() ? 0 : heads[0].w.cols; }
};

struct ModelHyper {
    int in_dim = 6;
    int heads1 = 5, head_dim1 = 10;   // block 1 output: 50
    int heads2 = 10, head_dim2 = 20;  // block 2 output: 200
    double leaky_slope = 0.2;
    double elu_alpha = 1.0;
};

struct ModelParams {
    ModelHyper hyper;
    ConvBlock block1, block2;
    std::vector<double> head_w;  // block2 out_dim
    double head_b = 0.0;

    /// Views over every parameter tensor, fixed order; same order for a
    /// gradient holder of the same shape.
    std::vector<std::span<double>> tensor_views();
    std::vector<std::span<const double>> tensor_views() const;
    std::vector<std::string> tensor_names() const;
    std::vector<std::vector<int>> tensor_shapes() const;

    std::string to_json() const;
    static ModelParams from_json(const std::string& text);
};

struct TrainConfig {
    int epochs = 10;
    double learning_rate = 0.001;
    std::uint64_t rng_seed = 0;
    bool use_adam = true;  // plain gradient descent when false
    double adam_beta1 = 0.9, adam_beta2 = 0.999, adam_eps = 1e-8;
};

struct TrainResult {
    ModelParams params;
    std::vector<double> epoch_mean_loss;

    std::string log_csv() const;  // epoch,mean_loss
};

/// Glorot-uniform initialization of the fixed two-block architecture.
ModelParams init_params(std::uint64_t rng_seed, const ModelHyper& hyper = {});
ModelParams zero_like(const ModelParams& p);

/// Single multi-head GAT layer: per head, attention softmax over
/// Gamma_i + {i} with LeakyReLU scoring, ELU on the aggregated output,
/// heads concatenated. Exposed for testing; model_forward composes it.
Matrix gat_layer_forward(const Graph& g, const Matrix& h,
                         const std::vector<GatHead>& heads,
                         double leaky_slope = 0.2, double elu_alpha = 1.0);

/// Attention weights for one head: result[i][j] is the coefficient of
/// the j-th member of {i} + sorted neighbors of i. Each row sums to 1.
std::vector<std::vector<double>> gat_attention(const Graph& g, const Matrix& h,
                                               const GatHead& head,
                                               double leaky_slope = 0.2);

/// Full model: two conv blocks, linear head, sigmoid. Scores in (0,1).
std::vector<double> model_forward(const Graph& g, const FeatureMatrix& f,
                                  const ModelParams& p);

/// Squared loss sum_i (score_i - label_i)^2 and analytic reverse-mode
/// gradients for every parameter tensor.
std::pair<double, ModelParams> loss_and_gradients(const Graph& g,
                                                  const FeatureMatrix& f,
                                                  const std::vector<double>& labels,
                                                  const ModelParams& p);

/// One gradient step per network, corpus shuffled per epoch; returns the
/// final parameters and the per-epoch mean loss trace. Deterministic for
/// a fixed seed.
TrainResult train(const std::vector<LabeledSample>& corpus, const TrainConfig& cfg,
                  const ModelHyper& hyper = {});

/// feature_matrix + model_forward + descending rank.
RankingResult score_nodes(const Graph& g, const ModelParams& p);

}  // namespace imgnn
