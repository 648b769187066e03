#include "imgnn/gnn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "imgnn/rng.hpp"

namespace imgnn {

Matrix matmul(const Matrix& x, const Matrix& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matmul: dimension mismatch");
    Matrix z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const double xv = x(i, k);
            if (xv == 0.0) continue;
            for (int j = 0; j < y.cols; ++j) z(i, j) += xv * y(k, j);
        }
    return z;
}

namespace {

double elu(double x, double alpha) { return x > 0.0 ? x : alpha * (std::exp(x) - 1.0); }
double elu_grad(double x, double alpha) { return x > 0.0 ? 1.0 : alpha * std::exp(x); }
double leaky_relu(double x, double slope) { return x > 0.0 ? x : slope * x; }
double leaky_relu_grad(double x, double slope) { return x > 0.0 ? 1.0 : slope; }
double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

/// Attention neighborhood: the node itself first, then its sorted
/// neighbors. Order is shared by forward and backward.
std::vector<int> attention_nbhd(const Graph& g, int i) {
    std::vector<int> nb;
    nb.reserve(g.adj[i].size() + 1);
    nb.push_back(i);
    nb.insert(nb.end(), g.adj[i].begin(), g.adj[i].end());
    return nb;
}

struct HeadCache {
    Matrix g;                               // n x dh, projected features H W
    std::vector<std::vector<double>> alpha; // softmax weights per node
    std::vector<std::vector<double>> u;     // pre-LeakyReLU attention scores
    Matrix s;                               // n x dh, pre-ELU aggregate
};

struct BlockCache {
    Matrix input;
    std::vector<HeadCache> heads;
    Matrix out;
};

Matrix forward_block(const Graph& g, const Matrix& h, const ConvBlock& block,
                     const ModelHyper& hp, BlockCache* cache) {
    if (h.cols != block.in_dim())
        throw std::invalid_argument("conv block: input dimension mismatch");
    const int n = h.rows;
    const int dh = block.head_dim();

    Matrix out = matmul(h, block.linear_w);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < out.cols; ++c) out(i, c) += block.linear_b[c];

    if (cache) {
        cache->input = h;
        cache->heads.assign(block.heads.size(), {});
    }

    for (std::size_t hi = 0; hi < block.heads.size(); ++hi) {
        const GatHead& head = block.heads[hi];
        Matrix proj = matmul(h, head.w);
        const double* a_self = head.attn.data();
        const double* a_nb = head.attn.data() + dh;

        // p_i = a_self . proj_i, q_j = a_nb . proj_j
        std::vector<double> p(n, 0.0), q(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < dh; ++c) {
                p[i] += a_self[c] * proj(i, c);
                q[i] += a_nb[c] * proj(i, c);
            }

        HeadCache hc;
        hc.s = Matrix(n, dh);
        hc.alpha.resize(n);
        hc.u.resize(n);
        for (int i = 0; i < n; ++i) {
            const auto nbhd = attention_nbhd(g, i);
            auto& u = hc.u[i];
            auto& alpha = hc.alpha[i];
            u.resize(nbhd.size());
            alpha.resize(nbhd.size());
            double emax = -std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < nbhd.size(); ++j) {
                u[j] = p[i] + q[nbhd[j]];
                emax = std::max(emax, leaky_relu(u[j], hp.leaky_slope));
            }
            double z = 0.0;
            for (std::size_t j = 0; j < nbhd.size(); ++j) {
                alpha[j] = std::exp(leaky_relu(u[j], hp.leaky_slope) - emax);
                z += alpha[j];
            }
            for (double& a : alpha) a /= z;
            for (std::size_t j = 0; j < nbhd.size(); ++j)
                for (int c = 0; c < dh; ++c)
                    hc.s(i, c) += alpha[j] * proj(nbhd[j], c);
            const int col0 = static_cast<int>(hi) * dh;
            for (int c = 0; c < dh; ++c)
                out(i, col0 + c) += elu(hc.s(i, c), hp.elu_alpha);
        }
        hc.g = std::move(proj);
        if (cache) cache->heads[hi] = std::move(hc);
    }

    if (cache) cache->out = out;
    return out;
}

/// Reverse pass through one block. d_out is the loss gradient at the
/// block output; returns the gradient at the block input and accumulates
/// parameter gradients into grad.
Matrix backward_block(const Graph& g, const ConvBlock& block,
                      const ModelHyper& hp, const BlockCache& cache,
                      const Matrix& d_out, ConvBlock& grad) {
    const int n = cache.input.rows;
    const int dh = block.head_dim();
    const Matrix& h = cache.input;

    Matrix d_h(n, block.in_dim());
    // Linear branch.
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < d_out.cols; ++c) {
            const double go = d_out(i, c);
            grad.linear_b[c] += go;
            for (int k = 0; k < block.in_dim(); ++k) {
                grad.linear_w(k, c) += h(i, k) * go;
                d_h(i, k) += go * block.linear_w(k, c);
            }
        }

    for (std::size_t hi = 0; hi < block.heads.size(); ++hi) {
        const GatHead& head = block.heads[hi];
        const HeadCache& hc = cache.heads[hi];
        GatHead& hg = grad.heads[hi];
        const double* a_self = head.attn.data();
        const double* a_nb = head.attn.data() + dh;
        double* da_self = hg.attn.data();
        double* da_nb = hg.attn.data() + dh;
        const int col0 = static_cast<int>(hi) * dh;

        Matrix d_proj(n, dh);
        std::vector<double> ds(dh), dalpha;
        for (int i = 0; i < n; ++i) {
            const auto nbhd = attention_nbhd(g, i);
            const auto& alpha = hc.alpha[i];
            const auto& u = hc.u[i];
            for (int c = 0; c < dh; ++c)
                ds[c] = d_out(i, col0 + c) * elu_grad(hc.s(i, c), hp.elu_alpha);

            dalpha.assign(nbhd.size(), 0.0);
            for (std::size_t j = 0; j < nbhd.size(); ++j) {
                const int v = nbhd[j];
                for (int c = 0; c < dh; ++c) {
                    dalpha[j] += ds[c] * hc.g(v, c);
                    d_proj(v, c) += alpha[j] * ds[c];
                }
            }
            // Softmax backward.
            double dot = 0.0;
            for (std::size_t j = 0; j < nbhd.size(); ++j) dot += alpha[j] * dalpha[j];
            double dp = 0.0;
            for (std::size_t j = 0; j < nbhd.size(); ++j) {
                const double de = alpha[j] * (dalpha[j] - dot);
                const double du = de * leaky_relu_grad(u[j], hp.leaky_slope);
                const int v = nbhd[j];
                dp += du;
                for (int c = 0; c < dh; ++c) {
                    da_nb[c] += du * hc.g(v, c);
                    d_proj(v, c) += du * a_nb[c];
                }
            }
            for (int c = 0; c < dh; ++c) {
                da_self[c] += dp * hc.g(i, c);
                d_proj(i, c) += dp * a_self[c];
            }
        }
        // proj = h W.
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < dh; ++c) {
                const double gp = d_proj(i, c);
                if (gp == 0.0) continue;
                for (int k = 0; k < block.in_dim(); ++k) {
                    hg.w(k, c) += h(i, k) * gp;
                    d_h(i, k) += gp * head.w(k, c);
                }
            }
    }
    return d_h;
}

Matrix features_as_matrix(const FeatureMatrix& f) {
    Matrix h(f.n, FeatureMatrix::kCols);
    h.a = f.data;
    return h;
}

void check_finite(const Matrix& m, const char* where) {
    for (double v : m.a)
        if (!std::isfinite(v))
            throw std::runtime_error(std::string("non-finite value in ") + where);
}

ConvBlock zero_block_like(const ConvBlock& b) {
    ConvBlock z;
    z.heads.resize(b.heads.size());
    for (std::size_t i = 0; i < b.heads.size(); ++i) {
        z.heads[i].w = Matrix(b.heads[i].w.rows, b.heads[i].w.cols);
        z.heads[i].attn.assign(b.heads[i].attn.size(), 0.0);
    }
    z.linear_w = Matrix(b.linear_w.rows, b.linear_w.cols);
    z.linear_b.assign(b.linear_b.size(), 0.0);
    return z;
}

}  // namespace

std::vector<std::span<double>> ModelParams::tensor_views() {
    std::vector<std::span<double>> v;
    for (ConvBlock* b : {&block1, &block2}) {
        for (auto& hd : b->heads) {
            v.emplace_back(hd.w.a);
            v.emplace_back(hd.attn);
        }
        v.emplace_back(b->linear_w.a);
        v.emplace_back(b->linear_b);
    }
    v.emplace_back(head_w);
    v.emplace_back(&head_b, 1);
    return v;
}

std::vector<std::span<const double>> ModelParams::tensor_views() const {
    auto views = const_cast<ModelParams*>(this)->tensor_views();
    return {views.begin(), views.end()};
}

std::vector<std::string> ModelParams::tensor_names() const {
    std::vector<std::string> names;
    for (int b = 1; b <= 2; ++b) {
        const ConvBlock& blk = (b == 1) ? block1 : block2;
        for (std::size_t h = 0; h < blk.heads.size(); ++h) {
            names.push_back("block" + std::to_string(b) + ".head" + std::to_string(h) + ".w");
            names.push_back("block" + std::to_string(b) + ".head" + std::to_string(h) + ".attn");
        }
        names.push_back("block" + std::to_string(b) + ".linear_w");
        names.push_back("block" + std::to_string(b) + ".linear_b");
    }
    names.push_back("head.w");
    names.push_back("head.b");
    return names;
}

std::vector<std::vector<int>> ModelParams::tensor_shapes() const {
    std::vector<std::vector<int>> shapes;
    for (const ConvBlock* b : {&block1, &block2}) {
        for (const auto& hd : b->heads) {
            shapes.push_back({hd.w.rows, hd.w.cols});
            shapes.push_back({static_cast<int>(hd.attn.size())});
        }
        shapes.push_back({b->linear_w.rows, b->linear_w.cols});
        shapes.push_back({static_cast<int>(b->linear_b.size())});
    }
    shapes.push_back({static_cast<int>(head_w.size())});
    shapes.push_back({1});
    return shapes;
}

std::string ModelParams::to_json() const {
    nlohmann::json j;
    j["format_version"] = 1;
    j["hyper"] = {{"in_dim", hyper.in_dim},
                  {"heads1", hyper.heads1},
                  {"head_dim1", hyper.head_dim1},
                  {"heads2", hyper.heads2},
                  {"head_dim2", hyper.head_dim2},
                  {"leaky_slope", hyper.leaky_slope},
                  {"elu_alpha", hyper.elu_alpha},
                  {"activation", "elu"},
                  {"output_activation", "sigmoid"}};
    const auto names = tensor_names();
    const auto shapes = tensor_shapes();
    const auto views = tensor_views();
    for (std::size_t i = 0; i < names.size(); ++i) {
        j["tensors"][names[i]] = {
            {"shape", shapes[i]},
            {"data", std::vector<double>(views[i].begin(), views[i].end())}};
    }
    return j.dump(2);
}

ModelParams from_hyper(const ModelHyper& hp) {
    ModelParams p;
    p.hyper = hp;
    const int out1 = hp.heads1 * hp.head_dim1;
    const int out2 = hp.heads2 * hp.head_dim2;
    p.block1.heads.resize(hp.heads1);
    for (auto& h : p.block1.heads) {
        h.w = Matrix(hp.in_dim, hp.head_dim1);
        h.attn.assign(2 * hp.head_dim1, 0.0);
    }
    p.block1.linear_w = Matrix(hp.in_dim, out1);
    p.block1.linear_b.assign(out1, 0.0);
    p.block2.heads.resize(hp.heads2);
    for (auto& h : p.block2.heads) {
        h.w = Matrix(out1, hp.head_dim2);
        h.attn.assign(2 * hp.head_dim2, 0.0);
    }
    p.block2.linear_w = Matrix(out1, out2);
    p.block2.linear_b.assign(out2, 0.0);
    p.head_w.assign(out2, 0.0);
    p.head_b = 0.0;
    return p;
}

ModelParams ModelParams::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ModelHyper hp;
    const auto& jh = j.at("hyper");
    hp.in_dim = jh.at("in_dim");
    hp.heads1 = jh.at("heads1");
    hp.head_dim1 = jh.at("head_dim1");
    hp.heads2 = jh.at("heads2");
    hp.head_dim2 = jh.at("head_dim2");
    hp.leaky_slope = jh.at("leaky_slope");
    hp.elu_alpha = jh.at("elu_alpha");
    ModelParams p = from_hyper(hp);
    const auto names = p.tensor_names();
    auto views = p.tensor_views();
    for (std::size_t i = 0; i < names.size(); ++i) {
        const auto data =
            j.at("tensors").at(names[i]).at("data").get<std::vector<double>>();
        if (data.size() != views[i].size())
            throw std::runtime_error("model json: size mismatch for " + names[i]);
        std::copy(data.begin(), data.end(), views[i].begin());
    }
    return p;
}

ModelParams init_params(std::uint64_t rng_seed, const ModelHyper& hyper) {
    ModelParams p = from_hyper(hyper);
    Rng rng = make_rng(derive_seed(rng_seed, 0x1417ULL));
    auto glorot = [&](std::span<double> t, int fan_in, int fan_out) {
        const double limit = std::sqrt(6.0 / (fan_in + fan_out));
        std::uniform_real_distribution<double> d(-limit, limit);
        for (double& x : t) x = d(rng);
    };
    for (ConvBlock* b : {&p.block1, &p.block2}) {
        for (auto& h : b->heads) {
            glorot(h.w.a, h.w.rows, h.w.cols);
            glorot(h.attn, static_cast<int>(h.attn.size()), 1);
        }
        glorot(b->linear_w.a, b->linear_w.rows, b->linear_w.cols);
        // biases stay zero
    }
    glorot(p.head_w, static_cast<int>(p.head_w.size()), 1);
    return p;
}

ModelParams zero_like(const ModelParams& p) {
    ModelParams z = from_hyper(p.hyper);
    return z;
}

Matrix gat_layer_forward(const Graph& g, const Matrix& h,
                         const std::vector<GatHead>& heads, double leaky_slope,
                         double elu_alpha) {
    if (heads.empty()) throw std::invalid_argument("gat_layer_forward: no heads");
    ModelHyper hp;
    hp.leaky_slope = leaky_slope;
    hp.elu_alpha = elu_alpha;
    // Run through forward_block with a zero linear branch to isolate the
    // GAT part.
    ConvBlock block;
    block.heads = heads;
    const int dh = heads[0].w.cols;
    block.linear_w = Matrix(h.cols, static_cast<int>(heads.size()) * dh);
    block.linear_b.assign(static_cast<std::size_t>(heads.size()) * dh, 0.0);
    return forward_block(g, h, block, hp, nullptr);
}

std::vector<std::vector<double>> gat_attention(const Graph& g, const Matrix& h,
                                               const GatHead& head,
                                               double leaky_slope) {
    ModelHyper hp;
    hp.leaky_slope = leaky_slope;
    ConvBlock block;
    block.heads = {head};
    block.linear_w = Matrix(h.cols, head.w.cols);
    block.linear_b.assign(head.w.cols, 0.0);
    BlockCache cache;
    forward_block(g, h, block, hp, &cache);
    return cache.heads[0].alpha;
}

namespace {

struct ForwardCaches {
    BlockCache c1, c2;
    std::vector<double> z;       // head pre-sigmoid
    std::vector<double> scores;
};

std::vector<double> forward_impl(const Graph& g, const FeatureMatrix& f,
                                 const ModelParams& p, ForwardCaches* caches) {
    if (f.n != g.n) throw std::invalid_argument("model_forward: feature row mismatch");
    const Matrix h0 = features_as_matrix(f);
    const Matrix h1 = forward_block(g, h0, p.block1, p.hyper, caches ? &caches->c1 : nullptr);
    check_finite(h1, "conv block 1");
    const Matrix h2 = forward_block(g, h1, p.block2, p.hyper, caches ? &caches->c2 : nullptr);
    check_finite(h2, "conv block 2");
    std::vector<double> scores(g.n), z(g.n);
    for (int i = 0; i < g.n; ++i) {
        double acc = p.head_b;
        for (int c = 0; c < h2.cols; ++c) acc += h2(i, c) * p.head_w[c];
        z[i] = acc;
        scores[i] = sigmoid(acc);
    }
    if (caches) {
        caches->z = z;
        caches->scores = scores;
    }
    return scores;
}

}  // namespace

std::vector<double> model_forward(const Graph& g, const FeatureMatrix& f,
                                  const ModelParams& p) {
    return forward_impl(g, f, p, nullptr);
}

std::pair<double, ModelParams> loss_and_gradients(const Graph& g,
                                                  const FeatureMatrix& f,
                                                  const std::vector<double>& labels,
                                                  const ModelParams& p) {
    if (static_cast<int>(labels.size()) != g.n)
        throw std::invalid_argument("loss_and_gradients: label count mismatch");
    ForwardCaches caches;
    forward_impl(g, f, p, &caches);

    double loss = 0.0;
    std::vector<double> dz(g.n);
    for (int i = 0; i < g.n; ++i) {
        const double s = caches.scores[i];
        const double resid = s - labels[i];
        loss += resid * resid;
        dz[i] = 2.0 * resid * s * (1.0 - s);
    }

    ModelParams grad = zero_like(p);
    grad.block1 = zero_block_like(p.block1);
    grad.block2 = zero_block_like(p.block2);

    const Matrix& h2 = caches.c2.out;
    Matrix d_h2(h2.rows, h2.cols);
    for (int i = 0; i < g.n; ++i) {
        grad.head_b += dz[i];
        for (int c = 0; c < h2.cols; ++c) {
            grad.head_w[c] += h2(i, c) * dz[i];
            d_h2(i, c) = dz[i] * p.head_w[c];
        }
    }
    const Matrix d_h1 =
        backward_block(g, p.block2, p.hyper, caches.c2, d_h2, grad.block2);
    backward_block(g, p.block1, p.hyper, caches.c1, d_h1, grad.block1);
    return {loss, std::move(grad)};
}

std::string TrainResult::log_csv() const {
    std::ostringstream out;
    out << "epoch,mean_loss\n";
    out.precision(17);
    for (std::size_t e = 0; e < epoch_mean_loss.size(); ++e)
        out << (e + 1) << ',' << epoch_mean_loss[e] << '\n';
    return out.str();
}

TrainResult train(const std::vector<LabeledSample>& corpus, const TrainConfig& cfg,
                  const ModelHyper& hyper) {
    if (corpus.empty()) throw std::invalid_argument("train: empty corpus");
    if (cfg.epochs < 1) throw std::invalid_argument("train: epochs >= 1");
    if (cfg.learning_rate <= 0.0) throw std::invalid_argument("train: learning_rate > 0");
    for (const auto& s : corpus)
        if (s.features.n != s.graph.n)
            throw std::invalid_argument("train: sample feature shape mismatch");

    TrainResult result;
    result.params = init_params(cfg.rng_seed, hyper);

    // Adam moment buffers, one pair per tensor.
    auto views = result.params.tensor_views();
    std::vector<std::vector<double>> m_buf, v_buf;
    for (auto& t : views) {
        m_buf.emplace_back(t.size(), 0.0);
        v_buf.emplace_back(t.size(), 0.0);
    }
    long long step = 0;

    std::vector<int> order(corpus.size());
    std::iota(order.begin(), order.end(), 0);

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        Rng shuffle_rng = make_rng(derive_seed(cfg.rng_seed, 0x5u, epoch));
        std::shuffle(order.begin(), order.end(), shuffle_rng);
        double loss_sum = 0.0;
        for (int idx : order) {
            const auto& s = corpus[idx];
            auto [loss, grad] =
                loss_and_gradients(s.graph, s.features, s.labels, result.params);
            if (!std::isfinite(loss))
                throw std::runtime_error("train: loss diverged at epoch " +
                                         std::to_string(epoch + 1) + ", sample " +
                                         std::to_string(idx));
            loss_sum += loss;
            ++step;
            auto pv = result.params.tensor_views();
            auto gv = grad.tensor_views();
            for (std::size_t t = 0; t < pv.size(); ++t) {
                for (std::size_t k = 0; k < pv[t].size(); ++k) {
                    const double gk = gv[t][k];
                    if (cfg.use_adam) {
                        auto& m = m_buf[t][k];
                        auto& v = v_buf[t][k];
                        m = cfg.adam_beta1 * m + (1.0 - cfg.adam_beta1) * gk;
                        v = cfg.adam_beta2 * v + (1.0 - cfg.adam_beta2) * gk * gk;
                        const double mh = m / (1.0 - std::pow(cfg.adam_beta1, step));
                        const double vh = v / (1.0 - std::pow(cfg.adam_beta2, step));
                        pv[t][k] -= cfg.learning_rate * mh / (std::sqrt(vh) + cfg.adam_eps);
                    } else {
                        pv[t][k] -= cfg.learning_rate * gk;
                    }
                }
            }
        }
        result.epoch_mean_loss.push_back(loss_sum / static_cast<double>(corpus.size()));
    }
    return result;
}

RankingResult score_nodes(const Graph& g, const ModelParams& p) {
    const FeatureMatrix f = feature_matrix(g);
    return rank(model_forward(g, f, p));
}

}  // namespace imgnn
