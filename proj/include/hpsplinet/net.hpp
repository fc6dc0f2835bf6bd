#pragma once

// Feedforward ReLU network F: R^d -> R. Depth L counts the input and output
// layers, so a spec (d, L, W) has L-2 hidden layers of uniform width W; the
// output unit is affine. Parameter count:
//   (dW + W) + (L-3)(W^2 + W) + (W + 1),
// i.e. connections plus one bias per computational unit, output included.
// Training is plain mini-batch Adam over the dataset in caller order: the run
// is a pure function of (initial net, dataset order, config).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hpsplinet/errors.hpp"
#include "hpsplinet/rng.hpp"

namespace hps {

struct MlpSpec {
    int input_dim = 32;
    int depth = 3;  // total layer count, input and output included
    int width = 1;  // uniform hidden width

    void validate() const {
        if (input_dim < 1) throw std::invalid_argument("MlpSpec: input_dim must be >= 1");
        if (depth < 3) throw std::invalid_argument("MlpSpec: depth must be >= 3");
        if (width < 1) throw std::invalid_argument("MlpSpec: width must be >= 1");
    }

    int hidden_layers() const { return depth - 2; }
};

inline long complexity(const MlpSpec& spec) {
    spec.validate();
    long d = spec.input_dim, W = spec.width, L = spec.depth;
    return (d * W + W) + (L - 3) * (W * W + W) + (W + 1);
}

class MlpNetwork {
public:
    MlpNetwork() = default;

    // He-style fan-in scaled uniform weights and small uniform biases (the
    // bias jitter keeps units off a shared dead cone when inputs are highly
    // correlated signals); same seed gives bit-identical parameters.
    static MlpNetwork init(const MlpSpec& spec, std::uint64_t seed) {
        spec.validate();
        MlpNetwork net;
        net.spec_ = spec;
        net.seed_ = seed;
        Rng rng(seed);
        const auto dims = net.layer_dims();
        for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
            int fan_in = dims[l], fan_out = dims[l + 1];
            double limit = std::sqrt(6.0 / fan_in);
            std::vector<double> w(static_cast<std::size_t>(fan_out) * fan_in);
            for (double& v : w) v = rng.uniform(-limit, limit);
            std::vector<double> b(fan_out);
            for (double& v : b) v = rng.uniform(-0.05, 0.05);
            net.weights_.push_back(std::move(w));
            net.biases_.push_back(std::move(b));
        }
        return net;
    }

    static MlpNetwork from_parameters(const MlpSpec& spec,
                                      std::vector<std::vector<double>> weights,
                                      std::vector<std::vector<double>> biases,
                                      std::uint64_t seed = 0) {
        spec.validate();
        MlpNetwork net;
        net.spec_ = spec;
        net.seed_ = seed;
        const auto dims = net.layer_dims();
        if (weights.size() != dims.size() - 1 || biases.size() != dims.size() - 1)
            throw std::invalid_argument("MlpNetwork: wrong layer count");
        for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
            if (weights[l].size() != static_cast<std::size_t>(dims[l]) * dims[l + 1] ||
                biases[l].size() != static_cast<std::size_t>(dims[l + 1]))
                throw std::invalid_argument("MlpNetwork: wrong parameter shape");
        }
        net.weights_ = std::move(weights);
        net.biases_ = std::move(biases);
        return net;
    }

    const MlpSpec& spec() const { return spec_; }
    std::uint64_t seed() const { return seed_; }

    // dims: input, hidden..., output
    std::vector<int> layer_dims() const {
        std::vector<int> dims{spec_.input_dim};
        for (int l = 0; l < spec_.hidden_layers(); ++l) dims.push_back(spec_.width);
        dims.push_back(1);
        return dims;
    }

    long parameter_count() const {
        long n = 0;
        for (std::size_t l = 0; l < weights_.size(); ++l)
            n += static_cast<long>(weights_[l].size()) + static_cast<long>(biases_[l].size());
        return n;
    }

    double forward(const std::vector<double>& x) const {
        if (static_cast<int>(x.size()) != spec_.input_dim)
            throw std::invalid_argument("MlpNetwork::forward: input length mismatch");
        std::vector<double> cur = x, next;
        const auto dims = layer_dims();
        for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
            const bool is_output = (l + 2 == dims.size());
            const int in = dims[l], out = dims[l + 1];
            next.assign(out, 0.0);
            for (int r = 0; r < out; ++r) {
                double z = biases_[l][r];
                const double* wrow = &weights_[l][static_cast<std::size_t>(r) * in];
                for (int c = 0; c < in; ++c) z += wrow[c] * cur[c];
                next[r] = is_output ? z : std::max(0.0, z);
            }
            cur.swap(next);
        }
        return cur[0];
    }

    // weights_[l] is row-major (out x in)
    std::vector<std::vector<double>> weights_;
    std::vector<std::vector<double>> biases_;

private:
    MlpSpec spec_;
    std::uint64_t seed_ = 0;
};

struct TrainConfig {
    double learning_rate = 1e-3;
    int batch_size = 32;
    int max_epochs = 20000;
    std::uint64_t seed = 0;
    double beta1 = 0.9;        // first-moment decay
    double beta2 = 0.999;      // second-moment decay
    double adam_eps = 1e-8;
    double target_eps = 0.0;         // stop when sup-norm validation error <= this (if > 0)
    double target_train_loss = 0.0;  // stop when the epoch mean loss <= this (if > 0)

    void validate() const {
        if (!(learning_rate > 0.0)) throw std::invalid_argument("TrainConfig: learning_rate");
        if (batch_size < 1) throw std::invalid_argument("TrainConfig: batch_size");
        if (max_epochs < 1) throw std::invalid_argument("TrainConfig: max_epochs");
        if (!(beta1 > 0.0 && beta1 < 1.0) || !(beta2 > 0.0 && beta2 < 1.0))
            throw std::invalid_argument("TrainConfig: moment decays must be in (0,1)");
        if (!(adam_eps > 0.0)) throw std::invalid_argument("TrainConfig: adam_eps");
        if (target_eps < 0.0) throw std::invalid_argument("TrainConfig: target_eps");
    }
};

struct TrainHistory {
    std::vector<double> train_loss;       // mean batch loss per epoch
    std::vector<double> val_sup_err;      // per epoch (empty without validation)
    std::vector<double> best_val_so_far;  // running minimum
    int best_epoch = -1;
    bool reached_target = false;
};

struct TrainResult {
    MlpNetwork network;  // best-so-far parameters (final ones without validation)
    TrainHistory history;
};

namespace detail {

// Backprop for the squared loss on one sample; accumulates parameter
// gradients scaled by `scale` into gw/gb. Returns the prediction.
inline double accumulate_gradient(const MlpNetwork& net, const std::vector<double>& x,
                                  double target, double scale,
                                  std::vector<std::vector<double>>& gw,
                                  std::vector<std::vector<double>>& gb,
                                  std::vector<std::vector<double>>& acts,
                                  std::vector<std::vector<double>>& zs) {
    const auto dims = net.layer_dims();
    const std::size_t nl = dims.size() - 1;
    acts.resize(nl + 1);
    zs.resize(nl);
    acts[0] = x;
    for (std::size_t l = 0; l < nl; ++l) {
        const bool is_output = (l + 1 == nl);
        const int in = dims[l], out = dims[l + 1];
        zs[l].assign(out, 0.0);
        acts[l + 1].assign(out, 0.0);
        for (int r = 0; r < out; ++r) {
            double z = net.biases_[l][r];
            const double* wrow = &net.weights_[l][static_cast<std::size_t>(r) * in];
            for (int c = 0; c < in; ++c) z += wrow[c] * acts[l][c];
            zs[l][r] = z;
            acts[l + 1][r] = is_output ? z : std::max(0.0, z);
        }
    }
    const double pred = acts[nl][0];
    // dL/dpred for L = (pred - target)^2
    std::vector<double> delta{2.0 * (pred - target)};
    for (std::size_t l = nl; l-- > 0;) {
        const int in = dims[l], out = dims[l + 1];
        for (int r = 0; r < out; ++r) {
            double d = delta[r] * scale;
            gb[l][r] += d;
            double* grow = &gw[l][static_cast<std::size_t>(r) * in];
            for (int c = 0; c < in; ++c) grow[c] += d * acts[l][c];
        }
        if (l == 0) break;
        std::vector<double> prev(in, 0.0);
        for (int c = 0; c < in; ++c) {
            double s = 0.0;
            for (int r = 0; r < out; ++r)
                s += net.weights_[l][static_cast<std::size_t>(r) * in + c] * delta[r];
            prev[c] = (zs[l - 1][c] > 0.0) ? s : 0.0;  // ReLU gate
        }
        delta.swap(prev);
    }
    return pred;
}

}  // namespace detail

// Analytic gradient of F at x w.r.t. all parameters, flattened layer by layer
// (weights row-major then biases). Used by the finite-difference checks.
inline std::vector<double> parameter_gradient(const MlpNetwork& net, const std::vector<double>& x) {
    std::vector<std::vector<double>> gw, gb, acts, zs;
    for (std::size_t l = 0; l < net.weights_.size(); ++l) {
        gw.emplace_back(net.weights_[l].size(), 0.0);
        gb.emplace_back(net.biases_[l].size(), 0.0);
    }
    // gradient of F itself: feed target = pred - 0.5 so 2(pred-target) = 1
    double pred = net.forward(x);
    detail::accumulate_gradient(net, x, pred - 0.5, 1.0, gw, gb, acts, zs);
    std::vector<double> flat;
    for (std::size_t l = 0; l < gw.size(); ++l) {
        flat.insert(flat.end(), gw[l].begin(), gw[l].end());
        flat.insert(flat.end(), gb[l].begin(), gb[l].end());
    }
    return flat;
}

inline TrainResult train(const MlpNetwork& initial,
                         const std::vector<std::vector<double>>& inputs,
                         const std::vector<double>& targets, const TrainConfig& cfg,
                         const std::vector<std::vector<double>>& val_inputs = {},
                         const std::vector<double>& val_targets = {}) {
    cfg.validate();
    if (inputs.empty() || inputs.size() != targets.size())
        throw std::invalid_argument("train: empty dataset or length mismatch");
    if (val_inputs.size() != val_targets.size())
        throw std::invalid_argument("train: validation length mismatch");

    MlpNetwork net = initial;
    const std::size_t n = inputs.size();
    const std::size_t nl = net.weights_.size();

    std::vector<std::vector<double>> gw(nl), gb(nl), mw(nl), mb(nl), vw(nl), vb(nl);
    for (std::size_t l = 0; l < nl; ++l) {
        gw[l].assign(net.weights_[l].size(), 0.0);
        gb[l].assign(net.biases_[l].size(), 0.0);
        mw[l] = gw[l]; vw[l] = gw[l];
        mb[l] = gb[l]; vb[l] = gb[l];
    }
    std::vector<std::vector<double>> acts, zs;

    TrainResult result;
    TrainHistory& hist = result.history;
    MlpNetwork best = net;
    double best_val = std::numeric_limits<double>::infinity();
    long step = 0;

    auto validation_sup = [&](const MlpNetwork& model) {
        double sup = 0.0;
        for (std::size_t i = 0; i < val_inputs.size(); ++i)
            sup = std::max(sup, std::abs(model.forward(val_inputs[i]) - val_targets[i]));
        return sup;
    };

    for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
        double epoch_loss = 0.0;
        for (std::size_t start = 0; start < n; start += cfg.batch_size) {
            const std::size_t stop = std::min(n, start + cfg.batch_size);
            const double scale = 1.0 / static_cast<double>(stop - start);
            for (std::size_t l = 0; l < nl; ++l) {
                std::fill(gw[l].begin(), gw[l].end(), 0.0);
                std::fill(gb[l].begin(), gb[l].end(), 0.0);
            }
            double batch_loss = 0.0;
            for (std::size_t i = start; i < stop; ++i) {
                double pred = detail::accumulate_gradient(net, inputs[i], targets[i], scale,
                                                          gw, gb, acts, zs);
                double e = pred - targets[i];
                batch_loss += scale * e * e;
            }
            if (!std::isfinite(batch_loss))
                throw TrainingError("train: loss became non-finite at epoch " +
                                        std::to_string(epoch), epoch);
            epoch_loss += batch_loss * static_cast<double>(stop - start);

            ++step;
            const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(step));
            const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(step));
            for (std::size_t l = 0; l < nl; ++l) {
                auto update = [&](std::vector<double>& p, std::vector<double>& g,
                                  std::vector<double>& mo, std::vector<double>& ve) {
                    for (std::size_t k = 0; k < p.size(); ++k) {
                        mo[k] = cfg.beta1 * mo[k] + (1.0 - cfg.beta1) * g[k];
                        ve[k] = cfg.beta2 * ve[k] + (1.0 - cfg.beta2) * g[k] * g[k];
                        double mhat = mo[k] / bc1, vhat = ve[k] / bc2;
                        p[k] -= cfg.learning_rate * mhat / (std::sqrt(vhat) + cfg.adam_eps);
                    }
                };
                update(net.weights_[l], gw[l], mw[l], vw[l]);
                update(net.biases_[l], gb[l], mb[l], vb[l]);
            }
        }
        hist.train_loss.push_back(epoch_loss / static_cast<double>(n));
        if (cfg.target_train_loss > 0.0 && hist.train_loss.back() <= cfg.target_train_loss &&
            val_inputs.empty()) {
            hist.reached_target = true;
            break;
        }

        if (!val_inputs.empty()) {
            double sup = validation_sup(net);
            hist.val_sup_err.push_back(sup);
            if (sup < best_val) {
                best_val = sup;
                best = net;
                hist.best_epoch = epoch;
            }
            hist.best_val_so_far.push_back(best_val);
            if (cfg.target_eps > 0.0 && best_val <= cfg.target_eps) {
                hist.reached_target = true;
                break;
            }
        }
    }

    result.network = val_inputs.empty() ? net : best;
    return result;
}

// Global bound: product of per-layer spectral norms (ReLU is 1-Lipschitz).
inline double lipschitz_upper(const MlpNetwork& net) {
    const auto dims = net.layer_dims();
    double prod = 1.0;
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
            W(net.weights_[l].data(), dims[l + 1], dims[l]);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(W);
        prod *= svd.singularValues()(0);
    }
    return prod;
}

// Max pairwise difference quotient over the sample set.
inline double lipschitz_empirical(const MlpNetwork& net,
                                  const std::vector<std::vector<double>>& samples) {
    if (samples.size() < 2)
        throw std::invalid_argument("lipschitz_empirical: need at least 2 samples");
    std::vector<double> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) out[i] = net.forward(samples[i]);
    double best = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        for (std::size_t j = i + 1; j < samples.size(); ++j) {
            double dist2 = 0.0;
            for (std::size_t k = 0; k < samples[i].size(); ++k) {
                double d = samples[i][k] - samples[j][k];
                dist2 += d * d;
            }
            if (dist2 > 0.0)
                best = std::max(best, std::abs(out[i] - out[j]) / std::sqrt(dist2));
        }
    }
    return best;
}

}  // namespace hps
