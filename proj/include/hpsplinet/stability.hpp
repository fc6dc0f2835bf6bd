#pragma once

// Empirical stability instrumentation: generalization-gap experiments on the
// multiscale dataset (train set vs a partially noise-perturbed copy, with an
// optional wavelet projection of both), the one-sample-replacement stability
// probe, and Lipschitz bound audits for the reconstruction error and for the
// composed signal-to-coefficients map.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hpsplinet/datasets.hpp"
#include "hpsplinet/hpfit.hpp"
#include "hpsplinet/net.hpp"
#include "hpsplinet/rng.hpp"
#include "hpsplinet/wavelets.hpp"

namespace hps {

struct GenGapConfig {
    int n = 32;                     // training-set size
    double amplitude = 1.0;
    double noise_sigma = 1e-2;
    double noise_fraction = 0.3;
    int level = 0;                  // wavelet level J; 0 = no projection
    WaveletFamily family = WaveletFamily::Haar;
    int signal_len = 256;
    double alpha_min = 0.5;
    double alpha_max = 5.0;
    std::uint64_t seed = 0;
    MlpSpec spec{256, 3, 4};
    TrainConfig train{1e-3, 32, 400};
    // epoch budgets are per dataset pass, so small-n cells see few optimizer
    // steps and stay in the slow initial transient; the floor below tops the
    // epoch count up to at least this many steps for every n
    int min_steps = 800;

    void validate() const {
        if (n < 4) throw std::invalid_argument("GenGapConfig: n must be >= 4");
        if (!(amplitude > 0.0)) throw std::invalid_argument("GenGapConfig: amplitude must be > 0");
        if (!(noise_fraction >= 0.0 && noise_fraction <= 1.0))
            throw std::invalid_argument("GenGapConfig: noise fraction must be in [0,1]");
        if (level < 0) throw std::invalid_argument("GenGapConfig: level must be >= 0");
        if (level > 0)
            WaveletProjector{family, level, signal_len}.validate();
    }
};

struct GenGapRecord {
    int n = 0;
    double amplitude = 0.0;
    int level = 0;  // 0 = no projection
    std::uint64_t seed = 0;
    double loss_train = 0.0;
    double loss_test = 0.0;
    double gengap = 0.0;    // |loss_train - loss_test|
    double diameter = 0.0;  // D (or D_J when level > 0), over the training inputs
    double bound = 0.0;     // diameter / sqrt(n)
};

inline double mse_loss(const MlpNetwork& net, const std::vector<LabeledSignal>& set) {
    double s = 0.0;
    for (const auto& sig : set) {
        double e = net.forward(sig.samples) - sig.alpha_target;
        s += e * e;
    }
    return s / static_cast<double>(set.size());
}

// The alpha draws per (amplitude, seed) come from one stream read in index
// order, so datasets for growing n are nested prefixes and the realized
// diameter is monotone in n.
inline std::vector<LabeledSignal> gengap_train_set(const GenGapConfig& cfg) {
    Rng alpha_rng(derive_seed(cfg.seed, "gengap-alpha", double_bits(cfg.amplitude)));
    std::vector<LabeledSignal> train;
    train.reserve(cfg.n);
    for (int i = 0; i < cfg.n; ++i) {
        double alpha = alpha_rng.uniform(cfg.alpha_min, cfg.alpha_max);
        train.push_back(make_multiscale(cfg.amplitude, alpha, cfg.signal_len));
    }
    return train;
}

inline GenGapRecord gengap_experiment(const GenGapConfig& cfg) {
    cfg.validate();
    std::vector<LabeledSignal> train_set = gengap_train_set(cfg);
    std::vector<LabeledSignal> test_set = add_noise(
        train_set, cfg.noise_fraction, cfg.noise_sigma,
        derive_seed(cfg.seed, "gengap-noise", double_bits(cfg.amplitude), cfg.n, cfg.level));

    if (cfg.level > 0) {
        WaveletProjector proj{cfg.family, cfg.level, cfg.signal_len};
        for (auto& s : train_set) s.samples = project(proj, s.samples);
        for (auto& s : test_set) s.samples = project(proj, s.samples);
    }

    std::vector<std::vector<double>> inputs;
    std::vector<double> targets;
    for (const auto& s : train_set) {
        inputs.push_back(s.samples);
        targets.push_back(s.alpha_target);
    }

    MlpSpec spec = cfg.spec;
    spec.input_dim = cfg.signal_len;
    MlpNetwork net0 = MlpNetwork::init(
        spec, derive_seed(cfg.seed, "gengap-init", double_bits(cfg.amplitude), cfg.n, cfg.level));
    TrainConfig tc = cfg.train;
    if (cfg.min_steps > 0) {
        int steps_per_epoch = (cfg.n + tc.batch_size - 1) / tc.batch_size;
        tc.max_epochs = std::max(tc.max_epochs,
                                 (cfg.min_steps + steps_per_epoch - 1) / steps_per_epoch);
    }
    TrainResult tr = train(net0, inputs, targets, tc);

    GenGapRecord rec;
    rec.n = cfg.n;
    rec.amplitude = cfg.amplitude;
    rec.level = cfg.level;
    rec.seed = cfg.seed;
    rec.loss_train = mse_loss(tr.network, train_set);
    rec.loss_test = mse_loss(tr.network, test_set);
    rec.gengap = std::abs(rec.loss_train - rec.loss_test);
    rec.diameter = diameter(inputs);
    rec.bound = rec.diameter / std::sqrt(static_cast<double>(rec.n));
    return rec;
}

struct ProbeConfig {
    MlpSpec spec{256, 3, 8};
    TrainConfig train{1e-3, 32, 300};
    std::uint64_t init_seed = 0;
};

struct ProbeResult {
    double beta = 0.0;       // max loss change over the probe set
    double l_ell = 0.0;      // local Lipschitz constant of the squared loss
    double l_f = 0.0;        // empirical network Lipschitz constant
    double diameter = 0.0;   // D over the training inputs
    double bound = 0.0;      // l_ell * l_f * diameter
};

// Trains on T and on T with sample `replace_index` swapped for `replacement`
// (same initial net and config), then reports the worst loss discrepancy
// over the probe set next to the L_ell * L_F * D stability bound.
inline ProbeResult stability_probe(const std::vector<LabeledSignal>& dataset,
                                   std::size_t replace_index, const LabeledSignal& replacement,
                                   const ProbeConfig& cfg,
                                   const std::vector<LabeledSignal>& probe_set) {
    if (replace_index >= dataset.size())
        throw std::out_of_range("stability_probe: replace_index out of range");
    if (probe_set.empty()) throw std::invalid_argument("stability_probe: empty probe set");

    auto to_xy = [](const std::vector<LabeledSignal>& set,
                    std::vector<std::vector<double>>& X, std::vector<double>& y) {
        X.clear(); y.clear();
        for (const auto& s : set) {
            X.push_back(s.samples);
            y.push_back(s.alpha_target);
        }
    };

    std::vector<LabeledSignal> modified = dataset;
    modified[replace_index] = replacement;

    MlpSpec spec = cfg.spec;
    spec.input_dim = static_cast<int>(dataset.front().samples.size());
    MlpNetwork net0 = MlpNetwork::init(spec, cfg.init_seed);

    std::vector<std::vector<double>> X;
    std::vector<double> y;
    to_xy(dataset, X, y);
    MlpNetwork model_a = train(net0, X, y, cfg.train).network;
    double d_train = diameter(X);
    to_xy(modified, X, y);
    MlpNetwork model_b = train(net0, X, y, cfg.train).network;

    ProbeResult res;
    res.diameter = d_train;
    std::vector<std::vector<double>> probe_inputs;
    double max_dev = 0.0;
    for (const auto& z : probe_set) {
        double fa = model_a.forward(z.samples);
        double fb = model_b.forward(z.samples);
        double la = (fa - z.alpha_target) * (fa - z.alpha_target);
        double lb = (fb - z.alpha_target) * (fb - z.alpha_target);
        res.beta = std::max(res.beta, std::abs(la - lb));
        max_dev = std::max({max_dev, std::abs(fa - z.alpha_target), std::abs(fb - z.alpha_target)});
        probe_inputs.push_back(z.samples);
    }
    // squared loss is locally Lipschitz with constant 2 max|F - alpha|
    res.l_ell = 2.0 * max_dev;
    res.l_f = probe_inputs.size() >= 2
                  ? std::max(lipschitz_empirical(model_a, probe_inputs),
                             lipschitz_empirical(model_b, probe_inputs))
                  : 0.0;
    res.bound = res.l_ell * res.l_f * res.diameter;
    return res;
}

struct SplineFitConfig {
    double lambda = 0.1;
    double knot_step = 0.1;
};

// Any signal -> alpha map; a trained net or an injected exact predictor.
using AlphaPredictor = std::function<double(const LabeledSignal&)>;

inline AlphaPredictor predictor_from_net(const MlpNetwork& net) {
    return [&net](const LabeledSignal& s) { return net.forward(s.samples); };
}

struct Prop1Point {
    double x = 0.0;
    double alpha_nominal = 0.0;
    double alpha_predicted = 0.0;
    double rec_predicted_inf = 0.0;  // ||s - s_hp(F(s))||_inf
    double rec_nominal_inf = 0.0;    // ||s - s_hp(alpha(s))||_inf
    bool near_singular = false;
};

struct Prop1Report {
    std::vector<Prop1Point> points;
    double eps_hat = 0.0;            // sup |F - alpha| away from singular points
    double l_eff_hat = 0.0;          // max observed slope of alpha -> s_hp(alpha)
    double l_flat_hat = 0.0;         // min observed slope (flat-region constant)
    double c_hat = 0.0;              // slope estimate near singular points
    double singular_delta_sum = 0.0; // sum over E of |F - alpha| at singular x
    int violations = 0;
    bool inequality_holds = true;
};

// Per-signal infinity-norm reconstruction error of the HP-spline at a given alpha.
inline double hp_reconstruction_inf(const std::vector<double>& t, const std::vector<double>& s,
                                    double alpha, const SplineFitConfig& cfg) {
    UniformKnots kn = UniformKnots::covering(t.front(), t.back(), cfg.knot_step);
    HpSpline sp = fit(t, s, alpha, cfg.lambda, kn);
    std::vector<double> rec = evaluate(sp, t);
    double mx = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) mx = std::max(mx, std::abs(s[i] - rec[i]));
    return mx;
}

// Empirical audit of the reconstruction-error decomposition: for each grid
// point, the predicted-alpha error must stay below the nominal spline error
// plus L_eff * eps_hat plus the singular-point term, with all constants
// estimated from this run's own finite differences.
inline Prop1Report audit_prop1(const AlphaFunction& fn, const AlphaPredictor& predict,
                               const SplineFitConfig& spline_cfg, const std::vector<double>& x_grid,
                               int d = 32) {
    if (x_grid.empty()) throw std::invalid_argument("audit_prop1: empty grid");
    const auto t = uniform_grid(d);
    const auto singular = fn.singular_set();
    const double exclusion = 0.02;

    Prop1Report rep;
    double alpha_lo = std::numeric_limits<double>::infinity(), alpha_hi = -alpha_lo;

    for (double x : x_grid) {
        Prop1Point p;
        p.x = x;
        p.alpha_nominal = fn.eval(x);
        LabeledSignal sig = exponential_signal(p.alpha_nominal, t);
        p.alpha_predicted = predict(sig);
        p.rec_nominal_inf = hp_reconstruction_inf(t, sig.samples, p.alpha_nominal, spline_cfg);
        p.rec_predicted_inf = hp_reconstruction_inf(t, sig.samples, p.alpha_predicted, spline_cfg);
        for (double e : singular) p.near_singular |= std::abs(x - e) < exclusion;
        if (!p.near_singular)
            rep.eps_hat = std::max(rep.eps_hat, std::abs(p.alpha_predicted - p.alpha_nominal));
        alpha_lo = std::min({alpha_lo, p.alpha_nominal, p.alpha_predicted});
        alpha_hi = std::max({alpha_hi, p.alpha_nominal, p.alpha_predicted});
        rep.points.push_back(p);
    }

    // slope of alpha -> s_hp(alpha) in sup norm over the used alpha range,
    // probed on a representative mid-grid signal
    LabeledSignal probe = exponential_signal(fn.eval(x_grid[x_grid.size() / 2]), t);
    rep.l_flat_hat = std::numeric_limits<double>::infinity();
    const int n_slope = 24;
    double span = std::max(alpha_hi - alpha_lo, 1e-6);
    for (int i = 0; i < n_slope; ++i) {
        double a0 = alpha_lo + span * i / n_slope;
        double a1 = alpha_lo + span * (i + 1) / n_slope;
        double e0 = hp_reconstruction_inf(t, probe.samples, a0, spline_cfg);
        double e1 = hp_reconstruction_inf(t, probe.samples, a1, spline_cfg);
        double slope = std::abs(e1 - e0) / (a1 - a0);
        rep.l_eff_hat = std::max(rep.l_eff_hat, slope);
        rep.l_flat_hat = std::min(rep.l_flat_hat, slope);
    }

    for (double e : singular) {
        double alpha_e = fn.eval(e);
        LabeledSignal sig = exponential_signal(alpha_e, t);
        double pred = predict(sig);
        rep.singular_delta_sum += std::abs(pred - alpha_e);
        double step = std::max(1e-3, std::abs(pred - alpha_e));
        double e0 = hp_reconstruction_inf(t, sig.samples, alpha_e, spline_cfg);
        double e1 = hp_reconstruction_inf(t, sig.samples, alpha_e + step, spline_cfg);
        rep.c_hat = std::max(rep.c_hat, std::abs(e1 - e0) / step);
    }

    const double budget_tail = rep.l_eff_hat * rep.eps_hat + rep.c_hat * rep.singular_delta_sum;
    for (const auto& p : rep.points) {
        double budget = p.rec_nominal_inf + budget_tail + 1e-12;
        if (p.rec_predicted_inf > budget) ++rep.violations;
    }
    rep.inequality_holds = rep.violations == 0;
    return rep;
}

struct BoundAudit {
    double l_f_emp = 0.0;
    double l_f_upper = 0.0;
    double l_hp_emp = 0.0;     // alpha-direction slope, spline values (sup norm)
    double l_alpha_emp = 0.0;  // alpha-direction slope, coefficient vectors
    double l_s_emp = 0.0;      // data-direction slope of the coefficient map
    double diameter = 0.0;
    double composite_bound = 0.0;     // (L_s + L_alpha * L_F) * D
    double observed_composite = 0.0;  // max pairwise coefficient distance
};

// Composition audit: the coefficient map (s, F(s)) must move no farther than
// the (L_s + L_alpha L_F) D bound predicts, with every constant estimated on
// the same audit set.
inline BoundAudit audit_composition(const MlpNetwork& net,
                                    const std::vector<LabeledSignal>& audit_set,
                                    const SplineFitConfig& spline_cfg) {
    if (audit_set.size() < 2) throw std::invalid_argument("audit_composition: need >= 2 signals");
    const int d = static_cast<int>(audit_set.front().samples.size());
    const auto t = uniform_grid(d);
    const UniformKnots kn = UniformKnots::covering(t.front(), t.back(), spline_cfg.knot_step);

    auto coeffs_at = [&](const std::vector<double>& samples, double alpha) {
        return fit(t, samples, alpha, spline_cfg.lambda, kn).coeffs;
    };
    auto vec_dist = [](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
        return std::sqrt(s);
    };

    BoundAudit audit;
    std::vector<std::vector<double>> inputs;
    std::vector<double> preds;
    for (const auto& s : audit_set) {
        inputs.push_back(s.samples);
        preds.push_back(net.forward(s.samples));
    }
    audit.l_f_emp = lipschitz_empirical(net, inputs);
    audit.l_f_upper = lipschitz_upper(net);
    audit.diameter = diameter(inputs);

    double alpha_lo = *std::min_element(preds.begin(), preds.end());
    double alpha_hi = *std::max_element(preds.begin(), preds.end());
    double span = std::max(alpha_hi - alpha_lo, 1e-6);
    alpha_lo -= 0.05 * span;
    alpha_hi += 0.05 * span;

    // data-direction slopes at each predicted alpha
    for (double alpha : preds) {
        std::vector<std::vector<double>> cs;
        for (const auto& s : inputs) cs.push_back(coeffs_at(s, alpha));
        for (std::size_t i = 0; i < cs.size(); ++i)
            for (std::size_t j = i + 1; j < cs.size(); ++j) {
                double dist = euclidean_distance(inputs[i], inputs[j]);
                if (dist > 0.0)
                    audit.l_s_emp = std::max(audit.l_s_emp, vec_dist(cs[i], cs[j]) / dist);
            }
    }

    // alpha-direction slopes per signal over the predicted range
    const int n_slope = 40;
    for (const auto& s : inputs) {
        std::vector<double> prev = coeffs_at(s, alpha_lo);
        std::vector<double> prev_vals;
        {
            HpSpline sp = fit(t, s, alpha_lo, spline_cfg.lambda, kn);
            prev_vals = evaluate(sp, t);
        }
        for (int i = 1; i <= n_slope; ++i) {
            double a = alpha_lo + (alpha_hi - alpha_lo) * i / n_slope;
            double da = (alpha_hi - alpha_lo) / n_slope;
            std::vector<double> cur = coeffs_at(s, a);
            audit.l_alpha_emp = std::max(audit.l_alpha_emp, vec_dist(cur, prev) / da);
            HpSpline sp = fit(t, s, a, spline_cfg.lambda, kn);
            std::vector<double> vals = evaluate(sp, t);
            double sup = 0.0;
            for (std::size_t k = 0; k < vals.size(); ++k)
                sup = std::max(sup, std::abs(vals[k] - prev_vals[k]));
            audit.l_hp_emp = std::max(audit.l_hp_emp, sup / da);
            prev = std::move(cur);
            prev_vals = std::move(vals);
        }
    }

    for (std::size_t i = 0; i < inputs.size(); ++i) {
        std::vector<double> ci = coeffs_at(inputs[i], preds[i]);
        for (std::size_t j = i + 1; j < inputs.size(); ++j) {
            std::vector<double> cj = coeffs_at(inputs[j], preds[j]);
            audit.observed_composite = std::max(audit.observed_composite, vec_dist(ci, cj));
        }
    }
    audit.composite_bound = (audit.l_s_emp + audit.l_alpha_emp * audit.l_f_emp) * audit.diameter;
    return audit;
}

}  // namespace hps
