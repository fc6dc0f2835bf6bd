#pragma once

// Signal generators for the experiments: the four parameter functions
// alpha_1..alpha_4 on [0,1] with their declared singular sets, exponential
// sweep signals e^{-alpha t}, the five-harmonic multiscale signals, the three
// scenario families, and seeded input-noise perturbation. All generators are
// pure functions of (parameters, seed).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hpsplinet/rng.hpp"

namespace hps {

enum class AlphaFnId { a1, a2, a3, a4 };

inline std::string to_string(AlphaFnId id) {
    switch (id) {
        case AlphaFnId::a1: return "a1";
        case AlphaFnId::a2: return "a2";
        case AlphaFnId::a3: return "a3";
        default: return "a4";
    }
}

inline AlphaFnId parse_alpha_fn(const std::string& s) {
    if (s == "a1") return AlphaFnId::a1;
    if (s == "a2") return AlphaFnId::a2;
    if (s == "a3") return AlphaFnId::a3;
    if (s == "a4") return AlphaFnId::a4;
    throw std::invalid_argument("unknown alpha function: " + s);
}

struct AlphaFunction {
    AlphaFnId id = AlphaFnId::a1;

    static AlphaFunction from_id(AlphaFnId id) { return AlphaFunction{id}; }

    double eval(double x) const {
        if (!(x >= 0.0) || !(x <= 1.0))
            throw std::domain_error("AlphaFunction: x outside [0,1]");
        switch (id) {
            case AlphaFnId::a1:
                return 1.0 / (1.0 + x);
            case AlphaFnId::a2:
                return 1.0 + 0.5 * std::sin(2.0 * M_PI * x);
            case AlphaFnId::a3:
                return x * x + std::pow(std::abs(x - 0.37), 1.5);
            case AlphaFnId::a4:
            default:
                if (x <= 1.0 / 3.0) return x * x;
                if (x <= 0.6) return 11.0 / 3.0 * x - 10.0 / 9.0;
                if (x <= 0.65) return 49.0 / 45.0;
                return 3.0 * x * x;
        }
    }

    // Points of reduced regularity inside (0,1).
    std::vector<double> singular_set() const {
        switch (id) {
            case AlphaFnId::a3: return {0.37};
            case AlphaFnId::a4: return {1.0 / 3.0, 0.6, 0.65};
            default: return {};
        }
    }
};

inline double eval_alpha(const AlphaFunction& fn, double x) { return fn.eval(x); }

struct LabeledSignal {
    std::vector<double> samples;
    double alpha_target = 0.0;
    std::string provenance;
};

inline std::vector<double> uniform_grid(int d, double a = 0.0, double b = 1.0) {
    if (d < 2) throw std::invalid_argument("uniform_grid: need at least 2 points");
    std::vector<double> t(d);
    for (int i = 0; i < d; ++i) t[i] = a + (b - a) * static_cast<double>(i) / (d - 1);
    return t;
}

// s(t) = e^{-alpha t} sampled on the given grid.
inline LabeledSignal exponential_signal(double alpha, const std::vector<double>& t_grid,
                                        std::string provenance = {}) {
    LabeledSignal s;
    s.alpha_target = alpha;
    s.provenance = std::move(provenance);
    s.samples.reserve(t_grid.size());
    for (double t : t_grid) s.samples.push_back(std::exp(-alpha * t));
    return s;
}

enum class SweepSampling { Random, Grid };

// Sweep dataset for a parameter function: inputs e^{-fn(x_i) t}, targets
// fn(x_i). Random x draws by default so mini-batches see shuffled data.
inline std::vector<LabeledSignal> make_sweep_dataset(const AlphaFunction& fn, int n_train,
                                                     int d, std::uint64_t seed,
                                                     SweepSampling sampling = SweepSampling::Random) {
    if (n_train < 1) throw std::invalid_argument("make_sweep_dataset: n_train must be >= 1");
    const auto t = uniform_grid(d);
    Rng rng(derive_seed(seed, "sweep-x"));
    std::vector<LabeledSignal> out;
    out.reserve(n_train);
    for (int i = 0; i < n_train; ++i) {
        double x = sampling == SweepSampling::Random
                       ? rng.uniform01()
                       : (n_train == 1 ? 0.5 : static_cast<double>(i) / (n_train - 1));
        std::ostringstream prov;
        prov << "sweep:" << to_string(fn.id) << ":seed=" << seed << ":i=" << i;
        auto s = exponential_signal(fn.eval(x), t, prov.str());
        out.push_back(std::move(s));
    }
    return out;
}

// Sweep signals at explicit x locations (validation grids, singular-point probes).
inline std::vector<LabeledSignal> make_sweep_at(const AlphaFunction& fn,
                                                const std::vector<double>& xs, int d) {
    const auto t = uniform_grid(d);
    std::vector<LabeledSignal> out;
    out.reserve(xs.size());
    for (double x : xs)
        out.push_back(exponential_signal(fn.eval(x), t, "sweep-at:" + to_string(fn.id)));
    return out;
}

// s(t) = A sum_{k=1}^{5} 2^{-k alpha} cos(2^k pi t) on a uniform grid.
inline LabeledSignal make_multiscale(double amplitude, double alpha, int d = 256) {
    if (!(amplitude > 0.0)) throw std::invalid_argument("make_multiscale: amplitude must be > 0");
    const auto t = uniform_grid(d);
    LabeledSignal s;
    s.alpha_target = alpha;
    s.provenance = "multiscale";
    s.samples.assign(t.size(), 0.0);
    for (std::size_t i = 0; i < t.size(); ++i) {
        double v = 0.0;
        for (int k = 1; k <= 5; ++k)
            v += std::pow(2.0, -k * alpha) * std::cos(std::pow(2.0, k) * M_PI * t[i]);
        s.samples[i] = amplitude * v;
    }
    return s;
}

enum class ScenarioSignal { s1, s2, s3 };

inline ScenarioSignal parse_scenario_signal(const std::string& s) {
    if (s == "s1") return ScenarioSignal::s1;
    if (s == "s2") return ScenarioSignal::s2;
    if (s == "s3") return ScenarioSignal::s3;
    throw std::invalid_argument("unknown scenario signal kind: " + s);
}

// s1 = A e^{alpha t}; s2 = A t e^{-alpha t};
// s3 = (t/2) e^{-2 alpha} + e^{-(alpha/2) t}  (first term linear in t, no amplitude).
inline LabeledSignal make_scenario_signal(ScenarioSignal kind, double amplitude, double alpha,
                                          const std::vector<double>& t_grid) {
    LabeledSignal s;
    s.alpha_target = alpha;
    s.samples.reserve(t_grid.size());
    switch (kind) {
        case ScenarioSignal::s1:
            s.provenance = "scenario:s1";
            for (double t : t_grid) s.samples.push_back(amplitude * std::exp(alpha * t));
            break;
        case ScenarioSignal::s2:
            s.provenance = "scenario:s2";
            for (double t : t_grid) s.samples.push_back(amplitude * t * std::exp(-alpha * t));
            break;
        case ScenarioSignal::s3:
        default:
            s.provenance = "scenario:s3";
            for (double t : t_grid)
                s.samples.push_back(0.5 * t * std::exp(-2.0 * alpha) +
                                    std::exp(-0.5 * alpha * t));
            break;
    }
    return s;
}

// Adds i.i.d. N(0, sigma^2) noise to every sample of a seeded
// floor(fraction*n)-subset of the signals; targets untouched.
inline std::vector<LabeledSignal> add_noise(std::vector<LabeledSignal> signals, double fraction,
                                            double sigma, std::uint64_t seed) {
    if (!(fraction >= 0.0 && fraction <= 1.0))
        throw std::invalid_argument("add_noise: fraction must be in [0,1]");
    if (!(sigma >= 0.0)) throw std::invalid_argument("add_noise: sigma must be >= 0");
    // +1e-9 so e.g. 0.3*10 lands on 3 despite 0.3 not being representable
    const std::size_t k =
        static_cast<std::size_t>(fraction * static_cast<double>(signals.size()) + 1e-9);
    Rng rng(derive_seed(seed, "noise"));
    const auto chosen = rng.choose(signals.size(), k);
    for (std::size_t idx : chosen)
        for (double& v : signals[idx].samples) v += sigma * rng.normal();
    return signals;
}

}  // namespace hps
