#pragma once

// Experiment drivers: the architecture sweep (width grows until the sup-norm
// validation target is met), the three train/test scenarios against the
// grid-search baseline, the generalization-gap sweep, and CSV/SVG persistence
// for their records. One base seed deterministically derives every per-cell
// stream, so full runs are reproducible byte-for-byte at any thread count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hpsplinet/csv.hpp"
#include "hpsplinet/datasets.hpp"
#include "hpsplinet/hpfit.hpp"
#include "hpsplinet/net.hpp"
#include "hpsplinet/oracle.hpp"
#include "hpsplinet/stability.hpp"
#include "hpsplinet/svg.hpp"
#include "hpsplinet/wavelets.hpp"

namespace hps {

// Runs jobs 0..count-1 over up to `threads` workers; each job writes only its
// own slot, so results are identical to the serial order.
inline void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& job) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) break;
            job(i);
        }
    };
    std::vector<std::thread> pool;
    const int n_threads = std::min<int>(threads, static_cast<int>(count));
    pool.reserve(n_threads);
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// Architecture sweep (Table-1 protocol)
// ---------------------------------------------------------------------------

struct SweepRow {
    double eps = 0.0;
    int depth = 0;
    int width = 0;
    long c_tot = 0;
    double max_alpha_err = 0.0;
    double mse_alpha_err = 0.0;
    double max_rec_pred = 0.0;
    double mse_rec_pred = 0.0;
    double max_rec_nom = 0.0;
    double mse_rec_nom = 0.0;
    double mse_propagation = 0.0;
    bool met = false;
};

struct Table1Config {
    int input_dim = 32;
    int n_train = 1000;
    int n_val = 200;
    int n_test = 100;
    int width_cap = 8;
    double lambda = 0.1;
    double knot_step = 0.1;
    TrainConfig train{1e-3, 32, 20000};
    std::uint64_t seed = 0;
    int threads = 1;
    // test hook: when set, rows use this predictor instead of training
    AlphaPredictor predictor_override;
};

namespace detail {

struct SweepData {
    std::vector<std::vector<double>> train_x;
    std::vector<double> train_y;
    std::vector<std::vector<double>> val_x;
    std::vector<double> val_y;
    std::vector<LabeledSignal> test_signals;
    std::vector<double> t_grid;
};

inline SweepData make_sweep_data(const AlphaFunction& fn, const Table1Config& cfg) {
    SweepData data;
    data.t_grid = uniform_grid(cfg.input_dim);
    auto train_set = make_sweep_dataset(fn, cfg.n_train, cfg.input_dim,
                                        derive_seed(cfg.seed, "table1-train", static_cast<int>(fn.id)));
    for (auto& s : train_set) {
        data.train_x.push_back(std::move(s.samples));
        data.train_y.push_back(s.alpha_target);
    }
    // interleaved validation grid, never coinciding with random training draws
    std::vector<double> val_xs(cfg.n_val);
    for (int i = 0; i < cfg.n_val; ++i) val_xs[i] = (i + 0.5) / cfg.n_val;
    for (const auto& s : make_sweep_at(fn, val_xs, cfg.input_dim)) {
        data.val_x.push_back(s.samples);
        data.val_y.push_back(s.alpha_target);
    }
    Rng test_rng(derive_seed(cfg.seed, "table1-test", static_cast<int>(fn.id)));
    std::vector<double> test_xs(cfg.n_test);
    for (auto& x : test_xs) x = test_rng.uniform01();
    data.test_signals = make_sweep_at(fn, test_xs, cfg.input_dim);
    return data;
}

}  // namespace detail

// Reconstruction metrics of a predictor over the held-out signals: max of
// per-instance sup errors, mean of per-instance MSEs, and the propagation MSE
// between predicted-alpha and nominal-alpha reconstructions.
inline void sweep_row_metrics(SweepRow& row, const AlphaPredictor& predict,
                              const detail::SweepData& data, const Table1Config& cfg) {
    const UniformKnots kn = UniformKnots::covering(data.t_grid.front(), data.t_grid.back(),
                                                   cfg.knot_step);
    double mse_pred_sum = 0.0, mse_nom_sum = 0.0, mse_prop_sum = 0.0;
    for (const auto& sig : data.test_signals) {
        double alpha_hat = predict(sig);
        HpSpline sp_pred = fit(data.t_grid, sig.samples, alpha_hat, cfg.lambda, kn);
        HpSpline sp_nom = fit(data.t_grid, sig.samples, sig.alpha_target, cfg.lambda, kn);
        auto rec_pred = evaluate(sp_pred, data.t_grid);
        auto rec_nom = evaluate(sp_nom, data.t_grid);
        double se_pred = 0.0, se_nom = 0.0, se_prop = 0.0;
        for (std::size_t i = 0; i < sig.samples.size(); ++i) {
            double ep = sig.samples[i] - rec_pred[i];
            double en = sig.samples[i] - rec_nom[i];
            double eq = rec_pred[i] - rec_nom[i];
            se_pred += ep * ep;
            se_nom += en * en;
            se_prop += eq * eq;
            row.max_rec_pred = std::max(row.max_rec_pred, std::abs(ep));
            row.max_rec_nom = std::max(row.max_rec_nom, std::abs(en));
        }
        const double d = static_cast<double>(sig.samples.size());
        mse_pred_sum += se_pred / d;
        mse_nom_sum += se_nom / d;
        mse_prop_sum += se_prop / d;
    }
    const double nt = static_cast<double>(data.test_signals.size());
    row.mse_rec_pred = mse_pred_sum / nt;
    row.mse_rec_nom = mse_nom_sum / nt;
    row.mse_propagation = mse_prop_sum / nt;
}

inline std::vector<SweepRow> run_table1(const AlphaFunction& fn, const std::vector<double>& eps_list,
                                        const std::vector<int>& depth_list, const Table1Config& cfg) {
    if (eps_list.empty() || depth_list.empty())
        throw std::invalid_argument("run_table1: empty eps or depth list");
    const detail::SweepData data = detail::make_sweep_data(fn, cfg);

    struct Cell { double eps; int depth; };
    std::vector<Cell> cells;
    for (double eps : eps_list)
        for (int depth : depth_list) cells.push_back({eps, depth});

    std::vector<SweepRow> rows(cells.size());
    parallel_for(cells.size(), cfg.threads, [&](std::size_t ci) {
        const auto [eps, depth] = cells[ci];
        SweepRow row;
        row.eps = eps;
        row.depth = depth;
        if (cfg.predictor_override) {
            row.width = 1;
            row.met = true;
            row.c_tot = complexity(MlpSpec{cfg.input_dim, depth, row.width});
            double mx = 0.0, ms = 0.0;
            for (std::size_t i = 0; i < data.val_x.size(); ++i) {
                LabeledSignal sig{data.val_x[i], data.val_y[i], {}};
                double e = cfg.predictor_override(sig) - data.val_y[i];
                mx = std::max(mx, std::abs(e));
                ms += e * e;
            }
            row.max_alpha_err = mx;
            row.mse_alpha_err = ms / static_cast<double>(data.val_x.size());
            sweep_row_metrics(row, cfg.predictor_override, data, cfg);
            rows[ci] = row;
            return;
        }
        for (int width = 1; width <= cfg.width_cap; ++width) {
            MlpSpec spec{cfg.input_dim, depth, width};
            TrainConfig tc = cfg.train;
            tc.target_eps = eps;
            MlpNetwork net0 = MlpNetwork::init(
                spec, derive_seed(cfg.seed, "table1-init", static_cast<int>(fn.id),
                                  double_bits(eps), depth, width));
            TrainResult res = train(net0, data.train_x, data.train_y, tc, data.val_x, data.val_y);
            row.width = width;
            row.c_tot = complexity(spec);
            row.met = res.history.reached_target;
            double mx = 0.0, ms = 0.0;
            for (std::size_t i = 0; i < data.val_x.size(); ++i) {
                double e = res.network.forward(data.val_x[i]) - data.val_y[i];
                mx = std::max(mx, std::abs(e));
                ms += e * e;
            }
            row.max_alpha_err = mx;
            row.mse_alpha_err = ms / static_cast<double>(data.val_x.size());
            if (row.met || width == cfg.width_cap) {
                const MlpNetwork& net = res.network;
                sweep_row_metrics(row, predictor_from_net(net), data, cfg);
                break;
            }
        }
        rows[ci] = row;
    });
    return rows;
}

inline std::vector<std::string> sweep_header() {
    return {"eps", "L", "W", "C_tot", "max_alpha_err", "mse_alpha_err", "max_rec_pred",
            "mse_rec_pred", "max_rec_nom", "mse_rec_nom", "mse_propagation", "met"};
}

inline std::vector<std::string> to_csv_row(const SweepRow& r) {
    return {format_double(r.eps), std::to_string(r.depth), std::to_string(r.width),
            std::to_string(r.c_tot), format_double(r.max_alpha_err), format_double(r.mse_alpha_err),
            format_double(r.max_rec_pred), format_double(r.mse_rec_pred),
            format_double(r.max_rec_nom), format_double(r.mse_rec_nom),
            format_double(r.mse_propagation), r.met ? "1" : "0"};
}

inline SweepRow sweep_row_from_csv(const std::vector<std::string>& f) {
    if (f.size() != 12) throw std::invalid_argument("sweep row: wrong field count");
    SweepRow r;
    r.eps = parse_double(f[0]);
    r.depth = std::stoi(f[1]);
    r.width = std::stoi(f[2]);
    r.c_tot = std::stol(f[3]);
    r.max_alpha_err = parse_double(f[4]);
    r.mse_alpha_err = parse_double(f[5]);
    r.max_rec_pred = parse_double(f[6]);
    r.mse_rec_pred = parse_double(f[7]);
    r.max_rec_nom = parse_double(f[8]);
    r.mse_rec_nom = parse_double(f[9]);
    r.mse_propagation = parse_double(f[10]);
    r.met = f[11] == "1";
    return r;
}

// ---------------------------------------------------------------------------
// GenGap sweep
// ---------------------------------------------------------------------------

struct GenGapSweepConfig {
    std::vector<int> n_list{32, 64, 128, 256, 512};
    std::vector<double> amplitudes{0.5, 1, 2, 4.5, 5, 6, 8, 10.5};
    std::vector<int> levels{0};  // 0 = no projection
    int n_seeds = 10;
    GenGapConfig base;  // n/amplitude/level/seed overwritten per cell
    int threads = 1;
    std::uint64_t seed = 0;
};

inline std::vector<GenGapRecord> run_gengap_sweep(const GenGapSweepConfig& cfg) {
    std::vector<GenGapConfig> cells;
    for (double amp : cfg.amplitudes)
        for (int level : cfg.levels)
            for (int n : cfg.n_list)
                for (int s = 0; s < cfg.n_seeds; ++s) {
                    GenGapConfig c = cfg.base;
                    c.n = n;
                    c.amplitude = amp;
                    c.level = level;
                    c.seed = derive_seed(cfg.seed, "gengap-cell", s);
                    cells.push_back(c);
                }
    std::vector<GenGapRecord> records(cells.size());
    parallel_for(cells.size(), cfg.threads,
                 [&](std::size_t i) { records[i] = gengap_experiment(cells[i]); });
    return records;
}

inline std::vector<std::string> gengap_header() {
    return {"n", "A", "J", "seed", "loss_train", "loss_test", "gengap", "diameter", "bound"};
}

inline std::vector<std::string> to_csv_row(const GenGapRecord& r) {
    return {std::to_string(r.n), format_double(r.amplitude), std::to_string(r.level),
            std::to_string(r.seed), format_double(r.loss_train), format_double(r.loss_test),
            format_double(r.gengap), format_double(r.diameter), format_double(r.bound)};
}

inline GenGapRecord gengap_from_csv(const std::vector<std::string>& f) {
    if (f.size() != 9) throw std::invalid_argument("gengap row: wrong field count");
    GenGapRecord r;
    r.n = std::stoi(f[0]);
    r.amplitude = parse_double(f[1]);
    r.level = std::stoi(f[2]);
    r.seed = std::stoull(f[3]);
    r.loss_train = parse_double(f[4]);
    r.loss_test = parse_double(f[5]);
    r.gengap = parse_double(f[6]);
    r.diameter = parse_double(f[7]);
    r.bound = parse_double(f[8]);
    return r;
}

// Mean GenGap and mean bound per n for one (amplitude, level) slice.
struct GenGapCurve {
    std::vector<double> n;
    std::vector<double> mean_gap;
    std::vector<double> mean_bound;
};

inline GenGapCurve gengap_curve(const std::vector<GenGapRecord>& records, double amplitude,
                                int level) {
    GenGapCurve curve;
    std::vector<int> ns;
    for (const auto& r : records)
        if (r.amplitude == amplitude && r.level == level &&
            std::find(ns.begin(), ns.end(), r.n) == ns.end())
            ns.push_back(r.n);
    std::sort(ns.begin(), ns.end());
    for (int n : ns) {
        double gap = 0.0, bound = 0.0;
        int count = 0;
        for (const auto& r : records)
            if (r.amplitude == amplitude && r.level == level && r.n == n) {
                gap += r.gengap;
                bound += r.bound;
                ++count;
            }
        curve.n.push_back(n);
        curve.mean_gap.push_back(gap / count);
        curve.mean_bound.push_back(bound / count);
    }
    return curve;
}

// Spearman rank correlation (distinct values assumed; ties get arbitrary order).
inline double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("spearman_rho: need >= 2 paired values");
    auto ranks = [](const std::vector<double>& v) {
        std::vector<std::size_t> idx(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < idx.size(); ++i) r[idx[i]] = static_cast<double>(i);
        return r;
    };
    auto rx = ranks(x), ry = ranks(y);
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) { mx += rx[i]; my += ry[i]; }
    mx /= rx.size(); my /= ry.size();
    double num = 0.0, dx = 0.0, dy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        num += (rx[i] - mx) * (ry[i] - my);
        dx += (rx[i] - mx) * (rx[i] - mx);
        dy += (ry[i] - my) * (ry[i] - my);
    }
    return num / std::sqrt(dx * dy);
}

// ---------------------------------------------------------------------------
// Scenario comparison
// ---------------------------------------------------------------------------

struct ScenarioConfig {
    int scenario = 1;
    int n_train = 200;    // s1/s2 signals with known alpha
    int n_enrich = 100;   // scenario 3: oracle-labeled s3 signals
    int n_test = 50;
    int input_dim = 32;
    double amplitude = 1.0;
    double alpha_min = 0.5;
    double alpha_max = 5.0;
    double noise_sigma = 1e-2;
    double lambda = 0.1;
    double knot_step = 0.1;
    MlpSpec spec{32, 3, 8};
    TrainConfig train{1e-3, 32, 2000};
    AlphaSearchConfig oracle;
    std::uint64_t seed = 0;

    void validate() const {
        if (scenario < 1 || scenario > 3)
            throw std::invalid_argument("ScenarioConfig: scenario must be 1, 2 or 3");
        if (n_train < 2 || n_test < 1)
            throw std::invalid_argument("ScenarioConfig: need n_train >= 2, n_test >= 1");
    }
};

struct ScenarioInstance {
    int index = 0;
    double alpha_true = 0.0;
    double alpha_pred = 0.0;
    double alpha_oracle = 0.0;
    double mse_pred = 0.0;
    double re_pred = 0.0;
    double mse_oracle = 0.0;
    double re_oracle = 0.0;
};

struct ScenarioReport {
    int scenario = 0;
    std::uint64_t seed = 0;
    std::vector<ScenarioInstance> instances;
    double mean_mse_pred = 0.0;
    double mean_re_pred = 0.0;
    double mean_mse_oracle = 0.0;
    double mean_re_oracle = 0.0;
    int skipped_enrichment = 0;
};

inline ScenarioReport run_scenarios(const ScenarioConfig& cfg) {
    cfg.validate();
    const auto t = uniform_grid(cfg.input_dim);
    AlphaSearchConfig oracle_cfg = cfg.oracle;
    oracle_cfg.lambda = cfg.lambda;
    oracle_cfg.knot_step = cfg.knot_step;

    // training pool: alternating s1/s2 with known alpha
    Rng train_rng(derive_seed(cfg.seed, "scenario-train", cfg.scenario));
    std::vector<LabeledSignal> train_set;
    for (int i = 0; i < cfg.n_train; ++i) {
        double alpha = train_rng.uniform(cfg.alpha_min, cfg.alpha_max);
        ScenarioSignal kind = (i % 2 == 0) ? ScenarioSignal::s1 : ScenarioSignal::s2;
        train_set.push_back(make_scenario_signal(kind, cfg.amplitude, alpha, t));
    }

    ScenarioReport rep;
    rep.scenario = cfg.scenario;
    rep.seed = cfg.seed;

    // scenario 3: enrich with oracle-labeled s3 signals
    if (cfg.scenario == 3) {
        Rng enrich_rng(derive_seed(cfg.seed, "scenario-enrich"));
        for (int i = 0; i < cfg.n_enrich; ++i) {
            double alpha = enrich_rng.uniform(cfg.alpha_min, cfg.alpha_max);
            LabeledSignal sig = make_scenario_signal(ScenarioSignal::s3, cfg.amplitude, alpha, t);
            try {
                OracleResult est = optimal_alpha(t, sig.samples, oracle_cfg);
                sig.alpha_target = est.alpha;
                sig.provenance += ":oracle";
                train_set.push_back(std::move(sig));
            } catch (const NumericalError&) {
                ++rep.skipped_enrichment;
            }
        }
    }

    std::vector<std::vector<double>> train_x;
    std::vector<double> train_y;
    for (const auto& s : train_set) {
        train_x.push_back(s.samples);
        train_y.push_back(s.alpha_target);
    }
    MlpSpec spec = cfg.spec;
    spec.input_dim = cfg.input_dim;
    MlpNetwork net0 = MlpNetwork::init(spec, derive_seed(cfg.seed, "scenario-init", cfg.scenario));
    MlpNetwork net = train(net0, train_x, train_y, cfg.train).network;

    // test set: scenario 1 perturbs training functions; 2 and 3 share the
    // same fresh s3 draws (matched seeds -> matched test instances)
    std::vector<LabeledSignal> test_set;
    if (cfg.scenario == 1) {
        Rng pick_rng(derive_seed(cfg.seed, "scenario-test-pick"));
        Rng noise_rng(derive_seed(cfg.seed, "scenario-test-noise"));
        for (int i = 0; i < cfg.n_test; ++i) {
            LabeledSignal sig = train_set[pick_rng.below(static_cast<std::uint64_t>(cfg.n_train))];
            for (double& v : sig.samples) v += cfg.noise_sigma * noise_rng.normal();
            test_set.push_back(std::move(sig));
        }
    } else {
        Rng s3_rng(derive_seed(cfg.seed, "scenario-test-s3"));
        for (int i = 0; i < cfg.n_test; ++i) {
            double alpha = s3_rng.uniform(cfg.alpha_min, cfg.alpha_max);
            test_set.push_back(make_scenario_signal(ScenarioSignal::s3, cfg.amplitude, alpha, t));
        }
    }

    const UniformKnots kn = UniformKnots::covering(t.front(), t.back(), cfg.knot_step);
    for (int i = 0; i < static_cast<int>(test_set.size()); ++i) {
        const auto& sig = test_set[i];
        ScenarioInstance inst;
        inst.index = i;
        inst.alpha_true = sig.alpha_target;
        inst.alpha_pred = net.forward(sig.samples);
        inst.alpha_oracle = optimal_alpha(t, sig.samples, oracle_cfg).alpha;
        HpSpline sp_pred = fit(t, sig.samples, inst.alpha_pred, cfg.lambda, kn);
        HpSpline sp_orac = fit(t, sig.samples, inst.alpha_oracle, cfg.lambda, kn);
        auto m_pred = reconstruction_metrics(sig.samples, evaluate(sp_pred, t));
        auto m_orac = reconstruction_metrics(sig.samples, evaluate(sp_orac, t));
        inst.mse_pred = m_pred.mse;
        inst.re_pred = m_pred.rel;
        inst.mse_oracle = m_orac.mse;
        inst.re_oracle = m_orac.rel;
        rep.instances.push_back(inst);
        rep.mean_mse_pred += inst.mse_pred;
        rep.mean_re_pred += inst.re_pred;
        rep.mean_mse_oracle += inst.mse_oracle;
        rep.mean_re_oracle += inst.re_oracle;
    }
    const double nt = static_cast<double>(rep.instances.size());
    rep.mean_mse_pred /= nt;
    rep.mean_re_pred /= nt;
    rep.mean_mse_oracle /= nt;
    rep.mean_re_oracle /= nt;
    return rep;
}

inline std::vector<std::string> scenario_header() {
    return {"scenario", "seed", "instance", "alpha_true", "alpha_pred", "alpha_oracle",
            "mse_pred", "re_pred", "mse_oracle", "re_oracle"};
}

inline std::vector<std::vector<std::string>> to_csv_rows(const ScenarioReport& rep) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& inst : rep.instances)
        rows.push_back({std::to_string(rep.scenario), std::to_string(rep.seed),
                        std::to_string(inst.index), format_double(inst.alpha_true),
                        format_double(inst.alpha_pred), format_double(inst.alpha_oracle),
                        format_double(inst.mse_pred), format_double(inst.re_pred),
                        format_double(inst.mse_oracle), format_double(inst.re_oracle)});
    return rows;
}

inline std::pair<int, std::uint64_t> scenario_row_key(const std::vector<std::string>& f) {
    if (f.size() != 10) throw std::invalid_argument("scenario row: wrong field count");
    return {std::stoi(f[0]), std::stoull(f[1])};
}

inline ScenarioInstance scenario_instance_from_csv(const std::vector<std::string>& f) {
    if (f.size() != 10) throw std::invalid_argument("scenario row: wrong field count");
    ScenarioInstance inst;
    inst.index = std::stoi(f[2]);
    inst.alpha_true = parse_double(f[3]);
    inst.alpha_pred = parse_double(f[4]);
    inst.alpha_oracle = parse_double(f[5]);
    inst.mse_pred = parse_double(f[6]);
    inst.re_pred = parse_double(f[7]);
    inst.mse_oracle = parse_double(f[8]);
    inst.re_oracle = parse_double(f[9]);
    return inst;
}

// ---------------------------------------------------------------------------
// Plot emission
// ---------------------------------------------------------------------------

inline void emit_gengap_plot(const std::vector<GenGapRecord>& records, double amplitude, int level,
                             const std::string& path) {
    GenGapCurve curve = gengap_curve(records, amplitude, level);
    if (curve.n.empty())
        throw std::invalid_argument("emit_gengap_plot: no records for this amplitude/level");
    std::ostringstream title;
    title << "GenGap vs n (A=" << amplitude;
    if (level > 0) title << ", J=" << level;
    title << ")";
    PlotOptions opt;
    opt.title = title.str();
    opt.x_label = "n";
    opt.y_label = "loss gap";
    opt.log_y = true;
    write_plot(path,
               {PlotSeries{"mean GenGap", curve.n, curve.mean_gap},
                PlotSeries{"D/sqrt(n)", curve.n, curve.mean_bound, true, false, true}},
               opt);
}

inline void emit_scenario_plot(const ScenarioReport& rep, const std::string& path) {
    if (rep.instances.empty()) throw std::invalid_argument("emit_scenario_plot: empty report");
    std::vector<double> idx, mse_p, mse_o, re_p, re_o;
    for (const auto& inst : rep.instances) {
        idx.push_back(inst.index);
        mse_p.push_back(inst.mse_pred);
        mse_o.push_back(inst.mse_oracle);
        re_p.push_back(inst.re_pred);
        re_o.push_back(inst.re_oracle);
    }
    std::vector<double> mean_x{idx.front(), idx.back()};
    PlotOptions opt;
    opt.title = "Scenario " + std::to_string(rep.scenario) + ": predicted vs oracle alpha";
    opt.x_label = "test instance";
    opt.y_label = "error";
    opt.log_y = true;
    write_plot(path,
               {PlotSeries{"MSE predicted", idx, mse_p},
                PlotSeries{"MSE oracle", idx, mse_o},
                PlotSeries{"RE predicted", idx, re_p},
                PlotSeries{"RE oracle", idx, re_o},
                PlotSeries{"mean RE predicted", mean_x,
                           {rep.mean_re_pred, rep.mean_re_pred}, true, false, true},
                PlotSeries{"mean RE oracle", mean_x,
                           {rep.mean_re_oracle, rep.mean_re_oracle}, true, false, true}},
               opt);
}

}  // namespace hps
