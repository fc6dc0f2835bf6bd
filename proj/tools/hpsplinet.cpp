// hpsplinet: HP-spline regression with network-predicted frequency parameters,
// plus the wavelet/stability experiment drivers. Subcommands: basis, fit, gen,
// train, predict, oracle, table1, scenarios, gengap, wavelet, audit.
// Exit codes: 0 success, 1 invalid input, 2 numerical failure.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hpsplinet/csv.hpp"
#include "hpsplinet/datasets.hpp"
#include "hpsplinet/harness.hpp"
#include "hpsplinet/hbasis.hpp"
#include "hpsplinet/hpfit.hpp"
#include "hpsplinet/model_io.hpp"
#include "hpsplinet/net.hpp"
#include "hpsplinet/oracle.hpp"
#include "hpsplinet/stability.hpp"
#include "hpsplinet/svg.hpp"
#include "hpsplinet/wavelets.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct GlobalOptions {
    std::uint64_t seed = 0;
    std::string out_dir;
    int threads = 0;  // 0 = all hardware threads

    int thread_count() const {
        if (threads > 0) return threads;
        unsigned hc = std::thread::hardware_concurrency();
        return hc ? static_cast<int>(hc) : 1;
    }

    std::string resolve(const std::string& path) const {
        if (out_dir.empty() || fs::path(path).is_absolute()) return path;
        fs::create_directories(out_dir);
        return (fs::path(out_dir) / path).string();
    }
};

std::pair<std::vector<double>, std::vector<double>> load_ty_csv(const std::string& path) {
    hps::CsvTable table = hps::read_csv(path);
    int tc = table.column("t"), yc = table.column("y");
    std::vector<double> t, y;
    for (const auto& row : table.rows) {
        t.push_back(hps::parse_double(row[tc]));
        y.push_back(hps::parse_double(row[yc]));
    }
    return {t, y};
}

std::vector<hps::LabeledSignal> load_signals_csv(const std::string& path) {
    hps::CsvTable table = hps::read_csv(path);
    int ac = table.column("alpha_target");
    std::vector<hps::LabeledSignal> out;
    for (const auto& row : table.rows) {
        hps::LabeledSignal s;
        s.alpha_target = hps::parse_double(row[ac]);
        for (std::size_t c = 0; c < row.size(); ++c)
            if (static_cast<int>(c) != ac) s.samples.push_back(hps::parse_double(row[c]));
        s.provenance = "csv:" + path;
        out.push_back(std::move(s));
    }
    if (out.empty()) throw std::invalid_argument("no signals in " + path);
    return out;
}

std::vector<std::string> signals_header(std::size_t d) {
    std::vector<std::string> h{"alpha_target"};
    for (std::size_t i = 0; i < d; ++i) h.push_back("s_" + std::to_string(i));
    return h;
}

void write_signals_csv(const std::string& path, const std::vector<hps::LabeledSignal>& signals) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : signals) {
        std::vector<std::string> row{hps::format_double(s.alpha_target)};
        for (double v : s.samples) row.push_back(hps::format_double(v));
        rows.push_back(std::move(row));
    }
    hps::write_csv(path, signals_header(signals.front().samples.size()), rows);
}

// ---------------------------------------------------------------------------

void cmd_basis(const GlobalOptions& g, double alpha, double knot_step, int m,
               const std::string& out, int samples) {
    hps::UniformKnots kn{0.0, knot_step, m};
    auto basis = hps::HyperbolicBasis::build(alpha, kn);
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i <= samples; ++i) {
        double x = 4.0 * knot_step * i / samples;
        rows.push_back({hps::format_double(x), hps::format_double(basis.prototype_eval(x, 0)),
                        hps::format_double(basis.prototype_eval(x, 1)),
                        hps::format_double(basis.prototype_eval(x, 2))});
    }
    hps::write_csv(g.resolve(out), {"t", "B", "dB", "d2B"}, rows);
    std::cout << "basis: alpha=" << alpha << " h=" << knot_step << " m=" << m
              << (basis.degenerate() ? " (cubic-limit branch)" : "") << " -> " << g.resolve(out)
              << "\n";
}

void cmd_fit(const GlobalOptions& g, const std::string& data, double alpha, double lambda,
             double knot_step, const std::string& out) {
    auto [t, y] = load_ty_csv(data);
    hps::UniformKnots kn = hps::UniformKnots::covering(t.front(), t.back(), knot_step);
    hps::HpSpline spline = hps::fit(t, y, alpha, lambda, kn);
    auto yhat = hps::evaluate(spline, t);

    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < t.size(); ++i)
        rows.push_back({hps::format_double(t[i]), hps::format_double(y[i]),
                        hps::format_double(yhat[i]), hps::format_double(y[i] - yhat[i])});
    std::string out_path = g.resolve(out);
    hps::write_csv(out_path, {"t", "y", "yhat", "residual"}, rows);

    json sidecar;
    sidecar["alpha"] = spline.alpha;
    sidecar["lambda"] = spline.lambda;
    sidecar["coefficients"] = spline.coeffs;
    sidecar["sse"] = spline.sse;
    sidecar["penalty_value"] = spline.penalty_value;
    fs::path jp(out_path);
    jp.replace_extension(".json");
    std::ofstream js(jp);
    js << sidecar.dump(2) << '\n';
    std::cout << "fit: sse=" << spline.sse << " penalty=" << spline.penalty_value << " -> "
              << out_path << " (+ " << jp.string() << ")\n";
}

void cmd_gen(const GlobalOptions& g, const std::string& kind, const std::string& alpha_fn,
             const std::string& signal, int n, int d, double amplitude, double alpha_min,
             double alpha_max, const std::string& out) {
    std::vector<hps::LabeledSignal> signals;
    if (kind == "sweep") {
        auto fn = hps::AlphaFunction::from_id(hps::parse_alpha_fn(alpha_fn));
        signals = hps::make_sweep_dataset(fn, n, d, g.seed);
    } else if (kind == "multiscale") {
        hps::Rng rng(hps::derive_seed(g.seed, "gen-multiscale"));
        for (int i = 0; i < n; ++i)
            signals.push_back(
                hps::make_multiscale(amplitude, rng.uniform(alpha_min, alpha_max), d));
    } else if (kind == "scenario") {
        hps::Rng rng(hps::derive_seed(g.seed, "gen-scenario"));
        const auto t = hps::uniform_grid(d);
        auto sig_kind = hps::parse_scenario_signal(signal);
        for (int i = 0; i < n; ++i)
            signals.push_back(hps::make_scenario_signal(sig_kind, amplitude,
                                                        rng.uniform(alpha_min, alpha_max), t));
    } else {
        throw std::invalid_argument("gen: unknown kind '" + kind + "'");
    }
    write_signals_csv(g.resolve(out), signals);
    std::cout << "gen: " << signals.size() << " signals of length "
              << signals.front().samples.size() << " -> " << g.resolve(out) << "\n";
}

void cmd_train(const GlobalOptions& g, const std::string& alpha_fn, int depth, int width,
               double eps, int n_train, int epochs, double lr, int batch,
               const std::string& out) {
    auto fn = hps::AlphaFunction::from_id(hps::parse_alpha_fn(alpha_fn));
    const int d = 32;
    auto train_set = hps::make_sweep_dataset(fn, n_train, d, hps::derive_seed(g.seed, "train"));
    std::vector<std::vector<double>> X, Xv;
    std::vector<double> y, yv;
    for (auto& s : train_set) {
        y.push_back(s.alpha_target);
        X.push_back(std::move(s.samples));
    }
    std::vector<double> val_xs(200);
    for (int i = 0; i < 200; ++i) val_xs[i] = (i + 0.5) / 200.0;
    for (const auto& s : hps::make_sweep_at(fn, val_xs, d)) {
        Xv.push_back(s.samples);
        yv.push_back(s.alpha_target);
    }

    hps::MlpSpec spec{d, depth, width};
    hps::TrainConfig cfg;
    cfg.learning_rate = lr;
    cfg.batch_size = batch;
    cfg.max_epochs = epochs;
    cfg.target_eps = eps;
    hps::MlpNetwork net0 = hps::MlpNetwork::init(spec, hps::derive_seed(g.seed, "train-init"));
    hps::TrainResult res = hps::train(net0, X, y, cfg, Xv, yv);

    hps::save_model(res.network, g.resolve(out));
    double sup = res.history.best_val_so_far.empty() ? 0.0 : res.history.best_val_so_far.back();
    std::cout << "train: " << alpha_fn << " L=" << depth << " W=" << width
              << " C_tot=" << hps::complexity(spec) << " epochs=" << res.history.train_loss.size()
              << " val_sup_err=" << sup << (res.history.reached_target ? " (target met)" : "")
              << " -> " << g.resolve(out) << "\n";
}

void cmd_predict(const GlobalOptions& g, const std::string& model, const std::string& data,
                 const std::string& out) {
    hps::MlpNetwork net = hps::load_model(model);
    auto signals = load_signals_csv(data);
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : signals)
        rows.push_back({hps::format_double(s.alpha_target),
                        hps::format_double(net.forward(s.samples))});
    hps::write_csv(g.resolve(out), {"alpha_target", "alpha_pred"}, rows);
    std::cout << "predict: " << signals.size() << " signals -> " << g.resolve(out) << "\n";
}

void cmd_oracle(const GlobalOptions& g, const std::string& data, double lambda, double knot_step,
                const std::string& out) {
    auto [t, y] = load_ty_csv(data);
    hps::AlphaSearchConfig cfg;
    cfg.lambda = lambda;
    cfg.knot_step = knot_step;
    cfg.threads = g.thread_count();
    hps::OracleResult res = hps::optimal_alpha(t, y, cfg);
    json j;
    j["alpha"] = res.alpha;
    j["sse"] = res.sse;
    std::ofstream js(g.resolve(out));
    js << j.dump(2) << '\n';
    std::cout << "oracle: alpha=" << res.alpha << " sse=" << res.sse << " -> " << g.resolve(out)
              << "\n";
}

void cmd_table1(const GlobalOptions& g, const std::string& alpha_fn, std::vector<double> eps_list,
                std::vector<int> depth_list, int n_train, int epochs, int width_cap,
                const std::string& out) {
    auto fn = hps::AlphaFunction::from_id(hps::parse_alpha_fn(alpha_fn));
    hps::Table1Config cfg;
    cfg.n_train = n_train;
    cfg.train.max_epochs = epochs;
    cfg.width_cap = width_cap;
    cfg.seed = g.seed;
    cfg.threads = g.thread_count();
    auto rows = hps::run_table1(fn, eps_list, depth_list, cfg);
    std::vector<std::vector<std::string>> csv_rows;
    for (const auto& r : rows) csv_rows.push_back(hps::to_csv_row(r));
    hps::write_csv(g.resolve(out), hps::sweep_header(), csv_rows);
    int met = 0;
    for (const auto& r : rows) met += r.met;
    std::cout << "table1: " << alpha_fn << " " << rows.size() << " rows (" << met
              << " met the target) -> " << g.resolve(out) << "\n";
}

void cmd_scenarios(const GlobalOptions& g, int scenario, int seeds, int n_test, int epochs,
                   const std::string& out, const std::string& plots) {
    hps::ScenarioConfig cfg;
    cfg.scenario = scenario;
    cfg.n_test = n_test;
    cfg.train.max_epochs = epochs;

    std::vector<std::vector<std::string>> rows;
    if (!plots.empty()) fs::create_directories(g.resolve(plots));
    for (int s = 0; s < seeds; ++s) {
        cfg.seed = hps::derive_seed(g.seed, "scenarios", s);
        hps::ScenarioReport rep = hps::run_scenarios(cfg);
        for (auto& row : hps::to_csv_rows(rep)) rows.push_back(std::move(row));
        std::cout << "scenario " << scenario << " seed " << s
                  << ": mean RE predicted=" << rep.mean_re_pred
                  << " oracle=" << rep.mean_re_oracle;
        if (rep.skipped_enrichment) std::cout << " (skipped " << rep.skipped_enrichment << ")";
        std::cout << "\n";
        if (!plots.empty()) {
            fs::path p = fs::path(g.resolve(plots)) /
                         ("scenario" + std::to_string(scenario) + "_seed" + std::to_string(s) +
                          ".svg");
            hps::emit_scenario_plot(rep, p.string());
        }
    }
    hps::write_csv(g.resolve(out), hps::scenario_header(), rows);
    std::cout << "scenarios -> " << g.resolve(out) << "\n";
}

void cmd_gengap(const GlobalOptions& g, std::vector<int> n_list, std::vector<double> amplitudes,
                std::vector<int> levels, int seeds, int epochs, int min_steps, int width,
                const std::string& out, const std::string& plots) {
    hps::GenGapSweepConfig cfg;
    cfg.n_list = std::move(n_list);
    cfg.amplitudes = std::move(amplitudes);
    cfg.levels = std::move(levels);
    cfg.n_seeds = seeds;
    cfg.seed = g.seed;
    cfg.threads = g.thread_count();
    cfg.base.train.max_epochs = epochs;
    cfg.base.min_steps = min_steps;
    cfg.base.spec.width = width;

    auto records = hps::run_gengap_sweep(cfg);
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : records) rows.push_back(hps::to_csv_row(r));
    hps::write_csv(g.resolve(out), hps::gengap_header(), rows);
    std::cout << "gengap: " << records.size() << " records -> " << g.resolve(out) << "\n";

    if (!plots.empty()) {
        fs::create_directories(g.resolve(plots));
        for (double amp : cfg.amplitudes)
            for (int level : cfg.levels) {
                std::string name = "gengap_A" + hps::format_double(amp) + "_J" +
                                   std::to_string(level) + ".svg";
                hps::emit_gengap_plot(records, amp, level,
                                      (fs::path(g.resolve(plots)) / name).string());
            }
        std::cout << "gengap plots -> " << g.resolve(plots) << "\n";
    }
}

void cmd_wavelet(const GlobalOptions& g, const std::string& family, int level,
                 const std::string& in, const std::string& out) {
    auto signals = load_signals_csv(in);
    hps::WaveletProjector proj{hps::parse_wavelet_family(family), level,
                               static_cast<int>(signals.front().samples.size())};
    for (auto& s : signals) s.samples = hps::project(proj, s.samples);
    write_signals_csv(g.resolve(out), signals);
    std::cout << "wavelet: " << to_string(proj.family) << " J=" << level << " on "
              << signals.size() << " signals -> " << g.resolve(out) << "\n";
}

void cmd_audit(const GlobalOptions& g, const std::string& alpha_fn, const std::string& model,
               int grid_n, const std::string& out) {
    auto fn = hps::AlphaFunction::from_id(hps::parse_alpha_fn(alpha_fn));
    hps::MlpNetwork net = hps::load_model(model);
    std::vector<double> grid(grid_n);
    for (int i = 0; i < grid_n; ++i) grid[i] = static_cast<double>(i) / (grid_n - 1);

    hps::Prop1Report rep =
        hps::audit_prop1(fn, hps::predictor_from_net(net), hps::SplineFitConfig{}, grid,
                         net.spec().input_dim);

    std::vector<hps::LabeledSignal> audit_set;
    hps::Rng rng(hps::derive_seed(g.seed, "audit-set"));
    const auto t = hps::uniform_grid(net.spec().input_dim);
    for (int i = 0; i < 10; ++i)
        audit_set.push_back(hps::exponential_signal(fn.eval(rng.uniform01()), t));
    hps::BoundAudit comp = hps::audit_composition(net, audit_set, hps::SplineFitConfig{});

    json j;
    j["reconstruction"] = {{"eps_hat", rep.eps_hat},
                           {"l_eff_hat", rep.l_eff_hat},
                           {"l_flat_hat", rep.l_flat_hat},
                           {"c_hat", rep.c_hat},
                           {"singular_delta_sum", rep.singular_delta_sum},
                           {"violations", rep.violations},
                           {"inequality_holds", rep.inequality_holds}};
    json pts = json::array();
    for (const auto& p : rep.points)
        pts.push_back({{"x", p.x},
                       {"alpha_nominal", p.alpha_nominal},
                       {"alpha_predicted", p.alpha_predicted},
                       {"rec_predicted_inf", p.rec_predicted_inf},
                       {"rec_nominal_inf", p.rec_nominal_inf},
                       {"near_singular", p.near_singular}});
    j["reconstruction"]["points"] = pts;
    j["composition"] = {{"l_f_emp", comp.l_f_emp},
                        {"l_f_upper", comp.l_f_upper},
                        {"l_hp_emp", comp.l_hp_emp},
                        {"l_alpha_emp", comp.l_alpha_emp},
                        {"l_s_emp", comp.l_s_emp},
                        {"diameter", comp.diameter},
                        {"composite_bound", comp.composite_bound},
                        {"observed_composite", comp.observed_composite}};
    std::ofstream js(g.resolve(out));
    js << j.dump(2) << '\n';
    std::cout << "audit: " << alpha_fn << " inequality_holds=" << rep.inequality_holds
              << " observed/bound=" << comp.observed_composite << "/" << comp.composite_bound
              << " -> " << g.resolve(out) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"HP-spline regression with learned frequency parameters"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML-style key=value config file (CLI flags override)");

    GlobalOptions g;
    app.add_option("--seed", g.seed, "base seed; every experiment stream derives from it");
    app.add_option("--out-dir", g.out_dir, "directory prefix for relative output paths");
    app.add_option("--threads", g.threads, "worker threads for sweeps (0 = hardware)");

    // basis
    auto* basis = app.add_subcommand("basis", "sample one basis prototype to CSV");
    double b_alpha = 1.0, b_h = 0.1;
    int b_m = 11, b_samples = 400;
    std::string b_out = "basis.csv";
    basis->add_option("--alpha", b_alpha, "frequency parameter");
    basis->add_option("--knot-step", b_h, "knot spacing h");
    basis->add_option("--m", b_m, "number of knots");
    basis->add_option("--samples", b_samples, "sample count over the support");
    basis->add_option("--out", b_out, "output CSV (t,B,dB,d2B)");

    // fit
    auto* fitc = app.add_subcommand("fit", "penalized fit of (t,y) data at fixed alpha");
    std::string f_data, f_out = "fit.csv";
    double f_alpha = 1.0, f_lambda = 0.1, f_h = 0.1;
    fitc->add_option("--data", f_data, "input CSV with columns t,y")->required();
    fitc->add_option("--alpha", f_alpha, "frequency parameter");
    fitc->add_option("--lambda", f_lambda, "smoothing weight");
    fitc->add_option("--knot-step", f_h, "knot spacing");
    fitc->add_option("--out", f_out, "output CSV (t,y,yhat,residual); JSON sidecar alongside");

    // gen
    auto* gen = app.add_subcommand("gen", "generate labeled signal datasets");
    std::string ge_kind = "sweep", ge_fn = "a1", ge_signal = "s1", ge_out = "signals.csv";
    int ge_n = 100, ge_d = 32;
    double ge_amp = 1.0, ge_amin = 0.5, ge_amax = 5.0;
    gen->add_option("--kind", ge_kind, "sweep | multiscale | scenario");
    gen->add_option("--alpha-fn", ge_fn, "a1..a4 (sweep kind)");
    gen->add_option("--signal", ge_signal, "s1 | s2 | s3 (scenario kind)");
    gen->add_option("--n", ge_n, "number of signals");
    gen->add_option("--d", ge_d, "samples per signal");
    gen->add_option("--amplitude", ge_amp, "amplitude A");
    gen->add_option("--alpha-min", ge_amin, "lower alpha draw bound");
    gen->add_option("--alpha-max", ge_amax, "upper alpha draw bound");
    gen->add_option("--out", ge_out, "output CSV (alpha_target,s_0..)");

    // train
    auto* tr = app.add_subcommand("train", "train a frequency predictor on a sweep dataset");
    std::string t_fn = "a1", t_out = "model.json";
    int t_depth = 3, t_width = 1, t_ntrain = 1000, t_epochs = 20000, t_batch = 32;
    double t_eps = 0.1, t_lr = 1e-3;
    tr->add_option("--alpha-fn", t_fn, "a1..a4");
    tr->add_option("--depth", t_depth, "total layer count L");
    tr->add_option("--width", t_width, "hidden width W");
    tr->add_option("--eps", t_eps, "sup-norm validation stopping target");
    tr->add_option("--n-train", t_ntrain, "training set size");
    tr->add_option("--epochs", t_epochs, "epoch cap");
    tr->add_option("--lr", t_lr, "learning rate");
    tr->add_option("--batch", t_batch, "batch size");
    tr->add_option("--out", t_out, "model JSON path");

    // predict
    auto* pr = app.add_subcommand("predict", "apply a trained model to signals");
    std::string p_model, p_data, p_out = "predictions.csv";
    pr->add_option("--model", p_model, "model JSON")->required();
    pr->add_option("--data", p_data, "signals CSV")->required();
    pr->add_option("--out", p_out, "output CSV (alpha_target,alpha_pred)");

    // oracle
    auto* orc = app.add_subcommand("oracle", "grid-search the best-fitting alpha");
    std::string o_data, o_out = "alpha.json";
    double o_lambda = 0.1, o_h = 0.1;
    orc->add_option("--data", o_data, "input CSV with columns t,y")->required();
    orc->add_option("--lambda", o_lambda, "smoothing weight");
    orc->add_option("--knot-step", o_h, "knot spacing");
    orc->add_option("--out", o_out, "output JSON {alpha, sse}");

    // table1
    auto* t1 = app.add_subcommand("table1", "architecture sweep with reconstruction metrics");
    std::string t1_fn = "a1", t1_out = "table1.csv";
    std::vector<double> t1_eps{0.1, 0.07, 0.008};
    std::vector<int> t1_depths{3, 4, 5};
    int t1_ntrain = 1000, t1_epochs = 20000, t1_cap = 8;
    t1->add_option("--alpha-fn", t1_fn, "a1..a4");
    t1->add_option("--eps-list", t1_eps, "sup-norm targets")->delimiter(',');
    t1->add_option("--depth-list", t1_depths, "depths L")->delimiter(',');
    t1->add_option("--n-train", t1_ntrain, "training set size");
    t1->add_option("--epochs", t1_epochs, "epoch cap per width");
    t1->add_option("--width-cap", t1_cap, "stop growing the width here");
    t1->add_option("--out", t1_out, "output CSV");

    // scenarios
    auto* sc = app.add_subcommand("scenarios", "predicted vs oracle alpha comparison");
    int sc_id = 1, sc_seeds = 1, sc_ntest = 50, sc_epochs = 2000;
    std::string sc_out = "scenarios.csv", sc_plots;
    sc->add_option("--scenario", sc_id, "1, 2 or 3")->check(CLI::Range(1, 3));
    sc->add_option("--seeds", sc_seeds, "independent repetitions");
    sc->add_option("--n-test", sc_ntest, "test instances per run");
    sc->add_option("--epochs", sc_epochs, "training epochs");
    sc->add_option("--out", sc_out, "per-instance CSV");
    sc->add_option("--plots", sc_plots, "directory for per-seed SVG plots");

    // gengap
    auto* gg = app.add_subcommand("gengap", "generalization-gap sweep vs the diameter bound");
    std::vector<int> gg_n{32, 64, 128, 256, 512}, gg_levels{0};
    std::vector<double> gg_amps{0.5, 1, 2, 4.5, 5, 6, 8, 10.5};
    int gg_seeds = 10, gg_epochs = 400, gg_width = 4, gg_min_steps = 800;
    std::string gg_out = "gengap.csv", gg_plots;
    gg->add_option("--n-list", gg_n, "training-set sizes")->delimiter(',');
    gg->add_option("--amplitudes", gg_amps, "amplitudes A")->delimiter(',');
    gg->add_option("--levels", gg_levels, "wavelet levels J (0 = none)")->delimiter(',');
    gg->add_option("--seeds", gg_seeds, "seeds per cell");
    gg->add_option("--epochs", gg_epochs, "training epochs per cell");
    gg->add_option("--min-steps", gg_min_steps, "optimizer-step floor per cell");
    gg->add_option("--width", gg_width, "hidden width");
    gg->add_option("--out", gg_out, "records CSV");
    gg->add_option("--plots", gg_plots, "directory for per-(A,J) SVG plots");

    // wavelet
    auto* wv = app.add_subcommand("wavelet", "project signals onto a scaling space");
    std::string w_family = "haar", w_in, w_out = "projected.csv";
    int w_level = 1;
    wv->add_option("--family", w_family, "haar | db4");
    wv->add_option("--level", w_level, "projection level J");
    wv->add_option("--in", w_in, "input signals CSV")->required();
    wv->add_option("--out", w_out, "output signals CSV");

    // audit
    auto* au = app.add_subcommand("audit", "reconstruction and composition bound audits");
    std::string a_fn = "a1", a_model, a_out = "audit.json";
    int a_grid = 21;
    au->add_option("--alpha-fn", a_fn, "a1..a4");
    au->add_option("--model", a_model, "trained model JSON")->required();
    au->add_option("--grid-n", a_grid, "x grid size for the reconstruction audit");
    au->add_option("--out", a_out, "output JSON report");

    // let --seed/--out-dir/--threads appear after the subcommand name too
    for (auto* s : app.get_subcommands([](CLI::App*) { return true; })) s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*basis) cmd_basis(g, b_alpha, b_h, b_m, b_out, b_samples);
        if (*fitc) cmd_fit(g, f_data, f_alpha, f_lambda, f_h, f_out);
        if (*gen) cmd_gen(g, ge_kind, ge_fn, ge_signal, ge_n, ge_d, ge_amp, ge_amin, ge_amax, ge_out);
        if (*tr) cmd_train(g, t_fn, t_depth, t_width, t_eps, t_ntrain, t_epochs, t_lr, t_batch, t_out);
        if (*pr) cmd_predict(g, p_model, p_data, p_out);
        if (*orc) cmd_oracle(g, o_data, o_lambda, o_h, o_out);
        if (*t1) cmd_table1(g, t1_fn, t1_eps, t1_depths, t1_ntrain, t1_epochs, t1_cap, t1_out);
        if (*sc) cmd_scenarios(g, sc_id, sc_seeds, sc_ntest, sc_epochs, sc_out, sc_plots);
        if (*gg) cmd_gengap(g, gg_n, gg_amps, gg_levels, gg_seeds, gg_epochs, gg_min_steps, gg_width, gg_out, gg_plots);
        if (*wv) cmd_wavelet(g, w_family, w_level, w_in, w_out);
        if (*au) cmd_audit(g, a_fn, a_model, a_grid, a_out);
    } catch (const hps::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
