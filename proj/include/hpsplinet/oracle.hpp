#pragma once

// Grid-search baseline for the frequency parameter: scans a log-spaced grid
// of magnitudes, fits the HP-spline at fixed lambda for each candidate and
// keeps the smallest data SSE, with optional golden-section refinement inside
// the winning bracket. Both signs of every magnitude are tried: the basis is
// even in alpha but the difference penalty conserves e^{-alpha t} trends, so
// rising exponentials match at the negative parameter. Ties prefer the
// smaller magnitude, then the positive sign; the returned alpha is signed.

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hpsplinet/errors.hpp"
#include "hpsplinet/hpfit.hpp"

namespace hps {

struct AlphaSearchConfig {
    double alpha_min = 0.05;
    double alpha_max = 10.0;
    int grid_size = 200;
    bool refine = true;        // golden-section to 1e-4 inside the best bracket
    double lambda = 0.1;
    double knot_step = 0.1;
    int threads = 1;           // grid candidates evaluated concurrently

    void validate() const {
        if (!(alpha_min > 0.0)) throw std::invalid_argument("AlphaSearchConfig: alpha_min must be > 0");
        if (!(alpha_max > alpha_min)) throw std::invalid_argument("AlphaSearchConfig: alpha_max <= alpha_min");
        if (grid_size < 2) throw std::invalid_argument("AlphaSearchConfig: grid_size must be >= 2");
        if (!(lambda >= 0.0)) throw std::invalid_argument("AlphaSearchConfig: lambda must be >= 0");
        if (!(knot_step > 0.0)) throw std::invalid_argument("AlphaSearchConfig: knot_step must be > 0");
    }
};

struct OracleResult {
    double alpha = 0.0;
    double sse = 0.0;
};

inline OracleResult optimal_alpha(const std::vector<double>& t, const std::vector<double>& y,
                                  const AlphaSearchConfig& cfg) {
    cfg.validate();
    if (t.size() < 4 || t.size() != y.size())
        throw std::invalid_argument("optimal_alpha: need >= 4 (t, y) pairs of equal length");

    const UniformKnots knots = UniformKnots::covering(t.front(), t.back(), cfg.knot_step);
    bool any_ok = false;
    std::string last_error;

    auto sse_at = [&](double alpha) {
        HpSpline s = fit(t, y, alpha, cfg.lambda, knots);
        return s.sse;
    };

    double best_alpha = cfg.alpha_min;
    double best_sse = std::numeric_limits<double>::infinity();
    int best_index = -1;
    double best_sign = 1.0;
    const double ratio = cfg.alpha_max / cfg.alpha_min;
    std::vector<double> grid(cfg.grid_size);
    for (int i = 0; i < cfg.grid_size; ++i)
        grid[i] = cfg.alpha_min * std::pow(ratio, static_cast<double>(i) / (cfg.grid_size - 1));

    // candidates evaluated (possibly concurrently) into slots, then reduced
    // in grid order so the argmin and its tie-breaks are deterministic
    struct Candidate {
        double sse = std::numeric_limits<double>::infinity();
        bool ok = false;
        std::string error;
    };
    std::vector<Candidate> scan(2 * cfg.grid_size);
    auto evaluate_candidate = [&](std::size_t slot) {
        const int i = static_cast<int>(slot) / 2;
        const double sign = (slot % 2 == 0) ? 1.0 : -1.0;
        try {
            scan[slot].sse = sse_at(sign * grid[i]);
            scan[slot].ok = true;
        } catch (const NumericalError& e) {
            scan[slot].error = e.what();
        }
    };
    if (cfg.threads > 1) {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        int workers = std::min<int>(cfg.threads, static_cast<int>(scan.size()));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t slot = next.fetch_add(1);
                    if (slot >= scan.size()) break;
                    evaluate_candidate(slot);
                }
            });
        for (auto& th : pool) th.join();
    } else {
        for (std::size_t slot = 0; slot < scan.size(); ++slot) evaluate_candidate(slot);
    }
    for (int i = 0; i < cfg.grid_size; ++i) {
        for (int s = 0; s < 2; ++s) {
            const Candidate& c = scan[2 * i + s];
            if (!c.ok) {
                if (!c.error.empty()) last_error = c.error;
                continue;
            }
            any_ok = true;
            if (c.sse < best_sse) {  // strict: ties keep the smaller magnitude, positive first
                best_sse = c.sse;
                best_alpha = (s == 0 ? 1.0 : -1.0) * grid[i];
                best_index = i;
                best_sign = s == 0 ? 1.0 : -1.0;
            }
        }
    }
    if (!any_ok) throw NumericalError("optimal_alpha: every candidate fit failed: " + last_error);

    if (cfg.refine && best_index >= 0) {
        double lo = best_sign * grid[std::max(0, best_index - 1)];
        double hi = best_sign * grid[std::min(cfg.grid_size - 1, best_index + 1)];
        if (lo > hi) std::swap(lo, hi);
        const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
        double x1 = hi - invphi * (hi - lo);
        double x2 = lo + invphi * (hi - lo);
        double f1, f2;
        try {
            f1 = sse_at(x1);
            f2 = sse_at(x2);
            if (f1 < best_sse) { best_sse = f1; best_alpha = x1; }
            if (f2 < best_sse) { best_sse = f2; best_alpha = x2; }
            while (hi - lo > 1e-4) {
                if (f1 <= f2) {
                    hi = x2; x2 = x1; f2 = f1;
                    x1 = hi - invphi * (hi - lo);
                    f1 = sse_at(x1);
                } else {
                    lo = x1; x1 = x2; f1 = f2;
                    x2 = lo + invphi * (hi - lo);
                    f2 = sse_at(x2);
                }
                if (f1 < best_sse) { best_sse = f1; best_alpha = x1; }
                if (f2 < best_sse) { best_sse = f2; best_alpha = x2; }
            }
        } catch (const NumericalError&) {
            // keep the grid result; refinement is best-effort
        }
    }
    return {best_alpha, best_sse};
}

}  // namespace hps
