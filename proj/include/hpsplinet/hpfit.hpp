#pragma once

// HP-spline fitting: penalized least squares in the hyperbolic B-spline basis
// with the alpha-dependent second-order difference penalty
//   (D a)_j = a_j - 2 e^{-alpha h} a_{j-1} + e^{-2 alpha h} a_{j-2},
// whose null space carries the coefficient sequences (c1 + c2 j) e^{-j alpha h}
// of the exponential trends the fit conserves.

#include <cmath>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "hpsplinet/errors.hpp"
#include "hpsplinet/hbasis.hpp"
#include "hpsplinet/rng.hpp"

namespace hps {

struct PenaltyMatrix {
    double alpha = 0.0;
    double h = 1.0;
    int m = 0;             // rows j = 2..m+1
    Eigen::MatrixXd mat;   // m x (m+2), banded
};

// Banded difference operator; row j-2 holds [e^{-2ah}, -2e^{-ah}, 1] in
// columns (j-2, j-1, j).
inline PenaltyMatrix penalty_matrix(double alpha, double h, int m) {
    if (!(h > 0.0)) throw std::invalid_argument("penalty_matrix: h must be positive");
    if (m < 2) throw std::invalid_argument("penalty_matrix: need m >= 2");
    PenaltyMatrix D{alpha, h, m, Eigen::MatrixXd::Zero(m, m + 2)};
    const double r = std::exp(-alpha * h);
    for (int row = 0; row < m; ++row) {
        D.mat(row, row) = r * r;
        D.mat(row, row + 1) = -2.0 * r;
        D.mat(row, row + 2) = 1.0;
    }
    return D;
}

struct HpSpline {
    double alpha = 0.0;
    double lambda = 0.0;
    std::vector<double> coeffs;  // a_0..a_{m+1}
    std::shared_ptr<const HyperbolicBasis> basis;
    double sse = 0.0;            // sum of squared data residuals
    double penalty_value = 0.0;  // ||D a||^2 (unweighted by lambda^2)
};

// Shared cache of built bases keyed by (alpha, knot layout); fits at the same
// alpha reuse one immutable basis across threads.
class BasisCache {
public:
    std::shared_ptr<const HyperbolicBasis> get(double alpha, const UniformKnots& kn) {
        Key key{alpha, kn.t_start, kn.h, kn.m};
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = map_.find(key);
            if (it != map_.end()) return it->second;
        }
        auto built = std::make_shared<HyperbolicBasis>(HyperbolicBasis::build(alpha, kn));
        std::lock_guard<std::mutex> lock(mutex_);
        return map_.emplace(key, std::move(built)).first->second;
    }

    static BasisCache& global() {
        static BasisCache cache;
        return cache;
    }

private:
    struct Key {
        double alpha, t_start, h;
        int m;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::uint64_t s = double_bits(k.alpha);
            s = mix_seed(s, double_bits(k.t_start));
            s = mix_seed(s, double_bits(k.h));
            s = mix_seed(s, static_cast<std::uint64_t>(k.m));
            return static_cast<std::size_t>(s);
        }
    };
    std::mutex mutex_;
    std::unordered_map<Key, std::shared_ptr<const HyperbolicBasis>, KeyHash> map_;
};

// Penalized least squares through QR of the stacked system [B; lambda D]
// (avoids squaring the condition number; the normal equations serve only as a
// residual check and test oracle).
inline HpSpline fit(const std::vector<double>& t, const std::vector<double>& y,
                    double alpha, double lambda, const UniformKnots& knots,
                    std::shared_ptr<const HyperbolicBasis> basis = nullptr) {
    knots.validate();
    if (t.size() != y.size()) throw std::invalid_argument("fit: t and y lengths differ");
    if (t.size() < 4) throw std::invalid_argument("fit: need at least 4 data points");
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("fit: lambda must be finite and >= 0");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (t[i] < t[i - 1]) throw std::invalid_argument("fit: t must be sorted ascending");

    if (!basis) basis = BasisCache::global().get(alpha, knots);
    const int d = static_cast<int>(t.size());
    const int ncoef = basis->num_basis();
    const int m = knots.m;

    Eigen::MatrixXd B = design_matrix(*basis, t);
    PenaltyMatrix D = penalty_matrix(alpha, knots.h, m);

    Eigen::MatrixXd stacked(d + m, ncoef);
    stacked.topRows(d) = B;
    stacked.bottomRows(m) = lambda * D.mat;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d + m);
    for (int i = 0; i < d; ++i) rhs(i) = y[i];

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(stacked);
    qr.setThreshold(1e-12);
    if (qr.rank() < ncoef) {
        std::ostringstream msg;
        msg << "fit: rank-deficient system (rank " << qr.rank() << " of " << ncoef
            << "; lambda = " << lambda << ", d = " << d << ")";
        throw FitError(msg.str(), static_cast<int>(qr.rank()), ncoef);
    }
    Eigen::VectorXd a = qr.solve(rhs);

    HpSpline s;
    s.alpha = alpha;
    s.lambda = lambda;
    s.basis = basis;
    s.coeffs.assign(a.data(), a.data() + ncoef);
    s.sse = (B * a - Eigen::Map<const Eigen::VectorXd>(y.data(), d)).squaredNorm();
    s.penalty_value = (D.mat * a).squaredNorm();
    return s;
}

inline std::vector<double> evaluate(const HpSpline& s, const std::vector<double>& t_points) {
    Eigen::MatrixXd B = design_matrix(*s.basis, t_points);
    Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(s.coeffs.data(),
                                                          static_cast<Eigen::Index>(s.coeffs.size()));
    Eigen::VectorXd v = B * a;
    return std::vector<double>(v.data(), v.data() + v.size());
}

struct ReconstructionMetrics {
    double mse = 0.0;
    double max_abs = 0.0;
    double rel = 0.0;
};

inline ReconstructionMetrics reconstruction_metrics(const std::vector<double>& reference,
                                                    const std::vector<double>& reconstructed) {
    if (reference.size() != reconstructed.size() || reference.empty())
        throw std::invalid_argument("reconstruction_metrics: length mismatch");
    double sq = 0.0, mx = 0.0, ref_sq = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        double e = reference[i] - reconstructed[i];
        sq += e * e;
        mx = std::max(mx, std::abs(e));
        ref_sq += reference[i] * reference[i];
    }
    if (!(ref_sq > 0.0))
        throw std::domain_error("reconstruction_metrics: zero-norm reference");
    return {sq / static_cast<double>(reference.size()), mx, std::sqrt(sq / ref_sq)};
}

}  // namespace hps
