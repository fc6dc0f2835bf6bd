#pragma once

// Hyperbolic B-spline basis: compactly supported C^2 bumps whose four segments
// live in the space spanned by {e^{at}, t e^{at}, e^{-at}, t e^{-at}}.
//
// Segments are stored in the equivalent local basis
//   psi0(u) = cosh(au)
//   psi1(u) = sinh(au)/a
//   psi2(u) = u sinh(au)/a
//   psi3(u) = 3 (u cosh(au) - sinh(au)/a) / a^2
// which spans the same four-dimensional space for a != 0 and degenerates
// exactly to {1, u, u^2, u^3} as a -> 0, so the construction system stays
// well conditioned across the small-alpha switch. Differentiation acts on
// coefficient vectors through the sparse matrix
//   (c0,c1,c2,c3)' = (c1, a^2 c0 + 2 c2, 3 c3, a^2/3 c2),
// whose fourth power equals 2 a^2 D^2 - a^4 I: every representable segment
// satisfies the annihilating ODE (D^2 - a^2)^2 B = 0 identically.

#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "hpsplinet/errors.hpp"

namespace hps {

struct UniformKnots {
    double t_start = 0.0;  // location of knot 1
    double h = 1.0;        // knot step
    int m = 4;             // number of knots xi_1..xi_m

    // Knot xi_k; k may run outside [1, m] for the implied 3-knot extension.
    double knot(int k) const { return t_start + (k - 1) * h; }
    double t_min() const { return knot(1); }
    double t_max() const { return knot(m); }

    void validate() const {
        if (!(h > 0.0) || !std::isfinite(h) || !std::isfinite(t_start))
            throw std::invalid_argument("UniformKnots: knot step must be positive and finite");
        if (m < 4)
            throw std::invalid_argument("UniformKnots: need at least 4 knots");
    }

    // Smallest uniform knot set with the given step whose span covers [a, b].
    static UniformKnots covering(double a, double b, double step) {
        if (!(step > 0.0) || !(b > a))
            throw std::invalid_argument("UniformKnots::covering: need b > a and step > 0");
        int intervals = static_cast<int>(std::ceil((b - a) / step - 1e-12));
        int m = std::max(intervals + 1, 4);
        return UniformKnots{a, step, m};
    }
};

namespace detail {

// sinh(z)/z with a series branch; relative error a few ulps for all z.
inline double sinhc(double z) {
    double z2 = z * z;
    if (std::abs(z) < 0.5) {
        return 1.0 + z2 * (1.0 / 6.0 + z2 * (1.0 / 120.0 + z2 * (1.0 / 5040.0 +
                      z2 * (1.0 / 362880.0 + z2 / 39916800.0))));
    }
    return std::sinh(z) / z;
}

// (cosh z - sinh(z)/z) / z^2; tends to 1/3 as z -> 0.
inline double cosh_sinhc_ratio(double z) {
    double z2 = z * z;
    if (std::abs(z) < 0.5) {
        return 1.0 / 3.0 + z2 * (1.0 / 30.0 + z2 * (1.0 / 840.0 + z2 * (1.0 / 45360.0 +
                          z2 / 3991680.0)));
    }
    return (std::cosh(z) - sinhc(z)) / z2;
}

inline std::array<double, 4> psi_values(double alpha, double u) {
    double z = alpha * u;
    double s = sinhc(z);
    return {std::cosh(z), u * s, u * u * s, 3.0 * u * u * u * cosh_sinhc_ratio(z)};
}

// One application of d/du on a psi-coefficient vector.
inline std::array<double, 4> psi_derivative(double alpha, const std::array<double, 4>& c) {
    double a2 = alpha * alpha;
    return {c[1], a2 * c[0] + 2.0 * c[2], 3.0 * c[3], (a2 / 3.0) * c[2]};
}

}  // namespace detail

class HyperbolicBasis {
public:
    static constexpr double kAlphaSwitch = 1e-4;  // |alpha*h| below: exact cubic limit
    static constexpr double kMaxAlphaH = 30.0;    // |alpha*h| above: rejected
    static constexpr int kMaxOrder = 4;

    static HyperbolicBasis build(double alpha, const UniformKnots& knots) {
        knots.validate();
        if (!std::isfinite(alpha))
            throw std::invalid_argument("HyperbolicBasis: alpha must be finite");
        double ah = std::abs(alpha) * knots.h;
        if (ah > kMaxAlphaH) {
            std::ostringstream msg;
            msg << "HyperbolicBasis: |alpha*h| = " << ah << " exceeds " << kMaxAlphaH
                << "; construction system would overflow";
            throw std::invalid_argument(msg.str());
        }

        HyperbolicBasis b;
        b.alpha_ = alpha;
        b.knots_ = knots;
        b.degenerate_ = ah < kAlphaSwitch;
        // construction depends on alpha only through |alpha| (the span is
        // invariant under alpha -> -alpha); the degenerate branch is the
        // exact cubic B-spline, reached by the same code path at alpha = 0.
        b.alpha_eff_ = b.degenerate_ ? 0.0 : std::abs(alpha);
        b.solve_prototype();
        return b;
    }

    double alpha() const { return alpha_; }
    double alpha_eff() const { return alpha_eff_; }
    const UniformKnots& knots() const { return knots_; }
    bool degenerate() const { return degenerate_; }
    double condition_estimate() const { return cond_; }
    int num_basis() const { return knots_.m + 2; }

    // Basis j is the prototype translated so its support is
    // [xi_{j-2}, xi_{j+2}] with center xi_j.
    double support_left(int j) const { return knots_.knot(j - 2); }
    double support_right(int j) const { return knots_.knot(j + 2); }
    double center(int j) const { return knots_.knot(j); }

    // order-th derivative of B_j at t; exactly zero outside the open support.
    double eval(int j, double t, int order = 0) const {
        check_index(j);
        return prototype_eval(t - support_left(j), order);
    }

    // Prototype B measured from its support's left end; x in [0, 4h]. An
    // ulp-scale sliver at each end counts as outside, so support-boundary
    // points assembled in caller arithmetic (center + 2h etc.) give exact 0.
    double prototype_eval(double x, int order = 0) const {
        const double edge_tol = 1e-12 * knots_.h;
        if (!(x > edge_tol) || !(x < 4.0 * knots_.h - edge_tol)) return 0.0;
        int seg = std::min(static_cast<int>(x / knots_.h), 3);
        return segment_eval(seg, x - seg * knots_.h, order);
    }

    // Segment-local evaluation (u in [0, h]); gives one-sided values at knots.
    double segment_eval(int seg, double u, int order = 0) const {
        if (seg < 0 || seg > 3) throw std::out_of_range("HyperbolicBasis: segment index");
        if (order < 0 || order > kMaxOrder)
            throw std::invalid_argument("HyperbolicBasis: derivative order out of range");
        const auto psi = detail::psi_values(alpha_eff_, u);
        const auto& c = dcoeffs_[order][seg];
        return c[0] * psi[0] + c[1] * psi[1] + c[2] * psi[2] + c[3] * psi[3];
    }

    const std::array<std::array<double, 4>, 4>& segment_coefficients() const {
        return dcoeffs_[0];
    }

private:
    void check_index(int j) const {
        if (j < 0 || j > knots_.m + 1)
            throw std::out_of_range("HyperbolicBasis: basis index out of range");
    }

    // 16 unknowns: 4 psi-coefficients per segment. Equations: value/D1/D2
    // vanish at both support ends (6), C^2 continuity at the three interior
    // support knots (9), value 2/3 at the support center (1). The center
    // value matches the cubic B-spline normalization so the alpha -> 0 limit
    // is continuous.
    void solve_prototype() {
        const double h = knots_.h;
        const double a = alpha_eff_;

        Eigen::Matrix<double, 16, 16> A = Eigen::Matrix<double, 16, 16>::Zero();
        Eigen::Matrix<double, 16, 1> rhs = Eigen::Matrix<double, 16, 1>::Zero();

        // Row r of psi values for derivative `order` at local u: obtained by
        // pushing unit coefficient vectors through the derivative map.
        auto stamp = [&](int row, int seg, double u, int order, double sign) {
            for (int k = 0; k < 4; ++k) {
                std::array<double, 4> unit{};
                unit[k] = 1.0;
                for (int r = 0; r < order; ++r) unit = detail::psi_derivative(a, unit);
                const auto psi = detail::psi_values(a, u);
                double v = unit[0] * psi[0] + unit[1] * psi[1] + unit[2] * psi[2] + unit[3] * psi[3];
                A(row, 4 * seg + k) += sign * v;
            }
        };

        int row = 0;
        for (int order = 0; order < 3; ++order) stamp(row++, 0, 0.0, order, 1.0);  // left end
        for (int seg = 0; seg < 3; ++seg) {
            for (int order = 0; order < 3; ++order) {
                stamp(row, seg, h, order, 1.0);
                stamp(row, seg + 1, 0.0, order, -1.0);
                ++row;
            }
        }
        for (int order = 0; order < 3; ++order) stamp(row++, 3, h, order, 1.0);  // right end
        stamp(row, 2, 0.0, 0, 1.0);  // normalization: B(2h) = 2/3
        rhs(row) = 2.0 / 3.0;
        ++row;

        Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
        double smax = svd.singularValues()(0);
        double smin = svd.singularValues()(15);
        cond_ = (smin > 0.0) ? smax / smin : std::numeric_limits<double>::infinity();
        if (!(smin > smax * 1e-14)) {
            std::ostringstream msg;
            msg << "HyperbolicBasis: singular construction system (cond ~ " << cond_
                << ") at |alpha*h| = " << a * h;
            throw NumericalError(msg.str());
        }
        Eigen::Matrix<double, 16, 1> sol = svd.solve(rhs);

        for (int seg = 0; seg < 4; ++seg)
            for (int k = 0; k < 4; ++k) dcoeffs_[0][seg][k] = sol(4 * seg + k);
        for (int order = 1; order <= kMaxOrder; ++order)
            for (int seg = 0; seg < 4; ++seg)
                dcoeffs_[order][seg] = detail::psi_derivative(a, dcoeffs_[order - 1][seg]);
    }

    double alpha_ = 0.0;
    double alpha_eff_ = 0.0;
    UniformKnots knots_;
    bool degenerate_ = false;
    double cond_ = 0.0;
    // dcoeffs_[order][seg] = psi-coefficients of the order-th derivative.
    std::array<std::array<std::array<double, 4>, 4>, kMaxOrder + 1> dcoeffs_{};
};

// Collocation matrix: entry (i, j) = B_j(t_i), j = 0..m+1. Each row has at
// most four nonzero entries.
inline Eigen::MatrixXd design_matrix(const HyperbolicBasis& basis,
                                     const std::vector<double>& t_points) {
    const auto& kn = basis.knots();
    const double lo = kn.t_min(), hi = kn.t_max();
    const double tol = 1e-12 * (std::abs(lo) + std::abs(hi) + kn.h);
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(t_points.size()),
                                              basis.num_basis());
    for (std::size_t i = 0; i < t_points.size(); ++i) {
        double t = t_points[i];
        if (!(t >= lo - tol) || !(t <= hi + tol)) {
            std::ostringstream msg;
            msg << "design_matrix: point " << t << " outside knot range [" << lo << ", " << hi << "]";
            throw std::domain_error(msg.str());
        }
        int k = static_cast<int>(std::floor((t - kn.t_start) / kn.h)) + 1;
        k = std::max(1, std::min(k, kn.m - 1));
        for (int j = k - 1; j <= k + 2; ++j)
            B(static_cast<Eigen::Index>(i), j) = basis.eval(j, t);
    }
    return B;
}

}  // namespace hps
