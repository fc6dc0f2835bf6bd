#include <catch2/catch.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "hpsplinet/datasets.hpp"
#include "hpsplinet/hpfit.hpp"
#include "hpsplinet/rng.hpp"

using namespace hps;

namespace {

// normal-equation solve, the independent route the QR path is checked against
Eigen::VectorXd normal_equation_fit(const std::vector<double>& t, const std::vector<double>& y,
                                    double alpha, double lambda, const UniformKnots& kn) {
    auto basis = HyperbolicBasis::build(alpha, kn);
    Eigen::MatrixXd B = design_matrix(basis, t);
    PenaltyMatrix D = penalty_matrix(alpha, kn.h, kn.m);
    Eigen::MatrixXd lhs = B.transpose() * B + lambda * lambda * D.mat.transpose() * D.mat;
    Eigen::VectorXd rhs = B.transpose() * Eigen::Map<const Eigen::VectorXd>(y.data(), y.size());
    return lhs.ldlt().solve(rhs);
}

std::vector<double> exp_data(double alpha, const std::vector<double>& t) {
    std::vector<double> y;
    for (double ti : t) y.push_back(std::exp(-alpha * ti));
    return y;
}

}  // namespace

TEST_CASE("penalty stencil", "[hpfit]") {
    SECTION("alpha = 0 gives the classical second difference") {
        PenaltyMatrix D = penalty_matrix(0.0, 0.1, 5);
        REQUIRE(D.mat.rows() == 5);
        REQUIRE(D.mat.cols() == 7);
        for (int r = 0; r < 5; ++r) {
            CHECK(D.mat(r, r) == 1.0);
            CHECK(D.mat(r, r + 1) == -2.0);
            CHECK(D.mat(r, r + 2) == 1.0);
        }
    }
    SECTION("alpha = 1, h = 0.1 weights") {
        PenaltyMatrix D = penalty_matrix(1.0, 0.1, 4);
        CHECK(D.mat(0, 0) == Approx(std::exp(-0.2)).epsilon(1e-15));
        CHECK(D.mat(0, 1) == Approx(-2.0 * std::exp(-0.1)).epsilon(1e-15));
        CHECK(D.mat(0, 2) == 1.0);
    }
}

TEST_CASE("penalty annihilates geometric and ramped-geometric sequences", "[hpfit]") {
    Rng rng(42);
    const std::vector<double> steps{0.05, 0.1, 0.5};
    for (int trial = 0; trial < 100; ++trial) {
        double alpha = rng.uniform(0.1, 5.0);
        double h = steps[trial % steps.size()];
        double c1 = rng.uniform(-1.0, 1.0);
        double c2 = rng.uniform(-1.0, 1.0);
        int m = 10;
        PenaltyMatrix D = penalty_matrix(alpha, h, m);
        Eigen::VectorXd v(m + 2);
        for (int j = 0; j < m + 2; ++j) v(j) = (c1 + c2 * j) * std::exp(-j * alpha * h);
        CHECK((D.mat * v).lpNorm<Eigen::Infinity>() < 1e-12);
    }
}

TEST_CASE("fitting an exponential passes through the data for any lambda", "[hpfit]") {
    const auto t = uniform_grid(32);
    const UniformKnots kn = UniformKnots::covering(0.0, 1.0, 0.1);
    const double alpha = 1.7;
    const auto y = exp_data(alpha, t);

    // oracle first: the normal-equation route already interpolates
    {
        Eigen::VectorXd a = normal_equation_fit(t, y, alpha, 1.0, kn);
        auto basis = HyperbolicBasis::build(alpha, kn);
        Eigen::MatrixXd B = design_matrix(basis, t);
        double res = (B * a - Eigen::Map<const Eigen::VectorXd>(y.data(), y.size()))
                         .lpNorm<Eigen::Infinity>();
        REQUIRE(res < 1e-8);
    }

    for (double lambda : {0.1, 1.0, 10.0}) {
        HpSpline s = fit(t, y, alpha, lambda, kn);
        auto rec = evaluate(s, t);
        double res = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) res = std::max(res, std::abs(rec[i] - y[i]));
        CHECK(res < 1e-8);
    }
}

TEST_CASE("exponential trend is conserved across the full lambda range", "[hpfit]") {
    const auto t = uniform_grid(32);
    const UniformKnots kn = UniformKnots::covering(0.0, 1.0, 0.1);
    for (double alpha : {0.5, 2.0}) {
        std::vector<double> y;
        for (double ti : t) y.push_back(3.5 * std::exp(-alpha * ti));
        for (double lambda : {0.0, 1.0, 100.0, 1000.0}) {
            HpSpline s = fit(t, y, alpha, lambda, kn);
            auto rec = evaluate(s, t);
            double dev = 0.0;
            for (std::size_t i = 0; i < y.size(); ++i)
                dev = std::max(dev, std::abs(rec[i] - y[i]));
            CHECK(dev < 1e-6);
        }
    }
}

TEST_CASE("zero lambda reduces to plain least squares", "[hpfit]") {
    const auto t = uniform_grid(40);
    const UniformKnots kn = UniformKnots::covering(0.0, 1.0, 0.1);
    Rng rng(3);
    std::vector<double> y;
    for (double ti : t) y.push_back(std::sin(3.0 * ti) + 0.1 * rng.normal());

    HpSpline s = fit(t, y, 1.0, 0.0, kn);
    auto basis = HyperbolicBasis::build(1.0, kn);
    Eigen::MatrixXd B = design_matrix(basis, t);
    Eigen::VectorXd ls = B.colPivHouseholderQr().solve(
        Eigen::Map<const Eigen::VectorXd>(y.data(), y.size()));
    for (int j = 0; j < ls.size(); ++j)
        CHECK(s.coeffs[j] == Approx(ls(j)).margin(1e-8 * (1.0 + std::abs(ls(j)))));
}

TEST_CASE("huge lambda projects onto the penalty null space", "[hpfit]") {
    const auto t = uniform_grid(32);
    const UniformKnots kn = UniformKnots::covering(0.0, 1.0, 0.1);
    const double alpha = 1.3;
    Rng rng(11);
    std::vector<double> y;
    for (double ti : t) y.push_back(std::exp(-alpha * ti) + 0.01 * rng.normal());

    // oracle: least squares restricted to span{e^{-j a h}, j e^{-j a h}}
    auto basis = HyperbolicBasis::build(alpha, kn);
    Eigen::MatrixXd B = design_matrix(basis, t);
    const int ncoef = basis.num_basis();
    Eigen::MatrixXd N(ncoef, 2);
    for (int j = 0; j < ncoef; ++j) {
        N(j, 0) = std::exp(-j * alpha * kn.h);
        N(j, 1) = j * std::exp(-j * alpha * kn.h);
    }
    Eigen::MatrixXd BN = B * N;
    Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), y.size());
    Eigen::VectorXd c = BN.colPivHouseholderQr().solve(yv);
    double sse_limit = (BN * c - yv).squaredNorm();

    HpSpline s = fit(t, y, alpha, 1e6, kn);
    CHECK(s.penalty_value < 1e-12);
    CHECK(s.sse == Approx(sse_limit).epsilon(1e-6));
    CHECK(std::isfinite(s.sse));
}

TEST_CASE("stacked QR agrees with the normal equations", "[hpfit]") {
    const auto t = uniform_grid(40);
    const UniformKnots kn = UniformKnots::covering(0.0, 1.0, 0.1);
    Rng rng(5);
    std::vector<double> y;
    for (double ti : t) y.push_back(std::cos(2.0 * ti) + 0.05 * rng.normal());
    for (double lambda : {0.1, 1.0, 10.0}) {
        HpSpline s = fit(t, y, 0.8, lambda, kn);
        Eigen::VectorXd ne = normal_equation_fit(t, y, 0.8, lambda, kn);
        for (int j = 0; j < ne.size(); ++j)
            CHECK(s.coeffs[j] == Approx(ne(j)).margin(1e-8 * (1.0 + std::abs(ne(j)))));
    }
}

TEST_CASE("normal-equation residual of the returned coefficients is tiny", "[hpfit]") {
    const auto t = uniform_grid(32);
    const UniformKnots kn = UniformKnots::covering(0.0, 1.0, 0.1);
    Rng rng(9);
    std::vector<double> y;
    for (double ti : t) y.push_back(std::exp(-1.1 * ti) + 0.02 * rng.normal());
    for (double lambda : {0.0, 0.1, 10.0}) {
        HpSpline s = fit(t, y, 1.1, lambda, kn);
        auto basis = s.basis;
        Eigen::MatrixXd B = design_matrix(*basis, t);
        PenaltyMatrix D = penalty_matrix(1.1, kn.h, kn.m);
        Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(s.coeffs.data(), s.coeffs.size());
        Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), y.size());
        Eigen::VectorXd bty = B.transpose() * yv;
        Eigen::VectorXd resid =
            (B.transpose() * B + lambda * lambda * D.mat.transpose() * D.mat) * a - bty;
        CHECK(resid.norm() <= 1e-8 * bty.norm());
    }
}

TEST_CASE("fitted objective is a local minimum", "[hpfit]") {
    const auto t = uniform_grid(32);
    const UniformKnots kn = UniformKnots::covering(0.0, 1.0, 0.1);
    Rng rng(13);
    std::vector<double> y;
    for (double ti : t) y.push_back(std::exp(-0.7 * ti) + 0.05 * rng.normal());
    const double lambda = 0.5;
    HpSpline s = fit(t, y, 0.7, lambda, kn);

    auto basis = s.basis;
    Eigen::MatrixXd B = design_matrix(*basis, t);
    PenaltyMatrix D = penalty_matrix(0.7, kn.h, kn.m);
    Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), y.size());
    auto objective = [&](const Eigen::VectorXd& a) {
        return (B * a - yv).squaredNorm() + lambda * lambda * (D.mat * a).squaredNorm();
    };
    Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(s.coeffs.data(), s.coeffs.size());
    double at_fit = objective(a);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd delta(a.size());
        for (int j = 0; j < a.size(); ++j) delta(j) = 0.01 * rng.normal();
        CHECK(objective(a + delta) >= at_fit);
    }
}

TEST_CASE("lambda trades data fidelity against smoothness monotonically", "[hpfit]") {
    const auto t = uniform_grid(32);
    const UniformKnots kn = UniformKnots::covering(0.0, 1.0, 0.1);
    Rng rng(21);
    std::vector<double> y;
    for (double ti : t) y.push_back(std::exp(-2.0 * ti) + 0.2 * std::sin(9.0 * ti) + 0.05 * rng.normal());

    double prev_sse = -1.0, prev_pen = std::numeric_limits<double>::infinity();
    for (double lambda : {0.0, 0.01, 0.1, 1.0, 10.0, 100.0}) {
        HpSpline s = fit(t, y, 2.0, lambda, kn);
        CHECK(s.sse >= prev_sse - 1e-10);
        CHECK(s.penalty_value <= prev_pen + 1e-10);
        prev_sse = s.sse;
        prev_pen = s.penalty_value;
    }
}

TEST_CASE("evaluation matches the recorded residual bookkeeping", "[hpfit]") {
    const auto t = uniform_grid(32);
    const UniformKnots kn = UniformKnots::covering(0.0, 1.0, 0.1);
    Rng rng(17);
    std::vector<double> y;
    for (double ti : t) y.push_back(std::exp(-0.9 * ti) + 0.03 * rng.normal());
    HpSpline s = fit(t, y, 0.9, 0.1, kn);

    auto rec = evaluate(s, t);
    double sse = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) sse += (y[i] - rec[i]) * (y[i] - rec[i]);
    CHECK(sse == Approx(s.sse).margin(1e-12 * (1.0 + s.sse)));

    HpSpline zero = s;
    std::fill(zero.coeffs.begin(), zero.coeffs.end(), 0.0);
    for (double v : evaluate(zero, t)) CHECK(v == 0.0);

    CHECK_THROWS_AS(evaluate(s, {1.5}), std::domain_error);
}

TEST_CASE("reproduction coefficients evaluate back to the exponential", "[hpfit]") {
    const UniformKnots kn{0.0, 0.1, 11};
    const double alpha = 1.0;
    auto basis = std::make_shared<HyperbolicBasis>(HyperbolicBasis::build(alpha, kn));

    // coefficients from the dense reproduction solve on a fine grid
    std::vector<double> grid(200);
    for (int i = 0; i < 200; ++i) grid[i] = i / 199.0;
    Eigen::MatrixXd B = design_matrix(*basis, grid);
    Eigen::VectorXd target(200);
    for (int i = 0; i < 200; ++i) target(i) = std::exp(alpha * grid[i]);
    Eigen::VectorXd a = B.colPivHouseholderQr().solve(target);

    HpSpline s;
    s.alpha = alpha;
    s.basis = basis;
    s.coeffs.assign(a.data(), a.data() + a.size());
    const auto t = uniform_grid(32);
    auto values = evaluate(s, t);
    for (std::size_t i = 0; i < t.size(); ++i)
        CHECK(values[i] == Approx(std::exp(alpha * t[i])).margin(1e-8));
}

TEST_CASE("unsorted abscissae are rejected", "[hpfit]") {
    const UniformKnots kn = UniformKnots::covering(0.0, 1.0, 0.25);
    CHECK_THROWS_AS(fit({0.1, 0.5, 0.3, 0.9}, {1, 2, 3, 4}, 1.0, 0.1, kn),
                    std::invalid_argument);
    CHECK_THROWS_AS(fit({0.1, 0.5, 0.9}, {1, 2, 3}, 1.0, 0.1, kn), std::invalid_argument);
}

TEST_CASE("underdetermined unpenalized fits are rejected with rank info", "[hpfit]") {
    const UniformKnots kn = UniformKnots::covering(0.0, 1.0, 0.1);  // 13 coefficients
    const std::vector<double> t{0.1, 0.3, 0.6, 0.9};
    const std::vector<double> y{1.0, 0.8, 0.6, 0.4};
    try {
        fit(t, y, 1.0, 0.0, kn);
        FAIL("expected FitError");
    } catch (const FitError& e) {
        CHECK(e.rank < e.required_rank);
        CHECK(e.required_rank == 13);
    }
    // with a penalty the same data is fine
    CHECK_NOTHROW(fit(t, y, 1.0, 0.5, kn));
}

TEST_CASE("reconstruction metric arithmetic", "[hpfit]") {
    auto m = reconstruction_metrics({1.0, 2.0}, {1.0, 2.0});
    CHECK(m.mse == 0.0);
    CHECK(m.max_abs == 0.0);
    CHECK(m.rel == 0.0);

    m = reconstruction_metrics({1.0, 0.0}, {0.0, 0.0});
    CHECK(m.mse == Approx(0.5));
    CHECK(m.max_abs == Approx(1.0));
    CHECK(m.rel == Approx(1.0));

    m = reconstruction_metrics({3.0, 4.0}, {0.0, 0.0});
    CHECK(m.mse == Approx(12.5));
    CHECK(m.max_abs == Approx(4.0));
    CHECK(m.rel == Approx(1.0));

    CHECK_THROWS_AS(reconstruction_metrics({0.0, 0.0}, {1.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(reconstruction_metrics({1.0}, {1.0, 2.0}), std::invalid_argument);
}
