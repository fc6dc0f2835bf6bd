#include <catch2/catch.hpp>

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "hpsplinet/hbasis.hpp"
#include "hpsplinet/rng.hpp"

using namespace hps;

namespace {

const std::vector<double> kAlphas{0.1, 0.5, 1.0, 2.0, 5.0};
const std::vector<double> kSteps{0.05, 0.1, 0.5};

UniformKnots test_knots(double h) { return UniformKnots{0.0, h, 9}; }

// dense least-squares reproduction: coefficients of f in the basis from a
// fine-grid solve, plus the relative sup residual
struct Reproduction {
    Eigen::VectorXd coeffs;
    double rel_residual;
};

Reproduction reproduce(const HyperbolicBasis& basis, const std::function<double(double)>& f,
                       int grid_points = 200) {
    const auto& kn = basis.knots();
    std::vector<double> t(grid_points);
    for (int i = 0; i < grid_points; ++i)
        t[i] = kn.t_min() + (kn.t_max() - kn.t_min()) * i / (grid_points - 1);
    Eigen::MatrixXd B = design_matrix(basis, t);
    Eigen::VectorXd y(grid_points);
    for (int i = 0; i < grid_points; ++i) y(i) = f(t[i]);
    Eigen::VectorXd a = B.colPivHouseholderQr().solve(y);
    double res = (B * a - y).lpNorm<Eigen::Infinity>();
    return {a, res / y.lpNorm<Eigen::Infinity>()};
}

}  // namespace

TEST_CASE("cubic limit has the cardinal B-spline values", "[hbasis]") {
    auto basis = HyperbolicBasis::build(0.0, UniformKnots{0.0, 1.0, 9});
    REQUIRE(basis.degenerate());
    // center value fixed by normalization, knot values follow from the solve
    CHECK(basis.prototype_eval(2.0) == Approx(2.0 / 3.0).margin(1e-12));
    CHECK(basis.prototype_eval(1.0) == Approx(1.0 / 6.0).margin(1e-12));
    CHECK(basis.prototype_eval(3.0) == Approx(1.0 / 6.0).margin(1e-12));
    CHECK(basis.prototype_eval(0.5) == Approx(0.5 * 0.5 * 0.5 / 6.0).margin(1e-12));
}

TEST_CASE("basis vanishes exactly outside the five-knot support", "[hbasis]") {
    for (double alpha : kAlphas)
        for (double h : kSteps) {
            auto basis = HyperbolicBasis::build(alpha, test_knots(h));
            for (int j = 0; j < basis.num_basis(); ++j) {
                double c = basis.center(j);
                for (double off : {2.0 * h, 2.5 * h, 10.0 * h})
                    for (int order : {0, 1, 2}) {
                        CHECK(basis.eval(j, c + off, order) == 0.0);
                        CHECK(basis.eval(j, c - off, order) == 0.0);
                    }
            }
        }
}

TEST_CASE("interior basis values: endpoint zero, symmetry, flat center", "[hbasis]") {
    for (double alpha : kAlphas) {
        auto basis = HyperbolicBasis::build(alpha, test_knots(0.1));
        const int j = 4;
        const double c = basis.center(j);
        const double h = 0.1;
        CHECK(basis.eval(j, basis.support_left(j)) == 0.0);
        double peak = basis.eval(j, c);
        for (double u : {0.3 * h, 0.9 * h, 1.5 * h})
            CHECK(std::abs(basis.eval(j, c + u) - basis.eval(j, c - u)) < 1e-10 * peak);
        CHECK(std::abs(basis.eval(j, c, 1)) < 1e-10 * peak / h);
        // bell shape: strictly positive strictly inside the support
        for (double u = -1.9; u < 1.95; u += 0.1)
            CHECK(basis.eval(j, c + u * h) > 0.0);
    }
}

TEST_CASE("second-derivative continuity at the knots", "[hbasis]") {
    for (double alpha : kAlphas)
        for (double h : kSteps) {
            auto basis = HyperbolicBasis::build(alpha, test_knots(h));
            for (int order : {0, 1, 2}) {
                // scale: sup of this derivative over the support
                double sup = 0.0;
                for (int seg = 0; seg < 4; ++seg)
                    for (int i = 0; i <= 20; ++i)
                        sup = std::max(sup, std::abs(basis.segment_eval(seg, h * i / 20.0, order)));
                for (int seg = 0; seg < 3; ++seg) {
                    double left = basis.segment_eval(seg, h, order);
                    double right = basis.segment_eval(seg + 1, 0.0, order);
                    CHECK(std::abs(left - right) < 1e-8 * sup);
                }
            }
        }
}

TEST_CASE("segments satisfy the annihilating differential equation", "[hbasis]") {
    for (double alpha : kAlphas)
        for (double h : kSteps) {
            auto basis = HyperbolicBasis::build(alpha, test_knots(h));
            REQUIRE_FALSE(basis.degenerate());
            const double a = basis.alpha_eff();
            for (int seg = 0; seg < 4; ++seg)
                for (int i = 1; i < 20; ++i) {
                    double u = h * i / 20.0;
                    double d4 = basis.segment_eval(seg, u, 4);
                    double d2 = basis.segment_eval(seg, u, 2);
                    double d0 = basis.segment_eval(seg, u, 0);
                    double resid = d4 - 2.0 * a * a * d2 + a * a * a * a * d0;
                    double scale = std::abs(d4) + 2.0 * a * a * std::abs(d2) +
                                   a * a * a * a * std::abs(d0);
                    CHECK(std::abs(resid) < 1e-8 * scale);
                }
        }
}

TEST_CASE("interior basis functions are translates of one prototype", "[hbasis]") {
    for (double alpha : {0.5, 2.0}) {
        auto basis = HyperbolicBasis::build(alpha, test_knots(0.1));
        for (int j = 2; j < basis.num_basis() - 2; ++j)
            for (double u = -0.19; u < 0.2; u += 0.03) {
                double t = basis.center(j) + u;
                CHECK(basis.eval(j + 1, t + 0.1) == Approx(basis.eval(j, t)).margin(1e-12));
            }
    }
}

TEST_CASE("small-alpha switch agrees with the exponential representation", "[hbasis]") {
    for (double h : kSteps) {
        double alpha_above = 1.1e-4 / h;
        double alpha_below = 0.9e-4 / h;
        auto exp_rep = HyperbolicBasis::build(alpha_above, test_knots(h));
        auto cubic_rep = HyperbolicBasis::build(alpha_below, test_knots(h));
        REQUIRE_FALSE(exp_rep.degenerate());
        REQUIRE(cubic_rep.degenerate());
        for (int i = 0; i <= 200; ++i) {
            double x = 4.0 * h * i / 200.0;
            CHECK(std::abs(exp_rep.prototype_eval(x) - cubic_rep.prototype_eval(x)) < 1e-6);
        }
    }
}

TEST_CASE("basis reproduces the exponentials it is built from", "[hbasis]") {
    // oracle run for the headline case first: alpha=1, h=0.1 on [0,1]
    {
        auto basis = HyperbolicBasis::build(1.0, UniformKnots{0.0, 0.1, 11});
        auto rep = reproduce(basis, [](double t) { return std::exp(t); });
        CHECK(rep.rel_residual < 1e-8);
    }
    for (double alpha : kAlphas)
        for (double h : kSteps) {
            auto basis = HyperbolicBasis::build(alpha, test_knots(h));
            auto up = reproduce(basis, [&](double t) { return std::exp(alpha * t); });
            auto down = reproduce(basis, [&](double t) { return std::exp(-alpha * t); });
            CHECK(up.rel_residual < 1e-8);
            CHECK(down.rel_residual < 1e-8);
        }
}

TEST_CASE("design matrix rows are sparse and positive", "[hbasis]") {
    auto basis = HyperbolicBasis::build(1.0, UniformKnots{0.0, 0.1, 11});

    SECTION("at an interior knot only three functions are active") {
        Eigen::MatrixXd row = design_matrix(basis, {0.5});
        int nonzeros = 0;
        for (int j = 0; j < row.cols(); ++j)
            if (row(0, j) != 0.0) ++nonzeros;
        CHECK(nonzeros <= 3);
    }

    SECTION("between knots at most four, and rows sum to something positive") {
        Rng rng(7);
        for (int i = 0; i < 50; ++i) {
            double t = rng.uniform(0.0, 1.0);
            Eigen::MatrixXd row = design_matrix(basis, {t});
            int nonzeros = 0;
            for (int j = 0; j < row.cols(); ++j)
                if (row(0, j) != 0.0) ++nonzeros;
            CHECK(nonzeros <= 4);
            CHECK(row.sum() > 0.0);
        }
    }

    SECTION("cubic fallback knot weights are the classical thirds") {
        auto cubic = HyperbolicBasis::build(0.0, UniformKnots{0.0, 1.0, 9});
        Eigen::MatrixXd row = design_matrix(cubic, {4.0});
        std::vector<double> nz;
        for (int j = 0; j < row.cols(); ++j)
            if (std::abs(row(0, j)) > 1e-14) nz.push_back(row(0, j));
        REQUIRE(nz.size() == 3);
        CHECK(nz[0] == Approx(1.0 / 6.0).margin(1e-10));
        CHECK(nz[1] == Approx(2.0 / 3.0).margin(1e-10));
        CHECK(nz[2] == Approx(1.0 / 6.0).margin(1e-10));
    }

    SECTION("points outside the knot range are rejected") {
        CHECK_THROWS_AS(design_matrix(basis, {-0.2}), std::domain_error);
        CHECK_THROWS_AS(design_matrix(basis, {1.2}), std::domain_error);
    }
}

TEST_CASE("construction rejects overflow-range frequencies", "[hbasis]") {
    CHECK_THROWS_AS(HyperbolicBasis::build(400.0, UniformKnots{0.0, 0.1, 9}),
                    std::invalid_argument);
    CHECK_THROWS_AS(HyperbolicBasis::build(std::nan(""), UniformKnots{0.0, 0.1, 9}),
                    std::invalid_argument);
    CHECK_THROWS_AS(HyperbolicBasis::build(1.0, UniformKnots{0.0, 0.1, 3}),
                    std::invalid_argument);
    // sign of alpha is irrelevant
    auto plus = HyperbolicBasis::build(2.0, test_knots(0.1));
    auto minus = HyperbolicBasis::build(-2.0, test_knots(0.1));
    for (double x = 0.05; x < 0.4; x += 0.05)
        CHECK(plus.prototype_eval(x) == Approx(minus.prototype_eval(x)).margin(1e-14));
}
