#include <doctest.h>

#include <cmath>

#include "hilbert/asymptotics.hpp"
#include "hilbert/constants.hpp"
#include "hilbert/errors.hpp"
#include "oracles.hpp"

using namespace hilbert;

TEST_CASE("W_n root against the multiprecision table") {
    for (const auto& row : oracle::kWnTable) {
        const auto s = solve_wn(row.n);
        const double n = static_cast<double>(row.n);
        CHECK(std::abs(s.exact * std::log(1.0 / s.exact) - 1.0 / n) * n < 1e-14);
        CHECK(1.0 / s.exact == doctest::Approx(row.inverse_exact).epsilon(1e-9));
        CHECK(1.0 / s.first_order == doctest::Approx(row.n_log_n).epsilon(1e-9));
        // The root sits below the second-order guess, which sits below 1/(n ln n).
        CHECK(s.exact < s.second_order);
        CHECK(s.second_order < s.first_order);
    }
    CHECK_THROWS_AS(solve_wn(2), InvalidArgument);
}

TEST_CASE("moment branches") {
    const auto box = DensityModel::unit_cube(1);
    const Point x({0.5});
    CHECK(predict_moment(1.0, 999, x, box).value == doctest::Approx(1e-3));
    CHECK(predict_moment(0.0, 999, x, box).value == 1.0);
    const double nln = 1000.0 * std::log(1000.0);
    CHECK(predict_moment(2.0, 1000, x, box).value == doctest::Approx(1.0 / nln));
    CHECK(predict_moment(3.0, 1000, x, box).value == doctest::Approx(0.5 / nln));
    // Interior of U[0,1]: kappa_beta = 2 * 0.5^(1-beta) / (1-beta).
    const double beta = 0.5;
    const double kb = 2.0 * std::pow(0.5, 1.0 - beta) / (1.0 - beta);
    CHECK(predict_moment(beta, 1000, x, box).value == doctest::Approx(kb / std::pow(2.0 * nln, beta)).epsilon(1e-10));
    const auto neg = predict_moment(-0.5, 1000, x, box);
    CHECK(neg.conjecture);
    CHECK(std::isfinite(neg.value));
    const auto div = predict_moment(-1.0, 1000, x, box);
    CHECK(div.divergent);
    CHECK(std::isinf(div.value));
}

TEST_CASE("kappa_beta at the centre of a unit ball") {
    for (std::size_t d : {1u, 2u}) {
        const auto ball = DensityModel::uniform_ball(std::vector<double>(d, 0.0), 1.0);
        const Point c(std::vector<double>(d, 0.0));
        for (double beta : {0.25, 0.5, 0.75}) {
            // Normalizing by V_d rho = 1 for the unit ball.
            CHECK(kappa_beta(c, ball, beta) == doctest::Approx(1.0 / (1.0 - beta)).epsilon(1e-9));
        }
    }
}

TEST_CASE("kappa_beta for the triangular density") {
    CHECK(kappa_beta(Point({0.5}), DensityModel::triangular(), 0.5) ==
          doctest::Approx(oracle::kKappaHalfTriangular).epsilon(1e-9));
}

TEST_CASE("kappa for the sine target on U[0,1]") {
    const auto box = DensityModel::unit_cube(1);
    const auto f = TargetFunction::sine();
    CHECK(kappa(Point({0.3}), box, f) == doctest::Approx(oracle::kKappaSine03).epsilon(1e-9));
    CHECK(kappa(Point({0.1}), box, f) == doctest::Approx(oracle::kKappaSine01).epsilon(1e-9));
    CHECK(kappa(Point({0.25}), box, f) == doctest::Approx(oracle::kKappaSine025).epsilon(1e-9));
    CHECK(std::abs(kappa(Point({0.5}), box, f)) < 1e-9);
}

TEST_CASE("lambda and the rho = 0 limit") {
    CHECK(lambda_weight(Point({2.0}), DensityModel::unit_cube(1)) == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    const auto tri = DensityModel::triangular();
    CHECK(lambda_weight(Point({0.0}), tri) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(kappa(Point({0.0}), tri, TargetFunction::linear({1.0}, 0.0)) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rho_zero_limit(Point({0.0}), tri, TargetFunction::linear({1.0}, 0.0)) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(rho_zero_limit(Point({0.0}), tri, TargetFunction::polynomial({0.0, 0.0, 1.0})) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK_THROWS_AS(lambda_weight(Point({0.5}), DensityModel::unit_cube(1)), DomainError);
    CHECK_THROWS_AS(rho_zero_limit(Point({0.5}), tri, TargetFunction::linear({1.0}, 0.0)), DomainError);
}

TEST_CASE("extrapolation limits") {
    const auto box = DensityModel::unit_cube(1);
    const auto f = TargetFunction::linear({1.0}, 0.0);
    CHECK(extrapolation_limit(Point({2.0}), box, f) == doctest::Approx(oracle::kExtrapolationAt2).epsilon(1e-10));
    CHECK(extrapolation_limit(Point({100.0}), box, f) == doctest::Approx(oracle::kExtrapolationAt100).epsilon(1e-10));
    // Mirror symmetry.
    CHECK(extrapolation_limit(Point({-1.0}), box, f) == doctest::Approx(1.0 - oracle::kExtrapolationAt2).epsilon(1e-10));
    CHECK(extrapolation_limit(Point({3.0}), box, TargetFunction::constant(4.0)) == doctest::Approx(4.0));
    CHECK(rho_mean(box, f) == doctest::Approx(0.5));
    CHECK_THROWS_AS(extrapolation_limit(Point({0.5}), box, f), DomainError);
    CHECK_THROWS_AS(extrapolation_limit(Point({1.0}), box, f), DomainError);
}

TEST_CASE("two-dimensional quadrature on the square") {
    const auto sq = DensityModel::unit_cube(2);
    // Linear target: kappa vanishes at the centre by symmetry.
    CHECK(std::abs(kappa(Point({0.5, 0.5}), sq, TargetFunction::linear({1.0, 1.0}, 0.0))) < 1e-8);
    // lambda outside the square is positive and decreasing with distance.
    const double near = lambda_weight(Point({1.5, 0.5}), sq);
    const double far = lambda_weight(Point({3.0, 0.5}), sq);
    CHECK(near > far);
    CHECK(far > 0.0);
}

TEST_CASE("variance and bias predictions") {
    const auto box = DensityModel::unit_cube(1);
    const Point x({0.5});
    const auto v = predict_variance(x, 1000, NoiseModel::gaussian(0.1), box, TargetFunction::sine());
    CHECK(v.value == doctest::Approx(0.01 / std::log(1000.0)));
    const auto v0 = predict_variance(x, 1000, NoiseModel::gaussian(0.0), box, TargetFunction::sine());
    CHECK(v0.value == 0.0);
    CHECK(!v0.validity_note.empty());
    const auto b = predict_bias(Point({0.3}), 10000, box, TargetFunction::sine());
    CHECK(b.mean_shift.value == doctest::Approx(oracle::kKappaSine03 / (2.0 * std::log(10000.0))).epsilon(1e-8));
    CHECK(b.squared_bias.value == doctest::Approx(b.mean_shift.value * b.mean_shift.value));
    const auto b5 = predict_bias(x, 10000, box, TargetFunction::sine());
    CHECK(b5.mean_shift.value == 0.0);
    CHECK(!b5.mean_shift.validity_note.empty());
    // Boundary: omega = 1/2 doubles the shift relative to an interior point with the same kappa.
    const auto edge = predict_bias(Point({0.0}), 1000, box, TargetFunction::linear({1.0}, 0.0));
    CHECK(edge.mean_shift.value == doctest::Approx(edge.kappa / (1.0 * std::log(1000.0))).epsilon(1e-10));
    CHECK_THROWS_AS(predict_bias(Point({2.0}), 1000, box, TargetFunction::sine()), DomainError);
}

TEST_CASE("risk and classification bound") {
    const auto box = DensityModel::unit_cube(1);
    const Point x({0.5});
    const auto r = predict_regression_risk(x, 1000, box, TargetFunction::constant(1.0), NoiseModel::gaussian(0.1));
    CHECK(r.value == doctest::Approx(0.01 / std::log(1000.0)));
    const auto f = TargetFunction::logistic(4.0, 0.5);
    const Point q({0.5 + std::log(3.0) / 4.0});
    CHECK(predict_classification_bound(q, 10000, 1.0, f, NoiseModel::bernoulli()).value ==
          doctest::Approx(0.2853597998).epsilon(1e-9));
    CHECK(predict_classification_bound(q, 10000, 0.5, f, NoiseModel::bernoulli()).value ==
          doctest::Approx(0.3777299299).epsilon(1e-9));
    CHECK_THROWS_AS(predict_classification_bound(q, 10000, 1.5, f, NoiseModel::bernoulli()), InvalidArgument);
}

TEST_CASE("lagrange scaling") {
    CHECK(lagrange_prediction(0.0) == 1.0);
    CHECK(lagrange_prediction(3.0) == 0.25);
    const auto box = DensityModel::unit_cube(1);
    const double z = lagrange_scale_z(Point({0.6}), Point({0.5}), 400, box, ScaleMode::implicit_wn);
    CHECK(z == doctest::Approx(2.0 * 0.1 * 3232.390949807415).epsilon(1e-10));
    const double zt = lagrange_scale_z(Point({0.6}), Point({0.5}), 400, box, ScaleMode::leading_order);
    CHECK(zt == doctest::Approx(2.0 * 0.1 * 2396.585818843193).epsilon(1e-10));
}

TEST_CASE("scaling distribution and exceedance") {
    CHECK(scaling_pdf(1.0) == 0.25);
    CHECK(scaling_cdf(1.0) == 0.5);
    CHECK(scaling_cdf(0.0) == 0.0);
    const auto e = predict_exceedance(0.5, 1000, 0.0);
    const double nln = 1000.0 * std::log(1000.0);
    CHECK(e.heuristic == doctest::Approx(1.0 / nln));
    CHECK(e.chebyshev == doctest::Approx(4.0 / nln));
    CHECK(e.markov == doctest::Approx(0.002));
    CHECK_THROWS_AS(predict_exceedance(1.0, 1000), InvalidArgument);
}

TEST_CASE("quadrature in three dimensions reports a Monte Carlo error") {
    const auto ball = DensityModel::uniform_ball({0.0, 0.0, 0.0}, 1.0);
    const auto r = kappa_beta_detailed(Point({0.0, 0.0, 0.0}), ball, 0.5);
    CHECK(r.monte_carlo);
    // Radial integral is direction independent at the centre, so the estimate is exact.
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-8));
    const auto off = kappa_beta_detailed(Point({0.3, 0.0, 0.0}), ball, 0.5);
    CHECK(off.error > 0.0);
}
