#include "random_grid.hpp"

#include "orliczmp/functional.hpp"
#include "orliczmp/orlicz_space.hpp"

#include <doctest.h>

#include <numbers>

using namespace orliczmp;
using testing_util::random_grid;

namespace {

// G = v^2/2, K = x^2/2, W = 0 on [-pi, pi]: the harmonic oscillator action.
Problem oscillator(int m = 256) {
  Problem pr(parse_gfunction("power:2,0.5"));
  pr.name = "oscillator";
  pr.T = std::numbers::pi;
  pr.m = m;
  pr.K.value = [](double, const Vec& x) { return 0.5 * x.squaredNorm(); };
  pr.K.gradient = [](double, const Vec& x) -> Vec { return x; };
  return pr;
}

GridFunction sin_grid(double T, int m) {
  return GridFunction::sample(T, m, 1, [](double t) { return Vec::Constant(1, std::sin(t)); });
}

std::vector<Problem> all_builtins() {
  return {builtin_problem("example1", {{"f_amp", "0.3"}}),
          builtin_problem("example2", {{"f_amp", "0.2"}}),
          builtin_problem("example2", {{"N", "2"}, {"G", "double_power:2,3"}, {"F", "power:4"}}),
          builtin_problem("plaplacian_test", {{"f_amp", "0.1"}})};
}

}  // namespace

TEST_CASE("action") {
  SUBCASE("zero function has zero action") {
    for (const auto& pr : all_builtins()) {
      INFO(pr.name);
      CHECK(std::abs(action(pr, GridFunction::zeros(pr.T, pr.m, pr.dim()))) < 1e-12);
    }
  }
  SUBCASE("oscillator on sin t equals pi") {
    CHECK(action(oscillator(), sin_grid(std::numbers::pi, 256)) == doctest::Approx(std::numbers::pi).epsilon(1e-4));
  }
  SUBCASE("tent on example1 is negative for large xi") {
    const auto pr = builtin_problem("example1");
    Vec v(2);
    v << 1.0, 0.0;
    CHECK(action(pr, tent_function(8.0, v, pr.T, pr.m)) < 0.0);
  }
  SUBCASE("tent action eventually negative and decreasing") {
    const auto pr = builtin_problem("example1");
    const Vec v = Vec::Unit(2, 1);
    double prev = INFINITY;
    bool negative = false;
    for (double xi = 2.5; xi < 40.0; xi *= 1.25) {
      const double J = action(pr, tent_function(xi, v, pr.T, pr.m));
      if (negative) {
        CHECK(J < 0.0);
        CHECK(J < prev);
      }
      negative = negative || J < 0.0;
      prev = J;
    }
    CHECK(negative);
  }
  SUBCASE("non-finite potential names t and u") {
    auto pr = oscillator(16);
    pr.W.value = [](double, const Vec& x) { return x[0] > 0.5 ? NAN : 0.0; };
    pr.W.gradient = [](double, const Vec& x) -> Vec { return Vec::Zero(x.size()); };
    try {
      action(pr, sin_grid(pr.T, 16));
      FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("t = ") != std::string::npos);
      CHECK(msg.find("u = ") != std::string::npos);
    }
  }
  SUBCASE("cyclic shift invariance for autonomous problems") {
    Problem pr(parse_gfunction("double_power:2,3"));
    pr.T = 1.0;
    pr.m = 40;
    pr.K.value = [](double, const Vec& x) { return x.squaredNorm() + std::pow(x.norm(), 3); };
    pr.W.value = [](double, const Vec& x) { return 0.1 * std::pow(x.squaredNorm(), 2); };
    std::mt19937_64 rng(1);
    const auto u = random_grid(1.0, 40, 1, rng);
    const double J0 = action(pr, u);
    for (int s : {1, 7, 39}) {
      Values shifted(40, 1);
      for (int i = 0; i < 40; ++i) shifted(i, 0) = u.values()((i + s) % 40, 0);
      CHECK(action(pr, GridFunction(1.0, shifted)) == doctest::Approx(J0).epsilon(1e-13));
    }
  }
}

TEST_CASE("action gradient") {
  SUBCASE("matches central differences on every built-in") {
    std::mt19937_64 rng(2);
    for (const auto& base : all_builtins()) {
      Problem pr = base;
      pr.m = 32;
      const auto u = random_grid(pr.T, pr.m, pr.dim(), rng, 3) * 0.7;
      const auto g = action_gradient(pr, u);
      double worst = 0.0;
      for (int i = 0; i < pr.m; ++i)
        for (int k = 0; k < pr.dim(); ++k) {
          const double hstep = 1e-6 * std::max(1.0, std::abs(u.values()(i, k)));
          Values up = u.values(), dn = u.values();
          up(i, k) += hstep;
          dn(i, k) -= hstep;
          const double fd = (action(pr, GridFunction(pr.T, up)) - action(pr, GridFunction(pr.T, dn))) / (2 * hstep);
          worst = std::max(worst, std::abs(fd - g.values()(i, k)) / std::max(std::abs(g.values()(i, k)), 1e-3));
        }
      INFO(pr.name);
      CHECK(worst < 1e-6);
    }
  }
  SUBCASE("oscillator gradient discretizes -u'' + u") {
    const int m = 256;
    const auto pr = oscillator(m);
    const auto u = sin_grid(pr.T, m);
    const auto g = action_gradient(pr, u);
    const double h = u.step();
    double err = 0.0;
    for (int i = 0; i < m; ++i) err = std::max(err, std::abs(g.values()(i, 0) / h - 2.0 * std::sin(u.time(i))));
    CHECK(err < 1e-3);
    CHECK(el_residual(pr, u) == doctest::Approx(2.0).epsilon(1e-3));
  }
  SUBCASE("residual of zero is positive when zero is not critical") {
    const auto pr = builtin_problem("plaplacian_test", {{"f_amp", "0.5"}});
    CHECK(el_residual(pr, GridFunction::zeros(pr.T, pr.m, 1)) > 0.1);
    const auto free = builtin_problem("plaplacian_test");
    CHECK(el_residual(free, GridFunction::zeros(free.T, free.m, 1)) == 0.0);
  }
}

TEST_CASE("tent function") {
  const double T = 2.0;
  Vec v(2);
  v << 0.0, 1.0;
  const auto e = tent_function(2 * (T + 1), v, T, 64);
  CHECK((e.at(32) - 2 * (T + 1) * v).norm() < 1e-12);  // t = 0
  CHECK((e.at(0) - 2.0 * v).norm() < 1e-12);            // e(-T) = xi / (T + 1) v
  CHECK(e.max_abs() == doctest::Approx(6.0));
  CHECK_THROWS_AS(tent_function(T + 1, v, T, 64), std::invalid_argument);
}

TEST_CASE("built-in problems") {
  SUBCASE("example1 K and W as printed") {
    const auto pr = builtin_problem("example1");
    Vec x(2);
    x << 0.3, -0.4;
    const double t = 0.7, r2 = 0.25;
    const double G = 0.09 + std::pow(0.7, 4);
    CHECK(pr.K(t, x) == doctest::Approx((2 + std::sin(t)) * G + r2 * r2 * std::cos(t) * std::cos(t)));
    CHECK(pr.W(t, x) == doctest::Approx(std::pow(r2, 2.5) * (std::exp(t * t * (r2 - 1)) - 1) / (t * t + 1) + std::sin(t)));
    CHECK(pr.a_at(t) == doctest::Approx(std::sin(t)));
    CHECK(pr.b == 2.0);
    CHECK(pr.mu == 5.0);
    CHECK(pr.kappa_at(-1.0) == doctest::Approx(5 * std::sin(-1.0)));
    const auto pos = builtin_problem("example1", {{"kappa", "positive_part"}});
    CHECK(pos.kappa_at(-1.0) == 0.0);
    CHECK(pos.kappa_at(1.0) == doctest::Approx(5 * std::sin(1.0)));
  }
  SUBCASE("example2 weights") {
    const auto pr = builtin_problem("example2", {{"lambda", "2"}});
    const Vec x = Vec::Constant(1, 0.5);
    const double t = 0.4;
    const double a = 2 + std::pow(std::tanh(t), 2), b = 1 + 1 / std::pow(std::cosh(t), 2);
    CHECK(pr.V(t, x) == doctest::Approx(a * 0.25 - 2 * b * 0.0625));
  }
  SUBCASE("unknown names and keys are rejected") {
    CHECK_THROWS_AS(builtin_problem("nope"), std::invalid_argument);
    CHECK_THROWS_AS(builtin_problem("example1", {{"lamda", "1"}}), std::invalid_argument);
    CHECK_THROWS_AS(builtin_problem("plaplacian_test", {{"T", "x"}}), std::invalid_argument);
  }
  SUBCASE("forcing scale") {
    const auto pr = builtin_problem("plaplacian_test", {{"f_amp", "0.5"}});
    const auto s = pr.with_forcing_scale(3.0);
    CHECK(s.force(0.5)[0] == doctest::Approx(3.0 * pr.force(0.5)[0]));
    const auto none = builtin_problem("plaplacian_test").with_forcing_scale(3.0);
    CHECK_FALSE(none.has_forcing());
  }
}
