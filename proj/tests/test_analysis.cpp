#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fringe/bessel.hpp"
#include "fringe/errors.hpp"
#include "fringe/fit.hpp"
#include "fringe/minimize.hpp"
#include "fringe/visibility.hpp"

using namespace fringe;

namespace {

ExperimentGeometry geom(double L0 = 2.0) {
  ExperimentGeometry g;
  g.L0 = L0;
  g.sigma_x0 = 0.5;
  return g;
}

IntensityProfile make_profile(const std::vector<double>& xs, const std::vector<double>& ys) {
  IntensityProfile p;
  p.xs = xs;
  p.values = ys;
  return p;
}

// Far-field geometry in natural units with Gamma of order one half at t_L.
ExperimentGeometry farfield_geom() {
  ExperimentGeometry g;
  g.L0 = 0.5;
  g.sigma_x0 = 0.2;
  g.lambda_dB = 1.0;
  g.L = 2.0 * std::numbers::pi * 200.0;
  return g;
}

}  // namespace

TEST_CASE("extrema of a constructed cosine pattern") {
  // P = 2 + cos(k x) exp(-x^2/200): extrema near x = n pi / k
  const double k = 3.0;
  std::vector<double> xs, ys;
  for (int i = 0; i <= 4000; ++i) {
    const double x = -10.0 + 20.0 * i / 4000;
    xs.push_back(x);
    ys.push_back(2.0 + std::cos(k * x));
  }
  const auto ex = find_extrema(xs, ys);
  REQUIRE(!ex.entries.empty());
  for (std::size_t i = 0; i < ex.entries.size(); ++i) {
    const auto& e = ex.entries[i];
    const double n = std::round(e.x * k / std::numbers::pi);
    CHECK(std::abs(e.x - n * std::numbers::pi / k) < 1e-4);
    CHECK((e.kind == ExtremumKind::max) == (static_cast<long>(n) % 2 == 0));
    if (i > 0) CHECK(e.kind != ex.entries[i - 1].kind);
  }
  // fringe index zero is the central maximum
  for (const auto& e : ex.entries)
    if (e.fringe_index == 0) CHECK(std::abs(e.x) < 1e-4);
}

TEST_CASE("plateaus collapse to their midpoint") {
  const std::vector<double> xs = {0, 1, 2, 3, 4, 5, 6, 7};
  const std::vector<double> ys = {0, 1, 2, 2, 2, 1, 0, 0.5};
  const auto ex = find_extrema(xs, ys);
  REQUIRE(ex.entries.size() == 2);
  CHECK(ex.entries[0].x == 3.0);
  CHECK(ex.entries[0].kind == ExtremumKind::max);
  CHECK(ex.entries[1].kind == ExtremumKind::min);
  CHECK_THROWS_AS(find_extrema(std::vector<double>{0, 1, 2}, std::vector<double>{0, 1, 0}), ValidationError);
}

TEST_CASE("fully decohered profile has a single central maximum") {
  const auto traj = integrate(initial_state(geom(), InitConvention::physical), EnvironmentSpec::isolated(), 2.0, 1e-9);
  const auto s = traj.at(2.0);
  std::vector<double> xs, ys;
  for (int i = 0; i <= 2000; ++i) {
    const double x = -12.0 + 24.0 * i / 2000;
    xs.push_back(x);
    ys.push_back(intensity(s, 2.0, 0.0, x));
  }
  const auto ex = find_extrema(xs, ys);
  REQUIRE(ex.entries.size() == 1);
  CHECK(ex.entries[0].kind == ExtremumKind::max);
  CHECK(std::abs(ex.entries[0].x) < 1e-6);
  CHECK_THROWS_AS(fringe_visibility(ex, 1), ValidationError);
}

TEST_CASE("visibility definition") {
  using K = ExtremumKind;
  ExtremaList ex;
  ex.entries = {{1, 1, K::max}, {2, 0, K::min}, {3, 3, K::max}, {4, 1, K::min},
                {5, 3, K::max}, {6, 0, K::min}, {7, 1, K::max}};
  // nearest max to 0 is at x=1; index 1 is the max at 3 with minima 0 and 1
  CHECK(fringe_visibility(ex, 1) == doctest::Approx((3 - 0.5) / (3 + 0.5)));
  CHECK(fringe_visibility(ex, 0) == 1.0);  // only neighbour has Imin = 0
  CHECK(fringe_visibility(ex, 2) == doctest::Approx((3 - 0.5) / (3 + 0.5)));
  CHECK(fringe_position(ex, 3) == 7);
  CHECK_THROWS_AS(fringe_visibility(ex, 4), ValidationError);
  CHECK_THROWS_AS(fringe_visibility(ex, -1), ValidationError);
  ExtremaList lone;
  lone.entries = {{0, 1, K::max}};
  CHECK_THROWS_AS(fringe_visibility(lone, 0), ValidationError);
}

TEST_CASE("visibility is scale free") {
  const auto env = EnvironmentSpec::qbm(0.001, 300.0);
  const auto traj = integrate(initial_state(geom(), InitConvention::physical), env, 2.0, 1e-9);
  const auto p = intensity_profile(traj, env, 2.0, 1.2);
  const double nu = fringe_visibility(p, 1);
  for (double c : {0.25, 2.0, 1024.0, 1.0 / 65536}) {
    auto q = p;
    for (auto& v : q.values) v *= c;
    CHECK(fringe_visibility(q, 1) == nu);  // bitwise: powers of two scale exactly
  }
  for (double c : {3.7, 1e-5, 42.0}) {
    auto q = p;
    for (auto& v : q.values) v *= c;
    CHECK(std::abs(fringe_visibility(q, 1) - nu) <= 4 * std::numeric_limits<double>::epsilon() * nu);
  }
}

TEST_CASE("visibility traces order with coupling") {
  std::vector<double> times;
  for (int i = 0; i <= 40; ++i) times.push_back(0.7 + 0.04 * i);
  std::vector<VisibilityTrace> traces;
  for (double g0 : {0.0001, 0.0005, 0.001, 0.002}) {
    const auto env = EnvironmentSpec::qbm(g0, 300.0);
    const auto traj = integrate(initial_state(geom(), InitConvention::physical), env, 2.5, 1e-9);
    traces.push_back(visibility_trace(traj, env, 2.0, 1, times));
  }
  for (std::size_t k = 1; k < traces.size(); ++k) {
    const auto& a = traces[k - 1];
    const auto& b = traces[k];
    for (std::size_t i = 0; i < a.times.size(); ++i) {
      for (std::size_t j = 0; j < b.times.size(); ++j) {
        if (b.times[j] == a.times[i]) CHECK(b.nu_values[j] <= a.nu_values[i] + 1e-12);
      }
    }
  }
}

TEST_CASE("isolated trace rises towards one, dephased trace levels off above zero") {
  std::vector<double> times;
  for (double t = 0.7; t <= 17.0; t *= 1.3) times.push_back(t);
  const auto traj = integrate(initial_state(geom(), InitConvention::physical), EnvironmentSpec::isolated(), 17.0, 1e-9);
  const auto iso = visibility_trace(traj, EnvironmentSpec::isolated(), 2.0, 0, times);
  REQUIRE(iso.times.size() == times.size());
  for (std::size_t i = 1; i < iso.nu_values.size(); ++i) CHECK(iso.nu_values[i] > iso.nu_values[i - 1]);
  CHECK(iso.nu_values.back() > 0.99);
  const auto deph = EnvironmentSpec::dephasing(1.0, 0.0);
  const auto tr = visibility_trace(traj, deph, 2.0, 0, times);
  REQUIRE(tr.times.size() == times.size());
  const auto n = tr.nu_values.size();
  CHECK(std::abs(tr.nu_values[n - 1] - tr.nu_values[n - 2]) < 0.01);  // levelled off
  CHECK(std::abs(tr.nu_values.back() / bessel_j0(1.0) - 1.0) < 0.1);
}

TEST_CASE("trace reports fringes that have not formed yet") {
  const auto env = EnvironmentSpec::qbm(0.001, 300.0);
  const auto traj = integrate(initial_state(geom(), InitConvention::physical), env, 3.0, 1e-9);
  const std::vector<double> times = {0.1, 0.3, 1.0, 1.5};
  const auto tr = visibility_trace(traj, env, 2.0, 1, times);
  CHECK(tr.not_formed.size() == 2);
  CHECK(tr.times.size() == 2);
  for (double nu : tr.nu_values) CHECK((nu >= 0.0 && nu <= 1.0));
  const std::vector<double> out = {5.0};
  CHECK_THROWS_AS(visibility_trace(traj, env, 2.0, 1, out), ValidationError);
}

TEST_CASE("theoretical visibility") {
  CHECK(visibility_theoretical(0.3, 0.7, 2.0, 0.0) == 0.3);
  CHECK(visibility_theoretical(bessel_j0(1.0), 5.0, 2.0, 0.0) == doctest::Approx(0.76520).epsilon(1e-5));
  CHECK(visibility_theoretical(1.0, 0.1, 2.0, 1.0) == doctest::Approx(1.0 / std::cosh(1.6)));
}

TEST_CASE("visibility at fixed time falls with slit distance") {
  const double tL = 0.05;
  double prev = 2.0;
  for (double L0 : {1.0, 1.5, 2.0, 2.5, 3.0}) {
    const auto env = EnvironmentSpec::qbm(0.001, 300.0);
    CHECK(decoherence_time_qbm(0.001, 300.0, L0, TimeConvention::slope) > tL);
    const auto traj = integrate(initial_state(geom(L0), InitConvention::physical), env, tL, 1e-9);
    const auto s = traj.back();
    const double nu = visibility_theoretical(overlap_from_state(s, L0).value, s.C, L0, 0.0);
    CHECK(nu < prev);
    prev = nu;
  }
}

TEST_CASE("bounded minimizer") {
  int calls = 0;
  auto f = [&](double x) { ++calls; return (x - 1.234567) * (x - 1.234567); };
  const auto r = minimize_bounded(f, -5.0, 5.0, 1e-10, 1e-12);
  CHECK(r.converged);
  CHECK(r.x == doctest::Approx(1.234567).epsilon(1e-8));
  CHECK(r.n_eval == calls);
  const auto edge = minimize_bounded([](double x) { return x; }, 2.0, 3.0);
  CHECK(edge.x == doctest::Approx(2.0).epsilon(1e-5));
  const auto lg = minimize_bounded_log([](double x) { return std::pow(std::log(x / 3e-9), 2); }, 1e-12, 1e-3);
  CHECK(lg.x == doctest::Approx(3e-9).epsilon(1e-6));
  CHECK_THROWS_AS(minimize_bounded(f, 1.0, 1.0), ValidationError);
  CHECK_THROWS_AS(minimize_bounded_log(f, 0.0, 1.0), ValidationError);
}

TEST_CASE("fit recovers a synthetic gamma0") {
  const auto g = farfield_geom();
  const double kBT = 300.0;
  const double t_L = *g.flight_time(1.0);
  // gamma0 giving Gamma(t_L) = 0.5 under the slope convention
  const double truth = std::log(2.0) / (2.0 * kBT * g.L0 * g.L0 * t_L);
  const auto base = EnvironmentSpec::qbm(1.0, kBT);
  std::vector<double> xs;
  const double half = 3.0 / std::sqrt(coefficients_from_experiment(g).C_exp);
  for (int i = 0; i < 401; ++i) xs.push_back(-half + 2 * half * i / 400);
  const auto data = synthetic_dataset(g, environment_with(base, FitParam::gamma0, truth), xs, 1000.0, 0.01, 99);
  const auto r1 = fit_parameter(data, base, g, FitParam::gamma0, truth / 100, truth * 100);
  CHECK(std::abs(r1.best_value / truth - 1.0) < 0.01);
  CHECK(r1.flags.empty());
  CHECK(r1.sse >= 0.0);
  CHECK(r1.scale == doctest::Approx(1000.0).epsilon(0.02));
  const auto r2 = fit_parameter(data, base, g, FitParam::gamma0, truth / 100, truth * 100);
  CHECK(r1.best_value == r2.best_value);
  CHECK(r1.sse == r2.sse);
  CHECK(r1.n_eval == r2.n_eval);
}

TEST_CASE("fully coherent data pins Lambda to the lower bound") {
  const auto g = farfield_geom();
  std::vector<double> xs;
  const double half = 3.0 / std::sqrt(coefficients_from_experiment(g).C_exp);
  for (int i = 0; i < 201; ++i) xs.push_back(-half + 2 * half * i / 200);
  const auto data = synthetic_dataset(g, EnvironmentSpec::isolated(), xs, 500.0, 0.01, 5);
  const double lam_max = lambda_bound(g.L0, *g.flight_time(1.0));
  const auto r = fit_parameter(data, EnvironmentSpec::isolated(), g, FitParam::Lambda, lam_max * 1e-8, lam_max * 10);
  CHECK(r.best_value == lam_max * 1e-8);
  CHECK(!r.flags.empty());
  CHECK((r.flags[0] == "AT_LOWER_BOUND" || r.flags[0] == "FLAT_OBJECTIVE"));
}

TEST_CASE("fit input validation") {
  const auto g = farfield_geom();
  ExperimentalDataset small;
  for (int i = 0; i < 5; ++i) {
    small.xs.push_back(i);
    small.counts.push_back(1);
    small.sigma.push_back(1);
  }
  CHECK_THROWS_AS(fit_parameter(small, EnvironmentSpec::isolated(), g, FitParam::gamma0, 1, 2), ValidationError);
  auto bad = small;
  bad.xs[3] = bad.xs[2];
  CHECK_THROWS_AS(validate_dataset(bad), ValidationError);
  CHECK_THROWS_AS(parse_fit_param("mass"), ValidationError);
}
