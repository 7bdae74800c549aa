#include <doctest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <random>

#include "fringe/bessel.hpp"
#include "fringe/errors.hpp"
#include "fringe/overlap.hpp"
#include "fringe/timescales.hpp"

using namespace fringe;

namespace {

// J0 by its power series in 50-digit arithmetic.
double j0_series_oracle(double x) {
  using big = boost::multiprecision::cpp_dec_float_50;
  big term = 1, sum = 1, q = big(x) * big(x) / 4;
  for (int k = 1; k < 400; ++k) {
    term *= -q / (big(k) * big(k));
    sum += term;
    if (abs(term) < big("1e-45") * (1 + abs(sum))) break;
  }
  return sum.convert_to<double>();
}

ExperimentGeometry fig1() {
  ExperimentGeometry g;
  g.L0 = 2.0;
  g.sigma_x0 = 0.5;
  return g;
}

}  // namespace

TEST_CASE("J0 reference values") {
  CHECK(std::abs(bessel_j0(1.0) - 0.765197686558) < 1e-10);
  CHECK(std::abs(bessel_j0(1.0) - j0_series_oracle(1.0)) < 1e-15);
  CHECK(bessel_j0(0.0) == 1.0);
  // first zero
  CHECK(std::abs(bessel_j0(2.404825557695773)) < 1e-14);
}

TEST_CASE("J0 against a high-precision series on [0, 30]") {
  double worst = 0.0;
  for (double x = 0.0; x <= 30.0; x += 0.037) worst = std::max(worst, std::abs(bessel_j0(x) - j0_series_oracle(x)));
  CHECK(worst < 1e-12);
}

TEST_CASE("J0 against the standard library everywhere") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double x = std::pow(10.0, -3.0 + 6.0 * U(rng));
    worst = std::max(worst, std::abs(bessel_j0(x) - std::cyl_bessel_j(0.0, x)));
    CHECK(bessel_j0(-x) == bessel_j0(x));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("dephasing period average equals J0") {
  for (double c : {0.0, 0.1, 1.0, 2.0, 5.0}) {
    CAPTURE(c);
    const auto avg = dephasing_average_oracle(c, 0.0, 1.0, 4096);
    CHECK(std::abs(avg.real - bessel_j0(c)) < 1e-8);
    CHECK(std::abs(avg.imag) < 1e-8);
    // rotation of (A, B) leaves the average unchanged
    const auto rot = dephasing_average_oracle(c * 0.6, c * 0.8, 3.0, 4096);
    CHECK(std::abs(rot.real - dephasing_factor(c * 0.6, c * 0.8)) < 1e-8);
  }
  CHECK_THROWS_AS(dephasing_average_oracle(1.0, 0.0, 1.0, 10), ValidationError);
  CHECK_THROWS_AS(dephasing_average_oracle(1.0, 0.0, 0.0, 4096), ValidationError);
}

TEST_CASE("composite rules") {
  const std::vector<double> v = {0.6, 0.3, 0.5};
  const auto sum = composite_overlap(v, CompositeRule::paper_sum);
  CHECK(sum.value == 1.0);
  CHECK(sum.saturated);
  const std::vector<double> small = {0.1, 0.2};
  CHECK(composite_overlap(small, CompositeRule::paper_sum).value == doctest::Approx(0.3));
  CHECK(!composite_overlap(small, CompositeRule::paper_sum).saturated);
  CHECK(composite_overlap(v, CompositeRule::product).value == doctest::Approx(0.09));
  CHECK(composite_overlap(v, CompositeRule::max).value == 0.6);
  CHECK_THROWS_AS(composite_overlap(std::vector<double>{}, CompositeRule::max), ValidationError);
}

TEST_CASE("qbm overlap decays and orders with gamma0") {
  const auto s0 = initial_state(fig1(), InitConvention::physical);
  const auto weak = integrate(s0, EnvironmentSpec::qbm(0.0001, 300.0), 1.0, 1e-9);
  const auto strong = integrate(s0, EnvironmentSpec::qbm(0.01, 300.0), 1.0, 1e-9);
  const auto iso = integrate(s0, EnvironmentSpec::isolated(), 1.0, 1e-9);
  for (double t : {0.05, 0.2, 0.5, 1.0}) {
    CHECK(overlap_qbm(iso, 2.0, t).value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(overlap_qbm(strong, 2.0, t).value < overlap_qbm(weak, 2.0, t).value);
  }
  CHECK(overlap_qbm(strong, 2.0, 0.2).value < 0.02);  // interference term all but gone
}

TEST_CASE("scattering overlap closed form") {
  CHECK(overlap_scattering(2.0, 1.5, 0.3) == doctest::Approx(std::exp(-2.0 * 2.25 * 0.3)));
  const auto s0 = initial_state(fig1(), InitConvention::physical);
  const auto traj = integrate(s0, EnvironmentSpec::isolated(), 1.0, 1e-9);
  CHECK(model_overlap(traj, EnvironmentSpec::scattering(0.1), 2.0, 0.5).value ==
        doctest::Approx(std::exp(-0.1 * 4.0 * 0.5)));
  CHECK(model_overlap(traj, EnvironmentSpec::dephasing(1.0, 0.0), 2.0, 0.5).value ==
        doctest::Approx(bessel_j0(1.0)));
}

TEST_CASE("decoherence time conventions differ by 24") {
  const double slope = decoherence_time_qbm(0.001, 300.0, 2.0, TimeConvention::slope);
  const double iv = decoherence_time_qbm(0.001, 300.0, 2.0, TimeConvention::section_iv);
  CHECK(slope == doctest::Approx(1.0 / (2.0 * 0.001 * 300.0 * 4.0)));
  CHECK(iv / slope == doctest::Approx(24.0));
  CHECK(std::isinf(decoherence_time_qbm(0.0, 300.0, 2.0, TimeConvention::slope)));
  CHECK(decoherence_time_scattering(1.0, 2.0) == doctest::Approx(0.75));
  const auto rep = decoherence_time(
      EnvironmentSpec::composite({EnvironmentSpec::qbm(0.001, 300.0), EnvironmentSpec::scattering(1.0)},
                                 CompositeRule::max),
      fig1(), TimeConvention::slope);
  CHECK(rep.t_D.has_value());
  CHECK(*rep.t_Lambda_efold == doctest::Approx(0.25));
  CHECK_THROWS_AS(decoherence_time(EnvironmentSpec::dephasing(1, 0), fig1(), TimeConvention::slope),
                  ValidationError);
}

TEST_CASE("bound and decoherence time are inverse") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-4.0, 4.0);
  for (int i = 0; i < 500; ++i) {
    const double kBT = std::pow(10.0, U(rng)), L0 = std::pow(10.0, U(rng)), tL = std::pow(10.0, U(rng));
    for (auto conv : {TimeConvention::slope, TimeConvention::section_iv}) {
      const double g = gamma0_bound(kBT, L0, tL, conv);
      CHECK(std::abs(decoherence_time_qbm(g, kBT, L0, conv) / tL - 1.0) < 1e-12);
    }
    const double lam = lambda_bound(L0, tL);
    CHECK(std::abs(decoherence_time_scattering(lam, L0) / tL - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(gamma0_bound(1, 1, 0, TimeConvention::slope), ValidationError);
}

TEST_CASE("overlap at flight time") {
  const auto q = EnvironmentSpec::qbm(0.001, 300.0);
  CHECK(overlap_at_flight_time(q, 2.0, 0.05, TimeConvention::slope) ==
        doctest::Approx(std::exp(-0.05 * 2.0 * 0.001 * 300.0 * 4.0)));
  const auto s = EnvironmentSpec::scattering(2.0);
  CHECK(overlap_at_flight_time(s, 1.0, 0.3, TimeConvention::slope) == doctest::Approx(std::exp(-0.6)));
  CHECK(overlap_at_flight_time(s, 1.0, 0.3, TimeConvention::section_iv) == doctest::Approx(std::exp(-0.2)));
  CHECK(overlap_at_flight_time(EnvironmentSpec::dephasing(1.0, 0.0), 1.0, 0.3, TimeConvention::slope) ==
        doctest::Approx(bessel_j0(1.0)));
}
