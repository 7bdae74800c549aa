#include <doctest.h>

#include <cmath>
#include <random>

#include "fringe/config.hpp"
#include "fringe/errors.hpp"

using namespace fringe;

namespace {

bool has_code(const ValidationError& e, const std::string& code) {
  for (const auto& i : e.issues())
    if (i.code == code) return true;
  return false;
}

std::vector<std::string> codes_of(const ExperimentGeometry& g, const UnitSystem& u) {
  std::vector<std::string> out;
  for (const auto& i : geometry_issues(g, u)) out.push_back(i.code);
  return out;
}

ExperimentGeometry fig1() {
  ExperimentGeometry g;
  g.L0 = 2.0;
  g.sigma_x0 = 0.5;
  return g;
}

}  // namespace

TEST_CASE("unit system: natural length unit for a neutron") {
  const auto u = UnitSystem::si_for_mass(1.67492750e-27);
  // sqrt(hbar * 1 s / M)
  CHECK(u.length_unit() == doctest::Approx(std::sqrt(1.054571817e-34 / 1.67492750e-27)).epsilon(1e-14));
  const double x = 63.1e-6;
  CHECK(u.length_from_natural(u.length_to_natural(x)) == doctest::Approx(x).epsilon(1e-15));
  CHECK(u.area_rate_from_natural(u.area_rate_to_natural(5.5e11)) == doctest::Approx(5.5e11).epsilon(1e-15));
  // kBT / hbar in s^-1 at 300 K
  CHECK(u.energy_to_natural(si::boltzmann * 300.0) ==
        doctest::Approx(si::boltzmann * 300.0 / si::hbar).epsilon(1e-15));
}

TEST_CASE("geometry: reference natural-unit set has no issues") {
  CHECK(geometry_issues(fig1(), UnitSystem::natural()).empty());
}

TEST_CASE("geometry: every violation is reported") {
  ExperimentGeometry g;
  g.L0 = -1.0;
  g.sigma_x0 = 0.0;
  g.sigma_y0 = -1.0;
  g.k_y = std::nan("");
  const auto codes = codes_of(g, UnitSystem::natural());
  for (const char* c : {"NONPOSITIVE_L0", "NONPOSITIVE_SIGMA_X0", "NONPOSITIVE_SIGMA_Y0", "NONFINITE_K_Y"})
    CHECK(std::find(codes.begin(), codes.end(), c) != codes.end());
  try {
    validate_geometry(g, UnitSystem::natural());
    FAIL("expected throw");
  } catch (const ValidationError& e) {
    CHECK(e.issues().size() >= 4);
  }
}

TEST_CASE("geometry: sigma larger than L0 and non-unit mass in natural mode") {
  auto g = fig1();
  g.sigma_x0 = 3.0;
  g.M = 2.0;
  const auto codes = codes_of(g, UnitSystem::natural());
  CHECK(std::find(codes.begin(), codes.end(), "SIGMA_EXCEEDS_L0") != codes.end());
  CHECK(std::find(codes.begin(), codes.end(), "MASS_NOT_UNIT") != codes.end());
}

TEST_CASE("geometry: t_L must match optics") {
  auto g = fig1();
  g.L = 5.0;
  g.lambda_dB = 2.0;
  const double tl = *g.flight_time_from_optics(1.0);
  CHECK(tl == doctest::Approx(10.0 / (2.0 * M_PI)));
  g.t_L = tl;
  CHECK(geometry_issues(g, UnitSystem::natural()).empty());
  g.t_L = tl * (1.0 + 1e-6);
  const auto codes = codes_of(g, UnitSystem::natural());
  CHECK(std::find(codes.begin(), codes.end(), "TL_INCONSISTENT") != codes.end());
}

TEST_CASE("geometry: SI round trip through the natural frame") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    ExperimentGeometry g;
    g.M = std::pow(10.0, -27 + U(rng));
    g.L0 = std::pow(10.0, -5 + U(rng));
    g.sigma_x0 = g.L0 * 0.1;
    g.sigma_y0 = g.L0;
    g.k_y = std::pow(10.0, U(rng));
    g.L = 1.0 + std::abs(U(rng));
    g.lambda_dB = std::pow(10.0, -10 + U(rng));
    const auto u = UnitSystem::si_for_mass(g.M);
    const auto back = geometry_from_natural(geometry_to_natural(g, u), u);
    CHECK(back.L0 == doctest::Approx(g.L0).epsilon(1e-14));
    CHECK(back.sigma_x0 == doctest::Approx(g.sigma_x0).epsilon(1e-14));
    CHECK(back.k_y == doctest::Approx(g.k_y).epsilon(1e-14));
    CHECK(*back.L == doctest::Approx(*g.L).epsilon(1e-14));
    CHECK(*back.lambda_dB == doctest::Approx(*g.lambda_dB).epsilon(1e-14));
    // flight time is unit-free in seconds
    CHECK(*geometry_to_natural(g, u).flight_time(1.0) ==
          doctest::Approx(*g.flight_time(si::hbar)).epsilon(1e-12));
  }
}

TEST_CASE("environment: coefficients of the ohmic high-temperature bath") {
  const auto env = EnvironmentSpec::qbm(0.001, 300.0);
  const auto k = derive_coefficients(env, UnitSystem::natural());
  CHECK(k.gamma == 0.001);
  CHECK(k.D == doctest::Approx(2.0 * 0.001 * 300.0));
  CHECK(k.f == 0.0);
  const auto kf = derive_coefficients(EnvironmentSpec::qbm(0.001, 300.0, true), UnitSystem::natural());
  CHECK(kf.f == doctest::Approx(1.0 / 300.0));
  CHECK(positivity_transient(env, UnitSystem::natural()) == doctest::Approx(1.0 / 300.0));
  const auto iso = derive_coefficients(EnvironmentSpec::isolated(), UnitSystem::natural());
  CHECK((iso.gamma == 0.0 && iso.D == 0.0 && iso.f == 0.0));
}

TEST_CASE("environment: scattering and dephasing do not drive the ansatz") {
  const auto u = UnitSystem::natural();
  CHECK_THROWS_AS(derive_coefficients(EnvironmentSpec::scattering(1.0), u), ValidationError);
  CHECK(dynamics_coefficients(EnvironmentSpec::scattering(1.0), u).D == 0.0);
  const auto comp = EnvironmentSpec::composite(
      {EnvironmentSpec::qbm(0.01, 100.0), EnvironmentSpec::scattering(2.0)}, CompositeRule::max);
  CHECK(dynamics_coefficients(comp, u).D == doctest::Approx(2.0));
}

TEST_CASE("environment: range violations") {
  auto bad = EnvironmentSpec::qbm(-1.0, 0.0);
  try {
    validate_environment(bad);
    FAIL("expected throw");
  } catch (const ValidationError& e) {
    CHECK(has_code(e, "NEGATIVE_GAMMA0"));
    CHECK(has_code(e, "NONPOSITIVE_KBT"));
  }
  CHECK_THROWS_AS(validate_environment(EnvironmentSpec::scattering(-1.0)), ValidationError);
  CHECK_THROWS_AS(validate_environment(EnvironmentSpec::composite({}, CompositeRule::max)),
                  ValidationError);
  const auto two_qbm = EnvironmentSpec::composite(
      {EnvironmentSpec::qbm(1, 1), EnvironmentSpec::qbm(1, 1)}, CompositeRule::max);
  try {
    validate_environment(two_qbm);
    FAIL("expected throw");
  } catch (const ValidationError& e) {
    CHECK(has_code(e, "COMPOSITE_MULTIPLE_QBM"));
  }
}

TEST_CASE("environment: SI to natural") {
  const auto u = UnitSystem::si_for_mass(1.67492750e-27);
  EnvironmentSpec env = EnvironmentSpec::composite(
      {EnvironmentSpec::qbm(5e-12, si::boltzmann * 300.0), EnvironmentSpec::scattering(5.5e11)},
      CompositeRule::max);
  const auto nat = environment_to_natural(env, u);
  CHECK(nat.composite_members[0].gamma0 == 5e-12);
  CHECK(nat.composite_members[0].kBT == doctest::Approx(si::boltzmann * 300.0 / si::hbar));
  CHECK(nat.composite_members[1].Lambda ==
        doctest::Approx(5.5e11 * u.length_unit() * u.length_unit()));
}

TEST_CASE("config: unknown keys are rejected") {
  auto tree = nlohmann::json::parse(R"({"geometry": {"L0": 2, "sigma_x0": 0.5, "bogus": 1},
                                        "environment": {"kind": "isolated"}, "extra": 3})");
  try {
    parse_config(tree);
    FAIL("expected throw");
  } catch (const ValidationError& e) {
    CHECK(has_code(e, "UNKNOWN_KEY"));
  }
}

TEST_CASE("config: slit separation maps to half distance") {
  auto tree = nlohmann::json::parse(R"({"geometry": {"slit_separation": 4, "sigma_x0": 0.5},
                                        "environment": {"kind": "qbm", "gamma0": 0.001, "kBT": 300}})");
  const auto cfg = parse_config(tree);
  CHECK(cfg.geometry.L0 == 2.0);
  CHECK(cfg.environment.kind == EnvKind::qbm_ohmic);
}

TEST_CASE("config: shipped presets load and validate") {
  for (const char* name : {"paper-fig1", "paper-fig2", "neutron-zeilinger", "fullerene-c70"}) {
    CAPTURE(name);
    const auto cfg = load_config(std::string(FRINGE_CONFIG_DIR) + "/" + name + ".json");
    CHECK(!cfg.source.empty());
    CHECK(cfg.natural_geometry().L0 > 0.0);
  }
  const auto n = load_config(std::string(FRINGE_CONFIG_DIR) + "/neutron-zeilinger.json");
  CHECK(n.units.mode == UnitMode::si);
  CHECK(n.geometry.L0 == doctest::Approx(63.1e-6));
  // neutron flight time M lambda L / h
  CHECK(*n.geometry.flight_time(si::hbar) ==
        doctest::Approx(1.67492750e-27 * 1.845e-9 * 5.0 / si::planck).epsilon(1e-9));
}
