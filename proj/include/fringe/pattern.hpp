#pragma once

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fringe/integrator.hpp"
#include "fringe/overlap.hpp"

namespace fringe {

enum class Normalization { raw, unit_peak, unit_area };
Normalization parse_normalization(std::string_view text);
std::string_view to_string(Normalization n);

/// Phase argument of the far-field cosine: half_L0 uses L0 (literal far-field
/// formula), full_2L0 uses the full separation 2 L0 (matches cos(4 B L0 x)).
enum class SeparationConvention { half_L0, full_2L0 };
SeparationConvention parse_separation_convention(std::string_view text);
std::string_view to_string(SeparationConvention c);

struct IntensityProfile {
  double t = 0.0;
  std::vector<double> xs;
  std::vector<double> values;
  OverlapValue gamma_used;
  std::string model;
  Normalization normalization = Normalization::raw;
  bool grid_too_narrow = false;
};

/// Two-packet reduced density matrix rho(x, x', t) with packets at +-L0.
std::complex<double> density_matrix(const AnsatzState& s, double L0, double x, double xp);

/// -N~(t): log of the prefactor in
///   P = exp(-N~) exp(-4C (x^2 - L0^2)) [cosh(8 C L0 x) + Gamma cos(4 B L0 x)],
/// chosen so that P equals the diagonal of `density_matrix` when Gamma is the
/// ansatz overlap exp(-4 L0^2 (A - C)).
double intensity_log_prefactor(const AnsatzState& s, double L0);

/// Raw screen intensity. Throws for Gamma outside [0, 1].
double intensity(const AnsatzState& s, double L0, double gamma, double x);

/// 2001 uniform points over +-(L0 + 6 sigma_t), sigma_t = sqrt(1/(8 C)).
std::vector<double> default_grid(const AnsatzState& s, double L0, int points = 2001);

/// Samples the intensity at t with Gamma from the environment model.
IntensityProfile intensity_profile(const Trajectory& traj, const EnvironmentSpec& env, double L0,
                                   double t, std::span<const double> grid,
                                   Normalization normalization);
IntensityProfile intensity_profile(const Trajectory& traj, const EnvironmentSpec& env, double L0,
                                   double t, Normalization normalization = Normalization::raw);

void normalize(IntensityProfile& profile, Normalization normalization);

/// Trapezoid integral of the profile values over its grid.
double trapezoid(std::span<const double> xs, std::span<const double> ys);

struct ExperimentCoefficients {
  double B_exp = 0.0;
  double C_exp = 0.0;
  /// t_L / (M sigma_x0 L0 / hbar); the far-field form needs this >> 1.
  double far_field_ratio = 0.0;
  bool far_field_warning = false;
};

/// B = 2 pi / (lambda L), C = (2 sqrt(2) pi sigma_x0 / (lambda L))^2 (natural units).
ExperimentCoefficients coefficients_from_experiment(const ExperimentGeometry& geom);

/// Far-screen intensity with n^2 = 1 (natural units).
double farfield_intensity(const ExperimentGeometry& geom, double gamma_tL, double x,
                          SeparationConvention convention = SeparationConvention::full_2L0);

IntensityProfile farfield_profile(const ExperimentGeometry& geom, double gamma_tL,
                                  std::span<const double> xs, SeparationConvention convention,
                                  Normalization normalization);

}  // namespace fringe
