#pragma once

namespace fringe {

namespace si {
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double planck = 6.62607015e-34;      // J s
inline constexpr double boltzmann = 1.380649e-23;     // J/K
inline constexpr double atomic_mass = 1.66053906660e-27;  // kg
}  // namespace si

enum class UnitMode { natural, si };

/// Unit system of the external representation. Internally every computation
/// runs with hbar = M = 1 and the second as time unit; `UnitSystem` maps SI
/// quantities onto that frame (length unit sqrt(hbar * 1s / M)).
struct UnitSystem {
  UnitMode mode = UnitMode::natural;
  double hbar = 1.0;
  double mass = 1.0;
  double kB = 1.0;

  static UnitSystem natural() { return {}; }
  static UnitSystem si_for_mass(double mass_kg);

  /// Natural length unit expressed in external length units.
  double length_unit() const;
  /// Natural energy unit (hbar per second) in external energy units.
  double energy_unit() const { return hbar; }

  double length_to_natural(double x) const { return x / length_unit(); }
  double length_from_natural(double x) const { return x * length_unit(); }
  double energy_to_natural(double e) const { return e / energy_unit(); }
  double energy_from_natural(double e) const { return e * energy_unit(); }
  /// Rates per area per time, e.g. the scattering localization rate.
  double area_rate_to_natural(double r) const { return r * length_unit() * length_unit(); }
  double area_rate_from_natural(double r) const {
    return r / (length_unit() * length_unit());
  }
};

}  // namespace fringe
