#include "fringe/units.hpp"

#include <cmath>

namespace fringe {

UnitSystem UnitSystem::si_for_mass(double mass_kg) {
  return UnitSystem{UnitMode::si, si::hbar, mass_kg, si::boltzmann};
}

double UnitSystem::length_unit() const {
  // Time unit is one second in both modes.
  return std::sqrt(hbar / mass);
}

}  // namespace fringe
