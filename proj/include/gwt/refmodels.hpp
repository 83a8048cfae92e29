#pragma once

// Reference models: explicit finite-volume heat conduction with Clausius
// entropy accounting, plus single-axiom mutants used as falsification
// fixtures.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gwt/structure.hpp"

namespace gwt {

struct HeatParams {
  int nx = 2;
  int ny = 2;
  int nz = 2;
  double h = 1.0;
  double c = 1.0;   // heat capacity per volume
  double kc = 1.0;  // conductivity
  double r = 0.0;   // radiative coupling between radiator pairs
  std::vector<std::pair<CellId, CellId>> radiators;
  double dt = 0.05;
  int steps = 4;
  /// Initial temperatures; drawn from [1, 2] with `seed` when empty.
  std::vector<double> theta0;
  std::uint64_t seed = 1;
  /// Optional reservoir cell whose capacity is c * bath_capacity.
  std::optional<CellId> bath;
  double bath_capacity = 1.0e6;

  friend bool operator==(const HeatParams&, const HeatParams&) = default;
};

/// Throws ParameterError if the parameters violate an invariant.
void validate(const HeatParams& p);

/// Temperature field at every sample (steps + 1 rows).
std::vector<std::vector<double>> temperatures(const HeatParams& p);

ThermoModel generate_heat_grid(const HeatParams& p);

/// 2x2x2 grid, unit constants, radiator pair (0, 5) with r = 0.5, dt = 0.05,
/// 4 steps, fixed seed.
HeatParams default_scenario();

/// Mutation targets in canonical order.
const std::vector<std::string>& mutation_targets();

/// Axiom id in the check report that a mutation target breaks.
std::string report_id(const std::string& target);

/// Applies a targeted perturbation. Throws PreconditionError for an unknown
/// target or a model with no room for that perturbation.
ThermoModel mutate(const ThermoModel& m, const std::string& target);

}  // namespace gwt
