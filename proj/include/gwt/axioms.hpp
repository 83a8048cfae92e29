#pragma once

// One executable check per axiom of the structure, plus the exterior identity
// (THM1) and the radiative/conductive decomposition of the entropy flux
// (DECOMP).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gwt/enumeration.hpp"
#include "gwt/structure.hpp"

namespace gwt {

struct Tolerance {
  double eps_balance = 1e-9;  // first-law residual and "vanishes" threshold
  double eps_ineq = 1e-12;    // allowed second-law slack
};

/// Throws PreconditionError on negative or non-finite tolerances.
void validate(const Tolerance& t);

enum class Verdict { pass, fail, declared };

std::string to_string(Verdict v);

/// Minimal bound scalar per time sample and the element attaining it.
struct BoundSeries {
  std::string name;
  std::vector<double> values;
  std::vector<std::string> attained_by;
};

/// Ordered key/value description of a violating tuple.
using Witness = std::vector<std::pair<std::string, std::string>>;

struct CheckResult {
  std::string id;
  Verdict verdict = Verdict::pass;
  bool vacuous = false;
  std::vector<std::string> notes;
  std::optional<Witness> witness;
  double max_residual = 0.0;
  /// Signed extreme of the checked quantity where meaningful (minimum
  /// entropy production for T16).
  std::optional<double> extreme;
  double coverage = 1.0;
  std::size_t checked = 0;
  std::vector<BoundSeries> bounds;
};

struct CheckReport {
  std::vector<CheckResult> results;
  bool pass() const;
  const CheckResult& at(const std::string& id) const;
};

/// T1..T17, THM1, DECOMP in report order.
const std::vector<std::string>& axiom_ids();

CheckResult check_axiom(const ThermoModel& m, const std::string& id, const Tolerance& tol = {},
                        const EnumerationLimits& lim = {});

CheckReport check_all(const ThermoModel& m, const Tolerance& tol = {},
                      const EnumerationLimits& lim = {});

/// Smallest a with |mu(P)| <= a V(P) for every part with a cell, and the
/// attaining part.
std::pair<double, Part> volume_bound(const TabulatedMeasure& mu);

/// ddt_S(A) - M(A, A^e) at sample k for the closed subbody A.
double entropy_production(const ThermoModel& m, const Region& a, std::size_t k);

/// ddt_E(A) - H(A, A^e) at sample k for the closed subbody A.
double energy_residual(const ThermoModel& m, const Region& a, std::size_t k);

}  // namespace gwt
