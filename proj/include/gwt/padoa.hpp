#pragma once

// Definability of time and space from the remaining primitives, bounded
// searches for Padoa witness pairs, and the timeless five-tuple view.
//
// The interpretation of a function primitive is its extensional graph: the
// set of (part, [source,] last component, value) tuples. Parts and sources are
// keyed by geometric coordinates so graphs of models on different grids can
// be compared.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gwt/axioms.hpp"
#include "gwt/structure.hpp"

namespace gwt {

enum class PrimitiveId { SPACE, TIME, E, H, S, M };

std::string to_string(PrimitiveId p);
/// Throws PreconditionError on an unknown name.
PrimitiveId parse_primitive(const std::string& s);

/// A cell (kind 0) or a face normal to axis kind-1, in grid coordinates.
struct AtomKey {
  std::uint8_t kind = 0;
  std::int32_t x = 0;
  std::int32_t y = 0;
  std::int32_t z = 0;
  friend auto operator<=>(const AtomKey&, const AtomKey&) = default;
};

struct GraphRow {
  std::vector<AtomKey> part;
  std::vector<AtomKey> source;  // empty for E and S
  double last = 0.0;
  double value = 0.0;
  friend bool operator==(const GraphRow&, const GraphRow&) = default;
  friend auto operator<=>(const GraphRow&, const GraphRow&) = default;
};

/// Sorted, duplicate-free rows. Two graphs are equal when spacing and rows are.
struct Graph {
  double spacing = 1.0;
  std::vector<GraphRow> rows;
  friend bool operator==(const Graph&, const Graph&) = default;
};

/// A model given only by the graphs of its four functions.
struct ModelTables {
  Graph energy;
  Graph heat;
  Graph entropy;
  Graph entropy_flux;
  /// Every universe member was listed as a source (false when sampled).
  bool exhaustive = true;
};

/// Graphs of E, H, S, M. Measures contribute their value on every atom and on
/// every tabulated part whose value differs from the atom sum; fluxes list
/// every declared source of the (possibly sampled) material universe.
ModelTables tables(const ThermoModel& m, const EnumerationLimits& lim = {});

/// Sorted distinct last components of a graph.
std::vector<double> last_components(const Graph& g);

/// Projection of the last component of E; throws IllFormedModel if the
/// projections of H, S, M disagree or do not form a time grid.
TimeGrid define_time(const ModelTables& t);

/// Cells at a given spacing.
struct CellSet {
  double spacing = 1.0;
  std::vector<CellCoord> cells;
  friend bool operator==(const CellSet&, const CellSet&) = default;
};

/// Every cell occurring in a part of some function's domain. An empty result
/// sets `warning` when supplied.
CellSet define_space(const ModelTables& t, std::string* warning = nullptr);

struct ModelFamily {
  ThermoModel base;
  /// Maximum number of candidates examined before giving up.
  std::size_t budget = 100000;
  /// Largest sample count tried when relabeling time.
  std::size_t max_samples = 4;
  /// Candidates are compared by full graphs while the base has at most this
  /// many rows; above it the projection argument alone decides.
  std::size_t cross_check_rows = 20000;
  Tolerance tol;
  EnumerationLimits lim;
  /// Value of the control constant g in the extended system.
  double dummy = 0.0;
};

struct WitnessPair {
  ThermoModel first;
  ThermoModel second;
  std::string target;
  /// Values of g when the target is the control constant.
  std::optional<std::pair<double, double>> dummy;
  std::vector<std::string> certificate;
};

struct SearchResult {
  enum class Outcome { witness, none_found, inconclusive };
  Outcome outcome = Outcome::none_found;
  std::optional<WitnessPair> witness;
  std::size_t examined = 0;
  std::size_t family_size = 0;
  /// Rejection reasons with candidate counts, in first-seen order.
  std::vector<std::pair<std::string, std::size_t>> rejected;
  std::vector<std::string> certificate;
};

std::string to_string(SearchResult::Outcome o);

/// Looks for two models of the axioms that agree on every primitive except
/// `target`. Throws PreconditionError if the base model violates an axiom.
SearchResult independence_search(const ModelFamily& family, PrimitiveId target);

/// The same search for the control constant g, which occurs in no axiom.
SearchResult control_search(const ModelFamily& family);

/// A function whose last component is an anonymous index: one slice per value.
template <typename Slice>
using Sliced = std::vector<std::pair<double, Slice>>;

struct TimelessFlux {
  bool exchange_based = true;
  Sliced<FluxSnapshot> slices;
  friend bool operator==(const TimelessFlux&, const TimelessFlux&) = default;
};

/// The five-tuple: space (grid and body) and the four functions.
struct TimelessModel {
  Grid grid;
  Region body;
  Sliced<TabulatedMeasure> energy;
  TimelessFlux heat;
  Sliced<TabulatedMeasure> entropy;
  TimelessFlux entropy_flux;
  friend bool operator==(const TimelessModel&, const TimelessModel&) = default;
};

/// Requires a structurally valid model.
TimelessModel to_timeless(const ThermoModel& m);

/// Rebuilds the six-tuple, with the index set defined as the common last
/// component. Throws IllFormedModel if the four functions disagree.
ThermoModel with_defined_time(const TimelessModel& tm);

/// Id in the timeless suite for a check id of the full suite.
std::string nt_id(const std::string& id);
/// Ids of the timeless suite in report order.
const std::vector<std::string>& nt_ids();

CheckReport check_all_NT(const TimelessModel& tm, const Tolerance& tol = {},
                         const EnumerationLimits& lim = {});

}  // namespace gwt
