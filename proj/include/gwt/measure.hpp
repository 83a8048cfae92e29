#pragma once

// Finite signed measures on the finite algebra generated by the cells and
// faces of a host region. Values are stored as densities, so a GridMeasure is
// additive by construction; TabulatedMeasure adds explicit per-part values on
// top, which is how non-additive set functions enter the system.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gwt/geometry.hpp"

namespace gwt {

class GridMeasure {
 public:
  GridMeasure() = default;
  /// Zero measure whose host is the closed region `host`.
  GridMeasure(const Grid& g, const Region& host);

  const Grid& grid() const { return grid_; }
  const Region& host() const { return host_; }

  double cell_density(CellId c) const { return cells_.at(c.value); }
  double face_density(FaceId f) const { return faces_.at(f.value); }
  const std::vector<double>& cell_densities() const { return cells_; }
  const std::vector<double>& face_densities() const { return faces_; }

  bool hosts(CellId c) const { return host_cells_.at(c.value) != 0; }
  bool hosts(FaceId f) const { return host_faces_.at(f.value) != 0; }
  bool hosts(const Part& p) const;

  /// Throws DomainError if the element is outside the host.
  void set(CellId c, double v);
  void set(FaceId f, double v);
  void add(CellId c, double v) { set(c, cell_density(c) + v); }
  void add(FaceId f, double v) { set(f, face_density(f) + v); }

  /// Sum of cell densities then face densities over the part (index order).
  double eval(const Part& p) const;
  double total() const;
  bool all_finite() const;

  /// Host atoms in index order: cells then faces.
  std::vector<CellId> host_cells() const { return host_.cells(); }
  std::vector<FaceId> host_faces() const;

  friend bool operator==(const GridMeasure&, const GridMeasure&) = default;

 private:
  Grid grid_;
  Region host_;
  std::vector<std::uint8_t> host_cells_;
  std::vector<std::uint8_t> host_faces_;
  std::vector<double> cells_;
  std::vector<double> faces_;
};

/// Density measure plus explicit values on individual parts. Explicit values
/// take precedence over the density sum.
class TabulatedMeasure {
 public:
  TabulatedMeasure() = default;
  explicit TabulatedMeasure(GridMeasure base) : base_(std::move(base)) {}

  const GridMeasure& densities() const { return base_; }
  GridMeasure& densities() { return base_; }
  const std::map<Part, double>& table() const { return table_; }

  void tabulate(const Part& p, double value);
  bool is_tabulated(const Part& p) const { return table_.count(p) != 0; }

  double eval(const Part& p) const;

  friend bool operator==(const TabulatedMeasure&, const TabulatedMeasure&) = default;

 private:
  GridMeasure base_;
  std::map<Part, double> table_;
};

struct EnumerationLimits {
  /// Exhaustive enumeration is used while the candidate count stays at or
  /// below this value.
  std::size_t exhaustive_limit = 4096;
  /// Number of seeded samples drawn once exhaustive enumeration is off.
  std::size_t sample_size = 1024;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

struct MeasureVerdict {
  bool ok = true;
  std::string reason;
  std::optional<std::pair<Part, Part>> witness;
  double residual = 0.0;
  std::size_t pairs_checked = 0;
  double coverage = 1.0;
};

/// Checks finiteness, the empty-part value and finite additivity over disjoint
/// pairs of parts of the host. Exhaustive for small hosts; otherwise every
/// tabulated part is split and combined with neighbors and a seeded sample of
/// random disjoint pairs is added.
MeasureVerdict is_measure(const TabulatedMeasure& mu, double tol,
                          const EnumerationLimits& limits = {});

/// Two-argument set function, e.g. the flux from a source region into a part.
using SetFunction = std::function<double(const Part&, const Region&)>;

struct SAdditivityVerdict {
  bool ok = true;
  bool vacuous = false;
  std::optional<std::pair<Region, Region>> witness;
  double residual = 0.0;
};

/// Whether f(P, A | C) = f(P, A) + f(P, C) for every supplied separate pair.
/// Throws PreconditionError if a pair is not separate or P is not separate
/// from both members.
SAdditivityVerdict is_s_additive(const SetFunction& f, const Part& p,
                                 const std::vector<std::pair<Region, Region>>& pairs,
                                 const Grid& g, double tol);

/// Deterministic 64-bit generator used for every sampled enumeration.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [0, 1) from the top 53 bits.
  double uniform();
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

 private:
  std::uint64_t state_;
};

}  // namespace gwt
