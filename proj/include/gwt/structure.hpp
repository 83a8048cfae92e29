#pragma once

// The thermodynamic structure: a sampled time interval, time-indexed energy
// and entropy measures on the body, and heat / entropy flux families indexed
// by source regions of the material universe.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "gwt/geometry.hpp"
#include "gwt/measure.hpp"

namespace gwt {

class TimeGrid {
 public:
  TimeGrid() = default;
  /// Throws PreconditionError unless strictly increasing with >= 2 samples.
  explicit TimeGrid(std::vector<double> samples);

  const std::vector<double>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  double operator[](std::size_t k) const { return samples_.at(k); }
  double first() const { return samples_.front(); }
  double last() const { return samples_.back(); }

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  std::vector<double> samples_;
};

/// Reason a sample list is not a valid time grid, or empty if it is.
std::optional<std::string> time_grid_defect(const std::vector<double>& samples);

/// An element of the part algebra: one cell or one face.
struct Atom {
  enum class Kind : std::uint8_t { cell, face };
  Kind kind = Kind::cell;
  std::uint32_t index = 0;

  static Atom of(CellId c) { return {Kind::cell, c.value}; }
  static Atom of(FaceId f) { return {Kind::face, f.value}; }
  bool is_face() const { return kind == Kind::face; }
  CellId cell() const { return CellId{index}; }
  FaceId face() const { return FaceId{index}; }
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

/// Which part of the entropy-flux decomposition a value belongs to:
/// radiative (off the source boundary), conductive (on it), unsplit (in the
/// total only), or automatic (decided by where the atom lies).
enum class Channel : std::uint8_t { automatic, radiative, conductive, unsplit };

/// A pairwise exchange: `value` flows from `source` into `receiver`, recorded
/// on `atom` (the receiver cell or one of its faces). It contributes to the
/// flux from D whenever source is in D and receiver is not.
struct Contribution {
  CellId source;
  CellId receiver;
  Atom atom;
  double value = 0.0;
  Channel channel = Channel::automatic;
  friend bool operator==(const Contribution&, const Contribution&) = default;
};

struct TableEntry {
  Atom atom;
  double value = 0.0;
  Channel channel = Channel::automatic;
  friend bool operator==(const TableEntry&, const TableEntry&) = default;
};

/// The flux family at one time sample.
struct FluxSnapshot {
  std::vector<Contribution> exchange;
  /// Explicit flux measures for individual source regions; they replace the
  /// exchange-derived measure for that source.
  std::map<Region, std::vector<TableEntry>> tables;
  friend bool operator==(const FluxSnapshot&, const FluxSnapshot&) = default;
};

/// When exchange_based, the exchange contributions define the flux for every
/// source in the material universe. Otherwise only the tabulated sources are
/// declared.
struct FluxFamily {
  bool exchange_based = true;
  std::vector<FluxSnapshot> snapshots;
  friend bool operator==(const FluxFamily&, const FluxFamily&) = default;
};

/// Total, radiative-store and conductive-store density measures of a flux
/// from one source.
struct FluxDensity {
  GridMeasure total;
  GridMeasure radiative;
  GridMeasure conductive;
};

/// Flux family bound to one source region at one time, with precomputed masks.
class FluxView {
 public:
  FluxView(const FluxSnapshot& snap, const Region& source, const Grid& g, const Region& body);

  const Region& source() const { return source_; }
  /// Same source at another time sample; masks are reused.
  void retarget(const FluxSnapshot& snap);
  bool tabulated() const { return table_ != nullptr; }
  bool on_source_boundary(FaceId f) const { return boundary_[f.value] != 0; }

  /// Sum over the part of all active values.
  double eval(const PartMask& p) const;
  /// Off-boundary and on-boundary sums; their sum is the entropy-flux total.
  struct Split {
    double off_boundary = 0.0;
    double on_boundary = 0.0;
  };
  Split eval_split(const PartMask& p) const;
  /// Stored radiative / conductive channels evaluated on the part.
  Split eval_channels(const PartMask& p) const;

  FluxDensity materialize() const;
  /// The active values as a table (atom, value, channel) in evaluation order.
  std::vector<TableEntry> entries() const;
  /// Stored channel of a value; automatic resolves by location.
  Channel resolve(const Atom& a, Channel c) const;

 private:
  template <typename Fn>
  void for_each_active(Fn&& fn) const;

  const FluxSnapshot* snap_;
  Region source_;
  const Grid& grid_;
  const Region& body_;
  const std::vector<TableEntry>* table_ = nullptr;
  CellMask source_mask_;
  std::vector<std::uint8_t> boundary_;
};

class ThermoModel {
 public:
  Grid grid;
  Region body;
  TimeGrid time;
  std::vector<TabulatedMeasure> energy;
  std::vector<TabulatedMeasure> entropy;
  FluxFamily heat;
  FluxFamily entropy_flux;

  std::size_t samples() const { return time.size(); }

  /// Whether D is a declared source of the family.
  bool declares_source(const FluxFamily& fam, const Region& d) const;

  friend bool operator==(const ThermoModel&, const ThermoModel&) = default;
};

/// Structural defects (sizes, hosts, contribution validity, declared sources).
std::vector<std::string> structural_defects(const ThermoModel& m);
/// Throws IllFormedModel listing every structural defect.
void validate_model(const ThermoModel& m);

/// Zero measure family on the body for every sample.
std::vector<TabulatedMeasure> zero_measures(const Grid& g, const Region& body, std::size_t samples);

// Time derivatives: forward difference, backward at the final sample.
double ddt_E(const ThermoModel& m, const Part& p, std::size_t k);
double ddt_S(const ThermoModel& m, const Part& p, std::size_t k);

/// The derivative at sample k as a set function (densities plus tabulated
/// parts of either neighbor sample).
TabulatedMeasure rate_measure(const std::vector<TabulatedMeasure>& series, const TimeGrid& t,
                              std::size_t k);
double rate_of(const std::vector<TabulatedMeasure>& series, const TimeGrid& t, const Part& p,
               std::size_t k);

/// Heat flux from D into P at sample k.
double flux(const ThermoModel& m, const Part& p, const Region& d, std::size_t k);
/// Entropy flux from D into P at sample k (radiative plus conductive parts).
double entropy_flux(const ThermoModel& m, const Part& p, const Region& d, std::size_t k);
/// Entropy flux on the part with the boundary of D removed.
double radiative_flux(const ThermoModel& m, const Part& p, const Region& d, std::size_t k);
/// Entropy flux on the part restricted to the boundary of D.
double conductive_flux(const ThermoModel& m, const Part& p, const Region& d, std::size_t k);

}  // namespace gwt
