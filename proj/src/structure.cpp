#include "gwt/structure.hpp"

#include <algorithm>
#include <cmath>

#include "gwt/errors.hpp"

namespace gwt {

std::optional<std::string> time_grid_defect(const std::vector<double>& samples) {
  if (samples.size() < 2) return "time grid needs at least 2 samples";
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (!std::isfinite(samples[k])) return "time sample " + std::to_string(k) + " is not finite";
    if (k > 0 && !(samples[k] > samples[k - 1])) {
      return "time samples not strictly increasing at index " + std::to_string(k);
    }
  }
  return std::nullopt;
}

TimeGrid::TimeGrid(std::vector<double> samples) : samples_(std::move(samples)) {
  if (auto d = time_grid_defect(samples_)) throw PreconditionError(*d);
}

// --- FluxView ---------------------------------------------------------------

FluxView::FluxView(const FluxSnapshot& snap, const Region& source, const Grid& g,
                   const Region& body)
    : snap_(&snap),
      source_(source),
      grid_(g),
      body_(body),
      source_mask_(source, g),
      boundary_(g.face_count(), 0) {
  retarget(snap);
  // Faces of D cells whose other side is outside D or off the grid.
  for (CellId c : source.cells()) {
    const auto faces = g.faces_of(c);
    for (int k = 0; k < 6; ++k) {
      const auto n = g.neighbor(c, static_cast<Axis>(k / 2), Grid::outward_sign(k));
      if (!n || !source_mask_[*n]) boundary_[faces[k].value] = 1;
    }
  }
}

void FluxView::retarget(const FluxSnapshot& snap) {
  snap_ = &snap;
  auto it = snap.tables.find(source_);
  table_ = it == snap.tables.end() ? nullptr : &it->second;
}

template <typename Fn>
void FluxView::for_each_active(Fn&& fn) const {
  if (table_ != nullptr) {
    for (const TableEntry& e : *table_) fn(e.atom, e.value, e.channel);
    return;
  }
  for (const Contribution& c : snap_->exchange) {
    if (source_mask_[c.source] && !source_mask_[c.receiver]) fn(c.atom, c.value, c.channel);
  }
}

Channel FluxView::resolve(const Atom& a, Channel c) const {
  if (c != Channel::automatic) return c;
  if (a.is_face() && on_source_boundary(a.face())) return Channel::conductive;
  return Channel::radiative;
}

namespace {
bool has(const PartMask& p, const Atom& a) {
  return a.is_face() ? p.has(a.face()) : p.has(a.cell());
}
}  // namespace

double FluxView::eval(const PartMask& p) const {
  double s = 0.0;
  for_each_active([&](const Atom& a, double v, Channel) {
    if (has(p, a)) s += v;
  });
  return s;
}

FluxView::Split FluxView::eval_split(const PartMask& p) const {
  Split s;
  for_each_active([&](const Atom& a, double v, Channel) {
    if (!has(p, a)) return;
    if (a.is_face() && on_source_boundary(a.face())) {
      s.on_boundary += v;
    } else {
      s.off_boundary += v;
    }
  });
  return s;
}

FluxView::Split FluxView::eval_channels(const PartMask& p) const {
  Split s;
  for_each_active([&](const Atom& a, double v, Channel c) {
    if (!has(p, a)) return;
    switch (resolve(a, c)) {
      case Channel::radiative: s.off_boundary += v; break;
      case Channel::conductive: s.on_boundary += v; break;
      default: break;
    }
  });
  return s;
}

FluxDensity FluxView::materialize() const {
  const Region host = body_ - source_;
  FluxDensity out{GridMeasure(grid_, host), GridMeasure(grid_, host), GridMeasure(grid_, host)};
  for_each_active([&](const Atom& a, double v, Channel c) {
    const Channel r = resolve(a, c);
    if (a.is_face()) {
      out.total.add(a.face(), v);
      if (r == Channel::radiative) out.radiative.add(a.face(), v);
      if (r == Channel::conductive) out.conductive.add(a.face(), v);
    } else {
      out.total.add(a.cell(), v);
      if (r == Channel::radiative) out.radiative.add(a.cell(), v);
      if (r == Channel::conductive) out.conductive.add(a.cell(), v);
    }
  });
  return out;
}

std::vector<TableEntry> FluxView::entries() const {
  std::vector<TableEntry> out;
  for_each_active([&](const Atom& a, double v, Channel c) { out.push_back({a, v, c}); });
  return out;
}

// --- ThermoModel -------------------------------------------------------------

bool ThermoModel::declares_source(const FluxFamily& fam, const Region& d) const {
  if (fam.exchange_based) return in_material_universe(d, body, grid);
  if (fam.snapshots.empty()) return false;
  return fam.snapshots.front().tables.count(d) != 0;
}

namespace {

bool atom_valid(const Grid& g, const Atom& a) {
  return a.is_face() ? g.valid(a.face()) : g.valid(a.cell());
}

bool atom_on_cell(const Grid& g, const Atom& a, CellId c) {
  if (!a.is_face()) return a.cell() == c;
  const auto f = g.faces_of(c);
  return std::find(f.begin(), f.end(), a.face()) != f.end();
}

void measure_defects(const ThermoModel& m, const std::vector<TabulatedMeasure>& series,
                     const char* name, std::vector<std::string>& out) {
  if (series.size() != m.samples()) {
    out.push_back(std::string(name) + ": " + std::to_string(series.size()) + " snapshots for " +
                  std::to_string(m.samples()) + " time samples");
  }
  for (std::size_t k = 0; k < series.size(); ++k) {
    const GridMeasure& d = series[k].densities();
    if (!(d.grid() == m.grid) || d.host() != m.body) {
      out.push_back(std::string(name) + " at sample " + std::to_string(k) +
                    ": measure is not hosted on the body");
    }
  }
}

void family_defects(const ThermoModel& m, const FluxFamily& fam, const char* name,
                    std::vector<std::string>& out) {
  if (fam.snapshots.size() != m.samples()) {
    out.push_back(std::string(name) + ": " + std::to_string(fam.snapshots.size()) +
                  " snapshots for " + std::to_string(m.samples()) + " time samples");
  }
  const Grid& g = m.grid;
  const CellMask body(m.body, g);
  for (std::size_t k = 0; k < fam.snapshots.size(); ++k) {
    const FluxSnapshot& s = fam.snapshots[k];
    const std::string where = std::string(name) + " at sample " + std::to_string(k);
    if (!fam.exchange_based && !s.exchange.empty()) {
      out.push_back(where + ": exchange entries in a family with declared sources only");
    }
    for (const Contribution& c : s.exchange) {
      if (!g.valid(c.source) || !g.valid(c.receiver) || !atom_valid(g, c.atom)) {
        out.push_back(where + ": exchange entry outside the grid");
        continue;
      }
      if (c.source == c.receiver) out.push_back(where + ": exchange entry from a cell to itself");
      if (!body[c.receiver]) out.push_back(where + ": exchange receiver outside the body");
      if (!atom_on_cell(g, c.atom, c.receiver)) {
        out.push_back(where + ": exchange recorded away from its receiver");
      }
    }
    if (!fam.exchange_based && k > 0) {
      const auto& first = fam.snapshots.front().tables;
      bool same = first.size() == s.tables.size();
      for (auto a = first.begin(), b = s.tables.begin(); same && a != first.end(); ++a, ++b) {
        same = a->first == b->first;
      }
      if (!same) out.push_back(where + ": declared sources differ from sample 0");
    }
    for (const auto& [d, entries] : s.tables) {
      bool in_grid = true;
      for (CellId c : d.cells()) in_grid = in_grid && g.valid(c);
      if (!in_grid) {
        out.push_back(where + ": source region outside the grid");
        continue;
      }
      if (!in_material_universe(d, m.body, g)) {
        out.push_back(where + ": unknown source region (not in the material universe)");
        continue;
      }
      const GridMeasure host(g, m.body - d);
      for (const TableEntry& e : entries) {
        const bool ok = atom_valid(g, e.atom) &&
                        (e.atom.is_face() ? host.hosts(e.atom.face()) : host.hosts(e.atom.cell()));
        if (!ok) {
          out.push_back(where + ": table entry outside the source's relative exterior");
          break;
        }
      }
    }
  }
}

}  // namespace

std::vector<std::string> structural_defects(const ThermoModel& m) {
  std::vector<std::string> out;
  if (m.grid.nx() < 1 || m.grid.ny() < 1 || m.grid.nz() < 1 || !(m.grid.spacing() > 0.0)) {
    out.push_back("grid: dimensions and spacing must be positive");
    return out;
  }
  if (m.body.empty()) out.push_back("body: empty");
  for (CellId c : m.body.cells()) {
    if (!m.grid.valid(c)) {
      out.push_back("body: cell " + std::to_string(c.value) + " outside the grid");
      return out;
    }
  }
  if (auto d = time_grid_defect(m.time.samples())) out.push_back("time: " + *d);
  measure_defects(m, m.energy, "energy", out);
  measure_defects(m, m.entropy, "entropy", out);
  family_defects(m, m.heat, "heat", out);
  family_defects(m, m.entropy_flux, "entropy-flux", out);
  return out;
}

void validate_model(const ThermoModel& m) {
  const auto defects = structural_defects(m);
  if (defects.empty()) return;
  std::string msg = "ill-formed model:";
  for (const auto& d : defects) msg += "\n  " + d;
  throw IllFormedModel(msg);
}

std::vector<TabulatedMeasure> zero_measures(const Grid& g, const Region& body, std::size_t samples) {
  return std::vector<TabulatedMeasure>(samples, TabulatedMeasure(GridMeasure(g, body)));
}

// --- derivatives -------------------------------------------------------------

namespace {

std::pair<std::size_t, std::size_t> difference_pair(const TimeGrid& t, std::size_t k) {
  if (t.size() < 2) throw UnderdeterminedDerivative("derivative needs at least 2 time samples");
  if (k >= t.size()) throw PreconditionError("time index out of range");
  return k + 1 < t.size() ? std::make_pair(k, k + 1) : std::make_pair(k - 1, k);
}

}  // namespace

double rate_of(const std::vector<TabulatedMeasure>& series, const TimeGrid& t, const Part& p,
               std::size_t k) {
  const auto [a, b] = difference_pair(t, k);
  const double dt = t[b] - t[a];
  const TabulatedMeasure& ma = series.at(a);
  const TabulatedMeasure& mb = series.at(b);
  if (ma.is_tabulated(p) || mb.is_tabulated(p)) return (mb.eval(p) - ma.eval(p)) / dt;
  if (!ma.densities().hosts(p)) throw DomainError("part is outside the measure's host");
  double s = 0.0;
  for (CellId c : p.cells()) s += mb.densities().cell_density(c) - ma.densities().cell_density(c);
  for (FaceId f : p.faces()) s += mb.densities().face_density(f) - ma.densities().face_density(f);
  return s / dt;
}

TabulatedMeasure rate_measure(const std::vector<TabulatedMeasure>& series, const TimeGrid& t,
                              std::size_t k) {
  const auto [a, b] = difference_pair(t, k);
  const double dt = t[b] - t[a];
  const GridMeasure& da = series.at(a).densities();
  const GridMeasure& db = series.at(b).densities();
  GridMeasure rate(da.grid(), da.host());
  for (CellId c : da.host_cells()) rate.set(c, (db.cell_density(c) - da.cell_density(c)) / dt);
  for (FaceId f : da.host_faces()) rate.set(f, (db.face_density(f) - da.face_density(f)) / dt);
  TabulatedMeasure out(std::move(rate));
  for (const auto* m : {&series[a], &series[b]}) {
    for (const auto& [p, v] : m->table()) {
      (void)v;
      out.tabulate(p, rate_of(series, t, p, k));
    }
  }
  return out;
}

double ddt_E(const ThermoModel& m, const Part& p, std::size_t k) {
  return rate_of(m.energy, m.time, p, k);
}

double ddt_S(const ThermoModel& m, const Part& p, std::size_t k) {
  return rate_of(m.entropy, m.time, p, k);
}

// --- fluxes ------------------------------------------------------------------

namespace {

FluxView checked_view(const ThermoModel& m, const FluxFamily& fam, const Part& p, const Region& d,
                      std::size_t k) {
  if (k >= fam.snapshots.size()) throw PreconditionError("time index out of range");
  if (!m.declares_source(fam, d)) throw UnknownSource("source region is not a declared source");
  const GridMeasure host(m.grid, m.body - d);
  if (!host.hosts(p)) throw DomainError("part is not in the relative exterior of the source");
  return FluxView(fam.snapshots[k], d, m.grid, m.body);
}

}  // namespace

double flux(const ThermoModel& m, const Part& p, const Region& d, std::size_t k) {
  return checked_view(m, m.heat, p, d, k).eval(PartMask(p, m.grid));
}

double entropy_flux(const ThermoModel& m, const Part& p, const Region& d, std::size_t k) {
  const auto s = checked_view(m, m.entropy_flux, p, d, k).eval_split(PartMask(p, m.grid));
  return s.off_boundary + s.on_boundary;
}

double radiative_flux(const ThermoModel& m, const Part& p, const Region& d, std::size_t k) {
  return checked_view(m, m.entropy_flux, p, d, k).eval_split(PartMask(p, m.grid)).off_boundary;
}

double conductive_flux(const ThermoModel& m, const Part& p, const Region& d, std::size_t k) {
  return checked_view(m, m.entropy_flux, p, d, k).eval_split(PartMask(p, m.grid)).on_boundary;
}

}  // namespace gwt
