#include "gwt/refmodels.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "gwt/errors.hpp"

namespace gwt {

namespace {

Grid grid_of(const HeatParams& p) { return Grid(p.nx, p.ny, p.nz, p.h); }

bool adjacent(const Grid& g, CellId a, CellId b) {
  const auto n = g.neighbors(a);
  return std::find(n.begin(), n.end(), b) != n.end();
}

std::vector<double> capacities(const HeatParams& p, std::size_t cells) {
  std::vector<double> cap(cells, p.c);
  if (p.bath) cap[p.bath->value] = p.c * p.bath_capacity;
  return cap;
}

}  // namespace

void validate(const HeatParams& p) {
  if (p.nx < 1 || p.ny < 1 || p.nz < 1) throw ParameterError("grid dimensions must be >= 1");
  if (!(p.h > 0) || !(p.c > 0) || !(p.kc > 0)) {
    throw ParameterError("h, c and kc must be positive");
  }
  if (!(p.r >= 0) || !std::isfinite(p.r)) throw ParameterError("r must be finite and >= 0");
  if (!(p.dt > 0) || !std::isfinite(p.dt)) throw ParameterError("dt must be positive");
  if (p.steps < 2) throw ParameterError("steps must be >= 2");
  const Grid g = grid_of(p);
  const std::size_t n = g.cell_count();
  // Explicit scheme stays a convex update when dt (6 kc h + r) <= c h^3; with
  // r = 0 this is dt <= c h^2 / (6 kc).
  if (p.dt * (6.0 * p.kc * p.h + p.r) > p.c * p.h * p.h * p.h) {
    throw ParameterError("stability bound violated: dt * (6 kc h + r) must not exceed c h^3");
  }
  std::set<std::uint32_t> used;
  for (const auto& [a, b] : p.radiators) {
    if (!g.valid(a) || !g.valid(b)) throw ParameterError("radiator cell outside the grid");
    if (a == b || adjacent(g, a, b)) throw ParameterError("radiator pair must be non-adjacent");
    if (!used.insert(a.value).second || !used.insert(b.value).second) {
      throw ParameterError("a cell may belong to at most one radiator pair");
    }
  }
  if (!p.theta0.empty()) {
    if (p.theta0.size() != n) throw ParameterError("theta0 size does not match the grid");
    for (double t : p.theta0) {
      if (!(t > 0) || !std::isfinite(t)) throw ParameterError("initial temperature must be positive");
    }
  }
  if (p.bath) {
    if (!g.valid(*p.bath)) throw ParameterError("bath cell outside the grid");
    if (!(p.bath_capacity >= 1) || !std::isfinite(p.bath_capacity)) {
      throw ParameterError("bath capacity must be finite and >= 1");
    }
  }
}

namespace {

struct Exchange {
  CellId source;
  CellId receiver;
  Atom atom;
  double heat;
  Channel channel;
};

// Every pairwise exchange at one temperature field, both directions.
std::vector<Exchange> exchanges(const HeatParams& p, const Grid& g, const std::vector<double>& th) {
  std::vector<Exchange> out;
  const double kh = p.kc * p.h;
  for (std::uint32_t i = 0; i < g.cell_count(); ++i) {
    const CellId lo{i};
    const auto faces = g.faces_of(lo);
    for (int axis = 0; axis < 3; ++axis) {
      const auto hi = g.neighbor(lo, static_cast<Axis>(axis), +1);
      if (!hi) continue;
      const FaceId f = faces[2 * axis + 1];
      const double q = kh * (th[hi->value] - th[i]);
      out.push_back({*hi, lo, Atom::of(f), q, Channel::conductive});
      out.push_back({lo, *hi, Atom::of(f), -q, Channel::conductive});
    }
  }
  for (const auto& [a, b] : p.radiators) {
    const double q = p.r * (th[b.value] - th[a.value]);
    out.push_back({b, a, Atom::of(a), q, Channel::radiative});
    out.push_back({a, b, Atom::of(b), -q, Channel::radiative});
  }
  return out;
}

}  // namespace

std::vector<std::vector<double>> temperatures(const HeatParams& p) {
  validate(p);
  const Grid g = grid_of(p);
  const std::size_t n = g.cell_count();
  std::vector<double> th = p.theta0;
  if (th.empty()) {
    SplitMix64 rng(p.seed);
    th.resize(n);
    for (double& t : th) t = 1.0 + rng.uniform();
  }
  const auto cap = capacities(p, n);
  const double vol = g.cell_volume();
  std::vector<std::vector<double>> out{th};
  for (int k = 0; k < p.steps; ++k) {
    std::vector<double> net(n, 0.0);
    for (const Exchange& e : exchanges(p, g, th)) net[e.receiver.value] += e.heat;
    for (std::size_t i = 0; i < n; ++i) th[i] += p.dt / (cap[i] * vol) * net[i];
    for (double t : th) {
      if (!(t > 0)) throw ParameterError("temperature became nonpositive");
    }
    out.push_back(th);
  }
  return out;
}

ThermoModel generate_heat_grid(const HeatParams& p) {
  const auto theta = temperatures(p);
  const Grid g = grid_of(p);
  const Region body = Region::all(g);
  const auto cap = capacities(p, g.cell_count());
  const double vol = g.cell_volume();

  ThermoModel m;
  m.grid = g;
  m.body = body;
  std::vector<double> samples;
  for (int k = 0; k <= p.steps; ++k) samples.push_back(k * p.dt);
  m.time = TimeGrid(std::move(samples));

  for (const auto& th : theta) {
    GridMeasure e(g, body), s(g, body);
    for (std::uint32_t i = 0; i < g.cell_count(); ++i) {
      e.set(CellId{i}, cap[i] * vol * th[i]);
      s.set(CellId{i}, cap[i] * vol * std::log(th[i]));
    }
    m.energy.emplace_back(std::move(e));
    m.entropy.emplace_back(std::move(s));

    FluxSnapshot heat, ent;
    for (const Exchange& x : exchanges(p, g, th)) {
      heat.exchange.push_back({x.source, x.receiver, x.atom, x.heat, x.channel});
      // Entropy crosses at the supplier's temperature.
      ent.exchange.push_back({x.source, x.receiver, x.atom, x.heat / th[x.source.value], x.channel});
    }
    m.heat.snapshots.push_back(std::move(heat));
    m.entropy_flux.snapshots.push_back(std::move(ent));
  }
  return m;
}

HeatParams default_scenario() {
  HeatParams p;
  p.nx = p.ny = p.nz = 2;
  p.h = p.c = p.kc = 1.0;
  p.r = 0.5;
  p.radiators = {{CellId{0}, CellId{5}}};
  p.dt = 0.05;
  p.steps = 4;
  p.seed = 20240917;
  return p;
}

// --- mutants -----------------------------------------------------------------

const std::vector<std::string>& mutation_targets() {
  static const std::vector<std::string> t{"T4",  "T6",  "T8",    "T9",    "T10",
                                          "T13", "T15", "T16.1", "T16.2", "DECOMP"};
  return t;
}

std::string report_id(const std::string& target) {
  if (target == "T16.1" || target == "T16.2") return "T16";
  return target;
}

namespace {

std::vector<TableEntry>& table_for(ThermoModel& m, FluxFamily& fam, std::size_t k, const Region& d) {
  auto& tables = fam.snapshots.at(k).tables;
  auto it = tables.find(d);
  if (it == tables.end()) {
    const FluxView view(fam.snapshots[k], d, m.grid, m.body);
    it = tables.emplace(d, view.entries()).first;
  }
  return it->second;
}

double heat_density(const ThermoModel& m, const Region& d, const Atom& a, std::size_t k) {
  const FluxView v(m.heat.snapshots.at(k), d, m.grid, m.body);
  const Part p = a.is_face() ? Part({}, {a.face()}) : Part({a.cell()}, {});
  return v.eval(PartMask(p, m.grid));
}

bool separate_cells(const Grid& g, CellId a, CellId b) { return a != b && !adjacent(g, a, b); }

// First body cell with a grid-border face and at least two interior faces.
CellId corner_cell(const ThermoModel& m) {
  for (CellId c : m.body.cells()) {
    int border = 0;
    int inner = 0;
    for (FaceId f : m.grid.faces_of(c)) (m.grid.on_border(f) ? border : inner)++;
    if (border > 0 && inner >= 2) return c;
  }
  throw PreconditionError("mutation needs a cell with a border face and two interior faces");
}

// D = {a, c} with a, c separate, plus p separate from D (preferring one that
// receives heat from D) and a cell p2 of D^b adjacent to D.
struct PairSite {
  CellId a, c, p, p2;
};

PairSite pair_site(const ThermoModel& m, bool need_heated_p) {
  const Grid& g = m.grid;
  const auto& cells = m.body.cells();
  for (CellId a : cells) {
    for (CellId c : cells) {
      if (!(a < c) || !separate_cells(g, a, c)) continue;
      const Region d{a, c};
      std::optional<CellId> p, p2;
      for (CellId x : cells) {
        if (d.contains(x)) continue;
        const bool sep = separate_cells(g, x, a) && separate_cells(g, x, c);
        const double hx = heat_density(m, d, Atom::of(x), 0);
        if (sep && !p && (!need_heated_p || hx != 0.0)) p = x;
        if (!sep && !p2 && hx != 0.5) p2 = x;
      }
      if (p && p2) return {a, c, *p, *p2};
    }
  }
  throw PreconditionError("mutation needs two separate cells and a third separate from both");
}

}  // namespace

ThermoModel mutate(const ThermoModel& in, const std::string& target) {
  validate_model(in);
  ThermoModel m = in;
  const Grid& g = m.grid;
  const CellId i = m.body.cells().front();
  const FaceId fi = g.faces_of(i)[0];

  if (target == "T4") {
    const Part p({i}, {fi});
    m.energy[0].tabulate(p, m.energy[0].eval(p) + 1.0);
  } else if (target == "T6" || target == "T13") {
    auto& series = target == "T6" ? m.energy : m.entropy;
    for (auto& e : series) e.densities().add(fi, 1.0);
  } else if (target == "T10") {
    if (m.samples() < 2) throw PreconditionError("T10 mutation needs two samples");
    m.energy[1].densities().add(i, 0.1);
  } else if (target == "T8") {
    const PairSite s = pair_site(m, false);
    auto& t = table_for(m, m.heat, 0, Region{s.a, s.c});
    t.push_back({Atom::of(s.p), 0.5, Channel::automatic});
    t.push_back({Atom::of(s.p2), -0.5, Channel::automatic});
  } else if (target == "T15") {
    const PairSite s = pair_site(m, true);
    const Region d{s.a, s.c};
    // A face of D's boundary carrying nonzero heat, inside the closure of D^b.
    std::optional<FaceId> face;
    for (FaceId f : boundary_face_ids(d, g)) {
      const auto adj = g.cells_of(f);
      const bool inner = adj[0] && adj[1] && m.body.contains(*adj[0]) && m.body.contains(*adj[1]);
      if (inner && heat_density(m, d, Atom::of(f), 0) != 0.0) {
        face = f;
        break;
      }
    }
    if (!face) throw PreconditionError("T15 mutation needs a boundary face carrying heat");
    auto& t = table_for(m, m.entropy_flux, 0, d);
    t.push_back({Atom::of(s.p), 0.5, Channel::automatic});
    t.push_back({Atom::of(*face), -0.5, Channel::automatic});
  } else if (target == "T9") {
    const CellId c = corner_cell(m);
    FaceId border{};
    for (FaceId f : g.faces_of(c)) {
      if (g.on_border(f)) {
        border = f;
        break;
      }
    }
    const Region d = exterior(Region{c}, g);
    auto& t = table_for(m, m.heat, 0, d);
    t.push_back({Atom::of(border), 0.5, Channel::automatic});
    t.push_back({Atom::of(c), -0.5, Channel::automatic});
  } else if (target == "DECOMP") {
    const CellId c = corner_cell(m);
    const Region d = exterior(Region{c}, g);
    std::vector<FaceId> inner;
    for (FaceId f : g.faces_of(c)) {
      if (!g.on_border(f) && heat_density(m, d, Atom::of(f), 0) != 0.0) inner.push_back(f);
    }
    if (inner.size() < 2) throw PreconditionError("DECOMP mutation needs two heated faces");
    auto& t = table_for(m, m.entropy_flux, 0, d);
    t.push_back({Atom::of(inner[0]), 0.25, Channel::unsplit});
    t.push_back({Atom::of(inner[1]), -0.25, Channel::unsplit});
  } else if (target == "T16.1") {
    auto& ex = m.entropy_flux.snapshots.at(0).exchange;
    Contribution* worst = nullptr;
    for (Contribution& c : ex) {
      if (c.channel == Channel::radiative || !c.atom.is_face()) continue;
      if (c.value < 0 && (worst == nullptr || c.value < worst->value)) worst = &c;
    }
    if (worst == nullptr) throw PreconditionError("T16.1 mutation needs a negative conductive flux");
    worst->value = -worst->value;
  } else if (target == "T16.2") {
    // A receiver that never gets heat as a cell: no radiative exchange lands on it.
    std::set<std::uint32_t> heated;
    for (const auto& snap : m.heat.snapshots) {
      for (const Contribution& c : snap.exchange) {
        if (!c.atom.is_face()) heated.insert(c.atom.index);
      }
    }
    std::optional<Contribution> add;
    for (CellId s : m.body.cells()) {
      for (CellId x : m.body.cells()) {
        if (add) break;
        if (separate_cells(g, s, x) && !heated.count(x.value)) {
          add = Contribution{s, x, Atom::of(x), -0.5, Channel::radiative};
        }
      }
    }
    if (!add) throw PreconditionError("T16.2 mutation needs an unheated cell apart from a source");
    m.entropy_flux.snapshots.at(0).exchange.push_back(*add);
  } else {
    throw PreconditionError("unknown mutation target: " + target);
  }
  return m;
}

}  // namespace gwt
