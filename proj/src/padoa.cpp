#include "gwt/padoa.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <set>

#include "gwt/enumeration.hpp"
#include "gwt/errors.hpp"
#include "gwt/text.hpp"

namespace gwt {

std::string to_string(PrimitiveId p) {
  switch (p) {
    case PrimitiveId::SPACE: return "SPACE";
    case PrimitiveId::TIME: return "TIME";
    case PrimitiveId::E: return "E";
    case PrimitiveId::H: return "H";
    case PrimitiveId::S: return "S";
    case PrimitiveId::M: return "M";
  }
  return "?";
}

PrimitiveId parse_primitive(const std::string& s) {
  for (PrimitiveId p : {PrimitiveId::SPACE, PrimitiveId::TIME, PrimitiveId::E, PrimitiveId::H,
                        PrimitiveId::S, PrimitiveId::M}) {
    if (to_string(p) == s) return p;
  }
  throw PreconditionError("unknown primitive: " + s);
}

std::string to_string(SearchResult::Outcome o) {
  switch (o) {
    case SearchResult::Outcome::witness: return "witness";
    case SearchResult::Outcome::none_found: return "none-found";
    case SearchResult::Outcome::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

AtomKey key_of(const Atom& a, const Grid& g) {
  if (!a.is_face()) {
    const CellCoord c = g.coord(a.cell());
    return {0, c.x, c.y, c.z};
  }
  const FaceCoord f = g.face_coord(a.face());
  return {static_cast<std::uint8_t>(1 + static_cast<int>(f.axis)), f.x, f.y, f.z};
}

std::vector<AtomKey> key_of(const Part& p, const Grid& g) {
  std::vector<AtomKey> out;
  for (CellId c : p.cells()) out.push_back(key_of(Atom::of(c), g));
  for (FaceId f : p.faces()) out.push_back(key_of(Atom::of(f), g));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<AtomKey> key_of(const Region& r, const Grid& g) {
  return key_of(Part::of_cells(r), g);
}

void finish(Graph& gr) {
  std::sort(gr.rows.begin(), gr.rows.end());
  gr.rows.erase(std::unique(gr.rows.begin(), gr.rows.end()), gr.rows.end());
}

// Atom densities, then the tabulated parts that depart from them (flagged by
// a source key holding a single marker atom).
Graph measure_graph(const ThermoModel& m, const std::vector<TabulatedMeasure>& series) {
  Graph gr;
  gr.spacing = m.grid.spacing();
  const Grid& g = m.grid;
  static const std::vector<AtomKey> tabulated{{255, 0, 0, 0}};
  for (std::size_t k = 0; k < series.size() && k < m.samples(); ++k) {
    const GridMeasure& d = series[k].densities();
    const double t = m.time[k];
    for (CellId c : d.host_cells()) {
      gr.rows.push_back({{key_of(Atom::of(c), g)}, {}, t, d.cell_density(c)});
    }
    for (FaceId f : d.host_faces()) {
      gr.rows.push_back({{key_of(Atom::of(f), g)}, {}, t, d.face_density(f)});
    }
    for (const auto& [p, v] : series[k].table()) {
      if (v != d.eval(p)) gr.rows.push_back({key_of(p, g), tabulated, t, v});
    }
  }
  finish(gr);
  return gr;
}

std::vector<Region> sources_of(const ThermoModel& m, const FluxFamily& fam,
                               const Candidates<Region>& uni) {
  std::set<Region> out;
  if (fam.exchange_based) {
    for (const Region& d : uni.items) {
      if (m.declares_source(fam, d)) out.insert(d);
    }
  }
  for (const auto& snap : fam.snapshots) {
    for (const auto& [d, entries] : snap.tables) out.insert(d);
  }
  return {out.begin(), out.end()};
}

Graph flux_graph(const ThermoModel& m, const FluxFamily& fam, const Candidates<Region>& uni) {
  Graph gr;
  gr.spacing = m.grid.spacing();
  const Grid& g = m.grid;
  const std::size_t n = std::min(fam.snapshots.size(), m.samples());
  if (n == 0) return gr;
  std::vector<double> cells(g.cell_count()), faces(g.face_count());
  for (const Region& d : sources_of(m, fam, uni)) {
    const Region host = m.body - d;
    const auto src = key_of(d, g);
    const auto host_faces = closure_faces(host, g);
    FluxView v(fam.snapshots[0], d, g, m.body);
    for (std::size_t k = 0; k < n; ++k) {
      v.retarget(fam.snapshots[k]);
      std::fill(cells.begin(), cells.end(), 0.0);
      std::fill(faces.begin(), faces.end(), 0.0);
      for (const TableEntry& e : v.entries()) {
        (e.atom.is_face() ? faces : cells)[e.atom.index] += e.value;
      }
      const double t = m.time[k];
      for (CellId c : host.cells()) {
        gr.rows.push_back({{key_of(Atom::of(c), g)}, src, t, cells[c.value]});
      }
      for (FaceId f : host_faces) {
        gr.rows.push_back({{key_of(Atom::of(f), g)}, src, t, faces[f.value]});
      }
    }
  }
  finish(gr);
  return gr;
}

}  // namespace

ModelTables tables(const ThermoModel& m, const EnumerationLimits& lim) {
  validate_model(m);
  const auto uni = enumerate_universe(m.body, m.grid, lim);
  ModelTables t;
  t.exhaustive = uni.exhaustive;
  t.energy = measure_graph(m, m.energy);
  t.entropy = measure_graph(m, m.entropy);
  t.heat = flux_graph(m, m.heat, uni);
  t.entropy_flux = flux_graph(m, m.entropy_flux, uni);
  return t;
}

std::vector<double> last_components(const Graph& g) {
  std::vector<double> out;
  for (const GraphRow& r : g.rows) out.push_back(r.last);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TimeGrid define_time(const ModelTables& t) {
  const auto e = last_components(t.energy);
  const std::pair<const char*, const Graph*> others[] = {
      {"H", &t.heat}, {"S", &t.entropy}, {"M", &t.entropy_flux}};
  for (const auto& [name, g] : others) {
    // A one-cell body gives flux functions an empty domain.
    if (g->rows.empty() && g != &t.entropy) continue;
    if (last_components(*g) != e) {
      throw IllFormedModel(std::string("last components of E and ") + name + " disagree");
    }
  }
  if (auto d = time_grid_defect(e)) throw IllFormedModel("last components of E: " + *d);
  return TimeGrid(e);
}

CellSet define_space(const ModelTables& t, std::string* warning) {
  std::set<CellCoord> cells;
  for (const Graph* g : {&t.energy, &t.heat, &t.entropy, &t.entropy_flux}) {
    for (const GraphRow& r : g->rows) {
      for (const AtomKey& a : r.part) {
        if (a.kind == 0) cells.insert({a.x, a.y, a.z});
      }
    }
  }
  CellSet out{t.energy.spacing, {cells.begin(), cells.end()}};
  if (out.cells.empty() && warning != nullptr) *warning = "function tables are empty";
  return out;
}

// --- candidate models -------------------------------------------------------

namespace {

// Integer affine map per axis: cell coordinate x -> offset + sign * x.
struct AxisMap {
  int sign = 1;
  int offset = 0;
};
using SpaceMap = std::array<AxisMap, 3>;

ThermoModel remap(const ThermoModel& m, const Grid& g2, const SpaceMap& sm) {
  const Grid& g = m.grid;
  auto cell = [&](CellId c) {
    const CellCoord x = g.coord(c);
    const int v[3] = {x.x, x.y, x.z};
    int w[3];
    for (int a = 0; a < 3; ++a) w[a] = sm[a].offset + sm[a].sign * v[a];
    return g2.cell({w[0], w[1], w[2]});
  };
  auto face = [&](FaceId f) {
    const FaceCoord x = g.face_coord(f);
    const int ax = static_cast<int>(x.axis);
    const int v[3] = {x.x, x.y, x.z};
    int w[3];
    for (int a = 0; a < 3; ++a) {
      // Plane indices reflect to offset + 1 - p.
      const int base = (a == ax && sm[a].sign < 0) ? sm[a].offset + 1 : sm[a].offset;
      w[a] = base + sm[a].sign * v[a];
    }
    return g2.face({x.axis, w[0], w[1], w[2]});
  };
  auto atom = [&](const Atom& a) { return a.is_face() ? Atom::of(face(a.face())) : Atom::of(cell(a.cell())); };
  auto region = [&](const Region& r) {
    std::vector<CellId> out;
    for (CellId c : r.cells()) out.push_back(cell(c));
    return Region(out);
  };
  auto part = [&](const Part& p) {
    std::vector<CellId> cs;
    std::vector<FaceId> fs;
    for (CellId c : p.cells()) cs.push_back(cell(c));
    for (FaceId f : p.faces()) fs.push_back(face(f));
    return Part(cs, fs);
  };
  auto measure = [&](const TabulatedMeasure& mu) {
    const GridMeasure& d = mu.densities();
    TabulatedMeasure out(GridMeasure(g2, region(d.host())));
    for (CellId c : d.host_cells()) out.densities().set(cell(c), d.cell_density(c));
    for (FaceId f : d.host_faces()) out.densities().set(face(f), d.face_density(f));
    for (const auto& [p, v] : mu.table()) out.tabulate(part(p), v);
    return out;
  };
  auto family = [&](const FluxFamily& fam) {
    FluxFamily out;
    out.exchange_based = fam.exchange_based;
    for (const FluxSnapshot& s : fam.snapshots) {
      FluxSnapshot t;
      for (const Contribution& c : s.exchange) {
        t.exchange.push_back({cell(c.source), cell(c.receiver), atom(c.atom), c.value, c.channel});
      }
      for (const auto& [d, entries] : s.tables) {
        auto& dst = t.tables[region(d)];
        for (const TableEntry& e : entries) dst.push_back({atom(e.atom), e.value, e.channel});
      }
      out.snapshots.push_back(std::move(t));
    }
    return out;
  };
  ThermoModel out;
  out.grid = g2;
  out.body = region(m.body);
  out.time = m.time;
  for (const auto& e : m.energy) out.energy.push_back(measure(e));
  for (const auto& s : m.entropy) out.entropy.push_back(measure(s));
  out.heat = family(m.heat);
  out.entropy_flux = family(m.entropy_flux);
  return out;
}

CellSet space_of(const ThermoModel& m) {
  CellSet out{m.grid.spacing(), {}};
  for (CellId c : m.body.cells()) out.cells.push_back(m.grid.coord(c));
  std::sort(out.cells.begin(), out.cells.end());
  return out;
}

std::string time_text(const std::vector<double>& t) {
  std::string s = "{";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + format_double(t[i]);
  return s + "}";
}

std::string space_text(const CellSet& s) {
  std::string out = "h=" + format_double(s.spacing) + " {";
  for (std::size_t i = 0; i < s.cells.size(); ++i) {
    const CellCoord& c = s.cells[i];
    out += (i ? ",(" : "(") + std::to_string(c.x) + "," + std::to_string(c.y) + "," +
           std::to_string(c.z) + ")";
  }
  return out + "}";
}

std::size_t row_count(const ModelTables& t) {
  return t.energy.rows.size() + t.heat.rows.size() + t.entropy.rows.size() +
         t.entropy_flux.rows.size();
}

struct Candidate {
  std::string label;
  std::function<ThermoModel()> build;
};

// Heat density of one atom from source d at sample k.
double density(const ThermoModel& m, const FluxFamily& fam, const Region& d, const Atom& a,
               std::size_t k) {
  const FluxView v(fam.snapshots.at(k), d, m.grid, m.body);
  const Part p = a.is_face() ? Part({}, {a.face()}) : Part({a.cell()}, {});
  return v.eval(PartMask(p, m.grid));
}

ThermoModel shift_flux(const ThermoModel& base, bool entropy, const Region& d, const Atom& plus,
                       const Atom& minus, double delta) {
  ThermoModel m = base;
  FluxFamily& fam = entropy ? m.entropy_flux : m.heat;
  auto& tables = fam.snapshots.at(0).tables;
  auto it = tables.find(d);
  if (it == tables.end()) {
    const FluxView v(fam.snapshots[0], d, m.grid, m.body);
    it = tables.emplace(d, v.entries()).first;
  }
  it->second.push_back({plus, delta, Channel::automatic});
  it->second.push_back({minus, -delta, Channel::automatic});
  return m;
}

std::vector<Candidate> time_candidates(const ModelFamily& fam, bool tiny) {
  const ThermoModel& b = fam.base;
  const auto& t = b.time.samples();
  const std::size_t n = t.size();
  std::set<double> pool(t.begin(), t.end());
  for (std::size_t k = 0; k + 1 < n; ++k) pool.insert((t[k] + t[k + 1]) / 2);
  pool.insert(t[n - 1] + (t[n - 1] - t[n - 2]));
  pool.insert(t[0] - (t[1] - t[0]));
  const std::vector<double> v(pool.begin(), pool.end());

  std::vector<Candidate> out;
  const std::size_t cap = std::max<std::size_t>(2, fam.max_samples);
  for (std::size_t len = 2; len <= std::min(cap, v.size()); ++len) {
    // Increasing index sequences of length len over the pool.
    std::vector<std::size_t> idx(len);
    for (std::size_t i = 0; i < len; ++i) idx[i] = i;
    while (true) {
      std::vector<double> samples;
      for (std::size_t i : idx) samples.push_back(v[i]);
      // Slice assignments: every map from new samples to old slices at tiny
      // scale, otherwise the order-preserving one (clamped at the last slice).
      std::size_t maps = 1;
      bool all_maps = tiny;
      if (all_maps) {
        for (std::size_t i = 0; i < len && maps <= 16; ++i) maps *= n;
        if (maps > 16) all_maps = false, maps = 1;
      }
      for (std::size_t code = 0; code < maps; ++code) {
        std::vector<std::size_t> slice(len);
        std::size_t c = code;
        for (std::size_t i = 0; i < len; ++i) {
          slice[i] = all_maps ? c % n : std::min(i, n - 1);
          c /= n;
        }
        std::string label = "time " + time_text(samples) + " slices";
        for (std::size_t s : slice) label += " " + std::to_string(s);
        out.push_back({label, [&b, samples, slice] {
                         ThermoModel m = b;
                         m.time = TimeGrid(samples);
                         m.energy.clear();
                         m.entropy.clear();
                         m.heat.snapshots.clear();
                         m.entropy_flux.snapshots.clear();
                         for (std::size_t s : slice) {
                           m.energy.push_back(b.energy[s]);
                           m.entropy.push_back(b.entropy[s]);
                           m.heat.snapshots.push_back(b.heat.snapshots[s]);
                           m.entropy_flux.snapshots.push_back(b.entropy_flux.snapshots[s]);
                         }
                         return m;
                       }});
      }
      // Next combination.
      std::size_t i = len;
      while (i > 0 && idx[i - 1] == v.size() - len + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < len; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

std::vector<Candidate> space_candidates(const ModelFamily& fam) {
  const ThermoModel& b = fam.base;
  const Grid& g = b.grid;
  const int n[3] = {g.nx(), g.ny(), g.nz()};
  const char* axis[3] = {"x", "y", "z"};
  std::vector<Candidate> out;
  for (int a = 0; a < 3; ++a) {
    SpaceMap sm{};
    sm[a] = {-1, n[a] - 1};
    out.push_back({std::string("reflect along ") + axis[a], [&b, sm] { return remap(b, b.grid, sm); }});
  }
  for (int shift = 0; shift <= 1; ++shift) {
    for (int a = 0; a < 3; ++a) {
      int m[3] = {n[0], n[1], n[2]};
      ++m[a];
      const Grid g2(m[0], m[1], m[2], g.spacing());
      SpaceMap sm{};
      sm[a].offset = shift;
      out.push_back({std::string(shift ? "translate along " : "extend along ") + axis[a],
                     [&b, g2, sm] { return remap(b, g2, sm); }});
    }
  }
  for (double f : {2.0, 0.5}) {
    const Grid g2(n[0], n[1], n[2], g.spacing() * f);
    out.push_back({"scale spacing by " + format_double(f), [&b, g2] { return remap(b, g2, SpaceMap{}); }});
  }
  return out;
}

std::vector<Candidate> measure_candidates(const ModelFamily& fam, bool entropy) {
  const ThermoModel& b = fam.base;
  std::vector<Candidate> out;
  for (CellId c : b.body.cells()) {
    for (double delta : {1.0, -1.0}) {
      const CellCoord x = b.grid.coord(c);
      out.push_back({std::string(entropy ? "S" : "E") + (delta > 0 ? " + 1" : " - 1") +
                         " on cell (" + std::to_string(x.x) + "," + std::to_string(x.y) + "," +
                         std::to_string(x.z) + ") at every sample",
                     [&b, c, delta, entropy] {
                       ThermoModel m = b;
                       for (auto& mu : entropy ? m.entropy : m.energy) mu.densities().add(c, delta);
                       return m;
                     }});
    }
  }
  return out;
}

// Moves flux from one atom of a cell's closure to another with the source
// being the exterior of that cell, so the cell's balance is unchanged.
std::vector<Candidate> flux_candidates(const ModelFamily& fam, bool entropy) {
  const ThermoModel& b = fam.base;
  const Grid& g = b.grid;
  std::vector<Candidate> out;
  if (b.samples() == 0) return out;
  const FluxFamily& src = entropy ? b.entropy_flux : b.heat;
  for (CellId c : b.body.cells()) {
    const Region d = exterior(Region{c}, g);
    if (d.empty() || !b.declares_source(src, d) || !b.declares_source(b.heat, d)) continue;
    std::vector<Atom> faces;
    for (FaceId f : g.faces_of(c)) {
      const auto adj = g.cells_of(f);
      const bool inner = adj[0] && adj[1] && b.body.contains(*adj[0]) && b.body.contains(*adj[1]);
      if (inner && density(b, b.heat, d, Atom::of(f), 0) != 0.0) faces.push_back(Atom::of(f));
    }
    std::vector<std::pair<Atom, Atom>> moves;
    for (std::size_t i = 0; i < faces.size(); ++i) {
      for (std::size_t j = i + 1; j < faces.size(); ++j) moves.emplace_back(faces[i], faces[j]);
    }
    for (const Atom& f : faces) moves.emplace_back(Atom::of(c), f);
    for (const auto& [plus, minus] : moves) {
      const std::string label = std::string(entropy ? "M" : "H") + " from " + to_string(d, g) +
                                " at sample 0: +0.5 on " +
                                (plus.is_face() ? to_string(g.face_coord(plus.face())) : "the cell") +
                                ", -0.5 on " + to_string(g.face_coord(minus.face()));
      out.push_back({label, [&b, d, plus, minus, entropy] {
                       return shift_flux(b, entropy, d, plus, minus, 0.5);
                     }});
    }
  }
  return out;
}

const char* const kFunctionNames[4] = {"E", "H", "S", "M"};

std::array<const Graph*, 4> graphs(const ModelTables& t) {
  return {&t.energy, &t.heat, &t.entropy, &t.entropy_flux};
}

int function_index(PrimitiveId p) {
  switch (p) {
    case PrimitiveId::E: return 0;
    case PrimitiveId::H: return 1;
    case PrimitiveId::S: return 2;
    case PrimitiveId::M: return 3;
    default: return -1;
  }
}

class Search {
 public:
  Search(const ModelFamily& f, const std::string& target) : fam_(f), target_(target) {
    const CheckReport rep = check_all(f.base, f.tol, f.lim);
    if (!rep.pass()) throw PreconditionError("base model violates the axioms");
    base_tables_ = tables(f.base, f.lim);
    base_time_ = define_time(base_tables_);
    base_space_ = define_space(base_tables_);
    tiny_ = row_count(base_tables_) <= f.cross_check_rows;
  }

  bool tiny() const { return tiny_; }

  void reject(const std::string& why) {
    for (auto& [r, n] : result_.rejected) {
      if (r == why) {
        ++n;
        return;
      }
    }
    result_.rejected.emplace_back(why, 1);
  }

  // Projection argument for candidates that change TIME or SPACE: every
  // function has the changed set as a projection of its domain, so none of
  // the four graphs can stay fixed.
  bool projection_rejects(const ThermoModel& c, PrimitiveId target) {
    if (target == PrimitiveId::TIME) {
      if (c.time == base_time_) return false;
    } else if (space_of(c) == base_space_) {
      return false;
    }
    if (tiny_) {
      const ModelTables t = tables(c, fam_.lim);
      const bool changed = target == PrimitiveId::TIME ? define_time(t) != base_time_
                                                       : define_space(t) != base_space_;
      int differing = 0;
      const auto a = graphs(t);
      const auto b = graphs(base_tables_);
      for (int i = 0; i < 4; ++i) differing += *a[i] != *b[i];
      if (!changed || differing != 4) {
        throw Error("projection argument contradicted by graph comparison");
      }
      ++cross_checked_;
    }
    return true;
  }

  SearchResult run(const std::vector<Candidate>& cands, PrimitiveId target, bool projection) {
    result_.family_size = cands.size();
    for (const Candidate& cand : cands) {
      if (result_.examined == fam_.budget) break;
      ++result_.examined;
      const ThermoModel c = cand.build();
      if (projection) {
        if (projection_rejects(c, target)) {
          reject(std::string(target == PrimitiveId::TIME ? "TIME" : "SPACE") +
                 " changed, so the graphs of E, H, S, M change");
          continue;
        }
        reject(std::string(target == PrimitiveId::TIME ? "TIME" : "SPACE") + " unchanged");
        continue;
      }
      if (accept(c, cand.label, target)) return finish();
    }
    return finish();
  }

  bool accept(const ThermoModel& c, const std::string& label, PrimitiveId target) {
    const int ti = function_index(target);
    const ModelTables t = tables(c, fam_.lim);
    const auto a = graphs(t);
    const auto b = graphs(base_tables_);
    if (*a[ti] == *b[ti]) {
      reject(std::string(kFunctionNames[ti]) + " unchanged");
      return false;
    }
    for (int i = 0; i < 4; ++i) {
      if (i != ti && *a[i] != *b[i]) {
        reject(std::string("graph of ") + kFunctionNames[i] + " changes");
        return false;
      }
    }
    if (define_time(t) != base_time_ || define_space(t) != base_space_) {
      reject("TIME or SPACE changes");
      return false;
    }
    const CheckReport rep = check_all(c, fam_.tol, fam_.lim);
    if (!rep.pass()) {
      for (const auto& r : rep.results) {
        if (r.verdict == Verdict::fail) {
          reject("candidate violates " + r.id);
          break;
        }
      }
      return false;
    }
    WitnessPair w{fam_.base, c, kFunctionNames[ti], std::nullopt, {}};
    w.certificate.push_back("second model: " + label);
    w.certificate.push_back(std::string("graph of ") + kFunctionNames[ti] + " differs");
    for (int i = 0; i < 4; ++i) {
      if (i != ti) w.certificate.push_back(std::string("graph of ") + kFunctionNames[i] + " identical");
    }
    w.certificate.push_back("TIME identical: " + time_text(base_time_.samples()));
    w.certificate.push_back("SPACE identical: " + space_text(base_space_));
    w.certificate.push_back("both models pass all checks");
    result_.witness = std::move(w);
    return true;
  }

  SearchResult& result() { return result_; }

  SearchResult finish() {
    using O = SearchResult::Outcome;
    if (result_.witness) {
      result_.outcome = O::witness;
    } else if (result_.examined < result_.family_size) {
      result_.outcome = O::inconclusive;
      result_.certificate.push_back("budget of " + std::to_string(fam_.budget) +
                                    " candidates exhausted after " +
                                    std::to_string(result_.examined) + " of " +
                                    std::to_string(result_.family_size));
    } else {
      result_.outcome = O::none_found;
      result_.certificate.push_back("all " + std::to_string(result_.family_size) + " candidates for " +
                                    target_ + " rejected");
      if (!base_tables_.exhaustive) {
        result_.certificate.push_back("source lists of the flux graphs are sampled");
      }
    }
    for (const auto& [why, n] : result_.rejected) {
      result_.certificate.push_back(std::to_string(n) + " rejected: " + why);
    }
    if (cross_checked_ > 0) {
      result_.certificate.push_back(std::to_string(cross_checked_) +
                                    " rejections confirmed by full graph comparison");
    }
    return result_;
  }

  const ModelTables& base_tables() const { return base_tables_; }

 private:
  const ModelFamily& fam_;
  std::string target_;
  ModelTables base_tables_;
  TimeGrid base_time_;
  CellSet base_space_;
  bool tiny_ = false;
  std::size_t cross_checked_ = 0;
  SearchResult result_;
};

}  // namespace

SearchResult independence_search(const ModelFamily& family, PrimitiveId target) {
  Search s(family, to_string(target));
  switch (target) {
    case PrimitiveId::TIME:
      return s.run(time_candidates(family, s.tiny()), target, true);
    case PrimitiveId::SPACE:
      return s.run(space_candidates(family), target, true);
    case PrimitiveId::E:
    case PrimitiveId::S:
      return s.run(measure_candidates(family, target == PrimitiveId::S), target, false);
    case PrimitiveId::H:
    case PrimitiveId::M:
      return s.run(flux_candidates(family, target == PrimitiveId::M), target, false);
  }
  throw PreconditionError("unknown primitive");
}

SearchResult control_search(const ModelFamily& family) {
  Search s(family, "g");
  SearchResult& r = s.result();
  const double values[] = {family.dummy + 1.0, family.dummy - 1.0};
  r.family_size = 2;
  for (double g2 : values) {
    if (r.examined == family.budget) break;
    ++r.examined;
    if (g2 == family.dummy) {
      s.reject("g unchanged");
      continue;
    }
    // The second model is the same six-tuple; g occurs in no axiom.
    WitnessPair w{family.base, family.base, "g", std::make_pair(family.dummy, g2), {}};
    w.certificate.push_back("second model: g = " + format_double(g2));
    w.certificate.push_back("graphs of E, H, S, M identical");
    w.certificate.push_back("TIME and SPACE identical");
    w.certificate.push_back("both models pass all checks");
    r.witness = std::move(w);
    break;
  }
  return s.finish();
}

// --- timeless view ----------------------------------------------------------

TimelessModel to_timeless(const ThermoModel& m) {
  validate_model(m);
  TimelessModel tm;
  tm.grid = m.grid;
  tm.body = m.body;
  tm.heat.exchange_based = m.heat.exchange_based;
  tm.entropy_flux.exchange_based = m.entropy_flux.exchange_based;
  for (std::size_t k = 0; k < m.samples(); ++k) {
    const double t = m.time[k];
    tm.energy.emplace_back(t, m.energy[k]);
    tm.entropy.emplace_back(t, m.entropy[k]);
    tm.heat.slices.emplace_back(t, m.heat.snapshots[k]);
    tm.entropy_flux.slices.emplace_back(t, m.entropy_flux.snapshots[k]);
  }
  return tm;
}

namespace {

template <typename Slice>
std::vector<double> indices_of(const Sliced<Slice>& s, const char* name) {
  std::vector<double> v;
  for (const auto& [t, slice] : s) v.push_back(t);
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end()) {
    throw IllFormedModel(std::string(name) + " has two values at one last component");
  }
  return v;
}

template <typename Slice>
std::vector<Slice> ordered(const Sliced<Slice>& s) {
  Sliced<Slice> copy = s;
  std::stable_sort(copy.begin(), copy.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Slice> out;
  for (auto& [t, slice] : copy) out.push_back(std::move(slice));
  return out;
}

}  // namespace

ThermoModel with_defined_time(const TimelessModel& tm) {
  const auto e = indices_of(tm.energy, "E");
  if (indices_of(tm.heat.slices, "H") != e || indices_of(tm.entropy, "S") != e ||
      indices_of(tm.entropy_flux.slices, "M") != e) {
    throw IllFormedModel("last components of E, H, S, M disagree");
  }
  if (auto d = time_grid_defect(e)) throw IllFormedModel("last components of E: " + *d);
  ThermoModel m;
  m.grid = tm.grid;
  m.body = tm.body;
  m.time = TimeGrid(e);
  m.energy = ordered(tm.energy);
  m.entropy = ordered(tm.entropy);
  m.heat.exchange_based = tm.heat.exchange_based;
  m.heat.snapshots = ordered(tm.heat.slices);
  m.entropy_flux.exchange_based = tm.entropy_flux.exchange_based;
  m.entropy_flux.snapshots = ordered(tm.entropy_flux.slices);
  return m;
}

std::string nt_id(const std::string& id) {
  static const std::map<std::string, std::string> map{
      {"T1", "NT1"},   {"T2", "NT2"},   {"T3", "TIME-DEF"}, {"T4", "NT3"},   {"T5", "NT4"},
      {"T6", "NT5"},   {"T7", "NT6"},   {"T8", "NT7"},      {"T9", "NT8"},   {"T10", "NT9"},
      {"T11", "NT10"}, {"T12", "NT4-S"}, {"T13", "NT11"},   {"T14", "NT12"}, {"T15", "NT13"},
      {"T16", "NT14"}, {"T17", "NT15"}, {"THM1", "THM1"},   {"DECOMP", "DECOMP"}};
  auto it = map.find(id);
  if (it == map.end()) throw PreconditionError("no timeless counterpart for " + id);
  return it->second;
}

const std::vector<std::string>& nt_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& id : axiom_ids()) out.push_back(nt_id(id));
    return out;
  }();
  return ids;
}

CheckReport check_all_NT(const TimelessModel& tm, const Tolerance& tol,
                         const EnumerationLimits& lim) {
  ThermoModel m;
  try {
    m = with_defined_time(tm);
  } catch (const IllFormedModel& e) {
    CheckReport out;
    for (const auto& id : nt_ids()) {
      CheckResult r;
      r.id = id;
      r.verdict = Verdict::fail;
      r.notes.push_back(std::string("no common last component: ") + e.what());
      out.results.push_back(std::move(r));
    }
    return out;
  }
  CheckReport rep = check_all(m, tol, lim);
  for (CheckResult& r : rep.results) r.id = nt_id(r.id);
  return rep;
}

}  // namespace gwt
