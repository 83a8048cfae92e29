#include "gwt/model_file.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <deque>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include "gwt/text.hpp"

namespace gwt {

namespace {

std::string render(const std::string& source, const std::vector<Diagnostic>& diags) {
  std::string out;
  for (const Diagnostic& d : diags) {
    if (!out.empty()) out += '\n';
    out += source + ':';
    if (d.line > 0) out += std::to_string(d.line) + ':' + std::to_string(d.column) + ':';
    out += ' ' + d.message;
  }
  return out;
}

}  // namespace

ParseError::ParseError(std::string source, std::vector<Diagnostic> diags)
    : Error(render(source, diags)), source_(std::move(source)), diags_(std::move(diags)) {}

namespace {

constexpr std::string_view kMagic = "gwtherm-model";

struct Token {
  std::string text;
  std::size_t column = 0;  // 1-based
};

struct Line {
  std::size_t number = 0;
  std::vector<Token> tokens;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '#') break;
    if (s[i] == ' ' || s[i] == '\t' || s[i] == '\r') {
      ++i;
      continue;
    }
    if (s[i] == '[' || s[i] == ']' || s[i] == '=') {
      out.push_back({std::string(1, s[i]), i + 1});
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r' && s[i] != '#' &&
           s[i] != '[' && s[i] != ']' && s[i] != '=') {
      ++i;
    }
    out.push_back({std::string(s.substr(start, i - start)), start + 1});
  }
  return out;
}

struct Section {
  Line header;  // tokens between the brackets
  std::vector<Line> lines;
};

class Parser {
 public:
  Parser(std::string_view text, std::string source) : source_(std::move(source)) {
    split(text);
  }

  ModelFile run() {
    ModelFile out;
    std::map<std::string, const Section*> singles;
    bool tables = false;
    const Section* gen = nullptr;
    for (const Section& s : sections_) {
      const std::string& kind = s.header.tokens[0].text;
      if (kind == "generator") {
        if (gen != nullptr) error(s.header, 0, "duplicate [generator] section");
        gen = &s;
      } else if (kind == "grid" || kind == "time" || kind == "body" ||
                 ((kind == "heat" || kind == "entropy-flux") && s.header.tokens.size() == 1)) {
        if (singles.count(kind)) error(s.header, 0, "duplicate [" + kind + "] section");
        singles[kind] = &s;
        tables = true;
      } else if (kind == "energy" || kind == "entropy" || kind == "heat" || kind == "entropy-flux") {
        tables = true;
      } else {
        error(s.header, 0, "unknown section [" + kind + "]");
      }
    }
    if (gen != nullptr && tables) {
      error(gen->header, 0, "a file holds either a generator block or explicit tables, not both");
      fail();
    }
    if (gen != nullptr) {
      HeatParams p = generator(*gen);
      if (!diags_.empty()) fail();
      try {
        out.model = generate_heat_grid(p);
      } catch (const Error& e) {
        error(gen->header, 0, std::string("generator: ") + e.what());
        fail();
      }
      out.generator = p;
      return out;
    }
    bool missing = false;
    for (const char* need : {"grid", "time", "body"}) {
      if (!singles.count(need)) {
        diags_.push_back({0, 0, std::string("missing [") + need + "] section"});
        missing = true;
      }
    }
    if (missing) fail();
    ThermoModel& m = out.model;
    if (!grid(*singles["grid"], m)) fail();
    const bool timed = time(*singles["time"], m);
    if (!body(*singles["body"], m) || !timed) fail();
    m.energy = zero_measures(m.grid, m.body, m.samples());
    m.entropy = zero_measures(m.grid, m.body, m.samples());
    m.heat.snapshots.assign(m.samples(), {});
    m.entropy_flux.snapshots.assign(m.samples(), {});
    if (singles.count("heat")) family_mode(*singles["heat"], m.heat);
    if (singles.count("entropy-flux")) family_mode(*singles["entropy-flux"], m.entropy_flux);
    std::map<std::string, const Line*> seen;
    for (const Section& s : sections_) {
      const std::string& kind = s.header.tokens[0].text;
      if (s.header.tokens.size() < 2) continue;
      if (kind != "energy" && kind != "entropy" && kind != "heat" && kind != "entropy-flux") continue;
      std::string key;
      for (const Token& t : s.header.tokens) key += t.text + ' ';
      if (seen.count(key)) {
        error(s.header, 0, "duplicate section [" + key.substr(0, key.size() - 1) + "]");
        continue;
      }
      seen[key] = &s.header;
      const auto k = sample_index(s.header, m);
      if (!k) continue;
      if (kind == "energy" || kind == "entropy") {
        measure(s, (kind == "energy" ? m.energy : m.entropy)[*k], m);
      } else {
        snapshot(s, (kind == "heat" ? m.heat : m.entropy_flux), *k, m);
      }
    }
    if (!diags_.empty()) fail();
    for (const std::string& d : structural_defects(m)) diags_.push_back({0, 0, d});
    if (!diags_.empty()) fail();
    return out;
  }

 private:
  [[noreturn]] void fail() {
    std::stable_sort(diags_.begin(), diags_.end(),
                     [](const Diagnostic& a, const Diagnostic& b) { return a.line < b.line; });
    throw ParseError(source_, diags_);
  }

  void error(const Line& l, std::size_t tok, const std::string& msg) {
    const std::size_t col = tok < l.tokens.size() ? l.tokens[tok].column : 1;
    diags_.push_back({l.number, col, msg});
  }

  void split(std::string_view text) {
    std::size_t number = 0;
    bool magic = false;
    Section* current = nullptr;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      Line line{++number, tokenize(text.substr(pos, end - pos))};
      pos = end + 1;
      if (line.tokens.empty()) {
        if (end == text.size()) break;
        continue;
      }
      if (!magic) {
        magic = true;
        if (line.tokens.size() != 2 || line.tokens[0].text != kMagic || line.tokens[1].text != "1") {
          error(line, 0, "expected header 'gwtherm-model 1'");
        }
        continue;
      }
      if (line.tokens[0].text == "[") {
        if (line.tokens.size() < 3 || line.tokens.back().text != "]") {
          error(line, 0, "malformed section header");
          current = nullptr;
          continue;
        }
        Line h{line.number, {line.tokens.begin() + 1, line.tokens.end() - 1}};
        sections_.push_back({h, {}});
        current = &sections_.back();
        continue;
      }
      if (current == nullptr) {
        error(line, 0, "entry outside a section");
        continue;
      }
      current->lines.push_back(std::move(line));
      if (end == text.size()) break;
    }
    if (!magic) diags_.push_back({0, 0, "empty file: expected header 'gwtherm-model 1'"});
  }

  // "key = v1 v2 ..."; returns the values or nothing after a diagnostic.
  std::optional<std::pair<std::string, std::vector<Token>>> assignment(const Line& l) {
    if (l.tokens.size() < 2 || l.tokens[1].text != "=") {
      error(l, 0, "expected 'key = value'");
      return std::nullopt;
    }
    return std::make_pair(l.tokens[0].text,
                          std::vector<Token>(l.tokens.begin() + 2, l.tokens.end()));
  }

  std::optional<double> number(const Line& l, const Token& t) {
    auto v = parse_double(t.text);
    if (!v) diags_.push_back({l.number, t.column, "expected a number, got '" + t.text + "'"});
    return v;
  }

  std::optional<long long> integer(const Line& l, const Token& t) {
    auto v = parse_integer(t.text);
    if (!v) diags_.push_back({l.number, t.column, "expected an integer, got '" + t.text + "'"});
    return v;
  }

  std::optional<CellCoord> coord(const Line& l, const Token& t) {
    const std::string& s = t.text;
    if (s.size() >= 7 && s.front() == '(' && s.back() == ')') {
      std::vector<long long> v;
      std::size_t start = 1;
      for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] == ',' || i + 1 == s.size()) {
          auto x = parse_integer(std::string_view(s).substr(start, i - start));
          if (!x) break;
          v.push_back(*x);
          start = i + 1;
        }
      }
      if (v.size() == 3) return CellCoord{static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2])};
    }
    diags_.push_back({l.number, t.column, "expected a cell '(x,y,z)', got '" + s + "'"});
    return std::nullopt;
  }

  std::optional<CellId> cell(const Line& l, const Token& t, const Grid& g) {
    auto c = coord(l, t);
    if (!c) return std::nullopt;
    if (!g.in_bounds(*c)) {
      diags_.push_back({l.number, t.column, "cell " + t.text + " outside the grid"});
      return std::nullopt;
    }
    return g.cell(*c);
  }

  std::optional<Atom> atom(const Line& l, const Token& t, const Grid& g) {
    if (!t.text.empty() && t.text.front() == '(') {
      auto c = cell(l, t, g);
      if (!c) return std::nullopt;
      return Atom::of(*c);
    }
    const std::string& s = t.text;
    if (s.size() >= 7 && (s[0] == 'x' || s[0] == 'y' || s[0] == 'z') && s[1] == ':') {
      std::vector<long long> v;
      std::size_t start = 2;
      for (std::size_t i = 2; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == ':') {
          auto x = parse_integer(std::string_view(s).substr(start, i - start));
          if (!x) break;
          v.push_back(*x);
          start = i + 1;
        }
      }
      if (v.size() == 3) {
        const Axis a = static_cast<Axis>(s[0] - 'x');
        const FaceCoord f{a, static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2])};
        int n[3] = {f.x, f.y, f.z};
        bool ok = true;
        for (int ax = 0; ax < 3; ++ax) {
          const int hi = g.extent(static_cast<Axis>(ax)) + (ax == static_cast<int>(a) ? 1 : 0);
          ok = ok && n[ax] >= 0 && n[ax] < hi;
        }
        if (!ok) {
          diags_.push_back({l.number, t.column, "face " + s + " outside the grid"});
          return std::nullopt;
        }
        return Atom::of(g.face(f));
      }
    }
    diags_.push_back({l.number, t.column, "expected a cell '(x,y,z)' or a face 'a:i:j:k', got '" + s + "'"});
    return std::nullopt;
  }

  std::optional<Channel> channel(const Line& l, const Token& t) {
    if (t.text == "automatic") return Channel::automatic;
    if (t.text == "radiative") return Channel::radiative;
    if (t.text == "conductive") return Channel::conductive;
    if (t.text == "unsplit") return Channel::unsplit;
    diags_.push_back({l.number, t.column, "unknown channel '" + t.text + "'"});
    return std::nullopt;
  }

  bool grid(const Section& s, ThermoModel& m) {
    std::optional<std::array<int, 3>> dims;
    std::optional<double> h;
    for (const Line& l : s.lines) {
      auto a = assignment(l);
      if (!a) continue;
      const auto& [key, vals] = *a;
      if (key == "dims") {
        if (vals.size() != 3) {
          error(l, 0, "dims takes three integers");
          continue;
        }
        std::array<int, 3> d{};
        bool ok = true;
        for (int i = 0; i < 3; ++i) {
          auto v = integer(l, vals[i]);
          if (v && (*v < 1 || *v > 1024)) {
            diags_.push_back({l.number, vals[i].column, "grid dimension must be in [1, 1024]"});
            v.reset();
          }
          ok = ok && v.has_value();
          if (v) d[i] = static_cast<int>(*v);
        }
        if (ok) dims = d;
      } else if (key == "spacing") {
        if (vals.size() != 1) {
          error(l, 0, "spacing takes one number");
          continue;
        }
        auto v = number(l, vals[0]);
        if (v && !(*v > 0 && std::isfinite(*v))) {
          diags_.push_back({l.number, vals[0].column, "spacing must be positive"});
        } else if (v) {
          h = v;
        }
      } else {
        error(l, 0, "unknown key '" + key + "' in [grid]");
      }
    }
    if (!dims) error(s.header, 0, "[grid] needs 'dims'");
    if (!h) error(s.header, 0, "[grid] needs 'spacing'");
    if (dims && h) m.grid = Grid((*dims)[0], (*dims)[1], (*dims)[2], *h);
    return dims && h;
  }

  bool time(const Section& s, ThermoModel& m) {
    std::vector<double> samples;
    bool any = false;
    const std::size_t before = diags_.size();
    for (const Line& l : s.lines) {
      auto a = assignment(l);
      if (!a) continue;
      if (a->first != "samples") {
        error(l, 0, "unknown key '" + a->first + "' in [time]");
        continue;
      }
      any = true;
      for (const Token& t : a->second) {
        if (auto v = number(l, t)) {
          if (!std::isfinite(*v)) {
            diags_.push_back({l.number, t.column, "[time]: samples must be finite"});
          } else if (!samples.empty() && !(*v > samples.back())) {
            diags_.push_back({l.number, t.column,
                              *v == samples.back() ? "[time]: duplicated sample " + t.text
                                                   : "[time]: samples must increase"});
          }
          samples.push_back(*v);
        }
      }
    }
    if (!any) {
      error(s.header, 0, "[time] needs 'samples'");
      return false;
    }
    if (auto d = time_grid_defect(samples)) {
      if (diags_.size() == before) error(s.header, 0, "[time]: " + *d);
      return false;
    }
    m.time = TimeGrid(samples);
    return true;
  }

  bool body(const Section& s, ThermoModel& m) {
    std::vector<CellId> cells;
    const std::size_t before = diags_.size();
    for (const Line& l : s.lines) {
      auto a = assignment(l);
      if (!a) continue;
      if (a->first != "cells") {
        error(l, 0, "unknown key '" + a->first + "' in [body]");
        continue;
      }
      if (a->second.size() == 1 && a->second[0].text == "all") {
        const Region all = Region::all(m.grid);
        cells.insert(cells.end(), all.cells().begin(), all.cells().end());
        continue;
      }
      for (const Token& t : a->second) {
        if (auto c = cell(l, t, m.grid)) cells.push_back(*c);
      }
    }
    if (cells.empty()) error(s.header, 0, "[body] has no cells");
    m.body = Region(cells);
    return diags_.size() == before;
  }

  void family_mode(const Section& s, FluxFamily& fam) {
    for (const Line& l : s.lines) {
      auto a = assignment(l);
      if (!a) continue;
      if (a->first != "sources" || a->second.size() != 1 ||
          (a->second[0].text != "universe" && a->second[0].text != "tables")) {
        error(l, 0, "expected 'sources = universe' or 'sources = tables'");
        continue;
      }
      fam.exchange_based = a->second[0].text == "universe";
    }
  }

  std::optional<std::size_t> sample_index(const Line& h, const ThermoModel& m) {
    auto k = integer(h, h.tokens[1]);
    if (!k) return std::nullopt;
    if (*k < 0 || static_cast<std::size_t>(*k) >= m.samples()) {
      error(h, 1, "sample index " + h.tokens[1].text + " does not match the [time] section");
      return std::nullopt;
    }
    return static_cast<std::size_t>(*k);
  }

  // "ATOM = v" or "part ATOM... = v".
  void measure(const Section& s, TabulatedMeasure& mu, const ThermoModel& m) {
    if (s.header.tokens.size() != 2) error(s.header, 2, "unexpected tokens in section header");
    for (const Line& l : s.lines) {
      const bool part = l.tokens[0].text == "part";
      std::size_t eq = 0;
      while (eq < l.tokens.size() && l.tokens[eq].text != "=") ++eq;
      const std::size_t first = part ? 1 : 0;
      if (eq == l.tokens.size() || eq + 2 != l.tokens.size() || eq == first ||
          (!part && eq != 1)) {
        error(l, 0, part ? "expected 'part ATOM... = value'" : "expected 'ATOM = value'");
        continue;
      }
      auto v = number(l, l.tokens[eq + 1]);
      std::vector<CellId> cs;
      std::vector<FaceId> fs;
      bool ok = v.has_value();
      for (std::size_t i = first; i < eq; ++i) {
        auto a = atom(l, l.tokens[i], m.grid);
        if (!a) {
          ok = false;
          continue;
        }
        if (a->is_face()) fs.push_back(a->face());
        else cs.push_back(a->cell());
      }
      if (!ok) continue;
      const Part p(cs, fs);
      if (!mu.densities().hosts(p)) {
        error(l, first, "outside the body");
        continue;
      }
      if (part) {
        if (mu.is_tabulated(p)) error(l, 0, "part listed twice");
        mu.tabulate(p, *v);
      } else if (!cs.empty()) {
        mu.densities().set(cs[0], *v);
      } else {
        mu.densities().set(fs[0], *v);
      }
    }
  }

  void snapshot(const Section& s, FluxFamily& fam, std::size_t k, const ThermoModel& m) {
    FluxSnapshot& snap = fam.snapshots[k];
    const auto& h = s.header.tokens;
    std::vector<TableEntry>* table = nullptr;
    if (h.size() > 2) {
      if (h[2].text != "source" || h.size() < 4) {
        error(s.header, 2, "expected 'source CELL...'");
        return;
      }
      std::vector<CellId> cells;
      bool ok = true;
      for (std::size_t i = 3; i < h.size(); ++i) {
        auto c = cell(s.header, h[i], m.grid);
        ok = ok && c.has_value();
        if (c) cells.push_back(*c);
      }
      if (!ok) return;
      const Region d(cells);
      if (!in_material_universe(d, m.body, m.grid)) {
        error(s.header, 3, "unknown source: region is not in the material universe of the body");
        return;
      }
      table = &snap.tables[d];
    }
    for (const Line& l : s.lines) {
      const auto& t = l.tokens;
      if (table != nullptr) {
        // ATOM = v [CHANNEL]
        if (t.size() < 3 || t.size() > 4 || t[1].text != "=") {
          error(l, 0, "expected 'ATOM = value [channel]'");
          continue;
        }
        auto a = atom(l, t[0], m.grid);
        auto v = number(l, t[2]);
        auto c = t.size() == 4 ? channel(l, t[3]) : std::optional<Channel>(Channel::automatic);
        if (a && v && c) table->push_back({*a, *v, *c});
        continue;
      }
      // exchange SRC -> RCV at ATOM = v [CHANNEL]
      if (t.size() < 8 || t.size() > 9 || t[0].text != "exchange" || t[2].text != "->" ||
          t[4].text != "at" || t[6].text != "=") {
        error(l, 0, "expected 'exchange CELL -> CELL at ATOM = value [channel]'");
        continue;
      }
      auto src = cell(l, t[1], m.grid);
      auto rcv = cell(l, t[3], m.grid);
      auto a = atom(l, t[5], m.grid);
      auto v = number(l, t[7]);
      auto c = t.size() == 9 ? channel(l, t[8]) : std::optional<Channel>(Channel::automatic);
      if (src && rcv && a && v && c) snap.exchange.push_back({*src, *rcv, *a, *v, *c});
    }
  }

  HeatParams generator(const Section& s) {
    HeatParams p;
    std::map<std::string, const Line*> seen;
    // Cells are given as coordinates; resolve them once the dims are known.
    std::vector<std::pair<const Line*, std::vector<Token>>> radiators;
    std::optional<std::pair<const Line*, Token>> bath;
    for (const Line& l : s.lines) {
      auto a = assignment(l);
      if (!a) continue;
      const auto& [key, vals] = *a;
      if (seen.count(key)) {
        error(l, 0, "duplicate key '" + key + "'");
        continue;
      }
      seen[key] = &l;
      auto one = [&]() -> const Token* {
        if (vals.size() != 1) {
          error(l, 0, "'" + key + "' takes one value");
          return nullptr;
        }
        return &vals[0];
      };
      auto set_int = [&](int& dst) {
        if (const Token* t = one()) {
          if (auto v = integer(l, *t)) dst = static_cast<int>(*v);
        }
      };
      auto set_num = [&](double& dst) {
        if (const Token* t = one()) {
          if (auto v = number(l, *t)) dst = *v;
        }
      };
      if (key == "nx") set_int(p.nx);
      else if (key == "ny") set_int(p.ny);
      else if (key == "nz") set_int(p.nz);
      else if (key == "steps") set_int(p.steps);
      else if (key == "h") set_num(p.h);
      else if (key == "c") set_num(p.c);
      else if (key == "kc") set_num(p.kc);
      else if (key == "r") set_num(p.r);
      else if (key == "dt") set_num(p.dt);
      else if (key == "bath_capacity") set_num(p.bath_capacity);
      else if (key == "seed") {
        if (const Token* t = one()) {
          const std::string& x = t->text;
          const auto r = std::from_chars(x.data(), x.data() + x.size(), p.seed);
          if (r.ec != std::errc() || r.ptr != x.data() + x.size()) {
            diags_.push_back({l.number, t->column, "seed must be an integer in [0, 2^64)"});
          }
        }
      } else if (key == "theta0") {
        for (const Token& t : vals) {
          if (auto v = number(l, t)) p.theta0.push_back(*v);
        }
      } else if (key == "radiators") {
        radiators.emplace_back(&l, vals);
      } else if (key == "bath") {
        if (const Token* t = one()) bath.emplace(&l, *t);
      } else {
        error(l, 0, "unknown key '" + key + "' in [generator]");
      }
    }
    if (p.nx < 1 || p.ny < 1 || p.nz < 1 || p.nx > 1024 || p.ny > 1024 || p.nz > 1024) {
      error(s.header, 0, "generator: grid dimensions must be in [1, 1024]");
      return p;
    }
    const Grid g(p.nx, p.ny, p.nz, 1.0);
    for (const auto& [l, vals] : radiators) {
      for (const Token& t : vals) {
        const auto dash = t.text.find(")-(");
        if (dash == std::string::npos) {
          diags_.push_back({l->number, t.column, "expected a radiator pair '(x,y,z)-(x,y,z)'"});
          continue;
        }
        auto a = cell(*l, {t.text.substr(0, dash + 1), t.column}, g);
        auto b = cell(*l, {t.text.substr(dash + 2), t.column + dash + 2}, g);
        if (a && b) p.radiators.emplace_back(*a, *b);
      }
    }
    if (bath) {
      if (auto c = cell(*bath->first, bath->second, g)) p.bath = *c;
    }
    return p;
  }

  std::string source_;
  std::vector<Diagnostic> diags_;
  std::deque<Section> sections_;
};

// --- emitter ----------------------------------------------------------------

std::string coord_text(const Grid& g, CellId c) {
  const CellCoord x = g.coord(c);
  return "(" + std::to_string(x.x) + "," + std::to_string(x.y) + "," + std::to_string(x.z) + ")";
}

std::string atom_text(const Grid& g, const Atom& a) {
  return a.is_face() ? to_string(g.face_coord(a.face())) : coord_text(g, a.cell());
}

const char* channel_text(Channel c) {
  switch (c) {
    case Channel::automatic: return "automatic";
    case Channel::radiative: return "radiative";
    case Channel::conductive: return "conductive";
    case Channel::unsplit: return "unsplit";
  }
  return "automatic";
}

bool nonzero(double v) { return v != 0.0 || std::signbit(v); }

void emit_measure(std::ostream& os, const char* name, std::size_t k, const TabulatedMeasure& mu) {
  const GridMeasure& d = mu.densities();
  const Grid& g = d.grid();
  os << "\n[" << name << ' ' << k << "]\n";
  for (CellId c : d.host_cells()) {
    if (nonzero(d.cell_density(c))) os << coord_text(g, c) << " = " << format_double(d.cell_density(c)) << '\n';
  }
  for (FaceId f : d.host_faces()) {
    if (nonzero(d.face_density(f))) os << to_string(g.face_coord(f)) << " = " << format_double(d.face_density(f)) << '\n';
  }
  for (const auto& [p, v] : mu.table()) {
    os << "part";
    for (CellId c : p.cells()) os << ' ' << coord_text(g, c);
    for (FaceId f : p.faces()) os << ' ' << to_string(g.face_coord(f));
    os << " = " << format_double(v) << '\n';
  }
}

void emit_family(std::ostream& os, const char* name, const FluxFamily& fam, const Grid& g) {
  os << "\n[" << name << "]\nsources = " << (fam.exchange_based ? "universe" : "tables") << '\n';
  for (std::size_t k = 0; k < fam.snapshots.size(); ++k) {
    const FluxSnapshot& s = fam.snapshots[k];
    os << "\n[" << name << ' ' << k << "]\n";
    for (const Contribution& c : s.exchange) {
      os << "exchange " << coord_text(g, c.source) << " -> " << coord_text(g, c.receiver) << " at "
         << atom_text(g, c.atom) << " = " << format_double(c.value);
      if (c.channel != Channel::automatic) os << ' ' << channel_text(c.channel);
      os << '\n';
    }
    for (const auto& [d, entries] : s.tables) {
      os << "\n[" << name << ' ' << k << " source";
      for (CellId c : d.cells()) os << ' ' << coord_text(g, c);
      os << "]\n";
      for (const TableEntry& e : entries) {
        os << atom_text(g, e.atom) << " = " << format_double(e.value);
        if (e.channel != Channel::automatic) os << ' ' << channel_text(e.channel);
        os << '\n';
      }
    }
  }
}

}  // namespace

ModelFile parse_model(std::string_view text, const std::string& source) {
  return Parser(text, source).run();
}

ModelFile load_model(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, {{0, 0, "cannot read file"}});
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  return parse_model(text, path == "-" ? "<stdin>" : path);
}

std::string emit_model(const ThermoModel& m) {
  validate_model(m);
  const Grid& g = m.grid;
  std::ostringstream os;
  os << kMagic << " 1\n\n[grid]\ndims = " << g.nx() << ' ' << g.ny() << ' ' << g.nz()
     << "\nspacing = " << format_double(g.spacing()) << "\n\n[time]\nsamples =";
  for (double t : m.time.samples()) os << ' ' << format_double(t);
  os << "\n\n[body]\ncells =";
  if (m.body == Region::all(g)) {
    os << " all";
  } else {
    for (CellId c : m.body.cells()) os << ' ' << coord_text(g, c);
  }
  os << '\n';
  for (std::size_t k = 0; k < m.samples(); ++k) emit_measure(os, "energy", k, m.energy[k]);
  for (std::size_t k = 0; k < m.samples(); ++k) emit_measure(os, "entropy", k, m.entropy[k]);
  emit_family(os, "heat", m.heat, g);
  emit_family(os, "entropy-flux", m.entropy_flux, g);
  return os.str();
}

std::string emit_generator(const HeatParams& p) {
  validate(p);
  const Grid g(p.nx, p.ny, p.nz, 1.0);
  std::ostringstream os;
  os << kMagic << " 1\n\n[generator]\n"
     << "nx = " << p.nx << "\nny = " << p.ny << "\nnz = " << p.nz << "\nh = " << format_double(p.h)
     << "\nc = " << format_double(p.c) << "\nkc = " << format_double(p.kc)
     << "\nr = " << format_double(p.r) << "\ndt = " << format_double(p.dt)
     << "\nsteps = " << p.steps << "\nseed = " << p.seed << '\n';
  if (!p.radiators.empty()) {
    os << "radiators =";
    for (const auto& [a, b] : p.radiators) os << ' ' << coord_text(g, a) << '-' << coord_text(g, b);
    os << '\n';
  }
  if (!p.theta0.empty()) {
    os << "theta0 =";
    for (double t : p.theta0) os << ' ' << format_double(t);
    os << '\n';
  }
  if (p.bath) {
    os << "bath = " << coord_text(g, *p.bath) << "\nbath_capacity = " << format_double(p.bath_capacity)
       << '\n';
  }
  return os.str();
}

}  // namespace gwt
