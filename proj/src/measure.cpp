#include "gwt/measure.hpp"

#include <cmath>
#include <set>

#include "gwt/errors.hpp"

namespace gwt {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

// --- GridMeasure -----------------------------------------------------------

GridMeasure::GridMeasure(const Grid& g, const Region& host)
    : grid_(g),
      host_(host),
      host_cells_(g.cell_count(), 0),
      host_faces_(g.face_count(), 0),
      cells_(g.cell_count(), 0.0),
      faces_(g.face_count(), 0.0) {
  validate(host, g);
  for (CellId c : host.cells()) {
    host_cells_[c.value] = 1;
    for (FaceId f : g.faces_of(c)) host_faces_[f.value] = 1;
  }
}

bool GridMeasure::hosts(const Part& p) const {
  for (CellId c : p.cells()) {
    if (!grid_.valid(c) || !hosts(c)) return false;
  }
  for (FaceId f : p.faces()) {
    if (!grid_.valid(f) || !hosts(f)) return false;
  }
  return true;
}

void GridMeasure::set(CellId c, double v) {
  if (!grid_.valid(c) || !hosts(c)) {
    throw DomainError("cell " + std::to_string(c.value) + " is outside the measure's host");
  }
  cells_[c.value] = v;
}

void GridMeasure::set(FaceId f, double v) {
  if (!grid_.valid(f) || !hosts(f)) {
    throw DomainError("face " + std::to_string(f.value) + " is outside the measure's host");
  }
  faces_[f.value] = v;
}

double GridMeasure::eval(const Part& p) const {
  if (!hosts(p)) throw DomainError("part is outside the measure's host");
  double s = 0.0;
  for (CellId c : p.cells()) s += cells_[c.value];
  for (FaceId f : p.faces()) s += faces_[f.value];
  return s;
}

double GridMeasure::total() const {
  double s = 0.0;
  for (double v : cells_) s += v;
  for (double v : faces_) s += v;
  return s;
}

bool GridMeasure::all_finite() const {
  for (double v : cells_) {
    if (!std::isfinite(v)) return false;
  }
  for (double v : faces_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

std::vector<FaceId> GridMeasure::host_faces() const {
  std::vector<FaceId> out;
  for (std::size_t i = 0; i < host_faces_.size(); ++i) {
    if (host_faces_[i]) out.push_back(FaceId{static_cast<std::uint32_t>(i)});
  }
  return out;
}

// --- TabulatedMeasure -------------------------------------------------------

void TabulatedMeasure::tabulate(const Part& p, double value) {
  if (!base_.hosts(p)) throw DomainError("tabulated part is outside the measure's host");
  table_[p] = value;
}

double TabulatedMeasure::eval(const Part& p) const {
  if (auto it = table_.find(p); it != table_.end()) return it->second;
  return base_.eval(p);
}

// --- is_measure -------------------------------------------------------------

namespace {

struct Atoms {
  std::vector<CellId> cells;
  std::vector<FaceId> faces;
  std::size_t size() const { return cells.size() + faces.size(); }

  Part from_mask(std::uint64_t mask) const {
    std::vector<CellId> pc;
    std::vector<FaceId> pf;
    for (std::size_t k = 0; k < size(); ++k) {
      if (!((mask >> k) & 1U)) continue;
      if (k < cells.size()) {
        pc.push_back(cells[k]);
      } else {
        pf.push_back(faces[k - cells.size()]);
      }
    }
    return Part(std::move(pc), std::move(pf));
  }

  static Atoms of(const Part& p) { return {p.cells(), p.faces()}; }
};

class AdditivityScan {
 public:
  AdditivityScan(const TabulatedMeasure& mu, double tol, MeasureVerdict& out)
      : mu_(mu), tol_(tol), out_(out) {}

  // Returns false once a violation has been recorded.
  bool check(const Part& a, const Part& b) {
    ++out_.pairs_checked;
    const double lhs = mu_.eval(a | b);
    const double rhs = mu_.eval(a) + mu_.eval(b);
    const double r = std::abs(lhs - rhs);
    if (!(r <= tol_)) {
      out_.ok = false;
      out_.reason = "additivity fails on a disjoint pair";
      out_.witness = std::make_pair(a, b);
      out_.residual = r;
      return false;
    }
    out_.residual = std::max(out_.residual, r);
    return true;
  }

 private:
  const TabulatedMeasure& mu_;
  double tol_;
  MeasureVerdict& out_;
};

}  // namespace

MeasureVerdict is_measure(const TabulatedMeasure& mu, double tol, const EnumerationLimits& limits) {
  MeasureVerdict out;
  const GridMeasure& base = mu.densities();
  if (!base.all_finite()) {
    out.ok = false;
    out.reason = "non-finite density";
    return out;
  }
  for (const auto& [part, value] : mu.table()) {
    if (!std::isfinite(value)) {
      out.ok = false;
      out.reason = "non-finite tabulated value";
      out.witness = std::make_pair(part, Part{});
      return out;
    }
  }
  if (const double e = mu.eval(Part{}); !(std::abs(e) <= tol)) {
    out.ok = false;
    out.reason = "nonzero value on the empty part";
    out.witness = std::make_pair(Part{}, Part{});
    out.residual = std::abs(e);
    return out;
  }

  const Atoms atoms{base.host_cells(), base.host_faces()};
  const std::size_t n = atoms.size();
  AdditivityScan scan(mu, tol, out);

  // Exhaustive over all ordered disjoint pairs: each atom goes left, right or
  // nowhere, 3^n assignments.
  double assignments = std::pow(3.0, static_cast<double>(n));
  if (n <= 20 && assignments <= static_cast<double>(limits.exhaustive_limit) * 128.0) {
    const std::uint64_t total = static_cast<std::uint64_t>(assignments);
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t left = 0;
      std::uint64_t right = 0;
      std::uint64_t c = code;
      for (std::size_t k = 0; k < n; ++k, c /= 3) {
        if (c % 3 == 1) left |= std::uint64_t{1} << k;
        if (c % 3 == 2) right |= std::uint64_t{1} << k;
      }
      if (!scan.check(atoms.from_mask(left), atoms.from_mask(right))) return out;
    }
    return out;
  }

  // Targeted: every tabulated part is a potential defect. Split it, and join
  // it with single atoms outside it.
  for (const auto& [part, value] : mu.table()) {
    (void)value;
    const Atoms inner = Atoms::of(part);
    const std::size_t m = inner.size();
    if (m < 64 && ((std::uint64_t{1} << m) <= limits.exhaustive_limit)) {
      for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << m); ++mask) {
        const Part a = inner.from_mask(mask);
        if (!scan.check(a, part - a)) return out;
      }
    } else {
      SplitMix64 rng(limits.seed ^ m);
      for (std::size_t s = 0; s < limits.sample_size; ++s) {
        std::vector<CellId> pc;
        std::vector<FaceId> pf;
        for (CellId c : inner.cells) {
          if (rng.next() & 1U) pc.push_back(c);
        }
        for (FaceId f : inner.faces) {
          if (rng.next() & 1U) pf.push_back(f);
        }
        const Part a(std::move(pc), std::move(pf));
        if (!scan.check(a, part - a)) return out;
      }
    }
    std::size_t joined = 0;
    for (CellId c : atoms.cells) {
      if (joined >= 8) break;
      if (part.contains(c)) continue;
      ++joined;
      if (!scan.check(part, Part({c}, {}))) return out;
    }
    for (FaceId f : atoms.faces) {
      if (joined >= 16) break;
      if (part.contains(f)) continue;
      ++joined;
      if (!scan.check(part, Part({}, {f}))) return out;
    }
  }

  SplitMix64 rng(limits.seed);
  for (std::size_t s = 0; s < limits.sample_size; ++s) {
    std::vector<CellId> ac, bc;
    std::vector<FaceId> af, bf;
    for (CellId c : atoms.cells) {
      const auto r = rng.next() % 3;
      if (r == 1) ac.push_back(c);
      if (r == 2) bc.push_back(c);
    }
    for (FaceId f : atoms.faces) {
      const auto r = rng.next() % 3;
      if (r == 1) af.push_back(f);
      if (r == 2) bf.push_back(f);
    }
    if (!scan.check(Part(std::move(ac), std::move(af)), Part(std::move(bc), std::move(bf)))) return out;
  }
  out.coverage = std::min(1.0, static_cast<double>(out.pairs_checked) / assignments);
  return out;
}

SAdditivityVerdict is_s_additive(const SetFunction& f, const Part& p,
                                 const std::vector<std::pair<Region, Region>>& pairs,
                                 const Grid& g, double tol) {
  SAdditivityVerdict out;
  out.vacuous = pairs.empty();
  for (const auto& [a, c] : pairs) {
    if (!is_separate(a, c, g)) throw PreconditionError("is_s_additive: pair is not separate");
    if (!is_separate(p, a, g) || !is_separate(p, c, g)) {
      throw PreconditionError("is_s_additive: part is not separate from the pair");
    }
  }
  for (const auto& [a, c] : pairs) {
    const double r = std::abs(f(p, a | c) - (f(p, a) + f(p, c)));
    if (!(r <= tol)) {
      out.ok = false;
      out.witness = std::make_pair(a, c);
      out.residual = r;
      return out;
    }
    out.residual = std::max(out.residual, r);
  }
  return out;
}

}  // namespace gwt
