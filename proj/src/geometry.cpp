#include "gwt/geometry.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

#include "gwt/errors.hpp"

namespace gwt {

namespace {

template <typename T>
std::vector<T> sorted_unique(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

template <typename T>
std::vector<T> set_union(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

template <typename T>
std::vector<T> set_difference(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

template <typename T>
bool intersects(const std::vector<T>& a, const std::vector<T>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

int& component(CellCoord& c, Axis a) {
  switch (a) {
    case Axis::x: return c.x;
    case Axis::y: return c.y;
    default: return c.z;
  }
}

}  // namespace

Surface reversed(Surface s) {
  for (auto& f : s) f.sign = -f.sign;
  return s;
}

Grid::Grid(int nx, int ny, int nz, double spacing) : n_{nx, ny, nz}, h_(spacing) {
  if (nx < 1 || ny < 1 || nz < 1) throw InvalidRegion("grid dimensions must be >= 1");
  if (!(spacing > 0.0)) throw InvalidRegion("grid spacing must be positive");
}

std::size_t Grid::cell_count() const {
  return static_cast<std::size_t>(n_[0]) * n_[1] * n_[2];
}

std::size_t Grid::face_offset(Axis a) const {
  const std::size_t fx = static_cast<std::size_t>(n_[0] + 1) * n_[1] * n_[2];
  const std::size_t fy = static_cast<std::size_t>(n_[0]) * (n_[1] + 1) * n_[2];
  switch (a) {
    case Axis::x: return 0;
    case Axis::y: return fx;
    default: return fx + fy;
  }
}

std::size_t Grid::face_count() const {
  return face_offset(Axis::z) + static_cast<std::size_t>(n_[0]) * n_[1] * (n_[2] + 1);
}

bool Grid::in_bounds(const CellCoord& c) const {
  return c.x >= 0 && c.y >= 0 && c.z >= 0 && c.x < n_[0] && c.y < n_[1] && c.z < n_[2];
}

CellId Grid::cell(const CellCoord& c) const {
  if (!in_bounds(c)) throw InvalidRegion("cell coordinate out of bounds");
  return CellId{static_cast<std::uint32_t>(c.x + n_[0] * (c.y + n_[1] * c.z))};
}

CellCoord Grid::coord(CellId c) const {
  if (!valid(c)) throw InvalidRegion("cell index " + std::to_string(c.value) + " out of bounds");
  const int i = static_cast<int>(c.value);
  return {i % n_[0], (i / n_[0]) % n_[1], i / (n_[0] * n_[1])};
}

FaceId Grid::face(const FaceCoord& f) const {
  std::array<int, 3> ext = n_;
  ext[static_cast<int>(f.axis)] += 1;
  if (f.x < 0 || f.y < 0 || f.z < 0 || f.x >= ext[0] || f.y >= ext[1] || f.z >= ext[2]) {
    throw InvalidRegion("face " + to_string(f) + " out of bounds");
  }
  const std::size_t local = static_cast<std::size_t>(f.x) +
                            static_cast<std::size_t>(ext[0]) * (f.y + static_cast<std::size_t>(ext[1]) * f.z);
  return FaceId{static_cast<std::uint32_t>(face_offset(f.axis) + local)};
}

FaceCoord Grid::face_coord(FaceId f) const {
  if (!valid(f)) throw InvalidRegion("face index " + std::to_string(f.value) + " out of bounds");
  Axis a = Axis::z;
  if (f.value < face_offset(Axis::y)) {
    a = Axis::x;
  } else if (f.value < face_offset(Axis::z)) {
    a = Axis::y;
  }
  std::array<int, 3> ext = n_;
  ext[static_cast<int>(a)] += 1;
  const int local = static_cast<int>(f.value - face_offset(a));
  return {a, local % ext[0], (local / ext[0]) % ext[1], local / (ext[0] * ext[1])};
}

std::array<FaceId, 6> Grid::faces_of(CellId c) const {
  const CellCoord p = coord(c);
  return {face({Axis::x, p.x, p.y, p.z}), face({Axis::x, p.x + 1, p.y, p.z}),
          face({Axis::y, p.x, p.y, p.z}), face({Axis::y, p.x, p.y + 1, p.z}),
          face({Axis::z, p.x, p.y, p.z}), face({Axis::z, p.x, p.y, p.z + 1})};
}

std::optional<CellId> Grid::neighbor(CellId c, Axis a, int dir) const {
  CellCoord p = coord(c);
  component(p, a) += dir;
  if (!in_bounds(p)) return std::nullopt;
  return cell(p);
}

std::vector<CellId> Grid::neighbors(CellId c) const {
  std::vector<CellId> out;
  out.reserve(6);
  for (Axis a : {Axis::x, Axis::y, Axis::z}) {
    for (int dir : {-1, 1}) {
      if (auto n = neighbor(c, a, dir)) out.push_back(*n);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::array<std::optional<CellId>, 2> Grid::cells_of(FaceId f) const {
  const FaceCoord fc = face_coord(f);
  CellCoord upper{fc.x, fc.y, fc.z};
  CellCoord lower = upper;
  component(lower, fc.axis) -= 1;
  std::array<std::optional<CellId>, 2> out;
  if (in_bounds(lower)) out[0] = cell(lower);
  if (in_bounds(upper)) out[1] = cell(upper);
  return out;
}

bool Grid::on_border(FaceId f) const {
  const auto cs = cells_of(f);
  return !cs[0] || !cs[1];
}

std::string to_string(const FaceCoord& f) {
  static constexpr char names[] = {'x', 'y', 'z'};
  std::ostringstream os;
  os << names[static_cast<int>(f.axis)] << ':' << f.x << ':' << f.y << ':' << f.z;
  return os.str();
}

// --- Region -----------------------------------------------------------------

Region::Region(std::vector<CellId> cells) : cells_(sorted_unique(std::move(cells))) {}

Region::Region(std::initializer_list<CellId> cells) : Region(std::vector<CellId>(cells)) {}

Region Region::all(const Grid& g) {
  std::vector<CellId> cells(g.cell_count());
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = CellId{static_cast<std::uint32_t>(i)};
  return Region(std::move(cells));
}

bool Region::contains(CellId c) const {
  return std::binary_search(cells_.begin(), cells_.end(), c);
}

bool Region::subset_of(const Region& other) const {
  return std::includes(other.cells_.begin(), other.cells_.end(), cells_.begin(), cells_.end());
}

Region operator|(const Region& a, const Region& b) {
  Region r;
  r.cells_ = set_union(a.cells_, b.cells_);
  return r;
}

Region operator&(const Region& a, const Region& b) {
  Region r;
  std::set_intersection(a.cells_.begin(), a.cells_.end(), b.cells_.begin(), b.cells_.end(),
                        std::back_inserter(r.cells_));
  return r;
}

Region operator-(const Region& a, const Region& b) {
  Region r;
  r.cells_ = set_difference(a.cells_, b.cells_);
  return r;
}

namespace {
std::string cell_text(CellId c, const Grid& g) {
  if (!g.valid(c)) return "#" + std::to_string(c.value);
  const CellCoord k = g.coord(c);
  return "(" + std::to_string(k.x) + "," + std::to_string(k.y) + "," + std::to_string(k.z) + ")";
}
}  // namespace

std::string to_string(const Region& r, const Grid& g) {
  std::string s = "{";
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + cell_text(r.cells()[i], g);
  return s + "}";
}

std::string to_string(const Part& p, const Grid& g) {
  std::string s = "cells{";
  for (std::size_t i = 0; i < p.cells().size(); ++i) s += (i ? "," : "") + cell_text(p.cells()[i], g);
  s += "} faces{";
  for (std::size_t i = 0; i < p.faces().size(); ++i) {
    s += (i ? "," : "") + to_string(g.face_coord(p.faces()[i]));
  }
  return s + "}";
}

void validate(const Region& r, const Grid& g) {
  for (CellId c : r.cells()) {
    if (!g.valid(c)) throw InvalidRegion("cell index " + std::to_string(c.value) + " out of bounds");
  }
}

// --- Part -------------------------------------------------------------------

Part::Part(std::vector<CellId> cells, std::vector<FaceId> faces)
    : cells_(sorted_unique(std::move(cells))), faces_(sorted_unique(std::move(faces))) {}

Part Part::of_cells(const Region& r) { return Part(r.cells(), {}); }

Part Part::of_faces(std::vector<FaceId> faces) { return Part({}, std::move(faces)); }

Part Part::closure(const Region& r, const Grid& g) { return Part(r.cells(), closure_faces(r, g)); }

bool Part::contains(CellId c) const { return std::binary_search(cells_.begin(), cells_.end(), c); }

bool Part::contains(FaceId f) const { return std::binary_search(faces_.begin(), faces_.end(), f); }

Part operator|(const Part& a, const Part& b) {
  Part p;
  p.cells_ = set_union(a.cells_, b.cells_);
  p.faces_ = set_union(a.faces_, b.faces_);
  return p;
}

Part operator-(const Part& a, const Part& b) {
  Part p;
  p.cells_ = set_difference(a.cells_, b.cells_);
  p.faces_ = set_difference(a.faces_, b.faces_);
  return p;
}

double volume(const Part& p, const Grid& g) {
  return static_cast<double>(p.cells().size()) * g.cell_volume();
}

double area(const Part& p, const Grid& g) {
  return static_cast<double>(p.faces().size()) * g.face_area();
}

bool disjoint(const Part& a, const Part& b) {
  return !intersects(a.cells(), b.cells()) && !intersects(a.faces(), b.faces());
}

CellMask::CellMask(const Region& r, const Grid& g) : bits(g.cell_count(), 0) {
  for (CellId c : r.cells()) bits.at(c.value) = 1;
}

PartMask::PartMask(const Part& p, const Grid& g) : cells(g.cell_count(), 0), faces(g.face_count(), 0) {
  for (CellId c : p.cells()) cells.at(c.value) = 1;
  for (FaceId f : p.faces()) faces.at(f.value) = 1;
}

// --- operations -------------------------------------------------------------

std::vector<FaceId> closure_faces(const Region& a, const Grid& g) {
  std::vector<FaceId> out;
  out.reserve(a.size() * 6);
  for (CellId c : a.cells()) {
    const auto fs = g.faces_of(c);
    out.insert(out.end(), fs.begin(), fs.end());
  }
  return sorted_unique(std::move(out));
}

Region exterior(const Region& a, const Grid& g) {
  validate(a, g);
  return Region::all(g) - a;
}

Region relative_exterior(const Region& a, const Region& b) {
  if (!a.subset_of(b)) throw PreconditionError("relative_exterior: A is not contained in B");
  return b - a;
}

bool check_exterior_identity(const Region& a, const Region& b, const Grid& g) {
  validate(b, g);
  return exterior(a, g) == (relative_exterior(a, b) | exterior(b, g));
}

Surface boundary_faces(const Region& a, const Grid& g) {
  validate(a, g);
  Surface out;
  for (CellId c : a.cells()) {
    const auto fs = g.faces_of(c);
    for (int k = 0; k < 6; ++k) {
      const Axis axis = static_cast<Axis>(k / 2);
      const auto n = g.neighbor(c, axis, Grid::outward_sign(k));
      if (!n || !a.contains(*n)) out.push_back({fs[k], Grid::outward_sign(k)});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FaceId> boundary_face_ids(const Region& a, const Grid& g) {
  std::vector<FaceId> out;
  for (const auto& of : boundary_faces(a, g)) out.push_back(of.face);
  return out;
}

bool is_separate(const Region& a, const Region& c, const Grid& g) {
  if (intersects(a.cells(), c.cells())) return false;
  return !intersects(closure_faces(a, g), closure_faces(c, g));
}

bool is_separate(const Part& p, const Region& c, const Grid& g) {
  if (intersects(p.cells(), c.cells())) return false;
  const auto c_faces = closure_faces(c, g);
  if (intersects(p.faces(), c_faces)) return false;
  return !intersects(closure_faces(Region(p.cells()), g), c_faces);
}

std::optional<Region> translate(const Region& a, const CellCoord& shift, const Grid& g) {
  std::vector<CellId> out;
  out.reserve(a.size());
  for (CellId c : a.cells()) {
    CellCoord p = g.coord(c);
    p.x += shift.x;
    p.y += shift.y;
    p.z += shift.z;
    if (!g.in_bounds(p)) return std::nullopt;
    out.push_back(g.cell(p));
  }
  return Region(std::move(out));
}

std::vector<Box> all_boxes(const Grid& g) {
  std::vector<Box> out;
  for (int x0 = 0; x0 < g.nx(); ++x0)
    for (int x1 = x0; x1 < g.nx(); ++x1)
      for (int y0 = 0; y0 < g.ny(); ++y0)
        for (int y1 = y0; y1 < g.ny(); ++y1)
          for (int z0 = 0; z0 < g.nz(); ++z0)
            for (int z1 = z0; z1 < g.nz(); ++z1) out.push_back({{x0, y0, z0}, {x1, y1, z1}});
  return out;
}

Region box_cells(const Box& b, const Grid& g) {
  std::vector<CellId> out;
  for (int z = b.lo.z; z <= b.hi.z; ++z)
    for (int y = b.lo.y; y <= b.hi.y; ++y)
      for (int x = b.lo.x; x <= b.hi.x; ++x) out.push_back(g.cell({x, y, z}));
  return Region(std::move(out));
}

Region subset_from_mask(const Region& base, std::uint64_t mask) {
  std::vector<CellId> out;
  for (std::size_t k = 0; k < base.size() && k < 64; ++k) {
    if ((mask >> k) & 1U) out.push_back(base.cells()[k]);
  }
  return Region(std::move(out));
}

namespace {

std::size_t checked_subset_count(std::size_t n, std::size_t cap, const char* what) {
  if (n >= 63 || ((std::size_t{1} << n) - 1) > cap) {
    throw SizeLimitError(std::string(what) + ": 2^" + std::to_string(n) +
                         " - 1 candidates exceed cap " + std::to_string(cap));
  }
  return (std::size_t{1} << n) - 1;
}

}  // namespace

std::set<Region> subbody_class(const Region& b, std::size_t cap) {
  if (b.empty()) throw PreconditionError("subbody_class: body is empty");
  const std::size_t count = checked_subset_count(b.size(), cap, "subbody_class");
  std::set<Region> out;
  for (std::uint64_t m = 1; m <= count; ++m) out.insert(subset_from_mask(b, m));
  return out;
}

bool in_material_universe(const Region& d, const Region& b, const Grid& g) {
  if (d.empty()) return false;
  const SubbodyClass cls(b);
  return cls.contains(d) || cls.contains(exterior(d, g));
}

std::set<Region> material_universe(const Region& b, const Grid& g, std::size_t cap) {
  validate(b, g);
  std::set<Region> out;
  if (b.empty()) return out;
  const std::size_t count = checked_subset_count(b.size(), cap / 2 + 1, "material_universe");
  const Region everything = Region::all(g);
  for (std::uint64_t m = 1; m <= count; ++m) {
    Region x = subset_from_mask(b, m);
    Region complement = everything - x;
    out.insert(x);
    if (!complement.empty()) out.insert(std::move(complement));
  }
  return out;
}

}  // namespace gwt
