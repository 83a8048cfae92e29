#pragma once

// Discrete space: a finite axis-aligned voxel grid standing in for Euclidean
// space. Regions are closed unions of cells, surfaces are oriented face sets
// and parts mix volumetric (cell) and surface (face) support.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace gwt {

struct CellId {
  std::uint32_t value = 0;
  friend auto operator<=>(CellId, CellId) = default;
};

struct FaceId {
  std::uint32_t value = 0;
  friend auto operator<=>(FaceId, FaceId) = default;
};

enum class Axis : std::uint8_t { x = 0, y = 1, z = 2 };

struct CellCoord {
  int x = 0;
  int y = 0;
  int z = 0;
  friend auto operator<=>(const CellCoord&, const CellCoord&) = default;
};

/// A face normal to `axis`. The coordinate along `axis` is the plane index
/// (0..n), the other two are cell coordinates.
struct FaceCoord {
  Axis axis = Axis::x;
  int x = 0;
  int y = 0;
  int z = 0;
  friend auto operator<=>(const FaceCoord&, const FaceCoord&) = default;
};

/// A face together with the direction of its normal: +1 points along the
/// positive axis, -1 against it.
struct OrientedFace {
  FaceId face;
  int sign = 1;
  friend auto operator<=>(const OrientedFace&, const OrientedFace&) = default;
};

using Surface = std::vector<OrientedFace>;

/// Reverses every orientation (the negative segment of a surface).
Surface reversed(Surface s);

class Grid {
 public:
  Grid() = default;
  Grid(int nx, int ny, int nz, double spacing);

  int nx() const { return n_[0]; }
  int ny() const { return n_[1]; }
  int nz() const { return n_[2]; }
  int extent(Axis a) const { return n_[static_cast<int>(a)]; }
  double spacing() const { return h_; }

  std::size_t cell_count() const;
  std::size_t face_count() const;
  double cell_volume() const { return h_ * h_ * h_; }
  double face_area() const { return h_ * h_; }

  bool in_bounds(const CellCoord& c) const;
  bool valid(CellId c) const { return c.value < cell_count(); }
  bool valid(FaceId f) const { return f.value < face_count(); }

  CellId cell(const CellCoord& c) const;
  CellCoord coord(CellId c) const;

  FaceId face(const FaceCoord& f) const;
  FaceCoord face_coord(FaceId f) const;

  /// Faces of a cell ordered -x, +x, -y, +y, -z, +z.
  std::array<FaceId, 6> faces_of(CellId c) const;
  /// Outward sign of faces_of(c)[k].
  static int outward_sign(int k) { return (k % 2 == 0) ? -1 : 1; }

  /// Neighbor across one face, if any (dir is -1 or +1).
  std::optional<CellId> neighbor(CellId c, Axis a, int dir) const;
  std::vector<CellId> neighbors(CellId c) const;

  /// The (at most two) cells adjacent to a face: lower then upper along the axis.
  std::array<std::optional<CellId>, 2> cells_of(FaceId f) const;
  bool on_border(FaceId f) const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t face_offset(Axis a) const;
  std::array<int, 3> n_{1, 1, 1};
  double h_ = 1.0;
};

std::string to_string(const FaceCoord& f);

/// A closed union of grid cells.
class Region {
 public:
  Region() = default;
  explicit Region(std::vector<CellId> cells);
  Region(std::initializer_list<CellId> cells);

  static Region all(const Grid& g);

  const std::vector<CellId>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  bool contains(CellId c) const;
  bool subset_of(const Region& other) const;

  friend Region operator|(const Region& a, const Region& b);
  friend Region operator&(const Region& a, const Region& b);
  friend Region operator-(const Region& a, const Region& b);
  friend auto operator<=>(const Region&, const Region&) = default;

 private:
  std::vector<CellId> cells_;
};

std::string to_string(const Region& r, const Grid& g);

/// Throws InvalidRegion if a cell index is outside the grid.
void validate(const Region& r, const Grid& g);

/// A part of a body: cells (volumetric support) and faces (surface support).
class Part {
 public:
  Part() = default;
  Part(std::vector<CellId> cells, std::vector<FaceId> faces);

  static Part of_cells(const Region& r);
  static Part of_faces(std::vector<FaceId> faces);
  /// The closed region as a part: its cells plus every face of those cells.
  static Part closure(const Region& r, const Grid& g);

  const std::vector<CellId>& cells() const { return cells_; }
  const std::vector<FaceId>& faces() const { return faces_; }
  bool empty() const { return cells_.empty() && faces_.empty(); }
  std::size_t atom_count() const { return cells_.size() + faces_.size(); }
  bool contains(CellId c) const;
  bool contains(FaceId f) const;

  friend Part operator|(const Part& a, const Part& b);
  friend Part operator-(const Part& a, const Part& b);
  friend auto operator<=>(const Part&, const Part&) = default;

 private:
  std::vector<CellId> cells_;
  std::vector<FaceId> faces_;
};

std::string to_string(const Part& p, const Grid& g);

double volume(const Part& p, const Grid& g);
double area(const Part& p, const Grid& g);
bool disjoint(const Part& a, const Part& b);

/// Dense membership masks for fast inner loops.
struct CellMask {
  std::vector<std::uint8_t> bits;
  CellMask() = default;
  CellMask(const Region& r, const Grid& g);
  bool operator[](CellId c) const { return bits[c.value] != 0; }
};

struct PartMask {
  std::vector<std::uint8_t> cells;
  std::vector<std::uint8_t> faces;
  PartMask() = default;
  PartMask(const Part& p, const Grid& g);
  bool has(CellId c) const { return cells[c.value] != 0; }
  bool has(FaceId f) const { return faces[f.value] != 0; }
};

/// All faces of the closed region, sorted.
std::vector<FaceId> closure_faces(const Region& a, const Grid& g);

/// Cells of the grid not in A (closure of the complement).
Region exterior(const Region& a, const Grid& g);

/// Cells of B not in A; requires A within B.
Region relative_exterior(const Region& a, const Region& b);

/// Whether the exterior of A equals the relative exterior of A in B joined
/// with the exterior of B.
bool check_exterior_identity(const Region& a, const Region& b, const Grid& g);

/// Faces with exactly one adjacent cell in A (grid border included), oriented
/// outward from A.
Surface boundary_faces(const Region& a, const Grid& g);

/// Unoriented boundary face ids, sorted.
std::vector<FaceId> boundary_face_ids(const Region& a, const Grid& g);

/// No shared cell and no shared face.
bool is_separate(const Region& a, const Region& c, const Grid& g);
/// A part is separate from a region when it shares no cell with it and none
/// of its faces (nor the faces of its cells) lies on the closed region.
bool is_separate(const Part& p, const Region& c, const Grid& g);

/// Shifts every cell; empty if any cell leaves the grid.
std::optional<Region> translate(const Region& a, const CellCoord& shift, const Grid& g);

/// An axis-aligned box of cells [lo, hi] inclusive.
struct Box {
  CellCoord lo;
  CellCoord hi;
};

std::vector<Box> all_boxes(const Grid& g);
Region box_cells(const Box& b, const Grid& g);

/// The discrete subbody class of a body: its nonempty cell subsets.
class SubbodyClass {
 public:
  explicit SubbodyClass(Region body) : body_(std::move(body)) {}
  const Region& body() const { return body_; }
  bool contains(const Region& a) const { return !a.empty() && a.subset_of(body_); }

 private:
  Region body_;
};

/// Enumerates the subbody class. Throws SizeLimitError when 2^|B| - 1
/// exceeds `cap`.
std::set<Region> subbody_class(const Region& b, std::size_t cap = std::size_t{1} << 16);

/// Membership in the material universe of B: D is a subbody or its exterior is.
bool in_material_universe(const Region& d, const Region& b, const Grid& g);

/// Enumerates the material universe of B; throws SizeLimitError above `cap`.
std::set<Region> material_universe(const Region& b, const Grid& g,
                                   std::size_t cap = std::size_t{1} << 16);

/// Region from a bit mask over the cells of `base` (bit k selects base.cells()[k]).
Region subset_from_mask(const Region& base, std::uint64_t mask);

}  // namespace gwt
