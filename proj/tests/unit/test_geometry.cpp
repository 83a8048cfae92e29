#include "doctest.h"
#include "gwt/errors.hpp"
#include "gwt/geometry.hpp"
#include "support.hpp"

using namespace gwt;

TEST_SUITE("geometry") {
  TEST_CASE("cell ids run x fastest, then y, then z") {
    const Grid g(3, 2, 4, 0.5);
    CHECK(g.cell_count() == 24);
    CHECK(g.cell({2, 1, 3}).value == 2 + 3 * (1 + 2 * 3));
    const CellCoord c = g.coord(CellId{17});
    CHECK(c == CellCoord{2, 1, 2});
    CHECK(g.cell_volume() == 0.125);
    CHECK(g.face_area() == 0.25);
  }

  TEST_CASE("face counts and coordinates") {
    // x-faces: (nx+1) ny nz, and likewise per axis.
    const Grid g(1, 1, 2, 1.0);
    CHECK(g.face_count() == 4 + 4 + 3);
    const auto f = g.faces_of(g.cell({0, 0, 1}));
    CHECK(to_string(g.face_coord(f[0])) == "x:0:0:1");
    CHECK(to_string(g.face_coord(f[5])) == "z:0:0:2");
    CHECK(g.on_border(f[5]));
    CHECK_FALSE(g.on_border(f[4]));
    const auto adj = g.cells_of(f[4]);
    REQUIRE(adj[0]);
    REQUIRE(adj[1]);
    CHECK(adj[0]->value == 0);
    CHECK(adj[1]->value == 1);
  }

  TEST_CASE("two-cell body has ten boundary faces") {
    const Grid g(1, 1, 2, 1.0);
    const Region body = Region::all(g);
    CHECK(boundary_face_ids(body, g).size() == 10);
    CHECK(closure_faces(body, g).size() == 11);
    for (const OrientedFace& f : boundary_faces(Region{CellId{0}}, g)) {
      if (f.face == g.face({Axis::z, 0, 0, 1})) CHECK(f.sign == 1);
      if (f.face == g.face({Axis::z, 0, 0, 0})) CHECK(f.sign == -1);
    }
  }

  TEST_CASE("region set operations stay sorted") {
    const Region a{CellId{3}, CellId{1}, CellId{1}};
    CHECK(a.size() == 2);
    CHECK(a.cells().front().value == 1);
    const Region b{CellId{2}, CellId{3}};
    CHECK((a | b).size() == 3);
    CHECK((a & b) == Region{CellId{3}});
    CHECK((a - b) == Region{CellId{1}});
    CHECK(Region{CellId{1}}.subset_of(a));
  }

  TEST_CASE("invalid regions are rejected") {
    const Grid g(2, 2, 2, 1.0);
    CHECK_THROWS_AS(validate(Region{CellId{8}}, g), InvalidRegion);
    CHECK_NOTHROW(validate(Region{CellId{7}}, g));
  }

  TEST_CASE("separation needs no shared cell and no shared face") {
    const Grid g(1, 1, 3, 1.0);
    const Region a{CellId{0}}, b{CellId{1}}, c{CellId{2}};
    CHECK(is_separate(a, c, g));
    CHECK_FALSE(is_separate(a, b, g));
    CHECK_FALSE(is_separate(a, a, g));
    // The shared face of b and c touches c.
    CHECK_FALSE(is_separate(Part::closure(b, g), c, g));
    CHECK(is_separate(Part::of_cells(a), c, g));
  }

  TEST_CASE("material universe of a two-cell grid") {
    const Grid g(1, 1, 2, 1.0);
    CHECK(material_universe(Region::all(g), g).size() == 3);
    // A one-cell body: the cell itself and its exterior.
    const auto u = material_universe(Region{CellId{0}}, g);
    CHECK(u.size() == 2);
    CHECK(u.count(Region{CellId{1}}) == 1);
    CHECK(in_material_universe(Region{CellId{1}}, Region{CellId{0}}, g));
    CHECK_FALSE(in_material_universe(Region::all(g), Region{CellId{0}}, g));
  }

  TEST_CASE("subbody class of a full 2x2x2 body") {
    const Grid g(2, 2, 2, 1.0);
    CHECK(subbody_class(Region::all(g)).size() == 255);
    CHECK_THROWS_AS(subbody_class(Region::all(g), 100), SizeLimitError);
  }

  TEST_CASE("translation leaves the grid or shifts every cell") {
    const Grid g(3, 1, 1, 1.0);
    const Region a{CellId{0}, CellId{1}};
    const auto t = translate(a, {1, 0, 0}, g);
    REQUIRE(t);
    CHECK(*t == Region{CellId{1}, CellId{2}});
    CHECK_FALSE(translate(a, {2, 0, 0}, g));
  }

  TEST_CASE("part algebra") {
    const Part p({CellId{0}}, {FaceId{1}});
    const Part q({CellId{1}}, {FaceId{1}, FaceId{2}});
    CHECK((p | q).atom_count() == 4);
    CHECK((q - p).atom_count() == 2);
    CHECK_FALSE(disjoint(p, q));
    CHECK(disjoint(p, Part({CellId{1}}, {})));
  }

  TEST_CASE("property: boundary faces count exposed faces") {
    testing::Gen gen(11);
    for (int trial = 0; trial < 200; ++trial) {
      const Grid g = gen.grid(4);
      const Region a = gen.subset(Region::all(g));
      std::size_t adjacent = 0;
      for (CellId c : a.cells()) {
        for (CellId n : g.neighbors(c)) adjacent += a.contains(n) ? 1 : 0;
      }
      // Each internal adjacency hides two of the 6|A| cell faces.
      CHECK(boundary_face_ids(a, g).size() == 6 * a.size() - adjacent);
      CHECK(closure_faces(a, g).size() == 6 * a.size() - adjacent / 2);
    }
  }

  TEST_CASE("property: exterior identity on random nested pairs") {
    testing::Gen gen(12);
    for (int trial = 0; trial < 300; ++trial) {
      const Grid g = gen.grid(4);
      const Region b = gen.subset(Region::all(g));
      const Region a = gen.subset(b, false);
      CHECK(check_exterior_identity(a, b, g));
      CHECK((exterior(a, g) | a) == Region::all(g));
    }
  }

  TEST_CASE("property: separation is symmetric and implies disjoint closures") {
    testing::Gen gen(13);
    for (int trial = 0; trial < 300; ++trial) {
      const Grid g = gen.grid(3);
      const Region a = gen.subset(Region::all(g), true, 0.3);
      const Region c = gen.subset(Region::all(g), true, 0.3);
      const bool s = is_separate(a, c, g);
      CHECK(s == is_separate(c, a, g));
      if (s) {
        CHECK(disjoint(Part::closure(a, g), Part::closure(c, g)));
      }
    }
  }
}
