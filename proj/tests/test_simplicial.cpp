#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orbifold/simplicial.hpp"

using namespace orbifold;

TEST_CASE("sphere2 validates with counts (4,6,4)") {
  auto t = sphere2();
  auto rep = validate(t);
  REQUIRE(rep.ok);
  CHECK(rep.counts == std::vector<std::int64_t>{4, 6, 4});
  CHECK(rep.boundary_faces == 0);
  CHECK(euler_characteristic(t) == 2);
}

TEST_CASE("lone triangle has three boundary edges") {
  auto t = disk2();
  auto rep = validate(t);
  REQUIRE(rep.ok);
  CHECK(rep.boundary_faces == 3);
  auto b = boundary_complex(t);
  CHECK(b.n == 1);
  CHECK(b.top_count() == 3);
  CHECK(validate(b).ok);
  CHECK(euler_characteristic(b) == 0);  // closed circle
}

TEST_CASE("orientation mismatch is reported") {
  Triangulation t = sphere2();
  t.orientations[0] *= -1;
  auto rep = validate(t);
  CHECK_FALSE(rep.ok);
}

TEST_CASE("7-vertex torus has chi = 0") {
  auto t = torus2_7v();
  auto rep = validate(t);
  REQUIRE(rep.ok);
  CHECK(rep.counts == std::vector<std::int64_t>{7, 21, 14});
  CHECK(euler_characteristic(t) == 0);
}

TEST_CASE("interval and circles") {
  CHECK(euler_characteristic(interval()) == 1);
  auto b = boundary_complex(interval());
  CHECK(b.top_count() == 2);  // two points
  for (int m : {1, 2, 3, 5}) {
    auto c = circle(m);
    REQUIRE(validate(c).ok);
    CHECK(euler_characteristic(c) == 0);
    CHECK(validate(c).counts[0] == m);
  }
}

TEST_CASE("sphere3 is five tetrahedra with chi 0") {
  auto t = sphere3();
  auto rep = validate(t);
  REQUIRE(rep.ok);
  CHECK(rep.counts == std::vector<std::int64_t>{5, 10, 10, 5});
  CHECK(euler_characteristic(t) == 0);
}

TEST_CASE("genus surfaces") {
  CHECK(euler_characteristic(genus_surface(0)) == 2);
  CHECK(euler_characteristic(genus_surface(1)) == 0);
  auto g2 = genus_surface(2);
  REQUIRE(validate(g2).ok);
  CHECK(euler_characteristic(g2) == -2);
}

TEST_CASE("cylinders and closed products") {
  for (int m : {1, 2, 3, 4}) {
    auto c = cylinder2(m, 1);
    auto rep = validate(c);
    REQUIRE(rep.ok);
    CHECK(euler_characteristic(c) == 0);
    auto circles = boundary_circles(c);
    REQUIRE(circles.size() == 2);
    CHECK(static_cast<int>(circles[0].size()) == m);
    CHECK(static_cast<int>(circles[1].size()) == m);
  }
  auto torus = torus_from_cylinder(3, 2);
  REQUIRE(validate(torus).ok);
  CHECK(euler_characteristic(torus) == 0);

  auto s = s2xs1();
  auto rep = validate(s);
  REQUIRE(rep.ok);
  CHECK(euler_characteristic(s) == 0);
  CHECK(rep.counts[3] == 12);

  auto cube = t3();
  auto rep3 = validate(cube);
  REQUIRE(rep3.ok);
  CHECK(rep3.counts == std::vector<std::int64_t>{1, 7, 12, 6});
  CHECK(euler_characteristic(cube) == 0);
}

TEST_CASE("pachner enumeration on sphere2") {
  auto t = sphere2();
  auto moves = enumerate_pachner(t);
  int n13 = 0, n22 = 0, n31 = 0;
  for (auto& m : moves) {
    if (m.k == 1) ++n13;
    if (m.k == 2) ++n22;
    if (m.k == 3) ++n31;
  }
  CHECK(n13 == 4);  // every triangle
  CHECK(n22 == 6);  // every edge
  CHECK(n31 == 4);  // every vertex star is a disk of three triangles
}

TEST_CASE("1-3 then 3-1 restores simplex counts") {
  auto t = sphere2();
  auto moves = enumerate_pachner(t, {1});
  REQUIRE_FALSE(moves.empty());
  auto t2 = apply_pachner(t, moves[0]);
  CHECK(t2.top_count() == 6);
  CHECK(euler_characteristic(t2) == 2);
  // the new vertex has degree 3; a 3-1 move must exist
  auto inverse = enumerate_pachner(t2, {3});
  REQUIRE_FALSE(inverse.empty());
  auto t3b = apply_pachner(t2, inverse[0]);
  CHECK(t3b.top_count() == 4);
  CHECK(euler_characteristic(t3b) == 2);
}

TEST_CASE("2-2 move preserves counts on sphere2") {
  auto t = sphere2();
  auto moves = enumerate_pachner(t, {2});
  REQUIRE(moves.size() == 6);
  auto t2 = apply_pachner(t, moves[0]);
  CHECK(t2.top_count() == 4);
  CHECK(euler_characteristic(t2) == 2);
  REQUIRE(validate(t2).ok);
  // applying the inverse 2-2 at the same quad restores the counts
  auto back = enumerate_pachner(t2, {2});
  REQUIRE_FALSE(back.empty());
}

TEST_CASE("two tetrahedra glued along one face admit a single 2-3 move") {
  Triangulation t;
  t.n = 3;
  t.simplices = {{0, 1, 2, 3}, {0, 1, 2, 4}};
  REQUIRE(validate(t).ok);
  auto moves = enumerate_pachner(t, {2});
  REQUIRE(moves.size() == 1);
  auto t2 = apply_pachner(t, moves[0]);
  CHECK(t2.top_count() == 3);
  REQUIRE(validate(t2).ok);
  // inverse: the three tetrahedra share the new edge (3,4)
  auto back = enumerate_pachner(t2, {3});
  REQUIRE(back.size() == 1);
  auto t3b = apply_pachner(t2, back[0]);
  CHECK(t3b.top_count() == 2);
}

TEST_CASE("1-4 and 4-1 moves on a tetrahedron pair") {
  auto t = sphere3();
  auto t2 = apply_pachner(t, {1, {0}});
  CHECK(t2.top_count() == 8);
  CHECK(euler_characteristic(t2) == 0);
  auto back = enumerate_pachner(t2, {4});
  REQUIRE_FALSE(back.empty());
  auto t3b = apply_pachner(t2, back[0]);
  CHECK(t3b.top_count() == 5);
}

TEST_CASE("random walks stay valid and preserve chi") {
  for (auto name : {"sphere2", "torus2_7v", "sphere3", "t3", "s2xs1"}) {
    auto t = *standard_library(name);
    auto chi = euler_characteristic(t);
    auto w = random_pachner_walk(t, 60, 7, 24);
    CHECK(validate(w).ok);
    CHECK(euler_characteristic(w) == chi);
  }
}

TEST_CASE("walks are deterministic and step 0 is identity") {
  auto t = torus2_7v();
  auto w0 = random_pachner_walk(t, 0, 5);
  CHECK(w0.simplices == t.simplices);
  auto w1 = random_pachner_walk(t, 40, 123, 24);
  auto w2 = random_pachner_walk(t, 40, 123, 24);
  CHECK(w1.simplices == w2.simplices);
  CHECK(w1.orientations == w2.orientations);
}

TEST_CASE("1d pachner moves on circles") {
  auto c = circle(3);
  auto moves = enumerate_pachner(c);
  int split = 0, merge = 0;
  for (auto& m : moves) (m.k == 1 ? split : merge)++;
  CHECK(split == 3);
  CHECK(merge == 3);
  auto c2 = apply_pachner(c, moves[0]);
  CHECK(euler_characteristic(c2) == 0);
  auto w = random_pachner_walk(c, 50, 9, 12);
  CHECK(validate(w).ok);
  CHECK(euler_characteristic(w) == 0);
}

TEST_CASE("mixed cylinders change boundary circle sizes") {
  for (auto [mb, mt] : std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {3, 1}, {2, 2}}) {
    auto t = mixed_cylinder(mb, mt);
    REQUIRE(validate(t).ok);
    CHECK(euler_characteristic(t) == 0);
    auto circles = boundary_circles(t);
    REQUIRE(circles.size() == 2);
    std::vector<int> sizes{static_cast<int>(circles[0].size()), static_cast<int>(circles[1].size())};
    std::sort(sizes.begin(), sizes.end());
    std::vector<int> want{std::min(mb, mt), std::max(mb, mt)};
    CHECK(sizes == want);
  }
}

TEST_CASE("boundary of any bounded library entry is closed") {
  for (auto name : {"disk2", "interval", "cylinder2(3,2)"}) {
    auto t = *standard_library(name);
    auto b = boundary_complex(t);
    auto rep = validate(b);
    REQUIRE(rep.ok);
    CHECK(rep.boundary_faces == 0);
  }
}

TEST_CASE("standard_library dispatch") {
  CHECK(standard_library("sphere2").has_value());
  CHECK(standard_library("genus_g(2)").has_value());
  CHECK(standard_library("circle(4)").has_value());
  CHECK(standard_library("cylinder2(3,2)").has_value());
  CHECK_FALSE(standard_library("klein_bottle").has_value());
}
