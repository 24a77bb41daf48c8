#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace orbifold {

using VertexId = std::int64_t;

// target of a facet: boundary, or (simplex, face) with the order-preserving
// identification (i-th least vertex to i-th least vertex)
struct Gluing {
  int simplex = -1;
  int face = -1;
  bool is_boundary() const { return simplex < 0; }
  friend bool operator==(const Gluing& a, const Gluing& b) {
    return a.simplex == b.simplex && a.face == b.face;
  }
};

// Oriented face-identification complex of dimension n <= 3. Simplex tuples
// are strictly increasing vertex ids; ids are labels carrying the global
// total order. When `gluings` is empty at validation time it is derived by
// matching equal facet tuples (at most two occurrences each); explicit
// gluings make ids pure order labels, so distinct ids may share a quotient
// class.
struct Triangulation {
  int n = 0;
  std::vector<std::vector<VertexId>> simplices;
  std::vector<int> orientations;            // per simplex, +1 / -1
  std::vector<std::vector<Gluing>> gluings;  // [simplex][face], may be empty before finalize

  int top_count() const { return static_cast<int>(simplices.size()); }
  int faces_per_simplex() const { return n + 1; }
  VertexId max_vertex_id() const;

  // derives gluings from shared facet tuples when absent, then propagates
  // orientations when `orientations` is empty; throws on failure
  void finalize();
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> errors;
  std::vector<std::int64_t> counts;  // quotient j-simplex counts, j = 0..n
  std::int64_t boundary_faces = 0;
  void fail(std::string msg) {
    ok = false;
    errors.push_back(std::move(msg));
  }
};

// quotient face classes: cls[j][simplex][combo] = class id, where combo runs
// over the lex-ordered (j+1)-subsets of simplex positions
struct FaceQuotient {
  std::vector<std::vector<std::vector<int>>> cls;
  std::vector<std::int64_t> counts;
};

const std::vector<std::vector<int>>& position_subsets(int n, int j);
int subset_index(int n, int j, const std::vector<int>& subset);

FaceQuotient compute_quotient(const Triangulation& t);
ValidationReport validate(const Triangulation& t, bool strict_complex = false);
std::int64_t euler_characteristic(const Triangulation& t);
Triangulation boundary_complex(const Triangulation& t);

struct PachnerMove {
  int k = 0;                 // replaces k simplices by n+2-k
  std::vector<int> site;     // simplex indices, ascending
  friend bool operator==(const PachnerMove& a, const PachnerMove& b) {
    return a.k == b.k && a.site == b.site;
  }
};

std::vector<PachnerMove> enumerate_pachner(const Triangulation& t,
                                           const std::vector<int>& kinds = {});
Triangulation apply_pachner(const Triangulation& t, const PachnerMove& m);
Triangulation random_pachner_walk(const Triangulation& t, int steps, std::uint64_t seed,
                                  int size_cap = 30, const std::vector<int>& kinds = {});

// boundary circles of a 2d triangulation as cyclic (simplex, face) lists,
// ordered along the induced boundary orientation
std::vector<std::vector<std::pair<int, int>>> boundary_circles(const Triangulation& t);

struct BoundaryCircle {
  std::vector<std::pair<int, int>> edges;  // induced cyclic order, least tail first
  std::vector<VertexId> tails;             // tail vertex id per edge
};
std::vector<BoundaryCircle> boundary_circles_oriented(const Triangulation& t);

// library builders
Triangulation sphere2();
Triangulation torus2_7v();
Triangulation genus_surface(int g);
Triangulation circle(int m);
Triangulation interval();
Triangulation sphere3();
Triangulation cylinder2(int m, int layers);
Triangulation torus_from_cylinder(int m, int layers);
Triangulation s2xs1();
Triangulation t3();
Triangulation disk2();

Triangulation connected_sum(const Triangulation& a, const Triangulation& b);
// splits the triangle behind boundary face (s, f); boundary circle grows by one edge
Triangulation subdivide_boundary_edge(const Triangulation& t, int s, int f);
// cylinder with m_bottom and m_top boundary edges
Triangulation mixed_cylinder(int m_bottom, int m_top);
// 3d prism over a closed surface; close_up glues top to bottom (surface x S^1)
Triangulation prism3(const Triangulation& base, int layers, bool close_up);

// name dispatcher: "sphere2", "torus2_7v", "genus_g(2)", "circle(5)",
// "interval", "sphere3", "cylinder2(4,2)", "s2xs1", "t3"
std::optional<Triangulation> standard_library(const std::string& name);

}  // namespace orbifold
