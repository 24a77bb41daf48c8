#include "orbifold/tqft2d.hpp"

#include <algorithm>
#include <stdexcept>

namespace orbifold {

Bordism2 glue_bordisms(const Bordism2& a, int a_out_pos, const Bordism2& b, int b_in_pos) {
  Triangulation ta = a.tri, tb = b.tri;
  ta.finalize();
  tb.finalize();
  auto ca = boundary_circles_oriented(ta);
  auto cb = boundary_circles_oriented(tb);
  int ac = a.out_circles.at(a_out_pos);
  int bc = b.in_circles.at(b_in_pos);
  auto ea = ca[ac].edges;  // outgoing listing: induced order
  std::vector<std::pair<int, int>> eb(cb[bc].edges.rbegin(), cb[bc].edges.rend());  // incoming listing
  if (ea.size() != eb.size()) throw std::invalid_argument("glue_bordisms: circle sizes differ");

  int off_s = ta.top_count();
  VertexId off_v = ta.max_vertex_id() + 1;
  Triangulation t = ta;
  for (int s = 0; s < tb.top_count(); ++s) {
    auto tup = tb.simplices[s];
    for (auto& v : tup) v += off_v;
    t.simplices.push_back(tup);
    t.orientations.push_back(tb.orientations[s]);
    auto row = tb.gluings[s];
    for (auto& g : row)
      if (!g.is_boundary()) g.simplex += off_s;
    t.gluings.push_back(row);
  }
  for (size_t k = 0; k < ea.size(); ++k) {
    Gluing lhs{ea[k].first, ea[k].second};
    Gluing rhs{eb[k].first + off_s, eb[k].second};
    t.gluings[lhs.simplex][lhs.face] = rhs;
    t.gluings[rhs.simplex][rhs.face] = lhs;
  }
  auto rep = validate(t);
  if (!rep.ok) throw std::logic_error("glue_bordisms: invalid composite: " + rep.errors.front());

  // map the surviving circles of both parts to circles of the composite
  auto cc = boundary_circles_oriented(t);
  auto find_circle = [&](int s, int f) {
    for (size_t c = 0; c < cc.size(); ++c)
      for (auto& e : cc[c].edges)
        if (e.first == s && e.second == f) return static_cast<int>(c);
    throw std::logic_error("glue_bordisms: lost a boundary edge");
  };
  Bordism2 out;
  out.tri = t;
  for (int c : a.in_circles) out.in_circles.push_back(find_circle(ca[c].edges[0].first, ca[c].edges[0].second));
  for (size_t i = 0; i < b.in_circles.size(); ++i) {
    if (static_cast<int>(i) == b_in_pos) continue;
    int c = b.in_circles[i];
    out.in_circles.push_back(find_circle(cb[c].edges[0].first + off_s, cb[c].edges[0].second));
  }
  for (size_t i = 0; i < a.out_circles.size(); ++i) {
    if (static_cast<int>(i) == a_out_pos) continue;
    int c = a.out_circles[i];
    out.out_circles.push_back(find_circle(ca[c].edges[0].first, ca[c].edges[0].second));
  }
  for (int c : b.out_circles)
    out.out_circles.push_back(find_circle(cb[c].edges[0].first + off_s, cb[c].edges[0].second));
  return out;
}

Bordism2 disk_bordism() {
  Bordism2 b;
  b.tri = disk2();
  b.out_circles = {0};
  return b;
}

Triangulation remove_triangle(const Triangulation& input, int s) {
  Triangulation t = input;
  t.finalize();
  Triangulation out;
  out.n = t.n;
  std::vector<int> remap(t.top_count(), -1);
  for (int i = 0; i < t.top_count(); ++i) {
    if (i == s) continue;
    remap[i] = out.top_count();
    out.simplices.push_back(t.simplices[i]);
    out.orientations.push_back(t.orientations[i]);
    out.gluings.push_back(t.gluings[i]);
  }
  for (auto& row : out.gluings)
    for (auto& g : row)
      if (!g.is_boundary()) g = (g.simplex == s) ? Gluing{} : Gluing{remap[g.simplex], g.face};
  return out;
}

Bordism2 pants_bordism() {
  // subdivide a disk until it has two vertex-disjoint interior triangles with
  // fresh ids only, then cut them out
  Triangulation t = disk2();
  for (int round = 0; round < 24; ++round) {
    auto q = compute_quotient(t);
    std::vector<int> interior;
    for (int s = 0; s < t.top_count(); ++s) {
      bool ok = true;
      for (int f = 0; f <= 2; ++f)
        if (t.gluings[s][f].is_boundary()) ok = false;
      for (auto v : t.simplices[s])
        if (v <= 2) ok = false;
      if (ok) interior.push_back(s);
    }
    for (size_t i = 0; i < interior.size(); ++i)
      for (size_t j = i + 1; j < interior.size(); ++j) {
        std::set<int> vi, vj;
        for (int c = 0; c <= 2; ++c) {
          vi.insert(q.cls[0][interior[i]][c]);
          vj.insert(q.cls[0][interior[j]][c]);
        }
        bool disjoint = true;
        for (int v : vi)
          if (vj.count(v)) disjoint = false;
        if (!disjoint) continue;
        Triangulation cut = remove_triangle(remove_triangle(t, interior[j]), interior[i]);
        auto rep = validate(cut);
        if (!rep.ok) continue;
        auto circles = boundary_circles_oriented(cut);
        if (circles.size() != 3) continue;
        Bordism2 b;
        b.tri = cut;
        for (size_t c = 0; c < circles.size(); ++c) {
          bool outer = false;
          for (auto v : circles[c].tails)
            if (v <= 2) outer = true;
          if (outer)
            b.out_circles.push_back(static_cast<int>(c));
          else
            b.in_circles.push_back(static_cast<int>(c));
        }
        if (b.out_circles.size() == 1 && b.in_circles.size() == 2) return b;
      }
    t = apply_pachner(t, {1, {round % t.top_count()}});
  }
  throw std::logic_error("pants_bordism: construction failed");
}

}  // namespace orbifold
