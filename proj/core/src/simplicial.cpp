#include "orbifold/simplicial.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace orbifold {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<VertexId> face_tuple(const std::vector<VertexId>& simplex, int f) {
  std::vector<VertexId> out;
  for (int i = 0; i < static_cast<int>(simplex.size()); ++i)
    if (i != f) out.push_back(simplex[i]);
  return out;
}

int index_of(const std::vector<VertexId>& tuple, VertexId v) {
  auto it = std::find(tuple.begin(), tuple.end(), v);
  if (it == tuple.end()) throw std::logic_error("simplicial: vertex not in tuple");
  return static_cast<int>(it - tuple.begin());
}

[[noreturn]] void bail(const std::string& msg) { throw std::invalid_argument("simplicial: " + msg); }

}  // namespace

VertexId Triangulation::max_vertex_id() const {
  VertexId m = -1;
  for (auto& s : simplices)
    for (auto v : s) m = std::max(m, v);
  return m;
}

void Triangulation::finalize() {
  if (n < 0 || n > 3) bail("dimension must be in 0..3");
  for (auto& s : simplices) {
    if (static_cast<int>(s.size()) != n + 1) bail("simplex arity mismatch");
    for (size_t i = 0; i + 1 < s.size(); ++i)
      if (s[i] >= s[i + 1]) bail("simplex tuple not strictly increasing");
  }
  int m = top_count();
  if (gluings.empty() && n >= 1) {
    gluings.assign(m, std::vector<Gluing>(n + 1));
    std::map<std::vector<VertexId>, std::vector<std::pair<int, int>>> by_tuple;
    for (int s = 0; s < m; ++s)
      for (int f = 0; f <= n; ++f) by_tuple[face_tuple(simplices[s], f)].push_back({s, f});
    for (auto& [tup, occ] : by_tuple) {
      if (occ.size() > 2) bail("facet tuple appears more than twice; explicit gluings required");
      if (occ.size() == 2) {
        gluings[occ[0].first][occ[0].second] = {occ[1].first, occ[1].second};
        gluings[occ[1].first][occ[1].second] = {occ[0].first, occ[0].second};
      }
    }
  }
  if (gluings.empty() && n == 0) gluings.assign(m, {});
  if (orientations.empty()) {
    orientations.assign(m, 0);
    for (int seed = 0; seed < m; ++seed) {
      if (orientations[seed] != 0) continue;
      orientations[seed] = 1;
      std::vector<int> stack{seed};
      while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        for (int f = 0; f <= n && n >= 1; ++f) {
          auto g = gluings[s][f];
          if (g.is_boundary()) continue;
          int want = -orientations[s] * ((f % 2) ? -1 : 1) * ((g.face % 2) ? -1 : 1);
          if (orientations[g.simplex] == 0) {
            orientations[g.simplex] = want;
            stack.push_back(g.simplex);
          } else if (orientations[g.simplex] != want) {
            bail("orientation propagation failed: complex not orientable as glued");
          }
        }
      }
    }
  }
}

const std::vector<std::vector<int>>& position_subsets(int n, int j) {
  static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
  auto key = std::make_pair(n, j);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<std::vector<int>> subs;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == j + 1) {
      subs.push_back(cur);
      return;
    }
    for (int v = start; v <= n; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return cache.emplace(key, std::move(subs)).first->second;
}

int subset_index(int n, int j, const std::vector<int>& subset) {
  auto& subs = position_subsets(n, j);
  auto it = std::lower_bound(subs.begin(), subs.end(), subset);
  if (it == subs.end() || *it != subset) throw std::logic_error("simplicial: bad subset");
  return static_cast<int>(it - subs.begin());
}

FaceQuotient compute_quotient(const Triangulation& t) {
  FaceQuotient q;
  q.cls.resize(t.n + 1);
  q.counts.assign(t.n + 1, 0);
  int m = t.top_count();
  for (int j = 0; j < t.n; ++j) {
    auto& subs = position_subsets(t.n, j);
    int nc = static_cast<int>(subs.size());
    UnionFind uf(m * nc);
    auto& fsubs = position_subsets(t.n - 1, j);
    for (int s = 0; s < m; ++s) {
      for (int f = 0; f <= t.n; ++f) {
        auto g = t.gluings[s][f];
        if (g.is_boundary()) continue;
        std::vector<int> pf, pg;
        for (int i = 0; i <= t.n; ++i) {
          if (i != f) pf.push_back(i);
          if (i != g.face) pg.push_back(i);
        }
        for (auto& c : fsubs) {
          std::vector<int> sa, sb;
          for (int x : c) {
            sa.push_back(pf[x]);
            sb.push_back(pg[x]);
          }
          uf.unite(s * nc + subset_index(t.n, j, sa), g.simplex * nc + subset_index(t.n, j, sb));
        }
      }
    }
    q.cls[j].assign(m, std::vector<int>(nc, -1));
    std::map<int, int> relabel;
    for (int s = 0; s < m; ++s)
      for (int c = 0; c < nc; ++c) {
        int root = uf.find(s * nc + c);
        auto [it2, fresh] = relabel.emplace(root, static_cast<int>(relabel.size()));
        q.cls[j][s][c] = it2->second;
      }
    q.counts[j] = static_cast<std::int64_t>(relabel.size());
  }
  q.cls[t.n].assign(m, std::vector<int>(1));
  for (int s = 0; s < m; ++s) q.cls[t.n][s][0] = s;
  q.counts[t.n] = m;
  return q;
}

ValidationReport validate(const Triangulation& input, bool strict_complex) {
  ValidationReport rep;
  Triangulation t = input;
  try {
    t.finalize();
  } catch (const std::exception& e) {
    rep.fail(e.what());
    return rep;
  }
  int m = t.top_count();
  if (static_cast<int>(t.orientations.size()) != m) rep.fail("orientation count mismatch");
  for (int s = 0; s < m && rep.ok; ++s)
    if (t.orientations[s] != 1 && t.orientations[s] != -1) rep.fail("orientation not +1/-1");
  if (!rep.ok) return rep;

  for (int s = 0; s < m; ++s) {
    if (static_cast<int>(t.gluings[s].size()) != (t.n >= 1 ? t.n + 1 : 0)) {
      rep.fail("gluing arity mismatch at simplex " + std::to_string(s));
      return rep;
    }
    for (int f = 0; f <= t.n && t.n >= 1; ++f) {
      auto g = t.gluings[s][f];
      if (g.is_boundary()) {
        ++rep.boundary_faces;
        continue;
      }
      if (g.simplex < 0 || g.simplex >= m || g.face < 0 || g.face > t.n) {
        rep.fail("gluing out of range");
        return rep;
      }
      if (g.simplex == s && g.face == f) {
        rep.fail("face glued to itself");
        continue;
      }
      auto back = t.gluings[g.simplex][g.face];
      if (!(back == Gluing{s, f}))
        rep.fail("gluing is not an involution at (" + std::to_string(s) + "," + std::to_string(f) + ")");
      int lhs = t.orientations[s] * ((f % 2) ? -1 : 1);
      int rhs = -t.orientations[g.simplex] * ((g.face % 2) ? -1 : 1);
      if (lhs != rhs)
        rep.fail("orientability violated at (" + std::to_string(s) + "," + std::to_string(f) + ")");
    }
  }
  if (!rep.ok) return rep;
  auto q = compute_quotient(t);
  rep.counts = q.counts;
  if (strict_complex) {
    for (int s = 0; s < m; ++s) {
      std::set<int> vcls;
      for (int c = 0; c < t.n + 1; ++c) vcls.insert(q.cls[0][s][c]);
      if (static_cast<int>(vcls.size()) != t.n + 1)
        rep.fail("strict mode: simplex " + std::to_string(s) + " has identified vertices");
    }
  }
  return rep;
}

std::int64_t euler_characteristic(const Triangulation& input) {
  Triangulation t = input;
  t.finalize();
  auto rep = validate(t);
  if (!rep.ok) bail("euler_characteristic: invalid triangulation: " + rep.errors.front());
  std::int64_t chi = 0;
  for (int j = 0; j <= t.n; ++j) chi += (j % 2 ? -1 : 1) * rep.counts[j];
  return chi;
}

Triangulation boundary_complex(const Triangulation& input) {
  Triangulation t = input;
  t.finalize();
  Triangulation b;
  b.n = t.n - 1;
  if (b.n < 0) bail("boundary of a 0-complex");
  auto q = compute_quotient(t);
  std::vector<std::pair<int, int>> bf;
  for (int s = 0; s < t.top_count(); ++s)
    for (int f = 0; f <= t.n; ++f)
      if (t.gluings[s][f].is_boundary()) bf.push_back({s, f});
  std::map<std::pair<int, int>, int> bindex;
  for (auto& [s, f] : bf) {
    bindex[{s, f}] = b.top_count();
    b.simplices.push_back(face_tuple(t.simplices[s], f));
    b.orientations.push_back(t.orientations[s] * ((f % 2) ? -1 : 1));
  }
  if (b.n >= 1) {
    b.gluings.assign(b.top_count(), std::vector<Gluing>(b.n + 1));
    std::map<int, std::vector<std::pair<int, int>>> by_class;
    for (auto& [s, f] : bf) {
      std::vector<int> pf;
      for (int i = 0; i <= t.n; ++i)
        if (i != f) pf.push_back(i);
      int bi = bindex[{s, f}];
      for (int g = 0; g <= b.n; ++g) {
        std::vector<int> sub;
        for (int i = 0; i <= b.n; ++i)
          if (i != g) sub.push_back(pf[i]);
        int cls = q.cls[t.n - 2][s][subset_index(t.n, t.n - 2, sub)];
        by_class[cls].push_back({bi, g});
      }
    }
    for (auto& [cls, ends] : by_class) {
      if (ends.size() != 2) bail("boundary_complex: boundary is not a closed manifold");
      b.gluings[ends[0].first][ends[0].second] = {ends[1].first, ends[1].second};
      b.gluings[ends[1].first][ends[1].second] = {ends[0].first, ends[0].second};
    }
  } else {
    b.gluings.assign(b.top_count(), {});
  }
  return b;
}

// ---- Pachner machinery ----

namespace {

struct SiteData {
  std::vector<int> site;
  std::vector<VertexId> w;
  std::vector<int> p;
  int S = 1;
  std::map<std::pair<int, int>, Gluing> external;  // (site position, complement index) -> target
  std::vector<int> complement;
};

std::optional<SiteData> check_site(const Triangulation& t, const FaceQuotient& q,
                                   std::vector<int> site, bool fresh_vertex) {
  SiteData sd;
  std::sort(site.begin(), site.end());
  if (std::adjacent_find(site.begin(), site.end()) != site.end()) return std::nullopt;
  sd.site = site;
  std::set<VertexId> ids;
  for (int s : site)
    for (auto v : t.simplices[s]) ids.insert(v);
  if (fresh_vertex) {
    if (site.size() != 1) return std::nullopt;
    ids.insert(t.max_vertex_id() + 1);
  }
  if (static_cast<int>(ids.size()) != t.n + 2) return std::nullopt;
  sd.w.assign(ids.begin(), ids.end());

  std::set<int> pset;
  for (int s : site) {
    int omitted = -1;
    size_t k = 0;
    for (int idx = 0; idx < t.n + 2; ++idx) {
      if (k < t.simplices[s].size() && t.simplices[s][k] == sd.w[idx]) {
        ++k;
      } else {
        if (omitted >= 0) return std::nullopt;
        omitted = idx;
      }
    }
    if (omitted < 0 || k != t.simplices[s].size()) return std::nullopt;
    sd.p.push_back(omitted);
    if (!pset.insert(omitted).second) return std::nullopt;
  }
  sd.S = t.orientations[site[0]] * ((sd.p[0] % 2) ? -1 : 1);
  for (size_t i = 0; i < site.size(); ++i)
    if (t.orientations[site[i]] != sd.S * ((sd.p[i] % 2) ? -1 : 1)) return std::nullopt;
  for (int qx = 0; qx < t.n + 2; ++qx)
    if (!pset.count(qx)) sd.complement.push_back(qx);

  for (size_t i = 0; i < site.size(); ++i)
    for (size_t j = 0; j < site.size(); ++j) {
      if (i == j) continue;
      int fi = index_of(t.simplices[site[i]], sd.w[sd.p[j]]);
      int fj = index_of(t.simplices[site[j]], sd.w[sd.p[i]]);
      if (!(t.gluings[site[i]][fi] == Gluing{site[j], fj})) return std::nullopt;
    }
  if (fresh_vertex) {
    int s = site[0];
    for (int f = 0; f <= t.n; ++f) {
      int qx = static_cast<int>(std::lower_bound(sd.w.begin(), sd.w.end(), t.simplices[s][f]) -
                                sd.w.begin());
      sd.external[{0, qx}] = t.gluings[s][f];
    }
  } else {
    for (size_t i = 0; i < site.size(); ++i)
      for (int qx : sd.complement) {
        int f = index_of(t.simplices[site[i]], sd.w[qx]);
        auto g = t.gluings[site[i]][f];
        if (!g.is_boundary() && std::count(site.begin(), site.end(), g.simplex)) return std::nullopt;
        sd.external[{static_cast<int>(i), qx}] = g;
      }
  }

  // cells interior to the site ball (faces containing every complement id)
  // must have their whole quotient class inside the site, also interior
  if (!fresh_vertex && !sd.complement.empty() && static_cast<int>(site.size()) >= 2) {
    std::set<int> site_set(site.begin(), site.end());
    auto is_interior = [&](int s, const std::vector<int>& positions) {
      for (int qx : sd.complement) {
        VertexId v = sd.w[qx];
        bool found = false;
        for (int pos : positions)
          if (t.simplices[s][pos] == v) found = true;
        if (!found) return false;
      }
      return true;
    };
    for (int j = 0; j < t.n; ++j) {
      auto& subs = position_subsets(t.n, j);
      std::set<int> interior;
      for (int s : site)
        for (size_t c = 0; c < subs.size(); ++c)
          if (is_interior(s, subs[c])) interior.insert(q.cls[j][s][c]);
      if (interior.empty()) continue;
      for (int s = 0; s < t.top_count(); ++s)
        for (size_t c = 0; c < subs.size(); ++c) {
          if (!interior.count(q.cls[j][s][c])) continue;
          if (!site_set.count(s)) return std::nullopt;
          if (!is_interior(s, subs[c])) return std::nullopt;
        }
    }
  }
  return sd;
}

}  // namespace

std::vector<PachnerMove> enumerate_pachner(const Triangulation& input, const std::vector<int>& kinds) {
  Triangulation t = input;
  t.finalize();
  auto q = compute_quotient(t);
  auto wanted = [&](int k) { return kinds.empty() || std::count(kinds.begin(), kinds.end(), k); };
  std::vector<PachnerMove> moves;
  auto try_site = [&](std::vector<int> site, int k, bool fresh) {
    std::sort(site.begin(), site.end());
    PachnerMove mv{k, site};
    for (auto& m2 : moves)
      if (m2 == mv) return;
    if (check_site(t, q, site, fresh)) moves.push_back(mv);
  };

  if (wanted(1))
    for (int s = 0; s < t.top_count(); ++s) try_site({s}, 1, true);

  if (wanted(2) && t.n >= 1)
    for (int s = 0; s < t.top_count(); ++s)
      for (int f = 0; f <= t.n; ++f) {
        auto g = t.gluings[s][f];
        if (!g.is_boundary() && g.simplex != s && g.simplex > s) try_site({s, g.simplex}, 2, false);
      }

  if (t.n == 3 && wanted(3)) {
    std::map<int, std::set<int>> star;
    auto& subs = position_subsets(t.n, 1);
    for (int s = 0; s < t.top_count(); ++s)
      for (size_t c = 0; c < subs.size(); ++c) star[q.cls[1][s][c]].insert(s);
    for (auto& [cls, ss] : star)
      if (ss.size() == 3) try_site(std::vector<int>(ss.begin(), ss.end()), 3, false);
  }

  if (wanted(t.n + 1) && t.n >= 1) {
    std::map<int, std::set<int>> star;
    for (int s = 0; s < t.top_count(); ++s)
      for (int c = 0; c <= t.n; ++c) star[q.cls[0][s][c]].insert(s);
    for (auto& [cls, ss] : star)
      if (static_cast<int>(ss.size()) == t.n + 1)
        try_site(std::vector<int>(ss.begin(), ss.end()), t.n + 1, false);
  }

  std::sort(moves.begin(), moves.end(), [](const PachnerMove& a, const PachnerMove& b) {
    return std::tie(a.k, a.site) < std::tie(b.k, b.site);
  });
  return moves;
}

Triangulation apply_pachner(const Triangulation& input, const PachnerMove& m) {
  Triangulation t = input;
  t.finalize();
  auto q = compute_quotient(t);
  auto sdo = check_site(t, q, m.site, m.k == 1);
  if (!sdo) bail("apply_pachner: move not applicable");
  auto& sd = *sdo;
  if (static_cast<int>(sd.site.size()) != m.k) bail("apply_pachner: site size mismatch");

  Triangulation out;
  out.n = t.n;
  std::vector<int> remap(t.top_count(), -1);
  std::set<int> site_set(sd.site.begin(), sd.site.end());
  for (int s = 0; s < t.top_count(); ++s) {
    if (site_set.count(s)) continue;
    remap[s] = out.top_count();
    out.simplices.push_back(t.simplices[s]);
    out.orientations.push_back(t.orientations[s]);
    out.gluings.push_back(t.gluings[s]);
  }
  for (auto& row : out.gluings)
    for (auto& g : row)
      if (!g.is_boundary()) g = site_set.count(g.simplex) ? Gluing{} : Gluing{remap[g.simplex], g.face};

  std::map<int, int> new_index;
  for (int qx : sd.complement) {
    new_index[qx] = out.top_count();
    std::vector<VertexId> tup;
    for (int i = 0; i < t.n + 2; ++i)
      if (i != qx) tup.push_back(sd.w[i]);
    out.simplices.push_back(tup);
    out.orientations.push_back(-sd.S * ((qx % 2) ? -1 : 1));
    out.gluings.push_back(std::vector<Gluing>(t.n + 1));
  }
  for (int a : sd.complement)
    for (int b : sd.complement) {
      if (a >= b) continue;
      int fa = b - 1;  // b > a, so position of w[b] in the tuple missing w[a]
      int fb = a;
      out.gluings[new_index[a]][fa] = {new_index[b], fb};
      out.gluings[new_index[b]][fb] = {new_index[a], fa};
    }
  for (auto& [key, target] : sd.external) {
    auto [i, qx] = key;
    int pi = sd.p[i];
    int f_new = pi - (pi > qx ? 1 : 0);
    if (target.is_boundary()) {
      out.gluings[new_index[qx]][f_new] = {};
    } else {
      Gluing tgt{remap[target.simplex], target.face};
      out.gluings[new_index[qx]][f_new] = tgt;
      out.gluings[tgt.simplex][tgt.face] = {new_index[qx], f_new};
    }
  }
  auto rep = validate(out);
  if (!rep.ok)
    throw std::logic_error("apply_pachner: produced an invalid complex: " + rep.errors.front());
  return out;
}

Triangulation random_pachner_walk(const Triangulation& input, int steps, std::uint64_t seed,
                                  int size_cap, const std::vector<int>& kinds) {
  Triangulation t = input;
  t.finalize();
  std::mt19937_64 rng(seed);
  for (int step = 0; step < steps; ++step) {
    auto moves = enumerate_pachner(t, kinds);
    if (t.top_count() >= size_cap) {
      std::vector<PachnerMove> shrunk;
      for (auto& mv : moves)
        if (t.n + 2 - mv.k <= mv.k) shrunk.push_back(mv);
      if (!shrunk.empty()) moves = std::move(shrunk);
    }
    if (moves.empty()) break;
    std::uniform_int_distribution<size_t> pick(0, moves.size() - 1);
    t = apply_pachner(t, moves[pick(rng)]);
  }
  return t;
}

std::vector<std::vector<std::pair<int, int>>> boundary_circles(const Triangulation& input) {
  std::vector<std::vector<std::pair<int, int>>> out;
  for (auto& c : boundary_circles_oriented(input)) out.push_back(c.edges);
  return out;
}

std::vector<BoundaryCircle> boundary_circles_oriented(const Triangulation& input) {
  Triangulation t = input;
  t.finalize();
  if (t.n != 2) bail("boundary_circles: 2d triangulation expected");
  auto q = compute_quotient(t);
  struct End {
    int s, f;
    int tail_cls, head_cls;
    VertexId tail_id;
  };
  std::vector<End> ends;
  std::map<int, int> out_by_tail;
  for (int s = 0; s < t.top_count(); ++s)
    for (int f = 0; f <= 2; ++f) {
      if (!t.gluings[s][f].is_boundary()) continue;
      std::vector<int> pos;
      for (int i = 0; i <= 2; ++i)
        if (i != f) pos.push_back(i);
      int dir = t.orientations[s] * ((f % 2) ? -1 : 1);
      int ptail = dir > 0 ? pos[0] : pos[1];
      int phead = dir > 0 ? pos[1] : pos[0];
      End e{s, f, q.cls[0][s][ptail], q.cls[0][s][phead], t.simplices[s][ptail]};
      if (out_by_tail.count(e.tail_cls)) bail("boundary_circles: boundary is not a 1-manifold");
      out_by_tail[e.tail_cls] = static_cast<int>(ends.size());
      ends.push_back(e);
    }
  std::vector<bool> used(ends.size(), false);
  std::vector<BoundaryCircle> circles;
  for (;;) {
    int start = -1;
    for (size_t i = 0; i < ends.size(); ++i) {
      if (used[i]) continue;
      if (start < 0 || std::make_tuple(ends[i].tail_id, ends[i].s, ends[i].f) <
                           std::make_tuple(ends[start].tail_id, ends[start].s, ends[start].f))
        start = static_cast<int>(i);
    }
    if (start < 0) break;
    BoundaryCircle circle;
    int cur = start;
    do {
      used[cur] = true;
      circle.edges.push_back({ends[cur].s, ends[cur].f});
      circle.tails.push_back(ends[cur].tail_id);
      auto it = out_by_tail.find(ends[cur].head_cls);
      if (it == out_by_tail.end()) bail("boundary_circles: open boundary chain");
      cur = it->second;
    } while (cur != start);
    circles.push_back(std::move(circle));
  }
  return circles;
}

// ---- library ----

namespace {

Triangulation finalized(Triangulation t) {
  t.finalize();
  auto rep = validate(t);
  if (!rep.ok) throw std::logic_error("library triangulation invalid: " + rep.errors.front());
  return t;
}

Triangulation sphere_boundary(int n) {
  Triangulation t;
  t.n = n;
  for (int p = 0; p <= n + 1; ++p) {
    std::vector<VertexId> tup;
    for (int v = 0; v <= n + 1; ++v)
      if (v != p) tup.push_back(v);
    t.simplices.push_back(tup);
    t.orientations.push_back((p % 2) ? -1 : 1);
  }
  return finalized(t);
}

}  // namespace

Triangulation sphere2() { return sphere_boundary(2); }
Triangulation sphere3() { return sphere_boundary(3); }

Triangulation torus2_7v() {
  Triangulation t;
  t.n = 2;
  for (int i = 0; i < 7; ++i) {
    std::vector<VertexId> a{i, (i + 1) % 7, (i + 3) % 7};
    std::vector<VertexId> b{i, (i + 2) % 7, (i + 3) % 7};
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    t.simplices.push_back(a);
    t.simplices.push_back(b);
  }
  return finalized(t);
}

Triangulation interval() {
  Triangulation t;
  t.n = 1;
  t.simplices = {{0, 1}};
  t.orientations = {1};
  t.gluings = {{Gluing{}, Gluing{}}};
  return finalized(t);
}

Triangulation circle(int m) {
  if (m < 1) bail("circle: m >= 1 required");
  Triangulation t;
  t.n = 1;
  if (m == 1) {
    t.simplices = {{0, 1}};
    t.orientations = {1};
    t.gluings = {{Gluing{0, 1}, Gluing{0, 0}}};
    return finalized(t);
  }
  for (int i = 0; i + 1 < m; ++i) t.simplices.push_back({i, i + 1});
  t.simplices.push_back({0, m - 1});
  return finalized(t);
}

Triangulation disk2() {
  Triangulation t;
  t.n = 2;
  t.simplices = {{0, 1, 2}};
  t.orientations = {1};
  t.gluings = {{Gluing{}, Gluing{}, Gluing{}}};
  return finalized(t);
}

Triangulation cylinder2(int m, int layers) {
  if (m < 1 || layers < 1) bail("cylinder2: m, layers >= 1");
  Triangulation c = circle(m);
  VertexId off = c.max_vertex_id() + 1;
  Triangulation t;
  t.n = 2;
  int segs = c.top_count();
  auto A = [&](int L, int s) { return (L * segs + s) * 2; };
  auto B = [&](int L, int s) { return (L * segs + s) * 2 + 1; };
  t.simplices.resize(2 * segs * layers);
  t.gluings.assign(2 * segs * layers, std::vector<Gluing>(3));
  for (int L = 0; L < layers; ++L)
    for (int s = 0; s < segs; ++s) {
      VertexId u = c.simplices[s][0] + L * off, v = c.simplices[s][1] + L * off;
      // A = (u, v, v'), B = (u, u', v'); diagonal (u, v') shared
      t.simplices[A(L, s)] = {u, v, v + off};
      t.simplices[B(L, s)] = {u, u + off, v + off};
      t.gluings[A(L, s)][1] = {B(L, s), 1};
      t.gluings[B(L, s)][1] = {A(L, s), 1};
      // circle face 0 omits u (vertex v side), face 1 omits v (vertex u side)
      for (int fc = 0; fc <= 1; ++fc) {
        auto g = c.gluings[s][fc];
        int my_s = fc == 0 ? A(L, s) : B(L, s);
        int my_f = fc == 0 ? 0 : 2;
        int other_s = g.face == 0 ? A(L, g.simplex) : B(L, g.simplex);
        int other_f = g.face == 0 ? 0 : 2;
        t.gluings[my_s][my_f] = {other_s, other_f};
      }
      if (L > 0) {
        t.gluings[A(L, s)][2] = {B(L - 1, s), 0};
        t.gluings[B(L - 1, s)][0] = {A(L, s), 2};
      }
    }
  return finalized(t);
}

Triangulation torus_from_cylinder(int m, int layers) {
  Triangulation t = cylinder2(m, layers);
  int segs = circle(m).top_count();
  for (int s = 0; s < segs; ++s) {
    int a0 = s * 2;
    int btop = ((layers - 1) * segs + s) * 2 + 1;
    t.gluings[a0][2] = {btop, 0};
    t.gluings[btop][0] = {a0, 2};
  }
  t.orientations.clear();
  return finalized(t);
}

Triangulation connected_sum(const Triangulation& a_in, const Triangulation& b_in) {
  Triangulation a = a_in, b = b_in;
  a.finalize();
  b.finalize();
  if (a.n != 2 || b.n != 2) bail("connected_sum: 2d only");
  auto clean_triangle = [](const Triangulation& t) -> int {
    auto q = compute_quotient(t);
    for (int s = 0; s < t.top_count(); ++s) {
      std::set<int> vc{q.cls[0][s][0], q.cls[0][s][1], q.cls[0][s][2]};
      if (vc.size() != 3) continue;
      bool ok = true;
      for (int f = 0; f <= 2; ++f) {
        auto g = t.gluings[s][f];
        if (g.is_boundary() || g.simplex == s) ok = false;
      }
      if (ok) return s;
    }
    bail("connected_sum: no clean triangle found");
  };
  int t1 = clean_triangle(a), t2 = clean_triangle(b);
  // flip the second summand when needed so the hole circles glue orientation-reversing
  int flip = (a.orientations[t1] * b.orientations[t2] == 1) ? -1 : 1;
  VertexId off = a.max_vertex_id() + 1;

  Triangulation out;
  out.n = 2;
  std::vector<int> ra(a.top_count(), -1), rb(b.top_count(), -1);
  for (int s = 0; s < a.top_count(); ++s) {
    if (s == t1) continue;
    ra[s] = out.top_count();
    out.simplices.push_back(a.simplices[s]);
    out.orientations.push_back(a.orientations[s]);
    out.gluings.push_back(a.gluings[s]);
  }
  for (int s = 0; s < b.top_count(); ++s) {
    if (s == t2) continue;
    rb[s] = out.top_count();
    auto tup = b.simplices[s];
    for (auto& v : tup) v += off;
    out.simplices.push_back(tup);
    out.orientations.push_back(b.orientations[s] * flip);
    out.gluings.push_back(b.gluings[s]);
  }
  for (int s = 0; s < a.top_count(); ++s) {
    if (ra[s] < 0) continue;
    for (auto& g : out.gluings[ra[s]])
      if (!g.is_boundary()) g = (g.simplex == t1) ? Gluing{} : Gluing{ra[g.simplex], g.face};
  }
  for (int s = 0; s < b.top_count(); ++s) {
    if (rb[s] < 0) continue;
    for (auto& g : out.gluings[rb[s]])
      if (!g.is_boundary()) g = (g.simplex == t2) ? Gluing{} : Gluing{rb[g.simplex], g.face};
  }
  // hole edges pair by omitted-vertex position; both tuples are sorted, so the
  // order-preserving identification matches the monotone vertex correspondence
  for (int k = 0; k <= 2; ++k) {
    auto ga = a.gluings[t1][k];
    auto gb = b.gluings[t2][k];
    Gluing lhs{ra[ga.simplex], ga.face}, rhs{rb[gb.simplex], gb.face};
    out.gluings[lhs.simplex][lhs.face] = rhs;
    out.gluings[rhs.simplex][rhs.face] = lhs;
  }
  return finalized(out);
}

Triangulation genus_surface(int g) {
  if (g < 0) bail("genus_surface: g >= 0");
  if (g == 0) return sphere2();
  Triangulation t = torus2_7v();
  for (int i = 1; i < g; ++i) t = connected_sum(t, torus2_7v());
  return t;
}

Triangulation subdivide_boundary_edge(const Triangulation& input, int s, int f) {
  Triangulation t = input;
  t.finalize();
  if (t.n != 2) bail("subdivide_boundary_edge: 2d only");
  if (!t.gluings[s][f].is_boundary()) bail("subdivide_boundary_edge: face not on the boundary");
  auto tup = t.simplices[s];
  VertexId z = tup[f];
  std::vector<VertexId> edge = face_tuple(tup, f);
  VertexId x = edge[0], y = edge[1], w = t.max_vertex_id() + 1;

  Triangulation out;
  out.n = 2;
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

  auto sorted3 = [](VertexId a, VertexId b, VertexId c) {
    std::vector<VertexId> v{a, b, c};
    std::sort(v.begin(), v.end());
    return v;
  };
  int s1 = out.top_count();
  out.simplices.push_back(sorted3(x, z, w));
  out.orientations.push_back(0);
  out.gluings.push_back(std::vector<Gluing>(3));
  int s2 = out.top_count();
  out.simplices.push_back(sorted3(y, z, w));
  out.orientations.push_back(0);
  out.gluings.push_back(std::vector<Gluing>(3));

  auto face_of = [&](int simp, VertexId u, VertexId v) {
    for (int ff = 0; ff <= 2; ++ff) {
      auto e = face_tuple(out.simplices[simp], ff);
      if (e[0] == std::min(u, v) && e[1] == std::max(u, v)) return ff;
    }
    throw std::logic_error("subdivide: edge not found");
  };
  out.gluings[s1][face_of(s1, z, w)] = {s2, face_of(s2, z, w)};
  out.gluings[s2][face_of(s2, z, w)] = {s1, face_of(s1, z, w)};
  auto attach = [&](int snew, VertexId u, VertexId v, Gluing target) {
    int ff = face_of(snew, u, v);
    if (target.is_boundary()) {
      out.gluings[snew][ff] = {};
    } else {
      Gluing tgt{remap[target.simplex], target.face};
      out.gluings[snew][ff] = tgt;
      out.gluings[tgt.simplex][tgt.face] = {snew, ff};
    }
  };
  attach(s1, x, z, t.gluings[s][index_of(tup, y)]);
  attach(s2, y, z, t.gluings[s][index_of(tup, x)]);

  int m = out.top_count();
  auto& orient = out.orientations;
  for (int rounds = 0; rounds < 3; ++rounds)
    for (int i = 0; i < m; ++i) {
      if (orient[i] != 0) continue;
      for (int ff = 0; ff <= 2; ++ff) {
        auto g = out.gluings[i][ff];
        if (g.is_boundary() || orient[g.simplex] == 0) continue;
        orient[i] = -orient[g.simplex] * ((ff % 2) ? -1 : 1) * ((g.face % 2) ? -1 : 1);
        break;
      }
    }
  for (int i = 0; i < m; ++i)
    if (orient[i] == 0) orient[i] = t.orientations[s];
  return finalized(out);
}

Triangulation mixed_cylinder(int m_bottom, int m_top) {
  int base = std::min(m_bottom, m_top);
  Triangulation t = cylinder2(base, 1);
  int extra = std::abs(m_top - m_bottom);
  bool grow_top = m_top > m_bottom;
  for (int i = 0; i < extra; ++i) {
    auto circles = boundary_circles(t);
    // the bottom circle carries vertex id 0
    int which = -1;
    for (size_t c = 0; c < circles.size(); ++c) {
      bool has0 = false;
      for (auto& [s, f] : circles[c]) {
        auto e = face_tuple(t.simplices[s], f);
        if (e[0] == 0 || e[1] == 0) has0 = true;
      }
      if (has0 != grow_top) which = static_cast<int>(c);
    }
    if (which < 0) throw std::logic_error("mixed_cylinder: lost a boundary circle");
    auto [s, f] = circles[which][0];
    t = subdivide_boundary_edge(t, s, f);
  }
  return t;
}

Triangulation prism3(const Triangulation& base_in, int layers, bool close_up) {
  Triangulation base = base_in;
  base.finalize();
  if (base.n != 2) bail("prism3: 2d base expected");
  {
    auto rep = validate(base);
    if (!rep.ok || rep.boundary_faces) bail("prism3: closed base expected");
  }
  VertexId off = base.max_vertex_id() + 1;
  Triangulation t;
  t.n = 3;
  int F = base.top_count();
  auto T1 = [&](int L, int s) { return (L * F + s) * 3; };
  auto T3 = [&](int L, int s) { return (L * F + s) * 3 + 2; };
  for (int L = 0; L < layers; ++L)
    for (int s = 0; s < F; ++s) {
      VertexId a = base.simplices[s][0] + L * off;
      VertexId b = base.simplices[s][1] + L * off;
      VertexId c = base.simplices[s][2] + L * off;
      t.simplices.push_back({a, b, c, c + off});
      t.simplices.push_back({a, b, b + off, c + off});
      t.simplices.push_back({a, a + off, b + off, c + off});
    }
  t.finalize();
  if (close_up) {
    for (int s = 0; s < F; ++s) {
      int bot = T1(0, s), top = T3(layers - 1, s);
      if (!t.gluings[bot][3].is_boundary() || !t.gluings[top][0].is_boundary())
        throw std::logic_error("prism3: expected open horizontal faces");
      t.gluings[bot][3] = {top, 0};
      t.gluings[top][0] = {bot, 3};
    }
    t.orientations.clear();
  }
  return finalized(t);
}

Triangulation s2xs1() { return prism3(sphere2(), 1, true); }

Triangulation t3() {
  Triangulation t;
  t.n = 3;
  // Kuhn cube with corner id 4z + 2y + x; opposite faces identified by translation
  const int axes[3] = {1, 2, 4};
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (auto& pm : perms) {
    VertexId v1 = axes[pm[0]];
    VertexId v2 = v1 + axes[pm[1]];
    std::vector<VertexId> tup{0, v1, v2, 7};
    std::sort(tup.begin(), tup.end());
    t.simplices.push_back(tup);
  }
  t.finalize();
  std::map<std::vector<VertexId>, std::pair<int, int>> open;
  for (int s = 0; s < t.top_count(); ++s)
    for (int f = 0; f <= 3; ++f)
      if (t.gluings[s][f].is_boundary()) open[face_tuple(t.simplices[s], f)] = {s, f};
  for (auto& [tup, sf] : open) {
    for (int ax : axes) {
      bool low = true;
      for (auto v : tup)
        if (v & ax) low = false;
      if (!low) continue;
      std::vector<VertexId> partner = tup;
      for (auto& v : partner) v += ax;
      auto it = open.find(partner);
      if (it == open.end()) throw std::logic_error("t3: translation partner missing");
      t.gluings[sf.first][sf.second] = {it->second.first, it->second.second};
      t.gluings[it->second.first][it->second.second] = {sf.first, sf.second};
    }
  }
  t.orientations.clear();
  return finalized(t);
}

std::optional<Triangulation> standard_library(const std::string& name) {
  auto args = [&](const std::string& prefix) -> std::optional<std::vector<int>> {
    if (name.rfind(prefix + "(", 0) != 0 || name.back() != ')') return std::nullopt;
    std::vector<int> out;
    std::string inner = name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
    std::stringstream ss(inner);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
  };
  if (name == "sphere2") return sphere2();
  if (name == "torus2_7v") return torus2_7v();
  if (name == "interval") return interval();
  if (name == "sphere3") return sphere3();
  if (name == "s2xs1") return s2xs1();
  if (name == "t3") return t3();
  if (name == "disk2") return disk2();
  if (auto a = args("genus_g"); a && a->size() == 1) return genus_surface((*a)[0]);
  if (auto a = args("circle"); a && a->size() == 1) return circle((*a)[0]);
  if (auto a = args("cylinder2"); a && a->size() == 2) return cylinder2((*a)[0], (*a)[1]);
  if (auto a = args("torus_cyl"); a && a->size() == 2) return torus_from_cylinder((*a)[0], (*a)[1]);
  return std::nullopt;
}

}  // namespace orbifold
