#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "orbifold/frobenius.hpp"
#include "orbifold/simplicial.hpp"
#include "orbifold/sparse.hpp"

namespace orbifold {

// A triangulated 2-bordism. Circles refer to boundary_circles_oriented(tri);
// together the two lists must partition the boundary circles.
struct Bordism2 {
  Triangulation tri;
  std::vector<int> in_circles;
  std::vector<int> out_circles;
};

template <class T>
struct OrbifoldStateSpace {
  Index circle_size = 0;
  Index dim = 0;
  LinearMap<T> inj;   // state space -> A^(x)m
  LinearMap<T> surj;  // A^(x)m -> state space
};

// State sum evaluator for one delta-separable symmetric Frobenius algebra.
//
// Conventions, locked by the acceptance values: a positively oriented
// triangle a<b<c carries mu[x_ab, y_bc]^{z_ac} (the ac slot is raised by the
// inverse pairing); negatively oriented triangles carry the reversed tensor
// mu[y,x]^z. Interior edges contract raised against lowered slots directly,
// inserting g or g^{-1} when the slot kinds collide. Closed evaluations are
// normalized by K^{-chi} where K = sum of the matrix block sizes of A; with
// this weight the point-gauging datum evaluates to the trivial theory on
// every surface and group algebras reproduce gauge-counting values.
template <class T>
class StateSum2D {
 public:
  explicit StateSum2D(FrobeniusAlgebra<T> algebra, bool check = true)
      : A(std::move(algebra)) {
    if (check) {
      auto rep = check_axioms(A);
      if (!rep.all_delta_frobenius())
        throw std::invalid_argument(
            "tqft2d: algebra must be delta-separable symmetric Frobenius");
    }
    gram = A.gram();
    ginv = A.gram_inv();
    // eps(a_x a_y a_w) with the ac slot raised is the structure constant itself
    tplus = A.mu;                      // [ab, bc, ac^]
    tminus = A.mu.permute({1, 0, 2});  // reversed boundary cycle
  }

  const FrobeniusAlgebra<T>& algebra() const { return A; }

  // K = sum of block sizes; computed lazily, throws when the center does not
  // split over the session field
  T qdim_total() const {
    std::lock_guard<std::mutex> lock(mutex_);
    if (!K_) K_ = block_data(A).dim_sum;
    return *K_;
  }

  // raw network value of a closed surface, no Euler normalization
  T raw_closed(const Triangulation& tri) const {
    Triangulation t = tri;
    t.finalize();
    auto rep = validate(t);
    if (!rep.ok) throw std::invalid_argument("tqft2d: invalid triangulation");
    if (rep.boundary_faces) throw std::invalid_argument("tqft2d: closed surface expected");
    auto bn = build_network(t, {}, {});
    return CarrierConvert<T>::unpack(bn.net.contract_all({}).data()[0]) * bn.scale;
  }

  T closed(const Triangulation& tri) const {
    Triangulation t = tri;
    t.finalize();
    return raw_closed(t) * scalar_pow(qdim_total(), -euler_characteristic(t));
  }

  // boundary edges of in-circles stay lowered, out-circles are raised; the
  // matrix maps A^(x)(sum of in sizes) to A^(x)(sum of out sizes)
  LinearMap<T> bordism(const Bordism2& b) const {
    Triangulation t = b.tri;
    t.finalize();
    auto rep = validate(t);
    if (!rep.ok) throw std::invalid_argument("tqft2d: invalid bordism triangulation");
    auto circles = boundary_circles_oriented(t);
    std::vector<bool> seen(circles.size(), false);
    for (int c : b.in_circles) seen.at(c) = true;
    for (int c : b.out_circles) {
      if (seen.at(c)) throw std::invalid_argument("tqft2d: circle listed twice");
      seen[c] = true;
    }
    for (bool s : seen)
      if (!s) throw std::invalid_argument("tqft2d: boundary circle not assigned");

    std::set<std::pair<int, int>> raise, lower;
    std::vector<typename TensorNetwork<T>::Leg> open;
    Index out_dim = 1, in_dim = 1;
    for (int c : b.out_circles)
      for (auto& [s, f] : circles[c].edges) {
        raise.insert({s, f});
        open.push_back(boundary_leg(s, f));
        out_dim *= A.dim;
      }
    for (int c : b.in_circles) {
      // incoming circles are read against the induced orientation; reversing
      // the induced listing starts at the least tail again
      auto& e = circles[c].edges;
      for (auto it = e.rbegin(); it != e.rend(); ++it) {
        lower.insert(*it);
        open.push_back(boundary_leg(it->first, it->second));
        in_dim *= A.dim;
      }
    }
    auto bn = build_network(t, raise, lower);
    auto cten = bn.net.contract_all(open);
    T norm = scalar_pow(qdim_total(), -euler_characteristic(t)) * bn.scale;
    Tensor<T> ten(cten.shape());
    for (Index i = 0; i < cten.size(); ++i)
      ten.data()[i] = CarrierConvert<T>::unpack(cten.data()[i]) * norm;
    return LinearMap<T>(ten.reshape({out_dim, in_dim}));
  }

  LinearMap<T> cylinder_idempotent(Index m, int layers = 1) const {
    Bordism2 b = cylinder_bordism(m, layers);
    return bordism(b);
  }

  OrbifoldStateSpace<T> state_space(Index m) const {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = spaces_.find(m);
      if (it != spaces_.end()) return it->second;
    }
    auto phi = cylinder_idempotent(m);
    auto split = split_idempotent(phi);
    OrbifoldStateSpace<T> sp{m, split.rank, split.inj, split.surj};
    std::lock_guard<std::mutex> lock(mutex_);
    spaces_.emplace(m, sp);
    return sp;
  }

  // surj . Z(bordism) . inj between orbifold state spaces
  LinearMap<T> orbifold_evaluate(const Bordism2& b) const {
    auto circles = boundary_circles_oriented(b.tri);
    auto map = bordism(b);
    LinearMap<T> inj = LinearMap<T>::identity(1), surj = LinearMap<T>::identity(1);
    for (int c : b.in_circles)
      inj = LinearMap<T>(inj.matrix.kron(state_space(circles[c].edges.size()).inj.matrix));
    for (int c : b.out_circles)
      surj = LinearMap<T>(surj.matrix.kron(state_space(circles[c].edges.size()).surj.matrix));
    return compose(surj, compose(map, inj));
  }

  static Bordism2 cylinder_bordism(Index m, int layers = 1) {
    Bordism2 b;
    b.tri = cylinder2(static_cast<int>(m), layers);
    // the circle containing vertex id 0 is the bottom (incoming) one
    auto circles = boundary_circles_oriented(b.tri);
    if (circles.size() != 2) throw std::logic_error("cylinder_bordism: expected two circles");
    bool first_is_bottom = false;
    for (auto v : circles[0].tails)
      if (v == 0) first_is_bottom = true;
    b.in_circles = {first_is_bottom ? 0 : 1};
    b.out_circles = {first_is_bottom ? 1 : 0};
    return b;
  }

 private:
  static typename TensorNetwork<T>::Leg boundary_leg(int s, int f) { return (s * 3 + f) + 1; }

  using Carrier = typename CarrierOf<T>::type;
  struct BuiltNet {
    SparseNetwork<Carrier> net;
    T scale = FieldTraits<T>::one();
  };

  BuiltNet build_network(const Triangulation& t, const std::set<std::pair<int, int>>& raise,
                         const std::set<std::pair<int, int>>& lower) const {
    using Net = SparseNetwork<Carrier>;
    BuiltNet built;
    Net& net = built.net;
    // leg per interior edge pair, negative range; boundary legs positive
    std::map<std::pair<int, int>, typename Net::Leg> leg_of;
    typename Net::Leg next = -1;
    for (int s = 0; s < t.top_count(); ++s)
      for (int f = 0; f <= 2; ++f) {
        auto g = t.gluings[s][f];
        if (g.is_boundary()) {
          leg_of[{s, f}] = boundary_leg(s, f);
        } else if (!leg_of.count({s, f})) {
          leg_of[{s, f}] = next;
          leg_of[{g.simplex, g.face}] = next;
          --next;
        }
      }
    for (int s = 0; s < t.top_count(); ++s) {
      Tensor<T> ten = t.orientations[s] > 0 ? tplus : tminus;
      // tensor axes [ab, bc, ac] = faces [2, 0, 1]; ac is the raised slot
      std::vector<typename Net::Leg> legs{leg_of[{s, 2}], leg_of[{s, 0}], leg_of[{s, 1}]};
      for (int axis = 0; axis < 3; ++axis) {
        int f = axis == 0 ? 2 : (axis == 1 ? 0 : 1);
        auto g = t.gluings[s][f];
        bool mine_raised = (f == 1);
        if (g.is_boundary()) {
          if (raise.count({s, f}) && !mine_raised) ten = apply_matrix(ten, axis, ginv);
          if (lower.count({s, f}) && mine_raised) ten = apply_matrix(ten, axis, gram);
          continue;
        }
        // a bond joining equal slot kinds needs the pairing restored once,
        // applied on the lexicographically first side
        bool theirs_raised = (g.face == 1);
        bool first_side = std::make_pair(s, f) < std::make_pair(g.simplex, g.face);
        if (mine_raised && theirs_raised && first_side) ten = apply_matrix(ten, axis, gram);
        if (!mine_raised && !theirs_raised && first_side) ten = apply_matrix(ten, axis, ginv);
      }
      auto [packed, scale] = CarrierConvert<T>::pack(ten.data());
      built.scale = built.scale * scale;
      SparseTensor<Carrier> st;
      st.shape = ten.shape();
      for (Index i = 0; i < static_cast<Index>(packed.size()); ++i)
        if (!FieldTraits<Carrier>::is_zero(packed[i])) st.entries.push_back({i, packed[i]});
      net.add(std::move(st), legs);
    }
    return built;
  }

 public:
  FrobeniusAlgebra<T> A;
  Tensor<T> gram, ginv, tplus, tminus;

 private:
  mutable std::mutex mutex_;
  mutable std::optional<T> K_;
  mutable std::map<Index, OrbifoldStateSpace<T>> spaces_;
};

// psi^(chi(M) - chi(boundary M)/2)
template <class T>
T euler_tqft(const T& psi, const Triangulation& tri) {
  using F = FieldTraits<T>;
  if (F::is_zero(psi)) throw std::invalid_argument("euler_tqft: psi must be invertible");
  Triangulation t = tri;
  t.finalize();
  auto chi = euler_characteristic(t);
  std::int64_t chi_b = 0;
  auto rep = validate(t);
  if (rep.boundary_faces) chi_b = euler_characteristic(boundary_complex(t));
  if (chi_b % 2 != 0) throw std::invalid_argument("euler_tqft: odd boundary Euler characteristic");
  return scalar_pow(psi, chi - chi_b / 2);
}

struct EulerWeights2 {
  // per stratum dimension j = 1, 2
  template <class T>
  struct Of {
    T psi1, psi2;
  };
};

// Raw state sum dressed with psi_j^(chi(sigma) - chi(boundary sigma)/2) per
// dual j-stratum. Dual 2-cells around a vertex contribute chi = number of
// corner cycles (one per disk); dual edge strata are arcs and contribute 0.
// No K-normalization here: compensating weights are the caller's business.
template <class T>
T euler_completed_statesum(const FrobeniusAlgebra<T>& A, const T& psi1, const T& psi2,
                           const Triangulation& tri) {
  using F = FieldTraits<T>;
  if (F::is_zero(psi1) || F::is_zero(psi2))
    throw std::invalid_argument("euler_completed_statesum: weights must be invertible");
  auto rep = check_axioms(A);
  if (!(rep.frobenius && rep.symmetric && rep.separable && rep.associative && rep.unital &&
        rep.counital && rep.coassociative && rep.pairing_nondegenerate))
    throw std::invalid_argument("euler_completed_statesum: separable symmetric Frobenius required");

  Triangulation t = tri;
  t.finalize();
  auto vrep = validate(t);
  if (!vrep.ok || vrep.boundary_faces)
    throw std::invalid_argument("euler_completed_statesum: closed surface expected");

  StateSum2D<T> ss(A, false);
  T raw = ss.raw_closed(t);

  // dual 2-strata: count corner cycles per vertex class
  auto q = compute_quotient(t);
  std::int64_t disks = 0;
  {
    int m = t.top_count();
    // corner = (simplex, position); adjacency through the two faces at it
    std::vector<int> parent(m * 3);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int s = 0; s < m; ++s)
      for (int f = 0; f <= 2; ++f) {
        auto g = t.gluings[s][f];
        if (g.is_boundary()) continue;
        // positions of the face in both simplices, in matching order
        std::vector<int> pf, pg;
        for (int i = 0; i <= 2; ++i) {
          if (i != f) pf.push_back(i);
          if (i != g.face) pg.push_back(i);
        }
        for (int k = 0; k < 2; ++k)
          parent[find(s * 3 + pf[k])] = find(g.simplex * 3 + pg[k]);
      }
    std::set<int> roots;
    for (int x = 0; x < m * 3; ++x) roots.insert(find(x));
    disks = static_cast<std::int64_t>(roots.size());
  }
  // dual 1-strata: arcs, chi - chi(boundary)/2 = 0 each
  std::int64_t arcs_weight = 0;
  return raw * scalar_pow(psi2, disks) * scalar_pow(psi1, arcs_weight);
}

// Z_{A_G}(S^1) graded by conjugacy classes of G; entries are
// (class representative, dimension of the class-supported central subspace)
template <class T>
std::vector<std::pair<std::int64_t, Index>> twisted_sectors(const GroupTable& G,
                                                            const TwoCocycle<T>& theta) {
  auto A = twisted_group_algebra<T>(G, theta, FieldTraits<T>::from_int(G.order));
  auto zb = center_basis(A);
  Index c = static_cast<Index>(zb.size());
  auto cls = G.conjugacy_classes();
  std::vector<std::pair<std::int64_t, Index>> out;
  Index total = 0;
  std::set<std::int64_t> seen_classes;
  for (std::int64_t rep = 0; rep < G.order; ++rep) {
    if (!seen_classes.insert(cls[rep]).second) continue;
    // dim(center  ^ class span) = dim(center) + |class| - rank[center | class]
    std::vector<std::int64_t> members;
    for (std::int64_t h = 0; h < G.order; ++h)
      if (cls[h] == cls[rep]) members.push_back(h);
    Tensor<T> stacked({A.dim, c + static_cast<Index>(members.size())});
    for (Index k = 0; k < c; ++k)
      for (Index i = 0; i < A.dim; ++i) stacked.at({i, k}) = zb[k].at({i});
    for (Index k = 0; k < static_cast<Index>(members.size()); ++k)
      stacked.at({members[k], c + k}) = FieldTraits<T>::one();
    Index dim = c + static_cast<Index>(members.size()) - matrix_rank(stacked);
    out.push_back({rep, dim});
    total += dim;
  }
  if (total != c) throw std::logic_error("twisted_sectors: grading does not exhaust the center");
  return out;
}

// glue one out-circle of a onto one in-circle of b (must have equal sizes);
// the composite bordism keeps a's remaining ins/outs then b's
Bordism2 glue_bordisms(const Bordism2& a, int a_out_pos, const Bordism2& b, int b_in_pos);

// disk with its boundary circle outgoing
Bordism2 disk_bordism();
// pair of pants: two incoming circles of three edges, one outgoing circle
Bordism2 pants_bordism();
// deletes a top simplex, leaving its neighbors' faces on the boundary
Triangulation remove_triangle(const Triangulation& t, int s);

}  // namespace orbifold
