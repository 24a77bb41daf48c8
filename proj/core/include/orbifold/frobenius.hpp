#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbifold/group.hpp"
#include "orbifold/linalg.hpp"
#include "orbifold/tensor.hpp"

namespace orbifold {

// Structure constants in a fixed ordered basis {a_0, ..., a_{dim-1}}:
//   mu[i,j,k]    : coefficient of a_k in a_i * a_j
//   unit[i]      : coordinates of 1
//   counit[i]    : eps(a_i)
//   comul[i,j,k] : coefficient of a_j (x) a_k in Delta(a_i)
template <class T>
struct FrobeniusAlgebra {
  Index dim = 0;
  Tensor<T> mu;
  Tensor<T> unit;
  Tensor<T> counit;
  Tensor<T> comul;

  Tensor<T> multiply(const Tensor<T>& x, const Tensor<T>& y) const {
    return contract(contract(x, mu, {{0, 0}}), y, {{0, 0}});
  }
  Tensor<T> gram() const { return contract(mu, counit, {{2, 0}}); }
  Tensor<T> gram_inv() const {
    auto gi = solve_matrix(gram(), Tensor<T>::identity(dim));
    if (!gi) throw std::domain_error("frobenius: degenerate pairing");
    return *gi;
  }
  // trace of left multiplication by x in the regular representation
  T regular_trace(const Tensor<T>& x) const {
    using F = FieldTraits<T>;
    T acc = F::zero();
    for (Index i = 0; i < dim; ++i)
      for (Index k = 0; k < dim; ++k) acc = acc + x.at({i}) * mu.at({i, k, k});
    return acc;
  }
  T counit_of(const Tensor<T>& x) const {
    return contract(x, counit, {{0, 0}}).data()[0];
  }
};

struct AxiomWitness {
  std::string flag;
  std::vector<Index> index;
  std::string lhs, rhs;
};

struct AxiomReport {
  bool associative = false;
  bool unital = false;
  bool coassociative = false;
  bool counital = false;
  bool frobenius = false;
  bool symmetric = false;
  bool delta_separable = false;
  bool pairing_nondegenerate = false;
  bool separable = false;
  std::vector<AxiomWitness> witnesses;

  bool all_delta_frobenius() const {
    return associative && unital && coassociative && counital && frobenius && symmetric &&
           delta_separable && pairing_nondegenerate;
  }
};

namespace frob_detail {

template <class T>
void compare(const std::string& flag, const Tensor<T>& lhs, const Tensor<T>& rhs, bool& out,
             std::vector<AxiomWitness>& wit) {
  using F = FieldTraits<T>;
  if (lhs.shape() != rhs.shape()) throw std::invalid_argument("check_axioms: shape mismatch");
  for (Index f = 0; f < lhs.size(); ++f) {
    if (!F::eq(lhs.data()[f], rhs.data()[f])) {
      std::vector<Index> idx(lhs.rank());
      Tensor<T>::unflatten(f, lhs.shape(), idx);
      wit.push_back({flag, idx, F::str(lhs.data()[f]), F::str(rhs.data()[f])});
      out = false;
      return;
    }
  }
  out = true;
}

}  // namespace frob_detail

// Searches for a separability idempotent s in A (x) A with mu(s) = 1 and
// (a (x) 1) s = s (1 (x) a); solvability is the `separable` flag.
template <class T>
bool has_separability_element(const FrobeniusAlgebra<T>& A) {
  Index d = A.dim;
  Index vars = d * d;
  Index eqs = d + d * d * d;
  Tensor<T> M({eqs, vars});
  Tensor<T> rhs({eqs});
  for (Index k = 0; k < d; ++k) {
    for (Index p = 0; p < d; ++p)
      for (Index q = 0; q < d; ++q) M.at({k, p * d + q}) = A.mu.at({p, q, k});
    rhs.at({k}) = A.unit.at({k});
  }
  for (Index i = 0; i < d; ++i)
    for (Index a = 0; a < d; ++a)
      for (Index b = 0; b < d; ++b) {
        Index row = d + (i * d + a) * d + b;
        for (Index p = 0; p < d; ++p)
          for (Index q = 0; q < d; ++q) {
            T v = FieldTraits<T>::zero();
            if (q == b) v = v + A.mu.at({i, p, a});
            if (p == a) v = v - A.mu.at({q, i, b});
            M.at({row, p * d + q}) = v;
          }
      }
  return solve(M, rhs).has_value();
}

template <class T>
AxiomReport check_axioms(const FrobeniusAlgebra<T>& A) {
  using F = FieldTraits<T>;
  Index d = A.dim;
  if (A.mu.shape() != std::vector<Index>{d, d, d} || A.unit.shape() != std::vector<Index>{d} ||
      A.counit.shape() != std::vector<Index>{d} || A.comul.shape() != std::vector<Index>{d, d, d})
    throw std::invalid_argument("check_axioms: tensor shapes inconsistent with dim");

  AxiomReport rep;
  auto id = Tensor<T>::identity(d);

  auto assoc_l = contract(A.mu, A.mu, {{2, 0}});
  auto assoc_r = contract(A.mu, A.mu, {{2, 1}}).permute({2, 0, 1, 3});
  frob_detail::compare("associative", assoc_l, assoc_r, rep.associative, rep.witnesses);

  auto u1 = contract(A.unit, A.mu, {{0, 0}});
  auto u2 = contract(A.unit, A.mu, {{0, 1}});
  bool ua = false, ub = false;
  frob_detail::compare("unital", u1, id, ua, rep.witnesses);
  frob_detail::compare("unital", u2, id, ub, rep.witnesses);
  rep.unital = ua && ub;

  auto co_l = contract(A.comul, A.comul, {{1, 0}}).permute({0, 2, 3, 1});
  auto co_r = contract(A.comul, A.comul, {{2, 0}});
  frob_detail::compare("coassociative", co_l, co_r, rep.coassociative, rep.witnesses);

  auto c1 = contract(A.comul, A.counit, {{1, 0}});
  auto c2 = contract(A.comul, A.counit, {{2, 0}});
  bool ca = false, cb = false;
  frob_detail::compare("counital", c1, id, ca, rep.witnesses);
  frob_detail::compare("counital", c2, id, cb, rep.witnesses);
  rep.counital = ca && cb;

  auto f0 = contract(A.mu, A.comul, {{2, 0}});
  auto f1 = contract(A.comul, A.mu, {{2, 0}}).permute({0, 2, 1, 3});
  auto f2 = contract(A.mu, A.comul, {{1, 1}}).permute({0, 2, 1, 3});
  bool fa = false, fb = false;
  frob_detail::compare("frobenius", f1, f0, fa, rep.witnesses);
  frob_detail::compare("frobenius", f2, f0, fb, rep.witnesses);
  rep.frobenius = fa && fb;

  auto g = A.gram();
  frob_detail::compare("symmetric", g, g.permute({1, 0}), rep.symmetric, rep.witnesses);

  auto mu_comul = contract(A.comul, A.mu, {{1, 0}, {2, 1}});
  frob_detail::compare("delta_separable", mu_comul, id, rep.delta_separable, rep.witnesses);

  rep.pairing_nondegenerate = matrix_rank(g) == d;
  if (!rep.pairing_nondegenerate)
    rep.witnesses.push_back({"pairing_nondegenerate", {}, std::to_string(matrix_rank(g)), std::to_string(d)});

  rep.separable = rep.delta_separable || has_separability_element(A);
  if (!rep.separable) rep.witnesses.push_back({"separable", {}, "no separability element", ""});
  return rep;
}

// The copairing-induced comultiplication: Delta(x) = (x (x) 1) Delta(1),
// Delta(1) = sum g^{pq} a_p (x) a_q. Unique once eps . mu is nondegenerate.
template <class T>
Tensor<T> comul_from_form(const Tensor<T>& mu, const Tensor<T>& unit, const Tensor<T>& counit) {
  Index d = mu.shape()[0];
  FrobeniusAlgebra<T> tmp{d, mu, unit, counit, Tensor<T>({d, d, d})};
  auto ginv = tmp.gram_inv();
  // comul[i,m,q] = sum_p mu[i,p,m] ginv[p,q]
  return contract(mu, ginv, {{1, 0}});
}

template <class T>
FrobeniusAlgebra<T> with_derived_comul(Index dim, Tensor<T> mu, Tensor<T> unit, Tensor<T> counit) {
  auto comul = comul_from_form(mu, unit, counit);
  return FrobeniusAlgebra<T>{dim, std::move(mu), std::move(unit), std::move(counit), std::move(comul)};
}

// ---- constructors ----

template <class T>
FrobeniusAlgebra<T> trivial_algebra() {
  using F = FieldTraits<T>;
  Tensor<T> mu({1, 1, 1}), unit({1}), counit({1}), comul({1, 1, 1});
  mu.at({0, 0, 0}) = F::one();
  unit.at({0}) = F::one();
  counit.at({0}) = F::one();
  comul.at({0, 0, 0}) = F::one();
  return {1, mu, unit, counit, comul};
}

template <class T>
struct TwoCocycle {
  Tensor<T> theta;  // [order, order], all entries nonzero

  static TwoCocycle trivial(Index order) {
    Tensor<T> t({order, order});
    for (auto& v : t.data()) v = FieldTraits<T>::one();
    return {t};
  }
  bool valid(const GroupTable& G) const {
    using F = FieldTraits<T>;
    for (Index g = 0; g < G.order; ++g)
      for (Index h = 0; h < G.order; ++h) {
        if (F::is_zero(theta.at({g, h}))) return false;
        for (Index k = 0; k < G.order; ++k) {
          T lhs = theta.at({g, h}) * theta.at({G.mul(g, h), k});
          T rhs = theta.at({h, k}) * theta.at({g, G.mul(h, k)});
          if (!F::eq(lhs, rhs)) return false;
        }
      }
    return true;
  }
};

template <class T>
FrobeniusAlgebra<T> twisted_group_algebra(const GroupTable& G, const TwoCocycle<T>& theta,
                                          const T& normalization) {
  using F = FieldTraits<T>;
  if (F::is_zero(normalization)) throw std::invalid_argument("twisted_group_algebra: zero normalization");
  if (!theta.valid(G)) throw std::invalid_argument("twisted_group_algebra: theta fails the cocycle identity");
  Index n = G.order;
  Tensor<T> mu({n, n, n}), unit({n}), counit({n});
  for (Index g = 0; g < n; ++g)
    for (Index h = 0; h < n; ++h) mu.at({g, h, G.mul(g, h)}) = theta.theta.at({g, h});
  // the unit is u_e / theta(e,e); theta(e,g) is forced constant by the cocycle identity
  unit.at({G.identity}) = F::inv(theta.theta.at({G.identity, G.identity}));
  counit.at({G.identity}) = normalization;
  return with_derived_comul<T>(n, std::move(mu), std::move(unit), std::move(counit));
}

template <class T>
FrobeniusAlgebra<T> group_algebra(const GroupTable& G, const T& normalization) {
  return twisted_group_algebra<T>(G, TwoCocycle<T>::trivial(G.order), normalization);
}

// End(k^n) with basis E_{pq} at index p*n+q, counit n*trace and the
// star-scaled comultiplication; the n=2 orbifold datum from a defect
// with invertible quantum dimension.
template <class T>
FrobeniusAlgebra<T> endomorphism_orbifold_datum(Index n) {
  using F = FieldTraits<T>;
  if (n < 1) throw std::invalid_argument("endomorphism_orbifold_datum: n >= 1 required");
  T nn = F::from_int(n);
  if (F::is_zero(nn)) throw std::domain_error("endomorphism_orbifold_datum: n not invertible in field");
  Index d = n * n;
  Tensor<T> mu({d, d, d}), unit({d}), counit({d});
  for (Index p = 0; p < n; ++p)
    for (Index q = 0; q < n; ++q)
      for (Index s = 0; s < n; ++s) mu.at({p * n + q, q * n + s, p * n + s}) = F::one();
  for (Index p = 0; p < n; ++p) {
    unit.at({p * n + p}) = F::one();
    counit.at({p * n + p}) = nn;
  }
  return with_derived_comul<T>(d, std::move(mu), std::move(unit), std::move(counit));
}

template <class T>
FrobeniusAlgebra<T> direct_sum(const FrobeniusAlgebra<T>& A, const FrobeniusAlgebra<T>& B) {
  Index d = A.dim + B.dim;
  Tensor<T> mu({d, d, d}), unit({d}), counit({d}), comul({d, d, d});
  for (Index i = 0; i < A.dim; ++i) {
    unit.at({i}) = A.unit.at({i});
    counit.at({i}) = A.counit.at({i});
    for (Index j = 0; j < A.dim; ++j)
      for (Index k = 0; k < A.dim; ++k) {
        mu.at({i, j, k}) = A.mu.at({i, j, k});
        comul.at({i, j, k}) = A.comul.at({i, j, k});
      }
  }
  for (Index i = 0; i < B.dim; ++i) {
    unit.at({A.dim + i}) = B.unit.at({i});
    counit.at({A.dim + i}) = B.counit.at({i});
    for (Index j = 0; j < B.dim; ++j)
      for (Index k = 0; k < B.dim; ++k) {
        mu.at({A.dim + i, A.dim + j, A.dim + k}) = B.mu.at({i, j, k});
        comul.at({A.dim + i, A.dim + j, A.dim + k}) = B.comul.at({i, j, k});
      }
  }
  return {d, mu, unit, counit, comul};
}

template <class T>
FrobeniusAlgebra<T> tensor_product(const FrobeniusAlgebra<T>& A, const FrobeniusAlgebra<T>& B) {
  return FrobeniusAlgebra<T>{A.dim * B.dim, A.mu.kron(B.mu), A.unit.kron(B.unit),
                             A.counit.kron(B.counit), A.comul.kron(B.comul)};
}

// conjugates all structure constants by an invertible basis change:
// new basis a'_i = sum_j P[i,j] a_j
template <class T>
FrobeniusAlgebra<T> change_basis(const FrobeniusAlgebra<T>& A, const Tensor<T>& P) {
  auto Qopt = solve_matrix(P, Tensor<T>::identity(A.dim));
  if (!Qopt) throw std::invalid_argument("change_basis: singular matrix");
  const Tensor<T>& Q = *Qopt;  // a_r = sum_k Q[r,k] a'_k
  auto t1 = contract(A.mu, Q, {{2, 0}});                     // (p,q,k)
  auto t2 = contract(P, t1, {{1, 0}});                       // (i,q,k)
  auto mu2 = contract(P, t2, {{1, 1}}).permute({1, 0, 2});   // (i,j,k)
  auto unit2 = contract(A.unit, Q, {{0, 0}});
  auto counit2 = contract(P, A.counit, {{1, 0}});
  auto c1 = contract(P, A.comul, {{1, 0}});  // (i,p,q)
  auto c2 = contract(c1, Q, {{1, 0}});       // (i,q,k)
  auto comul2 = contract(c2, Q, {{1, 0}});   // (i,k,l)
  return {A.dim, mu2, unit2, counit2, comul2};
}

// ---- center ----

template <class T>
struct CenterData {
  std::vector<Tensor<T>> basis;  // vectors in A-coordinates
  FrobeniusAlgebra<T> algebra;   // restricted structure
};

template <class T>
std::vector<Tensor<T>> center_basis(const FrobeniusAlgebra<T>& A) {
  Index d = A.dim;
  Tensor<T> M({d * d, d});
  for (Index j = 0; j < d; ++j)
    for (Index k = 0; k < d; ++k)
      for (Index i = 0; i < d; ++i)
        M.at({j * d + k, i}) = A.mu.at({i, j, k}) - A.mu.at({j, i, k});
  return kernel_basis(M);
}

template <class T>
CenterData<T> center(const FrobeniusAlgebra<T>& A) {
  using F = FieldTraits<T>;
  auto basis = center_basis(A);
  Index c = static_cast<Index>(basis.size());
  Index d = A.dim;
  Tensor<T> B({d, c});
  for (Index k = 0; k < c; ++k)
    for (Index i = 0; i < d; ++i) B.at({i, k}) = basis[k].at({i});

  auto coords = [&](const Tensor<T>& v) {
    auto x = solve(B, v);
    if (!x) throw std::domain_error("center: product left the center span");
    return *x;
  };

  Tensor<T> mu({c, c, c}), unit({c}), counit({c});
  for (Index p = 0; p < c; ++p)
    for (Index q = 0; q < c; ++q) {
      auto w = coords(A.multiply(basis[p], basis[q]));
      for (Index r = 0; r < c; ++r) mu.at({p, q, r}) = w.at({r});
    }
  unit = coords(A.unit);
  for (Index p = 0; p < c; ++p) counit.at({p}) = A.counit_of(basis[p]);
  (void)F::zero();
  return {std::move(basis), with_derived_comul<T>(c, std::move(mu), std::move(unit), std::move(counit))};
}

// ---- block decomposition over the session field ----

namespace frob_detail {

// roots of a monic polynomial with coefficients c[0] + c[1] x + ... + x^n,
// searched inside the field; nullopt when the polynomial does not split
template <class T>
std::optional<std::vector<T>> poly_roots(std::vector<T> coeffs);

inline std::optional<std::vector<Rat>> rational_roots(std::vector<Rat> c) {
  std::vector<Rat> roots;
  while (c.size() > 1) {
    if (c.size() == 2) {
      roots.push_back(-c[0]);
      break;
    }
    // clear denominators, scan divisors of the ends
    Int lead_den(1);
    for (auto& v : c) lead_den = boost::multiprecision::lcm(lead_den, Int(boost::multiprecision::denominator(v)));
    std::vector<Int> ic;
    for (auto& v : c) ic.push_back(Int(boost::multiprecision::numerator(v) * (lead_den / boost::multiprecision::denominator(v))));
    Int a0 = ic.front(), an = ic.back();
    if (a0 == 0) {
      roots.push_back(Rat(0));
      c.erase(c.begin());
      continue;
    }
    auto divisors = [](Int n) {
      if (n < 0) n = -n;
      std::vector<Int> ds;
      for (Int i = 1; i * i <= n; ++i)
        if (n % i == 0) {
          ds.push_back(i);
          ds.push_back(n / i);
        }
      return ds;
    };
    std::optional<Rat> found;
    auto dn = divisors(a0), dd = divisors(an);
    for (auto& p : dn) {
      for (auto& q : dd) {
        for (int sign : {1, -1}) {
          Rat cand(sign * p, q);
          Rat val(0);
          for (size_t k = c.size(); k-- > 0;) val = val * cand + c[k];
          if (val == 0) {
            found = cand;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) return std::nullopt;
    roots.push_back(*found);
    // deflate: c / (x - root)
    std::vector<Rat> q(c.size() - 1);
    Rat carry = c.back();
    for (size_t k = c.size() - 1; k-- > 0;) {
      q[k] = carry;
      carry = c[k] + carry * *found;
    }
    c = std::move(q);
  }
  return roots;
}

template <>
inline std::optional<std::vector<Rat>> poly_roots<Rat>(std::vector<Rat> coeffs) {
  return rational_roots(std::move(coeffs));
}

inline std::optional<Quad> quad_sqrt(const Quad& q) {
  if (q.b == 0) {
    auto r = FieldTraits<Rat>::sqrt_exact(q.a);
    if (r) return Quad(*r);
    if (q.d != 0 && q.a > 0) {
      // maybe a = d * square
      auto r2 = FieldTraits<Rat>::sqrt_exact(q.a / Rat(q.d));
      if (r2) return Quad(Rat(0), *r2, q.d);
    }
    return std::nullopt;
  }
  // (x + y sqrt(d))^2 = a + b sqrt(d): x^2 + d y^2 = a, 2xy = b
  Rat disc = q.a * q.a - Rat(q.d) * q.b * q.b;
  auto sd = FieldTraits<Rat>::sqrt_exact(disc);
  if (!sd) return std::nullopt;
  for (int sign : {1, -1}) {
    Rat x2 = (q.a + Rat(sign) * *sd) / 2;
    auto x = FieldTraits<Rat>::sqrt_exact(x2);
    if (x && *x != 0) return Quad(*x, q.b / (2 * *x), q.d);
  }
  return std::nullopt;
}

template <>
inline std::optional<std::vector<Quad>> poly_roots<Quad>(std::vector<Quad> coeffs) {
  std::vector<Quad> roots;
  std::vector<Quad> c = std::move(coeffs);
  auto eval = [&](const std::vector<Quad>& p, const Quad& x) {
    Quad v(0);
    for (size_t k = p.size(); k-- > 0;) v = v * x + p[k];
    return v;
  };
  while (c.size() > 1) {
    if (c.size() == 2) {
      roots.push_back(-c[0]);
      break;
    }
    if (c.size() == 3) {  // quadratic formula inside the field
      Quad b = c[1], a0 = c[0];
      Quad disc = b * b - Quad(4) * a0;
      auto s = quad_sqrt(disc);
      if (!s) return std::nullopt;
      Quad half = Quad(Rat(1, 2));
      roots.push_back((-b + *s) * half);
      roots.push_back((-b - *s) * half);
      return roots;
    }
    // try rational candidates on the rational part
    bool all_rat = true;
    for (auto& v : c)
      if (v.b != 0) all_rat = false;
    std::optional<Quad> found;
    if (all_rat) {
      std::vector<Rat> rc;
      for (auto& v : c) rc.push_back(v.a);
      // one root at a time via the rational scanner
      auto rr = rational_roots(rc);
      if (rr && !rr->empty()) found = Quad((*rr)[0]);
    }
    if (!found) return std::nullopt;
    if (!FieldTraits<Quad>::is_zero(eval(c, *found))) return std::nullopt;
    roots.push_back(*found);
    std::vector<Quad> q(c.size() - 1);
    Quad carry = c.back();
    for (size_t k = c.size() - 1; k-- > 0;) {
      q[k] = carry;
      carry = c[k] + carry * *found;
    }
    c = std::move(q);
  }
  return roots;
}

template <>
inline std::optional<std::vector<C64>> poly_roots<C64>(std::vector<C64> coeffs) {
  // Durand-Kerner on the monic polynomial
  size_t n = coeffs.size() - 1;
  if (n == 0) return std::vector<C64>{};
  std::vector<C64> z(n);
  for (size_t i = 0; i < n; ++i) z[i] = std::pow(C64(0.4, 0.9), static_cast<double>(i + 1));
  auto eval = [&](C64 x) {
    C64 v = 1.0;
    C64 acc = 0.0;
    for (size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
    (void)v;
    return acc;
  };
  for (int it = 0; it < 500; ++it) {
    double shift = 0;
    for (size_t i = 0; i < n; ++i) {
      C64 den = 1.0;
      for (size_t j = 0; j < n; ++j)
        if (j != i) den *= z[i] - z[j];
      C64 delta = eval(z[i]) / den;
      z[i] -= delta;
      shift = std::max(shift, std::abs(delta));
    }
    if (shift < 1e-13) break;
  }
  return z;
}

}  // namespace frob_detail

template <class T>
struct BlockData {
  std::vector<Tensor<T>> idempotents;  // primitive central idempotents in A-coords
  std::vector<Index> dims;             // matrix block sizes d_i
  T dim_sum;                           // K = sum_i d_i
};

// Primitive central idempotents, split over the session field by factoring
// minimal polynomials of central elements. Errors when the center does not
// split (documented limitation of the intrinsic normalization).
template <class T>
BlockData<T> block_data(const FrobeniusAlgebra<T>& A) {
  using F = FieldTraits<T>;
  auto zb = center_basis(A);
  std::vector<Tensor<T>> parts{A.unit};
  for (auto& z : zb) {
    std::vector<Tensor<T>> next;
    for (auto& e : parts) {
      // minimal polynomial of multiplication by z on the ideal e*Z:
      // iterate powers p_k = e * z^k until linear dependence
      std::vector<Tensor<T>> pows;
      pows.push_back(e);
      for (;;) {
        pows.push_back(A.multiply(pows.back(), z));
        Index m = static_cast<Index>(pows.size());
        Tensor<T> M({A.dim, m - 1});
        Tensor<T> rhs({A.dim});
        for (Index r = 0; r < A.dim; ++r) {
          for (Index k = 0; k + 1 < m; ++k) M.at({r, k}) = pows[k].at({r});
          rhs.at({r}) = pows[m - 1].at({r});
        }
        auto sol = solve(M, rhs);
        if (sol) {
          // monic minimal polynomial: x^{m-1} - sum sol_k x^k
          std::vector<T> coeffs(m);
          for (Index k = 0; k + 1 < m; ++k) coeffs[k] = -sol->at({k});
          coeffs[m - 1] = F::one();
          auto roots = frob_detail::poly_roots<T>(coeffs);
          if (!roots)
            throw std::domain_error("block_data: center does not split over the session field");
          if (roots->size() == 1) {
            next.push_back(e);
          } else {
            for (auto& lam : *roots) {
              // e_lam = e * prod_{mu != lam} (z - mu) / (lam - mu)
              Tensor<T> cur = e;
              for (auto& mu2 : *roots) {
                if (F::eq(mu2, lam)) continue;
                T denom = lam - mu2;
                if (F::is_zero(denom))
                  throw std::domain_error("block_data: repeated root, center not semisimple");
                auto zmu = A.multiply(cur, z) - cur.scaled(mu2);
                cur = zmu.scaled(F::inv(denom));
              }
              bool zero = true;
              for (auto& v : cur.data())
                if (!F::is_zero(v)) zero = false;
              if (!zero) next.push_back(cur);
            }
          }
          break;
        }
      }
    }
    parts = std::move(next);
  }
  BlockData<T> out;
  out.dim_sum = F::zero();
  for (auto& e : parts) {
    T tr = A.regular_trace(e);
    auto rt = F::sqrt_exact(tr);
    if (!rt)
      throw std::domain_error("block_data: block regular trace " + F::str(tr) + " is not a square");
    out.idempotents.push_back(e);
    double approx = F::approx(*rt);
    out.dims.push_back(static_cast<Index>(approx > 0 ? approx + 0.5 : approx - 0.5));
    out.dim_sum = out.dim_sum + *rt;
  }
  return out;
}

}  // namespace orbifold
