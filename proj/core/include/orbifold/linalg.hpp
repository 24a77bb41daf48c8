#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbifold/tensor.hpp"

namespace orbifold {

// Linear maps are matrices of shape [codomain, domain].
template <class T>
struct LinearMap {
  Index domain_dim = 0;
  Index codomain_dim = 0;
  Tensor<T> matrix;  // [codomain_dim, domain_dim]

  LinearMap() = default;
  LinearMap(Index dom, Index cod) : domain_dim(dom), codomain_dim(cod), matrix({cod, dom}) {}
  explicit LinearMap(Tensor<T> m) {
    if (m.rank() != 2) throw std::invalid_argument("LinearMap: rank-2 tensor expected");
    codomain_dim = m.shape()[0];
    domain_dim = m.shape()[1];
    matrix = std::move(m);
  }

  static LinearMap identity(Index n) { return LinearMap(Tensor<T>::identity(n)); }

  T& at(Index r, Index c) { return matrix.at({r, c}); }
  const T& at(Index r, Index c) const { return matrix.at({r, c}); }

  friend LinearMap compose(const LinearMap& f, const LinearMap& g) {
    // f after g
    if (g.codomain_dim != f.domain_dim) throw std::invalid_argument("compose: dimension mismatch");
    return LinearMap(contract(f.matrix, g.matrix, {{1, 0}}));
  }
  friend bool operator==(const LinearMap& x, const LinearMap& y) { return x.matrix == y.matrix; }

  Tensor<T> apply(const Tensor<T>& v) const {
    if (v.rank() != 1 || v.shape()[0] != domain_dim)
      throw std::invalid_argument("apply: vector dimension mismatch");
    return contract(matrix, v, {{1, 0}});
  }
};

namespace linalg_detail {

template <class T>
double pivot_weight(const T& v) {
  return std::abs(FieldTraits<T>::approx(v));
}
inline double pivot_weight(const C64& v) { return std::abs(v); }

}  // namespace linalg_detail

template <class T>
struct RrefResult {
  Tensor<T> reduced;          // row-reduced echelon form
  std::vector<Index> pivots;  // pivot column per pivot row
  Index rank = 0;
};

// Gauss-Jordan. Exact fields take the first nonzero pivot; floats take the
// largest remaining entry and zero out below epsilon.
template <class T>
RrefResult<T> rref(const Tensor<T>& m) {
  using Traits = FieldTraits<T>;
  if (m.rank() != 2) throw std::invalid_argument("rref: matrix expected");
  Index rows = m.shape()[0], cols = m.shape()[1];
  Tensor<T> a = m;
  RrefResult<T> res;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index piv = -1;
    if constexpr (Traits::exact) {
      for (Index i = r; i < rows; ++i)
        if (!Traits::is_zero(a.at({i, c}))) {
          piv = i;
          break;
        }
    } else {
      double best = 0;
      for (Index i = r; i < rows; ++i) {
        double w = linalg_detail::pivot_weight(a.at({i, c}));
        if (w > best) {
          best = w;
          piv = i;
        }
      }
      if (piv >= 0 && Traits::is_zero(a.at({piv, c}))) piv = -1;
    }
    if (piv < 0) continue;
    if (piv != r)
      for (Index j = 0; j < cols; ++j) std::swap(a.at({piv, j}), a.at({r, j}));
    T inv = Traits::inv(a.at({r, c}));
    for (Index j = 0; j < cols; ++j) a.at({r, j}) = a.at({r, j}) * inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == r || Traits::is_zero(a.at({i, c}))) continue;
      T f = a.at({i, c});
      for (Index j = 0; j < cols; ++j) a.at({i, j}) = a.at({i, j}) - f * a.at({r, j});
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  res.reduced = std::move(a);
  return res;
}

template <class T>
Index matrix_rank(const Tensor<T>& m) {
  return rref(m).rank;
}

// Basis of the kernel in the deterministic reduced-echelon convention:
// one vector per free column, unit there, minus the reduced entries at pivots.
template <class T>
std::vector<Tensor<T>> kernel_basis(const Tensor<T>& m) {
  using Traits = FieldTraits<T>;
  auto rr = rref(m);
  Index cols = m.shape()[1];
  std::vector<bool> is_pivot(cols, false);
  for (Index c : rr.pivots) is_pivot[c] = true;
  std::vector<Tensor<T>> basis;
  for (Index c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    Tensor<T> v({cols});
    v.at({c}) = Traits::one();
    for (Index r = 0; r < rr.rank; ++r) v.at({rr.pivots[r]}) = -rr.reduced.at({r, c});
    basis.push_back(std::move(v));
  }
  return basis;
}

// One solution of A x = b, if consistent.
template <class T>
std::optional<Tensor<T>> solve(const Tensor<T>& a, const Tensor<T>& b) {
  using Traits = FieldTraits<T>;
  Index rows = a.shape()[0], cols = a.shape()[1];
  if (b.rank() != 1 || b.shape()[0] != rows) throw std::invalid_argument("solve: shape mismatch");
  Tensor<T> aug({rows, cols + 1});
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) aug.at({i, j}) = a.at({i, j});
    aug.at({i, cols}) = b.at({i});
  }
  auto rr = rref(aug);
  for (Index r = 0; r < rr.rank; ++r)
    if (rr.pivots[r] == cols) return std::nullopt;  // 0 = 1 row
  Tensor<T> x({cols});
  for (Index r = 0; r < rr.rank; ++r) x.at({rr.pivots[r]}) = rr.reduced.at({r, cols});
  (void)Traits::zero();
  return x;
}

// Multi-RHS variant: solves A X = B columnwise; nullopt if any column fails.
template <class T>
std::optional<Tensor<T>> solve_matrix(const Tensor<T>& a, const Tensor<T>& b) {
  Index cols = a.shape()[1], rhs = b.shape()[1];
  Tensor<T> x({cols, rhs});
  for (Index k = 0; k < rhs; ++k) {
    Tensor<T> col({b.shape()[0]});
    for (Index i = 0; i < b.shape()[0]; ++i) col.at({i}) = b.at({i, k});
    auto s = solve(a, col);
    if (!s) return std::nullopt;
    for (Index i = 0; i < cols; ++i) x.at({i, k}) = s->at({i});
  }
  return x;
}

struct SplitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class T>
struct IdempotentSplit {
  LinearMap<T> inj;   // [n, r]
  LinearMap<T> surj;  // [r, n]
  Index rank = 0;
};

// Splits an idempotent e as inj . surj with surj . inj = id_r.
// inj columns are the pivot columns of e; surj solves inj * surj = e.
template <class T>
IdempotentSplit<T> split_idempotent(const LinearMap<T>& e) {
  using Traits = FieldTraits<T>;
  if (e.domain_dim != e.codomain_dim) throw SplitError("split_idempotent: map not square");
  Index n = e.domain_dim;
  if (!(compose(e, e) == e)) throw SplitError("split_idempotent: input not idempotent");
  auto rr = rref(e.matrix);
  if constexpr (!Traits::exact) {
    // flag rank ambiguity: entries that are near the comparison threshold
    double eps = c64_epsilon().load();
    for (Index i = rr.rank; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        double w = linalg_detail::pivot_weight(rr.reduced.at({i, j}));
        if (w > eps / 16 && w < eps * 16)
          throw SplitError("split_idempotent: rank ambiguous near epsilon, residual " +
                           std::to_string(w) + " at discarded row " + std::to_string(i));
      }
  }
  Index r = rr.rank;
  Tensor<T> inj({n, r});
  for (Index k = 0; k < r; ++k)
    for (Index i = 0; i < n; ++i) inj.at({i, k}) = e.matrix.at({i, rr.pivots[k]});
  auto surj = solve_matrix(inj, e.matrix);
  if (!surj) throw SplitError("split_idempotent: image solve failed");
  IdempotentSplit<T> out;
  out.inj = LinearMap<T>(std::move(inj));
  out.surj = LinearMap<T>(std::move(*surj));
  out.rank = r;
  return out;
}

}  // namespace orbifold
