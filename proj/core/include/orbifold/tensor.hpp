#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "orbifold/scalar.hpp"

namespace orbifold {

using Index = std::int64_t;
using AxisPair = std::pair<Index, Index>;

// Dense row-major tensor. Immutable by convention once built: every
// operation returns a new value. Axis labels are optional bookkeeping.
template <class T>
class Tensor {
 public:
  using Traits = FieldTraits<T>;

  Tensor() = default;
  explicit Tensor(std::vector<Index> shape)
      : shape_(std::move(shape)), data_(checked_size(shape_), Traits::zero()) {}
  Tensor(std::vector<Index> shape, std::vector<T> data)
      : shape_(std::move(shape)), data_(std::move(data)) {
    if (static_cast<Index>(data_.size()) != checked_size(shape_))
      throw std::invalid_argument("Tensor: entries.length != product(shape)");
  }

  static Tensor scalar(T v) { return Tensor({}, {std::move(v)}); }
  static Tensor identity(Index n) {
    Tensor t({n, n});
    for (Index i = 0; i < n; ++i) t.at({i, i}) = Traits::one();
    return t;
  }

  const std::vector<Index>& shape() const { return shape_; }
  Index rank() const { return static_cast<Index>(shape_.size()); }
  Index size() const { return static_cast<Index>(data_.size()); }
  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  std::vector<std::string> labels;

  Index offset(std::span<const Index> idx) const {
    Index off = 0;
    for (size_t k = 0; k < shape_.size(); ++k) off = off * shape_[k] + idx[k];
    return off;
  }
  T& at(std::initializer_list<Index> idx) { return data_[offset(std::span(idx.begin(), idx.size()))]; }
  const T& at(std::initializer_list<Index> idx) const {
    return data_[offset(std::span(idx.begin(), idx.size()))];
  }
  T& at(std::span<const Index> idx) { return data_[offset(idx)]; }
  const T& at(std::span<const Index> idx) const { return data_[offset(idx)]; }

  bool same_shape(const Tensor& o) const { return shape_ == o.shape_; }

  friend bool operator==(const Tensor& x, const Tensor& y) {
    if (x.shape_ != y.shape_) return false;
    for (size_t i = 0; i < x.data_.size(); ++i)
      if (!Traits::eq(x.data_[i], y.data_[i])) return false;
    return true;
  }
  friend bool operator!=(const Tensor& x, const Tensor& y) { return !(x == y); }

  Tensor operator+(const Tensor& o) const {
    require(shape_ == o.shape_, "shape mismatch in tensor sum");
    Tensor r = *this;
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = r.data_[i] + o.data_[i];
    return r;
  }
  Tensor operator-(const Tensor& o) const {
    require(shape_ == o.shape_, "shape mismatch in tensor difference");
    Tensor r = *this;
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = r.data_[i] - o.data_[i];
    return r;
  }
  Tensor scaled(const T& c) const {
    Tensor r = *this;
    for (auto& v : r.data_) v = v * c;
    return r;
  }

  Tensor permute(const std::vector<Index>& perm) const {
    require(static_cast<Index>(perm.size()) == rank(), "permute: wrong arity");
    std::vector<Index> nshape(perm.size());
    for (size_t k = 0; k < perm.size(); ++k) nshape[k] = shape_[perm[k]];
    Tensor out(nshape);
    std::vector<Index> idx(perm.size(), 0), src(perm.size(), 0);
    for (Index flat = 0; flat < size(); ++flat) {
      unflatten(flat, nshape, idx);
      for (size_t k = 0; k < perm.size(); ++k) src[perm[k]] = idx[k];
      out.data_[flat] = at(std::span<const Index>(src));
    }
    return out;
  }

  Tensor reshape(std::vector<Index> nshape) const {
    require(checked_size(nshape) == size(), "reshape: size mismatch");
    Tensor r = *this;
    r.shape_ = std::move(nshape);
    r.labels.clear();
    return r;
  }

  // Kronecker product in row-major block convention: result axis k has
  // dimension this.shape[k] * o.shape[k] with this-index major.
  Tensor kron(const Tensor& o) const {
    require(rank() == o.rank(), "kron: rank mismatch");
    std::vector<Index> nshape(shape_.size());
    for (size_t k = 0; k < shape_.size(); ++k) nshape[k] = shape_[k] * o.shape_[k];
    Tensor out(nshape);
    std::vector<Index> idx(nshape.size()), ia(nshape.size()), ib(nshape.size());
    for (Index flat = 0; flat < out.size(); ++flat) {
      unflatten(flat, nshape, idx);
      for (size_t k = 0; k < nshape.size(); ++k) {
        ia[k] = idx[k] / o.shape_[k];
        ib[k] = idx[k] % o.shape_[k];
      }
      out.data_[flat] = at(std::span<const Index>(ia)) * o.at(std::span<const Index>(ib));
    }
    return out;
  }

  static void unflatten(Index flat, const std::vector<Index>& shape, std::vector<Index>& idx) {
    for (size_t k = shape.size(); k-- > 0;) {
      idx[k] = flat % shape[k];
      flat /= shape[k];
    }
  }

  static void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
  }

 private:
  static Index checked_size(const std::vector<Index>& shape) {
    Index n = 1;
    for (Index d : shape) {
      if (d < 0) throw std::invalid_argument("Tensor: negative dimension");
      n *= d;
    }
    return n;
  }

  std::vector<Index> shape_;
  std::vector<T> data_;
};

// contract(a, b, pairs): sums over the paired axes. Free axes of a precede
// free axes of b in the result, each in original order.
template <class T>
Tensor<T> contract(const Tensor<T>& a, const Tensor<T>& b,
                   const std::vector<AxisPair>& pairs) {
  using Traits = FieldTraits<T>;
  std::vector<bool> adone(a.rank(), false), bdone(b.rank(), false);
  for (auto [ax, bx] : pairs) {
    if (ax < 0 || ax >= a.rank() || bx < 0 || bx >= b.rank())
      throw std::invalid_argument("contract: axis out of range");
    if (adone[ax] || bdone[bx]) throw std::invalid_argument("contract: repeated axis");
    if (a.shape()[ax] != b.shape()[bx])
      throw std::invalid_argument("contract: dimension mismatch on axes (" +
                                  std::to_string(ax) + "," + std::to_string(bx) + ")");
    adone[ax] = bdone[bx] = true;
  }
  std::vector<Index> afree, bfree, oshape, sdims;
  for (Index k = 0; k < a.rank(); ++k)
    if (!adone[k]) {
      afree.push_back(k);
      oshape.push_back(a.shape()[k]);
    }
  for (Index k = 0; k < b.rank(); ++k)
    if (!bdone[k]) {
      bfree.push_back(k);
      oshape.push_back(b.shape()[k]);
    }
  for (auto [ax, bx] : pairs) sdims.push_back(a.shape()[ax]);

  Tensor<T> out(oshape);
  std::vector<Index> oidx(oshape.size()), sidx(pairs.size());
  std::vector<Index> ai(a.rank()), bi(b.rank());
  Index ssize = 1;
  for (Index d : sdims) ssize *= d;
  for (Index of = 0; of < out.size(); ++of) {
    Tensor<T>::unflatten(of, oshape, oidx);
    for (size_t k = 0; k < afree.size(); ++k) ai[afree[k]] = oidx[k];
    for (size_t k = 0; k < bfree.size(); ++k) bi[bfree[k]] = oidx[afree.size() + k];
    T acc = Traits::zero();
    for (Index sf = 0; sf < ssize; ++sf) {
      Tensor<T>::unflatten(sf, sdims, sidx);
      for (size_t k = 0; k < pairs.size(); ++k) {
        ai[pairs[k].first] = sidx[k];
        bi[pairs[k].second] = sidx[k];
      }
      acc = acc + a.at(std::span<const Index>(ai)) * b.at(std::span<const Index>(bi));
    }
    out.data()[of] = std::move(acc);
  }
  // label propagation: free labels survive when both inputs carry labels
  if (!a.labels.empty() || !b.labels.empty()) {
    out.labels.reserve(oshape.size());
    for (Index k : afree)
      out.labels.push_back(a.labels.empty() ? std::string() : a.labels[k]);
    for (Index k : bfree)
      out.labels.push_back(b.labels.empty() ? std::string() : b.labels[k]);
  }
  return out;
}

// Partial trace over listed (axis, axis) pairs of one tensor.
template <class T>
Tensor<T> self_trace(const Tensor<T>& a, const std::vector<AxisPair>& pairs) {
  using Traits = FieldTraits<T>;
  std::vector<bool> done(a.rank(), false);
  for (auto [x, y] : pairs) {
    if (x == y) throw std::invalid_argument("self_trace: paired axis with itself");
    if (x < 0 || x >= a.rank() || y < 0 || y >= a.rank())
      throw std::invalid_argument("self_trace: axis out of range");
    if (done[x] || done[y]) throw std::invalid_argument("self_trace: repeated axis");
    if (a.shape()[x] != a.shape()[y]) throw std::invalid_argument("self_trace: dimension mismatch");
    done[x] = done[y] = true;
  }
  std::vector<Index> free, oshape, sdims;
  for (Index k = 0; k < a.rank(); ++k)
    if (!done[k]) {
      free.push_back(k);
      oshape.push_back(a.shape()[k]);
    }
  for (auto [x, y] : pairs) sdims.push_back(a.shape()[x]);
  Tensor<T> out(oshape);
  std::vector<Index> oidx(oshape.size()), sidx(pairs.size()), ai(a.rank());
  Index ssize = 1;
  for (Index d : sdims) ssize *= d;
  for (Index of = 0; of < out.size(); ++of) {
    Tensor<T>::unflatten(of, oshape, oidx);
    for (size_t k = 0; k < free.size(); ++k) ai[free[k]] = oidx[k];
    T acc = Traits::zero();
    for (Index sf = 0; sf < ssize; ++sf) {
      Tensor<T>::unflatten(sf, sdims, sidx);
      for (size_t k = 0; k < pairs.size(); ++k) {
        ai[pairs[k].first] = sidx[k];
        ai[pairs[k].second] = sidx[k];
      }
      acc = acc + a.at(std::span<const Index>(ai));
    }
    out.data()[of] = std::move(acc);
  }
  return out;
}

// Contracts `axis` of t against row index of m: out[..., j, ...] =
// sum_i m[j,i] t[..., i, ...]. Axis position is preserved.
template <class T>
Tensor<T> apply_matrix(const Tensor<T>& t, Index axis, const Tensor<T>& m) {
  Tensor<T>::require(m.rank() == 2, "apply_matrix: matrix expected");
  Tensor<T> c = contract(t, m, {{axis, 1}});
  // contracted axis went to the back; rotate it home
  std::vector<Index> perm(c.rank());
  Index p = 0;
  for (Index k = 0; k < c.rank(); ++k) {
    if (k == axis)
      perm[k] = c.rank() - 1;
    else
      perm[k] = p++;
  }
  return c.permute(perm);
}

// A multiset of tensors with named legs. Legs appearing twice are bonds,
// once are open. Contraction order is greedy by smallest intermediate.
template <class T>
class TensorNetwork {
 public:
  using Leg = std::int64_t;

  Index add(Tensor<T> t, std::vector<Leg> legs) {
    if (static_cast<Index>(legs.size()) != t.rank())
      throw std::invalid_argument("network: leg count != rank");
    nodes_.push_back(std::move(t));
    legs_.push_back(std::move(legs));
    return static_cast<Index>(nodes_.size()) - 1;
  }

  // Contract everything; the result's axes follow `open` order.
  Tensor<T> contract_all(const std::vector<Leg>& open) {
    std::vector<Tensor<T>> ts = nodes_;
    std::vector<std::vector<Leg>> ls = legs_;
    if (ts.empty()) return Tensor<T>::scalar(FieldTraits<T>::one());

    auto trace_self = [&](size_t i) {
      for (;;) {
        std::vector<AxisPair> pr;
        std::vector<Leg> kept;
        auto& lg = ls[i];
        bool found = false;
        for (size_t x = 0; x < lg.size() && !found; ++x)
          for (size_t y = x + 1; y < lg.size() && !found; ++y)
            if (lg[x] == lg[y]) {
              pr.push_back({static_cast<Index>(x), static_cast<Index>(y)});
              for (size_t k = 0; k < lg.size(); ++k)
                if (k != x && k != y) kept.push_back(lg[k]);
              found = true;
            }
        if (!found) break;
        ts[i] = self_trace(ts[i], pr);
        ls[i] = kept;
      }
    };
    for (size_t i = 0; i < ts.size(); ++i) trace_self(i);

    while (ts.size() > 1) {
      // pick the connected pair with the smallest contraction output
      size_t bi = 0, bj = 1;
      Index best = -1;
      bool connected = false;
      for (size_t i = 0; i < ts.size(); ++i)
        for (size_t j = i + 1; j < ts.size(); ++j) {
          Index shared = 0;
          for (Leg a : ls[i])
            for (Leg b : ls[j])
              if (a == b) ++shared;
          Index out = 1;
          for (size_t k = 0; k < ls[i].size(); ++k) out *= ts[i].shape()[k];
          for (size_t k = 0; k < ls[j].size(); ++k) out *= ts[j].shape()[k];
          if (shared > 0) {
            Index sz = 1;
            for (size_t x = 0; x < ls[i].size(); ++x)
              for (size_t y = 0; y < ls[j].size(); ++y)
                if (ls[i][x] == ls[j][y]) sz *= ts[i].shape()[x];
            out /= sz * sz;
            if (!connected || out < best) {
              connected = true;
              best = out;
              bi = i;
              bj = j;
            }
          } else if (!connected && (best < 0 || out < best)) {
            best = out;
            bi = i;
            bj = j;
          }
        }
      std::vector<AxisPair> pr;
      std::vector<Leg> nl;
      for (size_t x = 0; x < ls[bi].size(); ++x) {
        bool hit = false;
        for (size_t y = 0; y < ls[bj].size(); ++y)
          if (ls[bi][x] == ls[bj][y]) {
            pr.push_back({static_cast<Index>(x), static_cast<Index>(y)});
            hit = true;
            break;
          }
        if (!hit) nl.push_back(ls[bi][x]);
      }
      std::vector<bool> bdone(ls[bj].size(), false);
      for (auto [x, y] : pr) bdone[y] = true;
      for (size_t y = 0; y < ls[bj].size(); ++y)
        if (!bdone[y]) nl.push_back(ls[bj][y]);
      Tensor<T> merged = contract(ts[bi], ts[bj], pr);
      ts.erase(ts.begin() + bj);
      ls.erase(ls.begin() + bj);
      ts[bi] = std::move(merged);
      ls[bi] = std::move(nl);
      trace_self(bi);
    }

    // order the surviving open legs as requested
    auto& lg = ls[0];
    if (lg.size() != open.size())
      throw std::invalid_argument("network: open legs do not match request");
    std::vector<Index> perm(open.size());
    for (size_t k = 0; k < open.size(); ++k) {
      auto it = std::find(lg.begin(), lg.end(), open[k]);
      if (it == lg.end()) throw std::invalid_argument("network: missing open leg");
      perm[k] = static_cast<Index>(it - lg.begin());
    }
    return ts[0].permute(perm);
  }

 private:
  std::vector<Tensor<T>> nodes_;
  std::vector<std::vector<Leg>> legs_;
};

}  // namespace orbifold
