#pragma once

#include <unordered_map>

#include "orbifold/tensor.hpp"

namespace orbifold {

// Integral carrier of a quadratic extension: a + b sqrt(d) with Int parts.
struct QuadInt {
  Int a = 0;
  Int b = 0;
  long long d = 0;
  friend QuadInt operator+(const QuadInt& x, const QuadInt& y) {
    return {x.a + y.a, x.b + y.b, x.d ? x.d : y.d};
  }
  friend QuadInt operator*(const QuadInt& x, const QuadInt& y) {
    long long dd = x.d ? x.d : y.d;
    return {x.a * y.a + dd * (x.b * y.b), x.a * y.b + x.b * y.a, dd};
  }
  friend bool operator==(const QuadInt& x, const QuadInt& y) { return x.a == y.a && x.b == y.b; }
};

template <>
struct FieldTraits<Int> {
  static constexpr bool exact = true;
  static Int zero() { return 0; }
  static Int one() { return 1; }
  static Int from_int(long long n) { return n; }
  static bool eq(const Int& x, const Int& y) { return x == y; }
  static bool is_zero(const Int& x) { return x == 0; }
  static std::string str(const Int& x) { return x.str(); }
  static double approx(const Int& x) { return static_cast<double>(x); }
};

template <>
struct FieldTraits<QuadInt> {
  static constexpr bool exact = true;
  static QuadInt zero() { return {}; }
  static QuadInt one() { return {1, 0, 0}; }
  static QuadInt from_int(long long n) { return {n, 0, 0}; }
  static bool eq(const QuadInt& x, const QuadInt& y) { return x == y; }
  static bool is_zero(const QuadInt& x) { return x.a == 0 && x.b == 0; }
  static std::string str(const QuadInt& x) { return x.a.str() + "+" + x.b.str() + "*sqrt(" + std::to_string(x.d) + ")"; }
  static double approx(const QuadInt& x) {
    return static_cast<double>(x.a) + static_cast<double>(x.b) * std::sqrt(static_cast<double>(x.d));
  }
};

// Exact fields contract over an integral carrier with one scalar prefactor
// per tensor; floats pass through unchanged.
template <class T>
struct CarrierOf {
  using type = T;
};
template <>
struct CarrierOf<Rat> {
  using type = Int;
};
template <>
struct CarrierOf<Quad> {
  using type = QuadInt;
};

inline Int lcm_int(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

inline std::pair<std::vector<Int>, Rat> scale_out(const std::vector<Rat>& vals) {
  Int L = 1;
  for (auto& v : vals) L = lcm_int(L, Int(boost::multiprecision::denominator(v)));
  std::vector<Int> out;
  out.reserve(vals.size());
  for (auto& v : vals)
    out.push_back(Int(boost::multiprecision::numerator(v)) * (L / Int(boost::multiprecision::denominator(v))));
  return {std::move(out), Rat(1, L)};
}

template <class T>
struct CarrierConvert;

template <>
struct CarrierConvert<Rat> {
  static std::pair<std::vector<Int>, Rat> pack(const std::vector<Rat>& vals) { return scale_out(vals); }
  static Rat unpack(const Int& v) { return Rat(v); }
};
template <>
struct CarrierConvert<Quad> {
  static std::pair<std::vector<QuadInt>, Quad> pack(const std::vector<Quad>& vals) {
    std::vector<Rat> flat;
    flat.reserve(vals.size() * 2);
    long long d = 0;
    for (auto& v : vals) {
      flat.push_back(v.a);
      flat.push_back(v.b);
      if (v.d) d = v.d;
    }
    auto [ints, scale] = scale_out(flat);
    std::vector<QuadInt> out(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) out[i] = {ints[2 * i], ints[2 * i + 1], d};
    return {std::move(out), Quad(scale)};
  }
  static Quad unpack(const QuadInt& v) { return Quad(Rat(v.a), Rat(v.b), v.d); }
};
template <>
struct CarrierConvert<C64> {
  static std::pair<std::vector<C64>, C64> pack(const std::vector<C64>& vals) { return {vals, {1.0, 0.0}}; }
  static C64 unpack(const C64& v) { return v; }
};

// Internal sparse backend for the state sum evaluators. Structure-constant
// tensors of group-like algebras are permutation sparse, and the dense
// contraction cost on walked triangulations breaks the acceptance runtime
// budget. Public interfaces stay on the dense Tensor type.
template <class T>
struct SparseTensor {
  std::vector<Index> shape;
  std::vector<std::pair<Index, T>> entries;  // (row-major flat index, value), sorted

  static SparseTensor from_dense(const Tensor<T>& t) {
    SparseTensor s;
    s.shape = t.shape();
    for (Index i = 0; i < t.size(); ++i)
      if (!FieldTraits<T>::is_zero(t.data()[i])) s.entries.push_back({i, t.data()[i]});
    return s;
  }
  Tensor<T> to_dense() const {
    Tensor<T> t(shape);
    for (auto& [i, v] : entries) t.data()[i] = v;
    return t;
  }
  Index size() const {
    Index n = 1;
    for (Index d : shape) n *= d;
    return n;
  }
};

namespace sparse_detail {

inline std::vector<Index> strides_of(const std::vector<Index>& shape) {
  std::vector<Index> st(shape.size(), 1);
  for (size_t k = shape.size(); k-- > 1;) st[k - 1] = st[k] * shape[k];
  return st;
}

}  // namespace sparse_detail

template <class T>
SparseTensor<T> sparse_contract(const SparseTensor<T>& a, const SparseTensor<T>& b,
                                const std::vector<AxisPair>& pairs) {
  using F = FieldTraits<T>;
  auto sta = sparse_detail::strides_of(a.shape);
  auto stb = sparse_detail::strides_of(b.shape);
  std::vector<bool> adone(a.shape.size(), false), bdone(b.shape.size(), false);
  for (auto [x, y] : pairs) {
    if (a.shape[x] != b.shape[y]) throw std::invalid_argument("sparse_contract: dim mismatch");
    adone[x] = bdone[y] = true;
  }
  std::vector<Index> afree, bfree;
  std::vector<Index> oshape;
  for (size_t k = 0; k < a.shape.size(); ++k)
    if (!adone[k]) {
      afree.push_back(k);
      oshape.push_back(a.shape[k]);
    }
  for (size_t k = 0; k < b.shape.size(); ++k)
    if (!bdone[k]) {
      bfree.push_back(k);
      oshape.push_back(b.shape[k]);
    }
  Index bfree_size = 1;
  for (Index k : bfree) bfree_size *= b.shape[k];

  // decompose an entry's flat index into (free part flat, summed key)
  auto split = [](Index flat, const std::vector<Index>& shape, const std::vector<Index>& strides,
                  const std::vector<bool>& summed, const std::vector<AxisPair>& prs, bool first)
      -> std::pair<Index, Index> {
    Index free_flat = 0, key = 0;
    for (size_t k = 0; k < shape.size(); ++k) {
      Index idx = (flat / strides[k]) % shape[k];
      if (!summed[k]) {
        free_flat = free_flat * shape[k] + idx;
      }
    }
    // key: indices of the paired axes in pair order
    for (auto& p : prs) {
      Index ax = first ? p.first : p.second;
      Index idx = (flat / strides[ax]) % shape[ax];
      key = key * shape[ax] + idx;
    }
    return {free_flat, key};
  };

  std::unordered_map<Index, std::vector<std::pair<Index, const T*>>> a_by_key;
  for (auto& [flat, v] : a.entries) {
    auto [freef, key] = split(flat, a.shape, sta, adone, pairs, true);
    a_by_key[key].push_back({freef, &v});
  }
  std::unordered_map<Index, T> acc;
  for (auto& [flat, v] : b.entries) {
    auto [freef, key] = split(flat, b.shape, stb, bdone, pairs, false);
    auto it = a_by_key.find(key);
    if (it == a_by_key.end()) continue;
    for (auto& [af, av] : it->second) {
      Index out = af * bfree_size + freef;
      auto [slot, fresh] = acc.emplace(out, F::zero());
      slot->second = slot->second + *av * v;
    }
  }
  SparseTensor<T> out;
  out.shape = oshape;
  out.entries.reserve(acc.size());
  for (auto& [i, v] : acc)
    if (!F::is_zero(v)) out.entries.push_back({i, v});
  std::sort(out.entries.begin(), out.entries.end(),
            [](auto& x, auto& y) { return x.first < y.first; });
  return out;
}

template <class T>
SparseTensor<T> sparse_self_trace(const SparseTensor<T>& a, const std::vector<AxisPair>& pairs) {
  using F = FieldTraits<T>;
  auto st = sparse_detail::strides_of(a.shape);
  std::vector<bool> done(a.shape.size(), false);
  for (auto [x, y] : pairs) done[x] = done[y] = true;
  std::vector<Index> oshape;
  for (size_t k = 0; k < a.shape.size(); ++k)
    if (!done[k]) oshape.push_back(a.shape[k]);
  std::unordered_map<Index, T> acc;
  for (auto& [flat, v] : a.entries) {
    bool diag = true;
    for (auto [x, y] : pairs)
      if ((flat / st[x]) % a.shape[x] != (flat / st[y]) % a.shape[y]) diag = false;
    if (!diag) continue;
    Index out = 0;
    for (size_t k = 0; k < a.shape.size(); ++k) {
      if (done[k]) continue;
      out = out * a.shape[k] + (flat / st[k]) % a.shape[k];
    }
    auto [slot, fresh] = acc.emplace(out, F::zero());
    slot->second = slot->second + v;
  }
  SparseTensor<T> out;
  out.shape = oshape;
  for (auto& [i, v] : acc)
    if (!F::is_zero(v)) out.entries.push_back({i, v});
  std::sort(out.entries.begin(), out.entries.end(),
            [](auto& x, auto& y) { return x.first < y.first; });
  return out;
}

// Greedy contraction over named legs, sparse mirror of TensorNetwork.
template <class T>
class SparseNetwork {
 public:
  using Leg = std::int64_t;

  void add(SparseTensor<T> t, std::vector<Leg> legs) {
    if (legs.size() != t.shape.size()) throw std::invalid_argument("sparse network: leg arity");
    nodes_.push_back(std::move(t));
    legs_.push_back(std::move(legs));
  }
  void add(const Tensor<T>& t, std::vector<Leg> legs) {
    add(SparseTensor<T>::from_dense(t), std::move(legs));
  }

  Tensor<T> contract_all(const std::vector<Leg>& open) {
    auto ts = nodes_;
    auto ls = legs_;
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
        ts[i] = sparse_self_trace(ts[i], pr);
        ls[i] = kept;
      }
    };
    for (size_t i = 0; i < ts.size(); ++i) trace_self(i);

    while (ts.size() > 1) {
      size_t bi = 0, bj = 1;
      double best = -1;
      bool connected = false;
      for (size_t i = 0; i < ts.size(); ++i)
        for (size_t j = i + 1; j < ts.size(); ++j) {
          int shared_count = 0;
          double shared = 1;
          for (size_t x = 0; x < ls[i].size(); ++x)
            for (size_t y = 0; y < ls[j].size(); ++y)
              if (ls[i][x] == ls[j][y]) {
                ++shared_count;
                shared *= ts[i].shape[x];
              }
          double out = static_cast<double>(ts[i].size()) * ts[j].size() / (shared * shared);
          if (shared_count > 0) {
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
      auto merged = sparse_contract(ts[bi], ts[bj], pr);
      ts.erase(ts.begin() + bj);
      ls.erase(ls.begin() + bj);
      ts[bi] = std::move(merged);
      ls[bi] = std::move(nl);
      trace_self(bi);
    }

    auto& lg = ls[0];
    if (lg.size() != open.size())
      throw std::invalid_argument("sparse network: open legs do not match request");
    std::vector<Index> perm(open.size());
    for (size_t k = 0; k < open.size(); ++k) {
      auto it = std::find(lg.begin(), lg.end(), open[k]);
      if (it == lg.end()) throw std::invalid_argument("sparse network: missing open leg");
      perm[k] = static_cast<Index>(it - lg.begin());
    }
    return ts[0].to_dense().permute(perm);
  }

 private:
  std::vector<SparseTensor<T>> nodes_;
  std::vector<std::vector<Leg>> legs_;
};

}  // namespace orbifold
