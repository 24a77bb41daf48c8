#include "orbifold/group.hpp"

#include <array>
#include <stdexcept>

namespace orbifold {

void GroupTable::validate() const {
  auto n = order;
  if (static_cast<std::int64_t>(product.size()) != n)
    throw std::invalid_argument("group: product table size mismatch");
  for (auto& row : product) {
    if (static_cast<std::int64_t>(row.size()) != n)
      throw std::invalid_argument("group: product table row size mismatch");
    for (auto v : row)
      if (v < 0 || v >= n) throw std::invalid_argument("group: element out of range");
  }
  for (std::int64_t g = 0; g < n; ++g)
    if (product[identity][g] != g || product[g][identity] != g)
      throw std::invalid_argument("group: identity fails");
  for (std::int64_t g = 0; g < n; ++g)
    if (product[g][inverse[g]] != identity || product[inverse[g]][g] != identity)
      throw std::invalid_argument("group: inverse fails");
  for (std::int64_t a = 0; a < n; ++a)
    for (std::int64_t b = 0; b < n; ++b)
      for (std::int64_t c = 0; c < n; ++c)
        if (product[product[a][b]][c] != product[a][product[b][c]])
          throw std::invalid_argument("group: associativity fails");
}

std::vector<std::int64_t> GroupTable::conjugacy_classes() const {
  std::vector<std::int64_t> cls(order, -1);
  std::int64_t next = 0;
  for (std::int64_t g = 0; g < order; ++g) {
    if (cls[g] >= 0) continue;
    for (std::int64_t h = 0; h < order; ++h) {
      std::int64_t c = product[product[h][g]][inverse[h]];
      cls[c] = next;
    }
    ++next;
  }
  return cls;
}

std::int64_t GroupTable::class_count() const {
  auto cls = conjugacy_classes();
  std::int64_t m = 0;
  for (auto c : cls) m = std::max(m, c + 1);
  return m;
}

GroupTable GroupTable::cyclic(std::int64_t n) {
  GroupTable g;
  g.order = n;
  g.identity = 0;
  g.product.assign(n, std::vector<std::int64_t>(n));
  g.inverse.assign(n, 0);
  for (std::int64_t a = 0; a < n; ++a) {
    for (std::int64_t b = 0; b < n; ++b) g.product[a][b] = (a + b) % n;
    g.inverse[a] = (n - a) % n;
  }
  g.validate();
  return g;
}

GroupTable GroupTable::direct_product(const GroupTable& a, const GroupTable& b) {
  GroupTable g;
  g.order = a.order * b.order;
  g.identity = a.identity * b.order + b.identity;
  g.product.assign(g.order, std::vector<std::int64_t>(g.order));
  g.inverse.assign(g.order, 0);
  for (std::int64_t x = 0; x < g.order; ++x) {
    std::int64_t xa = x / b.order, xb = x % b.order;
    g.inverse[x] = a.inverse[xa] * b.order + b.inverse[xb];
    for (std::int64_t y = 0; y < g.order; ++y) {
      std::int64_t ya = y / b.order, yb = y % b.order;
      g.product[x][y] = a.product[xa][ya] * b.order + b.product[xb][yb];
    }
  }
  g.validate();
  return g;
}

GroupTable GroupTable::symmetric3() {
  // permutations of {0,1,2} in one-line notation, listed in lex order
  static const std::array<std::array<int, 3>, 6> perms = {{
      {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
  }};
  auto index_of = [&](const std::array<int, 3>& p) -> std::int64_t {
    for (std::int64_t i = 0; i < 6; ++i)
      if (perms[i] == p) return i;
    throw std::logic_error("s3: bad permutation");
  };
  GroupTable g;
  g.order = 6;
  g.identity = 0;
  g.product.assign(6, std::vector<std::int64_t>(6));
  g.inverse.assign(6, 0);
  for (std::int64_t x = 0; x < 6; ++x) {
    for (std::int64_t y = 0; y < 6; ++y) {
      std::array<int, 3> comp{};
      for (int i = 0; i < 3; ++i) comp[i] = perms[x][perms[y][i]];  // x after y
      g.product[x][y] = index_of(comp);
    }
  }
  for (std::int64_t x = 0; x < 6; ++x) {
    std::array<int, 3> inv{};
    for (int i = 0; i < 3; ++i) inv[perms[x][i]] = i;
    g.inverse[x] = index_of(inv);
  }
  g.validate();
  return g;
}

}  // namespace orbifold
