#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace orbifold {

// Finite group as a multiplication table. Element 0..order-1, table
// product[g][h] = gh. Builders validate the axioms once at construction.
struct GroupTable {
  std::int64_t order = 0;
  std::vector<std::vector<std::int64_t>> product;
  std::int64_t identity = 0;
  std::vector<std::int64_t> inverse;

  std::int64_t mul(std::int64_t g, std::int64_t h) const { return product[g][h]; }

  // groups elements into conjugacy classes; returns class index per element
  std::vector<std::int64_t> conjugacy_classes() const;
  std::int64_t class_count() const;

  void validate() const;  // throws on broken associativity/identity/inverse

  static GroupTable cyclic(std::int64_t n);
  static GroupTable direct_product(const GroupTable& a, const GroupTable& b);
  static GroupTable symmetric3();
};

}  // namespace orbifold
