#pragma once

#include <compare>
#include <string>
#include <tuple>

namespace carnot {

// One logarithmic coordinate of a Carnot group. `layer` is the stratum (its
// dilation weight); layer 0 is reserved for formal weight-0 parameters such
// as the dilation variable "lam". `copy` distinguishes the factors in
// multi-point expressions (group law, associativity): copy 1 prints with a
// trailing apostrophe, copy 2 with two.
struct VarId {
  int layer = 1;
  int index = 1;
  int copy = 0;

  static VarId z(int i, int c = 0) { return {1, i, c}; }
  static VarId s(int j, int l, int c = 0) { return {j, l, c}; }
  static VarId lambda() { return {0, 1, 0}; }

  int weight() const { return layer; }
  VarId with_copy(int c) const { return {layer, index, c}; }

  friend auto operator<=>(const VarId& a, const VarId& b) {
    return std::tie(a.copy, a.layer, a.index) <=> std::tie(b.copy, b.layer, b.index);
  }
  friend bool operator==(const VarId&, const VarId&) = default;

  std::string str() const {
    std::string base;
    if (layer == 0)
      base = index == 1 ? "lam" : "lam" + std::to_string(index);
    else if (layer == 1)
      base = "z" + std::to_string(index);
    else
      base = "s" + std::to_string(layer) + "_" + std::to_string(index);
    return base + std::string(static_cast<size_t>(copy), '\'');
  }
};

}  // namespace carnot
