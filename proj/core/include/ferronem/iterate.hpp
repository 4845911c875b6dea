#pragma once

#include <vector>

#include "ferronem/fields.hpp"
#include "ferronem/manifold.hpp"

namespace ferronem {

/// Per-vertex frame of the current outer iterate: the director n, its
/// tangent t = rotate90(n), nu = R(n) and tau = rotate90(nu).
struct IterateData {
  std::vector<UnitVec2> n;
  std::vector<UnitVec2> t;
  std::vector<UnitVec2> nu;
  std::vector<UnitVec2> tau;
  int j = 0;

  static IterateData from_field(const NodalField& field, int j = 0);
  std::size_t size() const noexcept { return n.size(); }
};

}  // namespace ferronem
