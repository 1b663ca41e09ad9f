#pragma once

// Reference values the CLI checks against.  Densities and cell volumes as
// usually quoted for these tilings, to the digits quoted.

#include <optional>
#include <string>
#include <vector>

#include "horopack/coxeter.hpp"

namespace horopack::reference {

struct OptimumTarget {
  SchlafliSymbol tiling;
  double density;
  double tol;  // absolute
  bool bf;     // coincides with the Boroczky-Florian bound
};

inline const std::vector<OptimumTarget>& optima() {
  static const std::vector<OptimumTarget> t = {{{3, 3, 6}, 0.853276, 1e-5, true},
                                               {{3, 4, 4}, 0.818808, 1e-5, false},
                                               {{4, 3, 6}, 0.853276, 1e-4, true},
                                               {{5, 3, 6}, 0.787251, 1e-4, false}};
  return t;
}

struct VolumeTarget {
  SchlafliSymbol tiling;
  std::optional<double> cell_volume;  // none quoted for (3,3,6)
};

inline const std::vector<VolumeTarget>& cell_volumes() {
  static const std::vector<VolumeTarget> t = {
      {{3, 3, 6}, std::nullopt}, {{3, 4, 4}, 3.66384}, {{4, 3, 6}, 0.507471}, {{5, 3, 6}, 20.580199}};
  return t;
}

inline constexpr double kBfQuoted = 0.85327609;

}  // namespace horopack::reference
