#pragma once

#include "surface_modes/specfun.hpp"

namespace surface_modes {

enum class Dimension { two = 2, three = 3 };

inline int as_int(Dimension d) { return static_cast<int>(d); }

Dimension dimension_from_int(int dim);

/// Bessel order carried by angular index m: m in 2D, m + 1/2 in 3D.
inline Order order_for(Dimension d, int m) {
  return d == Dimension::two ? Order::integer(m) : Order::half_integer(m);
}

}  // namespace surface_modes
