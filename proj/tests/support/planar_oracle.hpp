#pragma once

#include "centerfocus/poly.hpp"

#include <vector>

namespace centerfocus::testsupport {

/// Exact planar focus quantities for u' = -v + P, v' = u + Q (P, Q over
/// (u,v) plus parameter variables, no constant or linear part): the
/// two-variable analog of the first-integral recursion, independent of the
/// 3D implementation.
std::vector<Poly> planar_focus_quantities(const Poly& P, const Poly& Q,
                                          const std::vector<std::string>& state, int kmax);

}  // namespace centerfocus::testsupport
