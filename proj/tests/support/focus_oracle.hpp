#pragma once

#include "centerfocus/focus.hpp"

#include <map>

namespace centerfocus::testsupport {

/// Independent brute-force route to the focus quantities: builds H with
/// undetermined coefficients as extra symbols, expands X H with generic
/// polynomial arithmetic, collects every coefficient, and eliminates the
/// unknowns degree by degree by dense substitution. Never uses the
/// production recursion or the closed-form expression.
std::map<int, Poly> oracle_focus_quantities(const ComplexSystem& sys, int kmax);

/// Condition sets of Theorem 3.2 (keys "a".."j") and Theorem 1.1
/// (keys "1".."7") as integer generator lists over a1..a6; chart equations
/// (a6 or a6-1) are included where applicable.
const std::map<std::string, std::vector<std::string>>& center_condition_generators();

/// Exact check that a polynomial over a1..a6 vanishes identically on the
/// named condition's solution set (linear parametrization + substitution).
bool vanishes_on_condition(const Poly& g, const std::string& key);

}  // namespace centerfocus::testsupport
