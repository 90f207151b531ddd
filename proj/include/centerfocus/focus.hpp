#pragma once

#include "centerfocus/poly.hpp"

#include <array>
#include <map>
#include <vector>

namespace centerfocus {

inline const std::vector<std::string> kParamVars{"a1", "a2", "a3", "a4", "a5", "a6"};
inline const std::vector<std::string> kRealStateVars{"u", "v", "w"};
inline const std::vector<std::string> kComplexStateVars{"x", "y", "z"};

/// Real 3D system in the eigenstructure normal form
///   u' = -v + P,  v' = u + Q,  w' = beta*w + R
/// with polynomial right-hand sides over (u,v,w) and parameters a1..a6.
struct RealSystem3D {
    std::array<Poly, 3> rhs;  // over vars (u,v,w,a1..a6)
    Rat beta{-1};

    static std::vector<std::string> all_vars();
    void check_invariants() const;
};

/// Complexified system x' = ix + A, y' = -iy + B, z' = beta z + C over
/// (x,y,z) with parameter-polynomial coefficient tables.
struct ComplexSystem {
    std::array<Poly, 3> rhs;  // over vars (x,y,z,a1..a6)
    Rat beta{-1};

    static std::vector<std::string> all_vars();
    /// coefficient of x^p y^q z^r in component comp, as polynomial in a1..a6
    std::map<std::array<int, 3>, Poly> coeff_table(int comp) const;
    /// reality structure b_qpr = conj(a_pqr), c_qpr = conj(c_pqr)
    bool conjugate_symmetric() const;
    void check_invariants() const;
};

struct FocusQuantity {
    int K = 0;
    Poly raw;         // over a1..a6, exact output of the recursion
    Poly normalized;  // integer primitive scaling of raw
};

struct FocusQuantitySet {
    int kmax = 0;
    std::vector<FocusQuantity> quantities;                 // K = 1..kmax
    std::map<std::array<int, 3>, Poly> v_table;            // computed v_{jkl}
    std::map<std::array<int, 3>, QC> normalization_vkk0;   // the chosen v_{KK0}

    const FocusQuantity& at(int K) const;
};

enum class Chart { A6Zero, A6One, Symbolic };

/// Standard form of u''' = u'' + u' + u + f(u,u',u''): builds the system
/// with h(u,v,w) = f(-u+w, v-w, u+w)/2 and beta = -1.
/// f is given over variables (u, du, ddu) and must have no constant or
/// linear part.
RealSystem3D standardize(const Poly& f);

/// Standard-form system for a directly supplied h(u,v,w).
RealSystem3D standardize_from_h(const Poly& h);

/// The six-parameter quadratic family h = a1 u^2 + a2 v^2 + a3 w^2
/// + a4 uv + a5 uw + a6 vw with symbolic parameters.
RealSystem3D standard_family();

/// Complexification x = u + iv, y the formal conjugate, z = w.
ComplexSystem complexify(const RealSystem3D& sys);

/// Order-by-order first-integral recursion: solves the coefficient
/// equations of X H uniquely for v_{jkl} away from (K,K,0), assigns
/// v_{KK0} = 0 for K >= 2, and emits the obstructions g_{KK0}.
FocusQuantitySet focus_quantities(const ComplexSystem& sys, int kmax);

/// Closed-form expression for g_{KK0} of a quadratic system in terms of
/// the already-computed v table (used as a cross-check route).
Poly closed_form_focus_quantity(const ComplexSystem& sys, int K,
                                const std::map<std::array<int, 3>, Poly>& v_table);

/// Specialize the focus quantities to a chart of P^5. Returns the
/// normalized nonzero polynomials over a1..a5 paired with their K.
std::vector<std::pair<int, Poly>> chart_specialize(const FocusQuantitySet& fq, Chart chart);

}  // namespace centerfocus
