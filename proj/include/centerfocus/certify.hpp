#pragma once

#include "centerfocus/focus.hpp"

#include <iosfwd>
#include <optional>

namespace centerfocus {

/// Polynomial vector field over exact rationals; state variables first in
/// the variable list, symbolic parameters after them.
struct VectorField {
    std::vector<std::string> state;  // 2 or 3 state variable names
    std::vector<Poly> components;    // over state + parameter variables

    void check() const;
    const std::vector<std::string>& all_vars() const { return components.at(0).vars(); }
};

/// X F = sum_i X_i dF/dx_i over the state variables only.
Poly lie_derivative(const VectorField& X, const Poly& F);

/// Exact division of X F by F; the cofactor K when F is a Darboux
/// polynomial, nullopt otherwise.
std::optional<Poly> cofactor_solve(const VectorField& X, const Poly& F);

struct DarbouxCertificate {
    Poly F;
    Poly K;
    bool tangent_to_w = false;  // zero constant term, linear part proportional to the third state var
};

/// Verifies X F = K F exactly and records the tangency structure.
std::optional<DarbouxCertificate> darboux_certificate(const VectorField& X, const Poly& F);

/// Linear change of coordinates old_state = M * new_state (exact rational
/// 3x3); returns the transformed field over the new state names.
VectorField change_coordinates(const VectorField& X, const std::vector<std::vector<Rat>>& M,
                               const std::vector<std::string>& new_state);

/// Restriction of a 3D field to the invariant graph surface
/// F = c*z - phi(x,y): substitutes z = phi/c into the first two
/// components. Throws std::invalid_argument when F is not graph-form.
VectorField restrict_to_graph(const VectorField& X, const Poly& surface);

/// Checks that the restriction of X to F = 0 equals the expected planar
/// field exactly modulo F (ideal-membership by exact division); used where
/// the surface is not graph-form.
bool restriction_equals_mod_surface(const VectorField& X, const Poly& surface,
                                    const Poly& expected_xdot, const Poly& expected_ydot);

enum class IifResult { ValidNonzeroOrigin, ValidZeroOrigin, Invalid };

/// Inverse integrating factor identity P V_x + Q V_y = (P_x + Q_y) V,
/// verified exactly; classifies V(0,0).
IifResult inverse_integrating_factor_check(const Poly& P, const Poly& Q, const Poly& V,
                                           const std::vector<std::string>& state);

/// Time-reversal symmetry (x,y,t) -> (x,-y,-t): P odd and Q even in y.
bool reversibility_check(const Poly& P, const Poly& Q, const std::vector<std::string>& state);

/// Dulac-Kapteyn quadratic-center criterion on the normal form
///   u' = -v - b u^2 - (B+2c) uv - d v^2,
///   v' = u + a u^2 + (A+2b) uv + c v^2;
/// entries may be polynomials in symbolic parameters, conditions are
/// polynomial identities.
bool dulac_kapteyn(const Poly& a, const Poly& b, const Poly& c, const Poly& d, const Poly& A,
                   const Poly& B);

/// Builds the Theorem-A.1 normal form planar field from the six entries.
VectorField dulac_kapteyn_normal_form(const Poly& a, const Poly& b, const Poly& c, const Poly& d,
                                      const Poly& A, const Poly& B,
                                      const std::vector<std::string>& state);

/// Darboux first integral from verified pairs: a nontrivial rational
/// alpha with sum alpha_j K_j = 0, so that prod F_j^alpha_j is a first
/// integral. Pairs failing X F = K F are rejected.
std::optional<std::vector<Rat>> darboux_integral(
    const std::vector<std::pair<Poly, Poly>>& pairs, const VectorField& X);

// --- certificate manifest (reproduction data for Theorem 3.2 cases) ---

struct CertificateCase {
    std::string name;
    Chart chart = Chart::A6Zero;
    std::map<std::string, std::string> bindings;  // parameter -> poly text over free symbols
    std::vector<std::string> free_symbols;
    bool planar_decoupled = false;
    std::string surface, cofactor;           // poly text; empty when absent
    std::map<std::string, std::string> change;  // old state var -> poly text in x,y,z
    std::string surface_new;
    std::vector<std::string> system_new;     // expected transformed right-hand sides
    std::vector<std::string> restriction;    // expected planar right-hand sides

    struct Cert {
        std::string type;  // inverse_factor | reversibility | dulac_kapteyn |
                           // linear_center | linear_center_mod_f | first_integral
        std::map<std::string, std::string> data;  // V, H, dk entries, guard
    };
    std::vector<Cert> certs;
};

std::vector<CertificateCase> parse_certificate_manifest(std::istream& in);
std::vector<CertificateCase> load_certificate_manifest(const std::string& path);

struct CaseOutcome {
    std::string name;
    bool passed = false;
    std::vector<std::string> notes;
};

/// Runs every check of one manifest case over exact rationals.
CaseOutcome run_certificate_case(const CertificateCase& c);

}  // namespace centerfocus
