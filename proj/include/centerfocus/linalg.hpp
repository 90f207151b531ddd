#pragma once

#include "centerfocus/poly.hpp"

#include <optional>
#include <vector>

namespace centerfocus {

// --- exact linear algebra over QC ---

using QCMatrix = std::vector<std::vector<QC>>;

/// reduced row echelon form in place; returns pivot column indices
std::vector<std::size_t> qc_rref(QCMatrix& m);

/// one solution of A x = b, if consistent
std::optional<std::vector<QC>> qc_solve(QCMatrix a, const std::vector<QC>& b);

/// basis of the nullspace of A
std::vector<std::vector<QC>> qc_nullspace(QCMatrix a);

/// Affine-linear parametrization of the common zero set of linear
/// generators: binds every variable to a polynomial in fresh parameters
/// t1..tk. Fails if a generator is nonlinear or the system is
/// inconsistent.
struct LinearParametrization {
    std::vector<std::string> params;          // t1..tk
    std::map<std::string, Poly> bindings;     // var -> poly over params
    int dim = 0;
};
std::optional<LinearParametrization> parametrize_linear(const std::vector<Poly>& generators,
                                                        const std::vector<std::string>& vars);

/// row space containment over the rationals: every row of `sub` lies in the
/// row span of `sup` (rows are linear forms' coefficient vectors)
bool row_span_contains(const QCMatrix& sup, const QCMatrix& sub);

// --- templated dense complex kernels for the tracker ---

/// LU factorization with partial pivoting; CT is std::complex<double> or
/// MpComplex.
template <class CT>
struct LUFactor {
    std::vector<std::vector<CT>> lu;
    std::vector<std::size_t> perm;
    bool singular = false;
    double min_pivot = 0.0;
    double max_pivot = 0.0;

    static LUFactor factor(std::vector<std::vector<CT>> a);
    std::vector<CT> solve(std::vector<CT> b) const;
    /// crude reciprocal condition proxy from the pivot range
    double rcond_estimate() const { return max_pivot > 0 ? min_pivot / max_pivot : 0.0; }
};

/// Householder QR with column pivoting; used for numerical rank and
/// least-squares Newton steps on overdetermined systems.
template <class CT>
struct QRFactor {
    std::vector<std::vector<CT>> a;               // m x n, overwritten with R
    std::vector<std::vector<CT>> reflectors;      // Householder vectors
    std::vector<CT> tau;
    std::vector<std::size_t> colperm;
    std::size_t m = 0, n = 0;

    static QRFactor factor(std::vector<std::vector<CT>> mat);
    /// least-squares solution of A x = b (rank-truncated, minimal basis)
    std::vector<CT> solve_ls(std::vector<CT> b) const;
    std::size_t rank(double rel_tol) const;
};

extern template struct LUFactor<std::complex<double>>;
extern template struct LUFactor<MpComplex>;
extern template struct QRFactor<std::complex<double>>;
extern template struct QRFactor<MpComplex>;

}  // namespace centerfocus
