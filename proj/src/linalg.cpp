#include "centerfocus/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace centerfocus {

std::vector<std::size_t> qc_rref(QCMatrix& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (!m[i][c].is_zero()) {
                sel = i;
                break;
            }
        if (sel == rows) continue;
        std::swap(m[r], m[sel]);
        QC inv = QC(1) / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            QC f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::optional<std::vector<QC>> qc_solve(QCMatrix a, const std::vector<QC>& b) {
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (std::size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
    auto pivots = qc_rref(a);
    for (auto p : pivots)
        if (p == cols) return std::nullopt;
    std::vector<QC> x(cols, QC(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][cols];
    return x;
}

std::vector<std::vector<QC>> qc_nullspace(QCMatrix a) {
    std::size_t cols = a.empty() ? 0 : a[0].size();
    auto pivots = qc_rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<QC>> basis;
    for (std::size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<QC> v(cols, QC(0));
        v[c] = QC(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<LinearParametrization> parametrize_linear(const std::vector<Poly>& generators,
                                                        const std::vector<std::string>& vars) {
    std::size_t n = vars.size();
    QCMatrix rows;
    std::vector<QC> rhs;
    for (const auto& g : generators) {
        if (g.is_zero()) continue;
        if (g.degree() > 1) return std::nullopt;
        Poly gg = g.vars() == vars ? g : g.extend_vars(vars);
        std::vector<QC> row(n, QC(0));
        QC c0(0);
        for (const auto& [m, c] : gg.terms()) {
            if (m.deg == 0) {
                c0 = c;
                continue;
            }
            for (std::size_t v = 0; v < n; ++v)
                if (m.e[v] == 1) row[v] = c;
        }
        rows.push_back(std::move(row));
        rhs.push_back(-c0);
    }
    auto part = qc_solve(rows, rhs);
    if (!part) return std::nullopt;
    auto null = qc_nullspace(rows);

    LinearParametrization out;
    out.dim = static_cast<int>(null.size());
    for (std::size_t k = 0; k < null.size(); ++k) out.params.push_back("t" + std::to_string(k + 1));
    if (out.params.empty()) out.params.push_back("t1");  // constant bindings still need a target list
    for (std::size_t v = 0; v < n; ++v) {
        Poly p = Poly::constant((*part)[v], out.params);
        for (std::size_t k = 0; k < null.size(); ++k)
            p += Poly::variable(out.params[k], out.params).scaled(null[k][v]);
        out.bindings[vars[v]] = p;
    }
    return out;
}

bool row_span_contains(const QCMatrix& sup, const QCMatrix& sub) {
    if (sub.empty()) return true;
    QCMatrix m = sup;
    auto base_pivots = qc_rref(m);
    for (const auto& row : sub) {
        std::vector<QC> r = row;
        for (std::size_t i = 0; i < base_pivots.size(); ++i) {
            QC f = r[base_pivots[i]];
            if (f.is_zero()) continue;
            for (std::size_t j = 0; j < r.size(); ++j) r[j] -= f * m[i][j];
        }
        for (const auto& c : r)
            if (!c.is_zero()) return false;
    }
    return true;
}

// --- templated dense kernels ---

namespace {

inline std::complex<double> ct_conj(const std::complex<double>& c) { return std::conj(c); }
inline MpComplex ct_conj(const MpComplex& c) { return c.conj(); }

inline mpfr_prec_t prec_of(const std::complex<double>&) { return 53; }
inline mpfr_prec_t prec_of(const MpComplex& c) { return c.prec(); }

template <class CT>
double ct_abs(const CT& c) {
    return ScalarOps<CT>::abs_approx(c);
}

// sqrt of a (real, nonnegative) CT value, at its precision
inline std::complex<double> ct_real_sqrt(const std::complex<double>& c) {
    return {std::sqrt(c.real()), 0.0};
}
inline MpComplex ct_real_sqrt(const MpComplex& c) {
    return MpComplex(c.re.sqrt(), MpReal(c.prec()));
}

}  // namespace

template <class CT>
LUFactor<CT> LUFactor<CT>::factor(std::vector<std::vector<CT>> a) {
    LUFactor f;
    std::size_t n = a.size();
    f.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
    f.min_pivot = 1e308;
    f.max_pivot = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = ct_abs(a[k][k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            double m = ct_abs(a[i][k]);
            if (m > best) {
                best = m;
                piv = i;
            }
        }
        if (best == 0.0) {
            f.singular = true;
            f.min_pivot = 0.0;
            f.lu = std::move(a);
            return f;
        }
        std::swap(a[k], a[piv]);
        std::swap(f.perm[k], f.perm[piv]);
        f.min_pivot = std::min(f.min_pivot, best);
        f.max_pivot = std::max(f.max_pivot, best);
        for (std::size_t i = k + 1; i < n; ++i) {
            CT m = a[i][k] / a[k][k];
            a[i][k] = m;
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = a[i][j] - m * a[k][j];
        }
    }
    f.lu = std::move(a);
    return f;
}

template <class CT>
std::vector<CT> LUFactor<CT>::solve(std::vector<CT> b) const {
    std::size_t n = lu.size();
    std::vector<CT> x;
    x.reserve(n);
    for (std::size_t i = 0; i < n; ++i) x.push_back(b[perm[i]]);
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) x[i] = x[i] - lu[i][j] * x[j];
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t j = ii + 1; j < n; ++j) x[ii] = x[ii] - lu[ii][j] * x[j];
        x[ii] = x[ii] / lu[ii][ii];
    }
    return x;
}

template <class CT>
struct QRData {
    std::vector<std::vector<CT>> v;  // Householder vectors, one per step
    std::vector<CT> tau;
};

template <class CT>
QRFactor<CT> QRFactor<CT>::factor(std::vector<std::vector<CT>> mat) {
    QRFactor f;
    f.a = std::move(mat);
    f.m = f.a.size();
    f.n = f.m ? f.a[0].size() : 0;
    f.colperm.resize(f.n);
    for (std::size_t j = 0; j < f.n; ++j) f.colperm[j] = j;
    std::size_t steps = std::min(f.m, f.n);
    f.reflectors.assign(steps, {});
    f.tau.clear();

    auto col_norm2_d = [&](std::size_t j, std::size_t from) {
        double s = 0;
        for (std::size_t i = from; i < f.m; ++i) {
            double t = ct_abs(f.a[i][j]);
            s += t * t;
        }
        return s;
    };

    for (std::size_t k = 0; k < steps; ++k) {
        std::size_t best = k;
        double bestn = col_norm2_d(k, k);
        for (std::size_t j = k + 1; j < f.n; ++j) {
            double nj = col_norm2_d(j, k);
            if (nj > bestn) {
                bestn = nj;
                best = j;
            }
        }
        if (best != k) {
            for (std::size_t i = 0; i < f.m; ++i) std::swap(f.a[i][k], f.a[i][best]);
            std::swap(f.colperm[k], f.colperm[best]);
        }

        mpfr_prec_t prec = prec_of(f.a[k][k]);
        // exact column norm at working precision
        CT n2 = ScalarOps<CT>::zero(prec);
        for (std::size_t i = k; i < f.m; ++i) n2 += ct_conj(f.a[i][k]) * f.a[i][k];
        if (ct_abs(n2) == 0.0) {
            f.tau.push_back(ScalarOps<CT>::zero(prec));
            continue;
        }
        CT nrm = ct_real_sqrt(n2);
        CT x0 = f.a[k][k];
        CT alpha;
        if (ct_abs(x0) == 0.0) {
            alpha = -nrm;
        } else {
            CT x0abs = ct_real_sqrt(CT(ct_conj(x0) * x0));
            alpha = -(x0 / x0abs) * nrm;
        }
        std::vector<CT> v;
        v.reserve(f.m - k);
        for (std::size_t i = k; i < f.m; ++i) v.push_back(f.a[i][k]);
        v[0] = v[0] - alpha;
        CT vhv = ScalarOps<CT>::zero(prec);
        for (const auto& vi : v) vhv += ct_conj(vi) * vi;
        if (ct_abs(vhv) == 0.0) {
            f.tau.push_back(ScalarOps<CT>::zero(prec));
            continue;
        }
        CT tau = ScalarOps<CT>::from_dcomplex({2.0, 0.0}, prec) / vhv;

        for (std::size_t j = k; j < f.n; ++j) {
            CT dot = ScalarOps<CT>::zero(prec);
            for (std::size_t i = k; i < f.m; ++i) dot += ct_conj(v[i - k]) * f.a[i][j];
            CT s = tau * dot;
            for (std::size_t i = k; i < f.m; ++i) f.a[i][j] = f.a[i][j] - s * v[i - k];
        }
        // clean the annihilated part
        f.a[k][k] = alpha;
        for (std::size_t i = k + 1; i < f.m; ++i) f.a[i][k] = ScalarOps<CT>::zero(prec);
        f.reflectors[k] = std::move(v);
        f.tau.push_back(std::move(tau));
    }
    return f;
}

template <class CT>
std::size_t QRFactor<CT>::rank(double rel_tol) const {
    std::size_t steps = std::min(m, n);
    if (steps == 0) return 0;
    double top = ct_abs(a[0][0]);
    if (top == 0.0) return 0;
    std::size_t r = 0;
    for (std::size_t k = 0; k < steps; ++k) {
        if (ct_abs(a[k][k]) > rel_tol * top)
            ++r;
        else
            break;
    }
    return r;
}

template <class CT>
std::vector<CT> QRFactor<CT>::solve_ls(std::vector<CT> b) const {
    mpfr_prec_t prec = (m && n) ? prec_of(a[0][0]) : 53;
    std::size_t steps = std::min(m, n);
    // apply Q^H to b
    for (std::size_t k = 0; k < steps; ++k) {
        if (k >= tau.size() || reflectors[k].empty()) continue;
        const auto& v = reflectors[k];
        CT dot = ScalarOps<CT>::zero(prec);
        for (std::size_t i = k; i < m; ++i) dot += ct_conj(v[i - k]) * b[i];
        CT s = tau[k] * dot;
        for (std::size_t i = k; i < m; ++i) b[i] = b[i] - s * v[i - k];
    }
    // back substitution on the leading rank x rank block
    std::size_t r = rank(1e-13);
    std::vector<CT> y(n, ScalarOps<CT>::zero(prec));
    for (std::size_t ii = r; ii-- > 0;) {
        CT s = b[ii];
        for (std::size_t j = ii + 1; j < r; ++j) s = s - a[ii][j] * y[j];
        y[ii] = s / a[ii][ii];
    }
    std::vector<CT> x(n, ScalarOps<CT>::zero(prec));
    for (std::size_t j = 0; j < n; ++j) x[colperm[j]] = y[j];
    return x;
}

template struct LUFactor<std::complex<double>>;
template struct LUFactor<MpComplex>;
template struct QRFactor<std::complex<double>>;
template struct QRFactor<MpComplex>;

}  // namespace centerfocus
