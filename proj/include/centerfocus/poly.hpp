#pragma once

#include "centerfocus/scalar.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace centerfocus {

/// Exponent vector with cached total degree. Ordering is graded
/// lexicographic over the owning polynomial's variable list.
struct Mono {
    std::vector<std::uint16_t> e;
    int deg = 0;

    Mono() = default;
    explicit Mono(std::vector<std::uint16_t> exps) : e(std::move(exps)) {
        for (auto x : e) deg += x;
    }
    static Mono unit(std::size_t nvars) { return Mono(std::vector<std::uint16_t>(nvars, 0)); }

    bool operator==(const Mono& o) const { return e == o.e; }
};

/// graded-lex: higher degree first, then lexicographic on exponents
struct MonoGradedLexGreater {
    bool operator()(const Mono& a, const Mono& b) const {
        if (a.deg != b.deg) return a.deg > b.deg;
        return a.e > b.e;
    }
};

struct MonoHash {
    std::size_t operator()(const Mono& m) const {
        std::size_t h = 1469598103934665603ull;
        for (auto x : m.e) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return h;
    }
};

template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<QC> {
    static bool is_zero(const QC& c) { return c.is_zero(); }
    static QC zero() { return QC(); }
    static QC one() { return QC(1); }
    static QC from_long(long n) { return QC(n); }
};

template <>
struct CoeffTraits<std::complex<double>> {
    static bool is_zero(const std::complex<double>& c) { return c.real() == 0.0 && c.imag() == 0.0; }
    static std::complex<double> zero() { return {0.0, 0.0}; }
    static std::complex<double> one() { return {1.0, 0.0}; }
    static std::complex<double> from_long(long n) { return {static_cast<double>(n), 0.0}; }
};

template <>
struct CoeffTraits<MpComplex> {
    static bool is_zero(const MpComplex& c) { return c.is_zero(); }
    static MpComplex zero() { return MpComplex(53); }
    static MpComplex one() { return MpComplex::from(QC(1), 53); }
    static MpComplex from_long(long n) { return MpComplex::from(QC(n), 53); }
};

/// Sparse multivariate polynomial over coefficient type C. Terms are kept
/// in canonical form: sorted graded-lex descending, no zero coefficients.
/// Arithmetic between polynomials with different variable lists (or
/// different coefficient types) is rejected.
template <class C>
class PolyT {
public:
    using Coeff = C;
    using Term = std::pair<Mono, C>;

    PolyT() = default;
    explicit PolyT(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static PolyT constant(const C& c, std::vector<std::string> vars) {
        PolyT p(std::move(vars));
        if (!CoeffTraits<C>::is_zero(c)) p.terms_.push_back({Mono::unit(p.vars_.size()), c});
        return p;
    }
    static PolyT variable(const std::string& name, std::vector<std::string> vars);

    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t nvars() const { return vars_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.deg == 0); }
    int degree() const { return terms_.empty() ? -1 : terms_[0].first.deg; }
    int degree_in(std::size_t var) const;
    bool is_homogeneous() const;
    std::size_t var_index(const std::string& name) const;

    C constant_term() const;
    C leading_coeff() const { return terms_.empty() ? CoeffTraits<C>::zero() : terms_[0].second; }
    C coeff_of(const Mono& m) const;

    PolyT operator-() const;
    friend PolyT operator+(const PolyT& a, const PolyT& b) { return add_impl(a, b, false); }
    friend PolyT operator-(const PolyT& a, const PolyT& b) { return add_impl(a, b, true); }
    friend PolyT operator*(const PolyT& a, const PolyT& b) { return mul_impl(a, b); }
    PolyT& operator+=(const PolyT& o) { *this = *this + o; return *this; }
    PolyT& operator-=(const PolyT& o) { *this = *this - o; return *this; }
    PolyT& operator*=(const PolyT& o) { *this = *this * o; return *this; }
    bool operator==(const PolyT& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
    bool operator!=(const PolyT& o) const { return !(*this == o); }

    PolyT pow(long n) const;
    PolyT scaled(const C& c) const;

    C evaluate(const std::vector<C>& point) const;
    PolyT differentiate(const std::string& var) const;
    PolyT differentiate(std::size_t var) const;

    /// Composition: every variable occurring in this polynomial must be
    /// bound; binding polynomials must share one target variable list.
    PolyT substitute(const std::map<std::string, PolyT>& bindings) const;

    PolyT homogenize(const std::string& newvar) const;
    PolyT dehomogenize(const std::string& var, const C& value) const;

    /// Reinterpret over a wider variable list (old vars must appear in it).
    PolyT extend_vars(const std::vector<std::string>& newvars) const;
    /// Drop variables the polynomial does not use.
    PolyT restrict_vars(const std::vector<std::string>& newvars) const;
    PolyT rename_vars(const std::vector<std::string>& newnames) const;

    /// Group terms by the exponents of the selected variables; values are
    /// polynomials in the remaining variables.
    std::map<std::vector<std::uint16_t>, PolyT> collect(const std::vector<std::size_t>& sel) const;

    PolyT conj_coeffs() const;

    // assembled from raw term data (canonicalizes)
    static PolyT from_terms(std::vector<std::string> vars, std::vector<Term> terms);

private:
    static PolyT add_impl(const PolyT& a, const PolyT& b, bool subtract);
    static PolyT mul_impl(const PolyT& a, const PolyT& b);
    void canonicalize();
    void check_compatible(const PolyT& o) const;

    std::vector<std::string> vars_;
    std::vector<Term> terms_;
};

using Poly = PolyT<QC>;

// --- exact-only operations ---

/// Exact division test: returns q with p == q*d, or nullopt.
std::optional<Poly> exact_divide(const Poly& p, const Poly& d);

/// Multiply by the lcm of denominators and divide by integer content so the
/// coefficients are coprime integers; flips sign so the leading coefficient
/// is positive real (or positive imaginary when the real part is zero).
Poly integer_primitive(const Poly& p);

/// True when q == c * p for some nonzero scalar c (p, q nonzero).
bool proportional(const Poly& p, const Poly& q);

// --- text format ---
// one polynomial per line, terms joined by " + ", each term
//   coeff*v1^e1*v2^e2...   (exponent 1 written bare, factors of exponent 0 omitted)
// rationals as num/den, exact complex as (re,im)

std::string poly_to_string(const Poly& p);
Poly poly_from_string(const std::string& s, const std::vector<std::string>& vars);

extern template class PolyT<QC>;
extern template class PolyT<std::complex<double>>;

}  // namespace centerfocus
