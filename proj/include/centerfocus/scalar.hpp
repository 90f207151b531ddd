#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace centerfocus {

using Rat = mpq_class;

Rat rat_from_string(const std::string& s);
std::string rat_to_string(const Rat& r);

/// Exact complex number with rational real and imaginary parts.
/// The exact coefficient domain of the whole toolkit; plain rationals are
/// the im == 0 case.
struct QC {
    Rat re, im;

    QC() : re(0), im(0) {}
    QC(long r) : re(r), im(0) {}
    QC(const Rat& r) : re(r), im(0) {}
    QC(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static QC i() { return QC(Rat(0), Rat(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    QC conj() const { return QC(re, -im); }

    QC operator-() const { return QC(-re, -im); }
    QC& operator+=(const QC& o) { re += o.re; im += o.im; return *this; }
    QC& operator-=(const QC& o) { re -= o.re; im -= o.im; return *this; }

    friend QC operator+(const QC& a, const QC& b) { return QC(a.re + b.re, a.im + b.im); }
    friend QC operator-(const QC& a, const QC& b) { return QC(a.re - b.re, a.im - b.im); }
    friend QC operator*(const QC& a, const QC& b) {
        return QC(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend QC operator/(const QC& a, const QC& b) {
        Rat d = b.re * b.re + b.im * b.im;
        if (d == 0) throw std::domain_error("QC division by zero");
        return QC((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
    }
    QC& operator*=(const QC& o) { *this = *this * o; return *this; }
    QC& operator/=(const QC& o) { *this = *this / o; return *this; }

    friend bool operator==(const QC& a, const QC& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const QC& a, const QC& b) { return !(a == b); }
};

QC qc_from_string(const std::string& s);
std::string qc_to_string(const QC& c);

std::complex<double> qc_to_dcomplex(const QC& c);

/// Arbitrary-precision real backed by MPFR. Value semantics; the precision
/// travels with the value, binary operations use the wider operand.
class MpReal {
public:
    explicit MpReal(mpfr_prec_t prec = 53) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    MpReal(const MpReal& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    MpReal(MpReal&& o) noexcept { mpfr_init2(v_, 53); mpfr_swap(v_, o.v_); }
    MpReal& operator=(const MpReal& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    MpReal& operator=(MpReal&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~MpReal() { mpfr_clear(v_); }

    static MpReal from(double x, mpfr_prec_t prec) {
        MpReal r(prec); mpfr_set_d(r.v_, x, MPFR_RNDN); return r;
    }
    static MpReal from(const Rat& q, mpfr_prec_t prec) {
        MpReal r(prec); mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN); return r;
    }
    static MpReal from_si(long x, mpfr_prec_t prec) {
        MpReal r(prec); mpfr_set_si(r.v_, x, MPFR_RNDN); return r;
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_); }
    int sign() const { return mpfr_sgn(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    friend MpReal operator+(const MpReal& a, const MpReal& b) {
        MpReal r(std::max(a.prec(), b.prec())); mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
    }
    friend MpReal operator-(const MpReal& a, const MpReal& b) {
        MpReal r(std::max(a.prec(), b.prec())); mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
    }
    friend MpReal operator*(const MpReal& a, const MpReal& b) {
        MpReal r(std::max(a.prec(), b.prec())); mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
    }
    friend MpReal operator/(const MpReal& a, const MpReal& b) {
        MpReal r(std::max(a.prec(), b.prec())); mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
    }
    MpReal operator-() const { MpReal r(prec()); mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }
    MpReal& operator+=(const MpReal& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    MpReal& operator-=(const MpReal& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    MpReal& operator*=(const MpReal& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }

    MpReal abs() const { MpReal r(prec()); mpfr_abs(r.v_, v_, MPFR_RNDN); return r; }
    MpReal sqrt() const { MpReal r(prec()); mpfr_sqrt(r.v_, v_, MPFR_RNDN); return r; }

    friend bool operator<(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator==(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

    std::string to_hex_string() const;
    static MpReal from_hex_string(const std::string& s, mpfr_prec_t prec);

    /// cos(2*pi*k/n) and sin(2*pi*k/n) at this precision.
    static void root_of_unity(long k, long n, mpfr_prec_t prec, MpReal& c, MpReal& s);

private:
    mpfr_t v_;
};

/// Complex value on top of MpReal.
struct MpComplex {
    MpReal re, im;

    explicit MpComplex(mpfr_prec_t prec = 53) : re(prec), im(prec) {}
    MpComplex(MpReal r, MpReal i) : re(std::move(r)), im(std::move(i)) {}

    static MpComplex from(const QC& c, mpfr_prec_t prec) {
        return MpComplex(MpReal::from(c.re, prec), MpReal::from(c.im, prec));
    }
    static MpComplex from(std::complex<double> c, mpfr_prec_t prec) {
        return MpComplex(MpReal::from(c.real(), prec), MpReal::from(c.imag(), prec));
    }

    mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }
    std::complex<double> to_dcomplex() const { return {re.to_double(), im.to_double()}; }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    friend MpComplex operator+(const MpComplex& a, const MpComplex& b) {
        return MpComplex(a.re + b.re, a.im + b.im);
    }
    friend MpComplex operator-(const MpComplex& a, const MpComplex& b) {
        return MpComplex(a.re - b.re, a.im - b.im);
    }
    friend MpComplex operator*(const MpComplex& a, const MpComplex& b) {
        return MpComplex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend MpComplex operator/(const MpComplex& a, const MpComplex& b) {
        MpReal d = b.re * b.re + b.im * b.im;
        return MpComplex((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
    }
    MpComplex operator-() const { return MpComplex(-re, -im); }
    MpComplex& operator+=(const MpComplex& o) { re += o.re; im += o.im; return *this; }
    MpComplex& operator-=(const MpComplex& o) { re -= o.re; im -= o.im; return *this; }

    MpComplex conj() const { return MpComplex(re, -im); }
    MpReal abs2() const { return re * re + im * im; }
    double abs_approx() const;
};

// --- scalar traits used by the templated numerical kernels ---

template <class CT>
struct ScalarOps;

template <>
struct ScalarOps<std::complex<double>> {
    using C = std::complex<double>;
    static C zero(mpfr_prec_t) { return C(0.0, 0.0); }
    static C from_qc(const QC& q, mpfr_prec_t) { return qc_to_dcomplex(q); }
    static C from_dcomplex(std::complex<double> c, mpfr_prec_t) { return c; }
    static std::complex<double> to_dcomplex(const C& c) { return c; }
    static double abs_approx(const C& c) { return std::abs(c); }
    static constexpr mpfr_prec_t precision = 53;
};

template <>
struct ScalarOps<MpComplex> {
    using C = MpComplex;
    static C zero(mpfr_prec_t prec) { return MpComplex(prec); }
    static C from_qc(const QC& q, mpfr_prec_t prec) { return MpComplex::from(q, prec); }
    static C from_dcomplex(std::complex<double> c, mpfr_prec_t prec) { return MpComplex::from(c, prec); }
    static std::complex<double> to_dcomplex(const C& c) { return c.to_dcomplex(); }
    static double abs_approx(const C& c) { return c.abs_approx(); }
};

}  // namespace centerfocus
