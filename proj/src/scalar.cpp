#include "centerfocus/scalar.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace centerfocus {

Rat rat_from_string(const std::string& s) {
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

std::string rat_to_string(const Rat& r) {
    return r.get_str();
}

QC qc_from_string(const std::string& s) {
    std::string t = s;
    // strip whitespace
    t.erase(remove_if(t.begin(), t.end(), [](char c) { return c == ' ' || c == '\t'; }), t.end());
    if (t.empty()) throw std::invalid_argument("empty scalar literal");
    if (t.front() == '(') {
        if (t.back() != ')') throw std::invalid_argument("bad complex literal: " + s);
        std::string body = t.substr(1, t.size() - 2);
        // split on the comma that separates re and im
        auto pos = body.find(',');
        if (pos == std::string::npos) throw std::invalid_argument("bad complex literal: " + s);
        return QC(rat_from_string(body.substr(0, pos)), rat_from_string(body.substr(pos + 1)));
    }
    return QC(rat_from_string(t));
}

std::string qc_to_string(const QC& c) {
    if (c.is_real()) return rat_to_string(c.re);
    return "(" + rat_to_string(c.re) + "," + rat_to_string(c.im) + ")";
}

std::complex<double> qc_to_dcomplex(const QC& c) {
    return {c.re.get_d(), c.im.get_d()};
}

std::string MpReal::to_hex_string() const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%Ra", v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

MpReal MpReal::from_hex_string(const std::string& s, mpfr_prec_t prec) {
    MpReal r(prec);
    if (mpfr_set_str(r.v_, s.c_str(), 0, MPFR_RNDN) != 0 && s != "@NaN@")
        throw std::invalid_argument("bad mpfr literal: " + s);
    return r;
}

void MpReal::root_of_unity(long k, long n, mpfr_prec_t prec, MpReal& c, MpReal& s) {
    mpfr_t ang;
    mpfr_init2(ang, prec + 16);
    mpfr_const_pi(ang, MPFR_RNDN);
    mpfr_mul_si(ang, ang, 2 * k, MPFR_RNDN);
    mpfr_div_si(ang, ang, n, MPFR_RNDN);
    c = MpReal(prec);
    s = MpReal(prec);
    mpfr_sin_cos(s.raw(), c.raw(), ang, MPFR_RNDN);
    mpfr_clear(ang);
}

double MpComplex::abs_approx() const {
    double r = re.to_double(), i = im.to_double();
    double a = std::hypot(r, i);
    if (a == 0.0 && !is_zero()) {
        // value underflows double; good enough for control logic
        return 1e-300;
    }
    return a;
}

}  // namespace centerfocus
