#include "centerfocus/poly.hpp"

#include <algorithm>
#include <sstream>

namespace centerfocus {

template <class C>
PolyT<C> PolyT<C>::variable(const std::string& name, std::vector<std::string> vars) {
    PolyT p(std::move(vars));
    auto idx = p.var_index(name);
    std::vector<std::uint16_t> e(p.vars_.size(), 0);
    e[idx] = 1;
    p.terms_.push_back({Mono(std::move(e)), CoeffTraits<C>::one()});
    return p;
}

template <class C>
std::size_t PolyT<C>::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return i;
    throw std::invalid_argument("unknown variable: " + name);
}

template <class C>
int PolyT<C>::degree_in(std::size_t var) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.e[var]));
    return d;
}

template <class C>
bool PolyT<C>::is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = terms_[0].first.deg;
    for (const auto& [m, c] : terms_)
        if (m.deg != d) return false;
    return true;
}

template <class C>
C PolyT<C>::constant_term() const {
    if (!terms_.empty() && terms_.back().first.deg == 0) return terms_.back().second;
    return CoeffTraits<C>::zero();
}

template <class C>
C PolyT<C>::coeff_of(const Mono& m) const {
    for (const auto& [mm, c] : terms_)
        if (mm == m) return c;
    return CoeffTraits<C>::zero();
}

template <class C>
PolyT<C> PolyT<C>::operator-() const {
    PolyT r(vars_);
    r.terms_.reserve(terms_.size());
    for (const auto& [m, c] : terms_) r.terms_.push_back({m, -c});
    return r;
}

template <class C>
void PolyT<C>::check_compatible(const PolyT& o) const {
    if (vars_ != o.vars_)
        throw std::invalid_argument("polynomial variable lists do not match");
}

template <class C>
PolyT<C> PolyT<C>::add_impl(const PolyT& a, const PolyT& b, bool subtract) {
    a.check_compatible(b);
    PolyT r(a.vars_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    MonoGradedLexGreater gt;
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
        if (j == b.terms_.size() || (i < a.terms_.size() && gt(a.terms_[i].first, b.terms_[j].first))) {
            r.terms_.push_back(a.terms_[i++]);
        } else if (i == a.terms_.size() || gt(b.terms_[j].first, a.terms_[i].first)) {
            const auto& [m, c] = b.terms_[j++];
            r.terms_.push_back({m, subtract ? -c : c});
        } else {
            C c = subtract ? C(a.terms_[i].second - b.terms_[j].second)
                           : C(a.terms_[i].second + b.terms_[j].second);
            if (!CoeffTraits<C>::is_zero(c)) r.terms_.push_back({a.terms_[i].first, c});
            ++i;
            ++j;
        }
    }
    return r;
}

template <class C>
PolyT<C> PolyT<C>::mul_impl(const PolyT& a, const PolyT& b) {
    a.check_compatible(b);
    PolyT r(a.vars_);
    if (a.terms_.empty() || b.terms_.empty()) return r;
    const PolyT& small = a.terms_.size() <= b.terms_.size() ? a : b;
    const PolyT& big = a.terms_.size() <= b.terms_.size() ? b : a;
    std::unordered_map<Mono, C, MonoHash> acc;
    acc.reserve(big.terms_.size() * 2);
    const std::size_t n = a.vars_.size();
    for (const auto& [ms, cs] : small.terms_) {
        for (const auto& [mb, cb] : big.terms_) {
            Mono m;
            m.e.resize(n);
            for (std::size_t k = 0; k < n; ++k) m.e[k] = static_cast<std::uint16_t>(ms.e[k] + mb.e[k]);
            m.deg = ms.deg + mb.deg;
            auto it = acc.find(m);
            if (it == acc.end())
                acc.emplace(std::move(m), C(cs * cb));
            else
                it->second += cs * cb;
        }
    }
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (!CoeffTraits<C>::is_zero(c)) r.terms_.push_back({m, std::move(c)});
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& x, const Term& y) { return MonoGradedLexGreater()(x.first, y.first); });
    return r;
}

template <class C>
PolyT<C> PolyT<C>::pow(long n) const {
    if (n < 0) throw std::invalid_argument("negative polynomial power");
    PolyT r = constant(CoeffTraits<C>::one(), vars_);
    PolyT base = *this;
    while (n > 0) {
        if (n & 1) r = r * base;
        base = (n >>= 1) ? base * base : base;
    }
    return r;
}

template <class C>
PolyT<C> PolyT<C>::scaled(const C& c) const {
    PolyT r(vars_);
    if (CoeffTraits<C>::is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& [m, cc] : terms_) {
        C v = cc * c;
        if (!CoeffTraits<C>::is_zero(v)) r.terms_.push_back({m, v});
    }
    return r;
}

template <class C>
C PolyT<C>::evaluate(const std::vector<C>& point) const {
    if (point.size() != vars_.size())
        throw std::invalid_argument("evaluation point length does not match variable count");
    // memoized powers per variable
    std::vector<std::vector<C>> pw(vars_.size());
    for (std::size_t v = 0; v < vars_.size(); ++v) pw[v].push_back(CoeffTraits<C>::one());
    C total = CoeffTraits<C>::zero();
    for (const auto& [m, c] : terms_) {
        C t = c;
        for (std::size_t v = 0; v < vars_.size(); ++v) {
            std::uint16_t e = m.e[v];
            if (e == 0) continue;
            auto& p = pw[v];
            while (p.size() <= e) p.push_back(C(p.back() * point[v]));
            t = t * p[e];
        }
        total += t;
    }
    return total;
}

template <class C>
PolyT<C> PolyT<C>::differentiate(const std::string& var) const {
    return differentiate(var_index(var));
}

template <class C>
PolyT<C> PolyT<C>::differentiate(std::size_t var) const {
    PolyT r(vars_);
    r.terms_.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
        if (m.e[var] == 0) continue;
        Mono d = m;
        d.e[var] -= 1;
        d.deg -= 1;
        C v = c * CoeffTraits<C>::from_long(m.e[var]);
        if (!CoeffTraits<C>::is_zero(v)) r.terms_.push_back({d, v});
    }
    // graded-lex order is preserved within a fixed degree drop only partially; re-sort
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& x, const Term& y) { return MonoGradedLexGreater()(x.first, y.first); });
    return r;
}

template <class C>
PolyT<C> PolyT<C>::substitute(const std::map<std::string, PolyT>& bindings) const {
    // establish target variable list
    const std::vector<std::string>* target = nullptr;
    for (const auto& [k, v] : bindings) {
        if (!target)
            target = &v.vars();
        else if (*target != v.vars())
            throw std::invalid_argument("binding polynomials have mismatched variable lists");
    }
    if (!target) throw std::invalid_argument("substitute requires at least one binding");

    std::vector<const PolyT*> bound(vars_.size(), nullptr);
    for (std::size_t v = 0; v < vars_.size(); ++v) {
        auto it = bindings.find(vars_[v]);
        if (it != bindings.end()) bound[v] = &it->second;
    }
    for (const auto& [m, c] : terms_)
        for (std::size_t v = 0; v < vars_.size(); ++v)
            if (m.e[v] > 0 && !bound[v])
                throw std::invalid_argument("unbound variable in substitute: " + vars_[v]);

    PolyT acc(*target);
    std::vector<std::vector<PolyT>> pw(vars_.size());
    for (std::size_t v = 0; v < vars_.size(); ++v)
        if (bound[v]) pw[v].push_back(constant(CoeffTraits<C>::one(), *target));
    for (const auto& [m, c] : terms_) {
        PolyT t = constant(c, *target);
        for (std::size_t v = 0; v < vars_.size(); ++v) {
            std::uint16_t e = m.e[v];
            if (e == 0) continue;
            auto& p = pw[v];
            while (p.size() <= e) p.push_back(p.back() * (*bound[v]));
            t = t * p[e];
        }
        acc += t;
    }
    return acc;
}

template <class C>
PolyT<C> PolyT<C>::homogenize(const std::string& newvar) const {
    for (const auto& v : vars_)
        if (v == newvar) throw std::invalid_argument("homogenization variable collides: " + newvar);
    std::vector<std::string> nv = vars_;
    nv.push_back(newvar);
    int d = degree();
    PolyT r(nv);
    r.terms_.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
        Mono mm;
        mm.e = m.e;
        mm.e.push_back(static_cast<std::uint16_t>(d - m.deg));
        mm.deg = d;
        r.terms_.push_back({mm, c});
    }
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& x, const Term& y) { return MonoGradedLexGreater()(x.first, y.first); });
    return r;
}

template <class C>
PolyT<C> PolyT<C>::dehomogenize(const std::string& var, const C& value) const {
    std::size_t idx = var_index(var);
    std::vector<std::string> nv;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (i != idx) nv.push_back(vars_[i]);
    std::vector<Term> out;
    out.reserve(terms_.size());
    // powers of value
    std::vector<C> pw{CoeffTraits<C>::one()};
    for (const auto& [m, c] : terms_) {
        std::uint16_t e = m.e[idx];
        while (pw.size() <= e) pw.push_back(C(pw.back() * value));
        Mono mm;
        mm.e.reserve(nv.size());
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (i != idx) mm.e.push_back(m.e[i]);
        mm.deg = m.deg - e;
        out.push_back({std::move(mm), C(c * pw[e])});
    }
    return from_terms(std::move(nv), std::move(out));
}

template <class C>
PolyT<C> PolyT<C>::extend_vars(const std::vector<std::string>& newvars) const {
    std::vector<std::size_t> pos(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(newvars.begin(), newvars.end(), vars_[i]);
        if (it == newvars.end())
            throw std::invalid_argument("extend_vars: variable missing from new list: " + vars_[i]);
        pos[i] = static_cast<std::size_t>(it - newvars.begin());
    }
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
        Mono mm;
        mm.e.assign(newvars.size(), 0);
        for (std::size_t i = 0; i < vars_.size(); ++i) mm.e[pos[i]] = m.e[i];
        mm.deg = m.deg;
        out.push_back({std::move(mm), c});
    }
    return from_terms(newvars, std::move(out));
}

template <class C>
PolyT<C> PolyT<C>::restrict_vars(const std::vector<std::string>& newvars) const {
    std::vector<long> pos(vars_.size(), -1);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(newvars.begin(), newvars.end(), vars_[i]);
        if (it != newvars.end()) pos[i] = it - newvars.begin();
    }
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
        Mono mm;
        mm.e.assign(newvars.size(), 0);
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (m.e[i] == 0) continue;
            if (pos[i] < 0)
                throw std::invalid_argument("restrict_vars: polynomial uses dropped variable " + vars_[i]);
            mm.e[static_cast<std::size_t>(pos[i])] = m.e[i];
        }
        mm.deg = m.deg;
        out.push_back({std::move(mm), c});
    }
    return from_terms(newvars, std::move(out));
}

template <class C>
PolyT<C> PolyT<C>::rename_vars(const std::vector<std::string>& newnames) const {
    if (newnames.size() != vars_.size())
        throw std::invalid_argument("rename_vars: wrong name count");
    PolyT r = *this;
    r.vars_ = newnames;
    return r;
}

template <class C>
std::map<std::vector<std::uint16_t>, PolyT<C>> PolyT<C>::collect(const std::vector<std::size_t>& sel) const {
    std::vector<bool> selected(vars_.size(), false);
    for (auto i : sel) selected.at(i) = true;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (!selected[i]) rest.push_back(vars_[i]);
    std::map<std::vector<std::uint16_t>, std::vector<Term>> groups;
    for (const auto& [m, c] : terms_) {
        std::vector<std::uint16_t> key(sel.size());
        for (std::size_t k = 0; k < sel.size(); ++k) key[k] = m.e[sel[k]];
        Mono mm;
        mm.e.reserve(rest.size());
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (!selected[i]) {
                mm.e.push_back(m.e[i]);
                mm.deg += m.e[i];
            }
        groups[std::move(key)].push_back({std::move(mm), c});
    }
    std::map<std::vector<std::uint16_t>, PolyT> out;
    for (auto& [k, ts] : groups) out.emplace(k, from_terms(rest, std::move(ts)));
    return out;
}

template <class C>
PolyT<C> PolyT<C>::conj_coeffs() const {
    if constexpr (std::is_same_v<C, QC>) {
        PolyT r(vars_);
        r.terms_.reserve(terms_.size());
        for (const auto& [m, c] : terms_) r.terms_.push_back({m, c.conj()});
        return r;
    } else {
        PolyT r(vars_);
        r.terms_.reserve(terms_.size());
        for (const auto& [m, c] : terms_) r.terms_.push_back({m, std::conj(c)});
        return r;
    }
}

template <>
PolyT<MpComplex> PolyT<MpComplex>::conj_coeffs() const {
    PolyT r(vars_);
    r.terms_.reserve(terms_.size());
    for (const auto& [m, c] : terms_) r.terms_.push_back({m, c.conj()});
    return r;
}

template <class C>
PolyT<C> PolyT<C>::from_terms(std::vector<std::string> vars, std::vector<Term> terms) {
    PolyT r(std::move(vars));
    r.terms_ = std::move(terms);
    r.canonicalize();
    return r;
}

template <class C>
void PolyT<C>::canonicalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& x, const Term& y) { return MonoGradedLexGreater()(x.first, y.first); });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().first == t.first)
            out.back().second += t.second;
        else
            out.push_back(std::move(t));
    }
    terms_.clear();
    for (auto& t : out)
        if (!CoeffTraits<C>::is_zero(t.second)) terms_.push_back(std::move(t));
}

// --- exact-only helpers ---

std::optional<Poly> exact_divide(const Poly& p, const Poly& d) {
    if (d.is_zero()) return std::nullopt;
    Poly cur = p;
    std::vector<Poly::Term> quot;
    const auto& lt = d.terms()[0];
    while (!cur.is_zero()) {
        const auto& ct = cur.terms()[0];
        Mono q;
        q.e.resize(ct.first.e.size());
        bool divisible = true;
        for (std::size_t i = 0; i < q.e.size(); ++i) {
            if (ct.first.e[i] < lt.first.e[i]) {
                divisible = false;
                break;
            }
            q.e[i] = static_cast<std::uint16_t>(ct.first.e[i] - lt.first.e[i]);
        }
        if (!divisible) return std::nullopt;
        q.deg = ct.first.deg - lt.first.deg;
        QC c = ct.second / lt.second;
        Poly qt = Poly::from_terms(p.vars(), {{q, c}});
        quot.push_back({q, c});
        cur = cur - qt * d;
    }
    return Poly::from_terms(p.vars(), std::move(quot));
}

Poly integer_primitive(const Poly& p) {
    if (p.is_zero()) return p;
    // lcm of all denominators (re and im), gcd of all numerators
    mpz_class den_lcm(1), num_gcd(0);
    for (const auto& [m, c] : p.terms()) {
        for (const Rat* r : {&c.re, &c.im}) {
            if (*r == 0) continue;
            mpz_class d = r->get_den();
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
        }
    }
    Poly q = p.scaled(QC(Rat(den_lcm)));
    for (const auto& [m, c] : q.terms()) {
        for (const Rat* r : {&c.re, &c.im}) {
            if (*r == 0) continue;
            mpz_class n = r->get_num();
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
        }
    }
    if (num_gcd != 0) q = q.scaled(QC(Rat(1) / Rat(num_gcd)));
    const QC& lead = q.terms()[0].second;
    if (lead.re < 0 || (lead.re == 0 && lead.im < 0)) q = -q;
    return q;
}

bool proportional(const Poly& p, const Poly& q) {
    if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
    if (p.terms().size() != q.terms().size()) return false;
    QC ratio = q.terms()[0].second / p.terms()[0].second;
    for (std::size_t i = 0; i < p.terms().size(); ++i) {
        if (!(p.terms()[i].first == q.terms()[i].first)) return false;
        if (p.terms()[i].second * ratio != q.terms()[i].second) return false;
    }
    return true;
}

// --- text format ---

std::string poly_to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        if (!first) os << " + ";
        first = false;
        os << qc_to_string(c);
        for (std::size_t v = 0; v < p.vars().size(); ++v) {
            if (m.e[v] == 0) continue;
            os << "*" << p.vars()[v];
            if (m.e[v] > 1) os << "^" << m.e[v];
        }
    }
    return os.str();
}

namespace {

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// split on '+' at paren depth 0; a leading '-' binds to the term
std::vector<std::string> split_terms(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char ch = s[i];
        if (ch == '(') depth++;
        if (ch == ')') depth--;
        if (ch == '+' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace

Poly poly_from_string(const std::string& s, const std::vector<std::string>& vars) {
    std::string body = trim(s);
    if (body.empty() || body == "0") return Poly(vars);
    std::vector<Poly::Term> terms;
    for (auto& raw : split_terms(body)) {
        std::string term = trim(raw);
        if (term.empty()) throw std::invalid_argument("empty term in polynomial: " + s);
        bool neg = false;
        while (!term.empty() && (term[0] == '-' || term[0] == '+')) {
            if (term[0] == '-') neg = !neg;
            term = trim(term.substr(1));
        }
        // split into *-separated factors at depth 0
        std::vector<std::string> factors;
        {
            std::string cur;
            int depth = 0;
            for (char ch : term) {
                if (ch == '(') depth++;
                if (ch == ')') depth--;
                if (ch == '*' && depth == 0) {
                    factors.push_back(trim(cur));
                    cur.clear();
                } else
                    cur += ch;
            }
            factors.push_back(trim(cur));
        }
        QC coeff(1);
        Mono m = Mono::unit(vars.size());
        for (auto& f : factors) {
            if (f.empty()) continue;
            if (f[0] == '(' || f[0] == '-' || (f[0] >= '0' && f[0] <= '9')) {
                coeff *= qc_from_string(f);
                continue;
            }
            std::string name = f;
            long exp = 1;
            auto caret = f.find('^');
            if (caret != std::string::npos) {
                name = trim(f.substr(0, caret));
                exp = std::stol(f.substr(caret + 1));
                if (exp < 0) throw std::invalid_argument("negative exponent in: " + s);
            }
            auto it = std::find(vars.begin(), vars.end(), name);
            if (it == vars.end()) throw std::invalid_argument("unknown variable in polynomial: " + name);
            std::size_t vi = static_cast<std::size_t>(it - vars.begin());
            m.e[vi] = static_cast<std::uint16_t>(m.e[vi] + exp);
            m.deg += static_cast<int>(exp);
        }
        if (neg) coeff = -coeff;
        terms.push_back({m, coeff});
    }
    return Poly::from_terms(vars, std::move(terms));
}

template class PolyT<QC>;
template class PolyT<std::complex<double>>;

}  // namespace centerfocus
