#include "centerfocus/compiled.hpp"

namespace centerfocus {

template <class CT>
CompiledPoly<CT> CompiledPoly<CT>::compile(const Poly& p, mpfr_prec_t prec) {
    CompiledPoly out;
    out.nvars = p.nvars();
    out.coeffs.reserve(p.terms().size());
    out.exps.reserve(p.terms().size() * p.nvars());
    for (const auto& [m, c] : p.terms()) {
        out.coeffs.push_back(ScalarOps<CT>::from_qc(c, prec));
        for (auto e : m.e) {
            if (e > 255) throw std::invalid_argument("compile: exponent exceeds 255");
            out.exps.push_back(static_cast<std::uint8_t>(e));
        }
    }
    return out;
}

template <class CT>
CT CompiledPoly<CT>::eval(const std::vector<std::vector<CT>>& powers, mpfr_prec_t prec) const {
    CT acc = ScalarOps<CT>::zero(prec);
    const std::size_t n = nvars;
    for (std::size_t t = 0; t < coeffs.size(); ++t) {
        CT term = coeffs[t];
        const std::uint8_t* e = exps.data() + t * n;
        for (std::size_t v = 0; v < n; ++v)
            if (e[v]) term = term * powers[v][e[v]];
        acc += term;
    }
    return acc;
}

template <class CT>
CompiledSystem<CT> CompiledSystem<CT>::compile(const std::vector<Poly>& eqs,
                                               const std::vector<std::string>& vars,
                                               mpfr_prec_t prec) {
    CompiledSystem out;
    out.nvars_ = vars.size();
    out.prec_ = prec;
    out.maxexp_.assign(vars.size(), 0);
    for (const auto& raw : eqs) {
        Poly p = raw.vars() == vars ? raw : raw.extend_vars(vars);
        // normalize each equation by its largest coefficient so residuals,
        // tolerances and rank thresholds are scale-free
        if (!p.is_zero()) {
            QC cmax = p.terms()[0].second;
            double best = std::abs(qc_to_dcomplex(cmax));
            for (const auto& [m, c] : p.terms()) {
                double a = std::abs(qc_to_dcomplex(c));
                if (a > best) {
                    best = a;
                    cmax = c;
                }
            }
            p = p.scaled(QC(1) / cmax);
        }
        for (const auto& [m, c] : p.terms())
            for (std::size_t v = 0; v < vars.size(); ++v)
                out.maxexp_[v] = std::max(out.maxexp_[v], static_cast<std::uint8_t>(m.e[v]));
        out.polys_.push_back(CompiledPoly<CT>::compile(p, prec));
        std::vector<CompiledPoly<CT>> row;
        for (std::size_t v = 0; v < vars.size(); ++v)
            row.push_back(CompiledPoly<CT>::compile(p.differentiate(v), prec));
        out.jac_.push_back(std::move(row));
    }
    return out;
}

template <class CT>
void CompiledSystem<CT>::fill_powers(const std::vector<CT>& x,
                                     std::vector<std::vector<CT>>& pw) const {
    pw.resize(nvars_);
    for (std::size_t v = 0; v < nvars_; ++v) {
        auto& col = pw[v];
        col.clear();
        col.push_back(ScalarOps<CT>::from_dcomplex({1.0, 0.0}, prec_));
        for (std::uint8_t e = 1; e <= maxexp_[v]; ++e) col.push_back(CT(col.back() * x[v]));
    }
}

template <class CT>
void CompiledSystem<CT>::eval(const std::vector<std::vector<CT>>& pw, std::vector<CT>& out) const {
    out.clear();
    out.reserve(polys_.size());
    for (const auto& p : polys_) out.push_back(p.eval(pw, prec_));
}

template <class CT>
void CompiledSystem<CT>::eval_jacobian(const std::vector<std::vector<CT>>& pw,
                                       std::vector<std::vector<CT>>& jac) const {
    jac.resize(polys_.size());
    for (std::size_t i = 0; i < polys_.size(); ++i) {
        jac[i].clear();
        jac[i].reserve(nvars_);
        for (std::size_t v = 0; v < nvars_; ++v) jac[i].push_back(jac_[i][v].eval(pw, prec_));
    }
}

template struct CompiledPoly<std::complex<double>>;
template struct CompiledPoly<MpComplex>;
template class CompiledSystem<std::complex<double>>;
template class CompiledSystem<MpComplex>;

}  // namespace centerfocus
