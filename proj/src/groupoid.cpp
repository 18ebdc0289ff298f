#include "quasiq/groupoid.hpp"

#include <stdexcept>

namespace qq {

PointVBGroupoid PointVBGroupoid::make(int c, int e, const Mat& d) {
    if (c < 0 || e < 0) throw std::invalid_argument("negative dimension");
    if (d.rows != e || d.cols != c) throw std::invalid_argument("boundary map has wrong shape");
    PointVBGroupoid G;
    G.c = c;
    G.e = e;
    G.d = d;
    std::vector<std::string> labels;
    for (int a = 0; a < c; ++a) labels.push_back("gam" + std::to_string(a));
    for (int i = 0; i < e; ++i) labels.push_back("eps" + std::to_string(i));
    G.gens = make_gens(labels, std::vector<int>(c + e, 1));
    G.ps = make_phase(G.gens, 2, "p_");

    const int N = c + e;
    const int S = 2 * c + e;
    // The annihilator of the graph: (l0,l1,l2) with l0 o m + l1 o pr1 + l2 o pr2 = 0.
    Mat M(S, 3 * N);
    for (int a = 0; a < c; ++a) {
        M(a, 0 * N + a) += 1;      // m*: gam -> gam + gam'
        M(c + a, 0 * N + a) += 1;
        M(a, 1 * N + a) += 1;      // pr1*: gam -> gam'
        M(c + a, 2 * N + a) += 1;  // pr2*: gam -> gam
    }
    for (int i = 0; i < e; ++i) {
        M(2 * c + i, 0 * N + c + i) += 1;
        M(2 * c + i, 1 * N + c + i) += 1;  // pr1*: eps -> eps + d gam
        for (int a = 0; a < c; ++a) M(c + a, 1 * N + c + i) += d(i, a);
        M(2 * c + i, 2 * N + c + i) += 1;
    }
    for (const auto& v : nullspace(M)) G.ann.push_back(to_dense(v, 3 * N));

    std::vector<std::string> cl;
    for (int a = 0; a < c; ++a) cl.push_back("gam'" + std::to_string(a));
    for (int a = 0; a < c; ++a) cl.push_back("gam" + std::to_string(a));
    for (int i = 0; i < e; ++i) cl.push_back("eps" + std::to_string(i));
    for (size_t r = 0; r < G.ann.size(); ++r) cl.push_back("nu" + std::to_string(r));
    G.conormal = make_gens(cl, std::vector<int>(cl.size(), 1));

    auto sg = [&](int k) { return ExtElement::generator(G.conormal, k); };
    for (int a = 0; a < c; ++a) {
        G.m_img.push_back(sg(a) + sg(c + a));
        G.pr1_img.push_back(sg(a));
        G.pr2_img.push_back(sg(c + a));
    }
    for (int i = 0; i < e; ++i) {
        G.m_img.push_back(sg(2 * c + i));
        ExtElement t = sg(2 * c + i);
        for (int a = 0; a < c; ++a)
            if (!d(i, a).is_zero()) t += d(i, a) * sg(c + a);
        G.pr1_img.push_back(t);
        G.pr2_img.push_back(sg(2 * c + i));
    }
    return G;
}

ExtElement PointVBGroupoid::t_star(const ExtElement& f) const {
    std::vector<ExtElement> img;
    for (int a = 0; a < c; ++a) img.push_back(ExtElement::generator(gens, gam(a)));
    for (int i = 0; i < e; ++i) {
        ExtElement t = ExtElement::generator(gens, eps(i));
        for (int a = 0; a < c; ++a)
            if (!d(i, a).is_zero()) t += d(i, a) * ExtElement::generator(gens, gam(a));
        img.push_back(t);
    }
    return substitute(f, img, gens);
}

ExtElement PointVBGroupoid::u_star(const ExtElement& f) const {
    std::vector<ExtElement> img;
    for (int a = 0; a < c; ++a) img.emplace_back(gens);
    for (int i = 0; i < e; ++i) img.push_back(ExtElement::generator(gens, eps(i)));
    return substitute(f, img, gens);
}

ExtElement PointVBGroupoid::to_comp(const ExtElement& f, int which) const {
    const auto& img = which == 0 ? m_img : (which == 1 ? pr1_img : pr2_img);
    return substitute(f, img, conormal);
}

bool PointVBGroupoid::is_section(const ExtElement& sym) const {
    for (const auto& [m, coef] : sym.terms())
        for (auto g : m) {
            bool ok = (g >= c && g < N()) || (g >= N() && g < N() + c);
            if (!ok) return false;
        }
    return true;
}

ExtElement PointVBGroupoid::right_ext(const ExtElement& section) const {
    std::vector<ExtElement> img;
    for (int a = 0; a < c; ++a) img.push_back(ps->x(gam(a)));
    for (int i = 0; i < e; ++i) {
        ExtElement t = ps->x(eps(i));
        for (int a = 0; a < c; ++a)
            if (!d(i, a).is_zero()) t += d(i, a) * ps->x(gam(a));
        img.push_back(t);
    }
    for (int k = 0; k < N(); ++k) img.push_back(ps->p(k));
    return substitute(section, img, ps->gens);
}

ExtElement PointVBGroupoid::left_ext(const ExtElement& section) const {
    std::vector<ExtElement> img;
    for (int k = 0; k < N(); ++k) img.push_back(ps->x(k));
    for (int a = 0; a < c; ++a) {
        ExtElement t = ps->p(gam(a));
        for (int i = 0; i < e; ++i)
            if (!d(i, a).is_zero()) t -= d(i, a) * ps->p(eps(i));
        img.push_back(t);
    }
    for (int i = 0; i < e; ++i) img.push_back(ps->p(eps(i)));
    return substitute(section, img, ps->gens);
}

ExtElement PointVBGroupoid::u_star_phase(const ExtElement& sym) const {
    std::vector<ExtElement> img;
    for (int a = 0; a < c; ++a) img.emplace_back(ps->gens);
    for (int i = 0; i < e; ++i) img.push_back(ps->x(eps(i)));
    for (int k = 0; k < N(); ++k) img.push_back(ps->p(k));
    return substitute(sym, img, ps->gens);
}

std::optional<ExtElement> PointVBGroupoid::section_of_right(const ExtElement& Y) const {
    ExtElement s = u_star_phase(Y);
    if (!is_section(s)) return std::nullopt;
    if (!(right_ext(s) == Y)) return std::nullopt;
    return s;
}

ExtElement PointVBGroupoid::mul_residual(const ExtElement& sym) const {
    const int n = N();
    ExtElement R(conormal);
    const int nu0 = 2 * c + e;
    for (int j = 0; j <= n; ++j) {
        ExtElement P = ps->arity_part(sym, j);
        if (P.is_zero()) continue;
        for (int k = 0; k < 3; ++k) {
            const auto& base = k == 0 ? m_img : (k == 1 ? pr1_img : pr2_img);
            std::vector<ExtElement> img = base;
            for (int a = 0; a < n; ++a) {
                ExtElement mom(conormal);
                for (size_t r = 0; r < ann.size(); ++r)
                    if (!ann[r][k * n + a].is_zero())
                        mom += ann[r][k * n + a] * ExtElement::generator(conormal, nu0 + static_cast<int>(r));
                img.push_back(mom);
            }
            ExtElement Pk = substitute(P, img, conormal);
            if (k == 0 || (j % 2) == 1) R += Pk;
            else R -= Pk;
        }
    }
    return R;
}

MulReport is_multiplicative(const ExtElement& sym, const PointVBGroupoid& G) {
    MulReport rep;
    ExtElement R = G.mul_residual(sym);
    if (!R.is_zero()) {
        rep.ok = false;
        rep.check.add_poly(R, {}, "escapes the graph ideal");
    }
    return rep;
}

MulReport is_multiplicative(const Derivation& X, const PointVBGroupoid& G) {
    if (!same_gens(X.gens, G.gens)) throw std::invalid_argument("is_multiplicative: groupoid/space mismatch");
    MulReport rep;
    ExtElement R = G.mul_residual(symbol(*G.ps, X));
    if (R.is_zero()) return rep;
    rep.ok = false;
    // The ideal generator lambda_r whose image leaves the ideal is the coefficient of nu_r.
    const int nu0 = 2 * G.c + G.e;
    for (const auto& [m, coef] : R.terms()) {
        Witness w;
        for (auto g : m)
            if (g >= nu0) w.tuple.push_back(g - nu0);
        if (!w.tuple.empty()) {
            const auto& lam = G.ann[w.tuple[0]];
            for (size_t i = 0; i < lam.size(); ++i)
                if (!lam[i].is_zero()) w.values.emplace_back(static_cast<int>(i), lam[i]);
        }
        w.note = "ideal generator lambda_" + (w.tuple.empty() ? std::string("?") : std::to_string(w.tuple[0])) +
                 " maps outside the ideal";
        rep.check.add(std::move(w));
    }
    return rep;
}

MulReport is_multiplicative_function(const ExtElement& F, const PointVBGroupoid& G) {
    MulReport rep;
    ExtElement R = G.to_comp(F, 0) - G.to_comp(F, 1) - G.to_comp(F, 2);
    if (!R.is_zero()) {
        rep.ok = false;
        rep.check.add_poly(R, {}, "m*F - pr1*F - pr2*F");
    }
    return rep;
}

SymbolSpace symbol_space(const PointVBGroupoid& G, int xdeg, int pdeg, bool ambient) {
    std::vector<int> xs, pss;
    for (int k = 0; k < G.N(); ++k) {
        xs.push_back(k);
        pss.push_back(G.N() + k);
    }
    MonomialBasis basis(odd_monomials(xs, xdeg, pss, pdeg));
    int n = basis.size();
    if (ambient) {
        std::vector<SparseVec> all;
        for (int k = 0; k < n; ++k) all.push_back(SparseVec{{k, Scalar(1)}});
        Subspace sp(n, all);
        return SymbolSpace{xdeg, pdeg, std::move(basis), std::move(sp)};
    }
    std::map<Monomial, SparseVec> rows;
    for (int k = 0; k < n; ++k) {
        ExtElement R = G.mul_residual(ExtElement::monomial(G.ps->gens, basis.monos[k]));
        for (const auto& [m, coef] : R.terms()) rows[m][k] = coef;
    }
    std::vector<SparseVec> cons;
    for (auto& [m, r] : rows) cons.push_back(std::move(r));
    Subspace ker = Subspace::kernel(n, cons);
    return SymbolSpace{xdeg, pdeg, std::move(basis), std::move(ker)};
}

MonomialBasis section_basis(const PointVBGroupoid& G, int m, int j) {
    std::vector<int> es, pg;
    for (int i = 0; i < G.e; ++i) es.push_back(G.eps(i));
    for (int a = 0; a < G.c; ++a) pg.push_back(G.pgam(a));
    return MonomialBasis(odd_monomials(es, m, pg, j));
}

ExtElement section_from_tensor(const PointVBGroupoid& G, const AltTensor& T) {
    if (T.in_dim != G.e || T.out_dim != G.c) throw std::invalid_argument("section tensor has wrong shape");
    ExtElement s(G.ps->gens);
    for (const auto& [idx, out] : T.entries)
        for (const auto& [a, v] : out) {
            ExtElement t = ExtElement::constant(G.ps->gens, v);
            for (int i : idx) t = t * G.ps->x(G.eps(i));
            s += t * G.ps->p(G.gam(a));
        }
    return s;
}

AltTensor tensor_from_section(const PointVBGroupoid& G, const ExtElement& section, int m) {
    AltTensor T(m, G.e, G.c);
    for (const auto& [mono, coef] : section.terms()) {
        std::vector<int> idx;
        int out = -1;
        for (auto g : mono) {
            if (g >= G.c && g < G.N()) idx.push_back(g - G.c);
            else if (g >= G.N() && g < G.N() + G.c && out < 0) out = g - G.N();
            else throw std::invalid_argument("section is not of the form L^m E* (x) C");
        }
        if (static_cast<int>(idx.size()) != m || out < 0) throw std::invalid_argument("section has wrong degree");
        T.add(idx, out, coef);
    }
    return T;
}

}  // namespace qq
