#include "quasiq/qla.hpp"

#include <stdexcept>

namespace qq {

namespace {

using Vec = std::vector<Scalar>;

void check_shape(const QuasiQ& S) {
    const auto& G = S.G;
    if (!same_gens(S.Q.gens, G.gens)) throw std::invalid_argument("Q lives on a different generator set");
    if (S.Q.degree != 1) throw std::invalid_argument("Q must have degree 1");
    if (S.q.arity != 3 || S.q.in_dim != G.e || S.q.out_dim != G.c) throw std::invalid_argument("q has wrong shape");
}

// Image of a derivation's generator values under an algebra map.
ExtElement eps_only(const PointVBGroupoid& G, const ExtElement& f) {
    for (const auto& [m, c] : f.terms())
        for (auto g : m)
            if (g < G.c) throw std::invalid_argument("expected a function of the eps generators only");
    return f;
}

AltTensor tensor_of_eps_form(const PointVBGroupoid& G, const ExtElement& f, int k) {
    AltTensor T(k, G.e, 1);
    for (const auto& [m, c] : f.terms()) {
        std::vector<int> idx;
        for (auto g : m) {
            if (g < G.c || g >= G.N()) throw std::invalid_argument("form involves non-eps generators");
            idx.push_back(g - G.c);
        }
        if (static_cast<int>(idx.size()) != k) throw std::invalid_argument("form has wrong degree");
        T.add(idx, 0, c);
    }
    return T;
}

// Q restricted to the units, as a derivation killing gam.
Derivation unit_part(const QuasiQ& S) {
    const auto& G = S.G;
    Derivation Q0 = Derivation::zero(G.gens, 1);
    for (int i = 0; i < G.e; ++i) Q0.values[G.eps(i)] = G.u_star(S.Q.values[G.eps(i)]);
    return Q0;
}

}  // namespace

AltTensor h_bracket(const L2Algebra& L) {
    L.validate();
    const int c = L.c, e = L.e, N = c + e;
    AltTensor B(2, N, N);
    const Scalar half(1, 2);
    for (int a = 0; a < c; ++a)
        for (int b = a + 1; b < c; ++b) {
            Vec v = vscale(half, vsub(L.nab(L.bd(unit_vec(c, a)), unit_vec(c, b)), L.nab(L.bd(unit_vec(c, b)), unit_vec(c, a))));
            for (int k = 0; k < c; ++k) B.add({a, b}, k, v[k]);
        }
    for (int i = 0; i < e; ++i)
        for (int a = 0; a < c; ++a)
            for (const auto& [k, v] : L.nabla.eval({i, a})) B.add({c + i, a}, k, v);
    for (const auto& [t, out] : L.bracket.entries)
        for (const auto& [k, v] : out) B.add({c + t[0], c + t[1]}, c + k, v);
    B.prune();
    return B;
}

QuasiQ from_l2(const L2Algebra& L) {
    PointVBGroupoid G = PointVBGroupoid::make(L.c, L.e, L.d);
    Derivation Q = ce_differential(h_bracket(L), G.gens);
    return QuasiQ{std::move(G), std::move(Q), L.K};
}

L2Algebra to_l2(const QuasiQ& S, bool check) {
    check_shape(S);
    if (check) {
        Report r = verify_quasi_q(S);
        if (!r.pass()) throw std::invalid_argument("to_l2: structure fails verify_quasi_q");
    }
    const auto& G = S.G;
    L2Algebra L = L2Algebra::zero(G.e, G.c);
    L.d = G.d;
    L.K = S.q;
    auto coef = [&](int k, int u, int v) { return S.Q.values[k].coeff(Monomial{uint8_t(u), uint8_t(v)}); };
    for (int k = 0; k < G.e; ++k)
        for (int i = 0; i < G.e; ++i)
            for (int j = i + 1; j < G.e; ++j) L.bracket.add({i, j}, k, -coef(G.eps(k), G.eps(i), G.eps(j)));
    // Q(x_al) = -sum b^al_{uv} x_u x_v, and [e_i, c_a] = -b_{a, eps i} = coefficient of x_a x_eps_i.
    for (int al = 0; al < G.c; ++al)
        for (int i = 0; i < G.e; ++i)
            for (int a = 0; a < G.c; ++a) L.nabla.add({i, a}, al, coef(G.gam(al), G.gam(a), G.eps(i)));
    L.bracket.prune();
    L.nabla.prune();
    return L;
}

ExtElement q_section(const QuasiQ& S) { return section_from_tensor(S.G, S.q); }

Derivation q_right(const QuasiQ& S) { return derivation_of(*S.G.ps, S.G.right_ext(q_section(S)), 2); }

Derivation q_left(const QuasiQ& S) { return derivation_of(*S.G.ps, S.G.left_ext(q_section(S)), 2); }

Report verify_quasi_q(const QuasiQ& S) {
    check_shape(S);
    Report rep;
    rep.get("multiplicative") = is_multiplicative(S.Q, S.G).check;
    Derivation qr = q_right(S), ql = q_left(S);
    Derivation R = square(S.Q) - (ql - qr);
    auto& h = rep.get("homotopy");
    for (int g = 0; g < S.G.gens->size(); ++g) h.add_poly(R.values[g], {g}, "Q^2 - (q^l - q^r) on " + S.G.gens->labels[g]);
    Derivation I = commutator(S.Q, qr);
    auto& inv = rep.get("invariance");
    for (int g = 0; g < S.G.gens->size(); ++g) inv.add_poly(I.values[g], {g}, "[Q, q^r] on " + S.G.gens->labels[g]);
    return rep;
}

NatTransfView q_as_nat_transf(const QuasiQ& S) {
    check_shape(S);
    const auto& G = S.G;
    NatTransfView v;
    v.alpha = S.q;
    v.alpha *= Scalar(-1);
    v.alpha.prune();
    // alpha as a vertical derivation along the units: gam_a -> alpha^a(eps), eps -> 0.
    Derivation A = Derivation::zero(G.gens, 2);
    for (int a = 0; a < G.c; ++a)
        for (const auto& [t, out] : v.alpha.entries)
            for (const auto& [k, val] : out)
                if (k == a) {
                    ExtElement m = ExtElement::constant(G.gens, val);
                    for (int i : t) m = m * ExtElement::generator(G.gens, G.eps(i));
                    A.values[G.gam(a)] += m;
                }

    auto& unit = v.report.get("unit");
    if (!G.is_section(section_from_tensor(G, v.alpha))) unit.add(Witness{{}, {}, "alpha leaves the algebroid"});

    auto& src = v.report.get("source");
    for (int i = 0; i < G.e; ++i) src.add_poly(A.apply(ExtElement::generator(G.gens, G.eps(i))), {i}, "Ts(alpha)");

    Derivation Q0 = unit_part(S);
    Derivation Q2 = square(S.Q);
    auto& tgt = v.report.get("target");
    auto& exch = v.report.get("exchange");
    for (int i = 0; i < G.e; ++i) {
        ExtElement e_i = ExtElement::generator(G.gens, G.eps(i));
        ExtElement ta = G.u_star(A.apply(G.t_star(e_i)));
        tgt.add_poly(ta - Q0.apply(Q0.values[G.eps(i)]), {i}, "Tt(alpha) - Q0^2");
        exch.add_poly(ta - Q2.values[G.eps(i)], {G.eps(i)}, "composable square on eps");
    }
    for (int a = 0; a < G.c; ++a) {
        const ExtElement& al = A.values[G.gam(a)];
        exch.add_poly(G.t_star(al) - al - Q2.values[G.gam(a)], {G.gam(a)}, "composable square on gam");
    }
    return v;
}

AltTensor self_bracket(const PointVBGroupoid& G, const AltTensor& b) {
    ExtElement s = section_from_tensor(G, b);
    ExtElement br = G.right_ext(s), bl = G.left_ext(s);
    auto sec = G.section_of_right(pbracket(*G.ps, br - bl, br));
    if (!sec) throw std::logic_error("self_bracket: bracket of right extensions is not right invariant");
    return tensor_from_section(G, *sec, 3);
}

QuasiQ gauge_point(const AltTensor& b, const QuasiQ& S) {
    check_shape(S);
    const auto& G = S.G;
    if (b.arity != 2 || b.in_dim != G.e || b.out_dim != G.c) throw std::invalid_argument("gauge parameter has wrong shape");
    ExtElement s = section_from_tensor(G, b);
    ExtElement br = G.right_ext(s), bl = G.left_ext(s);
    QuasiQ T = S;
    T.Q = S.Q + derivation_of(*G.ps, bl, 1) - derivation_of(*G.ps, br, 1);
    auto lin = G.section_of_right(pbracket(*G.ps, symbol(*G.ps, S.Q), br));
    if (!lin) throw std::invalid_argument("gauge_point: [Q, b^r] is not right invariant (Q not multiplicative)");
    T.q = S.q + tensor_from_section(G, *lin, 3);
    AltTensor quad = self_bracket(G, b);
    quad *= Scalar(-1, 2);
    T.q += quad;
    T.q.prune();
    return T;
}

DElement quasi_q_element(const SymbolDGLA& D, const QuasiQ& S) {
    check_shape(S);
    if (!D.G || !(D.G->d == S.G.d)) throw std::invalid_argument("quasi_q_element: dgla built over a different groupoid");
    return D.encode(1, q_section(S), symbol(*S.G.ps, S.Q));
}

QuasiQ quasi_q_from_element(const SymbolDGLA& D, const DElement& x) {
    if (!D.G) throw std::invalid_argument("quasi_q_from_element: not a groupoid dgla");
    if (!x.is_zero() && x.degree != 1) throw std::invalid_argument("quasi_q_from_element: element must have degree 1");
    auto [sec, mv] = D.decode(DElement{1, x.v});
    const PointVBGroupoid& G = *D.G;
    return QuasiQ{G, derivation_of(*G.ps, mv, 1), tensor_from_section(G, sec, 3)};
}

DElement section_element(const SymbolDGLA& D, const AltTensor& b) {
    if (!D.G) throw std::invalid_argument("section_element: not a groupoid dgla");
    return D.encode(b.arity - 2, section_from_tensor(*D.G, b), ExtElement(D.ps->gens));
}

// ---- factorization ----

namespace {

L2Algebra direct_sum(const L2Algebra& A, const L2Algebra& B) {
    L2Algebra S = L2Algebra::zero(A.e + B.e, A.c + B.c);
    for (int i = 0; i < A.e; ++i)
        for (int a = 0; a < A.c; ++a) S.d(i, a) = A.d(i, a);
    for (int i = 0; i < B.e; ++i)
        for (int a = 0; a < B.c; ++a) S.d(A.e + i, A.c + a) = B.d(i, a);
    auto shift = [](const AltTensor& T, AltTensor& out, int in_off, int out_off) {
        for (const auto& [t, o] : T.entries) {
            std::vector<int> u = t;
            for (auto& x : u) x += in_off;
            for (const auto& [k, v] : o) out.add(u, k + out_off, v);
        }
    };
    shift(A.bracket, S.bracket, 0, 0);
    shift(B.bracket, S.bracket, A.e, A.e);
    shift(A.K, S.K, 0, 0);
    shift(B.K, S.K, A.e, A.c);
    for (const auto& [t, o] : A.nabla.entries)
        for (const auto& [k, v] : o) S.nabla.add(t, k, v);
    for (const auto& [t, o] : B.nabla.entries)
        for (const auto& [k, v] : o) S.nabla.add({t[0] + A.e, t[1] + A.c}, k + A.c, v);
    return S;
}

}  // namespace

Factorization factor_morphism(const L2Morphism& F) {
    F.validate();
    const L2Algebra &L = F.src, &Lp = F.tgt;
    Factorization out;
    out.product = direct_sum(L, Lp);
    const int E = L.e + Lp.e, C = L.c + Lp.c;
    // b(u, v) = (0, beta(pr_E u, pr_E v)); on the graph of F0 this is the morphism's beta.
    out.b = AltTensor(2, E, C);
    for (const auto& [t, o] : F.beta.entries)
        for (const auto& [k, v] : o) out.b.add(t, L.c + k, v);
    AltTensor minus_b = out.b;
    minus_b *= Scalar(-1);
    out.gauged = gauge_transport(out.product, minus_b).tgt;
    out.gauge = L2Morphism{out.gauged, out.product, Mat::identity(E), Mat::identity(C), out.b};

    Mat I0(E, L.e), I1(C, L.c);
    for (int i = 0; i < L.e; ++i) {
        I0(i, i) = Scalar(1);
        for (int j = 0; j < Lp.e; ++j) I0(L.e + j, i) = F.F0(j, i);
    }
    for (int a = 0; a < L.c; ++a) {
        I1(a, a) = Scalar(1);
        for (int j = 0; j < Lp.c; ++j) I1(L.c + j, a) = F.F1(j, a);
    }
    out.inclusion = L2Morphism{L, out.gauged, I0, I1, AltTensor(2, L.e, C)};

    Mat P0(Lp.e, E), P1(Lp.c, C);
    for (int j = 0; j < Lp.e; ++j) P0(j, L.e + j) = Scalar(1);
    for (int j = 0; j < Lp.c; ++j) P1(j, L.c + j) = Scalar(1);
    out.projection = L2Morphism{out.product, Lp, P0, P1, AltTensor(2, E, Lp.c)};
    return out;
}

// ---- dual side ----

namespace {

// Graph of the dual multiplication on H* = C* + E* over C*: for psi1 = (xi, n1), psi2 = (xi - d^T n1, n2)
// the product is (xi, n1 + n2). The graph is coisotropic for Pi + (-Pi) + (-Pi) iff Pi is multiplicative;
// with Pi linear this is closure of its linear vanishing ideal under the derived bracket.
CheckResult dual_multiplicativity(const PointVBGroupoid& G, const ExtElement& Pi) {
    const int N = G.N(), c = G.c, e = G.e;
    CheckResult res{"multiplicative", {}, 0};
    // Parametrization (xi, n1, n2) -> (product, psi1, psi2) in (H*)^3, H* coordinates ordered C* then E*.
    Mat P(3 * N, c + 2 * e);
    for (int a = 0; a < c; ++a) {
        P(a, a) = 1;
        P(N + a, a) = 1;
        P(2 * N + a, a) = 1;
        for (int i = 0; i < e; ++i) P(2 * N + a, c + i) -= G.d(i, a);
    }
    for (int i = 0; i < e; ++i) {
        P(c + i, c + i) = 1;
        P(c + i, c + e + i) = 1;
        P(N + c + i, c + i) = 1;
        P(2 * N + c + i, c + e + i) = 1;
    }
    std::vector<SparseVec> ann = nullspace(P.transpose());
    Subspace ideal(3 * N, ann);

    Phase ev3 = even_phase(3 * N);
    ExtElement Pi3(ev3->gens);
    for (int k = 0; k < 3; ++k) {
        std::vector<ExtElement> img;
        for (int a = 0; a < N; ++a) img.push_back(ev3->x(k * N + a));
        for (int a = 0; a < N; ++a) img.push_back(ev3->p(k * N + a));
        ExtElement piece = substitute(Pi, img, ev3->gens);
        if (k == 0) Pi3 += piece;
        else Pi3 -= piece;
    }
    auto lin = [&](const SparseVec& v) {
        ExtElement f(ev3->gens);
        for (const auto& [k, x] : v) f += x * ev3->x(k);
        return f;
    };
    for (size_t i = 0; i < ann.size(); ++i)
        for (size_t j = i; j < ann.size(); ++j) {
            ExtElement br = pbracket(*ev3, pbracket(*ev3, Pi3, lin(ann[i])), lin(ann[j]));
            SparseVec v;
            for (const auto& [m, x] : br.terms()) {
                if (m.size() != 1) throw std::logic_error("derived bracket of linear functions is not linear");
                v[m[0]] = x;
            }
            if (!ideal.coords(v)) {
                Witness w{{static_cast<int>(i), static_cast<int>(j)}, {}, "bracket of ideal generators leaves the ideal"};
                for (const auto& [k, x] : v) w.values.emplace_back(k, x);
                res.add(std::move(w));
            }
        }
    return res;
}

}  // namespace

DualQuasiPoisson dual_quasi_poisson(const QuasiQ& S) {
    check_shape(S);
    const auto& G = S.G;
    const int N = G.N();
    DualQuasiPoisson D;
    D.ev = even_phase(N);
    const auto& ev = *D.ev;
    auto z = [&](int k) { return ev.x(k); };
    auto w = [&](int k) { return ev.p(k); };

    // Pi = sum_k z_k * (Q(x_k) with x -> w): the linear bivector of the bracket on H.
    ExtElement Pi(ev.gens);
    for (int k = 0; k < N; ++k)
        for (const auto& [m, c] : S.Q.values[k].terms()) {
            ExtElement t = c * z(k);
            for (auto g : m) t = t * w(g);
            Pi += t;
        }

    // Right-invariant odd frame X_i = w_eps_i + sum_a d(i,a) w_gam_a; left: z_gam shifted by d^T z_eps.
    std::vector<ExtElement> X, W;
    for (int i = 0; i < G.e; ++i) {
        ExtElement x = w(G.eps(i));
        for (int a = 0; a < G.c; ++a)
            if (!G.d(i, a).is_zero()) x += G.d(i, a) * w(G.gam(a));
        X.push_back(x);
        W.push_back(w(G.eps(i)));
    }
    ExtElement pr(ev.gens), pl(ev.gens);
    for (const auto& [t, o] : S.q.entries)
        for (const auto& [al, v] : o) {
            ExtElement y = z(G.gam(al));
            ExtElement yl = y;
            for (int i = 0; i < G.e; ++i)
                if (!G.d(i, al).is_zero()) yl -= G.d(i, al) * z(G.eps(i));
            // The odd side pairs K(x) p; the even side writes y K(w), which differs by the sign of moving p past x^3.
            pr -= v * y * X[t[0]] * X[t[1]] * X[t[2]];
            pl -= v * yl * W[t[0]] * W[t[1]] * W[t[2]];
        }
    D.Pi = LinearPolyMVF{D.ev, Pi};
    D.pi_r = LinearPolyMVF{D.ev, pr};
    D.pi_l = LinearPolyMVF{D.ev, pl};

    D.report.get("multiplicative") = dual_multiplicativity(G, Pi);
    ExtElement half_sq = Scalar(1, 2) * linear_schouten(D.Pi, D.Pi).sym;
    D.report.get("poisson").add_poly(half_sq - (pl - pr), {}, "1/2[Pi,Pi] - (pi^l - pi^r)");
    D.report.get("invariance").add_poly(linear_schouten(D.Pi, D.pi_r).sym, {}, "[Pi, pi^r]");
    return D;
}

// ---- central extensions ----

ExtElement eps_form(const PointVBGroupoid& G, const AltTensor& T) {
    if (T.in_dim != G.e || T.out_dim != 1) throw std::invalid_argument("eps_form: tensor has wrong shape");
    ExtElement f(G.gens);
    for (const auto& [t, o] : T.entries)
        for (const auto& [k, v] : o) {
            ExtElement m = ExtElement::constant(G.gens, v);
            for (int i : t) m = m * ExtElement::generator(G.gens, G.eps(i));
            f += m;
        }
    return f;
}

ExtElement q0_apply(const QuasiQ& S, const ExtElement& f) { return unit_part(S).apply(eps_only(S.G, f)); }

Report cocycle_check(const QuasiQ& S, const ExtElement& h, const ExtElement& xi) {
    check_shape(S);
    const auto& G = S.G;
    if (!same_gens(h.gens(), G.gens) || !same_gens(xi.gens(), G.gens))
        throw std::invalid_argument("cocycle data on a different generator set");
    if (!h.is_zero() && h.degree() != 2) throw std::invalid_argument("h must have degree 2");
    if (!xi.is_zero() && xi.degree() != 3) throw std::invalid_argument("xi must have degree 3");
    eps_only(G, xi);
    Report rep;
    rep.get("multiplicative") = is_multiplicative_function(h, G).check;
    rep.get("multiplicative").id = "multiplicative";
    ExtElement txi = G.t_star(xi);
    rep.get("cocycle_h").add_poly(S.Q.apply(h) - (xi - txi), {}, "Q(h) - (s*xi - t*xi)");
    rep.get("cocycle_xi").add_poly(S.Q.apply(txi) - q_right(S).apply(h), {}, "Q(t*xi) - q^r(h)");
    return rep;
}

QuasiQ central_extend(const QuasiQ& S, const ExtElement& h, const ExtElement& xi) {
    Report pre = cocycle_check(S, h, xi);
    if (!pre.pass()) {
        std::string ids;
        for (const auto& c : pre.checks)
            if (!c.pass()) ids += (ids.empty() ? "" : ", ") + c.id;
        throw std::invalid_argument("central_extend: cocycle_check fails at " + ids);
    }
    const auto& G = S.G;
    Mat d2(G.e, G.c + 1);
    for (int i = 0; i < G.e; ++i)
        for (int a = 0; a < G.c; ++a) d2(i, a) = G.d(i, a);
    QuasiQ T{PointVBGroupoid::make(G.c + 1, G.e, d2), Derivation(), AltTensor(3, G.e, G.c + 1)};
    const auto& H = T.G;
    std::vector<ExtElement> emb;
    for (int a = 0; a < G.c; ++a) emb.push_back(ExtElement::generator(H.gens, H.gam(a)));
    for (int i = 0; i < G.e; ++i) emb.push_back(ExtElement::generator(H.gens, H.eps(i)));
    T.Q = Derivation::zero(H.gens, 1);
    for (int a = 0; a < G.c; ++a) T.Q.values[H.gam(a)] = substitute(S.Q.values[G.gam(a)], emb, H.gens);
    for (int i = 0; i < G.e; ++i) T.Q.values[H.eps(i)] = substitute(S.Q.values[G.eps(i)], emb, H.gens);
    T.Q.values[H.gam(G.c)] = substitute(h, emb, H.gens);
    for (const auto& [t, o] : S.q.entries)
        for (const auto& [k, v] : o) T.q.add(t, k, v);
    for (const auto& [t, o] : tensor_of_eps_form(G, xi, 3).entries)
        for (const auto& [k, v] : o) T.q.add(t, G.c, v);
    T.q.prune();
    return T;
}

std::vector<std::pair<ExtElement, ExtElement>> cocycle_basis(const QuasiQ& S) {
    check_shape(S);
    const auto& G = S.G;
    std::vector<ExtElement> unknowns_h, unknowns_xi;
    for (const auto& t : increasing_tuples(G.N(), 2))
        unknowns_h.push_back(ExtElement::generator(G.gens, t[0]) * ExtElement::generator(G.gens, t[1]));
    for (const auto& t : increasing_tuples(G.e, 3)) {
        ExtElement f = ExtElement::constant(G.gens, Scalar(1));
        for (int i : t) f = f * ExtElement::generator(G.gens, G.eps(i));
        unknowns_xi.push_back(f);
    }
    const int nh = static_cast<int>(unknowns_h.size()), n = nh + static_cast<int>(unknowns_xi.size());
    Derivation qr = q_right(S);
    // Residual blocks of the three conditions, each linear in (h, xi).
    std::map<std::pair<int, Monomial>, SparseVec> rows;
    auto put = [&](int blk, const ExtElement& f, int col) {
        for (const auto& [m, c] : f.terms()) rows[{blk, m}][col] += c;
    };
    for (int j = 0; j < n; ++j) {
        ExtElement h = j < nh ? unknowns_h[j] : ExtElement(G.gens);
        ExtElement xi = j < nh ? ExtElement(G.gens) : unknowns_xi[j - nh];
        put(0, G.to_comp(h, 0) - G.to_comp(h, 1) - G.to_comp(h, 2), j);
        put(1, S.Q.apply(h) - (xi - G.t_star(xi)), j);
        put(2, S.Q.apply(G.t_star(xi)) - qr.apply(h), j);
    }
    std::vector<SparseVec> cons;
    for (auto& [k, r] : rows) {
        for (auto it = r.begin(); it != r.end();) it = it->second.is_zero() ? r.erase(it) : std::next(it);
        if (!r.empty()) cons.push_back(std::move(r));
    }
    std::vector<std::pair<ExtElement, ExtElement>> out;
    Subspace ker = Subspace::kernel(n, cons);
    for (const auto& v : ker.basis()) {
        ExtElement h(G.gens), xi(G.gens);
        for (const auto& [j, c] : v) {
            if (j < nh) h += c * unknowns_h[j];
            else xi += c * unknowns_xi[j - nh];
        }
        out.emplace_back(std::move(h), std::move(xi));
    }
    return out;
}

ExtensionVerdict classify_extension(const QuasiQ& S, const ExtElement& h, const ExtElement& xi, const ExtElement& h2,
                                    const ExtElement& xi2) {
    for (const auto& [hh, xx] : {std::pair{&h, &xi}, std::pair{&h2, &xi2}})
        if (!cocycle_check(S, *hh, *xx).pass()) throw std::invalid_argument("classify_extension: input fails cocycle_check");
    const auto& G = S.G;
    auto pairs = increasing_tuples(G.e, 2);
    // Columns: Q0(b_u) stacked over s*b_u - t*b_u; rows indexed by (block, monomial).
    std::map<std::pair<int, Monomial>, int> row_of;
    std::vector<std::vector<std::pair<std::pair<int, Monomial>, Scalar>>> cols;
    auto add_poly = [&](std::vector<std::pair<std::pair<int, Monomial>, Scalar>>& col, int blk, const ExtElement& f) {
        for (const auto& [m, c] : f.terms()) {
            auto key = std::pair{blk, m};
            row_of.emplace(key, 0);
            col.emplace_back(key, c);
        }
    };
    for (const auto& t : pairs) {
        ExtElement bu = ExtElement::generator(G.gens, G.eps(t[0])) * ExtElement::generator(G.gens, G.eps(t[1]));
        std::vector<std::pair<std::pair<int, Monomial>, Scalar>> col;
        add_poly(col, 0, q0_apply(S, bu));
        add_poly(col, 1, bu - G.t_star(bu));
        cols.push_back(std::move(col));
    }
    std::vector<std::pair<std::pair<int, Monomial>, Scalar>> rhs;
    add_poly(rhs, 0, xi - xi2);
    add_poly(rhs, 1, h - h2);
    int r = 0;
    for (auto& [k, v] : row_of) v = r++;
    ExtensionVerdict out;
    out.rows = r;
    out.unknowns = static_cast<int>(pairs.size());
    Mat A(r, out.unknowns);
    Vec y(r);
    for (int j = 0; j < out.unknowns; ++j)
        for (const auto& [k, v] : cols[j]) A(row_of[k], j) += v;
    for (const auto& [k, v] : rhs) y[row_of[k]] += v;
    SolveResult sr = solve(A, y);
    if (sr.x) {
        out.equivalent = true;
        AltTensor b(2, G.e, 1);
        for (int j = 0; j < out.unknowns; ++j) b.add(pairs[j], 0, (*sr.x)[j]);
        b.prune();
        ExtElement bf = eps_form(G, b);
        out.verified = q0_apply(S, bf) == xi - xi2 && bf - G.t_star(bf) == h - h2;
        out.b = std::move(b);
    } else {
        out.certificate = sr.certificate;
        Vec yA = A.transpose().apply(sr.certificate);
        Scalar yb;
        for (int i = 0; i < r; ++i) yb += sr.certificate[i] * y[i];
        out.verified = vzero(yA) && !yb.is_zero();
    }
    return out;
}

}  // namespace qq
