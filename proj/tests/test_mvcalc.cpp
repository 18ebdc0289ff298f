#include "doctest.h"
#include "quasiq/groupoid.hpp"
#include "quasiq/l2cat.hpp"
#include "quasiq/phase.hpp"
#include "quasiq/qla.hpp"
#include "quasiq/random.hpp"

using namespace qq;

static Derivation rand_der(Rng& r, const Gens& g, int k) {
    Derivation X = Derivation::zero(g, k);
    int N = g->size();
    for (int a = 0; a < N; ++a) {
        int target = g->degrees[a] + k;
        if (target < 0) continue;
        for (const auto& t : increasing_tuples(N, target)) X.values[a].add_term(Monomial(t.begin(), t.end()), r.entry(Scalar(1, 2)));
    }
    return X;
}

static ExtElement rand_poly(Rng& r, const Gens& g, int deg) {
    ExtElement f(g);
    for (const auto& t : increasing_tuples(g->size(), deg)) f.add_term(Monomial(t.begin(), t.end()), r.entry(Scalar(1, 2)));
    return f;
}

static ExtElement gen(const Gens& g, int i) { return ExtElement::generator(g, i); }

TEST_CASE("CE differential of so(3)") {
    auto g = odd_gens(3, "t");
    Derivation Q = ce_differential(so3_lie().bracket, g);
    CHECK(Q.values[2] == -(gen(g, 0) * gen(g, 1)));
    CHECK(Q.values[0] == -(gen(g, 1) * gen(g, 2)));
    CHECK(Q.values[1] == gen(g, 0) * gen(g, 2));
    CHECK(commutator(Q, Q).is_zero());
    CHECK(square(Q).is_zero());
    CHECK(ce_differential(AltTensor(2, 3, 3), g).is_zero());

    Derivation F = ce_differential(failing_jacobi().bracket, g);
    CHECK_FALSE(square(F).is_zero());
    CHECK(commutator(F, F) == Scalar(2) * square(F));
}

TEST_CASE("commutator of coordinate derivations") {
    auto g = odd_gens(2, "t");
    Derivation D1 = Derivation::zero(g, -1), T = Derivation::zero(g, 0), D2 = Derivation::zero(g, -1);
    D1.values[0] = ExtElement::constant(g, Scalar(1));
    T.values[1] = gen(g, 0);
    D2.values[1] = ExtElement::constant(g, Scalar(1));
    CHECK(commutator(D1, T) == D2);
    // Even X: [X, X] = 0.
    CHECK(commutator(T, T).is_zero());
}

TEST_CASE("commutator: antisymmetry, Jacobi, Leibniz") {
    Rng r(31);
    auto g = odd_gens(4, "x");
    for (int trial = 0; trial < 20; ++trial) {
        int kx = r.below(3), ky = r.below(3), kz = r.below(3);
        Derivation X = rand_der(r, g, kx), Y = rand_der(r, g, ky), Z = rand_der(r, g, kz);
        Scalar s = ((kx * ky) % 2) ? Scalar(1) : Scalar(-1);
        CHECK(commutator(X, Y) == s * commutator(Y, X));
        Scalar sxy = ((kx * ky) % 2) ? Scalar(-1) : Scalar(1);
        CHECK(commutator(X, commutator(Y, Z)) == commutator(commutator(X, Y), Z) + sxy * commutator(Y, commutator(X, Z)));
        ExtElement f = rand_poly(r, g, 1 + r.below(2)), h = rand_poly(r, g, 1 + r.below(2));
        Derivation C = commutator(X, Y);
        int fd = f.is_zero() ? 0 : f.degree();
        Scalar sg = ((fd * (kx + ky)) % 2) ? Scalar(-1) : Scalar(1);
        CHECK(C.apply(f * h) == C.apply(f) * h + sg * (f * C.apply(h)));
    }
}

TEST_CASE("symbol calculus: the bracket of symbols is the commutator") {
    Rng r(1);
    auto g = odd_gens(4, "x");
    PhaseSpace ps(g, 2);
    for (int trial = 0; trial < 20; ++trial)
        for (int kx = 0; kx <= 2; ++kx)
            for (int ky = 0; ky <= 2; ++ky) {
                Derivation X = rand_der(r, g, kx), Y = rand_der(r, g, ky);
                ExtElement sx = symbol(ps, X), sy = symbol(ps, Y);
                ExtElement f = gen(g, 0) * gen(g, 2) + gen(g, 1);
                CHECK(pbracket(ps, sx, ps.lift(f)) == ps.lift(X.apply(f)));
                CHECK(pbracket(ps, sx, sy) == symbol(ps, commutator(X, Y)));
                CHECK(derivation_of(ps, sx, kx) == X);
            }
}

TEST_CASE("schouten bracket") {
    Rng r(32);
    auto g = odd_gens(3, "x");
    Phase ps = make_phase(g, 2);
    auto rnd = [&](int xdeg, int pdeg) {
        std::vector<int> xs{0, 1, 2}, pp{3, 4, 5};
        ExtElement s(ps->gens);
        for (const auto& m : odd_monomials(xs, xdeg, pp, pdeg)) s.add_term(m, r.entry(Scalar(1, 2)));
        return MultiDerivation{ps, s};
    };
    for (int trial = 0; trial < 20; ++trial) {
        MultiDerivation P = rnd(r.below(3), 1 + r.below(2)), R = rnd(r.below(3), 1 + r.below(2)), T = rnd(r.below(2), 1 + r.below(2));
        MultiDerivation PR = schouten(P, R);
        if (!PR.sym.is_zero() && P.arity() > 0 && R.arity() > 0) CHECK(PR.arity() == P.arity() + R.arity() - 1);
        // Graded Jacobi with shifted degrees |P| - 2.
        auto deg = [&](const MultiDerivation& M) { return M.sym.is_zero() ? 0 : M.sym.degree() - 2; };
        Scalar s = ((deg(P) * deg(R)) % 2) ? Scalar(-1) : Scalar(1);
        CHECK(schouten(P, schouten(R, T)).sym == schouten(schouten(P, R), T).sym + s * schouten(R, schouten(P, T)).sym);
        // Leibniz in the second slot against a function.
        ExtElement f = ps->lift(rand_poly(r, g, 1)), h = ps->lift(rand_poly(r, g, 1));
        MultiDerivation F{ps, f * h};
        int dp = deg(P);
        Scalar sl = ((dp * 1) % 2) ? Scalar(-1) : Scalar(1);
        CHECK(schouten(P, F).sym == pbracket(*ps, P.sym, f) * h + sl * (f * pbracket(*ps, P.sym, h)));
    }
    // The linear bivector of so(3) is Poisson.
    Phase ev = even_phase(3);
    ExtElement Pi(ev->gens);
    for (const auto& [t, o] : so3_lie().bracket.entries)
        for (const auto& [k, v] : o) Pi += v * ev->x(k) * ev->p(t[0]) * ev->p(t[1]);
    LinearPolyMVF P{ev, Pi};
    CHECK(linear_schouten(P, P).sym.is_zero());
    ExtElement Pf(ev->gens);
    for (const auto& [t, o] : failing_jacobi().bracket.entries)
        for (const auto& [k, v] : o) Pf += v * ev->x(k) * ev->p(t[0]) * ev->p(t[1]);
    LinearPolyMVF F{ev, Pf};
    CHECK_FALSE(linear_schouten(F, F).sym.is_zero());
    CHECK(linear_schouten(F, F).mv_degree() == 3);
    // Constant bivectors commute.
    LinearPolyMVF c1{ev, ev->p(0) * ev->p(1)}, c2{ev, ev->p(1) * ev->p(2) + ev->p(0) * ev->p(2)};
    CHECK(linear_schouten(c1, c2).sym.is_zero());
}

TEST_CASE("sigma compatibility of linear multivector fields") {
    Rng r(2);
    auto g = odd_gens(3, "x");
    PhaseSpace odd(g, 2);
    Phase ev = even_phase(3);
    for (int trial = 0; trial < 100; ++trial) {
        int m1 = 2 + r.below(2), m2 = 2 + r.below(2);
        auto rnd = [&](int m) {
            ExtElement s(ev->gens);
            for (int a = 0; a < 3; ++a)
                for (const auto& t : increasing_tuples(3, m)) {
                    ExtElement w = ExtElement::constant(ev->gens, r.entry(Scalar(1, 2))) * ev->x(a);
                    for (int i : t) w = w * ev->p(i);
                    s += w;
                }
            return LinearPolyMVF{ev, s};
        };
        auto A = rnd(m1), B = rnd(m2);
        CHECK(sigma_map(linear_schouten(A, B), odd) == pbracket(odd, sigma_map(A, odd), sigma_map(B, odd)));
        CHECK(sigma_inverse(sigma_map(A, odd), odd, ev).sym == A.sym);
    }
    // so(3): sigma(Pi) is the symbol of the CE differential (up to the ordering sign of the convention).
    QuasiQ S = from_l2(so3_lie());
    DualQuasiPoisson D = dual_quasi_poisson(S);
    CHECK(sigma_map(D.Pi, *S.G.ps) == symbol(*S.G.ps, S.Q));
}

TEST_CASE("multiplicativity") {
    Rng r(33);
    for (int trial = 0; trial < 100; ++trial) {
        L2Algebra L = random_valid_l2(r, 1 + r.below(3), 1 + r.below(3));
        QuasiQ S = from_l2(L);
        CHECK(is_multiplicative(S.Q, S.G).ok);
    }
    Mat d(2, 1);
    d(0, 0) = Scalar(1);
    PointVBGroupoid G = PointVBGroupoid::make(1, 2, d);
    CHECK(is_multiplicative(Derivation::zero(G.gens, 1), G).ok);
    // gam -> eps0 eps1, eps -> 0.
    Derivation X = Derivation::zero(G.gens, 1);
    X.values[G.gam(0)] = gen(G.gens, G.eps(0)) * gen(G.gens, G.eps(1));
    MulReport m = is_multiplicative(X, G);
    CHECK_FALSE(m.ok);
    REQUIRE(m.check.total > 0);
    CHECK_FALSE(m.check.witnesses[0].values.empty());
    // With d = 0 it still fails: gam -> f(eps) is not additive in gam. gam -> eps0 gam is.
    PointVBGroupoid G0 = PointVBGroupoid::make(1, 2, Mat(2, 1));
    Derivation X0 = Derivation::zero(G0.gens, 1);
    X0.values[G0.gam(0)] = gen(G0.gens, G0.eps(0)) * gen(G0.gens, G0.eps(1));
    CHECK_FALSE(is_multiplicative(X0, G0).ok);
    X0.values[G0.gam(0)] = gen(G0.gens, G0.eps(0)) * gen(G0.gens, G0.gam(0));
    CHECK(is_multiplicative(X0, G0).ok);
}

TEST_CASE("right and left extensions") {
    // String example: q^r(theta_C) = det since t = s when d = 0.
    QuasiQ S = from_l2(string_so3());
    Derivation qr = q_right(S);
    ExtElement det = gen(S.G.gens, S.G.eps(0)) * gen(S.G.gens, S.G.eps(1)) * gen(S.G.gens, S.G.eps(2));
    CHECK(qr.values[S.G.gam(0)] == det);
    for (int i = 0; i < 3; ++i) CHECK(qr.values[S.G.eps(i)].is_zero());

    // d = id on R^3, K = det e0: q^l - q^r on theta_E0 is -dK = -det.
    L2Algebra L = L2Algebra::zero(3, 3);
    L.d = Mat::identity(3);
    L.K.add({0, 1, 2}, 0, Scalar(1));
    QuasiQ T = from_l2(L);
    ExtElement det3 = gen(T.G.gens, T.G.eps(0)) * gen(T.G.gens, T.G.eps(1)) * gen(T.G.gens, T.G.eps(2));
    Derivation diff = q_left(T) - q_right(T);
    CHECK(diff.values[T.G.eps(0)] == -det3);
    CHECK(diff.values[T.G.eps(1)].is_zero());
    CHECK(section_from_tensor(T.G, AltTensor(3, 3, 3)).is_zero());

    // sigma -> sigma^r - sigma^l lands in multiplicative fields, and left and right extensions commute,
    // so the differential of the groupoid dgla squares to zero on sections (m = 1, 2).
    Rng r(34);
    for (int trial = 0; trial < 30; ++trial) {
        int e = 1 + r.below(3), c = 1 + r.below(3);
        PointVBGroupoid G = PointVBGroupoid::make(c, e, random_mat(r, e, c, Scalar(1, 2)));
        for (int m = 1; m <= 2; ++m) {
            ExtElement s = section_from_tensor(G, random_alt(r, m, e, c, Scalar(1, 2)));
            ExtElement t = section_from_tensor(G, random_alt(r, 3 - m, e, c, Scalar(1, 2)));
            ExtElement ds = G.right_ext(s) - G.left_ext(s);
            CHECK(is_multiplicative(ds, G).ok);
            CHECK(pbracket(*G.ps, G.left_ext(s), G.right_ext(t)).is_zero());
            CHECK(G.section_of_right(G.right_ext(s)) == s);
            // The section recovered from d(sigma)'s right part.
            CHECK(tensor_from_section(G, *G.section_of_right(G.right_ext(s)), m) == tensor_from_section(G, s, m));
        }
    }
}
