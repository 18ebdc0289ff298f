#include "doctest.h"
#include "quasiq/dgla.hpp"
#include "quasiq/l2cat.hpp"
#include "quasiq/qla.hpp"
#include "quasiq/random.hpp"

using namespace qq;

static void require_pass(const Report& r) {
    for (const auto& c : r.checks) CHECK_MESSAGE(c.pass(), c.id << " fails " << c.total);
}

static SparseVec random_vec(Rng& r, int n) {
    SparseVec v;
    for (int i = 0; i < n; ++i) {
        Scalar s = r.entry(Scalar(1, 2));
        if (!s.is_zero()) v[i] = s;
    }
    return v;
}

TEST_CASE("Lie algebras in degree zero") {
    require_pass(verify_dgla(lie_dgla(so3_lie().bracket)));
    Report r = verify_dgla(lie_dgla(failing_jacobi().bracket));
    CHECK_FALSE(r.find("jacobi")->pass());
    CHECK(r.find("antisymmetry")->pass());
    REQUIRE(r.find("jacobi")->witnesses.size() == 1);
    CHECK(r.find("jacobi")->witnesses[0].tuple == std::vector<int>{0, 0, 0, 1, 0, 2});
    // A broken antisymmetry is caught too.
    DGLA D = lie_dgla(so3_lie().bracket);
    D.br[{0, 0}][0][0][1] = Scalar(1);
    CHECK_FALSE(verify_dgla(D).find("antisymmetry")->pass());
}

TEST_CASE("builders produce dglas") {
    Rng r(41);
    for (int trial = 0; trial < 8; ++trial) {
        int e = 1 + r.below(3), c = r.below(3);
        if (trial == 0) e = c = 3;
        PointVBGroupoid G = PointVBGroupoid::make(c, e, random_mat(r, e, c, Scalar(1, 2)));
        require_pass(verify_dgla(build_groupoid_dgla(G).D));
        if (e + c <= 4) require_pass(verify_dgla(build_mvf_dgla(G).D));
    }
    for (int n = 1; n <= 4; ++n) require_pass(verify_dgla(build_big_bracket(std::vector<int>(n, 1), 2).D));
    require_pass(verify_dgla(build_big_bracket({1, 1, 2}, 3).D));
    require_pass(verify_dgla(build_big_bracket({1, 2, 2}, 3, -2, 2).D));

    SymbolDGLA Z = build_groupoid_dgla(PointVBGroupoid::make(0, 0, Mat(0, 0)));
    for (int k = -1; k <= 2; ++k) CHECK(Z.D.dim(k) == 0);

    // C = 0: every quadratic derivation of L E* is multiplicative.
    SymbolDGLA A = build_groupoid_dgla(PointVBGroupoid::make(0, 3, Mat(3, 0)));
    CHECK(A.D.dim(1) == 9);
    CHECK(A.D.dim(0) == 9);
    CHECK_THROWS(build_big_bracket({3}, 2));
}

TEST_CASE("differential and brackets of the groupoid dgla") {
    // d(sigma) = sigma^r - sigma^l and [X, sigma] via the right extension.
    L2Algebra L = tautological(so3_lie().bracket);
    QuasiQ S = from_l2(L);
    SymbolDGLA D = build_groupoid_dgla(S.G);
    AltTensor b(2, 3, 3);
    b.add({0, 1}, 2, Scalar(1));
    DElement be = section_element(D, b);
    CHECK(be.degree == 0);
    ExtElement s = section_from_tensor(S.G, b);
    auto [ds, dX] = D.decode(dgla_d(D.D, be));
    CHECK(ds.is_zero());
    CHECK(dX == S.G.right_ext(s) - S.G.left_ext(s));
    DElement x = quasi_q_element(D, S);
    auto [bs, bX] = D.decode(dgla_bracket(D.D, x, be));
    CHECK(bX.is_zero());
    CHECK(S.G.right_ext(bs) == -pbracket(*S.G.ps, symbol(*S.G.ps, S.Q), S.G.right_ext(s)));
    // Sections commute.
    CHECK(dgla_bracket(D.D, be, be).is_zero());
    CHECK(quasi_q_from_element(D, x).Q == S.Q);
    CHECK(quasi_q_from_element(D, x).q == S.q);
}

TEST_CASE("MC elements of the groupoid dgla are quasi Q-structures") {
    QuasiQ S = from_l2(string_so3());
    SymbolDGLA D = build_groupoid_dgla(S.G);
    CHECK(mc_residual(D.D, zero_element(1)).is_zero());
    CHECK(mc_residual(D.D, quasi_q_element(D, S)).is_zero());

    QuasiQ F = from_l2(failing_jacobi());
    SymbolDGLA DF = build_groupoid_dgla(F.G);
    DElement res = mc_residual(DF.D, quasi_q_element(DF, F));
    REQUIRE_FALSE(res.is_zero());
    CHECK(DF.block_part(res, "der") == symbol(*F.G.ps, square(F.Q)));

    Rng r(42);
    int pass = 0, fail = 0;
    for (int trial = 0; trial < 40; ++trial) {
        int e = 1 + r.below(3), c = 1 + r.below(3);
        QuasiQ T = from_l2(random_valid_l2(r, e, c));
        SymbolDGLA M = build_groupoid_dgla(T.G);
        DElement x = quasi_q_element(M, T);
        int how = r.below(3);
        if (how == 1) x = quasi_q_element(M, gauge_point(random_alt(r, 2, e, c, Scalar(1, 2)), T));
        if (how == 2) x = x + DElement{1, random_vec(r, M.D.dim(1))};
        QuasiQ U = quasi_q_from_element(M, x);
        Report vq = verify_quasi_q(U);
        DElement rs = mc_residual(M.D, x);
        CHECK(rs.is_zero() == vq.pass());
        // Component-wise: the section part is -[Q, q^r] o u, the derivation part Q^2 + q^r - q^l.
        CHECK(M.block_part(rs, "der").is_zero() == vq.find("homotopy")->pass());
        CHECK(M.block_part(rs, "sec").is_zero() == vq.find("invariance")->pass());
        (rs.is_zero() ? pass : fail)++;
    }
    CHECK(pass > 10);
    CHECK(fail > 5);
}

TEST_CASE("gauge transformations") {
    Rng r(43);
    for (int trial = 0; trial < 30; ++trial) {
        int e = 1 + r.below(3), c = 1 + r.below(3);
        QuasiQ S = from_l2(random_valid_l2(r, e, c));
        SymbolDGLA D = build_groupoid_dgla(S.G);
        DElement x = quasi_q_element(D, S);
        AltTensor b = random_alt(r, 2, e, c, Scalar(1, 2));
        DElement bx = section_element(D, b);
        DElement g = gauge_transform(D.D, bx, x);
        CHECK(mc_residual(D.D, g).is_zero());
        QuasiQ T = gauge_point(b, S);
        QuasiQ U = quasi_q_from_element(D, g);
        CHECK(U.Q == T.Q);
        CHECK(U.q == T.q);
        CHECK(gauge_transform(D.D, zero_element(0), x) == x);
        // Sections commute, so successive gauges compose additively.
        AltTensor b2 = random_alt(r, 2, e, c, Scalar(1, 2));
        DElement b2x = section_element(D, b2);
        DElement g2 = gauge_transform(D.D, b2x, g);
        CHECK(mc_residual(D.D, g2).is_zero());
        CHECK(g2 == gauge_transform(D.D, bx + b2x, x));
    }
    // The Euler field acts by the degree, so ad is not nilpotent.
    QuasiQ S = from_l2(so3_lie());
    SymbolDGLA D = build_groupoid_dgla(S.G);
    ExtElement euler(S.G.ps->gens);
    for (int a = 0; a < S.G.N(); ++a) euler += S.G.ps->x(a) * S.G.ps->p(a);
    DElement E = D.encode(0, ExtElement(S.G.ps->gens), euler);
    CHECK_THROWS_AS(gauge_transform(D.D, E, quasi_q_element(D, S), 8), std::runtime_error);
}

TEST_CASE("twisted differential") {
    Rng r(44);
    for (int trial = 0; trial < 12; ++trial) {
        int e = 1 + r.below(3), c = 1 + r.below(3);
        QuasiQ S = from_l2(random_valid_l2(r, e, c));
        SymbolDGLA D = build_groupoid_dgla(S.G);
        DElement x = quasi_q_element(D, S);
        TwistedComplex T = twist_differential(D.D, x);
        CHECK(T.report.pass());
        TwistedComplex T0 = twist_differential(D.D, zero_element(1));
        CHECK(T0.D.d == D.D.d);
        DElement y = x + DElement{1, random_vec(r, D.D.dim(1))};
        TwistedComplex Ty = twist_differential(D.D, y);
        CHECK(Ty.report.find("square")->pass());
    }
    QuasiQ F = from_l2(failing_jacobi());
    SymbolDGLA D = build_groupoid_dgla(F.G);
    TwistedComplex T = twist_differential(D.D, quasi_q_element(D, F));
    CHECK(T.report.find("square")->pass());
    CHECK_FALSE(T.report.find("square_zero")->pass());
}

TEST_CASE("big bracket") {
    SymbolDGLA B = build_big_bracket({1, 1, 1}, 2, -2, 2);
    const PhaseSpace& ps = *B.ps;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            ExtElement v = pbracket(ps, ps.x(a), ps.p(b));
            CHECK(v == ExtElement::constant(ps.gens, Scalar(a == b ? 1 : 0)));
            DElement th = B.encode(-1, ExtElement(ps.gens), ps.x(a)), el = B.encode(-1, ExtElement(ps.gens), ps.p(b));
            CHECK(B.decode(dgla_bracket(B.D, th, el)).second == v);
        }
    // {mu, mu} = 2 Jacobiator: compare with the square of the CE differential.
    for (const L2Algebra& L : {so3_lie(), failing_jacobi()}) {
        Derivation Q = ce_differential(L.bracket, ps.base);
        ExtElement mu = symbol(ps, Q);
        DElement m = B.encode(1, ExtElement(ps.gens), mu);
        ExtElement mm = B.decode(dgla_bracket(B.D, m, m)).second;
        CHECK(mm == Scalar(2) * symbol(ps, square(Q)));
        CHECK(mm.is_zero() == verify_l2(L).pass());
    }
    ExtElement lam = ps.p(0) * ps.p(1) + ps.p(1) * ps.p(2);
    CHECK(pbracket(ps, lam, lam).is_zero());

    // Two-term space: the degree-2 model of an L2-algebra squares to zero exactly when it is valid.
    Rng r(45);
    for (int trial = 0; trial < 20; ++trial) {
        int e = 1 + r.below(3), c = 1 + r.below(2);
        L2Algebra L = random_valid_l2(r, e, c);
        if (trial % 2) L = perturb(r, L, r.below(4));
        std::vector<int> deg(e, 1);
        deg.resize(e + c, 2);
        SymbolDGLA W = build_big_bracket(deg, 3);
        Derivation Q = ce_degree2(L);
        std::vector<ExtElement> img;
        for (int k = 0; k < e + c; ++k) img.push_back(W.ps->x(k));
        PhaseSpace src(Q.gens, 3);
        for (int k = 0; k < e + c; ++k) img.push_back(W.ps->p(k));
        ExtElement th = substitute(symbol(src, Q), img, W.ps->gens);
        DElement t = W.encode(1, ExtElement(W.ps->gens), th);
        CHECK(mc_residual(W.D, t).is_zero() == verify_l2(L).pass());
    }
}
