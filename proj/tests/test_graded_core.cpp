#include "doctest.h"

#include "quasiq/ext.hpp"
#include "quasiq/graded.hpp"
#include "quasiq/linalg.hpp"
#include "quasiq/random.hpp"
#include "quasiq/scalar.hpp"

#include <algorithm>
#include <numeric>

using namespace qq;

TEST_CASE("scalar parse and print") {
    bool norm = false;
    CHECK(Scalar::parse("2/4", &norm) == Scalar(1, 2));
    CHECK(norm);
    CHECK(Scalar::parse("-3/1", &norm).str() == "-3");
    CHECK(norm);
    CHECK(Scalar::parse("7", &norm).str() == "7");
    CHECK_FALSE(norm);
    CHECK(Scalar::parse("-5/6").str() == "-5/6");
    CHECK_THROWS(Scalar::parse("1/0"));
    CHECK_THROWS(Scalar::parse("1/-2"));
    CHECK_THROWS(Scalar::parse("x"));
    CHECK_THROWS(Scalar::parse(""));
    CHECK(Scalar::parse("123456789012345678901234567890/2").str() == "61728394506172839450617283945");
}

TEST_CASE("scalar round trip through text") {
    Rng r(11);
    for (int i = 0; i < 200; ++i) {
        Scalar a = r.grid() * r.small_int() / Scalar(r.below(50) + 1);
        CHECK(Scalar::parse(a.str()) == a);
    }
}

TEST_CASE("row reduction and solve") {
    Mat A(3, 3);
    A(0, 0) = 1; A(0, 1) = 2; A(0, 2) = 3;
    A(1, 0) = 2; A(1, 1) = 4; A(1, 2) = 6;
    A(2, 0) = 1; A(2, 1) = 0; A(2, 2) = 1;
    CHECK(rank(A) == 2);
    auto ns = nullspace(A);
    REQUIRE(ns.size() == 1);
    auto v = to_dense(ns[0], 3);
    for (const auto& x : A.apply(v)) CHECK(x.is_zero());

    auto good = solve(A, {Scalar(1), Scalar(2), Scalar(0)});
    REQUIRE(good.x);
    CHECK(A.apply(*good.x) == std::vector<Scalar>{1, 2, 0});

    auto bad = solve(A, {Scalar(1), Scalar(1), Scalar(0)});
    CHECK_FALSE(bad.x);
    REQUIRE(bad.certificate.size() == 3);
    // y^T A = 0 and y.b != 0
    auto yA = A.transpose().apply(bad.certificate);
    for (const auto& x : yA) CHECK(x.is_zero());
    CHECK_FALSE((bad.certificate[0] + bad.certificate[1]).is_zero());
}

TEST_CASE("subspace coordinates") {
    std::vector<SparseVec> span = {{{0, 1}, {1, 1}}, {{1, 1}, {2, 1}}};
    Subspace S(3, span);
    CHECK(S.dim() == 2);
    auto c = S.coords({{0, 1}, {1, 2}, {2, 1}});
    REQUIRE(c);
    CHECK(S.combine(*c) == SparseVec{{0, 1}, {1, 2}, {2, 1}});
    CHECK_FALSE(S.coords({{0, 1}}));
}

TEST_CASE("random invertible matrices invert") {
    Rng r(3);
    for (int n = 1; n <= 4; ++n) {
        Mat m = random_invertible(r, n);
        CHECK(m * inverse(m) == Mat::identity(n));
    }
}

namespace {
AltTensor cross_product() {
    AltTensor t(2, 3, 3);
    t.add({0, 1}, 2, 1);
    t.add({1, 2}, 0, 1);
    t.add({2, 0}, 1, 1);
    return t;
}

int perm_sign(const std::vector<int>& p) {
    int inv = 0;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 ? -1 : 1;
}
}  // namespace

TEST_CASE("alt_eval on the cross product") {
    AltTensor t = cross_product();
    CHECK(alt_eval(t, {0, 1}) == SparseVec{{2, 1}});
    CHECK(alt_eval(t, {1, 0}) == SparseVec{{2, -1}});
    CHECK(alt_eval(t, {0, 0}).empty());
    CHECK(alt_eval(t, {2, 0}) == SparseVec{{1, 1}});
    CHECK_THROWS(alt_eval(t, {0}));
    CHECK_THROWS(alt_eval(t, {0, 3}));
}

TEST_CASE("alt_eval permutation sign property") {
    Rng r(5);
    for (int trial = 0; trial < 20; ++trial) {
        AltTensor t = random_alt(r, 3, 4, 2, Scalar(1, 2));
        for (const auto& idx : increasing_tuples(4, 3)) {
            std::vector<int> p = {0, 1, 2};
            do {
                std::vector<int> args = {idx[p[0]], idx[p[1]], idx[p[2]]};
                SparseVec expect = t.eval(idx);
                for (auto& [k, v] : expect) v *= Scalar(perm_sign(p));
                CHECK(t.eval(args) == expect);
            } while (std::next_permutation(p.begin(), p.end()));
        }
    }
}

TEST_CASE("random_instance determinism and density extremes") {
    Rng a(7), b(7);
    CHECK(random_alt(a, 2, 3, 2, Scalar(1, 2)) == random_alt(b, 2, 3, 2, Scalar(1, 2)));
    Rng z(9);
    CHECK(random_alt(z, 2, 3, 2, Scalar(0)).is_zero());
    Rng f(9);
    AltTensor full = random_alt(f, 2, 3, 1, Scalar(1));
    CHECK(full.entries.size() == 3);
}

namespace {
Gens odd3() { return make_gens({"t1", "t2", "t3"}, {1, 1, 1}); }

// Independent sign oracle: sort a word by adjacent swaps, tracking odd transpositions.
Scalar word_sign(std::vector<int> w, const GeneratorSet& g) {
    int s = 1;
    for (size_t i = 0; i < w.size(); ++i)
        for (size_t j = 0; j + 1 < w.size() - i; ++j)
            if (w[j] > w[j + 1]) {
                if (g.odd(w[j]) && g.odd(w[j + 1])) s = -s;
                std::swap(w[j], w[j + 1]);
            }
    for (size_t i = 1; i < w.size(); ++i)
        if (w[i] == w[i - 1] && g.odd(w[i])) return 0;
    return s;
}
}  // namespace

TEST_CASE("wedge Koszul signs") {
    auto g = odd3();
    auto t1 = ExtElement::generator(g, 0), t2 = ExtElement::generator(g, 1), t3 = ExtElement::generator(g, 2);
    CHECK(t1 * t2 == -(t2 * t1));
    CHECK((t1 * t1).is_zero());
    CHECK((t1 + t2) * t3 == t1 * t3 + t2 * t3);
    auto mixed = make_gens({"a", "x", "b"}, {1, 2, 1});
    auto a = ExtElement::generator(mixed, 0), x = ExtElement::generator(mixed, 1), b = ExtElement::generator(mixed, 2);
    CHECK(x * a == a * x);
    CHECK((x * x).is_zero() == false);
    CHECK(a * b * x == -(b * x * a));
    CHECK_THROWS(t1 * a);
}

TEST_CASE("wedge agrees with word-sorting oracle") {
    auto g = make_gens({"a", "b", "c", "d", "e"}, {1, 2, 1, 3, 2});
    Rng r(17);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<int> w1, w2;
        int n1 = r.below(4), n2 = r.below(4);
        for (int i = 0; i < n1; ++i) w1.push_back(r.below(5));
        for (int i = 0; i < n2; ++i) w2.push_back(r.below(5));
        auto mono = [&](const std::vector<int>& w) {
            ExtElement e = ExtElement::constant(g, 1);
            for (int i : w) e = e * ExtElement::generator(g, i);
            return e;
        };
        ExtElement prod = mono(w1) * mono(w2);
        std::vector<int> w = w1;
        w.insert(w.end(), w2.begin(), w2.end());
        Scalar s = word_sign(w, *g);
        std::sort(w.begin(), w.end());
        Monomial m(w.begin(), w.end());
        CHECK(prod.coeff(m) * Scalar(s.is_zero() ? 0 : 1) == s);
        // graded commutativity
        ExtElement x = mono(w1), y = mono(w2);
        if (!x.is_zero() && !y.is_zero()) {
            int dx = x.degree(), dy = y.degree();
            CHECK(x * y == Scalar((dx * dy) % 2 ? -1 : 1) * (y * x));
        }
    }
}

TEST_CASE("pullback along groupoid structure maps") {
    // Generators theta_C (index 0), theta_E (index 1); C = E = Q, boundary 2.
    auto g = make_gens({"tC", "tE"}, {1, 1});
    auto tC = ExtElement::generator(g, 0), tE = ExtElement::generator(g, 1);
    std::vector<ExtElement> t_star = {tC, tE + Scalar(2) * tC};
    CHECK(substitute(tE, t_star, g) == tE + Scalar(2) * tC);
    std::vector<ExtElement> s_star = {tC, tE};
    CHECK(substitute(tE, s_star, g) == tE);
    CHECK(substitute(tC * tE, s_star, g) == tC * tE);
    std::vector<ExtElement> bad = {tC * tE, tE};
    CHECK_THROWS(check_degree_preserving(*g, bad));
}

TEST_CASE("pullback is a contravariant algebra homomorphism") {
    auto g = make_gens({"a", "b", "c", "x"}, {1, 1, 1, 2});
    Rng r(23);
    auto rand_lin = [&](int deg) {
        ExtElement e(g);
        for (int i = 0; i < 4; ++i)
            if (g->degrees[i] == deg) e += r.entry(Scalar(2, 3)) * ExtElement::generator(g, i);
        if (deg == 2)
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j)
                    e += r.entry(Scalar(1, 3)) *
                         (ExtElement::generator(g, i) * ExtElement::generator(g, j));
        return e;
    };
    auto rand_elem = [&]() {
        ExtElement e(g);
        for (int k = 0; k < 3; ++k) {
            ExtElement t = ExtElement::constant(g, r.grid());
            int n = r.below(3);
            for (int i = 0; i < n; ++i) t = t * ExtElement::generator(g, r.below(4));
            e += t;
        }
        return e;
    };
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<ExtElement> f, h;
        for (int i = 0; i < 4; ++i) {
            f.push_back(rand_lin(g->degrees[i]));
            h.push_back(rand_lin(g->degrees[i]));
        }
        check_degree_preserving(*g, f);
        ExtElement x = rand_elem(), y = rand_elem();
        CHECK(substitute(x * y, f, g) == substitute(x, f, g) * substitute(y, f, g));
        // (g o f)^* = f^* o g^*: images of the composite are h pulled back along f.
        std::vector<ExtElement> comp;
        for (int i = 0; i < 4; ++i) comp.push_back(substitute(h[i], f, g));
        CHECK(substitute(x, comp, g) == substitute(substitute(x, h, g), f, g));
    }
    std::vector<ExtElement> id;
    for (int i = 0; i < 4; ++i) id.push_back(ExtElement::generator(g, i));
    ExtElement x = rand_elem();
    CHECK(substitute(x, id, g) == x);
}

TEST_CASE("left derivative") {
    auto g = odd3();
    auto t1 = ExtElement::generator(g, 0), t2 = ExtElement::generator(g, 1);
    CHECK(left_derivative(t1 * t2, 1) == -t1);
    CHECK(left_derivative(t1 * t2, 0) == t2);
}
