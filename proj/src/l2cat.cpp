#include "quasiq/l2cat.hpp"

#include <functional>
#include <stdexcept>

namespace qq {

namespace {

using Vec = std::vector<Scalar>;

Vec col(const Mat& m, int j) {
    Vec v(m.rows);
    for (int i = 0; i < m.rows; ++i) v[i] = m(i, j);
    return v;
}

Vec ev(const AltTensor& T, std::vector<int> args) { return to_dense(T.eval(std::move(args)), T.out_dim); }

// Alternating tensor from its values on increasing tuples.
AltTensor alt_from(int arity, int in, int out, const std::function<Vec(const std::vector<int>&)>& f) {
    AltTensor T(arity, in, out);
    for (const auto& t : increasing_tuples(in, arity)) {
        Vec v = f(t);
        for (int k = 0; k < out; ++k)
            if (!v[k].is_zero()) T.add(t, k, v[k]);
    }
    return T;
}

AltTensor general_from(int d0, int d1, int out, const std::function<Vec(int, int)>& f) {
    AltTensor T = AltTensor::general({d0, d1}, out);
    for (int i = 0; i < d0; ++i)
        for (int j = 0; j < d1; ++j) {
            Vec v = f(i, j);
            for (int k = 0; k < out; ++k)
                if (!v[k].is_zero()) T.add({i, j}, k, v[k]);
        }
    return T;
}


}  // namespace

std::vector<Scalar> jacobiator(const L2Algebra& L, int i, int j, int k) {
    auto b = [&](const Vec& x, const Vec& y) { return L.br(x, y); };
    Vec ei = unit_vec(L.e, i), ej = unit_vec(L.e, j), ek = unit_vec(L.e, k);
    Vec r = b(ei, b(ej, ek));
    r = vadd(r, b(ej, b(ek, ei)));
    return vadd(r, b(ek, b(ei, ej)));
}

Report verify_l2(const L2Algebra& L) {
    L.validate();
    Report rep;
    auto& l1a = rep.get("L1a");
    auto& l1c = rep.get("L1c");
    auto& l2 = rep.get("L2");
    auto& l3 = rep.get("L3");
    auto& l4 = rep.get("L4");
    const int e = L.e, c = L.c;
    auto E = [&](int i) { return unit_vec(e, i); };
    auto C = [&](int a) { return unit_vec(c, a); };

    for (int i = 0; i < e; ++i)
        for (int a = 0; a < c; ++a)
            l1a.add_vec({i, a}, vsub(L.bd(L.nab(E(i), C(a))), L.br(E(i), L.bd(C(a)))), "d(nabla_e c) - [e, dc]");
    for (int a = 0; a < c; ++a)
        for (int b = a; b < c; ++b)
            l1c.add_vec({a, b}, vadd(L.nab(L.bd(C(a)), C(b)), L.nab(L.bd(C(b)), C(a))),
                        "nabla_{dc1} c2 + nabla_{dc2} c1");
    for (const auto& t : increasing_tuples(e, 3))
        l2.add_vec(t, vsub(L.bd(ev(L.K, t)), jacobiator(L, t[0], t[1], t[2])), "dK - Jacobiator");
    for (int a = 0; a < c; ++a)
        for (const auto& t : increasing_tuples(e, 2)) {
            Vec x = E(t[0]), y = E(t[1]), ca = C(a);
            Vec lhs = L.k(L.bd(ca), x, y);
            Vec rhs = vsub(L.nab(x, L.nab(y, ca)), L.nab(y, L.nab(x, ca)));
            rhs = vsub(rhs, L.nab(L.br(x, y), ca));
            l3.add_vec({a, t[0], t[1]}, vsub(lhs, rhs), "K(dc,e1,e2) - curvature");
        }
    for (const auto& t : increasing_tuples(e, 4)) {
        Vec r(c);
        for (int p = 0; p < 4; ++p) {
            std::vector<int> rest;
            for (int q = 0; q < 4; ++q)
                if (q != p) rest.push_back(t[q]);
            Vec term = L.nab(E(t[p]), ev(L.K, rest));
            r = (p % 2 == 0) ? vadd(r, term) : vsub(r, term);
        }
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) {
                std::vector<int> rest;
                for (int s = 0; s < 4; ++s)
                    if (s != p && s != q) rest.push_back(t[s]);
                Vec term = L.k(L.br(E(t[p]), E(t[q])), E(rest[0]), E(rest[1]));
                r = ((p + q) % 2 == 0) ? vadd(r, term) : vsub(r, term);
            }
        l4.add_vec(t, r, "coherence of K");
    }
    return rep;
}

// ---- morphisms ----

L2Morphism L2Morphism::identity(const L2Algebra& L) {
    return L2Morphism{L, L, Mat::identity(L.e), Mat::identity(L.c), AltTensor(2, L.e, L.c)};
}

void L2Morphism::validate() const {
    src.validate();
    tgt.validate();
    if (F0.rows != tgt.e || F0.cols != src.e) throw std::invalid_argument("F0 has wrong shape");
    if (F1.rows != tgt.c || F1.cols != src.c) throw std::invalid_argument("F1 has wrong shape");
    if (beta.arity != 2 || beta.in_dim != src.e || beta.out_dim != tgt.c || !beta.alternating)
        throw std::invalid_argument("beta has wrong shape");
}

Report verify_morphism(const L2Morphism& F) {
    F.validate();
    const L2Algebra& L = F.src;
    const L2Algebra& M = F.tgt;
    Report rep;
    auto& m0 = rep.get("mor0");
    auto& m1 = rep.get("mor1");
    auto& m2 = rep.get("mor2");
    auto& m3 = rep.get("mor3");
    auto E = [&](int i) { return unit_vec(L.e, i); };
    auto C = [&](int a) { return unit_vec(L.c, a); };
    auto b = [&](const Vec& x, const Vec& y) { return F.beta.eval_vec({x, y}); };

    for (int a = 0; a < L.c; ++a) m0.add_vec({a}, vsub(F.F0.apply(L.bd(C(a))), M.bd(F.F1.apply(C(a)))), "F0 d - d' F1");
    for (const auto& t : increasing_tuples(L.e, 2)) {
        Vec x = E(t[0]), y = E(t[1]);
        Vec r = vsub(F.F0.apply(L.br(x, y)), M.br(F.F0.apply(x), F.F0.apply(y)));
        m1.add_vec(t, vsub(r, M.bd(b(x, y))), "F0[e1,e2] - [F0e1,F0e2]' - d'beta");
    }
    for (int i = 0; i < L.e; ++i)
        for (int a = 0; a < L.c; ++a) {
            Vec x = E(i), ca = C(a);
            Vec r = vsub(F.F1.apply(L.nab(x, ca)), b(x, L.bd(ca)));
            m2.add_vec({i, a}, vsub(r, M.nab(F.F0.apply(x), F.F1.apply(ca))), "F1 nabla - beta(e,dc) - nabla' F1");
        }
    for (const auto& t : increasing_tuples(L.e, 3)) {
        Vec r = F.F1.apply(ev(L.K, t));
        r = vsub(r, M.k(F.F0.apply(E(t[0])), F.F0.apply(E(t[1])), F.F0.apply(E(t[2]))));
        for (int s = 0; s < 3; ++s) {
            Vec x = E(t[s]), y = E(t[(s + 1) % 3]), z = E(t[(s + 2) % 3]);
            r = vadd(r, b(L.br(x, y), z));
            r = vsub(r, M.nab(F.F0.apply(x), b(y, z)));
        }
        m3.add_vec(t, r, "homotopy coherence");
    }
    return rep;
}

L2Morphism compose(const L2Morphism& G, const L2Morphism& F) {
    if (!(F.tgt == G.src)) throw std::invalid_argument("compose: target of F is not the source of G");
    L2Morphism H;
    H.src = F.src;
    H.tgt = G.tgt;
    H.F0 = G.F0 * F.F0;
    H.F1 = G.F1 * F.F1;
    H.beta = alt_from(2, F.src.e, G.tgt.c, [&](const std::vector<int>& t) {
        Vec x = F.F0.apply(unit_vec(F.src.e, t[0])), y = F.F0.apply(unit_vec(F.src.e, t[1]));
        return vadd(G.F1.apply(ev(F.beta, t)), G.beta.eval_vec({x, y}));
    });
    return H;
}

// ---- 2-morphisms ----

void L2TwoMorphism::validate() const {
    from.validate();
    to.validate();
    if (!(from.src == to.src) || !(from.tgt == to.tgt)) throw std::invalid_argument("2-morphism between non-parallel morphisms");
    if (theta.rows != from.tgt.c || theta.cols != from.src.e) throw std::invalid_argument("theta has wrong shape");
}

namespace {
// nabla'_{F0 e1} theta e2 - nabla'_{G0 e2} theta e1 - theta[e1,e2]
Vec homotopy_beta(const L2Morphism& F, const Mat& G0, const Mat& theta, const Vec& x, const Vec& y) {
    const L2Algebra& M = F.tgt;
    Vec r = M.nab(F.F0.apply(x), theta.apply(y));
    r = vsub(r, M.nab(G0.apply(y), theta.apply(x)));
    return vsub(r, theta.apply(F.src.br(x, y)));
}
}  // namespace

Report verify_2morphism(const L2TwoMorphism& T) {
    T.validate();
    const L2Morphism& F = T.from;
    const L2Morphism& G = T.to;
    Report rep;
    auto& h0 = rep.get("homotopy0");
    auto& h1 = rep.get("homotopy1");
    auto& hb = rep.get("beta");
    const Mat d0 = F.F0 - G.F0 - F.tgt.d * T.theta;
    for (int i = 0; i < F.src.e; ++i) h0.add_vec({i}, col(d0, i), "F0 - G0 - d' theta");
    const Mat d1 = F.F1 - G.F1 - T.theta * F.src.d;
    for (int a = 0; a < F.src.c; ++a) h1.add_vec({a}, col(d1, a), "F1 - G1 - theta d");
    for (const auto& t : increasing_tuples(F.src.e, 2)) {
        Vec x = unit_vec(F.src.e, t[0]), y = unit_vec(F.src.e, t[1]);
        Vec r = vsub(ev(G.beta, t), ev(F.beta, t));
        hb.add_vec(t, vsub(r, homotopy_beta(F, G.F0, T.theta, x, y)), "gamma - beta - homotopy term");
    }
    return rep;
}

L2Morphism shift_by_homotopy(const L2Morphism& F, const Mat& theta) {
    L2Morphism G = F;
    G.F0 = F.F0 - F.tgt.d * theta;
    G.F1 = F.F1 - theta * F.src.d;
    G.beta = alt_from(2, F.src.e, F.tgt.c, [&](const std::vector<int>& t) {
        Vec x = unit_vec(F.src.e, t[0]), y = unit_vec(F.src.e, t[1]);
        return vadd(ev(F.beta, t), homotopy_beta(F, G.F0, theta, x, y));
    });
    return G;
}

L2TwoMorphism vcompose(const L2TwoMorphism& t2, const L2TwoMorphism& t1) {
    if (!(t1.to == t2.from)) throw std::invalid_argument("vcompose: 2-morphisms are not composable");
    return L2TwoMorphism{t1.from, t2.to, t1.theta + t2.theta};
}

L2TwoMorphism hcompose(const L2TwoMorphism& tp, const L2TwoMorphism& t) {
    if (!(t.from.tgt == tp.from.src)) throw std::invalid_argument("hcompose: 2-morphisms are not composable");
    return L2TwoMorphism{compose(tp.from, t.from), compose(tp.to, t.to), tp.theta * t.from.F0 + tp.to.F1 * t.theta};
}

L2TwoMorphism identity_2morphism(const L2Morphism& F) { return L2TwoMorphism{F, F, Mat(F.tgt.c, F.src.e)}; }

// ---- transports ----

L2Morphism gauge_transport(const L2Algebra& L, const AltTensor& beta) {
    if (beta.arity != 2 || beta.in_dim != L.e || beta.out_dim != L.c) throw std::invalid_argument("beta has wrong shape");
    L2Algebra M = L;
    auto E = [&](int i) { return unit_vec(L.e, i); };
    auto b = [&](const Vec& x, const Vec& y) { return beta.eval_vec({x, y}); };
    M.bracket = alt_from(2, L.e, L.e, [&](const std::vector<int>& t) {
        return vsub(ev(L.bracket, t), L.bd(ev(beta, t)));
    });
    M.nabla = general_from(L.e, L.c, L.c, [&](int i, int a) {
        return vsub(L.nab(E(i), unit_vec(L.c, a)), b(E(i), L.bd(unit_vec(L.c, a))));
    });
    M.K = alt_from(3, L.e, L.c, [&](const std::vector<int>& t) {
        Vec r = ev(L.K, t);
        for (int s = 0; s < 3; ++s) {
            Vec x = E(t[s]), y = E(t[(s + 1) % 3]), z = E(t[(s + 2) % 3]);
            r = vadd(r, b(L.br(x, y), z));
            r = vsub(r, M.nab(x, b(y, z)));
        }
        return r;
    });
    return L2Morphism{L, M, Mat::identity(L.e), Mat::identity(L.c), beta};
}

L2Morphism basis_transport(const L2Algebra& L, const Mat& A, const Mat& B) {
    Mat Ai = inverse(A), Bi = inverse(B);
    L2Algebra M = L;
    M.d = A * L.d * Bi;
    M.bracket = alt_from(2, L.e, L.e, [&](const std::vector<int>& t) {
        return A.apply(L.br(col(Ai, t[0]), col(Ai, t[1])));
    });
    M.nabla = general_from(L.e, L.c, L.c, [&](int i, int a) { return B.apply(L.nab(col(Ai, i), col(Bi, a))); });
    M.K = alt_from(3, L.e, L.c, [&](const std::vector<int>& t) {
        return B.apply(L.k(col(Ai, t[0]), col(Ai, t[1]), col(Ai, t[2])));
    });
    return L2Morphism{L, M, A, B, AltTensor(2, L.e, L.c)};
}

// ---- gl(V) ----

namespace {
Mat comm(const Mat& x, const Mat& y) { return x * y - y * x; }

SparseVec flatten_pair(const Mat& X1, const Mat& X0) {
    SparseVec v;
    int k = 0;
    for (const auto& s : X1.a) {
        if (!s.is_zero()) v[k] = s;
        ++k;
    }
    for (const auto& s : X0.a) {
        if (!s.is_zero()) v[k] = s;
        ++k;
    }
    return v;
}
}  // namespace

std::optional<std::vector<Scalar>> GlAlgebra::coords(const Mat& X1, const Mat& X0) const {
    return pair_space.coords(flatten_pair(X1, X0));
}

Mat GlAlgebra::hom(const std::vector<Scalar>& c) const {
    Mat m(n0, n1);
    m.a = c;
    return m;
}

GlAlgebra gl_of_complex(const Mat& dv) {
    GlAlgebra G;
    G.n0 = dv.cols;
    G.n1 = dv.rows;
    G.dv = dv;
    const int n0 = G.n0, n1 = G.n1;
    const int s1 = n1 * n1;
    // Chain condition X1 dv - dv X0 = 0, one row per entry of an n1 x n0 matrix.
    std::vector<SparseVec> cons;
    for (int r = 0; r < n1; ++r)
        for (int s = 0; s < n0; ++s) {
            SparseVec row;
            for (int k = 0; k < n1; ++k)
                if (!dv(k, s).is_zero()) row[r * n1 + k] += dv(k, s);
            for (int k = 0; k < n0; ++k)
                if (!dv(r, k).is_zero()) row[s1 + k * n0 + s] -= dv(r, k);
            std::erase_if(row, [](const auto& kv) { return kv.second.is_zero(); });
            if (!row.empty()) cons.push_back(std::move(row));
        }
    Subspace ker = Subspace::kernel(s1 + n0 * n0, cons);
    G.pair_space = Subspace(s1 + n0 * n0, ker.basis());
    for (const auto& v : G.pair_space.basis()) {
        Mat X1(n1, n1), X0(n0, n0);
        for (const auto& [k, s] : v) {
            if (k < s1) X1.a[k] = s;
            else X0.a[k - s1] = s;
        }
        G.pairs.emplace_back(X1, X0);
    }
    const int e = static_cast<int>(G.pairs.size());
    const int c = n0 * n1;
    G.L = L2Algebra::zero(e, c);
    auto need = [&](const std::optional<Vec>& v) {
        if (!v) throw std::logic_error("gl: result left the chain-map pairs");
        return *v;
    };
    for (int a = 0; a < c; ++a) {
        Mat phi = G.hom(unit_vec(c, a));
        Vec v = need(G.coords(dv * phi, phi * dv));
        for (int i = 0; i < e; ++i) G.L.d(i, a) = v[i];
    }
    for (const auto& t : increasing_tuples(e, 2)) {
        const auto& [X1, X0] = G.pairs[t[0]];
        const auto& [Y1, Y0] = G.pairs[t[1]];
        Vec v = need(G.coords(comm(X1, Y1), comm(X0, Y0)));
        for (int k = 0; k < e; ++k)
            if (!v[k].is_zero()) G.L.bracket.add(t, k, v[k]);
    }
    for (int i = 0; i < e; ++i)
        for (int a = 0; a < c; ++a) {
            const auto& [X1, X0] = G.pairs[i];
            Mat phi = G.hom(unit_vec(c, a));
            Mat r = X0 * phi - phi * X1;
            for (int k = 0; k < c; ++k)
                if (!r.a[k].is_zero()) G.L.nabla.add({i, a}, k, r.a[k]);
        }
    return G;
}

// ---- representations up to homotopy ----

Mat Ruth::om(int i, int j) const {
    const int n0 = dv.cols, n1 = dv.rows;
    if (i == j) return Mat(n0, n1);
    if (i > j) return Scalar(-1) * om(j, i);
    auto it = omega.find({i, j});
    return it == omega.end() ? Mat(n0, n1) : it->second;
}

namespace {
Mat lin(const std::vector<Mat>& ms, const Vec& x, int rows, int cols) {
    Mat r(rows, cols);
    for (size_t k = 0; k < ms.size(); ++k)
        if (!x[k].is_zero()) r = r + x[k] * ms[k];
    return r;
}

Vec flat(const Mat& m) { return m.a; }
}  // namespace

Report verify_ruth(const Ruth& R) {
    const int n = R.g.e, n0 = R.dv.cols, n1 = R.dv.rows;
    if (static_cast<int>(R.nabla0.size()) != n || static_cast<int>(R.nabla1.size()) != n)
        throw std::invalid_argument("ruth: connection count mismatch");
    Report rep;
    auto& ch = rep.get("chain");
    auto& c1 = rep.get("curv1");
    auto& c0 = rep.get("curv0");
    auto& bi = rep.get("bianchi");
    auto om = [&](const Vec& x, const Vec& y) {
        Mat r(n0, n1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!x[i].is_zero() && !y[j].is_zero()) r = r + (x[i] * y[j]) * R.om(i, j);
        return r;
    };
    for (int i = 0; i < n; ++i) ch.add_vec({i}, flat(R.dv * R.nabla0[i] - R.nabla1[i] * R.dv), "d nabla0 - nabla1 d");
    for (const auto& t : increasing_tuples(n, 2)) {
        Vec x = unit_vec(n, t[0]), y = unit_vec(n, t[1]), xy = R.g.br(x, y);
        Mat curv1 = comm(R.nabla1[t[0]], R.nabla1[t[1]]) - lin(R.nabla1, xy, n1, n1);
        Mat curv0 = comm(R.nabla0[t[0]], R.nabla0[t[1]]) - lin(R.nabla0, xy, n0, n0);
        c1.add_vec(t, flat(R.dv * R.om(t[0], t[1]) - curv1), "d omega - curvature of nabla1");
        c0.add_vec(t, flat(R.om(t[0], t[1]) * R.dv - curv0), "omega d - curvature of nabla0");
    }
    for (const auto& t : increasing_tuples(n, 3)) {
        Mat r(n0, n1);
        for (int s = 0; s < 3; ++s) {
            int a = t[s], b = t[(s + 1) % 3], c = t[(s + 2) % 3];
            r = r + R.nabla0[a] * R.om(b, c) - R.om(b, c) * R.nabla1[a];
            r = r - om(R.g.br(unit_vec(n, a), unit_vec(n, b)), unit_vec(n, c));
        }
        bi.add_vec(t, flat(r), "cyclic nabla omega - omega([,],)");
    }
    return rep;
}

L2Morphism ruth_to_morphism(const Ruth& R) {
    GlAlgebra G = gl_of_complex(R.dv);
    const int n = R.g.e;
    L2Morphism F;
    F.src = R.g;
    F.tgt = G.L;
    F.F0 = Mat(G.L.e, n);
    F.F1 = Mat(G.L.c, R.g.c);
    for (int k = 0; k < n; ++k) {
        auto v = G.coords(R.nabla1[k], R.nabla0[k]);
        if (!v) throw std::invalid_argument("ruth: connections are not chain maps");
        for (int i = 0; i < G.L.e; ++i) F.F0(i, k) = (*v)[i];
    }
    F.beta = AltTensor(2, n, G.L.c);
    for (const auto& [ij, m] : R.omega)
        for (int k = 0; k < G.L.c; ++k)
            if (!m.a[k].is_zero()) F.beta.add({ij.first, ij.second}, k, -m.a[k]);
    return F;
}

Ruth morphism_to_ruth(const L2Morphism& F, const Mat& dv) {
    GlAlgebra G = gl_of_complex(dv);
    if (!(F.tgt == G.L)) throw std::invalid_argument("morphism target is not gl of the complex");
    if (F.src.c != 0) throw std::invalid_argument("ruth source must have C = 0");
    Ruth R;
    R.g = F.src;
    R.dv = dv;
    const int n = F.src.e;
    for (int k = 0; k < n; ++k) {
        Mat X1(G.n1, G.n1), X0(G.n0, G.n0);
        for (int i = 0; i < G.L.e; ++i)
            if (!F.F0(i, k).is_zero()) {
                X1 = X1 + F.F0(i, k) * G.pairs[i].first;
                X0 = X0 + F.F0(i, k) * G.pairs[i].second;
            }
        R.nabla1.push_back(X1);
        R.nabla0.push_back(X0);
    }
    for (const auto& t : increasing_tuples(n, 2)) {
        Vec b = ev(F.beta, t);
        if (vzero(b)) continue;
        R.omega[{t[0], t[1]}] = G.hom(vscale(Scalar(-1), b));
    }
    return R;
}

// ---- crossed modules ----

Report verify_xmod(const CrossedModule& X) {
    Report rep;
    auto& jg = rep.get("jacobi_g");
    auto& jh = rep.get("jacobi_h");
    auto& ah = rep.get("action_hom");
    auto& ad = rep.get("action_der");
    auto& eq = rep.get("equivariance");
    auto& pf = rep.get("peiffer");
    auto bg = [&](const Vec& x, const Vec& y) { return X.bracket_g.eval_vec({x, y}); };
    auto bh = [&](const Vec& x, const Vec& y) { return X.bracket_h.eval_vec({x, y}); };
    auto act = [&](const Vec& x, const Vec& h) { return X.action.eval_vec({x, h}); };
    auto G = [&](int i) { return unit_vec(X.g, i); };
    auto H = [&](int i) { return unit_vec(X.h, i); };
    auto jac = [](auto br, const Vec& x, const Vec& y, const Vec& z) {
        return vadd(vadd(br(x, br(y, z)), br(y, br(z, x))), br(z, br(x, y)));
    };
    for (const auto& t : increasing_tuples(X.g, 3)) jg.add_vec(t, jac(bg, G(t[0]), G(t[1]), G(t[2])), "Jacobi in g");
    for (const auto& t : increasing_tuples(X.h, 3)) jh.add_vec(t, jac(bh, H(t[0]), H(t[1]), H(t[2])), "Jacobi in h");
    for (const auto& t : increasing_tuples(X.g, 2))
        for (int a = 0; a < X.h; ++a) {
            Vec x = G(t[0]), y = G(t[1]), h = H(a);
            Vec r = vsub(vsub(act(x, act(y, h)), act(y, act(x, h))), act(bg(x, y), h));
            ah.add_vec({t[0], t[1], a}, r, "[alpha_x, alpha_y] - alpha_[x,y]");
        }
    for (int i = 0; i < X.g; ++i)
        for (const auto& t : increasing_tuples(X.h, 2)) {
            Vec x = G(i), h = H(t[0]), k = H(t[1]);
            Vec r = vsub(vsub(act(x, bh(h, k)), bh(act(x, h), k)), bh(h, act(x, k)));
            ad.add_vec({i, t[0], t[1]}, r, "alpha_x is a derivation");
        }
    for (int i = 0; i < X.g; ++i)
        for (int a = 0; a < X.h; ++a)
            eq.add_vec({i, a}, vsub(X.d.apply(act(G(i), H(a))), bg(G(i), X.d.apply(H(a)))), "d alpha_x h - [x, dh]");
    for (int a = 0; a < X.h; ++a)
        for (int b = 0; b < X.h; ++b)
            pf.add_vec({a, b}, vsub(act(X.d.apply(H(a)), H(b)), bh(H(a), H(b))), "alpha_{dh} h' - [h,h']");
    return rep;
}

L2Algebra xmod_to_strict(const CrossedModule& X) {
    L2Algebra L = L2Algebra::zero(X.g, X.h);
    L.d = X.d;
    L.bracket = X.bracket_g;
    L.nabla = X.action;
    return L;
}

CrossedModule strict_to_xmod(const L2Algebra& L) {
    if (!L.K.is_zero()) throw std::invalid_argument("strict_to_xmod: K is not zero");
    CrossedModule X;
    X.g = L.e;
    X.h = L.c;
    X.d = L.d;
    X.bracket_g = L.bracket;
    X.action = L.nabla;
    X.bracket_h = alt_from(2, L.c, L.c, [&](const std::vector<int>& t) {
        return L.nab(L.bd(unit_vec(L.c, t[0])), unit_vec(L.c, t[1]));
    });
    return X;
}

// ---- named instances ----

L2Algebra so3_lie() {
    L2Algebra L = L2Algebra::zero(3, 0);
    L.bracket.add({0, 1}, 2, Scalar(1));
    L.bracket.add({1, 2}, 0, Scalar(1));
    L.bracket.add({2, 0}, 1, Scalar(1));
    return L;
}

L2Algebra string_so3() {
    L2Algebra L = L2Algebra::zero(3, 1);
    L.bracket = so3_lie().bracket;
    L.K.add({0, 1, 2}, 0, Scalar(1));
    return L;
}

L2Algebra tautological(const AltTensor& bracket) {
    const int n = bracket.in_dim;
    L2Algebra L = L2Algebra::zero(n, n);
    L.bracket = bracket;
    L.d = Mat::identity(n);
    L.nabla = general_from(n, n, n, [&](int i, int j) { return ev(bracket, {i, j}); });
    L.K = alt_from(3, n, n, [&](const std::vector<int>& t) { return jacobiator(L, t[0], t[1], t[2]); });
    return L;
}

L2Algebra failing_jacobi() {
    L2Algebra L = L2Algebra::zero(3, 0);
    L.bracket.add({0, 1}, 2, Scalar(1));
    L.bracket.add({0, 2}, 0, Scalar(1));
    return L;
}

CrossedModule identity_xmod(const L2Algebra& lie) {
    CrossedModule X;
    X.g = X.h = lie.e;
    X.d = Mat::identity(lie.e);
    X.bracket_g = X.bracket_h = lie.bracket;
    X.action = general_from(lie.e, lie.e, lie.e, [&](int i, int j) { return ev(lie.bracket, {i, j}); });
    return X;
}

// ---- random families ----

namespace {
L2Algebra direct_sum(const L2Algebra& A, const L2Algebra& B) {
    L2Algebra L = L2Algebra::zero(A.e + B.e, A.c + B.c);
    for (int i = 0; i < A.e; ++i)
        for (int a = 0; a < A.c; ++a) L.d(i, a) = A.d(i, a);
    for (int i = 0; i < B.e; ++i)
        for (int a = 0; a < B.c; ++a) L.d(A.e + i, A.c + a) = B.d(i, a);
    auto shift = [](const AltTensor& T, AltTensor& out, std::vector<int> in_off, int out_off) {
        for (const auto& [idx, v] : T.entries) {
            std::vector<int> args = idx;
            for (size_t s = 0; s < args.size(); ++s) args[s] += in_off[s];
            for (const auto& [k, x] : v) out.add(args, k + out_off, x);
        }
    };
    shift(A.bracket, L.bracket, {0, 0}, 0);
    shift(B.bracket, L.bracket, {A.e, A.e}, A.e);
    shift(A.nabla, L.nabla, {0, 0}, 0);
    shift(B.nabla, L.nabla, {A.e, A.c}, A.c);
    shift(A.K, L.K, {0, 0, 0}, 0);
    shift(B.K, L.K, {A.e, A.e, A.e}, A.c);
    return L;
}

L2Algebra abelian(int n) { return L2Algebra::zero(n, 0); }
}  // namespace

L2Algebra random_lie(Rng& r, int n) {
    L2Algebra L = abelian(n);
    int kind = r.below(5);
    if (kind == 1 && n >= 2) {
        L2Algebra a = abelian(2);
        a.bracket.add({0, 1}, 1, Scalar(1));
        L = direct_sum(a, abelian(n - 2));
    } else if (kind == 2 && n >= 3) {
        L = direct_sum(so3_lie(), abelian(n - 3));
    } else if (kind == 3 && n >= 3) {
        L2Algebra h = abelian(3);
        h.bracket.add({0, 1}, 2, Scalar(1));
        L = direct_sum(h, abelian(n - 3));
    } else if (kind == 4 && n >= 3) {
        L2Algebra s = abelian(3);  // sl2: h, e, f
        s.bracket.add({0, 1}, 1, Scalar(2));
        s.bracket.add({0, 2}, 2, Scalar(-2));
        s.bracket.add({1, 2}, 0, Scalar(1));
        L = direct_sum(s, abelian(n - 3));
    }
    if (n > 0 && r.below(2) == 0) L = basis_transport(L, random_invertible(r, n), Mat::identity(0)).tgt;
    return L;
}

L2Algebra random_valid_l2(Rng& r, int e, int c) {
    int k = r.below(std::min(e, c) + 1);
    L2Algebra A = tautological(random_alt(r, 2, k, k, Scalar(1, 2)));
    // Remaining part: a Lie algebra acting on C2 with d = 0.
    L2Algebra B = random_lie(r, e - k);
    const int e2 = e - k, c2 = c - k;
    L2Algebra B2 = L2Algebra::zero(e2, c2);
    B2.bracket = B.bracket;
    if (e2 == c2 && r.below(2) == 0) {
        B2.nabla = general_from(e2, c2, c2, [&](int i, int j) { return ev(B.bracket, {i, j}); });
    } else if (e2 == 1 && c2 > 0) {
        Mat m = random_mat(r, c2, c2, Scalar(1, 2));
        B2.nabla = general_from(1, c2, c2, [&](int, int j) { return col(m, j); });
    }
    if (e2 <= 3) B2.K = random_alt(r, 3, e2, c2, Scalar(1, 2));
    L2Algebra L = direct_sum(A, B2);
    if (r.below(2) == 0) L = gauge_transport(L, random_alt(r, 2, e, c, Scalar(1, 3))).tgt;
    if (r.below(2) == 0) L = basis_transport(L, random_invertible(r, e), random_invertible(r, c)).tgt;
    return L;
}

L2Algebra perturb(Rng& r, const L2Algebra& L, int which) {
    L2Algebra M = L;
    Scalar v = r.small_int();
    switch (which) {
        case 0:
            if (L.e > 0 && L.c > 0) M.d(r.below(L.e), r.below(L.c)) += v;
            break;
        case 1:
            if (L.e >= 2) {
                int i = r.below(L.e), j = r.below(L.e - 1);
                if (j >= i) ++j;
                M.bracket.add({i, j}, r.below(L.e), v);
            }
            break;
        case 2:
            if (L.e > 0 && L.c > 0) M.nabla.add({r.below(L.e), r.below(L.c)}, r.below(L.c), v);
            break;
        default:
            if (L.e >= 3 && L.c > 0) {
                auto ts = increasing_tuples(L.e, 3);
                M.K.add(ts[r.below(static_cast<int>(ts.size()))], r.below(L.c), v);
            }
    }
    M.bracket.prune();
    M.nabla.prune();
    M.K.prune();
    return M;
}

L2Morphism random_morphism_from(Rng& r, const L2Algebra& L) {
    L2Morphism F = gauge_transport(L, random_alt(r, 2, L.e, L.c, Scalar(1, 2)));
    L2Morphism G = basis_transport(F.tgt, random_invertible(r, L.e), random_invertible(r, L.c));
    return r.below(2) == 0 ? compose(G, F) : compose(gauge_transport(G.tgt, random_alt(r, 2, L.e, L.c, Scalar(1, 3))), compose(G, F));
}

Ruth random_ruth(Rng& r, int kind) {
    Ruth R;
    const bool adj = r.below(3) == 0;
    R.g = adj ? so3_lie() : random_lie(r, 1 + r.below(3));
    const int n = R.g.e;
    const int n0 = adj ? 3 : 1 + r.below(2), n1 = adj ? 3 : 1 + r.below(2);
    if (kind == 1) {
        R.dv = Mat(n1, n0);
    } else if (adj) {
        R.dv = Scalar(r.below(3)) * Mat::identity(3);
    } else {
        R.dv = random_mat(r, n1, n0, Scalar(1, 2));
    }
    for (int k = 0; k < n; ++k) {
        if (adj) {
            Mat a(3, 3);
            for (int j = 0; j < 3; ++j) {
                Vec v = ev(R.g.bracket, {k, j});
                for (int i = 0; i < 3; ++i) a(i, j) = v[i];
            }
            R.nabla0.push_back(a);
            R.nabla1.push_back(a);
        } else {
            R.nabla0.push_back(Mat(n0, n0));
            R.nabla1.push_back(Mat(n1, n1));
        }
    }
    if (kind == 1) {
        for (const auto& t : increasing_tuples(n, 2)) {
            Mat m = random_mat(r, n0, n1, Scalar(1, 2));
            if (!m.is_zero()) R.omega[{t[0], t[1]}] = m;
        }
        return R;
    }
    L2Morphism F = ruth_to_morphism(R);
    Mat theta = random_mat(r, F.tgt.c, n, Scalar(1, 2));
    R = morphism_to_ruth(shift_by_homotopy(F, theta), R.dv);
    if (kind == 2 && n >= 2) {
        auto ts = increasing_tuples(n, 2);
        auto t = ts[r.below(static_cast<int>(ts.size()))];
        Mat m = R.om(t[0], t[1]);
        m(r.below(n0), r.below(n1)) += r.small_int();
        if (m.is_zero()) R.omega.erase({t[0], t[1]});
        else R.omega[{t[0], t[1]}] = m;
    }
    return R;
}

}  // namespace qq
