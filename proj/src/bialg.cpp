#include "quasiq/bialg.hpp"

#include <algorithm>
#include <stdexcept>

namespace qq {

ProtoBialgebra ProtoBialgebra::zero(int n) {
    return ProtoBialgebra{n, AltTensor(2, n, n), AltTensor(2, n, n), AltTensor(3, n, 1), AltTensor(3, n, 1)};
}

void ProtoBialgebra::validate() const {
    auto shape = [&](const AltTensor& T, int arity, int out, const char* what) {
        if (T.arity != arity || T.in_dim != n || T.out_dim != out) throw std::invalid_argument(std::string("proto: ") + what + " has wrong shape");
    };
    shape(mu, 2, n, "mu");
    shape(cobracket, 2, n, "cobracket");
    shape(phi, 3, 1, "phi");
    shape(chi, 3, 1, "chi");
}

namespace {

int xdeg(const PhaseSpace& ps, const Monomial& m) { return static_cast<int>(m.size()) - ps.pdeg(m); }

// Part of f with the given number of base generators and momenta.
ExtElement bidegree_part(const PhaseSpace& ps, const ExtElement& f, int xd, int pd) {
    ExtElement r(ps.gens);
    for (const auto& [m, c] : f.terms())
        if (ps.pdeg(m) == pd && xdeg(ps, m) == xd) r.add_term(m, c);
    return r;
}

ExtElement cube(const PhaseSpace& ps, const AltTensor& T, bool momenta) {
    ExtElement r(ps.gens);
    for (const auto& [t, o] : T.entries)
        for (const auto& [k, v] : o) {
            ExtElement w = ExtElement::constant(ps.gens, v);
            for (int i : t) w = w * (momenta ? ps.p(i) : ps.x(i));
            r += w;
        }
    return r;
}

}  // namespace

ExtElement proto_theta(const PhaseSpace& ps, const ProtoBialgebra& P) {
    P.validate();
    if (ps.nb != P.n) throw std::invalid_argument("proto_theta: dimension mismatch");
    ExtElement th = symbol(ps, ce_differential(P.mu, ps.base));
    for (const auto& [t, o] : P.cobracket.entries)
        for (const auto& [k, v] : o) th -= v * ps.x(k) * ps.p(t[0]) * ps.p(t[1]);
    th += cube(ps, P.chi, false);
    th += cube(ps, P.phi, true);
    return th;
}

ProtoBialgebra proto_from_theta(const PhaseSpace& ps, const ExtElement& theta) {
    int n = ps.nb;
    ProtoBialgebra P = ProtoBialgebra::zero(n);
    for (const auto& [m, c] : theta.terms()) {
        int pd = ps.pdeg(m), xd = xdeg(ps, m);
        std::vector<int> xs, pp;
        for (auto g : m) (ps.is_momentum(g) ? pp : xs).push_back(g < n ? g : g - n);
        if (xd == 3 && pd == 0) P.chi.add(xs, 0, c);
        else if (xd == 0 && pd == 3) P.phi.add(pp, 0, c);
        else if (xd == 2 && pd == 1) P.mu.add(xs, pp[0], -c);
        else if (xd == 1 && pd == 2) P.cobracket.add(pp, xs[0], -c);
        else throw std::invalid_argument("proto_from_theta: term outside the cubic part");
    }
    P.mu.prune();
    P.cobracket.prune();
    P.phi.prune();
    P.chi.prune();
    return P;
}

AltTensor coboundary_cobracket(const AltTensor& mu, const Mat& r) {
    int n = mu.in_dim;
    if (mu.arity != 2 || mu.out_dim != n || r.rows != n || r.cols != n)
        throw std::invalid_argument("coboundary_cobracket: shape mismatch");
    AltTensor cob(2, n, n);
    for (int k = 0; k < n; ++k) {
        Mat A(n, n);  // ad of e_k
        for (int i = 0; i < n; ++i)
            for (int m = 0; m < n; ++m)
                if (i != k) A(m, i) = k < i ? mu.eval({k, i}, m) : -mu.eval({i, k}, m);
        Mat G = A * r + r * A.transpose();
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (!G(i, j).is_zero()) cob.add({i, j}, k, G(i, j));
    }
    return cob;
}

ProtoBialgebra standard_sl2_bialgebra() {
    ProtoBialgebra P = ProtoBialgebra::zero(3);
    P.mu.add({0, 1}, 2, Scalar(1));
    P.mu.add({0, 2}, 0, Scalar(-2));
    P.mu.add({1, 2}, 1, Scalar(2));
    Mat r(3, 3);
    r(0, 2) = Scalar(1);
    r(2, 0) = Scalar(-1);
    P.cobracket = coboundary_cobracket(P.mu, r);
    return P;
}

Report mc_check_proto(const ProtoBialgebra& P) {
    P.validate();
    Phase ps = make_phase(odd_gens(P.n, "x"), 2);
    ExtElement th = proto_theta(*ps, P);
    ExtElement half = Scalar(1, 2) * pbracket(*ps, th, th);
    Report rep;
    const std::pair<const char*, std::pair<int, int>> parts[] = {
        {"L4g*", {4, 0}}, {"L3g*.g", {3, 1}}, {"L2g*.L2g", {2, 2}}, {"g*.L3g", {1, 3}}, {"L4g", {0, 4}}};
    for (const auto& [id, bd] : parts) rep.get(id).add_poly(bidegree_part(*ps, half, bd.first, bd.second));
    return rep;
}

// ---- the multivector dgla slots ----

std::pair<bool, int> slot_kind(int k) {
    if (k < 0 || k >= 9) throw std::out_of_range("slot index");
    return {k % 2 == 0, k / 2};
}

static int slot_index(const std::string& name) {
    auto it = std::find(kSlots.begin(), kSlots.end(), name);
    if (it == kSlots.end()) throw std::invalid_argument("unknown slot " + name);
    return static_cast<int>(it - kSlots.begin());
}

ExtElement& WeakL2Bialgebra::operator[](const std::string& name) { return slot[slot_index(name)]; }
const ExtElement& WeakL2Bialgebra::operator[](const std::string& name) const { return slot[slot_index(name)]; }

WeakL2Bialgebra WeakL2Bialgebra::zero(const PointVBGroupoid& G) {
    WeakL2Bialgebra W{G, {}};
    for (auto& s : W.slot) s = ExtElement(G.ps->gens);
    return W;
}

void WeakL2Bialgebra::validate() const {
    const PhaseSpace& ps = *G.ps;
    for (int k = 0; k < 9; ++k) {
        const ExtElement& s = slot[k];
        if (!same_gens(s.gens(), ps.gens)) throw std::invalid_argument("slot " + kSlots[k] + " lives on another phase space");
        if (s.is_zero()) continue;
        auto [sec, ar] = slot_kind(k);
        if (s.degree() != (sec ? 4 : 3) || !(ps.arity_part(s, ar) == s))
            throw std::invalid_argument("slot " + kSlots[k] + " has the wrong degree or arity");
        if (sec && !G.is_section(s)) throw std::invalid_argument("slot " + kSlots[k] + " is not a section");
        if (!sec && !is_multiplicative(s, G).ok) throw std::invalid_argument("slot " + kSlots[k] + " is not multiplicative");
    }
}

DElement weak_element(const SymbolDGLA& V, const WeakL2Bialgebra& W) {
    W.validate();
    ExtElement sec(V.ps->gens), mv(V.ps->gens);
    for (int k = 0; k < 9; ++k) (slot_kind(k).first ? sec : mv) += W.slot[k];
    return V.encode(1, sec, mv);
}

WeakL2Bialgebra weak_from_element(const SymbolDGLA& V, const DElement& x) {
    if (!V.G) throw std::invalid_argument("weak_from_element: not a groupoid dgla");
    if (!x.is_zero() && x.degree != 1) throw std::invalid_argument("weak_from_element: element must have degree 1");
    auto [sec, mv] = V.decode(DElement{1, x.v});
    WeakL2Bialgebra W = WeakL2Bialgebra::zero(*V.G);
    for (int k = 0; k < 9; ++k) {
        auto [s, ar] = slot_kind(k);
        W.slot[k] = V.ps->arity_part(s ? sec : mv, ar);
    }
    return W;
}

std::string equation_block(int k) {
    if (k < 0 || k >= 11) throw std::out_of_range("equation index");
    return k < 5 ? "mvf" + std::to_string(k) : "sec" + std::to_string(k - 5);
}

VReport mc_check_V(const WeakL2Bialgebra& W) {
    W.validate();
    const PointVBGroupoid& G = W.G;
    const PhaseSpace& ps = *G.ps;
    auto ext = [&](const std::string& s) { return G.right_ext(W[s]) - G.left_ext(W[s]); };
    auto br = [&](const std::string& a, const std::string& b) { return pbracket(ps, W[a], W[b]); };
    // Degree-1 multivector against degree-1 section: -(X.s) with (X.s)^r = {X, s^r}.
    auto act = [&](const std::string& X, const std::string& s) {
        ExtElement Y = pbracket(ps, W[X], G.right_ext(W[s]));
        if (Y.is_zero()) return Y;
        auto sec = G.section_of_right(Y);
        if (!sec) throw std::logic_error("mc_check_V: bracket with a right extension is not right invariant");
        return -*sec;
    };
    Scalar h(1, 2);
    VReport R;
    R.residual = {
        ext("f") + br("Q", "F"),
        ext("q") + h * br("Q", "Q") + br("Pi", "F"),
        ext("t") + br("Pi", "Q") + br("Phi", "F"),
        ext("pi") + h * br("Pi", "Pi") + br("Q", "Phi"),
        ext("phi") + br("Pi", "Phi"),
        act("F", "q") + act("Q", "f"),
        act("F", "t") + act("Q", "q") + act("Pi", "f"),
        act("F", "pi") + act("Q", "t") + act("Pi", "q") + act("Phi", "f"),
        act("F", "phi") + act("Q", "pi") + act("Pi", "t") + act("Phi", "q"),
        act("Q", "phi") + act("Pi", "pi") + act("Phi", "t"),
        act("Pi", "phi") + act("Phi", "pi"),
    };
    for (int k = 0; k < 11; ++k) R.report.get("E" + std::to_string(k + 1)).add_poly(R.residual[k]);
    return R;
}

// ---- tables ----

const std::vector<TableRow>& table_rows() {
    using C = TableContext;
    static const std::vector<TableRow> rows = [] {
        std::vector<TableRow> r = {
            {C::point_zero_core, {"Q"}, "Lie algebra"},
            {C::point_zero_core, {"Q", "Pi"}, "Lie bialgebra"},
            {C::point_zero_core, {"F", "Q", "Pi"}, "quasi-Lie bialgebra"},
            {C::point_zero_core, {"F", "Q", "Pi", "Phi"}, "proto-bialgebra"},
            {C::point_core, {"Q"}, "strict L2-algebra"},
            {C::point_core, {"q", "Q"}, "L2-algebra"},
            {C::point_core, {"Q", "Pi"}, "strict Lie 2-bialgebra"},
            {C::point_core, {"q", "Q", "Pi", "pi"}, "weak Lie 2-bialgebra"},
            {C::point_core, {"q", "Q", "t", "Pi", "pi"}, "2-term L∞[0,1]-bialgebra"},
            {C::point_core, {"f", "F", "q", "Q", "t", "Pi", "pi", "Phi", "phi"}, "quasi weak Lie 2-bialgebra"},
            {C::general_base, {"Q"}, "LA-groupoid"},
            {C::general_base, {"q", "Q"}, "quasi LA-groupoid"},
            {C::general_base, {"Pi"}, "PVB-groupoid"},
            {C::general_base, {"Pi", "pi"}, "quasi PVB-groupoid"},
            {C::general_base, {"Q", "Pi"}, "Lie-bialgebroid groupoid"},
            {C::general_base, {"Q", "Pi", "pi"}, "quasi-Poisson LA-groupoid"},
            {C::general_base, {"F", "Q", "Pi", "Phi"}, "multiplicative proto-bialgebroid"},
        };
        // Base M => M: the point-base names with "algebra" turned into "algebroid".
        size_t npoint = 10;
        for (size_t i = 0; i < npoint; ++i) {
            std::string name = r[i].name;
            name.back() = 'o';
            r.push_back({i < 4 ? C::unit_zero_core : C::unit_core, r[i].mask, name + "id"});
        }
        return r;
    }();
    return rows;
}

static std::vector<std::string> normalized(const std::vector<std::string>& mask) {
    std::vector<std::string> out;
    for (const auto& s : kSlots)
        if (std::find(mask.begin(), mask.end(), s) != mask.end()) out.push_back(s);
    for (const auto& m : mask) slot_index(m);
    return out;
}

ClassificationLabel classify(const std::vector<std::string>& mask, bool mc, TableContext ctx) {
    ClassificationLabel L{"", normalized(mask), mc, false};
    if (L.mask.empty()) {
        L.name = "trivial";
        L.in_table = true;
        return L;
    }
    if (ctx == TableContext::point_zero_core || ctx == TableContext::unit_zero_core)
        for (const auto& s : L.mask)
            if (s[0] >= 'a' && s[0] <= 'z') throw std::invalid_argument("classify: section slot " + s + " is nonzero although the core is zero");
    if (!mc) {
        L.name = "not Maurer-Cartan";
        return L;
    }
    for (const auto& row : table_rows())
        if (row.ctx == ctx && row.mask == L.mask) {
            L.name = row.name;
            L.in_table = true;
            return L;
        }
    L.name = "unclassified";
    return L;
}

std::vector<std::string> mask_of(const WeakL2Bialgebra& W) {
    std::vector<std::string> m;
    for (int k = 0; k < 9; ++k)
        if (!W.slot[k].is_zero()) m.push_back(kSlots[k]);
    return m;
}

std::vector<std::string> mask_of(const ProtoBialgebra& P) {
    std::vector<std::string> m;
    if (!P.chi.is_zero()) m.push_back("F");
    if (!P.mu.is_zero()) m.push_back("Q");
    if (!P.cobracket.is_zero()) m.push_back("Pi");
    if (!P.phi.is_zero()) m.push_back("Phi");
    return m;
}

DElement drinfeld_twist(const SymbolDGLA& B, const DElement& lambda, const DElement& theta) {
    if (B.G) throw std::invalid_argument("drinfeld_twist: expects a big bracket dgla");
    return gauge_transform(B.D, lambda, theta);
}

ProtoBialgebra drinfeld_twist(const AltTensor& lambda, const ProtoBialgebra& P) {
    P.validate();
    if (lambda.arity != 2 || lambda.in_dim != P.n || lambda.out_dim != 1) throw std::invalid_argument("drinfeld_twist: lambda must lie in L^2 g");
    SymbolDGLA B = build_big_bracket(std::vector<int>(P.n, 1), 2, 0, 1);
    const PhaseSpace& ps = *B.ps;
    ExtElement lam(ps.gens);
    for (const auto& [t, o] : lambda.entries)
        for (const auto& [k, v] : o) lam += v * ps.p(t[0]) * ps.p(t[1]);
    ExtElement zero(ps.gens);
    DElement l = B.encode(0, zero, lam), th = B.encode(1, zero, proto_theta(ps, P));
    return proto_from_theta(ps, B.decode(drinfeld_twist(B, l, th)).second);
}

}  // namespace qq
