#include "quasiq/phase.hpp"

#include <algorithm>
#include <stdexcept>

namespace qq {

namespace {
inline int par(int x) { return (x & 1) ? -1 : 1; }
}  // namespace

PhaseSpace::PhaseSpace(Gens b, int n_, const std::string& momentum_prefix) : base(std::move(b)), n(n_) {
    nb = base->size();
    std::vector<std::string> labels = base->labels;
    std::vector<int> degrees = base->degrees;
    for (int a = 0; a < nb; ++a) {
        labels.push_back(momentum_prefix + base->labels[a]);
        degrees.push_back(n - base->degrees[a]);
    }
    gens = make_gens(std::move(labels), std::move(degrees));
}

Phase make_phase(Gens base, int n, const std::string& momentum_prefix) {
    return std::make_shared<const PhaseSpace>(std::move(base), n, momentum_prefix);
}

ExtElement PhaseSpace::lift(const ExtElement& f) const {
    if (f.gens() && !same_gens(f.gens(), base)) throw std::invalid_argument("lift: element not in the base algebra");
    ExtElement r(gens);
    for (const auto& [m, c] : f.terms()) r.add_term(m, c);
    return r;
}

ExtElement PhaseSpace::drop(const ExtElement& f) const {
    ExtElement r(base);
    for (const auto& [m, c] : f.terms()) {
        for (auto g : m)
            if (g >= nb) throw std::invalid_argument("drop: element contains momenta");
        r.add_term(m, c);
    }
    return r;
}

int PhaseSpace::pdeg(const Monomial& m) const {
    int k = 0;
    for (auto g : m)
        if (g >= nb) ++k;
    return k;
}

ExtElement PhaseSpace::arity_part(const ExtElement& f, int k) const {
    ExtElement r(gens);
    for (const auto& [m, c] : f.terms())
        if (pdeg(m) == k) r.add_term(m, c);
    return r;
}

namespace {

// {y, z} for single generators.
Scalar pair_gen(const PhaseSpace& ps, int y, int z) {
    if (ps.is_momentum(y) && !ps.is_momentum(z) && y - ps.nb == z) return Scalar(1);
    if (!ps.is_momentum(y) && ps.is_momentum(z) && z - ps.nb == y) {
        int dx = ps.gens->degrees[y];
        return Scalar(-par(dx * (dx - ps.n)));
    }
    return Scalar(0);
}

void bracket_mono(const PhaseSpace& ps, const Monomial& u, const Monomial& v, const Scalar& coef, ExtElement& out) {
    const GeneratorSet& g = *ps.gens;
    const int n = ps.n;
    const int du = monomial_degree(g, u);
    int dv_before = 0;
    Monomial uw, m1, m2;
    for (size_t j = 0; j < v.size(); ++j) {
        const int y = v[j];
        const int dy = g.degrees[y];
        int du_before = 0;
        for (size_t i = 0; i < u.size(); ++i) {
            const int z = u[i];
            Scalar c = pair_gen(ps, y, z);
            if (!c.is_zero()) {
                int sign = -par((du - n) * (dy - n)) * par((dy - n) * du_before) * par((du - n) * dv_before);
                uw.assign(u.begin(), u.end());
                uw.erase(uw.begin() + static_cast<long>(i));
                Monomial a(v.begin(), v.begin() + static_cast<long>(j));
                Monomial b(v.begin() + static_cast<long>(j) + 1, v.end());
                int s1 = monomial_mul(g, a, uw, m1);
                if (s1 != 0) {
                    int s2 = monomial_mul(g, m1, b, m2);
                    if (s2 != 0) {
                        Scalar t = coef * c;
                        if (sign * s1 * s2 < 0) t = -t;
                        out.add_term(m2, t);
                    }
                }
            }
            du_before += g.degrees[z];
        }
        dv_before += dy;
    }
}

}  // namespace

ExtElement pbracket(const PhaseSpace& ps, const ExtElement& f, const ExtElement& g) {
    if (!same_gens(f.gens(), ps.gens) && !f.is_zero()) throw std::invalid_argument("bracket: element outside phase algebra");
    if (!same_gens(g.gens(), ps.gens) && !g.is_zero()) throw std::invalid_argument("bracket: element outside phase algebra");
    ExtElement out(ps.gens);
    for (const auto& [u, cu] : f.terms())
        for (const auto& [v, cv] : g.terms()) bracket_mono(ps, u, v, cu * cv, out);
    return out;
}

Derivation Derivation::zero(Gens g, int degree) {
    Derivation d;
    d.degree = degree;
    for (int i = 0; i < g->size(); ++i) d.values.emplace_back(g);
    d.gens = std::move(g);
    return d;
}

ExtElement Derivation::apply(const ExtElement& f) const {
    ExtElement r(gens);
    const GeneratorSet& g = *gens;
    for (const auto& [u, c] : f.terms()) {
        int before = 0;
        for (size_t i = 0; i < u.size(); ++i) {
            const ExtElement& xi = values[u[i]];
            if (!xi.is_zero()) {
                Monomial a(u.begin(), u.begin() + static_cast<long>(i));
                Monomial b(u.begin() + static_cast<long>(i) + 1, u.end());
                ExtElement t = ExtElement::monomial(gens, a, (degree * before) & 1 ? -c : c) * xi *
                               ExtElement::monomial(gens, b);
                r += t;
            }
            before += g.degrees[u[i]];
        }
    }
    return r;
}

bool operator==(const Derivation& a, const Derivation& b) {
    if (a.values.size() != b.values.size()) return false;
    bool az = a.is_zero(), bz = b.is_zero();
    if (az && bz) return true;
    if (a.degree != b.degree) return false;
    for (size_t i = 0; i < a.values.size(); ++i)
        if (!(a.values[i] == b.values[i])) return false;
    return true;
}

Derivation& Derivation::operator+=(const Derivation& o) {
    if (values.size() != o.values.size()) throw std::invalid_argument("derivation sum: generator mismatch");
    if (is_zero()) degree = o.degree;
    else if (!o.is_zero() && o.degree != degree) throw std::invalid_argument("derivation sum: degree mismatch");
    for (size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
}

Derivation& Derivation::operator-=(const Derivation& o) { return *this += (-o); }

Derivation Derivation::operator-() const {
    Derivation d = *this;
    for (auto& v : d.values) v = -v;
    return d;
}

Derivation operator*(const Scalar& s, Derivation a) {
    for (auto& v : a.values) v *= s;
    return a;
}

bool Derivation::is_zero() const {
    for (const auto& v : values)
        if (!v.is_zero()) return false;
    return true;
}

void Derivation::validate() const {
    if (static_cast<int>(values.size()) != gens->size()) throw std::invalid_argument("derivation: wrong number of values");
    for (int i = 0; i < gens->size(); ++i)
        for (const auto& [m, c] : values[i].terms())
            if (monomial_degree(*gens, m) != gens->degrees[i] + degree)
                throw std::invalid_argument("derivation: value on " + gens->labels[i] + " has wrong degree");
}

Derivation commutator(const Derivation& X, const Derivation& Y) {
    if (!same_gens(X.gens, Y.gens)) throw std::invalid_argument("commutator: generator-set mismatch");
    Derivation r = Derivation::zero(X.gens, X.degree + Y.degree);
    bool neg = (X.degree * Y.degree) & 1;
    for (size_t i = 0; i < r.values.size(); ++i) {
        ExtElement xy = X.apply(Y.values[i]);
        ExtElement yx = Y.apply(X.values[i]);
        r.values[i] = neg ? xy + yx : xy - yx;
    }
    return r;
}

Derivation square(const Derivation& X) {
    Derivation r = Derivation::zero(X.gens, 2 * X.degree);
    for (size_t i = 0; i < r.values.size(); ++i) r.values[i] = X.apply(X.values[i]);
    return r;
}

ExtElement symbol(const PhaseSpace& ps, const Derivation& X) {
    if (!same_gens(X.gens, ps.base)) throw std::invalid_argument("symbol: generator-set mismatch");
    ExtElement r(ps.gens);
    for (int a = 0; a < ps.nb; ++a) r += ps.lift(X.values[a]) * ps.p(a);
    return r;
}

Derivation derivation_of(const PhaseSpace& ps, const ExtElement& P, int degree) {
    Derivation d = Derivation::zero(ps.base, degree);
    for (int a = 0; a < ps.nb; ++a) d.values[a] = ps.drop(pbracket(ps, P, ps.x(a)));
    return d;
}

int MultiDerivation::arity() const {
    int k = -1;
    for (const auto& [m, c] : sym.terms()) {
        int j = ps->pdeg(m);
        if (k == -1) k = j;
        else if (k != j) return -1;
    }
    return k;
}

MultiDerivation schouten(const MultiDerivation& P, const MultiDerivation& R) {
    if (!same_gens(P.ps->gens, R.ps->gens)) throw std::invalid_argument("schouten: generator-set mismatch");
    return MultiDerivation{P.ps, pbracket(*P.ps, P.sym, R.sym)};
}

Gens odd_gens(int n, const std::string& prefix) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
    return make_gens(std::move(labels), std::vector<int>(n, 1));
}

Derivation ce_differential(const AltTensor& bracket, const Gens& gens) {
    int N = gens->size();
    if (bracket.arity != 2 || bracket.in_dim != N || bracket.out_dim != N)
        throw std::invalid_argument("ce_differential: bracket does not match the generator count");
    Derivation Q = Derivation::zero(gens, 1);
    for (const auto& [idx, out] : bracket.entries)
        for (const auto& [k, v] : out)
            Q.values[k] -= v * (ExtElement::generator(gens, idx[0]) * ExtElement::generator(gens, idx[1]));
    return Q;
}

Gens degree2_gens(int e, int c) {
    std::vector<std::string> labels;
    std::vector<int> degrees;
    for (int i = 0; i < e; ++i) {
        labels.push_back("eps" + std::to_string(i));
        degrees.push_back(1);
    }
    for (int a = 0; a < c; ++a) {
        labels.push_back("gam" + std::to_string(a));
        degrees.push_back(2);
    }
    return make_gens(std::move(labels), std::move(degrees));
}

Derivation ce_degree2(const L2Algebra& L) {
    L.validate();
    Gens g = degree2_gens(L.e, L.c);
    auto eps = [&](int i) { return ExtElement::generator(g, i); };
    auto gam = [&](int a) { return ExtElement::generator(g, L.e + a); };
    Derivation Q = Derivation::zero(g, 1);
    for (const auto& [idx, out] : L.bracket.entries)
        for (const auto& [k, v] : out) Q.values[k] -= v * (eps(idx[0]) * eps(idx[1]));
    for (int i = 0; i < L.e; ++i)
        for (int a = 0; a < L.c; ++a)
            if (!L.d(i, a).is_zero()) Q.values[i] += L.d(i, a) * gam(a);
    for (const auto& [idx, out] : L.nabla.entries)
        for (const auto& [a, v] : out) Q.values[L.e + a] -= v * (eps(idx[0]) * gam(idx[1]));
    for (const auto& [idx, out] : L.K.entries)
        for (const auto& [a, v] : out) Q.values[L.e + a] += v * (eps(idx[0]) * eps(idx[1]) * eps(idx[2]));
    return Q;
}

Phase even_phase(int n, const std::string& zprefix, const std::string& wprefix) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(zprefix + std::to_string(i));
    return make_phase(make_gens(std::move(labels), std::vector<int>(n, 0)), 1, wprefix);
}

int LinearPolyMVF::poly_degree() const {
    int d = -1;
    for (const auto& [m, c] : sym.terms()) d = std::max(d, static_cast<int>(m.size()) - ps->pdeg(m));
    return d;
}

int LinearPolyMVF::mv_degree() const {
    int d = -1;
    for (const auto& [m, c] : sym.terms()) d = std::max(d, ps->pdeg(m));
    return d;
}

LinearPolyMVF linear_schouten(const LinearPolyMVF& P, const LinearPolyMVF& R) {
    if (!same_gens(P.ps->gens, R.ps->gens)) throw std::invalid_argument("linear_schouten: base mismatch");
    LinearPolyMVF out{P.ps, pbracket(*P.ps, P.sym, R.sym)};
    if (out.mv_degree() > 4) throw std::invalid_argument("linear_schouten: multivector degree exceeds 4");
    if (out.poly_degree() > 1) throw std::invalid_argument("linear_schouten: result is not linear");
    return out;
}

ExtElement sigma_map(const LinearPolyMVF& P, const PhaseSpace& odd) {
    if (P.ps->nb != odd.nb) throw std::invalid_argument("sigma_map: dimension mismatch");
    std::vector<ExtElement> images;
    for (int a = 0; a < odd.nb; ++a) images.push_back(odd.p(a));
    for (int a = 0; a < odd.nb; ++a) images.push_back(odd.x(a));
    return substitute(P.sym, images, odd.gens);
}

LinearPolyMVF sigma_inverse(const ExtElement& sym, const PhaseSpace& odd, const Phase& even) {
    if (even->nb != odd.nb) throw std::invalid_argument("sigma_inverse: dimension mismatch");
    // Inverse substitution, applied to monomials with at most one momentum.
    ExtElement r(even->gens);
    for (const auto& [m, c] : sym.terms()) {
        if (odd.pdeg(m) > 1) throw std::invalid_argument("sigma_inverse: symbol is not linear in momenta");
        // sigma(z w..w) = p x..x puts p in front; sorted order has it last.
        int nx = static_cast<int>(m.size()) - odd.pdeg(m);
        ExtElement t = ExtElement::constant(even->gens, odd.pdeg(m) == 1 && nx % 2 ? -c : c);
        for (auto g : m) t = t * (odd.is_momentum(g) ? even->x(g - odd.nb) : even->p(g));
        r += t;
    }
    return LinearPolyMVF{even, r};
}

MonomialBasis::MonomialBasis(std::vector<Monomial> m) : monos(std::move(m)) {
    for (int i = 0; i < static_cast<int>(monos.size()); ++i) index.emplace(monos[i], i);
}

SparseVec MonomialBasis::coords(const ExtElement& f) const {
    SparseVec v;
    for (const auto& [m, c] : f.terms()) {
        auto it = index.find(m);
        if (it == index.end()) throw std::invalid_argument("element outside the monomial basis");
        v[it->second] = c;
    }
    return v;
}

ExtElement MonomialBasis::element(const Gens& g, const SparseVec& v) const {
    ExtElement r(g);
    for (const auto& [i, c] : v) r.add_term(monos[i], c);
    return r;
}

namespace {
void subsets(const std::vector<int>& pool, int k, size_t start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (size_t i = start; i < pool.size(); ++i) {
        cur.push_back(pool[i]);
        subsets(pool, k, i + 1, cur, out);
        cur.pop_back();
    }
}
}  // namespace

std::vector<Monomial> odd_monomials(const std::vector<int>& xgens, int xdeg, const std::vector<int>& pgens, int pdeg) {
    std::vector<std::vector<int>> xs, ps;
    std::vector<int> cur;
    subsets(xgens, xdeg, 0, cur, xs);
    subsets(pgens, pdeg, 0, cur, ps);
    std::vector<Monomial> out;
    for (const auto& a : xs)
        for (const auto& b : ps) {
            std::vector<int> m = a;
            m.insert(m.end(), b.begin(), b.end());
            std::sort(m.begin(), m.end());
            out.emplace_back(m.begin(), m.end());
        }
    return out;
}

}  // namespace qq
