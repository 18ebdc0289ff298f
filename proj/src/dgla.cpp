#include "quasiq/dgla.hpp"

#include <functional>
#include <stdexcept>

namespace qq {

void DGLA::validate() const {
    int n = dmax - dmin + 1;
    if (n < 0 || static_cast<int>(dims.size()) != n || static_cast<int>(d.size()) != n)
        throw std::invalid_argument("dgla: window and component lists disagree");
    for (int k = dmin; k < dmax; ++k) {
        const Mat& m = d[k - dmin];
        if (m.rows != dim(k + 1) || m.cols != dim(k)) throw std::invalid_argument("dgla: differential block has wrong shape");
    }
    for (const auto& [pq, t] : br) {
        if (!in_window(pq.first) || !in_window(pq.second) || !in_window(pq.first + pq.second))
            throw std::invalid_argument("dgla: bracket block outside the window");
        if (static_cast<int>(t.size()) != dim(pq.first)) throw std::invalid_argument("dgla: bracket block has wrong shape");
        for (const auto& row : t) {
            if (static_cast<int>(row.size()) != dim(pq.second)) throw std::invalid_argument("dgla: bracket block has wrong shape");
            for (const auto& v : row)
                if (!v.empty() && v.rbegin()->first >= dim(pq.first + pq.second))
                    throw std::invalid_argument("dgla: bracket value out of range");
        }
    }
}

bool DElement::is_zero() const {
    for (const auto& [i, c] : v)
        if (!c.is_zero()) return false;
    return true;
}

static SparseVec pruned(SparseVec v) {
    for (auto it = v.begin(); it != v.end();) it = it->second.is_zero() ? v.erase(it) : std::next(it);
    return v;
}

bool operator==(const DElement& a, const DElement& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.degree == b.degree && pruned(a.v) == pruned(b.v);
}

DElement zero_element(int degree) { return DElement{degree, {}}; }
DElement basis_element(int degree, int i) { return DElement{degree, SparseVec{{i, Scalar(1)}}}; }

static void same_degree(const DElement& a, const DElement& b) {
    if (a.degree != b.degree && !a.is_zero() && !b.is_zero()) throw std::invalid_argument("dgla: adding elements of different degree");
}

DElement operator+(const DElement& a, const DElement& b) {
    same_degree(a, b);
    DElement r{a.is_zero() ? b.degree : a.degree, a.v};
    axpy(r.v, Scalar(1), b.v);
    r.v = pruned(r.v);
    return r;
}

DElement operator-(const DElement& a, const DElement& b) { return a + Scalar(-1) * b; }

DElement operator*(const Scalar& s, const DElement& a) {
    DElement r{a.degree, {}};
    if (!s.is_zero())
        for (const auto& [i, c] : a.v) r.v[i] = s * c;
    return r;
}

DElement dgla_bracket(const DGLA& D, const DElement& x, const DElement& y) {
    int k = x.degree + y.degree;
    if (!D.in_window(k)) throw std::invalid_argument("dgla: bracket leaves the window");
    DElement r{k, {}};
    if (x.is_zero() || y.is_zero()) return r;
    auto it = D.br.find({x.degree, y.degree});
    if (it == D.br.end()) throw std::invalid_argument("dgla: bracket block missing");
    for (const auto& [i, a] : x.v)
        for (const auto& [j, b] : y.v) axpy(r.v, a * b, it->second[i][j]);
    r.v = pruned(r.v);
    return r;
}

DElement dgla_d(const DGLA& D, const DElement& x) {
    int k = x.degree + 1;
    if (!D.in_window(x.degree) || !D.in_window(k)) throw std::invalid_argument("dgla: differential leaves the window");
    const Mat& m = D.d[x.degree - D.dmin];
    DElement r{k, {}};
    for (const auto& [j, a] : x.v)
        for (int i = 0; i < m.rows; ++i)
            if (!m(i, j).is_zero()) r.v[i] += a * m(i, j);
    r.v = pruned(r.v);
    return r;
}

namespace {

int sgn(int e) { return (e & 1) ? -1 : 1; }

std::vector<Scalar> dense(const DElement& x, int n) { return to_dense(x.v, n); }

void note(CheckResult& c, std::vector<int> tuple, const DElement& r, const DGLA& D) {
    if (r.is_zero()) return;
    c.add_vec(std::move(tuple), dense(r, D.dim(r.degree)));
}

}  // namespace

Report verify_dgla(const DGLA& D) {
    D.validate();
    Report rep;
    auto& d2 = rep.get("d2");
    auto& anti = rep.get("antisymmetry");
    auto& jac = rep.get("jacobi");
    auto& leib = rep.get("leibniz");
    for (int k = D.dmin; k + 2 <= D.dmax; ++k)
        for (int i = 0; i < D.dim(k); ++i) note(d2, {k, i}, dgla_d(D, dgla_d(D, basis_element(k, i))), D);
    for (int p = D.dmin; p <= D.dmax; ++p)
        for (int q = p; q <= D.dmax; ++q) {
            if (!D.in_window(p + q)) continue;
            for (int i = 0; i < D.dim(p); ++i)
                for (int j = 0; j < D.dim(q); ++j) {
                    DElement x = basis_element(p, i), y = basis_element(q, j);
                    DElement xy = dgla_bracket(D, x, y), yx = dgla_bracket(D, y, x);
                    note(anti, {p, i, q, j}, xy + Scalar(sgn(p * q)) * yx, D);
                    if (D.in_window(p + q + 1)) {
                        DElement l = dgla_d(D, xy);
                        DElement r1 = D.in_window(p + 1) ? dgla_bracket(D, dgla_d(D, x), y) : zero_element(p + q + 1);
                        DElement r2 = D.in_window(q + 1) ? dgla_bracket(D, x, dgla_d(D, y)) : zero_element(p + q + 1);
                        // Only meaningful when both d x and d y are in the window.
                        if (D.in_window(p + 1) && D.in_window(q + 1)) note(leib, {p, i, q, j}, l - r1 - Scalar(sgn(p)) * r2, D);
                        if (p != q && D.in_window(p + 1) && D.in_window(q + 1)) {
                            DElement l2 = dgla_d(D, yx);
                            note(leib, {q, j, p, i},
                                 l2 - dgla_bracket(D, dgla_d(D, y), x) - Scalar(sgn(q)) * dgla_bracket(D, y, dgla_d(D, x)), D);
                        }
                    }
                }
        }
    // Jacobi on unordered triples: [x,[y,z]] = [[x,y],z] + (-1)^{pq} [y,[x,z]].
    for (int p = D.dmin; p <= D.dmax; ++p)
        for (int q = p; q <= D.dmax; ++q)
            for (int r = q; r <= D.dmax; ++r) {
                if (!D.in_window(p + q) || !D.in_window(q + r) || !D.in_window(p + r) || !D.in_window(p + q + r)) continue;
                for (int i = 0; i < D.dim(p); ++i)
                    for (int j = (q == p ? i : 0); j < D.dim(q); ++j)
                        for (int k = (r == q ? j : 0); k < D.dim(r); ++k) {
                            DElement x = basis_element(p, i), y = basis_element(q, j), z = basis_element(r, k);
                            DElement res = dgla_bracket(D, x, dgla_bracket(D, y, z)) - dgla_bracket(D, dgla_bracket(D, x, y), z) -
                                           Scalar(sgn(p * q)) * dgla_bracket(D, y, dgla_bracket(D, x, z));
                            note(jac, {p, i, q, j, r, k}, res, D);
                        }
            }
    return rep;
}

DElement mc_residual(const DGLA& D, const DElement& x) {
    if (x.degree != 1 && !x.is_zero()) throw std::invalid_argument("mc_residual: element must have degree 1");
    DElement y{1, x.v};
    return dgla_d(D, y) + Scalar(1, 2) * dgla_bracket(D, y, y);
}

DElement gauge_transform(const DGLA& D, const DElement& b, const DElement& x, int cap) {
    if (!b.is_zero() && b.degree != 0) throw std::invalid_argument("gauge_transform: parameter must have degree 0");
    if (!x.is_zero() && x.degree != 1) throw std::invalid_argument("gauge_transform: element must have degree 1");
    DElement b0{0, b.v};
    auto series = [&](DElement t, bool shifted) {
        DElement sum = zero_element(1);
        Scalar fact(1);
        for (int k = 0;; ++k) {
            if (t.is_zero()) return sum;
            if (k > cap) throw std::runtime_error("gauge_transform: ad_b is not nilpotent within the cap");
            fact *= Scalar(shifted ? k + 1 : (k == 0 ? 1 : k));
            sum = sum + Scalar(1) / fact * t;
            t = dgla_bracket(D, b0, t);
        }
    };
    DElement x1{1, x.v};
    return series(x1, false) - series(dgla_d(D, b0), true);
}

TwistedComplex twist_differential(const DGLA& D, const DElement& x) {
    if (!x.is_zero() && x.degree != 1) throw std::invalid_argument("twist_differential: element must have degree 1");
    DElement x1{1, x.v};
    TwistedComplex T{D, {}};
    for (int k = D.dmin; k < D.dmax; ++k) {
        if (!D.in_window(k + 1)) continue;
        Mat& m = T.D.d[k - D.dmin];
        for (int j = 0; j < D.dim(k); ++j)
            for (const auto& [i, c] : dgla_bracket(D, x1, basis_element(k, j)).v) m(i, j) += c;
    }
    auto& sq = T.report.get("square");
    auto& zero = T.report.get("square_zero");
    bool have_res = D.in_window(2);
    DElement res = have_res ? mc_residual(D, x1) : zero_element(2);
    for (int k = D.dmin; k + 2 <= D.dmax; ++k)
        for (int i = 0; i < D.dim(k); ++i) {
            DElement y = basis_element(k, i);
            DElement s = dgla_d(T.D, dgla_d(T.D, y));
            note(zero, {k, i}, s, D);
            if (have_res && D.in_window(k + 2)) note(sq, {k, i}, s - dgla_bracket(D, res, y), D);
        }
    return T;
}

DGLA lie_dgla(const AltTensor& bracket) {
    if (bracket.arity != 2 || bracket.in_dim != bracket.out_dim) throw std::invalid_argument("lie_dgla: need a bracket L^2 V -> V");
    int n = bracket.in_dim;
    DGLA D;
    D.dmin = D.dmax = 0;
    D.dims = {n};
    D.d = {Mat()};
    D.labels.resize(1);
    for (int i = 0; i < n; ++i) D.labels[0].push_back("e" + std::to_string(i));
    auto& t = D.br[{0, 0}];
    t.assign(n, std::vector<SparseVec>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            Scalar s = i < j ? Scalar(1) : Scalar(-1);
            std::vector<int> idx{std::min(i, j), std::max(i, j)};
            for (int k = 0; k < n; ++k) {
                Scalar v = bracket.eval(idx, k);
                if (!v.is_zero()) t[i][j][k] = s * v;
            }
        }
    D.d[0] = Mat(0, n);
    return D;
}

// ---- symbol models ----

const SymbolDGLA::Block* SymbolDGLA::find(int degree, const std::string& name) const {
    if (!D.in_window(degree)) return nullptr;
    for (const auto& b : blocks[degree - D.dmin])
        if (b.name == name) return &b;
    return nullptr;
}

DElement SymbolDGLA::encode(int degree, const ExtElement& section, const ExtElement& mvf) const {
    if (!D.in_window(degree)) throw std::invalid_argument("encode: degree outside the window");
    DElement x{degree, {}};
    auto put = [&](const ExtElement& f, bool sec) {
        ExtElement rest = f;
        for (const auto& b : blocks[degree - D.dmin]) {
            if (b.section != sec) continue;
            ExtElement part = ps->arity_part(f, b.arity);
            if (part.is_zero()) continue;
            rest -= part;
            SparseVec c = b.basis.coords(part);
            if (b.sub) {
                auto co = b.sub->coords(c);
                if (!co) throw std::invalid_argument("encode: " + b.name + " part is not multiplicative");
                for (int i = 0; i < static_cast<int>(co->size()); ++i)
                    if (!(*co)[i].is_zero()) x.v[b.offset + i] = (*co)[i];
            } else {
                for (const auto& [i, v] : c) x.v[b.offset + i] = v;
            }
        }
        if (!rest.is_zero()) throw std::invalid_argument("encode: element has components outside the window blocks");
    };
    if (!section.is_zero()) put(section, true);
    if (!mvf.is_zero()) put(mvf, false);
    return x;
}

std::pair<ExtElement, ExtElement> SymbolDGLA::decode(const DElement& x) const {
    ExtElement sec(ps->gens), mv(ps->gens);
    if (x.is_zero()) return {sec, mv};
    for (const auto& b : blocks.at(x.degree - D.dmin)) {
        SparseVec local;
        for (const auto& [i, c] : x.v)
            if (i >= b.offset && i < b.offset + b.size()) local[i - b.offset] = c;
        if (local.empty()) continue;
        SparseVec amb;
        if (b.sub) {
            for (const auto& [i, c] : local) axpy(amb, c, b.sub->basis()[i]);
        } else {
            amb = local;
        }
        (b.section ? sec : mv) += b.basis.element(ps->gens, amb);
    }
    return {sec, mv};
}

ExtElement SymbolDGLA::block_part(const DElement& x, const std::string& name) const {
    const Block* b = find(x.degree, name);
    if (!b) return ExtElement(ps->gens);  // zero-dimensional block
    DElement y{x.degree, {}};
    for (const auto& [i, c] : x.v)
        if (i >= b->offset && i < b->offset + b->size()) y.v[i] = c;
    auto [s, m] = decode(y);
    return b->section ? s : m;
}

namespace {

// All monomials of total degree deg with exactly j momenta, over generators allowed by keep.
std::vector<Monomial> graded_monomials(const PhaseSpace& ps, int deg, int j, const std::function<bool(int)>& keep) {
    std::vector<Monomial> out;
    const auto& g = *ps.gens;
    Monomial cur;
    std::function<void(int, int, int)> rec = [&](int start, int left, int mom) {
        if (left == 0) {
            if (mom == j) out.push_back(cur);
            return;
        }
        for (int k = start; k < g.size(); ++k) {
            if (!keep(k)) continue;
            int dk = g.degrees[k];
            if (dk <= 0) throw std::invalid_argument("graded_monomials: generators must have positive degree");
            if (dk > left) continue;
            int m2 = mom + (ps.is_momentum(k) ? 1 : 0);
            if (m2 > j) continue;
            cur.push_back(static_cast<uint8_t>(k));
            rec(g.odd(k) ? k + 1 : k, left - dk, m2);
            cur.pop_back();
        }
    };
    rec(0, deg, 0);
    return out;
}

// Fills the dgla from the block layout. Brackets:
// [X,Y] = {X,Y}; [X,s] = (-1)^|X| s' with s'^r = {X, s^r}; [s,X] = -(-1)^{(|s|+1)|X|} s' ; [s,t] = 0;
// d(s) = s^r - s^l, d(X) = 0.
void materialize(SymbolDGLA& S) {
    DGLA& D = S.D;
    int n = D.dmax - D.dmin + 1;
    D.dims.assign(n, 0);
    D.labels.assign(n, {});
    for (int k = D.dmin; k <= D.dmax; ++k) {
        int off = 0;
        for (auto& b : S.blocks[k - D.dmin]) {
            b.offset = off;
            for (int i = 0; i < b.size(); ++i) D.labels[k - D.dmin].push_back(b.name + "[" + std::to_string(i) + "]");
            off += b.size();
        }
        D.dims[k - D.dmin] = off;
    }
    // Basis symbols per degree, split as (section, multivector).
    std::vector<std::vector<std::pair<ExtElement, ExtElement>>> sym(n);
    for (int k = D.dmin; k <= D.dmax; ++k)
        for (int i = 0; i < D.dim(k); ++i) sym[k - D.dmin].push_back(S.decode(basis_element(k, i)));
    const PhaseSpace& ps = *S.ps;
    const PointVBGroupoid* G = S.G ? &*S.G : nullptr;
    auto sec_of = [&](const ExtElement& Y) {
        if (Y.is_zero()) return Y;
        auto s = G->section_of_right(Y);
        if (!s) throw std::logic_error("dgla: bracket of a multivector with a right extension is not right invariant");
        return *s;
    };
    D.d.assign(n, Mat());
    for (int k = D.dmin; k <= D.dmax; ++k) {
        if (!D.in_window(k + 1)) {
            D.d[k - D.dmin] = Mat(0, D.dim(k));
            continue;
        }
        Mat m(D.dim(k + 1), D.dim(k));
        for (int i = 0; i < D.dim(k); ++i) {
            const auto& [s, X] = sym[k - D.dmin][i];
            if (s.is_zero()) continue;
            ExtElement ds = G->right_ext(s) - G->left_ext(s);
            for (const auto& [r, c] : S.encode(k + 1, ExtElement(ps.gens), ds).v) m(r, i) = c;
        }
        D.d[k - D.dmin] = m;
    }
    ExtElement zero(ps.gens);
    for (int p = D.dmin; p <= D.dmax; ++p)
        for (int q = D.dmin; q <= D.dmax; ++q) {
            if (!D.in_window(p + q)) continue;
            auto& t = D.br[{p, q}];
            t.assign(D.dim(p), std::vector<SparseVec>(D.dim(q)));
            for (int i = 0; i < D.dim(p); ++i)
                for (int j = 0; j < D.dim(q); ++j) {
                    const auto& [s1, X1] = sym[p - D.dmin][i];
                    const auto& [s2, X2] = sym[q - D.dmin][j];
                    ExtElement sec(ps.gens), mv(ps.gens);
                    if (!X1.is_zero() && !X2.is_zero()) mv = pbracket(ps, X1, X2);
                    if (!X1.is_zero() && !s2.is_zero()) sec += Scalar(sgn(p)) * sec_of(pbracket(ps, X1, G->right_ext(s2)));
                    if (!s1.is_zero() && !X2.is_zero()) sec -= Scalar(sgn((p + 1) * q)) * sec_of(pbracket(ps, X2, G->right_ext(s1)));
                    t[i][j] = S.encode(p + q, sec, mv).v;
                }
        }
    D.validate();
}

SymbolDGLA groupoid_model(const PointVBGroupoid& G, int dmin, int dmax, bool all_arities) {
    if (dmin > dmax) throw std::invalid_argument("dgla window is empty");
    SymbolDGLA S;
    S.D.dmin = dmin;
    S.D.dmax = dmax;
    S.ps = G.ps;
    S.shift = 2;
    S.G = G;
    S.blocks.resize(dmax - dmin + 1);
    for (int k = dmin; k <= dmax; ++k) {
        auto& bl = S.blocks[k - dmin];
        // Sections: symbol degree k + 3 with j momenta p_gam; multivectors: degree k + 2.
        int jmax = all_arities ? k + 3 : 1;
        for (int j = all_arities ? 0 : 1; j <= jmax; ++j) {
            int m = k + 3 - j;
            if (m < 0 || m > G.e || j > G.c) continue;
            MonomialBasis b = section_basis(G, m, j);
            if (b.size() == 0) continue;
            bl.push_back({all_arities ? "sec" + std::to_string(j) : "sec", true, j, std::move(b), std::nullopt, 0});
        }
        jmax = all_arities ? k + 2 : 1;
        for (int j = all_arities ? 0 : 1; j <= jmax; ++j) {
            int xdeg = k + 2 - j;
            if (xdeg < 0 || xdeg > G.N() || j > G.N()) continue;
            SymbolSpace sp = symbol_space(G, xdeg, j);
            if (sp.kernel.dim() == 0) continue;
            bl.push_back({all_arities ? "mvf" + std::to_string(j) : "der", false, j, std::move(sp.basis), std::move(sp.kernel), 0});
        }
    }
    materialize(S);
    return S;
}

}  // namespace

SymbolDGLA build_groupoid_dgla(const PointVBGroupoid& G, int dmin, int dmax) { return groupoid_model(G, dmin, dmax, false); }

SymbolDGLA build_mvf_dgla(const PointVBGroupoid& G, int dmin, int dmax) { return groupoid_model(G, dmin, dmax, true); }

SymbolDGLA build_big_bracket(const std::vector<int>& degrees, int n, int dmin, int dmax) {
    for (int g : degrees)
        if (g < 1 || g >= n) throw std::invalid_argument("build_big_bracket: generator degrees must lie in [1, n-1]");
    if (n != 2 && n != 3) throw std::invalid_argument("build_big_bracket: only the ungraded (n = 2) and two-term (n = 3) cases are supported");
    if (dmin > dmax) throw std::invalid_argument("dgla window is empty");
    std::vector<std::string> labels;
    for (size_t i = 0; i < degrees.size(); ++i) labels.push_back("x" + std::to_string(i));
    SymbolDGLA S;
    S.D.dmin = dmin;
    S.D.dmax = dmax;
    S.ps = make_phase(make_gens(labels, degrees), n);
    S.shift = n;
    S.blocks.resize(dmax - dmin + 1);
    for (int k = dmin; k <= dmax; ++k) {
        int deg = k + n;
        if (deg < 0) continue;
        for (int j = 0; j <= deg; ++j) {
            auto monos = graded_monomials(*S.ps, deg, j, [](int) { return true; });
            if (monos.empty()) continue;
            S.blocks[k - dmin].push_back({"w" + std::to_string(j), false, j, MonomialBasis(std::move(monos)), std::nullopt, 0});
        }
    }
    materialize(S);
    return S;
}

}  // namespace qq
