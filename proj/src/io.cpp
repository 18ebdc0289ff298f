#include "quasiq/io.hpp"

#include <algorithm>
#include <set>

namespace qq {

const std::vector<std::string>& document_kinds() {
    static const std::vector<std::string> k = {"l2algebra", "l2morphism",  "l2twomorphism", "xmod",
                                               "ruth",      "qla",         "quasiq",        "extension-problem",
                                               "proto",     "weakl2bialg", "dgla",          "tensor"};
    return k;
}

// ---- writing ----

Json scalar_json(const Scalar& s) { return s.str(); }

static Json sparse_json(const SparseVec& v) {
    Json out = Json::array();
    for (const auto& [k, x] : v)
        if (!x.is_zero()) out.push_back(Json::array({k, scalar_json(x)}));
    return out;
}

Json tensor_json(const AltTensor& T) {
    Json out = Json::array();
    for (const auto& [in, v] : T.entries) {
        Json o = sparse_json(v);
        if (o.empty()) continue;
        out.push_back(Json{{"in", in}, {"out", o}});
    }
    return out;
}

Json mat_json(const Mat& m) {
    Json out = Json::array();
    for (int i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(scalar_json(m(i, j)));
        out.push_back(row);
    }
    return out;
}

Json poly_json(const ExtElement& f) {
    Json out = Json::array();
    for (const auto& [m, c] : f.terms()) {
        Json mono = Json::array();
        for (auto g : m) mono.push_back(f.gens()->labels[g]);
        out.push_back(Json{{"m", mono}, {"c", scalar_json(c)}});
    }
    return out;
}

Json report_json(const Report& R) {
    Json checks = Json::array();
    for (const auto& c : R.checks) {
        Json w = Json::array();
        for (const auto& x : c.witnesses) {
            Json vals = Json::array();
            for (const auto& [k, v] : x.values) vals.push_back(Json::array({k, scalar_json(v)}));
            Json o{{"tuple", x.tuple}, {"values", vals}};
            if (!x.note.empty()) o["note"] = x.note;
            w.push_back(o);
        }
        checks.push_back(Json{{"id", c.id}, {"pass", c.pass()}, {"total", c.total}, {"witnesses", w}});
    }
    return Json{{"verdict", R.pass() ? "pass" : "fail"}, {"checks", checks}};
}

static Json l2_json(const L2Algebra& L) {
    return Json{{"dims", {{"E", L.e}, {"C", L.c}}},
                {"d", mat_json(L.d)},
                {"bracket", tensor_json(L.bracket)},
                {"nabla", tensor_json(L.nabla)},
                {"K", tensor_json(L.K)}};
}

static Json morphism_json(const L2Morphism& F) {
    return Json{{"source", l2_json(F.src)},
                {"target", l2_json(F.tgt)},
                {"F0", mat_json(F.F0)},
                {"F1", mat_json(F.F1)},
                {"beta", tensor_json(F.beta)}};
}

static Json groupoid_fields(const PointVBGroupoid& G) { return Json{{"dims", {{"E", G.e}, {"C", G.c}}}, {"d", mat_json(G.d)}}; }

static Json qla_json(const QuasiQ& S) {
    Json j = groupoid_fields(S.G);
    Json Q = Json::object();
    for (int g = 0; g < S.G.gens->size(); ++g) Q[S.G.gens->labels[g]] = poly_json(S.Q.values[g]);
    j["Q"] = Q;
    j["q"] = tensor_json(S.q);
    return j;
}

struct PayloadWriter {
    Json operator()(const L2Algebra& L) const { return l2_json(L); }
    Json operator()(const L2Morphism& F) const { return morphism_json(F); }
    Json operator()(const L2TwoMorphism& T) const {
        return Json{{"from", morphism_json(T.from)}, {"to", morphism_json(T.to)}, {"theta", mat_json(T.theta)}};
    }
    Json operator()(const CrossedModule& X) const {
        return Json{{"dims", {{"g", X.g}, {"h", X.h}}},
                    {"d", mat_json(X.d)},
                    {"bracket_g", tensor_json(X.bracket_g)},
                    {"bracket_h", tensor_json(X.bracket_h)},
                    {"action", tensor_json(X.action)}};
    }
    Json operator()(const Ruth& R) const {
        Json n0 = Json::array(), n1 = Json::array(), om = Json::array();
        for (const auto& m : R.nabla0) n0.push_back(mat_json(m));
        for (const auto& m : R.nabla1) n1.push_back(mat_json(m));
        for (const auto& [ij, m] : R.omega)
            if (!m.is_zero()) om.push_back(Json{{"in", {ij.first, ij.second}}, {"value", mat_json(m)}});
        return Json{{"g", l2_json(R.g)},
                    {"dims", {{"V0", R.dv.cols}, {"V1", R.dv.rows}}},
                    {"dv", mat_json(R.dv)},
                    {"nabla0", n0},
                    {"nabla1", n1},
                    {"omega", om}};
    }
    Json operator()(const QuasiQ& S) const { return qla_json(S); }
    Json operator()(const ExtensionProblem& P) const {
        Json j{{"structure", qla_json(P.S)}, {"h", poly_json(P.h)}, {"xi", poly_json(P.xi)}};
        if (P.h2) j["h2"] = poly_json(*P.h2);
        if (P.xi2) j["xi2"] = poly_json(*P.xi2);
        return j;
    }
    Json operator()(const ProtoBialgebra& P) const {
        return Json{{"n", P.n},
                    {"mu", tensor_json(P.mu)},
                    {"cobracket", tensor_json(P.cobracket)},
                    {"phi", tensor_json(P.phi)},
                    {"chi", tensor_json(P.chi)}};
    }
    Json operator()(const WeakL2Bialgebra& W) const {
        Json j = groupoid_fields(W.G);
        Json s = Json::object();
        for (size_t k = 0; k < kSlots.size(); ++k)
            if (!W.slot[k].is_zero()) s[kSlots[k]] = poly_json(W.slot[k]);
        j["slots"] = s;
        return j;
    }
    Json operator()(const DGLA& D) const {
        Json comps = Json::array(), d = Json::array(), br = Json::array();
        for (int k = D.dmin; k <= D.dmax; ++k) {
            comps.push_back(Json{{"degree", k}, {"dim", D.dim(k)}, {"labels", D.labels[k - D.dmin]}});
            if (k < D.dmax) d.push_back(Json{{"degree", k}, {"matrix", mat_json(D.d[k - D.dmin])}});
        }
        for (const auto& [pq, tab] : D.br) {
            Json entries = Json::array();
            for (size_t i = 0; i < tab.size(); ++i)
                for (size_t j = 0; j < tab[i].size(); ++j) {
                    Json o = sparse_json(tab[i][j]);
                    if (!o.empty()) entries.push_back(Json{{"in", {i, j}}, {"out", o}});
                }
            br.push_back(Json{{"degrees", {pq.first, pq.second}}, {"entries", entries}});
        }
        return Json{{"window", {D.dmin, D.dmax}}, {"components", comps}, {"d", d}, {"bracket", br}};
    }
    Json operator()(const AltTensor& T) const {
        return Json{{"arity", T.arity}, {"in", T.in_dim}, {"out", T.out_dim}, {"entries", tensor_json(T)}};
    }
};

Json to_json(const Document& doc) {
    Json j{{"kind", doc.kind}};
    Json meta{{"version", doc.meta.version}};
    if (!doc.meta.name.empty()) meta["name"] = doc.meta.name;
    if (doc.meta.seed) meta["seed"] = *doc.meta.seed;
    j["meta"] = meta;
    Json body = std::visit(PayloadWriter{}, doc.payload);
    for (auto& [k, v] : body.items()) j[k] = v;
    return j;
}

std::string serialize(const Document& doc) { return to_json(doc).dump(2) + "\n"; }

// ---- reading ----

namespace {

struct Reader {
    std::vector<std::string>* warnings;

    [[noreturn]] void fail(const std::string& path, const std::string& msg) const { throw SchemaError(path, msg); }

    const Json& field(const Json& j, const std::string& path, const std::string& key) const {
        if (!j.is_object()) fail(path, "expected an object");
        auto it = j.find(key);
        if (it == j.end()) fail(path + "." + key, "missing field");
        return *it;
    }
    const Json* optional_field(const Json& j, const std::string& key) const {
        auto it = j.find(key);
        return it == j.end() ? nullptr : &*it;
    }
    const Json& array(const Json& j, const std::string& path) const {
        if (!j.is_array()) fail(path, "expected an array");
        return j;
    }
    int integer(const Json& j, const std::string& path, int lo = 0, int hi = 1 << 20) const {
        if (!j.is_number_integer()) fail(path, "expected an integer");
        long long v = j.get<long long>();
        if (v < lo || v > hi) fail(path, "integer " + std::to_string(v) + " out of range [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
        return static_cast<int>(v);
    }
    std::string string(const Json& j, const std::string& path) const {
        if (!j.is_string()) fail(path, "expected a string");
        return j.get<std::string>();
    }
    Scalar scalar(const Json& j, const std::string& path) const {
        std::string s;
        if (j.is_number_integer()) s = std::to_string(j.get<long long>());
        else if (j.is_string()) s = j.get<std::string>();
        else fail(path, "expected a rational string \"p/q\"");
        bool normalized = false;
        Scalar x;
        try {
            x = Scalar::parse(s, &normalized);
        } catch (const std::invalid_argument& e) {
            fail(path, e.what());
        }
        if (normalized && j.is_string()) warnings->push_back(path + ": '" + s + "' normalized to '" + x.str() + "'");
        return x;
    }
    int dim(const Json& dims, const std::string& path, const std::string& key) const {
        return integer(field(dims, path, key), path + "." + key, 0, 16);
    }

    Mat mat(const Json& j, const std::string& path, int rows, int cols) const {
        array(j, path);
        if (static_cast<int>(j.size()) != rows)
            fail(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
        Mat m(rows, cols);
        for (int i = 0; i < rows; ++i) {
            std::string rp = path + "[" + std::to_string(i) + "]";
            const Json& row = array(j[i], rp);
            if (static_cast<int>(row.size()) != cols)
                fail(rp, "expected " + std::to_string(cols) + " columns, got " + std::to_string(row.size()));
            for (int c = 0; c < cols; ++c) m(i, c) = scalar(row[c], rp + "[" + std::to_string(c) + "]");
        }
        return m;
    }

    SparseVec sparse(const Json& j, const std::string& path, int out_dim) const {
        array(j, path);
        SparseVec v;
        for (size_t r = 0; r < j.size(); ++r) {
            std::string p = path + "[" + std::to_string(r) + "]";
            const Json& pair = array(j[r], p);
            if (pair.size() != 2) fail(p, "expected [index, value]");
            int k = integer(pair[0], p + "[0]", 0, out_dim - 1);
            if (v.count(k)) fail(p + "[0]", "repeated output index " + std::to_string(k));
            Scalar x = scalar(pair[1], p + "[1]");
            if (x.is_zero()) warnings->push_back(p + ": zero entry dropped");
            else v[k] = x;
        }
        return v;
    }

    // Entries for a tensor whose shape is known from context.
    void fill_tensor(AltTensor& T, const Json& j, const std::string& path) const {
        array(j, path);
        for (size_t r = 0; r < j.size(); ++r) {
            std::string p = path + "[" + std::to_string(r) + "]";
            const Json& in = array(field(j[r], p, "in"), p + ".in");
            if (static_cast<int>(in.size()) != T.arity)
                fail(p + ".in", "expected " + std::to_string(T.arity) + " indices");
            std::vector<int> idx;
            for (int s = 0; s < T.arity; ++s)
                idx.push_back(integer(in[s], p + ".in[" + std::to_string(s) + "]", 0, T.slot_dim(s) - 1));
            if (T.alternating)
                for (int s = 1; s < T.arity; ++s)
                    if (idx[s - 1] >= idx[s]) fail(p + ".in", "indices must be strictly increasing");
            if (T.entries.count(idx)) fail(p + ".in", "repeated index tuple");
            SparseVec v = sparse(field(j[r], p, "out"), p + ".out", T.out_dim);
            if (!v.empty()) T.entries[idx] = v;
        }
    }
    AltTensor tensor(const Json& j, const std::string& path, int arity, int in, int out) const {
        AltTensor T(arity, in, out);
        fill_tensor(T, j, path);
        return T;
    }
    AltTensor general_tensor(const Json& j, const std::string& path, std::vector<int> slots, int out) const {
        AltTensor T = AltTensor::general(std::move(slots), out);
        fill_tensor(T, j, path);
        return T;
    }

    ExtElement poly(const Json& j, const std::string& path, const Gens& gens) const {
        array(j, path);
        ExtElement f(gens);
        std::set<Monomial> seen;
        for (size_t r = 0; r < j.size(); ++r) {
            std::string p = path + "[" + std::to_string(r) + "]";
            const Json& mono = array(field(j[r], p, "m"), p + ".m");
            ExtElement t = ExtElement::constant(gens, scalar(field(j[r], p, "c"), p + ".c"));
            for (size_t s = 0; s < mono.size(); ++s) {
                std::string lab = string(mono[s], p + ".m[" + std::to_string(s) + "]");
                int g = gens->index_of(lab);
                if (g < 0) fail(p + ".m[" + std::to_string(s) + "]", "unknown generator '" + lab + "'");
                t = t * ExtElement::generator(gens, g);
            }
            if (t.is_zero()) {
                warnings->push_back(p + ": zero term dropped");
                continue;
            }
            if (!seen.insert(t.terms().begin()->first).second) fail(p, "repeated monomial");
            f += t;
        }
        return f;
    }

    L2Algebra l2(const Json& j, const std::string& path) const {
        const Json& dims = field(j, path, "dims");
        int e = dim(dims, path + ".dims", "E"), c = dim(dims, path + ".dims", "C");
        L2Algebra L = L2Algebra::zero(e, c);
        L.d = mat(field(j, path, "d"), path + ".d", e, c);
        L.bracket = tensor(field(j, path, "bracket"), path + ".bracket", 2, e, e);
        L.nabla = general_tensor(field(j, path, "nabla"), path + ".nabla", {e, c}, c);
        L.K = tensor(field(j, path, "K"), path + ".K", 3, e, c);
        return L;
    }

    L2Morphism morphism(const Json& j, const std::string& path) const {
        L2Morphism F;
        F.src = l2(field(j, path, "source"), path + ".source");
        F.tgt = l2(field(j, path, "target"), path + ".target");
        F.F0 = mat(field(j, path, "F0"), path + ".F0", F.tgt.e, F.src.e);
        F.F1 = mat(field(j, path, "F1"), path + ".F1", F.tgt.c, F.src.c);
        F.beta = tensor(field(j, path, "beta"), path + ".beta", 2, F.src.e, F.tgt.c);
        return F;
    }

    PointVBGroupoid groupoid(const Json& j, const std::string& path) const {
        const Json& dims = field(j, path, "dims");
        int e = dim(dims, path + ".dims", "E"), c = dim(dims, path + ".dims", "C");
        return PointVBGroupoid::make(c, e, mat(field(j, path, "d"), path + ".d", e, c));
    }

    QuasiQ qla(const Json& j, const std::string& path) const {
        QuasiQ S{groupoid(j, path), {}, {}};
        S.Q = Derivation::zero(S.G.gens, 1);
        const Json& Q = field(j, path, "Q");
        if (!Q.is_object()) fail(path + ".Q", "expected an object keyed by generator");
        for (auto& [lab, v] : Q.items()) {
            int g = S.G.gens->index_of(lab);
            if (g < 0) fail(path + ".Q." + lab, "unknown generator");
            S.Q.values[g] = poly(v, path + ".Q." + lab, S.G.gens);
            if (!S.Q.values[g].is_zero() && (!S.Q.values[g].is_homogeneous() || S.Q.values[g].degree() != 2))
                fail(path + ".Q." + lab, "value must be homogeneous of degree 2");
        }
        S.q = tensor(field(j, path, "q"), path + ".q", 3, S.G.e, S.G.c);
        return S;
    }
};

template <class F>
auto checked(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        throw SchemaError(path, e.what());
    }
}

}  // namespace

Document parse_json(const Json& j) {
    Document doc;
    Reader R{&doc.warnings};
    doc.kind = R.string(R.field(j, "$", "kind"), "$.kind");
    const auto& kinds = document_kinds();
    if (std::find(kinds.begin(), kinds.end(), doc.kind) == kinds.end()) R.fail("$.kind", "unknown kind '" + doc.kind + "'");
    if (const Json* m = R.optional_field(j, "meta")) {
        if (!m->is_object()) R.fail("$.meta", "expected an object");
        if (const Json* v = R.optional_field(*m, "name")) doc.meta.name = R.string(*v, "$.meta.name");
        if (const Json* v = R.optional_field(*m, "version")) doc.meta.version = R.string(*v, "$.meta.version");
        if (const Json* v = R.optional_field(*m, "seed")) {
            if (!v->is_number_unsigned()) R.fail("$.meta.seed", "expected a non-negative integer");
            doc.meta.seed = v->get<uint64_t>();
        }
    }
    const std::string& k = doc.kind;
    if (k == "l2algebra") {
        doc.payload = checked("$", [&] {
            L2Algebra L = R.l2(j, "$");
            L.validate();
            return L;
        });
    } else if (k == "l2morphism") {
        doc.payload = checked("$", [&] {
            L2Morphism F = R.morphism(j, "$");
            F.validate();
            return F;
        });
    } else if (k == "l2twomorphism") {
        doc.payload = checked("$", [&] {
            L2TwoMorphism T{R.morphism(R.field(j, "$", "from"), "$.from"), R.morphism(R.field(j, "$", "to"), "$.to"), {}};
            T.theta = R.mat(R.field(j, "$", "theta"), "$.theta", T.from.tgt.c, T.from.src.e);
            T.validate();
            return T;
        });
    } else if (k == "xmod") {
        const Json& dims = R.field(j, "$", "dims");
        CrossedModule X;
        X.g = R.dim(dims, "$.dims", "g");
        X.h = R.dim(dims, "$.dims", "h");
        X.d = R.mat(R.field(j, "$", "d"), "$.d", X.g, X.h);
        X.bracket_g = R.tensor(R.field(j, "$", "bracket_g"), "$.bracket_g", 2, X.g, X.g);
        X.bracket_h = R.tensor(R.field(j, "$", "bracket_h"), "$.bracket_h", 2, X.h, X.h);
        X.action = R.general_tensor(R.field(j, "$", "action"), "$.action", {X.g, X.h}, X.h);
        doc.payload = X;
    } else if (k == "ruth") {
        Ruth X;
        X.g = R.l2(R.field(j, "$", "g"), "$.g");
        if (X.g.c != 0) R.fail("$.g.dims.C", "a representation is over a Lie algebra (C = 0)");
        const Json& dims = R.field(j, "$", "dims");
        int n0 = R.dim(dims, "$.dims", "V0"), n1 = R.dim(dims, "$.dims", "V1");
        X.dv = R.mat(R.field(j, "$", "dv"), "$.dv", n1, n0);
        for (auto [key, n, out] : {std::tuple{"nabla0", n0, &X.nabla0}, std::tuple{"nabla1", n1, &X.nabla1}}) {
            std::string p = std::string("$.") + key;
            const Json& arr = R.array(R.field(j, "$", key), p);
            if (static_cast<int>(arr.size()) != X.g.e) R.fail(p, "expected one matrix per basis element of g");
            for (int i = 0; i < X.g.e; ++i) out->push_back(R.mat(arr[i], p + "[" + std::to_string(i) + "]", n, n));
        }
        const Json& om = R.array(R.field(j, "$", "omega"), "$.omega");
        for (size_t r = 0; r < om.size(); ++r) {
            std::string p = "$.omega[" + std::to_string(r) + "]";
            const Json& in = R.array(R.field(om[r], p, "in"), p + ".in");
            if (in.size() != 2) R.fail(p + ".in", "expected 2 indices");
            int a = R.integer(in[0], p + ".in[0]", 0, X.g.e - 1), b = R.integer(in[1], p + ".in[1]", 0, X.g.e - 1);
            if (a >= b) R.fail(p + ".in", "indices must be strictly increasing");
            if (X.omega.count({a, b})) R.fail(p + ".in", "repeated index pair");
            X.omega[{a, b}] = R.mat(R.field(om[r], p, "value"), p + ".value", n0, n1);
        }
        doc.payload = X;
    } else if (k == "qla" || k == "quasiq") {
        doc.payload = checked("$", [&] { return R.qla(j, "$"); });
    } else if (k == "extension-problem") {
        doc.payload = checked("$", [&] {
            ExtensionProblem P{R.qla(R.field(j, "$", "structure"), "$.structure"), {}, {}, {}, {}};
            const Gens& g = P.S.G.gens;
            P.h = R.poly(R.field(j, "$", "h"), "$.h", g);
            P.xi = R.poly(R.field(j, "$", "xi"), "$.xi", g);
            if (const Json* v = R.optional_field(j, "h2")) P.h2 = R.poly(*v, "$.h2", g);
            if (const Json* v = R.optional_field(j, "xi2")) P.xi2 = R.poly(*v, "$.xi2", g);
            if (P.h2.has_value() != P.xi2.has_value()) R.fail("$", "h2 and xi2 come together");
            return P;
        });
    } else if (k == "proto") {
        doc.payload = checked("$", [&] {
            int n = R.integer(R.field(j, "$", "n"), "$.n", 0, 16);
            ProtoBialgebra P = ProtoBialgebra::zero(n);
            P.mu = R.tensor(R.field(j, "$", "mu"), "$.mu", 2, n, n);
            P.cobracket = R.tensor(R.field(j, "$", "cobracket"), "$.cobracket", 2, n, n);
            P.phi = R.tensor(R.field(j, "$", "phi"), "$.phi", 3, n, 1);
            P.chi = R.tensor(R.field(j, "$", "chi"), "$.chi", 3, n, 1);
            P.validate();
            return P;
        });
    } else if (k == "weakl2bialg") {
        doc.payload = checked("$", [&] {
            WeakL2Bialgebra W = WeakL2Bialgebra::zero(R.groupoid(j, "$"));
            const Json& s = R.field(j, "$", "slots");
            if (!s.is_object()) R.fail("$.slots", "expected an object keyed by slot name");
            for (auto& [name, v] : s.items()) {
                if (std::find(kSlots.begin(), kSlots.end(), name) == kSlots.end()) R.fail("$.slots." + name, "unknown slot");
                W[name] = R.poly(v, "$.slots." + name, W.G.ps->gens);
            }
            checked("$.slots", [&] {
                W.validate();
                return 0;
            });
            return W;
        });
    } else if (k == "dgla") {
        doc.payload = checked("$", [&] {
            DGLA D;
            const Json& w = R.array(R.field(j, "$", "window"), "$.window");
            if (w.size() != 2) R.fail("$.window", "expected [min, max]");
            D.dmin = R.integer(w[0], "$.window[0]", -64, 64);
            D.dmax = R.integer(w[1], "$.window[1]", D.dmin, 64);
            int nd = D.dmax - D.dmin + 1;
            D.dims.assign(nd, 0);
            D.labels.assign(nd, {});
            const Json& comps = R.array(R.field(j, "$", "components"), "$.components");
            if (static_cast<int>(comps.size()) != nd) R.fail("$.components", "expected one component per degree");
            for (int i = 0; i < nd; ++i) {
                std::string p = "$.components[" + std::to_string(i) + "]";
                if (R.integer(R.field(comps[i], p, "degree"), p + ".degree", -64, 64) != D.dmin + i)
                    R.fail(p + ".degree", "components must be listed in increasing degree");
                D.dims[i] = R.integer(R.field(comps[i], p, "dim"), p + ".dim", 0, 1 << 16);
                const Json& labs = R.array(R.field(comps[i], p, "labels"), p + ".labels");
                if (static_cast<int>(labs.size()) != D.dims[i]) R.fail(p + ".labels", "expected one label per basis element");
                for (size_t l = 0; l < labs.size(); ++l) D.labels[i].push_back(R.string(labs[l], p + ".labels[" + std::to_string(l) + "]"));
            }
            const Json& d = R.array(R.field(j, "$", "d"), "$.d");
            if (static_cast<int>(d.size()) != nd - 1) R.fail("$.d", "expected one matrix per degree below the top");
            for (int i = 0; i < nd - 1; ++i) {
                std::string p = "$.d[" + std::to_string(i) + "]";
                if (R.integer(R.field(d[i], p, "degree"), p + ".degree", -64, 64) != D.dmin + i)
                    R.fail(p + ".degree", "differentials must be listed in increasing degree");
                D.d.push_back(R.mat(R.field(d[i], p, "matrix"), p + ".matrix", D.dims[i + 1], D.dims[i]));
            }
            D.d.push_back(Mat(0, D.dims[nd - 1]));
            const Json& br = R.array(R.field(j, "$", "bracket"), "$.bracket");
            for (size_t b = 0; b < br.size(); ++b) {
                std::string p = "$.bracket[" + std::to_string(b) + "]";
                const Json& deg = R.array(R.field(br[b], p, "degrees"), p + ".degrees");
                if (deg.size() != 2) R.fail(p + ".degrees", "expected [p, q]");
                int dp = R.integer(deg[0], p + ".degrees[0]", D.dmin, D.dmax), dq = R.integer(deg[1], p + ".degrees[1]", D.dmin, D.dmax);
                if (!D.in_window(dp + dq)) R.fail(p + ".degrees", "output degree leaves the window");
                if (D.br.count({dp, dq})) R.fail(p + ".degrees", "repeated degree pair");
                auto& tab = D.br[{dp, dq}];
                tab.assign(D.dim(dp), std::vector<SparseVec>(D.dim(dq)));
                const Json& ent = R.array(R.field(br[b], p, "entries"), p + ".entries");
                std::set<std::pair<int, int>> seen;
                for (size_t r = 0; r < ent.size(); ++r) {
                    std::string q = p + ".entries[" + std::to_string(r) + "]";
                    const Json& in = R.array(R.field(ent[r], q, "in"), q + ".in");
                    if (in.size() != 2) R.fail(q + ".in", "expected 2 indices");
                    int x = R.integer(in[0], q + ".in[0]", 0, D.dim(dp) - 1), y = R.integer(in[1], q + ".in[1]", 0, D.dim(dq) - 1);
                    if (!seen.insert({x, y}).second) R.fail(q + ".in", "repeated index pair");
                    tab[x][y] = R.sparse(R.field(ent[r], q, "out"), q + ".out", D.dim(dp + dq));
                }
            }
            D.validate();
            return D;
        });
    } else if (k == "tensor") {
        int arity = R.integer(R.field(j, "$", "arity"), "$.arity", 0, 8);
        int in = R.integer(R.field(j, "$", "in"), "$.in", 0, 32), out = R.integer(R.field(j, "$", "out"), "$.out", 0, 32);
        doc.payload = R.tensor(R.field(j, "$", "entries"), "$.entries", arity, in, out);
    }
    return doc;
}

Document parse(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw SchemaError("$", std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
    }
    return parse_json(j);
}

// ---- equality ----

namespace {

bool same_groupoid(const PointVBGroupoid& a, const PointVBGroupoid& b) { return a.c == b.c && a.e == b.e && a.d == b.d; }
bool same_qla(const QuasiQ& a, const QuasiQ& b) { return same_groupoid(a.G, b.G) && a.Q == b.Q && a.q == b.q; }

struct PayloadEq {
    bool operator()(const L2TwoMorphism& a, const L2TwoMorphism& b) const {
        return a.from == b.from && a.to == b.to && a.theta == b.theta;
    }
    bool operator()(const QuasiQ& a, const QuasiQ& b) const { return same_qla(a, b); }
    bool operator()(const ExtensionProblem& a, const ExtensionProblem& b) const {
        return same_qla(a.S, b.S) && a.h == b.h && a.xi == b.xi && a.h2 == b.h2 && a.xi2 == b.xi2;
    }
    bool operator()(const WeakL2Bialgebra& a, const WeakL2Bialgebra& b) const {
        return same_groupoid(a.G, b.G) && a.slot == b.slot;
    }
    bool operator()(const DGLA& a, const DGLA& b) const {
        return a.dmin == b.dmin && a.dmax == b.dmax && a.dims == b.dims && a.labels == b.labels && a.d == b.d && a.br == b.br;
    }
    template <class T>
    bool operator()(const T& a, const T& b) const {
        return a == b;
    }
    template <class T, class U>
    bool operator()(const T&, const U&) const {
        return false;
    }
};

}  // namespace

bool payload_equal(const Payload& a, const Payload& b) { return std::visit(PayloadEq{}, a, b); }

}  // namespace qq
