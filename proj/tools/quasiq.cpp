// Command-line front end. Exit codes: 0 pass, 1 mathematical failure, 2 input error.
// Reports go to stdout as JSON, a one-line summary to stderr.
#include "quasiq/io.hpp"
#include "quasiq/suite.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

using namespace qq;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool use_color() { return std::getenv("NO_COLOR") == nullptr && isatty(2); }

int finish(const Json& out, bool pass, const std::string& summary) {
    std::cout << out.dump(2) << "\n";
    std::string tag = pass ? "PASS" : "FAIL";
    if (use_color()) tag = (pass ? "\033[32m" : "\033[31m") + tag + "\033[0m";
    std::cerr << tag << " " << summary << "\n";
    return pass ? 0 : 1;
}

Document load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    Document d = parse(ss.str());
    for (const auto& w : d.warnings) std::cerr << "warning: " << path << ": " << w << "\n";
    return d;
}

std::string label(const Document& d, const std::string& path) { return d.kind + " (" + (d.meta.name.empty() ? path : d.meta.name) + ")"; }

QuasiQ as_quasi_q(const Document& d) {
    if (auto* L = std::get_if<L2Algebra>(&d.payload)) return from_l2(*L);
    if (auto* S = std::get_if<QuasiQ>(&d.payload)) return *S;
    if (auto* P = std::get_if<ExtensionProblem>(&d.payload)) return P->S;
    throw InputError("expected an l2algebra or qla document, got " + d.kind);
}

const AltTensor& as_tensor(const Document& d, int arity, int in, int out, const std::string& what) {
    auto* T = std::get_if<AltTensor>(&d.payload);
    if (!T) throw InputError(what + ": expected a tensor document, got " + d.kind);
    if (T->arity != arity || T->in_dim != in || T->out_dim != out)
        throw InputError(what + ": expected arity " + std::to_string(arity) + " on dimension " + std::to_string(in) +
                         " with " + std::to_string(out) + " outputs");
    return *T;
}

Json doc_json(const std::string& kind, Payload p, Meta meta = {}) { return to_json(Document{kind, std::move(meta), std::move(p), {}}); }

// A block-by-block report of a dgla residual.
Report residual_report(const SymbolDGLA& V, const DElement& res) {
    Report R;
    for (const auto& b : V.blocks[res.degree - V.D.dmin]) R.get(b.name).add_poly(V.block_part(res, b.name));
    return R;
}

int cmd_verify(const std::string& path) {
    Document d = load(path);
    Report R;
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, L2Algebra>) R = verify_l2(x);
            else if constexpr (std::is_same_v<T, L2Morphism>) R = verify_morphism(x);
            else if constexpr (std::is_same_v<T, L2TwoMorphism>) R = verify_2morphism(x);
            else if constexpr (std::is_same_v<T, CrossedModule>) R = verify_xmod(x);
            else if constexpr (std::is_same_v<T, Ruth>) R = verify_ruth(x);
            else if constexpr (std::is_same_v<T, QuasiQ>) R = verify_quasi_q(x);
            else if constexpr (std::is_same_v<T, ExtensionProblem>) R = cocycle_check(x.S, x.h, x.xi);
            else if constexpr (std::is_same_v<T, ProtoBialgebra>) R = mc_check_proto(x);
            else if constexpr (std::is_same_v<T, WeakL2Bialgebra>) R = mc_check_V(x).report;
            else if constexpr (std::is_same_v<T, DGLA>) R = verify_dgla(x);
            else throw InputError("nothing to verify for kind " + d.kind);
        },
        d.payload);
    Json out{{"command", "verify"}, {"kind", d.kind}, {"report", report_json(R)}};
    return finish(out, R.pass(), "verify " + label(d, path));
}

int cmd_compose(const std::string& fpath, const std::string& gpath) {
    Document f = load(fpath), g = load(gpath);
    if (auto* F = std::get_if<L2Morphism>(&f.payload)) {
        auto* G = std::get_if<L2Morphism>(&g.payload);
        if (!G) throw InputError("compose: both documents must be l2morphism");
        if (!(F->tgt == G->src)) throw InputError("compose: target of the first is not the source of the second");
        L2Morphism H = compose(*G, *F);
        Report R = verify_morphism(H);
        Json out{{"command", "compose"}, {"document", doc_json("l2morphism", H)}, {"report", report_json(R)}};
        return finish(out, R.pass(), "compose " + label(g, gpath) + " after " + label(f, fpath));
    }
    auto* t1 = std::get_if<L2TwoMorphism>(&f.payload);
    auto* t2 = std::get_if<L2TwoMorphism>(&g.payload);
    if (!t1 || !t2) throw InputError("compose: expects two l2morphism or two l2twomorphism documents");
    L2TwoMorphism T;
    std::string how;
    if (t1->to == t2->from) {
        T = vcompose(*t2, *t1);
        how = "vertical";
    } else if (t2->from.src == t1->from.tgt) {
        T = hcompose(*t2, *t1);
        how = "horizontal";
    } else {
        throw InputError("compose: the 2-morphisms are neither vertically nor horizontally composable");
    }
    Report R = verify_2morphism(T);
    Json out{{"command", "compose"}, {"mode", how}, {"document", doc_json("l2twomorphism", T)}, {"report", report_json(R)}};
    return finish(out, R.pass(), how + " compose " + label(g, gpath) + " with " + label(f, fpath));
}

int cmd_mc(const std::string& dgla, const std::string& path) {
    Document d = load(path);
    if (dgla == "groupoid") {
        QuasiQ S = as_quasi_q(d);
        SymbolDGLA M = build_groupoid_dgla(S.G);
        Report R;
        try {
            R = residual_report(M, mc_residual(M.D, quasi_q_element(M, S)));
        } catch (const std::invalid_argument& e) {
            // Q has no multiplicative symbol, so (q, Q) is not an element of the dgla at all.
            R.get("multiplicative").add(Witness{{}, {}, e.what()});
        }
        bool agree = R.pass() == verify_quasi_q(S).pass();
        Json out{{"command", "mc"}, {"dgla", dgla}, {"report", report_json(R)}, {"agrees_with_verify", agree}};
        return finish(out, R.pass(), "mc groupoid " + label(d, path));
    }
    if (dgla == "bigbracket") {
        auto* P = std::get_if<ProtoBialgebra>(&d.payload);
        if (!P) throw InputError("mc --dgla bigbracket expects a proto document");
        Report R = mc_check_proto(*P);
        Json out{{"command", "mc"}, {"dgla", dgla}, {"report", report_json(R)}};
        return finish(out, R.pass(), "mc bigbracket " + label(d, path));
    }
    auto* W = std::get_if<WeakL2Bialgebra>(&d.payload);
    if (!W) throw InputError("mc --dgla mvf expects a weakl2bialg document");
    SymbolDGLA V = build_mvf_dgla(W->G);
    DElement res = mc_residual(V.D, weak_element(V, *W));
    Report R = residual_report(V, res);
    VReport E = mc_check_V(*W);
    bool agree = true;
    for (int k = 0; k < 11; ++k) agree &= V.block_part(res, equation_block(k)) == E.residual[k];
    Json out{{"command", "mc"}, {"dgla", dgla}, {"report", report_json(R)}, {"equations", report_json(E.report)}, {"agrees_with_equations", agree}};
    return finish(out, R.pass(), "mc mvf " + label(d, path));
}

int cmd_gauge(const std::string& bpath, const std::string& path) {
    Document d = load(path);
    QuasiQ S = as_quasi_q(d);
    Document bd = load(bpath);
    const AltTensor& b = as_tensor(bd, 2, S.G.e, S.G.c, "--b");
    QuasiQ T = gauge_point(b, S);
    SymbolDGLA M = build_groupoid_dgla(S.G);
    QuasiQ U = quasi_q_from_element(M, gauge_transform(M.D, section_element(M, b), quasi_q_element(M, S)));
    bool coherent = U.Q == T.Q && U.q == T.q;
    Report before = verify_quasi_q(S), after = verify_quasi_q(T);
    Json out{{"command", "gauge"},
             {"document", doc_json("qla", T, d.meta)},
             {"report", report_json(after)},
             {"input_passes", before.pass()},
             {"agrees_with_dgla", coherent}};
    return finish(out, after.pass() && coherent, "gauge " + label(d, path));
}

TableContext parse_context(const std::string& s) {
    if (s == "point-zero-core") return TableContext::point_zero_core;
    if (s == "point-core") return TableContext::point_core;
    if (s == "unit-zero-core") return TableContext::unit_zero_core;
    if (s == "unit-core") return TableContext::unit_core;
    if (s == "general") return TableContext::general_base;
    throw InputError("unknown context " + s);
}

int cmd_classify(const std::string& path, const std::string& ctx_name) {
    Document d = load(path);
    std::vector<std::string> mask;
    Report R;
    TableContext ctx = TableContext::point_zero_core;
    if (auto* P = std::get_if<ProtoBialgebra>(&d.payload)) {
        mask = mask_of(*P);
        R = mc_check_proto(*P);
    } else {
        WeakL2Bialgebra W = [&] {
            if (auto* w = std::get_if<WeakL2Bialgebra>(&d.payload)) return *w;
            QuasiQ S = as_quasi_q(d);
            WeakL2Bialgebra X = WeakL2Bialgebra::zero(S.G);
            X["Q"] = symbol(*S.G.ps, S.Q);
            X["q"] = q_section(S);
            return X;
        }();
        mask = mask_of(W);
        R = mc_check_V(W).report;
        ctx = W.G.c == 0 ? TableContext::point_zero_core : TableContext::point_core;
    }
    if (!ctx_name.empty()) ctx = parse_context(ctx_name);
    ClassificationLabel L;
    try {
        L = classify(mask, R.pass(), ctx);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    Json eq = Json::array();
    for (const auto& c : R.checks) eq.push_back(Json{{"id", c.id}, {"pass", c.pass()}, {"total", c.total}});
    Json out{{"command", "classify"}, {"mask", L.mask}, {"verdict", R.pass() ? "pass" : "fail"}, {"equations", eq},
             {"label", L.name}, {"in_table", L.in_table}, {"report", report_json(R)}};
    return finish(out, R.pass(), "classify " + label(d, path) + ": " + L.name);
}

ExtElement form_on_h(const PointVBGroupoid& G, const AltTensor& T) {
    ExtElement f(G.gens);
    for (const auto& [t, o] : T.entries)
        for (const auto& [k, v] : o) {
            ExtElement m = ExtElement::constant(G.gens, v);
            for (int i : t) m = m * ExtElement::generator(G.gens, i);
            f += m;
        }
    return f;
}

int cmd_extend(const std::string& hpath, const std::string& xipath, const std::string& path) {
    Document d = load(path);
    QuasiQ S = as_quasi_q(d);
    ExtElement h(S.G.gens), xi(S.G.gens);
    const ExtensionProblem* P = std::get_if<ExtensionProblem>(&d.payload);
    if (P && hpath.empty() && xipath.empty()) {
        h = P->h;
        xi = P->xi;
    } else {
        if (hpath.empty() || xipath.empty()) throw InputError("extend needs --h and --xi (or an extension-problem document)");
        h = form_on_h(S.G, as_tensor(load(hpath), 2, S.G.N(), 1, "--h"));
        xi = eps_form(S.G, as_tensor(load(xipath), 3, S.G.e, 1, "--xi"));
    }
    Report cc = cocycle_check(S, h, xi);
    Json out{{"command", "extend"}, {"cocycle", report_json(cc)}};
    bool pass = cc.pass();
    if (pass) {
        QuasiQ X = central_extend(S, h, xi);
        Report vr = verify_quasi_q(X);
        out["document"] = doc_json("qla", X);
        out["report"] = report_json(vr);
        pass = vr.pass();
        if (P && P->h2) {
            ExtensionVerdict v = classify_extension(S, h, xi, *P->h2, *P->xi2);
            Json cert = Json::array();
            for (const auto& c : v.certificate) cert.push_back(scalar_json(c));
            out["comparison"] = Json{{"equivalent", v.equivalent},
                                     {"verified", v.verified},
                                     {"b", v.b ? tensor_json(*v.b) : Json(nullptr)},
                                     {"certificate", cert}};
        }
    }
    return finish(out, pass, "extend " + label(d, path));
}

int cmd_roundtrip(const std::string& path) {
    Document d = load(path);
    std::string once = serialize(d);
    Document e = parse(once);
    std::string twice = serialize(e);
    bool ok = payload_equal(d.payload, e.payload) && d.meta == e.meta && d.kind == e.kind && once == twice;
    Json out{{"command", "roundtrip"}, {"identical", ok}, {"warnings", d.warnings}, {"document", to_json(d)}};
    return finish(out, ok, "roundtrip " + label(d, path));
}

int cmd_dualize(const std::string& path) {
    Document d = load(path);
    DualQuasiPoisson D = dual_quasi_poisson(as_quasi_q(d));
    Json out{{"command", "dualize"},
             {"Pi", poly_json(D.Pi.sym)},
             {"pi_r", poly_json(D.pi_r.sym)},
             {"pi_l", poly_json(D.pi_l.sym)},
             {"report", report_json(D.report)}};
    return finish(out, D.report.pass(), "dualize " + label(d, path));
}

std::vector<int> parse_dims(const std::string& s) {
    std::vector<int> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            int x = std::stoi(item, &used);
            if (used != item.size() || x < 0 || x > 6) throw std::invalid_argument("range");
            v.push_back(x);
        } catch (const std::exception&) {
            throw InputError("--dims: expected comma-separated integers in [0,6], got '" + s + "'");
        }
    }
    return v;
}

template <class Gen, class Ok>
auto broken(Gen gen, Ok ok) {
    for (int tries = 0; tries < 64; ++tries) {
        auto x = gen();
        if (!ok(x)) return x;
    }
    throw InputError("--perturb: no failing perturbation found for these dims");
}

int cmd_random(const std::string& kind, const std::string& dims_s, uint64_t seed, const std::string& density_s, bool perturbed) {
    std::vector<int> dims = parse_dims(dims_s);
    auto dim = [&](size_t i, int dflt) { return i < dims.size() ? dims[i] : dflt; };
    Scalar density;
    try {
        density = Scalar::parse(density_s);
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("--density: ") + e.what());
    }
    if (density < Scalar(0) || density > Scalar(1)) throw InputError("--density must lie in [0,1]");
    Rng r(seed);
    Meta meta{"random-" + kind, seed, "1"};
    int e = dim(0, 2), c = dim(1, 1);
    auto l2 = [&] {
        L2Algebra L = c == 0 ? random_lie(r, e) : random_valid_l2(r, e, c);
        if (!perturbed) return L;
        // Some perturbations stay valid (K moved inside ker d, say); draw again until one breaks.
        return broken([&] { return perturb(r, L, r.below(4)); }, [](const L2Algebra& M) { return verify_l2(M).pass(); });
    };
    Document d;
    if (kind == "l2" || kind == "l2algebra") d = make_document("l2algebra", l2(), meta);
    else if (kind == "lie") d = make_document("l2algebra", random_lie(r, e), meta);
    else if (kind == "morphism" || kind == "l2morphism") d = make_document("l2morphism", random_morphism_from(r, l2()), meta);
    else if (kind == "twomorphism" || kind == "l2twomorphism") {
        L2Morphism F = random_morphism_from(r, l2());
        Mat th = random_mat(r, F.tgt.c, F.src.e, density);
        d = make_document("l2twomorphism", L2TwoMorphism{F, shift_by_homotopy(F, th), th}, meta);
    } else if (kind == "xmod") {
        L2Algebra g = random_lie(r, e);
        d = make_document("xmod", identity_xmod(g), meta);
    } else if (kind == "ruth") d = make_document("ruth", perturbed ? broken([&] { return random_ruth(r, 2); }, [](const Ruth& R) { return verify_ruth(R).pass(); })
                                                                : random_ruth(r, 0), meta);
    else if (kind == "qla" || kind == "quasiq") d = make_document(kind, from_l2(l2()), meta);
    else if (kind == "proto") d = make_document("proto", perturbed ? broken(
            [&] { return random_proto(r, e, false, false, false); }, [](const ProtoBialgebra& P) { return mc_check_proto(P).pass(); })
                                                          : random_lie_bialgebra(r, e), meta);
    else if (kind == "weakl2bialg") {
        if (c < 1) throw InputError("weakl2bialg needs a nonzero core");
        d = make_document("weakl2bialg", perturbed ? broken(
            [&] { return random_weak_l2_bialgebra(r, e, c, 2); }, [](const WeakL2Bialgebra& W) { return mc_check_V(W).report.pass(); })
                                                   : random_weak_l2_bialgebra(r, e, c, 1), meta);
    } else if (kind == "extension-problem") {
        QuasiQ S = from_l2(l2());
        auto basis = cocycle_basis(S);
        ExtensionProblem P{S, ExtElement(S.G.gens), ExtElement(S.G.gens), {}, {}};
        for (const auto& [bh, bx] : basis) {
            Scalar k = r.entry(Scalar(1, 2));
            P.h += k * bh;
            P.xi += k * bx;
        }
        // The second pair differs from the first by a coboundary, so the two extensions are equivalent.
        ExtElement bu = eps_form(S.G, random_alt(r, 2, S.G.e, 1, Scalar(1, 2)));
        P.h2 = P.h + (bu - S.G.t_star(bu));
        P.xi2 = P.xi + q0_apply(S, bu);
        d = make_document("extension-problem", std::move(P), meta);
    } else if (kind == "tensor") d = make_document("tensor", random_alt(r, dim(2, 2), e, c, density), meta);
    else if (kind == "dgla") d = make_document("dgla", build_groupoid_dgla(from_l2(l2()).G).D, meta);
    else throw InputError("unknown --kind " + kind);
    std::cout << serialize(d);
    std::cerr << "generated " << d.kind << " with seed " << seed << "\n";
    return 0;
}

int cmd_suite(int seeds) {
    if (seeds < 1) throw InputError("--seeds must be positive");
    Json matrix = Json::array();
    bool all = true;
    std::ostringstream table;
    for (int id = 1; id <= kCriteria; ++id) {
        Json row = Json::array();
        std::string title;
        table << "criterion " << id;
        for (int s = 1; s <= seeds; ++s) {
            CriterionResult R = run_criterion(id, static_cast<uint64_t>(s));
            title = R.title;
            all &= R.pass;
            row.push_back(Json{{"seed", s}, {"pass", R.pass}, {"samples", R.samples}, {"detail", R.detail}, {"notes", R.notes}});
            table << (R.pass ? "  pass" : "  FAIL");
        }
        table << "  " << title << "\n";
        matrix.push_back(Json{{"criterion", id}, {"title", title}, {"runs", row}});
    }
    std::cerr << table.str();
    Json out{{"command", "suite"}, {"seeds", seeds}, {"matrix", matrix}, {"verdict", all ? "pass" : "fail"}};
    return finish(out, all, "suite over " + std::to_string(seeds) + " seed(s)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact checks for L2-algebras, quasi Q-groupoids and their Maurer-Cartan descriptions"};
    app.require_subcommand(1);
    std::string f1, f2, dgla = "groupoid", b, h, xi, kind, dims = "2,1", density = "1/2", context;
    uint64_t seed = 1;
    int seeds = 1;
    bool perturbed = false;

    auto* verify = app.add_subcommand("verify", "Verify the axioms of a document");
    verify->add_option("file,--in", f1, "Input document")->required();
    auto* compose = app.add_subcommand("compose", "Compose two morphisms (second after first) or two 2-morphisms");
    compose->add_option("first", f1)->required();
    compose->add_option("second", f2)->required();
    auto* mc = app.add_subcommand("mc", "Maurer-Cartan residual in a dgla");
    mc->add_option("--dgla", dgla)->check(CLI::IsMember({"groupoid", "bigbracket", "mvf"}));
    mc->add_option("file,--in", f1, "Input document")->required();
    auto* gauge = app.add_subcommand("gauge", "Gauge a quasi Q-structure by b: L^2 E -> C");
    gauge->add_option("--b", b)->required();
    gauge->add_option("file,--in", f1, "Input document")->required();
    auto* cls = app.add_subcommand("classify", "Label a bialgebra-type structure by the tables");
    cls->add_option("file,--in", f1, "Input document")->required();
    cls->add_option("--context", context)
        ->check(CLI::IsMember({"point-zero-core", "point-core", "unit-zero-core", "unit-core", "general"}));
    auto* ext = app.add_subcommand("extend", "Central extension by a cocycle (h, xi)");
    ext->set_help_flag("--help", "Print this help message and exit");
    ext->add_option("--h", h, "Tensor document: h in L^2 H* (H = C + E)");
    ext->add_option("--xi", xi, "Tensor document: xi in L^3 E*");
    ext->add_option("file,--in", f1, "Input document")->required();
    auto* rt = app.add_subcommand("roundtrip", "Parse, serialize and parse again");
    rt->add_option("file,--in", f1, "Input document")->required();
    auto* dual = app.add_subcommand("dualize", "Dual linear quasi-Poisson structure");
    dual->add_option("file,--in", f1, "Input document")->required();
    auto* rnd = app.add_subcommand("random", "Seeded random document");
    rnd->add_option("--kind", kind,
                    "l2algebra|lie|l2morphism|l2twomorphism|xmod|ruth|qla|proto|weakl2bialg|extension-problem|tensor|dgla")
        ->required();
    rnd->add_option("--dims", dims, "Comma separated: dim E, dim C (tensor: dim in, dim out, arity)");
    rnd->add_option("--seed", seed)->required();
    rnd->add_option("--density", density);
    rnd->add_flag("--perturb", perturbed, "Break the generated structure");
    auto* suite = app.add_subcommand("suite", "Seeded property batteries, one per acceptance criterion");
    suite->add_option("--seeds", seeds);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        if (*verify) return cmd_verify(f1);
        if (*compose) return cmd_compose(f1, f2);
        if (*mc) return cmd_mc(dgla, f1);
        if (*gauge) return cmd_gauge(b, f1);
        if (*cls) return cmd_classify(f1, context);
        if (*ext) return cmd_extend(h, xi, f1);
        if (*rt) return cmd_roundtrip(f1);
        if (*dual) return cmd_dualize(f1);
        if (*rnd) return cmd_random(kind, dims, seed, density, perturbed);
        if (*suite) return cmd_suite(seeds);
    } catch (const SchemaError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
