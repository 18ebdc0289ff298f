#include "doctest.h"
#include "quasiq/io.hpp"
#include "quasiq/suite.hpp"

#include <fstream>
#include <set>
#include <sstream>

using namespace qq;

static std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

static void round_trips(const Document& d) {
    std::string once = serialize(d);
    Document e = parse(once);
    CHECK(e.kind == d.kind);
    CHECK(e.meta == d.meta);
    CHECK(e.warnings.empty());
    CHECK(payload_equal(d.payload, e.payload));
    CHECK(serialize(e) == once);
}

static std::string minimal_l2() {
    return R"({"kind":"l2algebra","meta":{"version":"1","name":"tiny"},"dims":{"E":1,"C":1},"d":[["1"]],)"
           R"("bracket":[],"nabla":[{"in":[0,0],"out":[[0,"2/4"]]}],"K":[]})";
}

TEST_CASE("every kind round-trips") {
    Rng r(5);
    L2Algebra L = random_valid_l2(r, 3, 2);
    L2Morphism F = random_morphism_from(r, L);
    Mat th = random_mat(r, F.tgt.c, F.src.e, Scalar(1, 2));
    QuasiQ S = from_l2(L);
    ExtensionProblem P{S, ExtElement(S.G.gens), ExtElement(S.G.gens), {}, {}};
    for (const auto& [h, xi] : cocycle_basis(S)) {
        P.h += h;
        P.xi += xi;
    }
    P.h2 = P.h;
    P.xi2 = P.xi;
    Meta m{"sample", 5, "1"};
    std::vector<Document> docs = {
        make_document("l2algebra", L, m),
        make_document("l2algebra", L2Algebra::zero(1, 1)),
        make_document("l2morphism", F, m),
        make_document("l2twomorphism", L2TwoMorphism{F, shift_by_homotopy(F, th), th}, m),
        make_document("xmod", identity_xmod(so3_lie()), m),
        make_document("ruth", random_ruth(r, 0), m),
        make_document("ruth", random_ruth(r, 1), m),
        make_document("qla", S, m),
        make_document("extension-problem", P, m),
        make_document("proto", standard_sl2_bialgebra(), m),
        make_document("proto", random_proto(r, 3, false, true, true), m),
        make_document("weakl2bialg", random_weak_l2_bialgebra(r, 2, 1, 2), m),
        make_document("dgla", build_groupoid_dgla(S.G).D, m),
        make_document("tensor", random_alt(r, 2, 3, 2, Scalar(1)), m),
    };
    std::set<std::string> seen;
    for (const auto& d : docs) {
        CAPTURE(d.kind);
        round_trips(d);
        seen.insert(d.kind);
    }
    for (const auto& k : document_kinds())
        if (k != "quasiq") CHECK_MESSAGE(seen.count(k), k);
}

TEST_CASE("minimal dims (1,1) document; 2/4 is normalized with a warning") {
    Document d = parse(minimal_l2());
    REQUIRE(d.warnings.size() == 1);
    CHECK(d.warnings[0].find("'2/4' normalized to '1/2'") != std::string::npos);
    const auto& L = std::get<L2Algebra>(d.payload);
    CHECK(L.e == 1);
    CHECK(L.c == 1);
    CHECK(L.nabla.eval({0, 0}, 0) == Scalar(1, 2));
    CHECK(serialize(d).find("\"1/2\"") != std::string::npos);
    round_trips(d);
}

TEST_CASE("schema errors carry a path") {
    auto path_of = [](const std::string& text) -> std::string {
        try {
            parse(text);
        } catch (const SchemaError& e) {
            return e.path;
        }
        return "no error";
    };
    std::string s = minimal_l2();
    CHECK(path_of(s.substr(0, s.find(",\"K\":[]")) + "}") == "$.K");
    std::string unknown = s;
    unknown.replace(unknown.find("l2algebra"), 9, "l3algebra");
    CHECK(path_of(unknown) == "$.kind");
    CHECK(path_of(s.substr(0, 40)) == "$");
    std::string bad = s;
    bad.replace(bad.find("\"in\":[0,0]"), 10, "\"in\":[0,4]");
    CHECK(path_of(bad) == "$.nabla[0].in[1]");
    std::string q = s;
    q.replace(q.find("\"2/4\""), 5, "\"1/0\"");
    CHECK(path_of(q) == "$.nabla[0].out[0][1]");
}

TEST_CASE("report verdict is pass exactly when every witness list is empty") {
    Rng r(9);
    for (int s = 0; s < 20; ++s) {
        L2Algebra L = random_valid_l2(r, 2 + r.below(2), 1 + r.below(2));
        if (s % 2) L = perturb(r, L, r.below(4));
        Json j = report_json(verify_l2(L));
        bool empty = true;
        for (const auto& c : j["checks"]) {
            empty &= c["witnesses"].empty();
            CHECK(c["witnesses"].size() <= kWitnessCap);
            CHECK(c["witnesses"].size() <= c["total"].get<size_t>());
        }
        CHECK((j["verdict"] == "pass") == empty);
    }
}

TEST_CASE("committed corpus matches the named constructors") {
    const std::string dir = QQ_DATA_DIR;
    auto same = [&](const std::string& file, const Payload& p) {
        Document d = parse(slurp(dir + "/" + file));
        CAPTURE(file);
        CHECK(payload_equal(d.payload, p));
    };
    same("string-so3.json", string_so3());
    same("so3.json", so3_lie());
    same("broken.json", failing_jacobi());
    same("sl2-standard.json", standard_sl2_bialgebra());
    same("so3-xmod.json", identity_xmod(so3_lie()));
}
