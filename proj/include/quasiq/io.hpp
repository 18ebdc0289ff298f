#pragma once

#include "quasiq/bialg.hpp"
#include "quasiq/dgla.hpp"
#include "quasiq/l2cat.hpp"
#include "quasiq/qla.hpp"
#include "quasiq/report.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qq {

using Json = nlohmann::ordered_json;

// Schema violation; path is a JSON path such as "$.source.K[2].out[0]".
struct SchemaError : std::runtime_error {
    std::string path;
    SchemaError(std::string p, const std::string& msg) : std::runtime_error(p + ": " + msg), path(std::move(p)) {}
};

struct ExtensionProblem {
    QuasiQ S;
    ExtElement h, xi;  // h in L^2 H*, xi in L^3 E*, as functions on H[1]
    std::optional<ExtElement> h2, xi2;  // a second pair to compare against
};

struct Meta {
    std::string name;
    std::optional<uint64_t> seed;
    std::string version = "1";
    friend bool operator==(const Meta&, const Meta&) = default;
};

using Payload = std::variant<L2Algebra, L2Morphism, L2TwoMorphism, CrossedModule, Ruth, QuasiQ, ExtensionProblem,
                             ProtoBialgebra, WeakL2Bialgebra, DGLA, AltTensor>;

// kind: "l2algebra", "l2morphism", "l2twomorphism", "xmod", "ruth", "qla" (alias "quasiq"),
// "extension-problem", "proto", "weakl2bialg", "dgla", "tensor".
struct Document {
    std::string kind;
    Meta meta;
    Payload payload;
    std::vector<std::string> warnings;  // filled by parse (normalized rationals, dropped zeros)
};

const std::vector<std::string>& document_kinds();

// Throws SchemaError; malformed JSON is reported at "$" with the parser's byte offset.
Document parse(std::string_view text);
Document parse_json(const Json& j);
// Canonical form: two-space indentation, trailing newline.
std::string serialize(const Document& doc);
Json to_json(const Document& doc);

template <class T>
Document make_document(std::string kind, T payload, Meta meta = {}) {
    return Document{std::move(kind), std::move(meta), Payload(std::move(payload)), {}};
}

// Pieces shared with report output.
Json scalar_json(const Scalar& s);
Json tensor_json(const AltTensor& T);
Json mat_json(const Mat& m);
Json poly_json(const ExtElement& f);
Json report_json(const Report& R);

bool payload_equal(const Payload& a, const Payload& b);

}  // namespace qq
