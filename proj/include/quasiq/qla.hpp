#pragma once

#include "quasiq/dgla.hpp"
#include "quasiq/groupoid.hpp"
#include "quasiq/l2cat.hpp"
#include "quasiq/phase.hpp"
#include "quasiq/report.hpp"

#include <optional>

namespace qq {

// A degree-1 vector field Q on H[1] and a section q: L^3 E -> C.
struct QuasiQ {
    PointVBGroupoid G;
    Derivation Q;
    AltTensor q;  // arity 3, E -> C
};

// Bracket on H = C + E (basis: C then E):
// [(c,e),(c',e')] = (nabla_e c' - nabla_e' c + (1/2)(nabla_dc c' - nabla_dc' c), [e,e']).
AltTensor h_bracket(const L2Algebra& L);
QuasiQ from_l2(const L2Algebra& L);
// Reads d, [,], nabla, K back off (Q, q). Throws when check is set and S fails verify_quasi_q.
L2Algebra to_l2(const QuasiQ& S, bool check = true);

ExtElement q_section(const QuasiQ& S);  // sum_a q^a(eps) p_gam_a
Derivation q_right(const QuasiQ& S);
Derivation q_left(const QuasiQ& S);

// "multiplicative", "homotopy" (Q^2 = q^l - q^r), "invariance" ([Q, q^r] = 0).
Report verify_quasi_q(const QuasiQ& S);

// q as a map alpha: E[1] -> T[2]H over the units; alpha = -q in the C directions.
struct NatTransfView {
    AltTensor alpha;  // arity 3, E -> C
    Report report;    // "unit", "source", "target", "exchange"
};
NatTransfView q_as_nat_transf(const QuasiQ& S);

// e^b . (q, Q) for b: L^2 E -> C.
QuasiQ gauge_point(const AltTensor& b, const QuasiQ& S);
// The section [b^r, b^r] o u that enters the quadratic term.
AltTensor self_bracket(const PointVBGroupoid& G, const AltTensor& b);

// F = projection o gauge o inclusion through the product L x L'.
struct Factorization {
    L2Algebra product, gauged;
    AltTensor b;             // on E + E', values in C + C'
    L2Morphism inclusion;    // L -> gauged, strict graph inclusion
    L2Morphism gauge;        // gauged -> product, (id, id, b)
    L2Morphism projection;   // product -> L', strict
};
Factorization factor_morphism(const L2Morphism& F);

// Linear bivector Pi and trivectors pi^r, pi^l on H* (coordinates z: C* directions then E*, momenta w).
struct DualQuasiPoisson {
    Phase ev;
    LinearPolyMVF Pi, pi_r, pi_l;
    Report report;  // "poisson" (1/2[Pi,Pi] = pi^l - pi^r), "invariance" ([Pi, pi^r] = 0)
};
DualQuasiPoisson dual_quasi_poisson(const QuasiQ& S);

// (q, Q) as a degree-1 element of build_groupoid_dgla(S.G) and back.
DElement quasi_q_element(const SymbolDGLA& D, const QuasiQ& S);
QuasiQ quasi_q_from_element(const SymbolDGLA& D, const DElement& x);
// A section tensor L^m E -> C as an element of degree m - 2.
DElement section_element(const SymbolDGLA& D, const AltTensor& b);

// Central extensions by R[1]: h in L^2 H*, xi in L^3 E* (a function of the eps generators).
Report cocycle_check(const QuasiQ& S, const ExtElement& h, const ExtElement& xi);
// Throws std::invalid_argument (with the failing check ids) when cocycle_check fails.
QuasiQ central_extend(const QuasiQ& S, const ExtElement& h, const ExtElement& xi);
ExtElement q0_apply(const QuasiQ& S, const ExtElement& f);  // Q restricted to the units
// Basis of the (linear) solution space of cocycle_check, as (h, xi) pairs.
std::vector<std::pair<ExtElement, ExtElement>> cocycle_basis(const QuasiQ& S);

struct ExtensionVerdict {
    bool equivalent = false;
    std::optional<AltTensor> b;  // arity 2, E -> R
    std::vector<Scalar> certificate;  // functional on the equation rows when not equivalent
    bool verified = false;            // b re-substituted, or certificate re-checked
    int rows = 0, unknowns = 0;
};
ExtensionVerdict classify_extension(const QuasiQ& S, const ExtElement& h, const ExtElement& xi, const ExtElement& h2,
                                    const ExtElement& xi2);
// Function of eps generators from a tensor L^k E -> R and back.
ExtElement eps_form(const PointVBGroupoid& G, const AltTensor& T);

}  // namespace qq
