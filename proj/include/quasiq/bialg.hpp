#pragma once

#include "quasiq/dgla.hpp"
#include "quasiq/graded.hpp"
#include "quasiq/groupoid.hpp"
#include "quasiq/report.hpp"

#include <array>
#include <string>
#include <vector>

namespace qq {

// (mu, gamma, phi, chi) on g = R^n. gamma(e_k) = sum_{i<j} cobracket^k_{ij} e_i ^ e_j;
// phi in L^3 g and chi in L^3 g* are stored as scalar-valued arity-3 tensors.
struct ProtoBialgebra {
    int n = 0;
    AltTensor mu, cobracket, phi, chi;
    static ProtoBialgebra zero(int n);
    void validate() const;
    friend bool operator==(const ProtoBialgebra&, const ProtoBialgebra&) = default;
};

// Theta = chi + mu + gamma + phi in build_big_bracket(n ones, 2): x_a are coordinates of g (elements of g*),
// p_a elements of g; chi = sum chi_abc x_a x_b x_c, mu = symbol of its CE differential,
// gamma = sum_k x_k (CE differential of the cobracket in p), phi = sum phi^abc p_a p_b p_c.
ExtElement proto_theta(const PhaseSpace& ps, const ProtoBialgebra& P);
ProtoBialgebra proto_from_theta(const PhaseSpace& ps, const ExtElement& theta);

// delta(x) = ad_x r + r ad_x^T on the basis, for r in L^2 g given as an antisymmetric matrix.
AltTensor coboundary_cobracket(const AltTensor& mu, const Mat& r);
// sl2 in the basis (e, f, h) with [e,f] = h, [h,e] = 2e, [h,f] = -2f; cobracket of r = e ^ h.
ProtoBialgebra standard_sl2_bialgebra();

// Residual 1/2 {Theta, Theta} split by type: "L4g*" {mu,chi}, "L3g*.g" 1/2{mu,mu}+{gamma,chi},
// "L2g*.L2g" {mu,gamma}+{phi,chi}, "g*.L3g" 1/2{gamma,gamma}+{mu,phi}, "L4g" {gamma,phi}.
Report mc_check_proto(const ProtoBialgebra& P);

// The nine slots of a degree-1 element of the multivector dgla, as symbols on T*[2]H[1].
inline const std::array<std::string, 9> kSlots = {"f", "F", "q", "Q", "t", "Pi", "pi", "Phi", "phi"};

struct WeakL2Bialgebra {
    PointVBGroupoid G;
    std::array<ExtElement, 9> slot;  // ordered as kSlots
    ExtElement& operator[](const std::string& name);
    const ExtElement& operator[](const std::string& name) const;
    static WeakL2Bialgebra zero(const PointVBGroupoid& G);
    // Throws std::invalid_argument when a slot has the wrong degree or arity, or a
    // multivector slot is not multiplicative.
    void validate() const;
};

// Each slot's (is section, arity) in the multivector dgla.
std::pair<bool, int> slot_kind(int k);
DElement weak_element(const SymbolDGLA& V, const WeakL2Bialgebra& W);
WeakL2Bialgebra weak_from_element(const SymbolDGLA& V, const DElement& x);

// The 5 + 6 equations, evaluated directly with symbol brackets and right/left extensions.
// Check ids "E1".."E11"; the residual symbols are kept alongside.
struct VReport {
    Report report;
    std::array<ExtElement, 11> residual;
};
VReport mc_check_V(const WeakL2Bialgebra& W);
// Block of the multivector dgla residual that equation k (0-based) lands in.
std::string equation_block(int k);

enum class TableContext { point_zero_core, point_core, unit_zero_core, unit_core, general_base };

struct ClassificationLabel {
    std::string name;
    std::vector<std::string> mask;  // nonzero slots, in kSlots order
    bool mc = false;
    bool in_table = false;
};

// Pure table lookup. Labels: the row names of the two tables; "trivial" for the empty mask;
// "unclassified" for masks outside the tables; "not Maurer-Cartan" when mc is false.
ClassificationLabel classify(const std::vector<std::string>& mask, bool mc, TableContext ctx);
std::vector<std::string> mask_of(const WeakL2Bialgebra& W);
std::vector<std::string> mask_of(const ProtoBialgebra& P);
// Every (context, mask, label) row of the tables.
struct TableRow {
    TableContext ctx;
    std::vector<std::string> mask;
    std::string name;
};
const std::vector<TableRow>& table_rows();

// e^lambda . Theta in the big bracket (d = 0); lambda has degree 0, Theta degree 1.
DElement drinfeld_twist(const SymbolDGLA& B, const DElement& lambda, const DElement& theta);
// Twist by lambda in L^2 g (scalar-valued arity-2 tensor).
ProtoBialgebra drinfeld_twist(const AltTensor& lambda, const ProtoBialgebra& P);

}  // namespace qq
