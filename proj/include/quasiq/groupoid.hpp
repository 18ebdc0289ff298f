#pragma once

#include "quasiq/linalg.hpp"
#include "quasiq/phase.hpp"
#include "quasiq/report.hpp"

#include <optional>
#include <vector>

namespace qq {

// The linear groupoid H = C + E over E: s(c,e) = e, t(c,e) = e + dc, u(e) = (0,e),
// m((c', e+dc), (c,e)) = (c+c', e). Generators of the function algebra of H[1]:
// gam_a (a < c) then eps_i, all of degree 1.
struct PointVBGroupoid {
    int c = 0, e = 0;
    Mat d;  // e x c

    Gens gens;          // H[1]
    Phase ps;           // T*[2] H[1]
    // Composable pairs gam'_a, gam_a, eps_i followed by odd nu_r, one per ideal generator.
    Gens conormal;
    std::vector<ExtElement> m_img, pr1_img, pr2_img;  // images of H generators in conormal
    std::vector<std::vector<Scalar>> ann;             // basis of the annihilator of graph(m) in (H*)^3

    static PointVBGroupoid make(int c, int e, const Mat& d);
    int N() const { return c + e; }
    int gam(int a) const { return a; }
    int eps(int i) const { return c + i; }
    int pgam(int a) const { return N() + a; }
    int peps(int i) const { return N() + c + i; }

    // Function-level maps on the H[1] algebra.
    ExtElement t_star(const ExtElement& f) const;  // f in the eps-subalgebra
    ExtElement u_star(const ExtElement& f) const;  // gam -> 0
    ExtElement to_comp(const ExtElement& f, int which) const;  // 0: m*, 1: pr1*, 2: pr2*

    // Phase-level.
    ExtElement lift(const ExtElement& f) const { return ps->lift(f); }
    bool is_section(const ExtElement& sym) const;  // only eps and p_gam occur
    ExtElement right_ext(const ExtElement& section) const;
    ExtElement left_ext(const ExtElement& section) const;
    ExtElement u_star_phase(const ExtElement& sym) const;
    // Section whose right extension is Y, when one exists.
    std::optional<ExtElement> section_of_right(const ExtElement& Y) const;

    // P^(0) + (-1)^(j+1) (P^(1) + P^(2)) on the conormal bundle of graph(m), per arity j.
    ExtElement mul_residual(const ExtElement& sym) const;
};

struct MulReport {
    bool ok = true;
    CheckResult check{"multiplicative", {}, 0};
};
MulReport is_multiplicative(const ExtElement& sym, const PointVBGroupoid& G);
MulReport is_multiplicative(const Derivation& X, const PointVBGroupoid& G);
// m*F = pr1*F + pr2*F for a function F on H[1].
MulReport is_multiplicative_function(const ExtElement& F, const PointVBGroupoid& G);

// Symbols with xdeg base generators and pdeg momenta: monomial basis and multiplicative kernel.
struct SymbolSpace {
    int xdeg = 0, pdeg = 0;
    MonomialBasis basis;
    Subspace kernel;
};
// ambient: skip the multiplicativity constraint (whole space).
SymbolSpace symbol_space(const PointVBGroupoid& G, int xdeg, int pdeg, bool ambient = false);
// Monomial basis of sections with m eps generators and j p_gam momenta.
MonomialBasis section_basis(const PointVBGroupoid& G, int m, int j);

// Section tensors for the arity-1 cases: sigma: L^m E -> C as the symbol sum_a sigma^a(eps) p_gam_a.
ExtElement section_from_tensor(const PointVBGroupoid& G, const AltTensor& T);
AltTensor tensor_from_section(const PointVBGroupoid& G, const ExtElement& section, int m);

}  // namespace qq
