#pragma once

#include "quasiq/ext.hpp"
#include "quasiq/graded.hpp"
#include "quasiq/l2.hpp"

#include <memory>
#include <string>
#include <vector>

namespace qq {

// Shifted cotangent T*[n] of a free graded algebra: the base generators x_a followed by
// momenta p_a of degree n - |x_a|, with the canonical bracket of degree -n and {p_a, x_a} = 1.
struct PhaseSpace {
    Gens base;
    Gens gens;
    int n = 0;
    int nb = 0;

    PhaseSpace(Gens base, int n, const std::string& momentum_prefix = "p_");
    ExtElement x(int a) const { return ExtElement::generator(gens, a); }
    ExtElement p(int a) const { return ExtElement::generator(gens, nb + a); }
    bool is_momentum(int g) const { return g >= nb; }
    ExtElement lift(const ExtElement& f) const;  // base algebra -> phase algebra
    ExtElement drop(const ExtElement& f) const;  // throws when momenta occur
    int pdeg(const Monomial& m) const;
    // Part of f with exactly k momenta.
    ExtElement arity_part(const ExtElement& f, int k) const;
    // Total degree of a monomial in the phase algebra.
    int degree(const Monomial& m) const { return monomial_degree(*gens, m); }
};

using Phase = std::shared_ptr<const PhaseSpace>;
Phase make_phase(Gens base, int n, const std::string& momentum_prefix = "p_");

// Canonical bracket: antisymmetry {f,g} = -(-1)^{(|f|-n)(|g|-n)} {g,f}, Leibniz in the second slot.
ExtElement pbracket(const PhaseSpace& ps, const ExtElement& f, const ExtElement& g);

// Derivation of degree k, stored on generators.
struct Derivation {
    Gens gens;
    int degree = 0;
    std::vector<ExtElement> values;

    static Derivation zero(Gens g, int degree);
    ExtElement apply(const ExtElement& f) const;
    friend bool operator==(const Derivation& a, const Derivation& b);
    Derivation& operator+=(const Derivation& o);
    Derivation& operator-=(const Derivation& o);
    Derivation operator-() const;
    friend Derivation operator+(Derivation a, const Derivation& b) { return a += b; }
    friend Derivation operator-(Derivation a, const Derivation& b) { return a -= b; }
    friend Derivation operator*(const Scalar& s, Derivation a);
    bool is_zero() const;
    void validate() const;  // each value has degree |x| + k
};

Derivation commutator(const Derivation& X, const Derivation& Y);
// X o X on generators; a derivation when X is odd.
Derivation square(const Derivation& X);
// Symbol sum_a X(x_a) p_a in the phase algebra; {symbol(X), f} = X(f).
ExtElement symbol(const PhaseSpace& ps, const Derivation& X);
// Derivation f -> {P, f} of a symbol linear in momenta (or any symbol: only the generator values are kept).
Derivation derivation_of(const PhaseSpace& ps, const ExtElement& P, int degree);

// Multivector field on an odd space: a symbol in the phase algebra (arity = momentum degree).
struct MultiDerivation {
    Phase ps;
    ExtElement sym;
    int arity() const;  // -1 for zero or mixed arity
};
MultiDerivation schouten(const MultiDerivation& P, const MultiDerivation& R);

// Chevalley-Eilenberg differential of a (pre-)bracket on an N-dimensional space,
// on N degree-1 generators: Q(x_k) = -sum_{a<b} b^k_{ab} x_a x_b.
Derivation ce_differential(const AltTensor& bracket, const Gens& gens);
Gens odd_gens(int n, const std::string& prefix);

// Degree-2 model: generators eps_i (degree 1, i < e) then gam_a (degree 2).
Gens degree2_gens(int e, int c);
Derivation ce_degree2(const L2Algebra& L);

// Linear multivector fields on an ordinary space with coordinates z_a (degree 0) and odd momenta w_a.
struct LinearPolyMVF {
    Phase ps;  // T*[1] over degree-0 coordinates
    ExtElement sym;
    int poly_degree() const;  // max z-degree, -1 for zero
    int mv_degree() const;    // max w-degree
};
Phase even_phase(int n, const std::string& zprefix = "z", const std::string& wprefix = "w");
LinearPolyMVF linear_schouten(const LinearPolyMVF& P, const LinearPolyMVF& R);
// Odd-side image: z_a -> p_a, w_a -> x_a; this substitution preserves brackets.
ExtElement sigma_map(const LinearPolyMVF& P, const PhaseSpace& odd);
LinearPolyMVF sigma_inverse(const ExtElement& sym, const PhaseSpace& odd, const Phase& even);

// Sparse coordinates of polynomials over a fixed monomial list.
struct MonomialBasis {
    std::vector<Monomial> monos;
    std::map<Monomial, int> index;
    explicit MonomialBasis(std::vector<Monomial> m);
    int size() const { return static_cast<int>(monos.size()); }
    SparseVec coords(const ExtElement& f) const;  // throws when f leaves the span
    ExtElement element(const Gens& g, const SparseVec& v) const;
};
// Monomials of an all-odd phase space with xdeg base generators (restricted to xgens) and pdeg momenta (from pgens).
std::vector<Monomial> odd_monomials(const std::vector<int>& xgens, int xdeg, const std::vector<int>& pgens, int pdeg);

}  // namespace qq
