#pragma once

#include "quasiq/scalar.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace qq {

// Generators of a free graded-commutative algebra. Parity is the degree mod 2.
struct GeneratorSet {
    std::vector<std::string> labels;
    std::vector<int> degrees;

    int size() const { return static_cast<int>(degrees.size()); }
    bool odd(int i) const { return (degrees[i] & 1) != 0; }
    int index_of(const std::string& label) const;
    friend bool operator==(const GeneratorSet&, const GeneratorSet&) = default;
};

using Gens = std::shared_ptr<const GeneratorSet>;
Gens make_gens(std::vector<std::string> labels, std::vector<int> degrees);
bool same_gens(const Gens& a, const Gens& b);

// Sorted generator indices; odd generators occur at most once.
using Monomial = std::vector<uint8_t>;

int monomial_degree(const GeneratorSet& g, const Monomial& m);
// Product of two monomials with its Koszul sign; sign 0 when an odd generator repeats.
int monomial_mul(const GeneratorSet& g, const Monomial& a, const Monomial& b, Monomial& out);

class ExtElement {
public:
    ExtElement() = default;
    explicit ExtElement(Gens g) : gens_(std::move(g)) {}

    static ExtElement constant(Gens g, const Scalar& c);
    static ExtElement generator(Gens g, int i);
    static ExtElement monomial(Gens g, Monomial m, const Scalar& c = Scalar(1));

    const Gens& gens() const { return gens_; }
    const std::map<Monomial, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // Degree of a homogeneous element; -1 for zero; throws when inhomogeneous.
    int degree() const;
    bool is_homogeneous() const;
    ExtElement homogeneous_part(int deg) const;
    Scalar coeff(const Monomial& m) const;
    void add_term(const Monomial& m, const Scalar& c);

    ExtElement& operator+=(const ExtElement& o);
    ExtElement& operator-=(const ExtElement& o);
    ExtElement& operator*=(const Scalar& s);
    ExtElement operator-() const;
    friend ExtElement operator+(ExtElement a, const ExtElement& b) { return a += b; }
    friend ExtElement operator-(ExtElement a, const ExtElement& b) { return a -= b; }
    friend ExtElement operator*(const Scalar& s, ExtElement a) { return a *= s; }
    friend ExtElement operator*(const ExtElement& a, const ExtElement& b) { return wedge(a, b); }
    friend ExtElement wedge(const ExtElement& a, const ExtElement& b);
    friend bool operator==(const ExtElement& a, const ExtElement& b);

    std::string str() const;

private:
    void check_same(const ExtElement& o) const;
    Gens gens_;
    std::map<Monomial, Scalar> terms_;
};

// Algebra homomorphism sending generator i of x's algebra to images[i] (all in one target algebra).
ExtElement substitute(const ExtElement& x, const std::vector<ExtElement>& images, const Gens& target);
// Checks that each image has the degree of its generator.
void check_degree_preserving(const GeneratorSet& src, const std::vector<ExtElement>& images);

// Left derivative with respect to generator g.
ExtElement left_derivative(const ExtElement& x, int g);

}  // namespace qq
