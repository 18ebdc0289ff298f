#pragma once

#include "quasiq/groupoid.hpp"
#include "quasiq/linalg.hpp"
#include "quasiq/phase.hpp"
#include "quasiq/report.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qq {

// A dgla truncated to the degrees [dmin, dmax]. Brackets and differentials whose
// output degree leaves the window are not stored.
struct DGLA {
    int dmin = 0, dmax = -1;
    std::vector<int> dims;                         // index k - dmin
    std::vector<std::vector<std::string>> labels;  // basis labels per degree
    std::vector<Mat> d;                            // d[k - dmin]: dim(k+1) x dim(k); empty at dmax
    // br[{p, q}][i][j] = [x_i, y_j] in degree p + q, for p + q inside the window.
    std::map<std::pair<int, int>, std::vector<std::vector<SparseVec>>> br;

    bool in_window(int k) const { return k >= dmin && k <= dmax; }
    int dim(int k) const { return in_window(k) ? dims[k - dmin] : 0; }
    void validate() const;  // shape checks
};

// Homogeneous element.
struct DElement {
    int degree = 0;
    SparseVec v;
    bool is_zero() const;
    friend bool operator==(const DElement& a, const DElement& b);
};

DElement zero_element(int degree);
DElement basis_element(int degree, int i);
DElement operator+(const DElement& a, const DElement& b);
DElement operator-(const DElement& a, const DElement& b);
DElement operator*(const Scalar& s, const DElement& a);

// Throw std::invalid_argument when the output degree leaves the window.
DElement dgla_bracket(const DGLA& D, const DElement& x, const DElement& y);
DElement dgla_d(const DGLA& D, const DElement& x);

// "d2", "antisymmetry", "jacobi", "leibniz"; a check only covers tuples whose
// intermediate degrees all lie in the window.
Report verify_dgla(const DGLA& D);

// dx + 1/2 [x, x]; x must have degree 1 and the window must reach 2.
DElement mc_residual(const DGLA& D, const DElement& x);

// e^b . x = sum_k ad_b^k(x)/k! - sum_k ad_b^k(db)/(k+1)!. Throws std::runtime_error
// when ad_b^k does not vanish for some k <= cap.
DElement gauge_transform(const DGLA& D, const DElement& b, const DElement& x, int cap = 16);

struct TwistedComplex {
    DGLA D;         // same bracket, differential d + [x, .]
    Report report;  // "square" (d_x^2 = [res, .]), "square_zero"
};
TwistedComplex twist_differential(const DGLA& D, const DElement& x);

// A Lie algebra placed in degree 0 with zero differential.
DGLA lie_dgla(const AltTensor& bracket);

// DGLA realized inside a Poisson algebra of symbols: each degree is spanned by
// blocks of section symbols and of (multiplicative) multivector symbols.
struct SymbolDGLA {
    struct Block {
        std::string name;
        bool section = false;
        int arity = 0;  // number of momenta
        MonomialBasis basis;
        std::optional<Subspace> sub;  // coordinates inside the span of basis; none = all of it
        int offset = 0;
        int size() const { return sub ? sub->dim() : basis.size(); }
    };
    DGLA D;
    Phase ps;
    int shift = 0;  // symbol degree of a multivector in degree k is k + shift
    std::optional<PointVBGroupoid> G;
    std::vector<std::vector<Block>> blocks;  // per degree

    const Block* find(int degree, const std::string& name) const;
    // Coordinates of section + multivector parts; throws when a part leaves the blocks.
    DElement encode(int degree, const ExtElement& section, const ExtElement& mvf) const;
    // (section part, multivector part)
    std::pair<ExtElement, ExtElement> decode(const DElement& x) const;
    ExtElement block_part(const DElement& x, const std::string& name) const;  // zero when the block is empty
};

// L^i = (sections L^{i+2} E* (x) C) + (multiplicative derivations of degree i), i in the window.
SymbolDGLA build_groupoid_dgla(const PointVBGroupoid& G, int dmin = -1, int dmax = 2);
// Sections of every arity and multiplicative multivector fields of every arity.
SymbolDGLA build_mvf_dgla(const PointVBGroupoid& G, int dmin = -1, int dmax = 2);
// Big bracket on the functions of T*[n] W[1]; generator degrees of W[1] are given
// (all 1 and n = 2 for an ordinary space; 1 for E and 2 for C with n = 3 for a two-term space).
SymbolDGLA build_big_bracket(const std::vector<int>& degrees, int n, int dmin = -1, int dmax = 2);

}  // namespace qq
