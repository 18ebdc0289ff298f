#pragma once

#include "quasiq/l2.hpp"
#include "quasiq/random.hpp"
#include "quasiq/report.hpp"

#include <string>

namespace qq {

// Checks L1a, L1c, L2, L3, L4 (and shape) with basis witnesses.
//   L1a: d(nabla_e c) = [e, dc]
//   L1c: nabla_{dc1} c2 = -nabla_{dc2} c1
//   L2:  dK(e1,e2,e3) = [e1,[e2,e3]] + [e2,[e3,e1]] + [e3,[e1,e2]]
//   L3:  K(dc,e1,e2) = nabla_e1 nabla_e2 c - nabla_e2 nabla_e1 c - nabla_[e1,e2] c
//   L4:  sum_i (-1)^i nabla_ei K(..^i..) + sum_{i<j} (-1)^{i+j} K([ei,ej],..^i..^j..) = 0
Report verify_l2(const L2Algebra& L);
// The bracket Jacobiator alone (useful when C = 0 or d = 0).
std::vector<Scalar> jacobiator(const L2Algebra& L, int i, int j, int k);

struct L2Morphism {
    L2Algebra src, tgt;
    Mat F0;        // e' x e
    Mat F1;        // c' x c
    AltTensor beta;  // arity 2, E -> C'

    static L2Morphism identity(const L2Algebra& L);
    void validate() const;
    friend bool operator==(const L2Morphism&, const L2Morphism&) = default;
};

//   mor0: F0 d = d' F1
//   mor1: F0[e1,e2] = [F0e1,F0e2]' + d' beta(e1,e2)
//   mor2: F1(nabla_e c) - beta(e,dc) = nabla'_{F0 e} F1 c
//   mor3: F1 K + cyc beta([e1,e2],e3) = K'(F0..) + cyc nabla'_{F0e1} beta(e2,e3)
Report verify_morphism(const L2Morphism& F);
// G o F.
L2Morphism compose(const L2Morphism& G, const L2Morphism& F);

struct L2TwoMorphism {
    L2Morphism from, to;  // F => G
    Mat theta;            // c' x e
    void validate() const;
};
// F0 - G0 = d' theta, F1 - G1 = theta d,
// beta_G - beta_F = nabla'_{F0 e1} theta e2 - nabla'_{G0 e2} theta e1 - theta[e1,e2].
Report verify_2morphism(const L2TwoMorphism& T);
// The target morphism determined by F and theta.
L2Morphism shift_by_homotopy(const L2Morphism& F, const Mat& theta);
// t2 after t1 (t1: F => G, t2: G => H).
L2TwoMorphism vcompose(const L2TwoMorphism& t2, const L2TwoMorphism& t1);
// tp: F' => G' between L' -> L'', t: F => G between L -> L'. Result F'F => G'G with tp F0 + G'1 t.
L2TwoMorphism hcompose(const L2TwoMorphism& tp, const L2TwoMorphism& t);
L2TwoMorphism identity_2morphism(const L2Morphism& F);

// Transports of L along (id, id, beta) and along invertible changes of basis; the morphism is returned.
L2Morphism gauge_transport(const L2Algebra& L, const AltTensor& beta);
L2Morphism basis_transport(const L2Algebra& L, const Mat& A, const Mat& B);

// gl of a complex d: V0 -> V1. C = Hom(V1,V0) (row-major n0 x n1), E = chain-map pairs (X1, X0)
// with X1 d = d X0, in the basis returned by GlAlgebra::pairs.
struct GlAlgebra {
    int n0 = 0, n1 = 0;
    Mat dv;                        // n1 x n0
    std::vector<std::pair<Mat, Mat>> pairs;  // basis of E
    Subspace pair_space;           // inside End(V1) + End(V0), flattened
    L2Algebra L;
    std::optional<std::vector<Scalar>> coords(const Mat& X1, const Mat& X0) const;
    Mat hom(const std::vector<Scalar>& c) const;  // C coordinates -> n0 x n1 matrix
};
GlAlgebra gl_of_complex(const Mat& dv);

struct Ruth {
    L2Algebra g;  // c = 0
    Mat dv;       // V0 -> V1, n1 x n0
    std::vector<Mat> nabla0;  // per basis element of g, n0 x n0
    std::vector<Mat> nabla1;  // n1 x n1
    std::map<std::pair<int, int>, Mat> omega;  // i < j -> Hom(V1,V0), n0 x n1
    Mat om(int i, int j) const;  // alternating lookup
    friend bool operator==(const Ruth&, const Ruth&) = default;
};
// chain: d nabla0_x = nabla1_x d; curv1: d omega = [nabla1,nabla1] - nabla1_[,];
// curv0: omega d = [nabla0,nabla0] - nabla0_[,]; bianchi: cyc (nabla_x omega(y,z) - omega([x,y],z)) = 0.
Report verify_ruth(const Ruth& R);
L2Morphism ruth_to_morphism(const Ruth& R);
Ruth morphism_to_ruth(const L2Morphism& F, const Mat& dv);

struct CrossedModule {
    int g = 0, h = 0;
    Mat d;               // g x h
    AltTensor bracket_g;  // arity 2 on g
    AltTensor bracket_h;  // arity 2 on h
    AltTensor action;    // general slots (g, h) -> h
    friend bool operator==(const CrossedModule&, const CrossedModule&) = default;
};
Report verify_xmod(const CrossedModule& X);
L2Algebra xmod_to_strict(const CrossedModule& X);
CrossedModule strict_to_xmod(const L2Algebra& L);  // requires K = 0

// Named instances.
L2Algebra so3_lie();                  // C = 0
L2Algebra string_so3();               // C = 1, d = 0, K = det
L2Algebra tautological(const AltTensor& bracket);  // C = E, d = id, nabla = ad, K = Jacobiator
L2Algebra failing_jacobi();           // [e1,e2]=e3, [e1,e3]=e1, [e2,e3]=0
CrossedModule identity_xmod(const L2Algebra& lie);

// Seeded instances: valid L2-algebras of several families (dims e, c <= 3), and perturbations of them.
L2Algebra random_lie(Rng& r, int n);
L2Algebra random_valid_l2(Rng& r, int e, int c);
// Perturbs one entry of one tensor; which: 0 d, 1 bracket, 2 nabla, 3 K.
L2Algebra perturb(Rng& r, const L2Algebra& L, int which);
L2Morphism random_morphism_from(Rng& r, const L2Algebra& L);
// kind 0: valid (a flat representation shifted by a random homotopy); kind 1: d = 0 with a random omega
// (Bianchi generally fails); kind 2: a valid one with one omega entry perturbed.
Ruth random_ruth(Rng& r, int kind);

}  // namespace qq
