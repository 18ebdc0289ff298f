#pragma once

#include "quasiq/graded.hpp"
#include "quasiq/linalg.hpp"

#include <vector>

namespace qq {

// Two-term L-infinity data over a point: d: C -> E, [,] on E, nabla: E x C -> C, K: L^3 E -> C.
struct L2Algebra {
    int e = 0, c = 0;
    Mat d;              // e x c
    AltTensor bracket;  // arity 2, E -> E
    AltTensor nabla;    // general, slots (E, C) -> C
    AltTensor K;        // arity 3, E -> C

    static L2Algebra zero(int e, int c);
    void validate() const;  // shape checks only

    std::vector<Scalar> br(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const;
    std::vector<Scalar> nab(const std::vector<Scalar>& x, const std::vector<Scalar>& a) const;
    std::vector<Scalar> k(const std::vector<Scalar>& x, const std::vector<Scalar>& y, const std::vector<Scalar>& z) const;
    std::vector<Scalar> bd(const std::vector<Scalar>& a) const { return d.apply(a); }
    friend bool operator==(const L2Algebra&, const L2Algebra&) = default;
};

std::vector<Scalar> vadd(std::vector<Scalar> a, const std::vector<Scalar>& b);
std::vector<Scalar> vsub(std::vector<Scalar> a, const std::vector<Scalar>& b);
std::vector<Scalar> vscale(const Scalar& s, std::vector<Scalar> a);
bool vzero(const std::vector<Scalar>& a);

}  // namespace qq
