#include "quasiq/l2.hpp"

#include <stdexcept>

namespace qq {

L2Algebra L2Algebra::zero(int e, int c) {
    L2Algebra L;
    L.e = e;
    L.c = c;
    L.d = Mat(e, c);
    L.bracket = AltTensor(2, e, e);
    L.nabla = AltTensor::general({e, c}, c);
    L.K = AltTensor(3, e, c);
    return L;
}

void L2Algebra::validate() const {
    if (e < 0 || c < 0) throw std::invalid_argument("negative dimension");
    if (d.rows != e || d.cols != c) throw std::invalid_argument("d has wrong shape");
    if (bracket.arity != 2 || bracket.in_dim != e || bracket.out_dim != e || !bracket.alternating)
        throw std::invalid_argument("bracket has wrong shape");
    if (nabla.arity != 2 || nabla.alternating || nabla.slot_dims != std::vector<int>{e, c} || nabla.out_dim != c)
        throw std::invalid_argument("nabla has wrong shape");
    if (K.arity != 3 || K.in_dim != e || K.out_dim != c || !K.alternating)
        throw std::invalid_argument("K has wrong shape");
}

std::vector<Scalar> L2Algebra::br(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const {
    return bracket.eval_vec({x, y});
}

std::vector<Scalar> L2Algebra::nab(const std::vector<Scalar>& x, const std::vector<Scalar>& a) const {
    return nabla.eval_vec({x, a});
}

std::vector<Scalar> L2Algebra::k(const std::vector<Scalar>& x, const std::vector<Scalar>& y,
                                 const std::vector<Scalar>& z) const {
    return K.eval_vec({x, y, z});
}

std::vector<Scalar> vadd(std::vector<Scalar> a, const std::vector<Scalar>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

std::vector<Scalar> vsub(std::vector<Scalar> a, const std::vector<Scalar>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

std::vector<Scalar> vscale(const Scalar& s, std::vector<Scalar> a) {
    for (auto& x : a) x *= s;
    return a;
}

bool vzero(const std::vector<Scalar>& a) {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}

}  // namespace qq
