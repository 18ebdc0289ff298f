#include "quasiq/random.hpp"

#include <stdexcept>

namespace qq {

bool Rng::chance(const Scalar& density) {
    if (density.sign() <= 0) return false;
    if (density >= Scalar(1)) return true;
    mpz_class den = density.den();
    mpz_class num = density.num();
    // 64 bits of draw against the rational threshold.
    mpz_class draw(static_cast<unsigned long>(next() >> 1));
    mpz_class range = mpz_class(1) << 63;
    return draw * den < num * range;
}

Scalar Rng::grid() {
    static const long nums[] = {-2, -1, -1, 1, 1, 2};
    static const long dens[] = {1, 1, 2, 2, 1, 1};
    int i = below(6);
    return Scalar(nums[i], dens[i]);
}

Scalar Rng::small_int() {
    int v = below(6);
    return Scalar(v < 3 ? v - 3 : v - 2);
}

Mat random_mat(Rng& r, int rows, int cols, const Scalar& density) {
    Mat m(rows, cols);
    for (auto& x : m.a) x = r.entry(density);
    return m;
}

AltTensor random_alt(Rng& r, int arity, int in, int out, const Scalar& density) {
    AltTensor t(arity, in, out);
    for (const auto& idx : increasing_tuples(in, arity))
        for (int o = 0; o < out; ++o) t.add(idx, o, r.entry(density));
    return t;
}

Mat random_invertible(Rng& r, int n) {
    Mat L = Mat::identity(n), U = Mat::identity(n), D = Mat::identity(n);
    for (int i = 0; i < n; ++i) {
        D(i, i) = r.grid();
        for (int j = 0; j < i; ++j) {
            L(i, j) = r.entry(Scalar(1, 2));
            U(j, i) = r.entry(Scalar(1, 2));
        }
    }
    return L * D * U;
}

Mat inverse(const Mat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("inverse of non-square matrix");
    int n = m.rows;
    Mat inv(n, n);
    for (int j = 0; j < n; ++j) {
        auto res = solve(m, unit_vec(n, j));
        if (!res.x) throw std::domain_error("singular matrix");
        for (int i = 0; i < n; ++i) inv(i, j) = (*res.x)[i];
    }
    return inv;
}

}  // namespace qq
