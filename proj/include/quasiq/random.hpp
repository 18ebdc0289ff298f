#pragma once

#include "quasiq/graded.hpp"
#include "quasiq/linalg.hpp"
#include "quasiq/scalar.hpp"

#include <cstdint>
#include <random>

namespace qq {

// Seeded generator. Only raw engine output is used, so streams are identical across platforms.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}
    uint64_t next() { return eng_(); }
    int below(int n) { return static_cast<int>(eng_() % static_cast<uint64_t>(n)); }
    // True with probability density (a rational in [0,1]).
    bool chance(const Scalar& density);
    // Nonzero entry from the grid {-2,-1,-1/2,1/2,1,2}.
    Scalar grid();
    // Small nonzero integer in [-3,3].
    Scalar small_int();
    // Grid value with probability density, else zero.
    Scalar entry(const Scalar& density) { return chance(density) ? grid() : Scalar(); }

private:
    std::mt19937_64 eng_;
};

Mat random_mat(Rng& r, int rows, int cols, const Scalar& density);
AltTensor random_alt(Rng& r, int arity, int in, int out, const Scalar& density);
// Random invertible matrix (product of unit triangular factors and a diagonal).
Mat random_invertible(Rng& r, int n);
Mat inverse(const Mat& m);

}  // namespace qq
