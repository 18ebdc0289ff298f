#pragma once

#include "quasiq/bialg.hpp"
#include "quasiq/qla.hpp"
#include "quasiq/random.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qq {

// One seeded property battery per acceptance criterion (1..8).
struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    int samples = 0;
    std::string detail;             // deterministic summary
    std::vector<std::string> notes; // first few disagreements
    double seconds = 0;             // wall time; not part of deterministic output
};

inline constexpr int kCriteria = 8;
// samples <= 0 uses the default count of the criterion (50, 100, ...).
CriterionResult run_criterion(int id, uint64_t seed = 1, int samples = 0);

// Degree-1 element of the multivector dgla: an L2 image, gauged by random sections of every arity
// (mode >= 1), then perturbed in two coordinates (mode 2).
WeakL2Bialgebra random_weak_l2_bialgebra(Rng& r, int e, int c, int mode);
// mu random (Lie when lie is set), cobracket random; phi, chi random when asked.
ProtoBialgebra random_proto(Rng& r, int n, bool lie, bool with_phi, bool with_chi);
// A Lie bialgebra: direct sum of a random Lie algebra with zero cobracket and an abelian one with a random
// Lie cobracket.
ProtoBialgebra random_lie_bialgebra(Rng& r, int n);

// Dense-rank oracle: is (h,xi) - (h2,xi2) in the image of b -> (Q0 b, b - t*b)?
bool extension_solvable_dense(const QuasiQ& S, const ExtElement& h, const ExtElement& xi, const ExtElement& h2,
                              const ExtElement& xi2);

}  // namespace qq
