#pragma once

#include "quasiq/linalg.hpp"
#include "quasiq/scalar.hpp"

#include <map>
#include <string>
#include <vector>

namespace qq {

struct GradedVectorSpace {
    struct Component {
        int dim = 0;
        std::vector<std::string> labels;
    };
    std::map<int, Component> components;

    int dim(int deg) const;
    int total_dim() const;
    // Throws on duplicate labels or label/dimension mismatch.
    void validate() const;
    static GradedVectorSpace single(int deg, int dim, const std::string& prefix);
};

// Sorts idx in place; returns the sign of the sorting permutation, or 0 on a repeated index.
int sort_sign(std::vector<int>& idx);
// All strictly increasing k-tuples from {0..n-1}, in lexicographic order.
std::vector<std::vector<int>> increasing_tuples(int n, int k);

// Multilinear map V^k -> W, alternating by default (stored on increasing tuples).
// With alternating = false the keys are arbitrary tuples and slot dimensions may differ.
struct AltTensor {
    int arity = 0;
    int in_dim = 0;
    int out_dim = 0;
    bool alternating = true;
    std::vector<int> slot_dims;  // only for non-alternating tensors
    std::map<std::vector<int>, SparseVec> entries;

    AltTensor() = default;
    AltTensor(int arity_, int in, int out) : arity(arity_), in_dim(in), out_dim(out) {}
    static AltTensor general(std::vector<int> slot_dims, int out);

    int slot_dim(int s) const { return alternating ? in_dim : slot_dims[s]; }
    // Adds v * w_out at args (arguments in any order for alternating tensors).
    void add(std::vector<int> args, int out, const Scalar& v);
    // Value on basis arguments; zero on repeats; sign of sorting permutation applied.
    SparseVec eval(std::vector<int> args) const;
    Scalar eval(const std::vector<int>& args, int out) const;
    // Multilinear evaluation on coordinate vectors.
    std::vector<Scalar> eval_vec(const std::vector<std::vector<Scalar>>& args) const;
    bool is_zero() const;
    void prune();
    friend bool operator==(const AltTensor& a, const AltTensor& b);
    AltTensor& operator+=(const AltTensor& o);
    AltTensor& operator*=(const Scalar& s);
    friend AltTensor operator+(AltTensor a, const AltTensor& b) { return a += b; }
    friend AltTensor operator-(AltTensor a, AltTensor b) { return a += (b *= Scalar(-1)); }
};

SparseVec alt_eval(const AltTensor& T, const std::vector<int>& args);

// Block-diagonal-by-degree map between graded spaces, shifting degree by `degree`.
struct GradedLinearMap {
    GradedVectorSpace source, target;
    int degree = 0;
    std::map<int, Mat> blocks;  // source degree -> matrix (target dim x source dim)

    void validate() const;
    std::vector<Scalar> apply(int deg, const std::vector<Scalar>& x) const;
};

std::vector<Scalar> unit_vec(int n, int i);

}  // namespace qq
