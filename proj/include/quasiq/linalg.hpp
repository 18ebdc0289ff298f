#pragma once

#include "quasiq/scalar.hpp"

#include <map>
#include <optional>
#include <vector>

namespace qq {

using SparseVec = std::map<int, Scalar>;

void axpy(SparseVec& y, const Scalar& a, const SparseVec& x);  // y += a*x
Scalar dot(const SparseVec& a, const SparseVec& b);

// Dense matrix, row-major.
struct Mat {
    int rows = 0, cols = 0;
    std::vector<Scalar> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    static Mat identity(int n);

    Scalar& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Scalar& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    Mat transpose() const;
    bool is_zero() const;
    std::vector<Scalar> apply(const std::vector<Scalar>& x) const;
    friend Mat operator*(const Mat& x, const Mat& y);
    friend Mat operator+(const Mat& x, const Mat& y);
    friend Mat operator-(const Mat& x, const Mat& y);
    friend Mat operator*(const Scalar& s, const Mat& x);
    friend bool operator==(const Mat& x, const Mat& y) = default;
};

// Incremental exact row reduction; rows are kept fully reduced.
class RowReducer {
public:
    explicit RowReducer(int ncols) : ncols_(ncols) {}

    // Returns true when the row was independent of the rows so far.
    bool add(SparseVec row);
    // Reduces v modulo the row space; zero result means v is in the span.
    SparseVec reduce(SparseVec v) const;
    int rank() const { return static_cast<int>(rows_.size()); }
    int ncols() const { return ncols_; }
    const std::map<int, SparseVec>& rows() const { return rows_; }
    // Basis of {x : r.x = 0 for all rows r}; vector i has a 1 at its free column.
    std::vector<SparseVec> nullspace() const;

private:
    int ncols_;
    std::map<int, SparseVec> rows_;  // pivot column -> row with leading 1
};

// A subspace with a basis in echelon form w.r.t. distinguished columns.
class Subspace {
public:
    Subspace() = default;
    Subspace(int ambient, const std::vector<SparseVec>& spanning);
    static Subspace kernel(int ncols, const std::vector<SparseVec>& constraints);

    int dim() const { return static_cast<int>(basis_.size()); }
    int ambient() const { return ambient_; }
    const std::vector<SparseVec>& basis() const { return basis_; }
    // Coordinates of x in the basis, or nullopt when x is not in the subspace.
    std::optional<std::vector<Scalar>> coords(const SparseVec& x) const;
    SparseVec combine(const std::vector<Scalar>& c) const;

private:
    int ambient_ = 0;
    std::vector<SparseVec> basis_;
    std::vector<int> cols_;
};

int rank(const Mat& m);
std::vector<SparseVec> nullspace(const Mat& m);

struct SolveResult {
    std::optional<std::vector<Scalar>> x;  // a solution of A x = b
    std::vector<Scalar> certificate;       // y with y^T A = 0 and y^T b != 0 when x is empty
};
SolveResult solve(const Mat& A, const std::vector<Scalar>& b);

SparseVec to_sparse(const std::vector<Scalar>& v);
std::vector<Scalar> to_dense(const SparseVec& v, int n);

}  // namespace qq
