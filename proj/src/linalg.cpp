#include "quasiq/linalg.hpp"

#include <stdexcept>

namespace qq {

void axpy(SparseVec& y, const Scalar& a, const SparseVec& x) {
    if (a.is_zero()) return;
    for (const auto& [k, v] : x) {
        auto it = y.find(k);
        if (it == y.end()) {
            y.emplace(k, a * v);
        } else {
            it->second += a * v;
            if (it->second.is_zero()) y.erase(it);
        }
    }
}

Scalar dot(const SparseVec& a, const SparseVec& b) {
    Scalar s;
    const SparseVec& small = a.size() <= b.size() ? a : b;
    const SparseVec& big = a.size() <= b.size() ? b : a;
    for (const auto& [k, v] : small) {
        auto it = big.find(k);
        if (it != big.end()) s += v * it->second;
    }
    return s;
}

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat Mat::transpose() const {
    Mat t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool Mat::is_zero() const {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}

std::vector<Scalar> Mat::apply(const std::vector<Scalar>& x) const {
    if (static_cast<int>(x.size()) != cols) throw std::invalid_argument("Mat::apply: size mismatch");
    std::vector<Scalar> y(rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (!(*this)(i, j).is_zero() && !x[j].is_zero()) y[i] += (*this)(i, j) * x[j];
    return y;
}

Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw std::invalid_argument("Mat product: shape mismatch");
    Mat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Scalar& a = x(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < y.cols; ++j)
                if (!y(k, j).is_zero()) r(i, j) += a * y(k, j);
        }
    return r;
}

Mat operator+(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("Mat sum: shape mismatch");
    Mat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

Mat operator-(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("Mat difference: shape mismatch");
    Mat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

Mat operator*(const Scalar& s, const Mat& x) {
    Mat r = x;
    for (auto& v : r.a) v *= s;
    return r;
}

SparseVec RowReducer::reduce(SparseVec v) const {
    // Rows are fully reduced, so one pass over pivots present in v suffices.
    for (auto it = v.begin(); it != v.end();) {
        auto r = rows_.find(it->first);
        if (r == rows_.end()) {
            ++it;
            continue;
        }
        Scalar c = it->second;
        int col = it->first;
        axpy(v, -c, r->second);
        it = v.upper_bound(col);
    }
    return v;
}

bool RowReducer::add(SparseVec row) {
    row = reduce(std::move(row));
    if (row.empty()) return false;
    int p = row.begin()->first;
    Scalar inv = Scalar(1) / row.begin()->second;
    for (auto& [k, v] : row) v *= inv;
    for (auto& [q, r] : rows_) {
        auto it = r.find(p);
        if (it != r.end()) {
            Scalar c = it->second;
            axpy(r, -c, row);
        }
    }
    rows_.emplace(p, std::move(row));
    return true;
}

std::vector<SparseVec> RowReducer::nullspace() const {
    std::vector<SparseVec> out;
    for (int f = 0; f < ncols_; ++f) {
        if (rows_.count(f)) continue;
        SparseVec v;
        v[f] = 1;
        for (const auto& [p, r] : rows_) {
            auto it = r.find(f);
            if (it != r.end()) v[p] = -it->second;
        }
        out.push_back(std::move(v));
    }
    return out;
}

Subspace::Subspace(int ambient, const std::vector<SparseVec>& spanning) : ambient_(ambient) {
    RowReducer rr(ambient);
    for (const auto& v : spanning) rr.add(v);
    for (const auto& [p, r] : rr.rows()) {
        basis_.push_back(r);
        cols_.push_back(p);
    }
}

Subspace Subspace::kernel(int ncols, const std::vector<SparseVec>& constraints) {
    RowReducer rr(ncols);
    for (const auto& c : constraints) rr.add(c);
    Subspace s;
    s.ambient_ = ncols;
    for (int f = 0; f < ncols; ++f) {
        if (rr.rows().count(f)) continue;
        SparseVec v;
        v[f] = 1;
        for (const auto& [p, r] : rr.rows()) {
            auto it = r.find(f);
            if (it != r.end()) v[p] = -it->second;
        }
        s.basis_.push_back(std::move(v));
        s.cols_.push_back(f);
    }
    return s;
}

std::optional<std::vector<Scalar>> Subspace::coords(const SparseVec& x) const {
    std::vector<Scalar> c(basis_.size());
    for (size_t i = 0; i < basis_.size(); ++i) {
        auto it = x.find(cols_[i]);
        if (it != x.end()) c[i] = it->second;
    }
    SparseVec r = x;
    for (size_t i = 0; i < basis_.size(); ++i) axpy(r, -c[i], basis_[i]);
    if (!r.empty()) return std::nullopt;
    return c;
}

SparseVec Subspace::combine(const std::vector<Scalar>& c) const {
    SparseVec r;
    for (size_t i = 0; i < basis_.size() && i < c.size(); ++i) axpy(r, c[i], basis_[i]);
    return r;
}

SparseVec to_sparse(const std::vector<Scalar>& v) {
    SparseVec s;
    for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) s[static_cast<int>(i)] = v[i];
    return s;
}

std::vector<Scalar> to_dense(const SparseVec& v, int n) {
    std::vector<Scalar> d(n);
    for (const auto& [k, x] : v) {
        if (k < 0 || k >= n) throw std::out_of_range("to_dense: index out of range");
        d[k] = x;
    }
    return d;
}

namespace {
RowReducer reduce_rows(const Mat& m) {
    RowReducer rr(m.cols);
    for (int i = 0; i < m.rows; ++i) {
        SparseVec r;
        for (int j = 0; j < m.cols; ++j)
            if (!m(i, j).is_zero()) r[j] = m(i, j);
        rr.add(std::move(r));
    }
    return rr;
}
}  // namespace

int rank(const Mat& m) { return reduce_rows(m).rank(); }

std::vector<SparseVec> nullspace(const Mat& m) { return reduce_rows(m).nullspace(); }

SolveResult solve(const Mat& A, const std::vector<Scalar>& b) {
    if (static_cast<int>(b.size()) != A.rows) throw std::invalid_argument("solve: shape mismatch");
    // Reduce the augmented matrix [A | b]; the last column is the right-hand side.
    Mat aug(A.rows, A.cols + 1);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) aug(i, j) = A(i, j);
        aug(i, A.cols) = b[i];
    }
    RowReducer rr = reduce_rows(aug);
    SolveResult res;
    if (rr.rows().count(A.cols)) {
        // Inconsistent: find y in ker(A^T) with y.b != 0.
        for (const auto& y : nullspace(A.transpose())) {
            Scalar s;
            for (const auto& [k, v] : y) s += v * b[k];
            if (!s.is_zero()) {
                res.certificate = to_dense(y, A.rows);
                break;
            }
        }
        return res;
    }
    std::vector<Scalar> x(A.cols);
    for (const auto& [p, r] : rr.rows()) {
        auto it = r.find(A.cols);
        if (it != r.end()) x[p] = it->second;
    }
    res.x = std::move(x);
    return res;
}

}  // namespace qq
