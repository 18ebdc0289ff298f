#include "quasiq/graded.hpp"

#include <set>
#include <stdexcept>

namespace qq {

int GradedVectorSpace::dim(int deg) const {
    auto it = components.find(deg);
    return it == components.end() ? 0 : it->second.dim;
}

int GradedVectorSpace::total_dim() const {
    int n = 0;
    for (const auto& [d, c] : components) n += c.dim;
    return n;
}

void GradedVectorSpace::validate() const {
    for (const auto& [d, c] : components) {
        if (c.dim < 0) throw std::invalid_argument("negative dimension in degree " + std::to_string(d));
        if (!c.labels.empty() && static_cast<int>(c.labels.size()) != c.dim)
            throw std::invalid_argument("label count does not match dimension in degree " + std::to_string(d));
        std::set<std::string> seen(c.labels.begin(), c.labels.end());
        if (seen.size() != c.labels.size())
            throw std::invalid_argument("duplicate basis label in degree " + std::to_string(d));
    }
}

GradedVectorSpace GradedVectorSpace::single(int deg, int dim, const std::string& prefix) {
    GradedVectorSpace v;
    auto& c = v.components[deg];
    c.dim = dim;
    for (int i = 0; i < dim; ++i) c.labels.push_back(prefix + std::to_string(i));
    return v;
}

int sort_sign(std::vector<int>& idx) {
    int sign = 1;
    for (size_t i = 1; i < idx.size(); ++i)
        for (size_t j = i; j > 0 && idx[j - 1] > idx[j]; --j) {
            std::swap(idx[j - 1], idx[j]);
            sign = -sign;
        }
    for (size_t i = 1; i < idx.size(); ++i)
        if (idx[i] == idx[i - 1]) return 0;
    return sign;
}

std::vector<std::vector<int>> increasing_tuples(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> t(k);
    for (int i = 0; i < k; ++i) t[i] = i;
    while (true) {
        out.push_back(t);
        int i = k - 1;
        while (i >= 0 && t[i] == n - k + i) --i;
        if (i < 0) break;
        ++t[i];
        for (int j = i + 1; j < k; ++j) t[j] = t[j - 1] + 1;
    }
    return out;
}

AltTensor AltTensor::general(std::vector<int> dims, int out) {
    AltTensor t;
    t.arity = static_cast<int>(dims.size());
    t.alternating = false;
    t.slot_dims = std::move(dims);
    t.out_dim = out;
    return t;
}

namespace {
void check_args(const AltTensor& T, const std::vector<int>& args) {
    if (static_cast<int>(args.size()) != T.arity)
        throw std::invalid_argument("arity mismatch: expected " + std::to_string(T.arity) + " arguments, got " +
                                    std::to_string(args.size()));
    for (int s = 0; s < T.arity; ++s)
        if (args[s] < 0 || args[s] >= T.slot_dim(s)) throw std::out_of_range("tensor argument index out of range");
}
}  // namespace

void AltTensor::add(std::vector<int> args, int out, const Scalar& v) {
    check_args(*this, args);
    if (out < 0 || out >= out_dim) throw std::out_of_range("tensor output index out of range");
    int sign = alternating ? sort_sign(args) : 1;
    if (sign == 0 || v.is_zero()) return;
    auto& e = entries[args];
    auto it = e.find(out);
    Scalar w = sign > 0 ? v : -v;
    if (it == e.end()) {
        e.emplace(out, w);
    } else {
        it->second += w;
        if (it->second.is_zero()) e.erase(it);
    }
    if (e.empty()) entries.erase(args);
}

SparseVec AltTensor::eval(std::vector<int> args) const {
    check_args(*this, args);
    int sign = alternating ? sort_sign(args) : 1;
    if (sign == 0) return {};
    auto it = entries.find(args);
    if (it == entries.end()) return {};
    SparseVec r = it->second;
    if (sign < 0)
        for (auto& [k, v] : r) v = -v;
    return r;
}

Scalar AltTensor::eval(const std::vector<int>& args, int out) const {
    SparseVec r = eval(args);
    auto it = r.find(out);
    return it == r.end() ? Scalar() : it->second;
}

std::vector<Scalar> AltTensor::eval_vec(const std::vector<std::vector<Scalar>>& args) const {
    if (static_cast<int>(args.size()) != arity) throw std::invalid_argument("arity mismatch");
    std::vector<Scalar> out(out_dim);
    // Sum over the support of each argument.
    std::vector<std::vector<int>> supp(arity);
    for (int s = 0; s < arity; ++s) {
        if (static_cast<int>(args[s].size()) != slot_dim(s)) throw std::invalid_argument("argument dimension mismatch");
        for (int i = 0; i < slot_dim(s); ++i)
            if (!args[s][i].is_zero()) supp[s].push_back(i);
        if (supp[s].empty()) return out;
    }
    std::vector<size_t> pos(arity, 0);
    std::vector<int> idx(arity);
    while (true) {
        Scalar coef(1);
        for (int s = 0; s < arity; ++s) {
            idx[s] = supp[s][pos[s]];
            coef *= args[s][idx[s]];
        }
        for (const auto& [o, v] : eval(idx)) out[o] += coef * v;
        int s = arity - 1;
        while (s >= 0 && ++pos[s] == supp[s].size()) pos[s--] = 0;
        if (s < 0) break;
    }
    return out;
}

bool AltTensor::is_zero() const {
    for (const auto& [k, v] : entries)
        if (!v.empty()) return false;
    return true;
}

void AltTensor::prune() {
    for (auto it = entries.begin(); it != entries.end();) {
        for (auto jt = it->second.begin(); jt != it->second.end();)
            jt = jt->second.is_zero() ? it->second.erase(jt) : std::next(jt);
        it = it->second.empty() ? entries.erase(it) : std::next(it);
    }
}

bool operator==(const AltTensor& a, const AltTensor& b) {
    if (a.arity != b.arity || a.out_dim != b.out_dim || a.alternating != b.alternating) return false;
    if (a.alternating ? a.in_dim != b.in_dim : a.slot_dims != b.slot_dims) return false;
    AltTensor x = a, y = b;
    x.prune();
    y.prune();
    return x.entries == y.entries;
}

AltTensor& AltTensor::operator+=(const AltTensor& o) {
    if (o.arity != arity || o.out_dim != out_dim || o.alternating != alternating)
        throw std::invalid_argument("tensor sum: shape mismatch");
    for (const auto& [k, v] : o.entries) {
        auto& e = entries[k];
        axpy(e, Scalar(1), v);
        if (e.empty()) entries.erase(k);
    }
    return *this;
}

AltTensor& AltTensor::operator*=(const Scalar& s) {
    if (s.is_zero()) {
        entries.clear();
        return *this;
    }
    for (auto& [k, v] : entries)
        for (auto& [o, x] : v) x *= s;
    return *this;
}

SparseVec alt_eval(const AltTensor& T, const std::vector<int>& args) { return T.eval(args); }

void GradedLinearMap::validate() const {
    for (const auto& [deg, m] : blocks) {
        if (m.cols != source.dim(deg) || m.rows != target.dim(deg + degree))
            throw std::invalid_argument("graded map block in degree " + std::to_string(deg) + " has wrong shape");
    }
}

std::vector<Scalar> GradedLinearMap::apply(int deg, const std::vector<Scalar>& x) const {
    auto it = blocks.find(deg);
    if (it == blocks.end()) return std::vector<Scalar>(target.dim(deg + degree));
    return it->second.apply(x);
}

std::vector<Scalar> unit_vec(int n, int i) {
    std::vector<Scalar> v(n);
    v[i] = 1;
    return v;
}

}  // namespace qq
