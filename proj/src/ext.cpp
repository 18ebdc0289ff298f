#include "quasiq/ext.hpp"

#include <sstream>
#include <stdexcept>

namespace qq {

int GeneratorSet::index_of(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
        if (labels[i] == label) return i;
    return -1;
}

Gens make_gens(std::vector<std::string> labels, std::vector<int> degrees) {
    if (labels.size() != degrees.size()) throw std::invalid_argument("make_gens: size mismatch");
    if (labels.size() > 255) throw std::invalid_argument("make_gens: too many generators");
    auto g = std::make_shared<GeneratorSet>();
    g->labels = std::move(labels);
    g->degrees = std::move(degrees);
    return g;
}

bool same_gens(const Gens& a, const Gens& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

int monomial_degree(const GeneratorSet& g, const Monomial& m) {
    int d = 0;
    for (auto i : m) d += g.degrees[i];
    return d;
}

int monomial_mul(const GeneratorSet& g, const Monomial& a, const Monomial& b, Monomial& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    // Odd count of a strictly above each odd generator of b gives the transposition sign.
    int parity = 0;
    size_t i = 0, j = 0;
    int odd_remaining_a = 0;
    for (auto x : a)
        if (g.odd(x)) ++odd_remaining_a;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i] < b[j])) {
            if (g.odd(a[i])) --odd_remaining_a;
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j] < a[i]) {
            if (g.odd(b[j])) parity += odd_remaining_a;
            out.push_back(b[j++]);
        } else {
            if (g.odd(a[i])) return 0;
            out.push_back(a[i++]);
        }
    }
    return (parity & 1) ? -1 : 1;
}

ExtElement ExtElement::constant(Gens g, const Scalar& c) {
    ExtElement e(std::move(g));
    if (!c.is_zero()) e.terms_[Monomial{}] = c;
    return e;
}

ExtElement ExtElement::generator(Gens g, int i) {
    if (i < 0 || i >= g->size()) throw std::out_of_range("generator index out of range");
    ExtElement e(std::move(g));
    e.terms_[Monomial{static_cast<uint8_t>(i)}] = 1;
    return e;
}

ExtElement ExtElement::monomial(Gens g, Monomial m, const Scalar& c) {
    ExtElement e(std::move(g));
    e.add_term(m, c);
    return e;
}

int ExtElement::degree() const {
    if (terms_.empty()) return -1;
    int d = monomial_degree(*gens_, terms_.begin()->first);
    for (const auto& [m, c] : terms_)
        if (monomial_degree(*gens_, m) != d) throw std::logic_error("degree of inhomogeneous element");
    return d;
}

bool ExtElement::is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = monomial_degree(*gens_, terms_.begin()->first);
    for (const auto& [m, c] : terms_)
        if (monomial_degree(*gens_, m) != d) return false;
    return true;
}

ExtElement ExtElement::homogeneous_part(int deg) const {
    ExtElement r(gens_);
    for (const auto& [m, c] : terms_)
        if (monomial_degree(*gens_, m) == deg) r.terms_.emplace(m, c);
    return r;
}

Scalar ExtElement::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar() : it->second;
}

void ExtElement::add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    Monomial s = m;
    // Accept unsorted input: sort with sign.
    int sign = 1;
    for (size_t i = 1; i < s.size(); ++i)
        for (size_t j = i; j > 0 && s[j - 1] > s[j]; --j) {
            if (gens_->odd(s[j - 1]) && gens_->odd(s[j])) sign = -sign;
            std::swap(s[j - 1], s[j]);
        }
    for (size_t i = 1; i < s.size(); ++i)
        if (s[i] == s[i - 1] && gens_->odd(s[i])) return;
    for (auto x : s)
        if (x >= gens_->size()) throw std::out_of_range("monomial generator out of range");
    auto it = terms_.find(s);
    Scalar v = sign > 0 ? c : -c;
    if (it == terms_.end()) {
        terms_.emplace(std::move(s), v);
    } else {
        it->second += v;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void ExtElement::check_same(const ExtElement& o) const {
    if (!same_gens(gens_, o.gens_)) throw std::invalid_argument("mismatched generator sets");
}

ExtElement& ExtElement::operator+=(const ExtElement& o) {
    if (!gens_) gens_ = o.gens_;
    check_same(o);
    for (const auto& [m, c] : o.terms_) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

ExtElement& ExtElement::operator-=(const ExtElement& o) {
    if (!gens_) gens_ = o.gens_;
    check_same(o);
    for (const auto& [m, c] : o.terms_) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, -c);
        } else {
            it->second -= c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

ExtElement& ExtElement::operator*=(const Scalar& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
}

ExtElement ExtElement::operator-() const {
    ExtElement r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

ExtElement wedge(const ExtElement& a, const ExtElement& b) {
    a.check_same(b);
    ExtElement r(a.gens_);
    Monomial out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            int s = monomial_mul(*a.gens_, ma, mb, out);
            if (s == 0) continue;
            Scalar v = ca * cb;
            if (s < 0) v = -v;
            auto it = r.terms_.find(out);
            if (it == r.terms_.end()) {
                r.terms_.emplace(out, v);
            } else {
                it->second += v;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
    return r;
}

bool operator==(const ExtElement& a, const ExtElement& b) {
    if (a.terms_.empty() && b.terms_.empty()) return true;
    if (!same_gens(a.gens_, b.gens_)) return false;
    return a.terms_ == b.terms_;
}

std::string ExtElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        for (auto x : m) os << "*" << gens_->labels[x];
    }
    return os.str();
}

void check_degree_preserving(const GeneratorSet& src, const std::vector<ExtElement>& images) {
    if (static_cast<int>(images.size()) != src.size())
        throw std::invalid_argument("pullback: wrong number of generator images");
    for (int i = 0; i < src.size(); ++i) {
        const auto& im = images[i];
        for (const auto& [m, c] : im.terms())
            if (monomial_degree(*im.gens(), m) != src.degrees[i])
                throw std::invalid_argument("pullback: degree-violating image for generator " + src.labels[i]);
    }
}

ExtElement substitute(const ExtElement& x, const std::vector<ExtElement>& images, const Gens& target) {
    ExtElement r(target);
    if (static_cast<int>(images.size()) != x.gens()->size())
        throw std::invalid_argument("substitute: wrong number of generator images");
    for (const auto& [m, c] : x.terms()) {
        ExtElement t = ExtElement::constant(target, c);
        for (auto g : m) {
            t = wedge(t, images[g]);
            if (t.is_zero()) break;
        }
        r += t;
    }
    return r;
}

ExtElement left_derivative(const ExtElement& x, int g) {
    const GeneratorSet& gs = *x.gens();
    ExtElement r(x.gens());
    for (const auto& [m, c] : x.terms()) {
        int before = 0;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == g) {
                Monomial rest = m;
                rest.erase(rest.begin() + static_cast<long>(i));
                bool neg = gs.odd(g) && (before & 1);
                r.add_term(rest, neg ? -c : c);
            }
            before += gs.degrees[m[i]];
        }
    }
    return r;
}

}  // namespace qq
