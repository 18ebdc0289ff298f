#include "quasiq/scalar.hpp"

#include <stdexcept>

namespace qq {

Scalar::Scalar(long num, long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    v_ /= o.v_;
    return *this;
}

namespace {

bool valid_int(std::string_view s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

mpz_class to_mpz(std::string_view s) {
    std::string t(s);
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return mpz_class(t, 10);
}

}  // namespace

Scalar Scalar::parse(std::string_view s, bool* normalized) {
    if (normalized) *normalized = false;
    auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        if (!valid_int(s)) throw std::invalid_argument("malformed rational '" + std::string(s) + "'");
        return Scalar(mpq_class(to_mpz(s)));
    }
    auto n = s.substr(0, slash), d = s.substr(slash + 1);
    if (!valid_int(n) || !valid_int(d) || d[0] == '-' || d[0] == '+')
        throw std::invalid_argument("malformed rational '" + std::string(s) + "'");
    mpz_class dn = to_mpz(d);
    if (dn == 0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
    mpq_class q(to_mpz(n), dn);
    mpq_class c = q;
    c.canonicalize();
    if (normalized) *normalized = (c.get_num() != q.get_num() || c.get_den() != q.get_den() || dn == 1);
    return Scalar(c);
}

std::string Scalar::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Scalar factorial(unsigned n) {
    mpz_class f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return Scalar(mpq_class(f));
}

}  // namespace qq
