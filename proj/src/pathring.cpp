#include "gkcalc/pathring.hpp"

namespace gk {

Poly Poly::operator+(const Poly& o) const {
    Poly r;
    r.c.resize(std::max(c.size(), o.c.size()));
    for (size_t k = 0; k < r.c.size(); k++) {
        if (k < c.size()) r.c[k] += c[k];
        if (k < o.c.size()) r.c[k] += o.c[k];
    }
    r.trim();
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& x : r.c) x = -x;
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    Poly r;
    r.c.assign(c.size() + o.c.size() - 1, Scalar(0));
    for (size_t i = 0; i < c.size(); i++) {
        if (c[i].is_zero()) continue;
        for (size_t j = 0; j < o.c.size(); j++)
            r.c[i + j] += c[i] * o.c[j];
    }
    r.trim();
    return r;
}

Scalar Poly::eval(const Scalar& x) const {
    Scalar r;
    for (size_t k = c.size(); k-- > 0;) r = r * x + c[k];
    return r;
}

PathScalar PathScalar::reversed() const {
    // map each monomial s^k -> c^k and c*s^k -> s*c^k, then renormalize
    // using c^2 = 1 - s^2.
    auto c_power = [](int k) {
        // returns c^k in normal form
        PathScalar r(Scalar(1));
        PathScalar c = PathScalar::c_var();
        for (int j = 0; j < k; j++) r = r * c;
        return r;
    };
    PathScalar out;
    for (int k = 0; k <= a.deg(); k++) {
        if (a.c[k].is_zero()) continue;
        out += c_power(k) * PathScalar(a.c[k]);
    }
    PathScalar s = PathScalar::s_var();
    for (int k = 0; k <= b.deg(); k++) {
        if (b.c[k].is_zero()) continue;
        out += s * c_power(k) * PathScalar(b.c[k]);
    }
    return out;
}

} // namespace gk
