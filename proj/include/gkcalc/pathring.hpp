#ifndef GKCALC_PATHRING_HPP
#define GKCALC_PATHRING_HPP

#include "gkcalc/scalar.hpp"
#include <vector>
#include <string>

namespace gk {

/* Polynomial in one variable over Scalar, dense, trailing zeros trimmed. */
struct Poly {
    std::vector<Scalar> c; // c[k] * s^k

    Poly() = default;
    explicit Poly(Scalar s) { if (!s.is_zero()) c.push_back(std::move(s)); }

    void trim() { while (!c.empty() && c.back().is_zero()) c.pop_back(); }
    bool is_zero() const { return c.empty(); }
    int deg() const { return (int)c.size() - 1; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    bool operator==(const Poly& o) const { return c == o.c; }

    Scalar eval(const Scalar& x) const;
    static Poly x() { Poly p; p.c = {Scalar(0), Scalar(1)}; return p; }
};

/* The path ring Q(i)[c,s]/(c^2+s^2-1) in the normal form  a(s) + c*b(s).
 * Evaluation at the endpoints t=0 -> (c,s)=(1,0) and t=pi/2 -> (c,s)=(0,1)
 * gives the two ring homomorphisms onto Scalar.  All homotopies the engine
 * constructs (rotations, straight lines in the s coordinate) live here. */
struct PathScalar {
    Poly a, b; // a(s) + c * b(s)

    PathScalar() = default;
    PathScalar(Scalar s) : a(Poly(std::move(s))) {}
    PathScalar(Poly a_, Poly b_) : a(std::move(a_)), b(std::move(b_)) {}

    static PathScalar s_var() { return PathScalar(Poly::x(), Poly()); }
    static PathScalar c_var() { return PathScalar(Poly(), Poly(Scalar(1))); }

    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    bool is_one() const { return b.is_zero() && a.deg() == 0 && !a.is_zero() && a.c[0].is_one(); }

    PathScalar operator+(const PathScalar& o) const { return {a + o.a, b + o.b}; }
    PathScalar operator-(const PathScalar& o) const { return {a - o.a, b - o.b}; }
    PathScalar operator-() const { return {-a, -b}; }
    PathScalar operator*(const PathScalar& o) const {
        // (a1 + c b1)(a2 + c b2) = a1 a2 + (1-s^2) b1 b2 + c (a1 b2 + b1 a2)
        Poly one_minus_s2;
        one_minus_s2.c = {Scalar(1), Scalar(0), Scalar(-1)};
        return {a * o.a + one_minus_s2 * (b * o.b), a * o.b + b * o.a};
    }
    PathScalar& operator+=(const PathScalar& o) { *this = *this + o; return *this; }
    bool operator==(const PathScalar& o) const { return a == o.a && b == o.b; }
    bool operator!=(const PathScalar& o) const { return !(*this == o); }

    /* endpoint evaluations: t=0 ~ (c,s)=(1,0), t=pi/2 ~ (c,s)=(0,1) */
    Scalar eval0() const { return a.eval(Scalar(0)) + b.eval(Scalar(0)); }
    Scalar eval1() const { return a.eval(Scalar(1)); }

    /* substitute t -> pi/2 - t, i.e. swap c and s */
    PathScalar reversed() const;

    bool is_constant() const { return b.is_zero() && a.deg() <= 0; }
};

} // namespace gk

#endif
