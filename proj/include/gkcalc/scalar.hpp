#ifndef GKCALC_SCALAR_HPP
#define GKCALC_SCALAR_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace gk {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/* Gaussian rational a + b*i with exact mpq components.  All arithmetic in
 * the engine runs over this field; there is no floating point anywhere. */
struct Scalar {
    mpq_class re, im;

    Scalar() : re(0), im(0) {}
    Scalar(long a) : re(a), im(0) {}
    Scalar(const mpq_class& a) : re(a), im(0) { re.canonicalize(); }
    Scalar(mpq_class a, mpq_class b) : re(std::move(a)), im(std::move(b)) {
        re.canonicalize();
        im.canonicalize();
    }

    static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }
    static Scalar of(long num, long den) {
        mpq_class q(num, den);
        q.canonicalize();
        return Scalar(q);
    }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_one() const { return re == 1 && im == 0; }

    Scalar conj() const { return Scalar(re, -im); }
    mpq_class norm() const { return re * re + im * im; }

    Scalar operator-() const { return Scalar(-re, -im); }
    Scalar operator+(const Scalar& o) const { return Scalar(re + o.re, im + o.im); }
    Scalar operator-(const Scalar& o) const { return Scalar(re - o.re, im - o.im); }
    Scalar operator*(const Scalar& o) const {
        return Scalar(re * o.re - im * o.im, re * o.im + im * o.re);
    }
    Scalar inv() const {
        mpq_class n = norm();
        if (n == 0) throw Error("Scalar: division by zero");
        return Scalar(re / n, -im / n);
    }
    Scalar operator/(const Scalar& o) const { return *this * o.inv(); }

    Scalar& operator+=(const Scalar& o) { re += o.re; im += o.im; return *this; }
    Scalar& operator-=(const Scalar& o) { re -= o.re; im -= o.im; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

    bool operator==(const Scalar& o) const { return re == o.re && im == o.im; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /* canonical form "a/b+c/d*i", lowest terms, used by the workspace format */
    std::string str() const {
        mpq_class ia = im >= 0 ? im : mpq_class(-im);
        return re.get_str() + (re.get_den() == 1 ? "/1" : "") + (im >= 0 ? "+" : "-") +
               ia.get_str() + (ia.get_den() == 1 ? "/1" : "") + "*i";
    }

    /* accepts "a/b+c/d*i" and the shorthands "a", "a/b", "c*i", "-3/2*i", "a+c*i" */
    static Scalar parse(const std::string& s);
};

} // namespace gk

#endif
