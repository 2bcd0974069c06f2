#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <ostream>
#include <string>

#include "diffhull/errors.hpp"

namespace diffhull {

// Arbitrary-precision rational scalar. Always reduced, denominator > 0.
// Serializes as "p/q" with "/q" omitted when q == 1.
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {} // NOLINT(google-explicit-constructor)
    Rational(long num, long den) : v_(num, den)
    {
        if (den == 0)
            throw Error("DivisionByZero", "rational with zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpq_class &q) : v_(q) { v_.canonicalize(); }

    static Rational parse(const std::string &s)
    {
        mpq_class q;
        if (q.set_str(s, 10) != 0)
            throw ParseError("bad rational literal: \"" + s + "\"", s);
        if (q.get_den() == 0)
            throw ParseError("zero denominator in rational: \"" + s + "\"", s);
        q.canonicalize();
        return Rational(q);
    }

    std::string str() const { return v_.get_str(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational &operator+=(const Rational &o) { v_ += o.v_; return *this; }
    Rational &operator-=(const Rational &o) { v_ -= o.v_; return *this; }
    Rational &operator*=(const Rational &o) { v_ *= o.v_; return *this; }
    Rational &operator/=(const Rational &o)
    {
        if (o.is_zero())
            throw Error("DivisionByZero", "rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }

    friend bool operator==(const Rational &a, const Rational &b)
    {
        return a.v_ == b.v_;
    }
    friend bool operator!=(const Rational &a, const Rational &b)
    {
        return a.v_ != b.v_;
    }
    friend bool operator<(const Rational &a, const Rational &b)
    {
        return a.v_ < b.v_;
    }

    Rational reciprocal() const
    {
        if (is_zero())
            throw Error("DivisionByZero", "reciprocal of zero");
        return Rational(mpq_class(1) / v_);
    }

    // n! as a rational, for the HKR and polarization normalizations.
    static Rational factorial(int n)
    {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
        return Rational(mpq_class(f));
    }

    friend std::ostream &operator<<(std::ostream &os, const Rational &r)
    {
        return os << r.str();
    }

  private:
    mpq_class v_;
};

} // namespace diffhull
