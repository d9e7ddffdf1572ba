#pragma once

#include <compare>
#include <optional>
#include <string>

#include "ech/rational.hpp"

namespace ech {

// Element rat + coeff*sqrt(disc) of a real quadratic extension of Q.
//
// Conventions:
//  - Pure rationals carry coeff = 0 and disc = 0; they are compatible with
//    any field.
//  - disc is canonical (numerator and denominator squarefree after square
//    extraction), so values built from the same radical always share a disc.
//  - A square-rational disc never survives construction; it folds into rat.
class QuadExt {
  public:
    QuadExt() : rat_(0), coeff_(0), disc_(0) {}
    QuadExt(Rational r) : rat_(std::move(r)), coeff_(0), disc_(0) {}
    QuadExt(long long n) : rat_(n), coeff_(0), disc_(0) {}

    // Builds rat + coeff*sqrt(disc), normalizing square discs.
    QuadExt(Rational rat, Rational coeff, Rational disc);

    const Rational& rat() const { return rat_; }
    const Rational& coeff() const { return coeff_; }
    const Rational& disc() const { return disc_; }

    bool is_rational() const { return coeff_ == 0; }
    bool is_zero() const { return coeff_ == 0 && rat_ == 0; }

    // Exact sign of the real value: -1, 0, or +1.
    int sign() const;

    QuadExt operator-() const;
    QuadExt operator+(const QuadExt& o) const;
    QuadExt operator-(const QuadExt& o) const;
    QuadExt operator*(const QuadExt& o) const;
    QuadExt operator/(const QuadExt& o) const;
    QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
    QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
    QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }

    bool operator==(const QuadExt& o) const;
    bool operator<(const QuadExt& o) const { return compare(*this, o) < 0; }
    bool operator<=(const QuadExt& o) const { return compare(*this, o) <= 0; }
    bool operator>(const QuadExt& o) const { return compare(*this, o) > 0; }
    bool operator>=(const QuadExt& o) const { return compare(*this, o) >= 0; }

    // Exact ordering by sign analysis of the difference r + s*sqrt(D):
    // same-sign components decide directly, otherwise compare r^2 vs s^2*D.
    static int compare(const QuadExt& u, const QuadExt& v);

    // rat^2 + coeff^2*disc + 2*rat*coeff*sqrt(disc), exact.
    QuadExt squared() const { return *this * *this; }

    Int floor() const;
    Int ceil() const;
    Int round() const;  // nearest integer, half up

    double approx() const;

    // Text format "p/q + r/s*sqrt(u/v)"; pure rationals print as "p/q".
    std::string str() const;

  private:
    Rational rat_, coeff_, disc_;
};

// Exact square root of a positive rational as a QuadExt; perfect squares
// come back with coeff = 0. Throws std::domain_error for x <= 0.
QuadExt quad_sqrt_of_rational(const Rational& x);

// Public comparison with the "incompatible field" error (operators
// above throw the same way; this is the named entry point).
int quad_compare(const QuadExt& u, const QuadExt& v);

// Parses "p/q + r/s*sqrt(u/v)" or a plain rational.
QuadExt parse_quadext(const std::string& s);

// Largest square divisor split: n = s^2 * f with f squarefree (trial
// division; fine for the magnitudes this artifact sees).
void extract_square_part(const Int& n, Int& s, Int& f);

// Rational bracket around sqrt(x): returns (lo, hi) with lo^2 <= x <= hi^2
// and hi - lo <= tol. Used only for seeding floors of mixed-radical
// expressions; all decisions stay exact.
std::pair<Rational, Rational> sqrt_bracket(const Rational& x, const Rational& tol);

}  // namespace ech
