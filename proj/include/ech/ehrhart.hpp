#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ech/capacities.hpp"
#include "ech/quadext.hpp"
#include "ech/rational.hpp"

namespace ech {

// Quasi-polynomial counting lattice points (m,n) >= 0 with m*a + n*b <= s.
// Built by exact interpolation from direct counts; per-residue triples
// (quadratic, linear, constant) in s.
struct QuasiPolynomial {
    long long a = 0, b = 0;
    size_t period = 0;  // divides a*b
    std::vector<std::array<Rational, 3>> coeffs;

    Rational eval(const Int& s) const;
};

// Direct double-loop count of {(m,n) >= 0 : m*a + n*b <= s}.
Int lattice_count_brute(long long a, long long b, const Int& s);

// Interpolates the quasi-polynomial (three samples per residue class),
// reduces the period to the minimal divisor of a*b, and asserts the leading
// coefficient equals 1/(2ab) for every residue.
QuasiPolynomial build_quasi_polynomial(long long a, long long b);

// Count of (m,n) >= 0 with m*(a/r) + n*(b/r) <= t, via the quasi-polynomial
// path (cross-validated against lattice_count_brute in tests).
Int lattice_count(long long a, long long b, long long r, long long t);

// Coefficients of the tail lower bound for the pair (A,B), in s-units:
// count(s) = c1*s^2 + c2*s + gamma(s mod AB) with gamma >= gamma_min;
// c3 is the nominal mean constant. Requires gcd(A,B) = 1.
struct TailCoeffs {
    Rational c1, c2, c3, gamma_min;
};
TailCoeffs tail_coeffs(long long A, long long B);

// Exact per-residue constant gamma(s) for a coprime pair (for tests).
Rational gamma_of(long long A, long long B, const Int& s);

// Certified lower bound on the number of capacities of E(1, a/r) that are
// <= t: c1*(rt-1)^2 + c2*(rt-1) + gamma_min. Sound for every rational t > 0.
Rational k_lower_bound(long long a, long long r, const Rational& t);

// Upper bound t^2/(4cd) + (c+d)t/(2cd) + (c-d)^2/(4cd) on the largest index
// l with M_l(c,d) <= t.
QuadExt l_upper_bound(const QuadExt& c, const QuadExt& d, const QuadExt& t);

struct EmbedCertificate {
    Rational a;
    QuadExt lam;
    Rational b;
    QuadExt kN2, lM2, kN1, lM1;
    // "none" marks a refutation found by direct scan when neither
    // asymptotic comparison decides the tail.
    enum class Decision { quadratic, linear, none } decided_by = Decision::none;
    Int threshold_t;   // nominal crossing (mean-constant bound)
    Int certified_t;   // sound crossing (worst-residue bound)
    size_t checked_upto = 0;
    bool embeds = false;
    std::optional<size_t> obstruction_index;
    std::vector<size_t> tight_indices;  // k >= 1 with N_k = lam*M_k exactly

    std::string json() const;
};

// Thrown when neither the quadratic nor the linear coefficient comparison
// decides the tail: the method is inconclusive (distinct from a refutation).
struct AsymptoticallyUndecidable : std::runtime_error {
    AsymptoticallyUndecidable() : std::runtime_error("asymptotically undecidable by this method") {}
};

// Decides E(1,a) -> P(lam, lam*b) by the capacity criterion: asymptotic
// tail bound plus finite sequence check below the crossing threshold.
// When the tail comparison is inconclusive, a bounded scan still reports a
// concrete obstruction if one exists; only the obstruction-free
// inconclusive case throws.
EmbedCertificate certify_embedding(const Rational& a, const QuadExt& lam, const Rational& b);

}  // namespace ech
