#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ech/ehrhart.hpp"
#include "ech/quadext.hpp"
#include "ech/rational.hpp"

namespace ech {

// One piece of a capacity-function graph. Non-volume pieces are affine in a
// (value = p1*a + p2); constants have p1 = 0 and pure linears p2 = 0. The
// witness is the capacity index certifying the lower bound on the piece.
struct Segment {
    enum class Form { constant, linear, affine, volume };

    QuadExt lo, hi;  // a-interval [lo, hi]
    Form form = Form::volume;
    Rational p1, p2;
    long long witness = 0;
    bool unbounded = false;  // volume tail; hi ignored

    QuadExt value_at(const Rational& a, const Rational& b) const;
};

struct PiecewiseCapacityFn {
    Rational b;
    bool conjectured = false;
    std::vector<Segment> segments;

    QuadExt eval(const Rational& a) const;
    // "a_lo,a_hi,form,param1,param2,witness_index" per line
    std::string csv() const;
    // contiguity from 1, continuity at breakpoints, and the volume lower
    // bound on every piece, all exact; throws std::logic_error on violation
    void validate() const;
};

// sqrt(a/(2b)), exact
QuadExt volume_bound(const Rational& a, const Rational& b);

struct RatioBound {
    Rational value;
    long long witness_index = 0;
};

// max over 1 <= k <= upto of N_k(1,a) / M_k(1,b), with the smallest
// achieving index
RatioBound ratio_lower_bound(const Rational& a, const Rational& b, size_t upto);

// Threshold on a beyond which only the volume constraint binds:
// (b+1)^2 (2 + (b+1)/d_cut)^2 / (2b). d_cut = 0 picks the default b+1,
// giving 9(b+1)^2/(2b). d_cut below b+1 is unsound and rejected; above it,
// the sharper threshold is accepted only after the capacity check at the
// threshold itself passes.
Rational rigidity_threshold(const Rational& b, const Rational& d_cut = Rational(0));

// The exact piecewise graph of d(a, 13/2) with its published constants.
const PiecewiseCapacityFn& theorem_13_2_graph();
QuadExt theorem_13_2(const Rational& a);

struct ComputeDResult {
    Rational lower;
    long long witness_index = 0;
    QuadExt upper;
    bool matched = false;
    bool conclusive = false;
    std::optional<EmbedCertificate> certificate;
};

// Brackets d(a,b): lower from the capacity-ratio sup over k <= effort,
// upper from certifying the embedding at the two canonical candidates
// (the lower bound itself, else the volume bound).
ComputeDResult compute_d(const Rational& a, const Rational& b, size_t effort = 200);

// How the m-window endpoints alpha*/beta* are computed: from the exact
// volume-curve crossings of the window forms (default), or from the
// published closed forms, either verbatim (with their b^2 eps^2 term) or
// with m^2 eps^2 substituted. The published forms are mutually inconsistent
// and can drop the window entirely; they exist for sensitivity runs.
enum class StarVariant { geometric, printed, printed_m };

// Conjectured graph of d(a,b) for b >= 6.
PiecewiseCapacityFn conjecture_graph(const Rational& b,
                                     StarVariant star = StarVariant::geometric);

struct ConjectureWitness {
    long long index = 0;
    Rational ratio;
};

// Certifying capacity index and exact ratio for a point on a non-volume
// piece of the conjectured graph (the theorem graph when b = 13/2).
// Throws std::domain_error on the volume background.
ConjectureWitness conjecture_lower_bound_witness(const Rational& a, const Rational& b);

// Lower bound for the volume-rigidity threshold V(b):
// 2b ((2 floor(b) + 2C - 1) / (b + floor(b) + C - 1))^2, C = ceil(sqrt(2b) + frac(b))
Rational conjecture_volume_threshold(const Rational& b);

}  // namespace ech
