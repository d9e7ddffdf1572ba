#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ech/capacities.hpp"
#include "ech/quadext.hpp"
#include "ech/rational.hpp"

namespace ech {

// w(a) = (c*lam, lam) followed by the weight sequence of a, lam = sqrt(a/(2c)).
// Blocks are the constant runs of the weight part; the two head entries are
// not part of any block.
struct GeneralizedWeight {
    Rational a, c;
    QuadExt lam;
    std::vector<QuadExt> entries;
    std::vector<std::pair<size_t, size_t>> blocks;  // (start, length) into entries

    QuadExt target() const;  // (1+c)*lam
    QuadExt sum() const;
    size_t length() const { return entries.size(); }
};

GeneralizedWeight generalized_weight(const Rational& a, const Rational& c);

struct Candidate {
    long long d = 0;
    std::vector<long long> m;  // nonincreasing within each block, trailing zeros trimmed
    long long p = 0, q = 0;    // the grid point a0 = p/q this was evaluated at
    std::string interval;
};

// mu(d;m)(a) = (m . w) / d
QuadExt mu(long long d, const std::vector<long long>& m, const GeneralizedWeight& gw);

// eps = m - (d / ((1+c) lam)) w. The consistency bit asserts the exact sum
// identity -sum(eps) = 1 + (d/((1+c)lam))(y - 1/q), y = a + 1 - 2(1+c)lam,
// and, when mu exceeds the target, eps.w > 0 and sum(eps^2) < 1.
struct EpsilonStats {
    QuadExt sum_eps, sum_eps_sq, y;
    bool consistent = false;
};
EpsilonStats epsilon_stats(const Candidate& cand, const GeneralizedWeight& gw);

// All m with sum m = 3d-1, sum m^2 = d^2+1, entries nonnegative and
// nonincreasing within blocks, and mu(d;m) >= (1+c)lam. Complete: any such m
// has every entry within 1 of its ideal value d*w_i/((1+c)lam), so a window
// scan over at most three integers per slot loses nothing.
std::vector<std::vector<long long>> enumerate_candidates(const GeneralizedWeight& gw, long long d);

struct FilterResult {
    bool pass = true;
    std::string violated;  // clause tag when !pass
};

// Structural block constraints: the three admissible patterns per constant
// block, at most one non-constant block, the eps^2 mass bound on it, and the
// neighbor-sum inequalities across block boundaries.
FilterResult block_filter(const Candidate& cand, const GeneralizedWeight& gw);

// One verification interval with the bound ingredients recorded explicitly:
// delta(q) = y0 - 1/q (or just y0), against sqrt(q + floor_a + 2).
struct IntervalConfig {
    std::string id;
    Rational lo, hi;  // a0 ranges over (lo, hi]
    Rational c;
    long long floor_a = 0;
    QuadExt y0;
    bool subtract_inv_q = true;
    long long q_min = 1;
    bool seed_net = false;  // use the seeded-prefix enumeration pipeline
};

// Derives y0 from the left endpoint: y0 = lo + 1 - 2(1+c)sqrt(lo/(2c)).
IntervalConfig make_interval(const std::string& id, const Rational& lo, const Rational& hi,
                             const Rational& c, long long floor_a);

// The four verification intervals, with the bound expressions used for each.
const std::vector<IntervalConfig>& section5_intervals();

struct IntervalBounds {
    long long q_max = 0;
    long long d_max = 0;  // the conservative overall bound
    IntervalConfig cfg;

    long long d_max_at(long long q) const;  // per-q bound, tighter
};
IntervalBounds interval_bounds(const IntervalConfig& cfg);
IntervalBounds interval_bounds(const Rational& lo, const Rational& hi, const Rational& c,
                               long long floor_a);

struct IntervalReport {
    IntervalConfig cfg;
    long long q_max = 0, d_max = 0;
    std::vector<std::pair<std::string, size_t>> filters_applied;
    std::vector<Candidate> survivors;

    std::string json() const;
};

// Scans every a0 = p/q in (lo, hi] with q <= q_max and every d <= d_max(q);
// candidates pass through epsilon consistency, block structure, and the
// exact strict mu comparison. Empty survivors certify the volume bound on
// the interval. With seed_net set, candidate generation additionally runs
// the seeded-prefix pipeline and its filter trail is reported.
IntervalReport verify_interval(const IntervalConfig& cfg, unsigned threads = 1,
                               std::ostream* journal = nullptr);
IntervalReport verify_interval(const Rational& lo, const Rational& hi, const Rational& c);

// Seeded-prefix enumeration for the heavy interval (a near 16.1, c = 13/2):
// an 18-slot seed built from the ideal vector plus twelve perturbations,
// completed by nonincreasing tails with matching sum and square sum.
std::vector<Candidate> seeded_candidates_51(long long d);
// Structural screen applied to the seeded candidates (fixed-position block
// comparisons plus the tail-sum test).
bool seed_screen_51(const std::vector<long long>& m);

}  // namespace ech
