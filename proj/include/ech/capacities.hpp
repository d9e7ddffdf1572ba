#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ech/quadext.hpp"
#include "ech/rational.hpp"

namespace ech {

// ECH capacity sequence of an ellipsoid E(a,b) (all values m*a + n*b with
// multiplicity, nondecreasing), a polydisc P(c,d) (min m*c + n*d subject to
// (m+1)(n+1) >= k+1), or an explicit combined sequence produced by sharp().
//
// Terms are materialized lazily; generation mutates the cache, so concurrent
// readers of one instance must serialize (copies are independent).
class CapacitySequence {
  public:
    enum class Kind { ellipsoid, polydisc, combined };

    static CapacitySequence ellipsoid(const Rational& a, const Rational& b);
    static CapacitySequence polydisc(const Rational& c, const Rational& d);
    static CapacitySequence combined(std::vector<Rational> terms);

    Kind kind() const { return kind_; }
    const Rational& param1() const { return p1_; }
    const Rational& param2() const { return p2_; }

    // Term by index (0-based); extends the cache as needed.
    const Rational& at(size_t k);

    // Number of terms currently materialized.
    size_t generated() const { return terms_.size(); }

    // Largest index l with term[l] <= value (terms start at 0, so this is
    // always defined for value >= 0).
    size_t last_index_leq(const Rational& value);

    // Ensures terms[0..k] exist.
    void ensure_index(size_t k);
    // Ensures every term <= value is materialized (and at least one beyond).
    void ensure_value(const Rational& value);

    // CSV dump "k,value" for k = 0..upto.
    std::string dump_csv(size_t upto);

  private:
    CapacitySequence(Kind k, Rational p1, Rational p2)
        : kind_(k), p1_(std::move(p1)), p2_(std::move(p2)) {}

    void grow_ellipsoid(const Rational& value_at_least);
    Rational polydisc_term(size_t k) const;

    Kind kind_;
    Rational p1_, p2_;
    std::vector<Rational> terms_;
    Rational covered_value_{-1};  // ellipsoid: grid enumerated through here
};

// Weight expansion of a rational a >= 1: continued-fraction terms l_i and
// the values X_i with multiplicities, X_{i+1} = X_{i-1} - l_i * X_i.
struct WeightExpansion {
    Rational a;
    std::vector<std::pair<Rational, size_t>> entries;  // (value, multiplicity)
    std::vector<Int> cf;

    size_t length() const;                 // total number of weights
    std::vector<Rational> flat() const;    // weights in order
};

WeightExpansion weight_sequence(const Rational& a);

// (s1 # s2)_k = max over i+j=k of s1_i + s2_j, returned as an explicit
// combined sequence with indices 0..upto.
CapacitySequence sharp(CapacitySequence& s1, CapacitySequence& s2, size_t upto);

struct LeqResult {
    bool ok;
    std::optional<size_t> first_failure;
};

// Checks lhs_k <= scale * rhs_k for all k <= upto; reports the smallest
// violating index. scale defaults to 1 and may be irrational.
LeqResult sequence_leq(CapacitySequence& lhs, CapacitySequence& rhs, size_t upto,
                       const QuadExt& scale = QuadExt(Rational(1)));

}  // namespace ech
