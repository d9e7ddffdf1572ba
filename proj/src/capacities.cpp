#include "ech/capacities.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ech {

CapacitySequence CapacitySequence::ellipsoid(const Rational& a, const Rational& b) {
    if (a <= 0 || b <= 0) throw std::domain_error("ellipsoid parameters must be positive");
    return CapacitySequence(Kind::ellipsoid, a, b);
}

CapacitySequence CapacitySequence::polydisc(const Rational& c, const Rational& d) {
    if (c <= 0 || d <= 0) throw std::domain_error("polydisc parameters must be positive");
    return CapacitySequence(Kind::polydisc, c, d);
}

CapacitySequence CapacitySequence::combined(std::vector<Rational> terms) {
    CapacitySequence s(Kind::combined, 0, 0);
    s.terms_ = std::move(terms);
    return s;
}

void CapacitySequence::grow_ellipsoid(const Rational& value_at_least) {
    // Full regeneration below the cutoff keeps multiplicities exact: every
    // grid value m*a + n*b <= cutoff appears once per representation.
    Rational cutoff = value_at_least;
    terms_.clear();
    for (Rational ma = 0; ma <= cutoff; ma += p1_)
        for (Rational v = ma; v <= cutoff; v += p2_) terms_.push_back(v);
    std::sort(terms_.begin(), terms_.end());
    covered_value_ = cutoff;
}

Rational CapacitySequence::polydisc_term(size_t k) const {
    // min m*c + n*d with (m+1)(n+1) >= k+1; n shrinks as m grows, so scan m
    // and stop once m*c alone can no longer beat the best value.
    Rational best = -1;
    for (size_t m = 0; m <= k; ++m) {
        Rational mc = Rational(m) * p1_;
        if (best >= 0 && mc >= best) break;
        size_t n = k / (m + 1);  // smallest n with (m+1)(n+1) >= k+1
        Rational v = mc + Rational(n) * p2_;
        if (best < 0 || v < best) best = v;
    }
    return best;
}

void CapacitySequence::ensure_index(size_t k) {
    if (terms_.size() > k) return;
    switch (kind_) {
        case Kind::ellipsoid: {
            Rational w = covered_value_ <= 0 ? std::max(p1_, p2_) : covered_value_;
            while (terms_.size() <= k) {
                grow_ellipsoid(w);
                w *= 2;
            }
            break;
        }
        case Kind::polydisc:
            while (terms_.size() <= k) terms_.push_back(polydisc_term(terms_.size()));
            break;
        case Kind::combined:
            throw std::out_of_range("combined sequence has no generator");
    }
}

void CapacitySequence::ensure_value(const Rational& value) {
    switch (kind_) {
        case Kind::ellipsoid:
            if (covered_value_ < value) grow_ellipsoid(value);
            break;
        case Kind::polydisc:
            ensure_index(0);
            while (terms_.back() <= value) terms_.push_back(polydisc_term(terms_.size()));
            break;
        case Kind::combined:
            if (terms_.empty() || terms_.back() <= value)
                throw std::out_of_range("combined sequence has no generator");
            break;
    }
}

const Rational& CapacitySequence::at(size_t k) {
    ensure_index(k);
    return terms_[k];
}

size_t CapacitySequence::last_index_leq(const Rational& value) {
    if (value < 0) throw std::domain_error("capacities are nonnegative");
    ensure_value(value);
    auto it = std::upper_bound(terms_.begin(), terms_.end(), value);
    if (it == terms_.begin()) throw std::logic_error("term 0 must be 0");
    return static_cast<size_t>(it - terms_.begin()) - 1;
}

std::string CapacitySequence::dump_csv(size_t upto) {
    std::ostringstream out;
    for (size_t k = 0; k <= upto; ++k) out << k << "," << to_string(at(k)) << "\n";
    return out.str();
}

size_t WeightExpansion::length() const {
    size_t n = 0;
    for (auto& e : entries) n += e.second;
    return n;
}

std::vector<Rational> WeightExpansion::flat() const {
    std::vector<Rational> w;
    for (auto& e : entries)
        for (size_t i = 0; i < e.second; ++i) w.push_back(e.first);
    return w;
}

WeightExpansion weight_sequence(const Rational& a) {
    if (a < 1) throw std::domain_error("weight_sequence needs a >= 1");
    WeightExpansion w;
    w.a = a;
    // X_{-1} = a, X_0 = 1, X_{i+1} = X_{i-1} - l_i * X_i with l_i the floor
    // of the ratio; terminates because the inputs are rational.
    Rational prev = a, cur = 1;
    while (cur != 0) {
        Int l = floor_int(prev / cur);
        Rational next = prev - Rational(l) * cur;
        w.cf.push_back(l);
        w.entries.emplace_back(cur, static_cast<size_t>(l.convert_to<long long>()));
        prev = cur;
        cur = next;
    }
    // The floor algorithm cannot emit a trailing 1 (that would force two
    // consecutive equal remainders), except for a = 1 where [1] is correct.
    if (w.cf.size() > 1 && w.cf.back() == 1)
        throw std::logic_error("unnormalized continued fraction");
    // Weight identities: sum of squares = a, sum = a + 1 - 1/q.
    Rational sum = 0, sumsq = 0;
    for (auto& e : w.entries) {
        sum += e.first * Rational(e.second);
        sumsq += e.first * e.first * Rational(e.second);
    }
    if (sumsq != a) throw std::logic_error("weight square-sum identity failed");
    if (sum != a + 1 - Rational(1, den(a))) throw std::logic_error("weight sum identity failed");
    return w;
}

CapacitySequence sharp(CapacitySequence& s1, CapacitySequence& s2, size_t upto) {
    s1.ensure_index(upto);
    s2.ensure_index(upto);
    std::vector<Rational> out(upto + 1);
    for (size_t k = 0; k <= upto; ++k) {
        Rational best = s1.at(0) + s2.at(k);
        for (size_t i = 1; i <= k; ++i) {
            Rational v = s1.at(i) + s2.at(k - i);
            if (v > best) best = v;
        }
        out[k] = best;
    }
    return CapacitySequence::combined(std::move(out));
}

LeqResult sequence_leq(CapacitySequence& lhs, CapacitySequence& rhs, size_t upto,
                       const QuadExt& scale) {
    for (size_t k = 0; k <= upto; ++k) {
        QuadExt l{lhs.at(k)};
        QuadExt r = scale * QuadExt(rhs.at(k));
        if (quad_compare(l, r) > 0) return {false, k};
    }
    return {true, std::nullopt};
}

}  // namespace ech
