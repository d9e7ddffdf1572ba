#include <array>
#include <cmath>
#include <set>

#include "ech/obsearch.hpp"

// Seeded enumeration for the interval with a near 16.1, c = 13/2. The seed
// prefix is the componentwise ideal vector d*w/((1+c)lambda) at the nominal
// a = 161/10: slot 1 = floor(13d/15), slot 2 = floor(2d/15), slots 3..18 =
// round((2d/15)/sqrt(161/130)). Twelve perturbations of slots 1, 2, 3, 18
// cover the rounding slack; tails are completed by nonincreasing positive
// integer sequences matching the remaining sum and square sum.

namespace ech {

namespace {

long long isqrt_ll(long long n) {
    if (n < 0) return -1;
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// nonincreasing completions of (sum, sq) with entries in [1, cap], except
// that an exact terminal entry of zero is allowed once the recursion has
// started (the first tail entry must be positive)
void complete(long long sum, long long sq, long long cap, bool first,
              std::vector<long long>& cur, std::vector<std::vector<long long>>& out) {
    if (sum < 0 || sq < 0) return;
    if (sum * sum == sq) {
        if (sum > cap) return;
        if (first && sum == 0) return;
        cur.push_back(sum);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    if (sum * sum < sq) return;
    long long m = std::min(isqrt_ll(sq), cap);
    for (long long i = 1; i <= m; ++i) {
        cur.push_back(i);
        complete(sum - i, sq - i * i, i, false, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Candidate> seeded_candidates_51(long long d) {
    QuadExt ratio = QuadExt(Rational(2 * d, 15)) / quad_sqrt_of_rational(Rational(161, 130));
    long long s1 = (13 * d) / 15;
    long long s2 = (2 * d) / 15;
    long long s3 = ratio.round().convert_to<long long>();

    std::vector<long long> seed(18, s3);
    seed[0] = s1;
    seed[1] = s2;

    // deltas at slots 1, 2, 3, 18 (one-based)
    struct Delta {
        long long d1, d2, d3, d18;
    };
    static const std::array<Delta, 12> perturbations = {{
        {0, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1},
        {1, 0, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, -1},
        {0, 1, 0, 0}, {0, 1, 1, 0}, {0, 1, 0, -1},
        {1, 1, 0, 0}, {1, 1, 1, 0}, {1, 1, 0, -1},
    }};

    std::set<std::vector<long long>> seen;
    std::vector<Candidate> out;
    for (const auto& pert : perturbations) {
        std::vector<long long> prefix = seed;
        prefix[0] += pert.d1;
        prefix[1] += pert.d2;
        prefix[2] += pert.d3;
        prefix[17] += pert.d18;

        long long rs = 3 * d - 1, rq = d * d + 1;
        for (long long v : prefix) {
            rs -= v;
            rq -= v * v;
        }
        if (rs < 0 || rq < 0) continue;
        std::vector<std::vector<long long>> tails;
        std::vector<long long> cur;
        complete(rs, rq, std::min(rs, isqrt_ll(rq)), true, cur, tails);
        for (const auto& tail : tails) {
            std::vector<long long> m = prefix;
            m.insert(m.end(), tail.begin(), tail.end());
            if (seen.insert(m).second) out.push_back({d, m, 0, 0, "16"});
        }
    }
    return out;
}

bool seed_screen_51(const std::vector<long long>& m) {
    auto at = [&](size_t i) { return m[i - 1]; };  // one-based
    size_t n = m.size();
    if (n < 18) return false;
    if (at(2) < at(3)) return false;
    if (n >= 19 && at(18) < at(19)) return false;
    if (n >= 20 && !(n >= 22 && at(19) <= at(20) + 1)) return false;
    if (n >= 21 && at(20) != at(21)) return false;
    if (n >= 22 && at(20) != at(22)) return false;
    if (n >= 23 && at(22) > at(23) + 1) return false;

    // tail sum against the last seed slot over the run of near-equal entries
    long long t = at(18);
    long long k = 0;
    while (n >= static_cast<size_t>(19 + k) && at(19 + k) + 1 >= at(19)) {
        t -= at(19 + k);
        ++k;
    }
    return t < 0 || t * t < k + 2;
}

}  // namespace ech
