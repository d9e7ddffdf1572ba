#include "ech/obsearch.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <functional>
#include <thread>

#include "json.hpp"

namespace ech {

QuadExt GeneralizedWeight::target() const { return QuadExt(1 + c) * lam; }

QuadExt GeneralizedWeight::sum() const {
    QuadExt s{Rational(0)};
    for (const auto& e : entries) s += e;
    return s;
}

GeneralizedWeight generalized_weight(const Rational& a, const Rational& c) {
    if (a <= 1 || c < 1) throw std::domain_error("generalized_weight needs a > 1, c >= 1");
    GeneralizedWeight gw;
    gw.a = a;
    gw.c = c;
    gw.lam = quad_sqrt_of_rational(a / (2 * c));
    gw.entries.push_back(QuadExt(c) * gw.lam);
    gw.entries.push_back(gw.lam);
    WeightExpansion we = weight_sequence(a);
    for (const auto& [value, mult] : we.entries) {
        gw.blocks.emplace_back(gw.entries.size(), mult);
        for (size_t i = 0; i < mult; ++i) gw.entries.emplace_back(value);
    }
    QuadExt sq{Rational(0)};
    for (const auto& e : gw.entries) sq += e * e;
    if (!(sq == (QuadExt(1 + c) * gw.lam).squared()))
        throw std::logic_error("weight square-sum identity failed");
    return gw;
}

QuadExt mu(long long d, const std::vector<long long>& m, const GeneralizedWeight& gw) {
    if (d < 1 || m.size() > gw.entries.size()) throw std::domain_error("mu: bad candidate");
    QuadExt dot{Rational(0)};
    for (size_t i = 0; i < m.size(); ++i)
        if (m[i] != 0) dot += QuadExt(m[i]) * gw.entries[i];
    return dot / QuadExt(d);
}

EpsilonStats epsilon_stats(const Candidate& cand, const GeneralizedWeight& gw) {
    QuadExt target = gw.target();
    QuadExt f = QuadExt(cand.d) / target;
    EpsilonStats st;
    st.sum_eps = QuadExt(Rational(0));
    st.sum_eps_sq = QuadExt(Rational(0));
    QuadExt eps_dot_w{Rational(0)};
    for (size_t i = 0; i < gw.entries.size(); ++i) {
        QuadExt mi{Rational(i < cand.m.size() ? cand.m[i] : 0)};
        QuadExt e = mi - f * gw.entries[i];
        st.sum_eps += e;
        st.sum_eps_sq += e * e;
        eps_dot_w += e * gw.entries[i];
    }
    st.y = QuadExt(gw.a + 1) - QuadExt(Rational(2)) * target;

    Rational q(den(gw.a));
    QuadExt rhs = QuadExt(Rational(1)) + f * (st.y - QuadExt(Rational(1) / q));
    st.consistent = (-st.sum_eps == rhs);
    QuadExt m_mu = mu(cand.d, cand.m, gw);
    if (m_mu > target) {
        st.consistent = st.consistent && eps_dot_w.sign() > 0 &&
                        st.sum_eps_sq < QuadExt(Rational(1));
    }
    return st;
}

namespace {

struct SlotGroup {
    QuadExt value;
    size_t len;
    // multiset options: (sum, square sum, entries sorted descending)
    struct Option {
        long long sum, sq;
        std::vector<long long> vals;
    };
    std::vector<Option> options;
};

// All multisets of `len` integers drawn from window values (descending).
void build_options(SlotGroup& g, const std::vector<long long>& window) {
    std::vector<long long> counts(window.size(), 0);
    // iterate compositions of len over the window values
    std::vector<size_t> stack;
    std::function<void(size_t, long long)> rec = [&](size_t idx, long long left) {
        if (idx + 1 == window.size()) {
            counts[idx] = left;
            SlotGroup::Option o;
            o.sum = 0;
            o.sq = 0;
            for (size_t i = 0; i < window.size(); ++i)
                for (long long k = 0; k < counts[i]; ++k) {
                    o.vals.push_back(window[i]);
                    o.sum += window[i];
                    o.sq += window[i] * window[i];
                }
            g.options.push_back(std::move(o));
            return;
        }
        for (long long c = 0; c <= left; ++c) {
            counts[idx] = c;
            rec(idx + 1, left - c);
        }
    };
    rec(0, static_cast<long long>(g.len));
}

}  // namespace

std::vector<std::vector<long long>> enumerate_candidates(const GeneralizedWeight& gw, long long d) {
    if (d < 1) throw std::domain_error("enumerate_candidates needs d >= 1");
    QuadExt target = gw.target();
    QuadExt f = QuadExt(d) / target;

    std::vector<SlotGroup> groups;
    groups.push_back({gw.entries[0], 1, {}});
    groups.push_back({gw.entries[1], 1, {}});
    for (const auto& [start, len] : gw.blocks) groups.push_back({gw.entries[start], len, {}});

    for (auto& g : groups) {
        QuadExt ideal = f * g.value;
        long long lo = (ideal - QuadExt(Rational(1))).ceil().convert_to<long long>();
        long long hi = (ideal + QuadExt(Rational(1))).floor().convert_to<long long>();
        if (lo < 0) lo = 0;
        if (lo > hi) return {};  // no admissible value in some slot
        std::vector<long long> window;
        for (long long v = hi; v >= lo; --v) window.push_back(v);
        build_options(g, window);
    }

    size_t n = groups.size();
    // suffix bounds for pruning
    std::vector<long long> min_s(n + 1, 0), max_s(n + 1, 0), min_q(n + 1, 0), max_q(n + 1, 0);
    for (size_t i = n; i-- > 0;) {
        long long lo_s = groups[i].options.front().sum, hi_s = lo_s;
        long long lo_q = groups[i].options.front().sq, hi_q = lo_q;
        for (const auto& o : groups[i].options) {
            lo_s = std::min(lo_s, o.sum);
            hi_s = std::max(hi_s, o.sum);
            lo_q = std::min(lo_q, o.sq);
            hi_q = std::max(hi_q, o.sq);
        }
        min_s[i] = min_s[i + 1] + lo_s;
        max_s[i] = max_s[i + 1] + hi_s;
        min_q[i] = min_q[i + 1] + lo_q;
        max_q[i] = max_q[i + 1] + hi_q;
    }

    std::vector<std::vector<long long>> out;
    std::vector<const SlotGroup::Option*> chosen(n, nullptr);
    std::function<void(size_t, long long, long long)> dfs = [&](size_t i, long long s, long long q) {
        if (s < min_s[i] || s > max_s[i] || q < min_q[i] || q > max_q[i]) return;
        if (i == n) {
            if (s != 0 || q != 0) return;
            std::vector<long long> m;
            for (const auto* o : chosen) m.insert(m.end(), o->vals.begin(), o->vals.end());
            QuadExt dot{Rational(0)};
            for (size_t j = 0; j < m.size(); ++j)
                if (m[j] != 0) dot += QuadExt(m[j]) * gw.entries[j];
            if (dot >= QuadExt(d) * target) {
                while (!m.empty() && m.back() == 0) m.pop_back();
                out.push_back(std::move(m));
            }
            return;
        }
        for (const auto& o : groups[i].options) {
            chosen[i] = &o;
            dfs(i + 1, s - o.sum, q - o.sq);
        }
    };
    dfs(0, 3 * d - 1, d * d + 1);
    std::sort(out.begin(), out.end());
    return out;
}

FilterResult block_filter(const Candidate& cand, const GeneralizedWeight& gw) {
    std::vector<long long> m(gw.entries.size(), 0);
    for (size_t i = 0; i < cand.m.size() && i < m.size(); ++i) m[i] = cand.m[i];

    // admissible value pattern per block, and at most one uneven block
    size_t uneven = 0;
    std::pair<size_t, size_t> uneven_block{0, 0};
    for (const auto& blk : gw.blocks) {
        if (blk.second < 2) continue;
        long long hi = m[blk.first], lo = m[blk.first];
        size_t hi_count = 0;
        for (size_t i = 0; i < blk.second; ++i) {
            long long v = m[blk.first + i];
            hi = std::max(hi, v);
            lo = std::min(lo, v);
        }
        for (size_t i = 0; i < blk.second; ++i)
            if (m[blk.first + i] == hi) ++hi_count;
        if (hi == lo) continue;
        if (hi - lo > 1 || (hi_count != 1 && hi_count != blk.second - 1))
            return {false, "block-pattern"};
        ++uneven;
        uneven_block = blk;
    }
    if (uneven > 1) return {false, "multiple-uneven-blocks"};

    if (uneven == 1) {
        // the uneven block must carry eps^2 mass at least (s-1)/s
        QuadExt f = QuadExt(cand.d) / gw.target();
        QuadExt mass{Rational(0)};
        for (size_t i = 0; i < uneven_block.second; ++i) {
            size_t j = uneven_block.first + i;
            QuadExt e = QuadExt(m[j]) - f * gw.entries[j];
            mass += e * e;
        }
        Rational s(uneven_block.second);
        if (mass < QuadExt((s - 1) / s)) return {false, "uneven-block-mass"};
    }

    // boundary sums: entry before each weight block (beyond the first)
    // against the block sum plus, when another block follows, the next entry
    long long M = static_cast<long long>(gw.entries.size());
    for (size_t b = 1; b < gw.blocks.size(); ++b) {
        auto [start, s] = gw.blocks[b];
        long long k = static_cast<long long>(start) - 1;
        long long x = m[k];
        for (size_t i = 0; i < s; ++i) x -= m[start + i];
        bool last = (b + 1 == gw.blocks.size());
        if (!last) {
            long long xb = x - m[start + s];
            if (xb * xb >= static_cast<long long>(s) + 2 && xb > 0)
                return {false, "boundary-sum"};
            if (xb < 0 && xb * xb >= static_cast<long long>(s) + 2)
                return {false, "boundary-sum"};
        } else {
            if (x * x >= static_cast<long long>(s) + 1) return {false, "boundary-sum"};
        }
        // tail sum from the boundary entry
        long long t = m[k];
        for (long long i = k + 1; i < M; ++i) t -= m[i];
        if (t > 0 && t * t >= M - k + 1) return {false, "tail-sum"};
    }
    return {true, ""};
}

IntervalConfig make_interval(const std::string& id, const Rational& lo, const Rational& hi,
                             const Rational& c, long long floor_a) {
    IntervalConfig cfg;
    cfg.id = id;
    cfg.lo = lo;
    cfg.hi = hi;
    cfg.c = c;
    cfg.floor_a = floor_a;
    cfg.y0 = QuadExt(lo + 1) - QuadExt(Rational(2)) * QuadExt(1 + c) * quad_sqrt_of_rational(lo / (2 * c));
    return cfg;
}

const std::vector<IntervalConfig>& section5_intervals() {
    static const std::vector<IntervalConfig> intervals = [] {
        std::vector<IntervalConfig> v;
        // a near 16.1: grid denominators start at 5 (no fraction with a
        // smaller denominator fits between 16 and 16.2); seeded pipeline
        IntervalConfig i1 = make_interval("16", Rational(1300, 81), Rational(841, 52), Rational(13, 2), 16);
        i1.q_min = 5;
        i1.seed_net = true;
        v.push_back(i1);
        v.push_back(make_interval("17", Rational(15028, 841), Rational(961, 52), Rational(13, 2), 17));
        v.push_back(make_interval("19", Rational(18772, 961), Rational(1089, 52), Rational(13, 2), 19));
        // top interval: a uniform lower bound for y(a) over the whole range
        // replaces the left-endpoint value, with no 1/q subtraction
        IntervalConfig i4;
        i4.id = "21";
        i4.lo = Rational(2548, 121);
        i4.hi = Rational(27);
        i4.c = Rational(13, 2);
        i4.floor_a = 27;
        i4.y0 = QuadExt(21) - QuadExt(15) * quad_sqrt_of_rational(Rational(21, 13));
        i4.subtract_inv_q = false;
        v.push_back(i4);
        return v;
    }();
    return intervals;
}

namespace {

// rational bracket of a QuadExt value
std::pair<Rational, Rational> bracket(const QuadExt& v, const Rational& tol) {
    if (v.is_rational()) return {v.rat(), v.rat()};
    auto sb = sqrt_bracket(v.disc(), tol);
    if (v.coeff() > 0) return {v.rat() + v.coeff() * sb.first, v.rat() + v.coeff() * sb.second};
    return {v.rat() + v.coeff() * sb.second, v.rat() + v.coeff() * sb.first};
}

QuadExt delta_at(const IntervalConfig& cfg, long long q) {
    QuadExt d = cfg.y0;
    if (cfg.subtract_inv_q) d -= QuadExt(Rational(1, q));
    return d;
}

// floor of A * (sqrt(s) - 1) / delta with every factor positive; exact via
// adaptive outward rounding (quantities are generically irrational, and the
// all-rational case brackets exactly)
long long floor_bound(const QuadExt& A, long long s, const QuadExt& delta) {
    Rational tol(1, 1000000000000LL);
    for (int iter = 0; iter < 20; ++iter) {
        auto a = bracket(A, tol);
        auto r = sqrt_bracket(Rational(s), tol);
        auto d = bracket(delta, tol);
        if (d.first <= 0 || a.first <= 0 || r.first <= 1) throw std::logic_error("floor_bound: not positive");
        Rational lo = a.first * (r.first - 1) / d.second;
        Rational hi = a.second * (r.second - 1) / d.first;
        if (floor_int(lo) == floor_int(hi)) return floor_int(lo).convert_to<long long>();
        tol = tol * tol;
    }
    throw std::logic_error("floor_bound did not converge");
}

}  // namespace

long long IntervalBounds::d_max_at(long long q) const {
    QuadExt A = QuadExt(1 + cfg.c) * quad_sqrt_of_rational(cfg.hi / (2 * cfg.c));
    return floor_bound(A, q + cfg.floor_a + 2, delta_at(cfg, q));
}

IntervalBounds interval_bounds(const IntervalConfig& cfg) {
    IntervalBounds b;
    b.cfg = cfg;
    const long long scan_limit = 5000;
    for (long long q = cfg.q_min; q <= scan_limit; ++q) {
        QuadExt delta = delta_at(cfg, q);
        bool ok;
        if (delta.sign() <= 0) {
            ok = true;  // the exclusion argument needs delta > 0
        } else {
            QuadExt rhs = QuadExt(Rational(1)) + delta * QuadExt(Rational(q, 3));
            ok = QuadExt(Rational(q + cfg.floor_a + 2)) >= rhs.squared();
        }
        if (ok) b.q_max = q;
    }
    if (b.q_max == 0 || b.q_max == scan_limit)
        throw std::logic_error("interval hypotheses fail: no usable q bound");
    // conservative overall d bound: largest sqrt argument, smallest delta
    QuadExt A = QuadExt(1 + cfg.c) * quad_sqrt_of_rational(cfg.hi / (2 * cfg.c));
    QuadExt dmin = delta_at(cfg, cfg.q_min);
    if (dmin.sign() <= 0) throw std::logic_error("interval hypotheses fail: delta <= 0 at q_min");
    b.d_max = floor_bound(A, b.q_max + cfg.floor_a + 2, dmin);
    return b;
}

IntervalBounds interval_bounds(const Rational& lo, const Rational& hi, const Rational& c,
                               long long floor_a) {
    return interval_bounds(make_interval("", lo, hi, c, floor_a));
}

std::string IntervalReport::json() const {
    nlohmann::json j;
    j["interval"] = {{"lo", to_string(cfg.lo)}, {"hi", to_string(cfg.hi)}, {"id", cfg.id}};
    j["c"] = to_string(cfg.c);
    j["q_max"] = q_max;
    j["d_max"] = d_max;
    nlohmann::json filters = nlohmann::json::array();
    for (const auto& [name, count] : filters_applied)
        filters.push_back({{"filter", name}, {"survivors", count}});
    j["filters"] = filters;
    nlohmann::json surv = nlohmann::json::array();
    for (const auto& s : survivors) {
        nlohmann::json e;
        e["d"] = s.d;
        e["m"] = s.m;
        e["p"] = s.p;
        e["q"] = s.q;
        surv.push_back(e);
    }
    j["survivors"] = surv;
    return j.dump(2);
}

namespace {

size_t nonzero_count(const std::vector<long long>& m) {
    size_t n = 0;
    for (long long v : m)
        if (v != 0) ++n;
    return n;
}

struct GridTask {
    long long q, p;
};

struct GridResult {
    size_t enumerated = 0, length_ok = 0, eps_ok = 0, block_ok = 0;
    std::vector<Candidate> survivors;
};

GridResult scan_grid_point(const IntervalConfig& cfg, long long p, long long q, long long d_hi) {
    GridResult res;
    Rational a0(p, q);
    GeneralizedWeight gw = generalized_weight(a0, cfg.c);
    QuadExt target = gw.target();
    for (long long d = 1; d <= d_hi; ++d) {
        for (auto& m : enumerate_candidates(gw, d)) {
            ++res.enumerated;
            Candidate cand{d, m, p, q, cfg.id};
            if (nonzero_count(m) != gw.length()) continue;
            ++res.length_ok;
            if (!epsilon_stats(cand, gw).consistent) continue;
            ++res.eps_ok;
            if (!block_filter(cand, gw).pass) continue;
            ++res.block_ok;
            if (mu(d, m, gw) > target) res.survivors.push_back(std::move(cand));
        }
    }
    return res;
}

}  // namespace

IntervalReport verify_interval(const IntervalConfig& cfg, unsigned threads, std::ostream* journal) {
    IntervalBounds bounds = interval_bounds(cfg);
    IntervalReport rep;
    rep.cfg = cfg;
    rep.q_max = bounds.q_max;
    rep.d_max = bounds.d_max;

    std::vector<GridTask> tasks;
    for (long long q = cfg.q_min; q <= bounds.q_max; ++q) {
        long long p_lo = floor_int(cfg.lo * q).convert_to<long long>() + 1;
        long long p_hi = floor_int(cfg.hi * q).convert_to<long long>();
        for (long long p = p_lo; p <= p_hi; ++p)
            if (std::gcd(p, q) == 1) tasks.push_back({q, p});
    }

    std::vector<GridResult> results(tasks.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            results[i] = scan_grid_point(cfg, tasks[i].p, tasks[i].q,
                                         bounds.d_max_at(tasks[i].q));
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    GridResult total;
    for (size_t i = 0; i < tasks.size(); ++i) {
        const auto& r = results[i];
        total.enumerated += r.enumerated;
        total.length_ok += r.length_ok;
        total.eps_ok += r.eps_ok;
        total.block_ok += r.block_ok;
        total.survivors.insert(total.survivors.end(), r.survivors.begin(), r.survivors.end());
        if (journal)
            (*journal) << cfg.id << " q=" << tasks[i].q << " p=" << tasks[i].p
                       << " enumerated=" << r.enumerated << " survivors=" << r.survivors.size()
                       << "\n";
    }
    rep.filters_applied = {
        {"enumerated", total.enumerated},
        {"length-match", total.length_ok},
        {"eps-consistent", total.eps_ok},
        {"block-structure", total.block_ok},
        {"strict-mu", total.survivors.size()},
    };
    rep.survivors = std::move(total.survivors);

    if (cfg.seed_net) {
        // seeded-prefix pipeline alongside the window scan: raw completions,
        // positional screen, per-grid-point block structure, exact strict mu
        std::vector<GeneralizedWeight> gws;
        gws.reserve(tasks.size());
        for (const auto& t : tasks) gws.push_back(generalized_weight(Rational(t.p, t.q), cfg.c));

        size_t raw = 0;
        std::vector<Candidate> screened;
        for (long long d = 2; d <= bounds.d_max; ++d)
            for (auto& cand : seeded_candidates_51(d)) {
                ++raw;
                if (seed_screen_51(cand.m)) screened.push_back(std::move(cand));
            }

        std::vector<Candidate> structured;
        for (const auto& cand : screened) {
            std::vector<long long> t = cand.m;
            while (!t.empty() && t.back() == 0) t.pop_back();
            for (size_t i = 0; i < gws.size(); ++i) {
                if (gws[i].length() != t.size()) continue;
                Candidate at{cand.d, t, tasks[i].p, tasks[i].q, cfg.id};
                if (block_filter(at, gws[i]).pass) {
                    structured.push_back(at);
                    break;
                }
            }
        }

        size_t seeded_survivors = 0;
        for (const auto& cand : structured)
            for (size_t i = 0; i < gws.size(); ++i) {
                if (gws[i].length() < cand.m.size()) continue;
                if (mu(cand.d, cand.m, gws[i]) > gws[i].target()) {
                    Candidate hit = cand;
                    hit.p = tasks[i].p;
                    hit.q = tasks[i].q;
                    rep.survivors.push_back(hit);
                    ++seeded_survivors;
                    break;
                }
            }

        if (journal)
            (*journal) << cfg.id << " seeded raw=" << raw << " screened=" << screened.size()
                       << " structured=" << structured.size()
                       << " survivors=" << seeded_survivors << "\n";
        rep.filters_applied.emplace_back("seeded-raw", raw);
        rep.filters_applied.emplace_back("seed-screen", screened.size());
        rep.filters_applied.emplace_back("seed-block-structure", structured.size());
        rep.filters_applied.emplace_back("seed-strict-mu", seeded_survivors);
    }
    std::sort(rep.survivors.begin(), rep.survivors.end(), [](const Candidate& a, const Candidate& b) {
        return std::tie(a.q, a.p, a.d, a.m) < std::tie(b.q, b.p, b.d, b.m);
    });
    return rep;
}

IntervalReport verify_interval(const Rational& lo, const Rational& hi, const Rational& c) {
    for (const auto& cfg : section5_intervals())
        if (cfg.lo == lo && cfg.hi == hi && cfg.c == c) return verify_interval(cfg);
    long long floor_a = floor_int(lo).convert_to<long long>();
    return verify_interval(make_interval("custom", lo, hi, c, floor_a));
}

}  // namespace ech
