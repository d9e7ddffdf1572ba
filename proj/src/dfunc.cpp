#include "ech/dfunc.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "ech/capacities.hpp"

namespace ech {

QuadExt Segment::value_at(const Rational& a, const Rational& b) const {
    if (form == Form::volume) return volume_bound(a, b);
    return QuadExt(p1 * a + p2);
}

QuadExt PiecewiseCapacityFn::eval(const Rational& a) const {
    QuadExt qa{a};
    for (const auto& s : segments)
        if (qa >= s.lo && (s.unbounded || qa <= s.hi)) return s.value_at(a, b);
    throw std::domain_error("a outside the graph domain");
}

namespace {

const char* form_name(Segment::Form f) {
    switch (f) {
        case Segment::Form::constant: return "constant";
        case Segment::Form::linear: return "linear";
        case Segment::Form::affine: return "affine";
        default: return "volume";
    }
}

// boundary value comparison without nesting radicals: against a volume piece
// the equality is squared first
bool continuous_at(const QuadExt& t, const Segment& left, const Segment& right, const Rational& b) {
    auto affine = [&](const Segment& s) { return QuadExt(s.p1) * t + QuadExt(s.p2); };
    bool lv = left.form == Segment::Form::volume, rv = right.form == Segment::Form::volume;
    if (lv && rv) return true;
    if (!lv && !rv) return affine(left) == affine(right);
    QuadExt v = affine(lv ? right : left);
    return QuadExt(2 * b) * v.squared() == t;
}

// scales a quadratic to integer coefficients so discriminant radicals from
// proportional quadratics share one canonical disc
void clear_denoms(Rational& A, Rational& B, Rational& C) {
    Int l = den(A) * den(B) * den(C);
    A *= l;
    B *= l;
    C *= l;
}

// exact check that p1*a + p2 >= sqrt(a/(2b)) across [lo, hi]
void check_volume_floor(const Segment& s, const Rational& b) {
    if (s.form == Segment::Form::volume) return;
    if (s.form == Segment::Form::constant) {
        if (s.hi > QuadExt(2 * b * s.p2 * s.p2))
            throw std::logic_error("segment dips below the volume bound");
        return;
    }
    // 2b(p1 a + p2)^2 - a >= 0: positive-leading quadratic, holds outside
    // its real roots
    Rational A = 2 * b * s.p1 * s.p1;
    Rational B = 4 * b * s.p1 * s.p2 - 1;
    Rational C = 2 * b * s.p2 * s.p2;
    clear_denoms(A, B, C);
    Rational disc = B * B - 4 * A * C;
    if (disc <= 0) return;
    QuadExt root_lo = (QuadExt(-B) - quad_sqrt_of_rational(disc)) / QuadExt(2 * A);
    QuadExt root_hi = (QuadExt(-B) + quad_sqrt_of_rational(disc)) / QuadExt(2 * A);
    if (s.hi <= root_lo || s.lo >= root_hi) return;
    throw std::logic_error("segment dips below the volume bound");
}

// sorts non-volume pieces, fills gaps with volume, appends the tail
PiecewiseCapacityFn assemble(const Rational& b, std::vector<Segment> pieces, bool conjectured) {
    std::sort(pieces.begin(), pieces.end(),
              [](const Segment& x, const Segment& y) { return x.lo < y.lo; });
    PiecewiseCapacityFn fn;
    fn.b = b;
    fn.conjectured = conjectured;
    QuadExt cursor{Rational(1)};
    for (auto& s : pieces) {
        if (s.lo < cursor) throw std::logic_error("overlapping graph segments");
        if (s.lo > cursor) fn.segments.push_back({cursor, s.lo, Segment::Form::volume, 0, 0, 0});
        cursor = s.hi;
        fn.segments.push_back(std::move(s));
    }
    Segment tail{cursor, cursor, Segment::Form::volume, 0, 0, 0, true};
    fn.segments.push_back(tail);
    return fn;
}

}  // namespace

std::string PiecewiseCapacityFn::csv() const {
    std::ostringstream out;
    out << "a_lo,a_hi,form,param1,param2,witness_index\n";
    for (const auto& s : segments)
        out << s.lo.str() << "," << (s.unbounded ? "inf" : s.hi.str()) << "," << form_name(s.form)
            << "," << to_string(s.p1) << "," << to_string(s.p2) << "," << s.witness << "\n";
    return out.str();
}

void PiecewiseCapacityFn::validate() const {
    if (segments.empty() || !(segments.front().lo == QuadExt(Rational(1))))
        throw std::logic_error("graph must start at a = 1");
    if (!segments.back().unbounded) throw std::logic_error("graph must end with the volume tail");
    for (size_t i = 0; i + 1 < segments.size(); ++i) {
        if (!(segments[i].hi == segments[i + 1].lo))
            throw std::logic_error("graph segments are not contiguous");
        if (!continuous_at(segments[i].hi, segments[i], segments[i + 1], b))
            throw std::logic_error("graph is discontinuous at a breakpoint");
    }
    for (const auto& s : segments) check_volume_floor(s, b);
}

QuadExt volume_bound(const Rational& a, const Rational& b) {
    if (a < 1 || b < 1) throw std::domain_error("volume_bound needs a, b >= 1");
    return quad_sqrt_of_rational(a / (2 * b));
}

RatioBound ratio_lower_bound(const Rational& a, const Rational& b, size_t upto) {
    if (upto < 1) throw std::domain_error("ratio_lower_bound needs upto >= 1");
    CapacitySequence N = CapacitySequence::ellipsoid(Rational(1), a);
    CapacitySequence M = CapacitySequence::polydisc(Rational(1), b);
    RatioBound best{Rational(0), 0};
    for (size_t k = 1; k <= upto; ++k) {
        Rational r = N.at(k) / M.at(k);
        if (r > best.value) best = {r, static_cast<long long>(k)};
    }
    return best;
}

Rational rigidity_threshold(const Rational& b, const Rational& d_cut) {
    if (b < 1) throw std::domain_error("rigidity_threshold needs b >= 1");
    Rational d = d_cut == 0 ? b + 1 : d_cut;
    if (d < b + 1)
        throw std::domain_error("d_cut below b+1 is not covered by the finite check");
    Rational t = (b + 1) * (b + 1) * (2 + (b + 1) / d) * (2 + (b + 1) / d) / (2 * b);
    if (d > b + 1) {
        // sharper horizon: accept only after the capacity criterion holds at
        // the threshold itself with the volume ratio
        EmbedCertificate cert = certify_embedding(t, volume_bound(t, b), b);
        if (!cert.embeds)
            throw std::logic_error("sharper rigidity threshold failed its capacity check");
    }
    return t;
}

const PiecewiseCapacityFn& theorem_13_2_graph() {
    static const PiecewiseCapacityFn fn = [] {
        const Rational alpha[5] = {{25, 2}, {351, 25}, {841, 52}, {961, 52}, {1089, 52}};
        const Rational beta[5] = {{351, 25}, {1300, 81}, {15028, 841}, {18772, 961}, {2548, 121}};
        std::vector<Segment> pieces;
        pieces.push_back({QuadExt(Rational(1)), QuadExt(Rational(25, 2)), Segment::Form::constant,
                          0, 1, 1});
        for (long long k = 0; k < 5; ++k) {
            long long w = 13 + 2 * k;
            pieces.push_back({QuadExt(alpha[k]), QuadExt(Rational(w)), Segment::Form::linear,
                              Rational(2, 25 + 2 * k), 0, w});
            pieces.push_back({QuadExt(Rational(w)), QuadExt(beta[k]), Segment::Form::constant, 0,
                              Rational(26 + 4 * k, 25 + 2 * k), w});
        }
        PiecewiseCapacityFn f = assemble(Rational(13, 2), std::move(pieces), false);
        f.validate();
        return f;
    }();
    return fn;
}

QuadExt theorem_13_2(const Rational& a) {
    if (a < 1) throw std::domain_error("theorem_13_2 needs a >= 1");
    return theorem_13_2_graph().eval(a);
}

ComputeDResult compute_d(const Rational& a, const Rational& b, size_t effort) {
    ComputeDResult r;
    RatioBound rb = ratio_lower_bound(a, b, effort);
    r.lower = rb.value;
    r.witness_index = rb.witness_index;
    QuadExt vol = volume_bound(a, b);
    QuadExt cand = QuadExt(r.lower) >= vol ? QuadExt(r.lower) : vol;
    r.upper = cand;
    try {
        EmbedCertificate cert = certify_embedding(a, cand, b);
        r.certificate = cert;
        if (cert.embeds) {
            r.conclusive = true;
            r.matched = cand == QuadExt(r.lower);
        }
    } catch (const AsymptoticallyUndecidable&) {
        // bracket stays open
    }
    return r;
}

PiecewiseCapacityFn conjecture_graph(const Rational& b, StarVariant star) {
    if (b < 6) throw std::domain_error("conjecture_graph needs b >= 6");
    Rational fb{floor_int(b)};
    Rational frac = b - fb;
    QuadExt kcap = quad_sqrt_of_rational(2 * b) + QuadExt(frac);

    std::vector<Segment> pieces;
    pieces.push_back({QuadExt(Rational(1)), QuadExt(b + fb), Segment::Form::constant, 0, 1, 1});
    for (long long k = 0; QuadExt(Rational(k)) < kcap; ++k) {
        Rational denom = b + fb + k;
        Rational top = 2 * (fb + k) + 1;  // = 2 floor(b) + 2k + 1
        Rational ak;
        if (k == 0)
            ak = b + fb;
        else if (k == 1)
            ak = (b + fb + 1) * (2 * fb + 1) / (b + fb);
        else
            ak = denom * denom / (2 * b);
        Rational bk;
        if (k == 0)
            bk = (b + fb + 1) * (2 * fb + 1) / (b + fb);
        else
            bk = 2 * b * (top / denom) * (top / denom);
        long long w = num(top).convert_to<long long>();
        pieces.push_back({QuadExt(ak), QuadExt(top), Segment::Form::linear, 1 / denom, 0, w});
        pieces.push_back({QuadExt(top), QuadExt(bk), Segment::Form::constant, 0, top / denom, w});
    }

    // window around a = 2m+4 when b is close enough to the integer m
    long long fbl = num(fb).convert_to<long long>();
    for (long long m = fbl - 1; m <= fbl + 2; ++m) {
        if (m < 1) continue;
        Rational lo_b = Rational(m) - Rational(m, (m + 1) * (m + 1));
        Rational hi_b = Rational(m) + Rational(1, 2 + m);
        if (b < lo_b || b > hi_b) continue;
        Rational eps = b - m;
        Rational D = 2 * m * m + (2 + eps) * m + eps;
        Rational edge = 2 * m + 4;
        Rational cval = (m * edge + 1) / D;
        long long w = (m + 1) * (m + 1) * (m + 1);

        QuadExt astar, bstar;
        bool have_window = true;
        if (star != StarVariant::geometric) {
            Rational me = eps;
            Rational sq_arg = -4 * m * m + 8 * m * m * m + 4 * m * m * m * m - 4 * m * me +
                              8 * m * m * me + 4 * m * m * m * me + me * me + 2 * m * me * me +
                              m * m * me * me;
            if (sq_arg <= 0) {
                have_window = false;
            } else {
                Rational last_term = star == StarVariant::printed ? b * b * me * me
                                                                  : Rational(m * m) * me * me;
                Rational lead = 8 * m * m * m + 4 * m * m + 8 * m * m * me + 4 * m * m * m * me +
                                me * me + 2 * m * me * me + last_term;
                astar = (QuadExt(lead) -
                         QuadExt(Rational(1 + m) * (2 * m + me)) * quad_sqrt_of_rational(sq_arg)) /
                        QuadExt(2 * (2 * m * m * m + 2 * m * m * me));
                bstar = QuadExt(2 *
                                (me + m + 8 * m * me + 8 * m * m + 20 * m * m * me +
                                 16 * m * m * m * me + 16 * m * m * m * m + 4 * m * m * m * m * me +
                                 4 * m * m * m * m * m) /
                                (Rational(1 + m) * (1 + m) * (2 * m + me) * (2 * m + me)));
            }
        } else {
            // volume crossings of the two window forms
            Rational A = 2 * b * m * m, B = 4 * b * m - D * D, C = 2 * b;
            clear_denoms(A, B, C);
            Rational disc = B * B - 4 * A * C;
            if (disc <= 0) {
                have_window = false;
            } else {
                astar = (QuadExt(-B) + quad_sqrt_of_rational(disc)) / QuadExt(2 * A);
                bstar = QuadExt(2 * b * cval * cval);
            }
        }
        if (!have_window) break;
        // the certifying index only covers a in [2m+4-1/m, 2m+4]; window
        // endpoints outside that range (the printed constants can produce
        // them) contribute nothing
        if (astar >= QuadExt(edge - Rational(1, m)) && astar < QuadExt(edge))
            pieces.push_back({astar, QuadExt(edge), Segment::Form::affine, Rational(m) / D,
                              Rational(1) / D, w});
        if (bstar > QuadExt(edge))
            pieces.push_back({QuadExt(edge), bstar, Segment::Form::constant, 0, cval, w});
        break;
    }

    PiecewiseCapacityFn fn = assemble(b, std::move(pieces), true);
    if (star == StarVariant::geometric) fn.validate();
    return fn;
}

ConjectureWitness conjecture_lower_bound_witness(const Rational& a, const Rational& b) {
    const PiecewiseCapacityFn& fn = b == Rational(13, 2) ? theorem_13_2_graph()
                                                         : conjecture_graph(b);
    const Segment* hit = nullptr;
    QuadExt qa{a};
    for (const auto& s : fn.segments) {
        if (qa < s.lo || (!s.unbounded && qa > s.hi)) continue;
        if (s.form != Segment::Form::volume) {
            hit = &s;
            break;
        }
        if (!hit) hit = &s;
    }
    if (!hit || hit->form == Segment::Form::volume)
        throw std::domain_error("no witness needed: volume background");

    ConjectureWitness w;
    w.index = hit->witness;
    w.ratio = hit->p1 * a + hit->p2;
    CapacitySequence N = CapacitySequence::ellipsoid(Rational(1), a);
    CapacitySequence M = CapacitySequence::polydisc(Rational(1), b);
    if (N.at(w.index) / M.at(w.index) != w.ratio)
        throw std::logic_error("witness ratio does not match the capacity sequences");
    return w;
}

Rational conjecture_volume_threshold(const Rational& b) {
    if (b < 1) throw std::domain_error("conjecture_volume_threshold needs b >= 1");
    Rational fb{floor_int(b)};
    Rational frac = b - fb;
    Rational C{(quad_sqrt_of_rational(2 * b) + QuadExt(frac)).ceil()};
    Rational r = (2 * fb + 2 * C - 1) / (b + fb + C - 1);
    return 2 * b * r * r;
}

}  // namespace ech
