#include "ech/quadext.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace ech {

namespace {

int sgn(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

void require_compatible(const QuadExt& u, const QuadExt& v) {
    if (u.coeff() != 0 && v.coeff() != 0 && u.disc() != v.disc())
        throw std::runtime_error("incompatible field");
}

}  // namespace

void extract_square_part(const Int& n, Int& s, Int& f) {
    if (n <= 0) throw std::domain_error("extract_square_part needs n > 0");
    Int rem = n;
    s = 1;
    f = 1;
    auto pull = [&](const Int& d) {
        Int d2 = d * d;
        while (rem % d2 == 0) {
            rem /= d2;
            s *= d;
        }
        if (rem % d == 0) {
            rem /= d;
            f *= d;
        }
    };
    pull(2);
    Int d = 3;
    const Int cap = 1000000;
    while (d * d <= rem && d <= cap) {
        pull(d);
        d += 2;
    }
    // Whatever is left has no prime factor below the cap; it is either 1,
    // a prime (or semiprime-with-large-factors, necessarily squarefree up
    // to a possible full square), so one perfect-square test settles it.
    if (rem > 1) {
        Int r = boost::multiprecision::sqrt(rem);
        if (r * r == rem)
            s *= r;
        else
            f *= rem;
    }
}

QuadExt::QuadExt(Rational rat, Rational coeff, Rational disc)
    : rat_(std::move(rat)), coeff_(std::move(coeff)), disc_(std::move(disc)) {
    if (coeff_ == 0) {
        disc_ = 0;
        return;
    }
    if (disc_ == 0) {
        coeff_ = 0;
        return;
    }
    if (disc_ < 0) throw std::domain_error("negative discriminant");
    Int sp, fp, sq, fq;
    extract_square_part(numerator(disc_), sp, fp);
    extract_square_part(denominator(disc_), sq, fq);
    coeff_ *= Rational(sp, sq);
    disc_ = Rational(fp, fq);
    if (disc_ == 1) {
        rat_ += coeff_;
        coeff_ = 0;
        disc_ = 0;
    }
}

int QuadExt::sign() const {
    if (coeff_ == 0) return sgn(rat_);
    if (rat_ == 0) return sgn(coeff_);
    int sr = sgn(rat_), sc = sgn(coeff_);
    if (sr == sc) return sr;
    Rational lhs = rat_ * rat_;
    Rational rhs = coeff_ * coeff_ * disc_;
    if (lhs == rhs) return 0;  // unreachable for canonical discs
    return lhs > rhs ? sr : sc;
}

QuadExt QuadExt::operator-() const {
    QuadExt r;
    r.rat_ = -rat_;
    r.coeff_ = -coeff_;
    r.disc_ = disc_;
    return r;
}

QuadExt QuadExt::operator+(const QuadExt& o) const {
    require_compatible(*this, o);
    QuadExt r;
    r.rat_ = rat_ + o.rat_;
    r.coeff_ = coeff_ + o.coeff_;
    r.disc_ = r.coeff_ == 0 ? Rational(0) : (coeff_ != 0 ? disc_ : o.disc_);
    return r;
}

QuadExt QuadExt::operator-(const QuadExt& o) const { return *this + (-o); }

QuadExt QuadExt::operator*(const QuadExt& o) const {
    require_compatible(*this, o);
    const Rational& D = coeff_ != 0 ? disc_ : o.disc_;
    QuadExt r;
    r.rat_ = rat_ * o.rat_;
    if (coeff_ != 0 && o.coeff_ != 0) r.rat_ += coeff_ * o.coeff_ * D;
    r.coeff_ = rat_ * o.coeff_ + coeff_ * o.rat_;
    r.disc_ = r.coeff_ == 0 ? Rational(0) : D;
    return r;
}

QuadExt QuadExt::operator/(const QuadExt& o) const {
    if (o.is_zero()) throw std::domain_error("division by zero");
    if (o.coeff_ == 0) {
        QuadExt r;
        r.rat_ = rat_ / o.rat_;
        r.coeff_ = coeff_ / o.rat_;
        r.disc_ = r.coeff_ == 0 ? Rational(0) : disc_;
        return r;
    }
    // Multiply by the conjugate; the norm is nonzero because a canonical
    // disc is never a rational square.
    Rational norm = o.rat_ * o.rat_ - o.coeff_ * o.coeff_ * o.disc_;
    QuadExt conj;
    conj.rat_ = o.rat_;
    conj.coeff_ = -o.coeff_;
    conj.disc_ = o.disc_;
    QuadExt prod = *this * conj;
    prod.rat_ /= norm;
    prod.coeff_ /= norm;
    if (prod.coeff_ == 0) prod.disc_ = 0;
    return prod;
}

bool QuadExt::operator==(const QuadExt& o) const {
    require_compatible(*this, o);
    return rat_ == o.rat_ && coeff_ == o.coeff_;
}

int QuadExt::compare(const QuadExt& u, const QuadExt& v) {
    require_compatible(u, v);
    return (u - v).sign();
}

int quad_compare(const QuadExt& u, const QuadExt& v) { return QuadExt::compare(u, v); }

Int QuadExt::floor() const {
    if (coeff_ == 0) return floor_int(rat_);
    Int n = Int(static_cast<long long>(std::floor(approx())));  // seed; corrected exactly below
    n -= 2;
    while (QuadExt(Rational(n + 1)) <= *this) ++n;
    while (QuadExt(Rational(n)) > *this) --n;
    return n;
}

Int QuadExt::ceil() const {
    Int f = floor();
    if (*this == QuadExt(Rational(f))) return f;
    return f + 1;
}

Int QuadExt::round() const { return (*this + QuadExt(Rational(1, 2))).floor(); }

double QuadExt::approx() const {
    double v = rat_.convert_to<double>();
    if (coeff_ != 0)
        v += coeff_.convert_to<double>() * std::sqrt(disc_.convert_to<double>());
    return v;
}

std::string QuadExt::str() const {
    if (coeff_ == 0) return to_string(rat_);
    return to_string(rat_) + " + " + to_string(coeff_) + "*sqrt(" + to_string(disc_) + ")";
}

QuadExt quad_sqrt_of_rational(const Rational& x) {
    if (x <= 0) throw std::domain_error("sqrt of nonpositive rational");
    return QuadExt(Rational(0), Rational(1), x);
}

QuadExt parse_quadext(const std::string& s) {
    size_t sq = s.find("sqrt(");
    if (sq == std::string::npos) return QuadExt(parse_rational(s));
    size_t close = s.rfind(')');
    if (close == std::string::npos || close < sq)
        throw std::invalid_argument("malformed quadext: '" + s + "'");
    Rational disc = parse_rational(s.substr(sq + 5, close - sq - 5));
    std::string head = s.substr(0, sq);  // "A + B*" or "B*" or ""
    Rational rat(0), coeff(1);
    size_t star = head.rfind('*');
    std::string coeff_part = head, rat_part;
    if (star != std::string::npos) {
        coeff_part = head.substr(0, star);
        size_t plus = coeff_part.rfind(" + ");
        if (plus != std::string::npos) {
            rat_part = coeff_part.substr(0, plus);
            coeff_part = coeff_part.substr(plus + 3);
        }
    }
    if (!rat_part.empty()) rat = parse_rational(rat_part);
    {
        // Trim whitespace; an empty coefficient means 1.
        size_t b = coeff_part.find_first_not_of(" \t");
        size_t e = coeff_part.find_last_not_of(" \t");
        if (b == std::string::npos)
            coeff = 1;
        else
            coeff = parse_rational(coeff_part.substr(b, e - b + 1));
    }
    return QuadExt(rat, coeff, disc);
}

std::pair<Rational, Rational> sqrt_bracket(const Rational& x, const Rational& tol) {
    if (x <= 0) throw std::domain_error("sqrt_bracket needs x > 0");
    Rational u(1);
    // Start above the root, then Newton (which stays above and converges
    // quadratically for u > sqrt(x)).
    while (u * u < x) u *= 2;
    while (u - x / u > tol) u = (u + x / u) / 2;
    return {x / u, u};
}

}  // namespace ech
