#include "ech/rational.hpp"

#include <cctype>

namespace ech {

std::string to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += "/";
        s += denominator(r).str();
    }
    return s;
}

namespace {

bool parse_int(const std::string& s, size_t& pos, Int& out) {
    size_t start = pos;
    bool neg = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        neg = (s[pos] == '-');
        ++pos;
    }
    size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) {
        pos = start;
        return false;
    }
    out = Int(s.substr(digits, pos - digits));
    if (neg) out = -out;
    return true;
}

}  // namespace

Rational parse_rational(const std::string& s) {
    size_t pos = 0;
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    Int p, q(1);
    if (!parse_int(s, pos, p))
        throw std::invalid_argument("not a rational: '" + s + "'");
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        if (!parse_int(s, pos, q) || q == 0)
            throw std::invalid_argument("not a rational: '" + s + "'");
    }
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size())
        throw std::invalid_argument("trailing junk in rational: '" + s + "'");
    return Rational(p, q);
}

}  // namespace ech
