#include "ech/classes.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ech {

ClassVector::ClassVector(Rational d, std::vector<Rational> di) : head(std::move(d)), tail(std::move(di)) {
    while (tail.size() < 3) tail.emplace_back(0);
}

std::string ClassVector::str() const {
    std::string s = to_string(head) + ";";
    for (size_t i = 0; i < tail.size(); ++i) s += (i ? "," : " ") + to_string(tail[i]);
    return s;
}

ClassVector parse_class(const std::string& text) {
    auto semi = text.find(';');
    if (semi == std::string::npos) throw std::invalid_argument("class text needs 'd; d1,d2,...'");
    Rational head = parse_rational(text.substr(0, semi));
    std::vector<Rational> tail;
    std::string rest = text.substr(semi + 1);
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ','))
        if (item.find_first_not_of(" \t") != std::string::npos) tail.push_back(parse_rational(item));
    return ClassVector(head, std::move(tail));
}

ClassVector minus_K(size_t n) {
    return ClassVector(Rational(3), std::vector<Rational>(n, Rational(1)));
}

ClassVector cremona(const ClassVector& v) {
    ClassVector out = v;
    const Rational &d1 = v.tail[0], &d2 = v.tail[1], &d3 = v.tail[2];
    out.head = 2 * v.head - d1 - d2 - d3;
    out.tail[0] = v.head - d2 - d3;
    out.tail[1] = v.head - d1 - d3;
    out.tail[2] = v.head - d1 - d2;
    return out;
}

Rational product(const ClassVector& x, const ClassVector& y) {
    Rational p = x.head * y.head;
    size_t n = std::min(x.tail.size(), y.tail.size());
    for (size_t i = 0; i < n; ++i) p -= x.tail[i] * y.tail[i];
    return p;
}

ClassVector sorted_tail(const ClassVector& v) {
    ClassVector out = v;
    std::stable_sort(out.tail.begin(), out.tail.end(), [](const Rational& a, const Rational& b) {
        bool za = a == 0, zb = b == 0;
        if (za != zb) return zb;  // zeros last
        return a > b;
    });
    return out;
}

namespace {

bool all_integer(const ClassVector& v) {
    if (!is_integer(v.head)) return false;
    for (const auto& t : v.tail)
        if (!is_integer(t)) return false;
    return true;
}

}  // namespace

ClassFlags classify(const ClassVector& v) {
    ClassFlags f;

    f.positive = v.head >= 0;
    for (const auto& t : v.tail)
        if (t < 0) f.positive = false;

    f.ordered = true;
    bool seen_zero = false;
    for (size_t i = 0; i < v.tail.size(); ++i) {
        if (v.tail[i] < 0) f.ordered = false;
        if (v.tail[i] == 0) {
            seen_zero = true;
        } else {
            if (seen_zero) f.ordered = false;
            if (i + 1 < v.tail.size() && v.tail[i + 1] != 0 && v.tail[i] < v.tail[i + 1])
                f.ordered = false;
        }
    }

    f.reduced = f.positive && f.ordered &&
                v.head >= v.tail[0] + v.tail[1] + v.tail[2];

    if (all_integer(v)) {
        Rational self = product(v, v);
        Rational k = product(minus_K(v.tail.size()), v);
        f.in_F = self + k >= 0;  // v . (-K + v)
        f.in_Fplus = f.in_F && f.positive;
        f.in_E = self >= -1 && k == 1;
    }
    return f;
}

ReduceResult reduce_class(const ClassVector& v, size_t max_iter) {
    ReduceResult r;
    ClassVector cur = sorted_tail(v);
    for (size_t it = 0; it <= max_iter; ++it) {
        if (cur.head < 0) {
            r.failure = "head went negative: input outside C";
            return r;
        }
        if (classify(cur).reduced) {
            r.ok = true;
            r.result = cur;
            return r;
        }
        if (cur.head >= cur.tail[0] + cur.tail[1] + cur.tail[2]) {
            // Cremona no longer decreases the head, yet the vector is not
            // reduced (a negative entry); no progress is possible.
            r.failure = "stalled at a non-positive vector: input outside C";
            return r;
        }
        if (it == max_iter) break;
        cur = sorted_tail(cremona(cur));
        r.steps.push_back(cur);
    }
    r.failure = "max_iter exceeded";
    return r;
}

PositivityResult positivity_check(const ClassVector& x, const ClassVector& d) {
    PositivityResult out;
    out.value = product(x, d);

    ClassFlags fx = classify(x);
    if (!fx.reduced) return out;

    ClassFlags fd = classify(d);
    Rational dmax = 0;
    for (const auto& t : d.tail)
        if (t > dmax) dmax = t;
    bool intersection_case = fd.positive &&
                             product(minus_K(d.tail.size()), d) >= 0 &&
                             d.head >= dmax;
    bool f_case = product(x, x) >= 0 && fd.in_F && d.head >= 0;
    out.constrained = intersection_case || f_case;
    return out;
}

}  // namespace ech
