#include "ech/ehrhart.hpp"

#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace ech {

Int lattice_count_brute(long long a, long long b, const Int& s) {
    Int count = 0;
    for (Int ma = 0; ma <= s; ma += a) count += (s - ma) / b + 1;
    return count;
}

Rational QuasiPolynomial::eval(const Int& s) const {
    size_t res = static_cast<size_t>((s % period).convert_to<long long>());
    const auto& c = coeffs[res];
    Rational sr(s);
    return c[0] * sr * sr + c[1] * sr + c[2];
}

QuasiPolynomial build_quasi_polynomial(long long a, long long b) {
    QuasiPolynomial qp;
    qp.a = a;
    qp.b = b;
    long long P = a * b;
    qp.coeffs.resize(P);
    for (long long u = 0; u < P; ++u) {
        Rational y0(lattice_count_brute(a, b, u));
        Rational y1(lattice_count_brute(a, b, u + P));
        Rational y2(lattice_count_brute(a, b, u + 2 * P));
        Rational Pr(P);
        Rational alpha = (y0 - 2 * y1 + y2) / (2 * Pr * Pr);
        Rational beta = (y1 - y0) / Pr - alpha * (2 * u + P);
        Rational gamma = y0 - alpha * u * u - beta * u;
        if (alpha != Rational(1, 2 * a * b))
            throw std::logic_error("quasi-polynomial leading coefficient mismatch");
        qp.coeffs[u] = {alpha, beta, gamma};
    }
    // Reduce to the minimal period (a divisor of a*b).
    for (long long Q = 1; Q <= P; ++Q) {
        if (P % Q != 0) continue;
        bool ok = true;
        for (long long u = 0; u < P && ok; ++u) ok = qp.coeffs[u] == qp.coeffs[u % Q];
        if (ok) {
            qp.coeffs.resize(Q);
            qp.period = Q;
            return qp;
        }
    }
    qp.period = P;
    return qp;
}

Int lattice_count(long long a, long long b, long long r, long long t) {
    static std::map<std::pair<long long, long long>, QuasiPolynomial> cache;
    auto key = std::make_pair(a, b);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_quasi_polynomial(a, b)).first;
    Rational v = it->second.eval(Int(t) * r);
    if (!is_integer(v)) throw std::logic_error("quasi-polynomial returned a non-integer count");
    return num(v);
}

namespace {

// Discrepancy table for one modulus: g_A(u) = u(A-1)/(2A) - sum_{v<=u} {inv*v/A},
// where inv = B^{-1} mod A. The per-residue constant of the count is
// 1 + g_A(s mod A) + g_B(s mod B) (from summing Popoviciu's formula).
struct GTable {
    std::vector<Rational> g;
    Rational min;
};

long long inverse_mod(long long x, long long m) {
    long long r0 = m, r1 = ((x % m) + m) % m, s0 = 0, s1 = 1;
    while (r1 != 0) {
        long long q = r0 / r1;
        long long r2 = r0 - q * r1, s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1) throw std::logic_error("inverse_mod: not coprime");
    return ((s0 % m) + m) % m;
}

GTable g_table(long long A, long long other) {
    GTable t;
    t.g.assign(A, Rational(0));
    t.min = 0;
    if (A == 1) return t;
    long long inv = inverse_mod(other, A);
    Rational prefix = 0;
    for (long long u = 1; u < A; ++u) {
        prefix += Rational(inv * u % A, A);
        t.g[u] = Rational(u * (A - 1), 2 * A) - prefix;
        if (t.g[u] < t.min) t.min = t.g[u];
    }
    return t;
}

}  // namespace

TailCoeffs tail_coeffs(long long A, long long B) {
    if (std::gcd(A, B) != 1) throw std::domain_error("tail_coeffs needs a coprime pair");
    TailCoeffs tc;
    tc.c1 = Rational(1, 2 * A * B);
    tc.c2 = Rational(A + B + 1, 2 * A * B);
    tc.c3 = Rational(1, 4) * (1 + Rational(1, A) + Rational(1, B)) +
            Rational(1, 12) * (Rational(A, B) + Rational(B, A) + Rational(1, A * B));
    tc.gamma_min = 1 + g_table(A, B).min + g_table(B, A).min;
    return tc;
}

Rational gamma_of(long long A, long long B, const Int& s) {
    GTable ga = g_table(A, B), gb = g_table(B, A);
    auto res = [&](long long m) { return static_cast<size_t>((s % m).convert_to<long long>()); };
    return 1 + ga.g[res(A)] + gb.g[res(B)];
}

Rational k_lower_bound(long long a, long long r, const Rational& t) {
    if (t <= 0) throw std::domain_error("k_lower_bound needs t > 0");
    long long g = std::gcd(a, r);
    long long A = r / g, B = a / g;
    TailCoeffs tc = tail_coeffs(A, B);
    Rational x = t * A - 1;
    return tc.c1 * x * x + tc.c2 * x + tc.gamma_min;
}

QuadExt l_upper_bound(const QuadExt& c, const QuadExt& d, const QuadExt& t) {
    QuadExt cd4 = QuadExt(Rational(4)) * c * d;
    return t * t / cd4 + (c + d) * t / (QuadExt(Rational(2)) * c * d) + (c - d).squared() / cd4;
}

std::string EmbedCertificate::json() const {
    nlohmann::json j;
    j["a"] = to_string(a);
    j["lambda"] = lam.str();
    j["b"] = to_string(b);
    j["kN2"] = kN2.str();
    j["lM2"] = lM2.str();
    j["kN1"] = kN1.str();
    j["lM1"] = lM1.str();
    j["threshold_t"] = threshold_t.str();
    j["certified_t"] = certified_t.str();
    j["checked_upto"] = checked_upto;
    j["decided_by"] = decided_by == Decision::quadratic  ? "quadratic-coefficient"
                      : decided_by == Decision::linear   ? "linear-coefficient"
                                                         : "finite-scan";
    j["result"] = embeds ? "embeds" : "obstructed";
    if (obstruction_index) j["obstruction_index"] = *obstruction_index;
    nlohmann::json tight = nlohmann::json::array();
    for (size_t k : tight_indices) tight.push_back(k);
    j["tight_indices"] = tight;
    return j.dump(2);
}

namespace {

// Smallest integer T >= 1 with A2*t^2 + A1*t + A0 >= 0 for all t >= T
// (A2 > 0, or A2 = 0 with A1 > 0).
Int tail_threshold(const QuadExt& A2, const QuadExt& A1, const QuadExt& A0) {
    if (A2.sign() == 0) {
        QuadExt root = -A0 / A1;
        Int t = root.ceil();
        return t < 1 ? Int(1) : t;
    }
    QuadExt vertex = -A1 / (QuadExt(Rational(2)) * A2);
    Int t = vertex.floor();
    if (t < 1) t = 1;
    auto g = [&](const Int& x) {
        QuadExt xq{Rational(x)};
        return (A2 * xq * xq + A1 * xq + A0).sign() >= 0;
    };
    while (!g(t)) ++t;
    return t;
}

}  // namespace

EmbedCertificate certify_embedding(const Rational& a, const QuadExt& lam, const Rational& b) {
    if (a <= 0 || b <= 0 || lam.sign() <= 0)
        throw std::domain_error("certify_embedding needs positive parameters");
    long long p = num(a).convert_to<long long>();
    long long q = den(a).convert_to<long long>();
    TailCoeffs tc = tail_coeffs(q, p);

    EmbedCertificate cert;
    cert.a = a;
    cert.lam = lam;
    cert.b = b;
    cert.kN2 = QuadExt(tc.c1 * q * q);
    cert.kN1 = QuadExt(tc.c2 * q);
    QuadExt lam2 = lam.squared();
    cert.lM2 = QuadExt(Rational(1)) / (QuadExt(4 * b) * lam2);
    cert.lM1 = QuadExt((1 + b) / (2 * b)) / lam;
    Rational lM0 = (1 - b) * (1 - b) / (4 * b);

    QuadExt A2 = cert.kN2 - cert.lM2;
    QuadExt A1 = cert.kN1 - QuadExt(2 * tc.c1 * q) - cert.lM1;
    int s2 = A2.sign();
    bool tail_decided = s2 > 0 || (s2 == 0 && A1.sign() > 0);

    QuadExt T{Rational(0)};
    if (tail_decided) {
        cert.decided_by = s2 > 0 ? EmbedCertificate::Decision::quadratic
                                 : EmbedCertificate::Decision::linear;
        QuadExt A0_nom = QuadExt(tc.c1 - tc.c2 + tc.c3 - 1 - lM0);
        QuadExt A0_cert = QuadExt(tc.c1 - tc.c2 + tc.gamma_min - 1 - lM0);
        cert.threshold_t = tail_threshold(A2, A1, A0_nom);
        cert.certified_t = tail_threshold(A2, A1, A0_cert);
        if (cert.certified_t < cert.threshold_t) cert.certified_t = cert.threshold_t;
        T = QuadExt(Rational(cert.certified_t));
    } else {
        // No sound tail: scan a generous finite window for a refutation.
        T = QuadExt(4 * (a + b + 1));
    }

    // Finite part: verify N_k <= lam*M_k for every index whose M-value sits
    // below the crossing; the tail bound covers everything above.
    auto N = CapacitySequence::ellipsoid(1, a);
    auto M = CapacitySequence::polydisc(1, b);
    cert.embeds = true;
    for (size_t k = 0;; ++k) {
        QuadExt mk = lam * QuadExt(M.at(k));
        if (quad_compare(mk, T) >= 0) break;
        cert.checked_upto = k;
        int cmp = quad_compare(QuadExt(N.at(k)), mk);
        if (cmp > 0) {
            cert.embeds = false;
            cert.obstruction_index = k;
            break;
        }
        if (cmp == 0 && k >= 1) cert.tight_indices.push_back(k);
    }
    if (!tail_decided && cert.embeds) throw AsymptoticallyUndecidable();
    return cert;
}

}  // namespace ech
