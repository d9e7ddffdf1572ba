#pragma once

#include <vector>

#include "ech/rational.hpp"

namespace ech::refdata {

// Reference data for the d(a, 13/2) critical-value certifications: the
// embedding E(1,a) -> P(lam, lam*13/2), the quadratic (and, when the
// quadratics tie, linear) growth coefficients of the capacity-count bounds,
// the published finite-check horizon in t, and the index of the sharp
// obstruction (the first capacity index where equality holds).
struct CriticalRow {
    Rational a;
    Rational lam;
    Rational kt2, lt2;    // quadratic coefficients, count lower / index upper
    bool linear = false;  // quadratics tie; linear coefficients decide
    Rational kt, lt;      // linear coefficients (meaningful when linear)
    long long t_printed = 0;
    long long obstruction_index = 0;
};

inline const std::vector<CriticalRow>& critical_rows() {
    static const std::vector<CriticalRow> rows = {
        {{25, 2}, {1}, {1, 25}, {1, 26}, false, {}, {}, 51, 1},
        {{13}, {26, 25}, {1, 26}, {625, 17576}, false, {}, {}, 33, 13},
        {{351, 25}, {26, 25}, {25, 702}, {625, 17576}, false, {}, {}, 522, 13},
        {{15}, {10, 9}, {1, 30}, {81, 2600}, false, {}, {}, 29, 15},
        {{1300, 81}, {10, 9}, {81, 2600}, {81, 2600}, true, {691, 1300}, {27, 52}, 272, 15},
        {{841, 52}, {29, 26}, {26, 841}, {26, 841}, true, {447, 841}, {15, 29}, 122, 17},
        {{17}, {34, 29}, {1, 34}, {841, 30056}, false, {}, {}, 27, 17},
        {{15028, 841}, {34, 29}, {841, 30056}, {841, 30056}, true, {7935, 15028}, {435, 884}, 32,
         17},
        {{961, 52}, {31, 26}, {26, 961}, {26, 961}, true, {507, 961}, {15, 31}, 23, 19},
        {{19}, {38, 31}, {1, 38}, {961, 37544}, false, {}, {}, 7, 19},
        {{18772, 961}, {38, 31}, {961, 37544}, {961, 37544}, true, {759, 1444}, {465, 988}, 28,
         19},
        {{1089, 52}, {33, 26}, {26, 1089}, {26, 1089}, true, {571, 1089}, {15, 33}, 14, 21},
        {{21}, {42, 33}, {1, 42}, {121, 5096}, false, {}, {}, 26, 21},
        {{2548, 121}, {42, 33}, {121, 5096}, {121, 5096}, true, {1335, 2548}, {165, 364}, 41,
         21},
    };
    return rows;
}

// The full critical-value list: (1, 13/2) -> 1 plus the rows above.
struct CriticalValue {
    Rational a;
    Rational d;
};

inline std::vector<CriticalValue> critical_values() {
    std::vector<CriticalValue> out = {{Rational(1), Rational(1)}};
    for (const auto& r : critical_rows()) out.push_back({r.a, r.lam});
    return out;
}

}  // namespace ech::refdata
