#pragma once

#include <string>
#include <vector>

#include "ech/rational.hpp"

namespace ech {

// A class (d; d_1,...,d_n). The tail is padded to length >= 3 on
// construction so the Cremona transform always has three slots.
struct ClassVector {
    Rational head;
    std::vector<Rational> tail;

    ClassVector() : head(0), tail(3, Rational(0)) {}
    ClassVector(Rational d, std::vector<Rational> di);

    size_t size() const { return tail.size(); }
    std::string str() const;  // "d; d1,d2,..."
};

ClassVector parse_class(const std::string& text);

// (3; 1,...,1) with an n-entry tail.
ClassVector minus_K(size_t n);

// d' = 2d - d1 - d2 - d3, di' = d - dj - dk for {i,j,k} = {1,2,3},
// the rest unchanged.
ClassVector cremona(const ClassVector& v);

// x*y - sum_i x_i*y_i, shorter tail padded with zeros.
Rational product(const ClassVector& x, const ClassVector& y);

// Tail sorted: nonzero entries descending, zeros moved to the end.
ClassVector sorted_tail(const ClassVector& v);

struct ClassFlags {
    bool positive = false;  // d, d_i >= 0
    bool ordered = false;   // nonzero entries nonincreasing, zeros trailing
    bool reduced = false;   // positive, ordered, d >= d1 + d2 + d3
    bool in_F = false;      // integral, v . (-K + v) >= 0
    bool in_Fplus = false;  // in F with all entries >= 0
    bool in_E = false;      // integral, v . v >= -1, -K . v = 1
};
ClassFlags classify(const ClassVector& v);

struct ReduceResult {
    bool ok = false;
    ClassVector result;
    std::vector<ClassVector> steps;  // the oCr iterates, in order
    std::string failure;             // set when !ok
};

// Repeated sort-then-Cremona until the vector is reduced. A negative head
// certifies the input lies outside C; so does a stall with the head already
// at least the top-three sum but some entry negative.
ReduceResult reduce_class(const ClassVector& v, size_t max_iter);

struct PositivityResult {
    Rational value;
    // True when a hypothesis set guaranteeing value >= 0 was verified:
    // either x reduced with d positive, -K.d >= 0 and head(d) >= max tail(d),
    // or x reduced with x.x >= 0 and d in F with head(d) >= 0.
    bool constrained = false;
};
PositivityResult positivity_check(const ClassVector& x, const ClassVector& d);

}  // namespace ech
