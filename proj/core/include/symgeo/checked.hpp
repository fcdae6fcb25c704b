#pragma once

// Overflow-checked int64 arithmetic. Every product and sum in the engine goes
// through these; wraparound is reported as ErrorCode::overflow.

#include <cstdint>
#include <limits>
#include <numeric>

#include "symgeo/errors.hpp"

namespace symgeo {

using Int = std::int64_t;

namespace checked {

[[noreturn]] inline void overflow(const char* op) {
    throw Error(ErrorCode::overflow, std::string("integer overflow in ") + op);
}

inline Int add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) overflow("addition");
    return r;
}

inline Int sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) overflow("subtraction");
    return r;
}

inline Int mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) overflow("multiplication");
    return r;
}

inline Int neg(Int a) {
    if (a == std::numeric_limits<Int>::min()) overflow("negation");
    return -a;
}

inline Int abs(Int a) { return a < 0 ? neg(a) : a; }

inline Int gcd(Int a, Int b) { return std::gcd(abs(a), abs(b)); }

// Floor-style residue in [0, m).
inline Int mod(Int a, Int m) {
    Int r = a % m;
    return r < 0 ? r + m : r;
}

inline bool divides(Int d, Int a) { return d == 0 ? a == 0 : a % d == 0; }

// Division that must be exact; `what` names the quantity for the error text.
inline Int exact_div(Int a, Int b, const char* what) {
    if (b == 0 || a % b != 0) {
        throw Error(ErrorCode::invalid_parameter,
                    std::string("non-integral ") + what);
    }
    return a / b;
}

}  // namespace checked
}  // namespace symgeo
