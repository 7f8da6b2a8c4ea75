#pragma once

#include <cstdint>
#include <string>

#include "ocm/error.hpp"

namespace ocm {

// Money is a signed 64-bit count of micro-units. All balance and escrow
// arithmetic is exact; any operation that would overflow is a hard error
// (code "OverflowError") and leaves no state change behind.
using Money = std::int64_t;

inline Money money_add(Money a, Money b) {
    Money r;
    if (__builtin_add_overflow(a, b, &r))
        throw Error("OverflowError", "money addition overflows int64");
    return r;
}

inline Money money_sub(Money a, Money b) {
    Money r;
    if (__builtin_sub_overflow(a, b, &r))
        throw Error("OverflowError", "money subtraction overflows int64");
    return r;
}

inline Money money_mul(Money a, std::int64_t k) {
    Money r;
    if (__builtin_mul_overflow(a, k, &r))
        throw Error("OverflowError", "money multiplication overflows int64");
    return r;
}

} // namespace ocm
