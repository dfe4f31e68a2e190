#pragma once

#include <vector>

#include "sifs/error.hpp"
#include "sifs/rational.hpp"

namespace sifs {

/// Fibonacci number with fib(0) = 0 and fib(1) = fib(2) = 1.
inline BigInt fib(int n) {
    if (n < 0) throw DomainError("negative Fibonacci index " + std::to_string(n));
    BigInt r;
    mpz_fib_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

inline Rational fib_rational(int n) { return Rational(fib(n)); }

}  // namespace sifs
