#pragma once

#include <cstdint>
#include <string>

#include "error.hpp"

namespace ehinv {

using u128 = unsigned __int128;

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1U) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

/// Deterministic Miller-Rabin for the full 64-bit range. The witness set
/// {2, 3, 5, ..., 37} is known to be exact below 3.3e24.
inline bool is_prime(std::int64_t value) {
    if (value < 2) return false;
    const auto n = static_cast<std::uint64_t>(value);
    for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n == small) return true;
        if (n % small == 0) return false;
    }
    std::uint64_t odd = n - 1;
    unsigned twos = 0;
    while ((odd & 1U) == 0) {
        odd >>= 1U;
        ++twos;
    }
    for (std::uint64_t witness : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = pow_mod(witness, odd, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < twos; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/// Inverse of a modulo the prime p via the extended Euclidean algorithm.
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
    if (p < 2) throw PreconditionError("mod_inverse: modulus must be at least 2");
    if (a < 1 || a > p - 1)
        throw PreconditionError("mod_inverse: argument " + std::to_string(a) + " is not a nonzero residue mod " +
                                std::to_string(p));
    // Bezout coefficients stay bounded by p in magnitude, so __int128 is ample.
    __int128 old_r = p, r = a;
    __int128 old_s = 0, s = 1;
    while (r != 0) {
        const __int128 q = old_r / r;
        const __int128 next_r = old_r - q * r;
        old_r = r;
        r = next_r;
        const __int128 next_s = old_s - q * s;
        old_s = s;
        s = next_s;
    }
    if (old_r != 1) throw PreconditionError("mod_inverse: argument not invertible");
    __int128 inv = old_s % p;
    if (inv < 0) inv += p;
    return static_cast<std::int64_t>(inv);
}

} // namespace ehinv
