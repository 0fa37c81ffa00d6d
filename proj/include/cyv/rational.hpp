#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace cyv {

// Arbitrary-precision rationals. mpq_class keeps the canonical form we rely on
// (gcd(num,den) = 1, den > 0), so the wrapper is just aliases and helpers.
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// Residue of an exact rational mod p; denominator must be invertible.
inline std::uint32_t mod_p(const Rational& r, std::uint32_t p) {
    mpz_class num = r.get_num() % p;
    if (num < 0) num += p;
    mpz_class den = r.get_den() % p;
    std::uint64_t d = den.get_ui() % p;
    // p is prime in all call sites, so den != 0 mod p unless the value has bad reduction
    std::uint64_t dinv = 1, base = d, e = p - 2;
    while (e) {
        if (e & 1) dinv = dinv * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(num.get_ui() * dinv % p);
}

std::string to_string(const Rational& r);

}  // namespace cyv
