#include "cyv/fp.hpp"

namespace cyv {

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
    if (p == 2) throw std::invalid_argument("PrimeField: p = 2 is excluded (odd primes only)");
    if (p < 3 || p > 10000) throw std::invalid_argument("PrimeField: p out of range");
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("PrimeField: modulus not prime");

    // one-time sieve of squares
    chi_.assign(p_, -1);
    a_sqrt_.assign(p_, p_);
    chi_[0] = 0;
    a_sqrt_[0] = 0;
    for (std::uint32_t x = 1; x < p_; ++x) {
        std::uint32_t s = static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * x % p_);
        chi_[s] = 1;
        if (a_sqrt_[s] == p_) a_sqrt_[s] = x;
    }
    nsqrt_.assign(p_, 0);
    for (std::uint32_t a = 0; a < p_; ++a) nsqrt_[a] = static_cast<std::uint32_t>(1 + chi_[a]);
}

PrimeField::Elem PrimeField::pow(Elem a, std::uint64_t e) const {
    std::uint64_t r = 1, b = a;
    while (e) {
        if (e & 1) r = r * b % p_;
        b = b * b % p_;
        e >>= 1;
    }
    return static_cast<Elem>(r);
}

PrimeField::Elem PrimeField::inv(Elem a) const {
    if (a == 0) throw std::domain_error("PrimeField::inv(0)");
    return pow(a, p_ - 2);
}

std::vector<PrimeField::Elem> PrimeField::sqrts(Elem a) const {
    if (chi_[a] < 0) return {};
    if (a == 0) return {0};
    Elem r = a_sqrt_[a];
    return {r, neg(r)};
}

PrimeField::Elem PrimeField::sqrt(Elem a) const {
    if (chi_[a] < 0) throw std::domain_error("PrimeField::sqrt of non-residue");
    return a_sqrt_[a];
}

}  // namespace cyv
