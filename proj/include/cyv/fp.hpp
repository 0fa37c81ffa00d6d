#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cyv {

// Prime field F_p for odd p <= 10^4, with the quadratic-character and
// square-root-count tables that drive all the point-counting kernels.
//
// Elements are canonical residues in [0, p). The context owns the tables;
// everything is immutable after construction and safe to share across threads.
class PrimeField {
  public:
    using Elem = std::uint32_t;

    explicit PrimeField(std::uint32_t p);

    std::uint32_t modulus() const { return p_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1 % p_; }
    Elem from_int(long v) const {
        long r = v % static_cast<long>(p_);
        if (r < 0) r += p_;
        return static_cast<Elem>(r);
    }

    Elem add(Elem a, Elem b) const {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const {
        return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
    }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const;
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }

    // quadratic_character: 0 iff a = 0, +1 iff nonzero square, -1 otherwise.
    int quadratic_character(Elem a) const { return chi_[a]; }
    // Number of square roots of a: 1 + chi(a).
    std::uint32_t sqrt_count(Elem a) const { return nsqrt_[a]; }
    // The roots of y^2 = a (0, 1 or 2 of them).
    std::vector<Elem> sqrts(Elem a) const;
    // Some square root of a; throws if a is a non-residue.
    Elem sqrt(Elem a) const;

    Elem square(Elem a) const { return mul(a, a); }

    const std::vector<int>& chi_table() const { return chi_; }

  private:
    std::uint32_t p_;
    std::vector<int> chi_;             // chi_[a] in {-1,0,1}
    std::vector<std::uint32_t> nsqrt_; // 1 + chi
    std::vector<Elem> a_sqrt_;         // one root per residue, p_ if none
};

}  // namespace cyv
