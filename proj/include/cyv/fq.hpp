#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cyv/fp.hpp"

namespace cyv {

// Extension field F_{p^k}, k <= 4, as F_p[x]/(m) for the deterministically
// chosen irreducible m: the first monic irreducible of degree k when constant
// terms are enumerated fastest (c0 + c1*p + ... ordering). Reproducible node
// coordinates depend on this choice staying fixed.
//
// Elements are coefficient vectors (c0..c_{k-1}); the dense index
// c0 + c1*p + ... is used for the character table.
class ExtField {
  public:
    struct Elem {
        std::array<std::uint32_t, 4> c{0, 0, 0, 0};
        bool operator==(const Elem&) const = default;
    };

    ExtField(std::uint32_t p, unsigned k);

    std::uint32_t p() const { return base_.modulus(); }
    unsigned degree() const { return k_; }
    std::uint64_t order() const { return q_; }
    const PrimeField& base() const { return base_; }
    const std::vector<std::uint32_t>& modulus_poly() const { return mod_; }

    Elem zero() const { return {}; }
    Elem one() const {
        Elem e;
        e.c[0] = 1;
        return e;
    }
    Elem from_base(std::uint32_t a) const {
        Elem e;
        e.c[0] = a;
        return e;
    }
    Elem from_int(long v) const { return from_base(base_.from_int(v)); }
    Elem gen() const {  // the class of x
        Elem e;
        if (k_ == 1) throw std::logic_error("ExtField::gen needs k > 1");
        e.c[1] = 1;
        return e;
    }

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem inv(const Elem& a) const;
    Elem pow(Elem a, std::uint64_t e) const;
    bool is_zero(const Elem& a) const;
    bool eq(const Elem& a, const Elem& b) const { return a == b; }

    Elem frobenius(const Elem& a) const { return pow(a, p()); }

    // dense index in [0, q) and back
    std::uint64_t index(const Elem& a) const;
    Elem from_index(std::uint64_t i) const;

    // quadratic character of F_q (needs the table; built lazily for q <= 10^5)
    int quadratic_character(const Elem& a) const;
    std::uint32_t sqrt_count(const Elem& a) const {
        return static_cast<std::uint32_t>(1 + quadratic_character(a));
    }

  private:
    PrimeField base_;
    unsigned k_;
    std::uint64_t q_;
    std::vector<std::uint32_t> mod_;  // monic degree-k modulus, coefficients c0..ck (ck = 1)
    mutable std::vector<signed char> chi_;  // lazily built character table

    bool is_irreducible(const std::vector<std::uint32_t>& poly) const;
    void build_chi() const;
};

}  // namespace cyv
