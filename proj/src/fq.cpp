#include "cyv/fq.hpp"

#include <stdexcept>

namespace cyv {

ExtField::ExtField(std::uint32_t p, unsigned k) : base_(p), k_(k) {
    if (k < 1 || k > 4) throw std::invalid_argument("ExtField: degree must be 1..4");
    q_ = 1;
    for (unsigned i = 0; i < k; ++i) q_ *= p;

    if (k == 1) {
        mod_ = {0, 1};  // x
        return;
    }
    // first monic irreducible, constant coefficient varying fastest
    std::vector<std::uint32_t> cand(k + 1, 0);
    cand[k] = 1;
    std::uint64_t total = q_;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        for (unsigned i = 0; i < k; ++i) {
            cand[i] = static_cast<std::uint32_t>(c % p);
            c /= p;
        }
        if (is_irreducible(cand)) {
            mod_ = cand;
            return;
        }
    }
    throw std::logic_error("ExtField: no irreducible found");  // unreachable
}

bool ExtField::is_irreducible(const std::vector<std::uint32_t>& poly) const {
    const std::uint32_t p = base_.modulus();
    unsigned k = static_cast<unsigned>(poly.size()) - 1;
    // no roots in F_p (rules out linear factors; sufficient for k <= 3)
    for (std::uint32_t x = 0; x < p; ++x) {
        std::uint64_t v = 0;
        for (unsigned i = k + 1; i-- > 0;) v = (v * x + poly[i]) % p;
        if (v == 0) return false;
    }
    if (k <= 3) return true;
    // k = 4: also exclude irreducible quadratic factors by trial division
    for (std::uint32_t b = 0; b < p; ++b) {
        for (std::uint32_t c = 0; c < p; ++c) {
            // only irreducible divisors x^2 + bx + c matter (disc = b^2 - 4c a non-residue)
            std::uint32_t disc = static_cast<std::uint32_t>(
                (static_cast<std::uint64_t>(b) * b % p + 4ull * (p - c) % p) % p);
            if (base_.quadratic_character(disc) >= 0) continue;
            std::uint64_t w[5];
            for (int i = 0; i < 5; ++i) w[i] = poly[i];
            for (int d = 4; d >= 2; --d) {
                std::uint64_t f = w[d] % p;
                if (f == 0) continue;
                w[d] = 0;
                w[d - 1] = (w[d - 1] + static_cast<std::uint64_t>(p - b) * f) % p;
                w[d - 2] = (w[d - 2] + static_cast<std::uint64_t>(p - c) * f) % p;
            }
            if (w[1] % p == 0 && w[0] % p == 0) return false;
        }
    }
    return true;
}

ExtField::Elem ExtField::add(const Elem& a, const Elem& b) const {
    Elem r;
    for (unsigned i = 0; i < k_; ++i) r.c[i] = base_.add(a.c[i], b.c[i]);
    return r;
}

ExtField::Elem ExtField::sub(const Elem& a, const Elem& b) const {
    Elem r;
    for (unsigned i = 0; i < k_; ++i) r.c[i] = base_.sub(a.c[i], b.c[i]);
    return r;
}

ExtField::Elem ExtField::neg(const Elem& a) const {
    Elem r;
    for (unsigned i = 0; i < k_; ++i) r.c[i] = base_.neg(a.c[i]);
    return r;
}

ExtField::Elem ExtField::mul(const Elem& a, const Elem& b) const {
    const std::uint32_t p = base_.modulus();
    std::array<std::uint64_t, 7> prod{};
    for (unsigned i = 0; i < k_; ++i)
        for (unsigned j = 0; j < k_; ++j)
            prod[i + j] = (prod[i + j] + static_cast<std::uint64_t>(a.c[i]) * b.c[j]) % p;
    // reduce modulo the monic modulus
    for (unsigned d = 2 * k_ - 2; d >= k_ && d < 7; --d) {
        std::uint64_t lead = prod[d];
        if (lead == 0) continue;
        prod[d] = 0;
        for (unsigned i = 0; i < k_; ++i) {
            prod[d - k_ + i] = (prod[d - k_ + i] + static_cast<std::uint64_t>(p - mod_[i]) % p * lead) % p;
        }
    }
    Elem r;
    for (unsigned i = 0; i < k_; ++i) r.c[i] = static_cast<std::uint32_t>(prod[i]);
    return r;
}

bool ExtField::is_zero(const Elem& a) const {
    for (unsigned i = 0; i < k_; ++i)
        if (a.c[i]) return false;
    return true;
}

ExtField::Elem ExtField::pow(Elem a, std::uint64_t e) const {
    Elem r = one();
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

ExtField::Elem ExtField::inv(const Elem& a) const {
    if (is_zero(a)) throw std::domain_error("ExtField::inv(0)");
    return pow(a, q_ - 2);
}

std::uint64_t ExtField::index(const Elem& a) const {
    std::uint64_t idx = 0;
    for (unsigned i = k_; i-- > 0;) idx = idx * base_.modulus() + a.c[i];
    return idx;
}

ExtField::Elem ExtField::from_index(std::uint64_t i) const {
    Elem e;
    for (unsigned j = 0; j < k_; ++j) {
        e.c[j] = static_cast<std::uint32_t>(i % base_.modulus());
        i /= base_.modulus();
    }
    return e;
}

void ExtField::build_chi() const {
    if (!chi_.empty()) return;
    if (q_ > 100000) throw std::length_error("ExtField: character table capped at q <= 1e5");
    chi_.assign(q_, -1);
    chi_[0] = 0;
    for (std::uint64_t i = 1; i < q_; ++i) {
        Elem x = from_index(i);
        chi_[index(mul(x, x))] = 1;
    }
}

int ExtField::quadratic_character(const Elem& a) const {
    build_chi();
    return chi_[index(a)];
}

}  // namespace cyv
