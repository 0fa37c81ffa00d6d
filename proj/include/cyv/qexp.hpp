#pragma once

#include <cstdint>
#include <vector>

#include "cyv/rational.hpp"
#include "cyv/report.hpp"

namespace cyv {

// Truncated integer power series sum_{n>=1} c_n q^n. Multiplication truncates
// consistently: coefficient n of a product depends only on coefficients <= n
// of the factors.
class QExpansion {
  public:
    explicit QExpansion(std::size_t order) : coeff_(order + 1, 0) {}

    std::size_t order() const { return coeff_.size() - 1; }
    const BigInt& at(std::size_t n) const { return coeff_.at(n); }
    BigInt& at(std::size_t n) { return coeff_.at(n); }

    // multiply in place by (1 - q^m)
    void mul_one_minus_qm(std::size_t m);

  private:
    std::vector<BigInt> coeff_;
};

// q * prod_{n>=1} (1 - q^{2n})^4 (1 - q^{4n})^4, exactly over the integers.
QExpansion eta_product_expansion(std::size_t order);

// Coefficient table {a_p : p <= pmax} of the expansion (order >= pmax).
std::vector<std::pair<std::uint32_t, long long>> eta_product_ap_table(std::uint32_t pmax,
                                                                      std::size_t order = 120);

// Hecke-eigenform consistency on the expansion itself: a_1 = 1,
// a_{mn} = a_m a_n for coprime m, n <= bound, a_{p^2} = a_p^2 - p^3 for the
// odd primes with p^2 <= order. Certifies the expansion without external data.
std::vector<CheckReport> verify_hecke_consistency(const QExpansion& f, std::size_t bound = 97);

}  // namespace cyv
