#include "cyv/qexp.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cyv {

void QExpansion::mul_one_minus_qm(std::size_t m) {
    for (std::size_t n = coeff_.size(); n-- > m;) coeff_[n] -= coeff_[n - m];
}

QExpansion eta_product_expansion(std::size_t order) {
    if (order < 100) throw std::invalid_argument("eta_product_expansion: order must be >= 100");
    QExpansion f(order);
    f.at(1) = 1;
    for (std::size_t n = 1; 2 * n <= order; ++n)
        for (int rep = 0; rep < 4; ++rep) f.mul_one_minus_qm(2 * n);
    for (std::size_t n = 1; 4 * n <= order; ++n)
        for (int rep = 0; rep < 4; ++rep) f.mul_one_minus_qm(4 * n);
    return f;
}

std::vector<std::pair<std::uint32_t, long long>> eta_product_ap_table(std::uint32_t pmax,
                                                                      std::size_t order) {
    if (order < pmax) throw std::invalid_argument("eta_product_ap_table: order < pmax");
    QExpansion f = eta_product_expansion(order);
    std::vector<std::pair<std::uint32_t, long long>> table;
    for (std::uint32_t p = 2; p <= pmax; ++p) {
        bool prime = true;
        for (std::uint32_t d = 2; d * d <= p; ++d)
            if (p % d == 0) prime = false;
        if (!prime) continue;
        table.emplace_back(p, f.at(p).get_si());
    }
    return table;
}

long long cusp_form_ap(std::uint32_t p) {
    static const QExpansion f = eta_product_expansion(120);
    if (p > f.order()) {
        QExpansion big = eta_product_expansion(p + 1);
        return big.at(p).get_si();
    }
    return f.at(p).get_si();
}

std::vector<CheckReport> verify_hecke_consistency(const QExpansion& f, std::size_t bound) {
    std::vector<CheckReport> out;
    {
        CheckReport r = CheckReport::make("cusp_form/a1", "normalized leading coefficient", "trivial");
        r.expect("1").got(f.at(1).get_str());
        r.outcome(f.at(1) == 1);
        out.push_back(r);
    }
    {
        bool ok = true;
        std::ostringstream bad;
        for (std::size_t m = 2; m <= bound; ++m) {
            for (std::size_t n = 2; m * n <= bound; ++n) {
                if (std::gcd(m, n) != 1) continue;
                if (f.at(m * n) != f.at(m) * f.at(n)) {
                    ok = false;
                    bad << " (" << m << "," << n << ")";
                }
            }
        }
        CheckReport r = CheckReport::make("cusp_form/multiplicativity",
                                          "a_mn = a_m a_n for coprime indices", "derived");
        r.expect("all coprime products multiplicative");
        r.got(ok ? "all hold" : "violations at" + bad.str());
        r.outcome(ok);
        out.push_back(r);
    }
    {
        bool ok = true;
        std::ostringstream bad;
        for (std::size_t p : {3u, 5u, 7u}) {
            if (p * p > f.order()) continue;
            BigInt expect = f.at(p) * f.at(p) - static_cast<long>(p * p * p);
            if (f.at(p * p) != expect) {
                ok = false;
                bad << " p=" << p;
            }
        }
        CheckReport r = CheckReport::make("cusp_form/prime_square",
                                          "a_{p^2} = a_p^2 - p^3 at odd p <= 9", "derived");
        r.expect("all hold");
        r.got(ok ? "all hold" : "violations at" + bad.str());
        r.outcome(ok);
        out.push_back(r);
    }
    return out;
}

}  // namespace cyv
