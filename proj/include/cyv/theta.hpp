#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "cyv/report.hpp"
#include "cyv/varieties.hpp"

namespace cyv {

using Complex = std::complex<double>;

// Genus-2 characteristic m = (a; b), a, b in {0,1}^2. Ten even, six odd.
struct Characteristic {
    std::array<int, 2> a{0, 0};
    std::array<int, 2> b{0, 0};
    bool is_even() const { return (a[0] * b[0] + a[1] * b[1]) % 2 == 0; }
};

std::vector<Characteristic> all_characteristics();

// Point of the Siegel upper half space: symmetric 2x2 complex Z with
// positive-definite imaginary part. Caches the minimal eigenvalue of Im Z,
// which controls the truncation radius of the theta sums.
struct SiegelPoint {
    Complex z00, z01, z11;

    SiegelPoint(Complex z00_, Complex z01_, Complex z11_);
    double min_im_eigenvalue() const { return lambda_; }
    SiegelPoint scaled(double c) const { return SiegelPoint(c * z00, c * z01, c * z11); }

  private:
    double lambda_;
};

// Truncated theta constant with a geometric tail bound below tol/10; the
// returned value is within tol of the full lattice sum. Rejects lambda < 1e-3
// (the truncation radius would blow past the hard cap).
Complex theta(const Characteristic& m, const SiegelPoint& Z, double tol = 1e-12);

// The eight generators: Y_i = theta[0, b_i](Z) with b in (00,10,01,11) order,
// X_i = theta[a_i, 0](2Z) with a in (00,10,01,11) order. Returned as
// (X0..X3, Y0..Y3) matching the sign-vector coordinate order.
std::array<Complex, 8> theta_generators(const SiegelPoint& Z, double tol = 1e-12);

// Weight-3 odd-generator product; evaluated and reported, no identity uses it.
Complex weight3_form(const SiegelPoint& Z, double tol = 1e-12);

// Integer symplectic 4x4 matrix in A,B,C,D blocks.
struct SymplecticMatrix {
    std::array<std::array<long, 4>, 4> m;

    static SymplecticMatrix identity();
    SymplecticMatrix operator*(const SymplecticMatrix& o) const;
    bool is_symplectic() const;
    // congruence predicates cutting out the intermediate group:
    // M = I mod 2 and C = 0 mod 4.
    bool in_Gamma() const;
    SiegelPoint act(const SiegelPoint& Z) const;
};

// Translation by an even symmetric S (guaranteed member of the group).
SymplecticMatrix translation(long s00, long s01, long s11);

// Seeded sampler: random words of bounded length in generators of the
// congruence group, membership asserted by the predicates.
std::vector<SymplecticMatrix> sample_gamma_elements(std::mt19937_64& rng, std::size_t count,
                                                    std::size_t max_word_len = 12);

// Seeded random Siegel points: Re entries uniform in [-0.4, 0.4],
// Im = Q^T diag(l1, l2) Q with l_i in [0.8, 2].
SiegelPoint random_siegel_point(std::mt19937_64& rng);

// Residuals of the four quadric relations at Z.
std::vector<CheckReport> verify_X_relations(const SiegelPoint& Z, double tol);

// Residuals of the two quotient-model relations at Z (first one exact by
// construction, second numerical).
std::vector<CheckReport> verify_Y_relations(const SiegelPoint& Z, double tol);

// The diagonal sign action induced on the eight generators by M, normalized
// to eps0 = +1; asserts componentwise proportionality up to sign and
// membership in K. Throws on non-proportional values or near-vanishing
// generators (caller resamples Z).
SignVector induced_sign_action(const SymplecticMatrix& M, const SiegelPoint& Z,
                               double tol = 1e-12);

}  // namespace cyv
