#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cyv/poly.hpp"
#include "cyv/report.hpp"

namespace cyv {

// Element of the sign group K acting diagonally on (X0..X3, Y0..Y3).
// Membership: eps0 = +1, eps1*eps2*eps3 = +1, eps4*eps5*eps6*eps7 = +1.
struct SignVector {
    std::array<int, 8> eps{1, 1, 1, 1, 1, 1, 1, 1};

    bool operator==(const SignVector&) const = default;
    bool operator<(const SignVector& o) const { return eps < o.eps; }
    bool is_identity() const;
    bool in_K() const;
    SignVector operator*(const SignVector& o) const;
    std::string str() const;
};

// All 32 elements, identity first, deterministic order.
std::vector<SignVector> group_K();

// Coordinate masks of the fixed subspaces of g acting on P^7:
// L_plus zeroes the eps = -1 coordinates, L_minus the eps = +1 ones.
// The projective fixed locus of g is (L_plus union L_minus) cap ambient.
struct FixedSubspaces {
    std::uint8_t zero_plus;   // bit i set: coordinate i = 0 on L_plus
    std::uint8_t zero_minus;  // bit i set: coordinate i = 0 on L_minus
};
FixedSubspaces fixed_subspaces(const SignVector& g);

struct WeightedVariety {
    std::string name;
    PolyRing ring;
    std::vector<MultiPoly> equations;
};

// Canonical catalog of every variety the toolkit manipulates.
class Catalog {
  public:
    Catalog();

    const WeightedVariety& x_vgn() const { return x_vgn_; }
    const WeightedVariety& y_cy() const { return y_cy_; }
    const WeightedVariety& y_bidouble() const { return y_bidouble_; }
    const WeightedVariety& y_sym() const { return y_sym_; }
    const WeightedVariety& verr() const { return verr_; }
    const WeightedVariety& beauville() const { return beauville_; }
    const WeightedVariety& d1() const { return d1_; }
    const WeightedVariety& d2() const { return d2_; }

    std::vector<const WeightedVariety*> all() const;
    const WeightedVariety* by_name(const std::string& name) const;

    // The square relations Y_i^2 -> Q_i(X) of X_VGN.
    std::vector<SquareRelation> x_relations() const;

    // Quotient-map components (x0,x1,x2,x3,y4,y5) as polynomials on P^7.
    std::vector<MultiPoly> quotient_map() const;

    std::string dump() const;

  private:
    WeightedVariety x_vgn_, y_cy_, y_bidouble_, y_sym_, verr_, beauville_, d1_, d2_;
};

// Pulls each defining equation of the quotient back through the displayed map
// and reduces modulo the X_VGN relations; also checks K-invariance of the map.
std::vector<CheckReport> verify_quotient_map(const Catalog& cat);

// (a) the y4-shift turning eq.(1) into the bidouble form, (b) the symmetric
// form change, (c) the symmetric equations as combinations of the VERR
// relations (telescoping included).
std::vector<CheckReport> verify_coordinate_changes(const Catalog& cat);

// Normal form of Y0^2 Y1^2 - Y2^2 Y3^2 modulo the X relations, reported
// against the squared form the source asserts (flagged discrepancy).
CheckReport verify_strict_transform_identity(const Catalog& cat);

}  // namespace cyv
