#pragma once

#include <cstdint>
#include <vector>

#include "cyv/arrangement.hpp"
#include "cyv/poly.hpp"
#include "cyv/report.hpp"

namespace cyv {

// The octic, its partials, and the singular-locus centers it must respect.
struct OcticData {
    PolyRing ring;           // x0..x3
    MultiPoly F;             // product of the eight planes
    std::vector<MultiPoly> partials;
    std::vector<ArrPoint> points;  // the 12 fourfold points
    std::vector<ArrLine> lines;    // the 12 double lines
    OcticData();
};

struct EquisingularResult {
    long long dim_jf8;
    long long dim_ieq8;
    long long h1;  // dim_ieq8 - dim_jf8
};

// Degree-8 pieces over exact rationals: (J_F)_8 as the span of the sixteen
// x_i dF/dx_j, the equisingular piece as the intersection of the shifted
// condition subspaces, and their dimension difference.
EquisingularResult equisingular_h1_rational();

// The same computation over F_p; certification witnesses for the rational
// result (p > 1000 keeps every exact coefficient invertible).
EquisingularResult equisingular_h1_mod_p(std::uint32_t p);

// Order-of-vanishing condition subspaces inside the 165-dimensional degree-8
// space (exposed for the unit tests).
Subspace<RationalField> jacobian_piece(const OcticData& oct, const RationalField& QQ,
                                       const MonomialBasis& basis);
Subspace<RationalField> point_order_conditions(const OcticData& oct, const RationalField& QQ,
                                               const MonomialBasis& basis, const ArrPoint& P,
                                               int order);
Subspace<RationalField> line_order_conditions(const OcticData& oct, const RationalField& QQ,
                                              const MonomialBasis& basis, const ArrLine& l,
                                              int order);

std::vector<CheckReport> verify_equisingular();

}  // namespace cyv
