#pragma once

#include <array>
#include <string>
#include <vector>

#include "cyv/rational.hpp"
#include "cyv/report.hpp"

namespace cyv {

using Vec4 = std::array<Rational, 4>;

// A line in P^3, stored as two spanning points plus the two planes cutting it.
struct ArrLine {
    Vec4 p0, p1;          // span
    int quartic;          // 1 or 2
    std::array<int, 2> plane_ids;  // indices into the owning quartic's plane list
    std::array<Rational, 6> pluecker() const;
};

struct ArrPoint {
    Vec4 v;  // normalized: first nonzero coordinate = 1
    bool operator==(const ArrPoint& o) const { return v == o.v; }
    bool operator<(const ArrPoint& o) const;
};

// The two tetrahedral quartics: planes, double lines, triple points, the 12
// fourfold points and the 16 intersection lines, with all incidences exact.
struct IncidenceModel {
    std::array<std::vector<Vec4>, 2> planes;       // 4 + 4 linear forms
    std::array<std::vector<ArrLine>, 2> lines;     // 6 + 6 double lines
    std::array<std::vector<ArrPoint>, 2> triples;  // 4 + 4 triple points
    std::vector<ArrPoint> fourfold;                // 12
    // fourfold incidence: which (l1, l2) pair meets at each point
    std::vector<std::pair<int, int>> fourfold_lines;
    std::vector<ArrLine> cross_lines;  // the 16 lines of D1 cap D2

    bool point_on_plane(const ArrPoint& pt, int quartic, int plane) const;
    bool line_in_plane(const ArrLine& l, const Vec4& plane) const;
};

IncidenceModel build_incidence();

// Ordered blow-up centers: the 12 points in lexicographic coordinate order,
// then each line sextet in lexicographic order of its Pluecker data.
struct BlowupPlan {
    std::vector<ArrPoint> points;
    std::vector<ArrLine> lines;  // l^(1) then l^(2)
};

BlowupPlan canonical_plan(const IncidenceModel& m);

// Per-plane point-blow-up tallies: +1 per fourfold point on the plane, and at
// a triple point +1 exactly when the line through it transversal to the plane
// is blown up before the two lines through it inside the plane.
struct BlowupTallies {
    std::array<std::array<int, 4>, 2> per_plane;  // [quartic][plane]
    std::array<int, 2> per_quartic;               // must be 28 each
    std::array<int, 2> euler_strict;              // 4*3 + tally = 40 each
};

BlowupTallies plane_blowup_counts(const IncidenceModel& m, const BlowupPlan& plan);

// Same tallies under an arbitrary ordering of one quartic's line sextet.
BlowupTallies plane_blowup_counts_with_order(const IncidenceModel& m,
                                             const std::array<int, 6>& order1,
                                             const std::array<int, 6>& order2);

// Every pairwise intersection point of the 16 cross lines lies in the
// blow-up center set, so the strict transforms are pairwise disjoint;
// e(D1* cap D2*) = 32.
std::vector<CheckReport> verify_disjoint_sixteen(const IncidenceModel& m, const BlowupPlan& plan);

// Exact local model for the separation rule at a triple point: ranks of
// normal-direction images under the blow-up of a line through the point.
struct SeparationModel {
    std::size_t transversal_plane_rank;  // 2: strict transform acquires the fiber (point blow-up)
    std::size_t containing_plane_rank;   // 1: divisorial, no point blow-up
    bool inplane_lines_separated;        // distinct fiber points after the blow-up
    bool transversal_line_separated_from_plane;  // fiber point off the plane trace
};
SeparationModel separation_chart_model();

std::vector<CheckReport> verify_arrangement();

std::string arrangement_json();

}  // namespace cyv
