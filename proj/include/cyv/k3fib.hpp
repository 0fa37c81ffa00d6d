#pragma once

#include <array>
#include <utility>
#include <vector>

#include "cyv/counting.hpp"
#include "cyv/poly.hpp"
#include "cyv/report.hpp"

namespace cyv {

// One member of the pencil cut by the planes s x2 + t x3 = 0: the weighted
// model and the induced branch configuration of 2 + 4 lines in P^2.
struct FiberSlice {
    long s, t;
    K3FiberEquations model;
    std::vector<std::array<Rational, 3>> pair_lines;  // x0, x1
    std::vector<std::array<Rational, 3>> quad_lines;  // the four t-cleared forms
    bool degenerate;                       // coincident lines or stray incidences
    int own_double_points;                 // 1 (pair) + 6 (quadruple) when generic
    int mutual_points;                     // pair vs quadruple crossings
};

FiberSlice fiber(long s, long t);

// Exact discriminant sweep of the six-line configuration: rational parameters
// where lines coincide or three lines meet.
std::vector<std::pair<long, long>> special_fibers();

// Restrictions of the branch quartics to the two lines and the conic inside
// the pencil plane; each must restrict to a square (generic parameter).
std::vector<CheckReport> splitting_checks(long s, long t);

std::vector<CheckReport> verify_k3(unsigned n_generic_params = 20, std::uint64_t seed = 12345);

}  // namespace cyv
