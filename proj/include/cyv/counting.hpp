#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyv/fq.hpp"
#include "cyv/report.hpp"
#include "cyv/varieties.hpp"

namespace cyv {

struct CountResult {
    std::string variety;
    std::uint32_t p = 0;
    unsigned k = 1;
    long long affine = 0;      // points of the affine cone, origin included
    long long projective = 0;  // (affine - 1) / (p^k - 1)
    double ms = 0;
};

// Character-sum count of the quadric intersection in P^7:
// A = sum over X in F_p^4 of prod_i (1 + chi(Q_i(X))), the factor counting the
// solutions of Y_i^2 = Q_i (so the factor is 1 when Q_i = 0). The outer loop
// is partitioned across `jobs` workers; the integer reduction is exact, so
// results are identical for any worker count.
CountResult count_x_charsum(std::uint32_t p, unsigned jobs = 1);

// Character-sum counts for the rest of the catalog (quotient models via their
// branched-cover structure, covers of P^2/P^3/P^4, the plane quartics, and
// the pencil fiber at a fixed parameter).
CountResult count_variety_charsum(const std::string& name, std::uint32_t p);

// Exhaustive oracle: enumerates the ambient affine cone, evaluates the
// catalog equations, and for weighted ambients identifies the scaling orbits
// explicitly (verifying every orbit has the full p-1 size before dividing).
CountResult count_naive(const Catalog& cat, const std::string& name, std::uint32_t p);

// K3 pencil fiber equations at (s:t) live in k3fib; counting uses this hook.
struct K3FiberEquations {
    PolyRing ring;                 // (x0, x1, x2, y4, y5), weights (1,1,1,2,1)
    std::vector<MultiPoly> eqs;    // y5^2 - x0 x1, y4^2 - quartic
};
K3FiberEquations k3_fiber_equations(long s, long t);
CountResult count_k3_fiber_charsum(long s, long t, std::uint32_t p);
CountResult count_k3_fiber_naive(long s, long t, std::uint32_t p);

// A singular point of the quadric model over F_{p^k}, projectively normalized
// (first nonzero coordinate = 1), with its Jacobian rank.
struct SingularPoint {
    std::array<std::uint32_t, 8> coord;  // dense ExtField indices
    unsigned jacobian_rank;
    bool operator<(const SingularPoint& o) const { return coord < o.coord; }
    bool operator==(const SingularPoint& o) const { return coord == o.coord; }
};

struct NodeInventory {
    std::uint32_t p;
    unsigned k;
    std::vector<SingularPoint> points;  // sorted, duplicate-free
    bool contains(const std::array<std::uint32_t, 8>& c) const;
};

// Enumerates the variety over F_{p^k} through the (X, sign-pattern) fibration
// and keeps the points of Jacobian rank < 4. Exhaustive; the field size is
// budget-capped.
NodeInventory singular_points(std::uint32_t p, unsigned k = 1);

// K-orbit decomposition of the inventory under sign changes followed by
// projective renormalization.
struct OrbitDecomposition {
    std::size_t orbit_count;
    std::vector<std::size_t> sizes;
};
OrbitDecomposition node_orbits(const NodeInventory& inv);

// The two singular points, the two indeterminacy points of the projection,
// and a smooth-point rank probe on the double-quadric surface.
std::vector<CheckReport> beauville_singularities(std::uint32_t p = 17);

// Eta-product coefficient a_p (defined in qexp.cpp); declared here for the
// modularity comparison.
long long cusp_form_ap(std::uint32_t p);

// The claimed closed form 1 + p^3 - a_p + 16(p + p^2) - 12(2p + p^2).
long long count_formula(std::uint32_t p, long long ap);

// Compares the quotient-model count (and, flagged, the P^7 model count)
// against the closed form for every odd prime <= pmax.
std::vector<CheckReport> verify_modularity(std::uint32_t pmax, unsigned jobs = 1,
                                           const std::string& cache_dir = "");

// Count cache: JSON files keyed by (variety, p, k, code version).
std::optional<CountResult> cache_lookup(const std::string& dir, const std::string& variety,
                                        std::uint32_t p, unsigned k);
void cache_store(const std::string& dir, const CountResult& r);

}  // namespace cyv
