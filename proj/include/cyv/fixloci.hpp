#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "cyv/counting.hpp"
#include "cyv/report.hpp"
#include "cyv/varieties.hpp"

namespace cyv {

enum class FixKind { Free, Nodes, Curves };

// coord_lhs = sign * i^twist * coord_rhs on the component (twist needs a
// square root of -1, available over the working primes = 1 mod 8).
struct BinomialRelation {
    int lhs = 0, rhs = 0;
    int sign = 1;
    bool twist = false;
};

// One of the four components of a one-dimensional fixed locus: two binomial
// relations; the two untouched quadrics cut a (2,2) curve in the remaining P^3.
struct CurveComponent {
    std::array<BinomialRelation, 2> rels;
};

struct FixedLocusReport {
    SignVector g;
    FixKind kind = FixKind::Free;
    long long count_p = 0;   // projective count over F_p
    long long count_p2 = 0;  // projective count over F_{p^2}
    std::vector<SingularPoint> witnesses;     // Nodes: the fixed nodes over F_p
    std::vector<CurveComponent> components;   // Curves: symbolic decomposition
};

// Projective count of the quadric model cut by {coords in zero_mask = 0}
// over F_{p^k}. Coordinate order (X0..X3, Y0..Y3), bit i = coordinate i.
long long subspace_point_count(const ExtField& F, std::uint8_t zero_mask);

// Points of the same locus over F_p, projectively normalized.
std::set<std::array<std::uint32_t, 8>> subspace_points(const PrimeField& f,
                                                       std::uint8_t zero_mask);

// Dimension discrimination by exact counts over F_p and F_{p^2}:
// stable bounded count -> Nodes (witnesses checked against the inventory),
// growth beyond p * count_p / 4 -> Curves (symbolic decomposition must
// succeed), empty -> Free. Anything else throws.
FixedLocusReport classify(const SignVector& g, std::uint32_t p, const NodeInventory& inv);

// Symbolic decomposition of a one-dimensional fixed locus: substitutes the
// vanishing coordinates into the quadrics and extracts the forced binomial
// relations; exactly four sign-choice components.
std::vector<CurveComponent> curve_components(const SignVector& g, const Catalog& cat);

struct PairEntry {
    long long count = 0;  // stable projective count of Fix(g) cap Fix(h) cap X
    bool all_nodes = false;
};

struct PairTable {
    std::uint32_t p;
    std::map<std::pair<SignVector, SignVector>, PairEntry> entries;
    // ordered-pair tallies
    int curve_node_8 = 0;        // curve-node pairs with 8 points (all nodes)
    int curve_curve_16 = 0;      // curve-curve with 16 points (no nodes)
    int curve_curve_8 = 0;       // curve-curve with 8 points (all nodes)
    int nonempty_other = 0;      // anything else nonzero (must stay 0)
};

// Joint fixed-locus table over all ordered pairs, with the node-incidence and
// composition checks: shared nodes sit 4 per curve component, and the product
// gh of an 8-node curve-curve pair is a node-fixer fixing those nodes.
PairTable pair_table(std::uint32_t p, const std::vector<FixedLocusReport>& classification,
                     const NodeInventory& inv, const Catalog& cat,
                     std::vector<CheckReport>* checks = nullptr);

// Census of all 31 non-identity elements at one prime.
std::vector<FixedLocusReport> classify_all(std::uint32_t p, const NodeInventory& inv);

// K-orbit count of the 48 curve components (each element's four components
// fall into orbits under the sign action); feeds the 12 + 24 = 36 ledger.
int curve_component_orbit_count(const std::vector<FixedLocusReport>& classification);

}  // namespace cyv
