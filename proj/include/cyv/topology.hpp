#pragma once

#include <string>
#include <vector>

#include "cyv/fixloci.hpp"
#include "cyv/report.hpp"

namespace cyv {

struct LedgerRow {
    std::string source;
    long long multiplicity;
    long long value;  // contribution per instance (pre-division for the orbifold sum)
    std::string citation;
};

struct EulerLedger {
    std::vector<LedgerRow> rows;
    long long total = 0;
    // running values after the single-element terms and after the curve-node
    // block, matching the staged sums of the orbifold computation
    long long after_single = 0;
    long long after_curve_node = 0;
    long long pre_division = 0;
};

// e(blow-up) = e(base) + sum over centers (+2 per point, +e(C) per curve).
struct BlowupCenter {
    bool is_point;
    long long curve_euler = 2;  // rational curves by default
};
long long blowup_euler(long long base, const std::vector<BlowupCenter>& centers);

// 4 e(P) - 2 e(D1) - 2 e(D2) + e(D1 cap D2) for the (Z/2)^2 cover.
long long bidouble_euler(long long eP, long long eD1, long long eD2, long long eD12);

// Orbifold sum over ordered pairs with the fixed-locus lifting rules:
// node-fixer -> 16 exceptional lines (e = 32), curve-fixer -> 4 disjoint
// smooth curves of genus one (e = 0), free -> 0; joint loci: 16 plain points
// -> 16, 8 nodes -> 16 (two fixed points per exceptional line), empty -> 0.
EulerLedger stringy_euler(const std::vector<FixedLocusReport>& classification,
                          const PairTable& pairs, long long e_resolution = 64);

struct HodgeAssembly {
    long long euler_stringy;
    long long euler_cover;
    long long h12;
    long long h11;
    long long picard_fixed_locus;  // 36 + 4
    long long picard_divisors;     // 1 + 12 + 24 + 3
    bool consistent;
};

// h12 = equisingular term + three vanishing summands supplied as inputs;
// h11 = e/2 + h12; the two Picard ledgers must both land on the same rank.
HodgeAssembly hodge_picard_assembly(long long euler_stringy, long long euler_cover,
                                    long long equisingular_h1, int fixed_components,
                                    int regular_locus_rank);

std::vector<CheckReport> verify_euler_routes(const std::vector<FixedLocusReport>& classification,
                                             const PairTable& pairs);
std::vector<CheckReport> verify_hodge(const HodgeAssembly& a);

std::string ledger_json(const EulerLedger& l);

}  // namespace cyv
