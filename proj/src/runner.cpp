#include "cyv/runner.hpp"

#include <chrono>
#include <optional>
#include <random>
#include <sstream>

#include "cyv/arrangement.hpp"
#include "cyv/counting.hpp"
#include "cyv/deform.hpp"
#include "cyv/fixloci.hpp"
#include "cyv/k3fib.hpp"
#include "cyv/qexp.hpp"
#include "cyv/theta.hpp"
#include "cyv/topology.hpp"
#include "cyv/varieties.hpp"

namespace cyv {

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    long long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    }
};

void stamp(std::vector<CheckReport>& rs, std::size_t from, long long ms) {
    if (from < rs.size()) rs[from].ms = ms;
}

}  // namespace

std::vector<CheckReport> run_cusp_form_checks(const Config& c) {
    (void)c;
    QExpansion f = eta_product_expansion(120);
    auto out = verify_hecke_consistency(f);
    {
        CheckReport r = CheckReport::make("cusp_form/a2", "coefficient of q^2 vanishes", "derived");
        r.expect("0").got(f.at(2).get_str()).outcome(f.at(2) == 0);
        out.push_back(r);
    }
    return out;
}

std::vector<CheckReport> run_theta_checks(const Config& c) {
    std::vector<CheckReport> out;
    std::mt19937_64 rng(c.seed);

    bool x_ok = true, y_ok = true;
    double worst_x = 0, worst_y = 0;
    for (unsigned i = 0; i < c.samples; ++i) {
        SiegelPoint Z = random_siegel_point(rng);
        for (const CheckReport& r : verify_X_relations(Z, c.tol)) {
            x_ok = x_ok && r.status == CheckStatus::Pass;
            worst_x = std::max(worst_x, std::stod(r.computed));
        }
        for (const CheckReport& r : verify_Y_relations(Z, c.tol)) {
            y_ok = y_ok && r.status != CheckStatus::Fail;
            if (r.check == "theta/Y_relation_2") worst_y = std::max(worst_y, std::stod(r.computed));
        }
    }
    {
        CheckReport r = CheckReport::make("theta/X_relations_sweep",
                                          "quadric relations hold at sampled points", "paper");
        std::ostringstream g;
        g << "worst residual " << worst_x;
        r.expect("all residuals < 1e-10").got(g.str()).outcome(x_ok && worst_x < 1e-10);
        out.push_back(r);
    }
    {
        CheckReport r = CheckReport::make("theta/Y_relations_sweep",
                                          "quotient-model relations hold at sampled points", "paper");
        std::ostringstream g;
        g << "worst residual " << worst_y;
        r.expect("all residuals < 1e-10").got(g.str()).outcome(y_ok && worst_y < 1e-10);
        out.push_back(r);
    }
    {
        // odd characteristics vanish
        bool ok = true;
        double worst = 0;
        SiegelPoint Z = random_siegel_point(rng);
        for (const Characteristic& m : all_characteristics()) {
            if (m.is_even()) continue;
            double v = std::abs(theta(m, Z, c.tol));
            worst = std::max(worst, v);
            ok = ok && v < c.tol * 10;
        }
        CheckReport r = CheckReport::make("theta/odd_vanish", "odd characteristics vanish", "paper");
        std::ostringstream g;
        g << "worst |theta| " << worst;
        r.expect("0 within tolerance").got(g.str()).outcome(ok);
        out.push_back(r);
    }
    {
        // the sign action of the even translation by 2I
        SignVector expected;
        expected.eps = {1, -1, -1, 1, 1, 1, 1, 1};
        SiegelPoint Z = random_siegel_point(rng);
        SignVector got = induced_sign_action(translation(2, 0, 2), Z, c.tol);
        CheckReport r = CheckReport::make("theta/translation_sign",
                                          "sign action of the even diagonal translation", "derived");
        r.expect(expected.str()).got(got.str()).outcome(got == expected);
        out.push_back(r);
    }
    {
        // sampled group elements land in K; the action is multiplicative.
        // The sign vector of an element is point-independent, so each
        // evaluation may retry with a fresh Siegel point when the image of a
        // sample drifts below the truncation floor.
        auto try_sign = [&rng, &c](const SymplecticMatrix& M,
                                   int attempts) -> std::optional<SignVector> {
            for (int attempt = 0; attempt < attempts; ++attempt) {
                SiegelPoint Z = random_siegel_point(rng);
                if (M.act(Z).min_im_eigenvalue() < 2e-3) continue;
                try {
                    return induced_sign_action(M, Z, c.tol);
                } catch (const std::exception&) {
                    continue;
                }
            }
            return std::nullopt;
        };
        auto Ms = sample_gamma_elements(rng, c.samples);
        bool in_k = true, mult = true;
        std::vector<SignVector> signs;
        for (const auto& M : Ms) {
            auto s = try_sign(M, 100);
            if (!s) throw std::runtime_error("sign action: no admissible sample point found");
            in_k = in_k && s->in_K();
            signs.push_back(*s);
        }
        // products can push the image below the truncation floor; sample
        // pairs until enough admissible products have been checked
        std::uniform_int_distribution<std::size_t> pick(0, Ms.size() - 1);
        unsigned done = 0;
        for (int guard = 0; done < c.samples && guard < 2000; ++guard) {
            std::size_t a = pick(rng), b = pick(rng);
            auto sab = try_sign(Ms[a] * Ms[b], 10);
            if (!sab) continue;
            if (!(*sab == signs[a] * signs[b])) mult = false;
            ++done;
        }
        if (done < c.samples)
            throw std::runtime_error("sign action: too few admissible products sampled");
        CheckReport r1 = CheckReport::make("theta/sign_action_in_K",
                                           "induced sign vectors lie in the order-32 group", "paper");
        r1.expect("all in K").got(in_k ? "all in K" : "violation").outcome(in_k);
        out.push_back(r1);
        CheckReport r2 = CheckReport::make("theta/sign_action_multiplicative",
                                           "sign action is a homomorphism on samples", "derived");
        r2.expect("multiplicative").got(mult ? "multiplicative" : "violation").outcome(mult);
        out.push_back(r2);
    }
    {
        // weight-3 form: evaluated and reported; no identity constrains it
        SiegelPoint Z = random_siegel_point(rng);
        Complex T = weight3_form(Z, c.tol);
        CheckReport r = CheckReport::make("theta/weight3_form", "odd-weight generator evaluated", "paper");
        std::ostringstream g;
        g << T;
        r.expect("reported only").got(g.str());
        r.status = CheckStatus::Pass;
        out.push_back(r);
    }
    return out;
}

std::vector<CheckReport> run_symbolic_checks(const Config& c) {
    (void)c;
    Catalog cat;
    std::vector<CheckReport> out = verify_quotient_map(cat);
    auto cc = verify_coordinate_changes(cat);
    out.insert(out.end(), cc.begin(), cc.end());
    out.push_back(verify_strict_transform_identity(cat));
    {
        // catalog homogeneity
        bool ok = true;
        for (const WeightedVariety* w : cat.all())
            for (const MultiPoly& e : w->equations) ok = ok && e.homogeneous_weighted_degree().has_value();
        CheckReport r = CheckReport::make("catalog/homogeneous", "all catalog equations weighted-homogeneous", "trivial");
        r.expect("homogeneous").got(ok ? "homogeneous" : "violation").outcome(ok);
        out.push_back(r);
    }
    {
        // K is elementary abelian of order 32
        auto K = group_K();
        bool ok = K.size() == 32;
        for (const SignVector& g : K) {
            ok = ok && g.in_K() && (g * g).is_identity();
            for (const SignVector& h : K) {
                SignVector gh = g * h;
                ok = ok && gh.in_K();
            }
        }
        CheckReport r = CheckReport::make("group/K_structure", "sign group of order 32, every element an involution", "paper");
        r.expect("|K| = 32, closed, exponent 2").got(ok ? "verified" : "violation").outcome(ok);
        out.push_back(r);
    }
    return out;
}

std::vector<CheckReport> run_counting_checks(const Config& c) {
    std::vector<CheckReport> out;
    Catalog cat;
    // oracle equivalence at p in {3, 5, 7} for the whole catalog
    for (std::uint32_t p : {3u, 5u, 7u}) {
        for (const char* name : {"X", "Y", "Ybid", "Ysym", "Verr", "Beauville", "D1", "D2"}) {
            Timer t;
            CountResult cs = count_variety_charsum(name, p);
            CountResult nv = count_naive(cat, name, p);
            CheckReport r = CheckReport::make(std::string("count/oracle_") + name + "_p" + std::to_string(p),
                                              "character sum equals exhaustive count", "derived");
            r.expect(std::to_string(nv.projective)).got(std::to_string(cs.projective));
            r.outcome(cs.projective == nv.projective && cs.affine == nv.affine);
            r.ms = t.ms();
            out.push_back(r);
        }
        {
            Timer t;
            CountResult cs = count_k3_fiber_charsum(2, 1, p);
            CountResult nv = count_k3_fiber_naive(2, 1, p);
            CheckReport r = CheckReport::make("count/oracle_K3_p" + std::to_string(p),
                                              "character sum equals exhaustive count", "derived");
            r.expect(std::to_string(nv.projective)).got(std::to_string(cs.projective));
            r.outcome(cs.projective == nv.projective);
            r.ms = t.ms();
            out.push_back(r);
        }
    }
    // the two quotient presentations agree everywhere
    {
        bool ok = true;
        for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
            ok = ok && count_variety_charsum("Y", p).projective ==
                           count_variety_charsum("Ybid", p).projective;
            ok = ok && count_variety_charsum("Y", p).projective ==
                           count_variety_charsum("Ysym", p).projective;
        }
        CheckReport r = CheckReport::make("count/presentations_agree",
                                          "both quotient presentations count identically", "derived");
        r.expect("equal counts").got(ok ? "equal" : "differ").outcome(ok);
        out.push_back(r);
    }
    // modularity sweep
    {
        Timer t;
        auto mods = verify_modularity(c.pmax, c.jobs, c.cache_dir);
        stamp(mods, 0, t.ms());
        out.insert(out.end(), mods.begin(), mods.end());
    }
    // node inventories at two primes = 1 mod 8
    for (std::uint32_t p : {17u, 41u}) {
        Timer t;
        NodeInventory inv = singular_points(p, 1);
        bool rank3 = true;
        for (const auto& sp : inv.points) rank3 = rank3 && sp.jacobian_rank == 3;
        CheckReport r = CheckReport::make("nodes/inventory_p" + std::to_string(p),
                                          "96 singular points, all of corank one", "paper");
        r.expect("96 points, rank 3");
        r.got(std::to_string(inv.points.size()) + " points" + (rank3 ? ", rank 3" : ", rank anomaly"));
        r.outcome(inv.points.size() == 96 && rank3);
        r.ms = t.ms();
        out.push_back(r);

        OrbitDecomposition dec = node_orbits(inv);
        CheckReport r2 = CheckReport::make("nodes/orbits_p" + std::to_string(p),
                                           "twelve orbits of eight under the sign group", "paper");
        std::ostringstream g;
        g << dec.orbit_count << " orbits, sizes";
        for (std::size_t s : dec.sizes) g << " " << s;
        bool all8 = dec.orbit_count == 12;
        for (std::size_t s : dec.sizes) all8 = all8 && s == 8;
        r2.expect("12 orbits of 8").got(g.str()).outcome(all8);
        out.push_back(r2);
    }
    {
        // the example node (1:1:0:0 : s:0:s:0), s^2 = 2, over F_17
        PrimeField f(17);
        std::uint32_t s2 = f.sqrt(2);
        NodeInventory inv = singular_points(17, 1);
        std::array<std::uint32_t, 8> cand{1, 1, 0, 0, s2, 0, s2, 0};
        bool found = inv.contains(cand);
        if (!found) {
            cand = {1, 1, 0, 0, f.neg(s2), 0, s2, 0};
            found = inv.contains(cand);
        }
        CheckReport r = CheckReport::make("nodes/example_point", "the explicit node with s^2 = 2", "derived");
        r.expect("in inventory").got(found ? "in inventory" : "missing").outcome(found);
        out.push_back(r);
    }
    // the Beauville surface checks
    auto bv = beauville_singularities(17);
    out.insert(out.end(), bv.begin(), bv.end());
    return out;
}

std::vector<CheckReport> run_fixloci_checks(const Config& c) {
    (void)c;
    std::vector<CheckReport> out;
    NodeInventory inv17 = singular_points(17, 1);
    auto cls17 = classify_all(17, inv17);

    int nodes = 0, curves = 0, free = 0;
    for (const auto& r : cls17) {
        if (r.kind == FixKind::Nodes) ++nodes;
        if (r.kind == FixKind::Curves) ++curves;
        if (r.kind == FixKind::Free) ++free;
    }
    {
        CheckReport r = CheckReport::make("fixloci/census", "6 node-fixers, 12 curve-fixers, 13 free", "paper");
        r.expect("6/12/13");
        r.got(std::to_string(nodes) + "/" + std::to_string(curves) + "/" + std::to_string(free));
        r.outcome(nodes == 6 && curves == 12 && free == 13);
        out.push_back(r);
    }
    {
        bool all16 = true, all4 = true;
        std::set<std::array<std::uint32_t, 8>> covered;
        for (const auto& r : cls17) {
            if (r.kind == FixKind::Nodes) {
                all16 = all16 && r.count_p == 16;
                for (const auto& w : r.witnesses) covered.insert(w.coord);
            }
            if (r.kind == FixKind::Curves) all4 = all4 && r.components.size() == 4;
        }
        CheckReport r1 = CheckReport::make("fixloci/sixteen_each", "each node-fixer holds 16 nodes", "paper");
        r1.expect("16 each").got(all16 ? "16 each" : "violation").outcome(all16);
        out.push_back(r1);
        CheckReport r2 = CheckReport::make("fixloci/disjoint_cover",
                                           "fixed-node sets partition all 96 nodes", "derived");
        r2.expect("96 covered disjointly");
        r2.got(std::to_string(covered.size()) + " covered");
        r2.outcome(covered.size() == 96 && nodes * 16 == 96);
        out.push_back(r2);
        CheckReport r3 = CheckReport::make("fixloci/four_components", "each curve-fixer splits into 4 components", "paper");
        r3.expect("4 each").got(all4 ? "4 each" : "violation").outcome(all4);
        out.push_back(r3);
    }
    {
        // stability across the second prime
        NodeInventory inv41 = singular_points(41, 1);
        auto cls41 = classify_all(41, inv41);
        bool stable = cls41.size() == cls17.size();
        for (std::size_t i = 0; i < cls17.size() && stable; ++i)
            stable = cls17[i].g == cls41[i].g && cls17[i].kind == cls41[i].kind;
        CheckReport r = CheckReport::make("fixloci/stability", "classification identical at the second prime", "derived");
        r.expect("stable").got(stable ? "stable" : "differs").outcome(stable);
        out.push_back(r);
    }
    {
        Timer t;
        Catalog cat;
        std::vector<CheckReport> pchecks;
        PairTable table = pair_table(17, cls17, inv17, cat, &pchecks);
        stamp(pchecks, 0, t.ms());
        out.insert(out.end(), pchecks.begin(), pchecks.end());

        int classes = curve_component_orbit_count(cls17);
        CheckReport r = CheckReport::make("fixloci/component_ledger",
                                          "12 node orbits + 24 curve classes = 36 downstairs components", "paper");
        r.expect("24 curve classes, 36 total");
        r.got(std::to_string(classes) + " curve classes, " + std::to_string(12 + classes) + " total");
        r.outcome(classes == 24);
        out.push_back(r);
    }
    return out;
}

std::vector<CheckReport> run_arrangement_checks(const Config& c) {
    (void)c;
    return verify_arrangement();
}

std::vector<CheckReport> run_equisingular_checks(const Config& c) {
    (void)c;
    return verify_equisingular();
}

std::vector<CheckReport> run_topology_checks(const Config& c) {
    (void)c;
    std::vector<CheckReport> out;
    NodeInventory inv = singular_points(17, 1);
    auto cls = classify_all(17, inv);
    Catalog cat;
    PairTable table = pair_table(17, cls, inv, cat);
    auto euler = verify_euler_routes(cls, table);
    out.insert(out.end(), euler.begin(), euler.end());

    EquisingularResult eq = equisingular_h1_rational();
    EulerLedger led = stringy_euler(cls, table);
    long long cover = bidouble_euler(52, 40, 40, 32);
    HodgeAssembly a = hodge_picard_assembly(led.total, cover, eq.h1, 36, 4);
    auto hodge = verify_hodge(a);
    out.insert(out.end(), hodge.begin(), hodge.end());
    return out;
}

std::vector<CheckReport> run_k3_checks(const Config& c) {
    return verify_k3(c.samples, c.seed);
}

std::vector<CheckReport> run_all(const Config& c, const std::string& only) {
    std::vector<CheckReport> out;
    auto want = [&](const char* name) { return only.empty() || only == name; };
    auto merge = [&](std::vector<CheckReport> rs) {
        out.insert(out.end(), rs.begin(), rs.end());
    };
    if (want("cusp-form")) merge(run_cusp_form_checks(c));
    if (want("theta")) merge(run_theta_checks(c));
    if (want("symbolic")) merge(run_symbolic_checks(c));
    if (want("counting")) merge(run_counting_checks(c));
    if (want("fixloci")) merge(run_fixloci_checks(c));
    if (want("arrangement")) merge(run_arrangement_checks(c));
    if (want("equisingular")) merge(run_equisingular_checks(c));
    if (want("topology")) merge(run_topology_checks(c));
    if (want("k3")) merge(run_k3_checks(c));
    return out;
}

}  // namespace cyv
