#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>

#include "cyv/arrangement.hpp"
#include "cyv/config.hpp"
#include "cyv/counting.hpp"
#include "cyv/deform.hpp"
#include "cyv/fixloci.hpp"
#include "cyv/k3fib.hpp"
#include "cyv/qexp.hpp"
#include "cyv/runner.hpp"
#include "cyv/theta.hpp"
#include "cyv/topology.hpp"
#include "cyv/varieties.hpp"

#include <nlohmann/json.hpp>

namespace {

void emit(const std::vector<cyv::CheckReport>& rs, const std::string& json_out) {
    for (const auto& r : rs) {
        std::cout << "[" << to_string(r.status) << "] " << r.check << ": expected " << r.expected
                  << ", got " << r.computed;
        if (!r.note.empty()) std::cout << "  (" << r.note << ")";
        std::cout << "\n";
    }
    if (!json_out.empty()) {
        std::ofstream out(json_out);
        out << cyv::to_json(rs) << "\n";
    }
    int pass = 0, fail = 0, flagged = 0, skipped = 0;
    for (const auto& r : rs) {
        switch (r.status) {
            case cyv::CheckStatus::Pass: ++pass; break;
            case cyv::CheckStatus::Fail: ++fail; break;
            case cyv::CheckStatus::FlaggedDiscrepancy: ++flagged; break;
            case cyv::CheckStatus::Skipped: ++skipped; break;
        }
    }
    std::cout << pass << " passed, " << fail << " failed, " << flagged << " flagged, " << skipped
              << " skipped\n";
}

int exit_code(const std::vector<cyv::CheckReport>& rs) { return cyv::all_passed(rs) ? 0 : 1; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification toolkit for a Siegel modular Calabi-Yau threefold"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, cache_dir, json_out, only;
    unsigned jobs = 0;
    std::uint64_t seed = 0;
    bool have_seed = false;
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--jobs", jobs, "worker threads for the counting sweeps");
    auto* seed_opt = app.add_option("--seed", seed, "seed for all randomized sampling");
    app.add_option("--cache", cache_dir, "count cache directory");
    app.add_option("--json", json_out, "write the consolidated JSON report here");

    auto* cmd_run = app.add_subcommand("run-all", "run every check in dependency order");
    cmd_run->add_option("--only", only, "restrict to one check group");

    auto* cmd_count = app.add_subcommand("count", "character-sum point counts");
    std::string variety = "X";
    std::uint32_t pmax = 97, pmin = 3;
    cmd_count->add_option("--variety", variety, "catalog name (X, Y, Ybid, Ysym, Verr, Beauville, D1, D2)");
    cmd_count->add_option("--pmax", pmax, "largest prime");
    cmd_count->add_option("--pmin", pmin, "smallest prime");

    auto* cmd_mod = app.add_subcommand("verify-modularity", "counts against the cusp-form formula");
    cmd_mod->add_option("--pmax", pmax, "largest prime");

    auto* cmd_nodes = app.add_subcommand("nodes", "singular-point inventory and orbits");
    std::uint32_t node_p = 17;
    unsigned node_ext = 1;
    cmd_nodes->add_option("--prime", node_p, "prime (= 1 mod 8 for a rational inventory)");
    cmd_nodes->add_option("--ext", node_ext, "field extension degree");

    auto* cmd_fix = app.add_subcommand("fixloci", "fixed-locus census and pair table");
    std::uint32_t fix_p = 17;
    cmd_fix->add_option("--prime", fix_p, "prime = 1 mod 8");

    auto* cmd_arr = app.add_subcommand("arrangement", "incidence model and blow-up tallies");
    bool arr_dump = false;
    cmd_arr->add_flag("--dump", arr_dump, "print the incidence report as JSON");

    app.add_subcommand("equisingular", "degree-8 equisingular computation");

    auto* cmd_euler = app.add_subcommand("euler", "Euler number, both routes");
    std::string route = "both";
    cmd_euler->add_option("--route", route, "stringy | cover | both");

    app.add_subcommand("hodge", "Hodge numbers and the Picard ledgers");

    auto* cmd_theta = app.add_subcommand("theta-check", "numerical theta identities");
    unsigned samples = 20;
    double tol = 1e-12;
    cmd_theta->add_option("--samples", samples, "sampled Siegel points");
    cmd_theta->add_option("--tol", tol, "truncation tolerance");

    auto* cmd_cusp = app.add_subcommand("cusp-form", "eta-product coefficients");
    std::uint32_t cusp_pmax = 97;
    cmd_cusp->add_option("--max-p", cusp_pmax, "largest prime coefficient");

    auto* cmd_k3 = app.add_subcommand("k3", "pencil fibers and splitting checks");
    std::string param = "2:1";
    unsigned sweep = 0;
    cmd_k3->add_option("--param", param, "fiber parameter s:t");
    cmd_k3->add_option("--sweep", sweep, "verify this many generic parameters");

    auto* cmd_cat = app.add_subcommand("catalog", "the variety catalog");
    bool cat_dump = false;
    cmd_cat->add_flag("--dump", cat_dump, "print the catalog");

    CLI11_PARSE(app, argc, argv);

    cyv::Config cfg = cyv::Config::load(config_path);
    if (jobs) cfg.jobs = jobs;
    have_seed = seed_opt->count() > 0;
    if (have_seed) cfg.seed = seed;
    if (!cache_dir.empty()) cfg.cache_dir = cache_dir;
    cfg.samples = samples;
    cfg.tol = tol;

    try {
        if (cmd_run->parsed()) {
            auto rs = cyv::run_all(cfg, only);
            emit(rs, json_out);
            return exit_code(rs);
        }
        if (cmd_count->parsed()) {
            nlohmann::json rows = nlohmann::json::array();
            for (std::uint32_t p = pmin; p <= pmax; ++p) {
                bool prime = p > 1;
                for (std::uint32_t d = 2; d * d <= p; ++d)
                    if (p % d == 0) prime = false;
                if (!prime || p == 2) continue;
                cyv::CountResult r;
                if (auto hit = cyv::cache_lookup(cfg.cache_dir, variety, p, 1)) {
                    r = *hit;
                } else {
                    r = variety == "X" ? cyv::count_x_charsum(p, cfg.jobs)
                                       : cyv::count_variety_charsum(variety, p);
                    cyv::cache_store(cfg.cache_dir, r);
                }
                nlohmann::json row;
                row["p"] = p;
                row["count"] = r.projective;
                row["ms"] = r.ms;
                rows.push_back(row);
                std::cout << variety << "(F_" << p << ") = " << r.projective << "\n";
            }
            if (!json_out.empty()) std::ofstream(json_out) << rows.dump(2) << "\n";
            return 0;
        }
        if (cmd_mod->parsed()) {
            auto rs = cyv::verify_modularity(pmax, cfg.jobs, cfg.cache_dir);
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& r : rs) {
                nlohmann::json row;
                row["check"] = r.check;
                row["expected"] = r.expected;
                row["computed"] = r.computed;
                row["status"] = to_string(r.status);
                rows.push_back(row);
            }
            emit(rs, json_out);
            return exit_code(rs);
        }
        if (cmd_nodes->parsed()) {
            cyv::NodeInventory inv = cyv::singular_points(node_p, node_ext);
            cyv::OrbitDecomposition dec = cyv::node_orbits(inv);
            nlohmann::json j;
            j["p"] = inv.p;
            j["k"] = inv.k;
            j["count"] = inv.points.size();
            j["orbits"] = dec.orbit_count;
            j["orbit_sizes"] = dec.sizes;
            std::cout << j.dump(2) << "\n";
            if (!json_out.empty()) std::ofstream(json_out) << j.dump(2) << "\n";
            return 0;
        }
        if (cmd_fix->parsed()) {
            cyv::NodeInventory inv = cyv::singular_points(fix_p, 1);
            auto cls = cyv::classify_all(fix_p, inv);
            std::vector<cyv::CheckReport> checks;
            cyv::Catalog cat;
            cyv::PairTable table = cyv::pair_table(fix_p, cls, inv, cat, &checks);
            nlohmann::json j;
            for (const auto& r : cls) {
                nlohmann::json row;
                row["g"] = r.g.str();
                row["kind"] = r.kind == cyv::FixKind::Free
                                  ? "free"
                                  : (r.kind == cyv::FixKind::Nodes ? "nodes" : "curves");
                row["count_p"] = r.count_p;
                row["count_p2"] = r.count_p2;
                j["classification"].push_back(row);
            }
            j["pair_tallies"] = {{"curve_node_8", table.curve_node_8},
                                 {"curve_curve_16", table.curve_curve_16},
                                 {"curve_curve_8", table.curve_curve_8}};
            std::cout << j.dump(2) << "\n";
            if (!json_out.empty()) std::ofstream(json_out) << j.dump(2) << "\n";
            emit(checks, "");
            return exit_code(checks);
        }
        if (cmd_arr->parsed()) {
            if (arr_dump) {
                std::cout << cyv::arrangement_json() << "\n";
                return 0;
            }
            auto rs = cyv::verify_arrangement();
            emit(rs, json_out);
            return exit_code(rs);
        }
        if (app.get_subcommand("equisingular")->parsed()) {
            cyv::EquisingularResult r = cyv::equisingular_h1_rational();
            nlohmann::json j;
            j["dim_JF8"] = r.dim_jf8;
            j["dim_Ieq8"] = r.dim_ieq8;
            j["h1_equisingular"] = r.h1;
            std::cout << j.dump(2) << "\n";
            if (!json_out.empty()) std::ofstream(json_out) << j.dump(2) << "\n";
            return r.h1 == 0 ? 0 : 1;
        }
        if (cmd_euler->parsed()) {
            cyv::NodeInventory inv = cyv::singular_points(17, 1);
            auto cls = cyv::classify_all(17, inv);
            cyv::Catalog cat;
            cyv::PairTable table = cyv::pair_table(17, cls, inv, cat);
            nlohmann::json j;
            if (route == "stringy" || route == "both") {
                cyv::EulerLedger led = cyv::stringy_euler(cls, table);
                j["stringy"] = nlohmann::json::parse(cyv::ledger_json(led));
            }
            if (route == "cover" || route == "both") {
                j["cover"] = {{"eP", 52}, {"eD1", 40}, {"eD2", 40}, {"eD12", 32},
                              {"total", cyv::bidouble_euler(52, 40, 40, 32)}};
            }
            std::cout << j.dump(2) << "\n";
            if (!json_out.empty()) std::ofstream(json_out) << j.dump(2) << "\n";
            return 0;
        }
        if (app.get_subcommand("hodge")->parsed()) {
            cyv::NodeInventory inv = cyv::singular_points(17, 1);
            auto cls = cyv::classify_all(17, inv);
            cyv::Catalog cat;
            cyv::PairTable table = cyv::pair_table(17, cls, inv, cat);
            cyv::EulerLedger led = cyv::stringy_euler(cls, table);
            cyv::EquisingularResult eq = cyv::equisingular_h1_rational();
            cyv::HodgeAssembly a = cyv::hodge_picard_assembly(
                led.total, cyv::bidouble_euler(52, 40, 40, 32), eq.h1, 36, 4);
            auto rs = cyv::verify_hodge(a);
            emit(rs, json_out);
            return exit_code(rs);
        }
        if (cmd_theta->parsed()) {
            auto rs = cyv::run_theta_checks(cfg);
            emit(rs, json_out);
            return exit_code(rs);
        }
        if (cmd_cusp->parsed()) {
            auto table = cyv::eta_product_ap_table(cusp_pmax, std::max<std::size_t>(120, cusp_pmax));
            nlohmann::json j = nlohmann::json::array();
            for (auto [p, ap] : table) {
                nlohmann::json row;
                row["p"] = p;
                row["a_p"] = ap;
                j.push_back(row);
            }
            std::cout << j.dump(2) << "\n";
            if (!json_out.empty()) std::ofstream(json_out) << j.dump(2) << "\n";
            return 0;
        }
        if (cmd_k3->parsed()) {
            if (sweep > 0) {
                auto rs = cyv::verify_k3(sweep, cfg.seed);
                emit(rs, json_out);
                return exit_code(rs);
            }
            auto colon = param.find(':');
            long s = std::stol(param.substr(0, colon));
            long t = std::stol(param.substr(colon + 1));
            cyv::FiberSlice fs = cyv::fiber(s, t);
            nlohmann::json j;
            j["s"] = s;
            j["t"] = t;
            j["degenerate"] = fs.degenerate;
            j["own_double_points"] = fs.own_double_points;
            j["mutual_points"] = fs.mutual_points;
            for (const auto& e : fs.model.eqs) j["equations"].push_back(cyv::to_string(e));
            std::cout << j.dump(2) << "\n";
            auto rs = cyv::splitting_checks(s, t);
            emit(rs, json_out);
            return exit_code(rs);
        }
        if (cmd_cat->parsed()) {
            (void)cat_dump;
            cyv::Catalog cat;
            std::cout << cat.dump();
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
