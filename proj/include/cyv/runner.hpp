#pragma once

#include <string>
#include <vector>

#include "cyv/config.hpp"
#include "cyv/report.hpp"

namespace cyv {

// Named check groups, runnable independently or all together in dependency
// order (counting -> fixed loci -> topology; arrangement -> deformation;
// theta independent).
std::vector<CheckReport> run_cusp_form_checks(const Config& c);
std::vector<CheckReport> run_theta_checks(const Config& c);
std::vector<CheckReport> run_symbolic_checks(const Config& c);
std::vector<CheckReport> run_counting_checks(const Config& c);
std::vector<CheckReport> run_fixloci_checks(const Config& c);
std::vector<CheckReport> run_arrangement_checks(const Config& c);
std::vector<CheckReport> run_equisingular_checks(const Config& c);
std::vector<CheckReport> run_topology_checks(const Config& c);
std::vector<CheckReport> run_k3_checks(const Config& c);

// groups: "cusp-form", "theta", "symbolic", "counting", "fixloci",
// "arrangement", "equisingular", "topology", "k3"; empty filter = all.
std::vector<CheckReport> run_all(const Config& c, const std::string& only = "");

}  // namespace cyv
