#pragma once

#include <cstdint>
#include <string>

namespace cyv {

// Runtime configuration: defaults, overridden by a key = value config file,
// the CYV_CACHE_DIR environment variable, then command-line flags.
struct Config {
    unsigned jobs = 1;
    std::uint64_t seed = 20240801;
    std::string cache_dir;
    std::uint32_t pmax = 97;
    double tol = 1e-12;
    unsigned samples = 20;

    static Config load(const std::string& path);  // empty path: defaults + env
    void apply_env();
};

}  // namespace cyv
