#include "cyv/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cyv {

void Config::apply_env() {
    if (const char* env = std::getenv("CYV_CACHE_DIR")) cache_dir = env;
}

Config Config::load(const std::string& path) {
    Config c;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("config: cannot open " + path);
        std::string line;
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            auto trim = [](std::string s) {
                auto b = s.find_first_not_of(" \t");
                auto e = s.find_last_not_of(" \t");
                return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            };
            std::string key = trim(line.substr(0, eq));
            std::string val = trim(line.substr(eq + 1));
            if (key == "jobs")
                c.jobs = static_cast<unsigned>(std::stoul(val));
            else if (key == "seed")
                c.seed = std::stoull(val);
            else if (key == "cache_dir")
                c.cache_dir = val;
            else if (key == "pmax")
                c.pmax = static_cast<std::uint32_t>(std::stoul(val));
            else if (key == "tol")
                c.tol = std::stod(val);
            else if (key == "samples")
                c.samples = static_cast<unsigned>(std::stoul(val));
            else if (!key.empty())
                throw std::runtime_error("config: unknown key " + key);
        }
    }
    c.apply_env();
    return c;
}

}  // namespace cyv
