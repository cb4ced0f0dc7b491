#include "rlplace/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rlplace {
namespace {

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "off" || v == "no") return false;
    throw std::runtime_error("config: bad boolean for " + key + ": " + v);
}

}  // namespace

RbsmConfig load_config(const std::string& path, RbsmConfig base) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::string cleaned;
        for (char c : line)
            cleaned += (c == '=' || c == ':') ? ' ' : c;
        std::istringstream is(cleaned);
        std::string key, value;
        if (!(is >> key)) continue;
        if (!(is >> value))
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": missing value for " + key);

        if (key == "iter_max") base.iter_max = std::stoi(value);
        else if (key == "inner_steps") base.inner_steps = std::stoi(value);
        else if (key == "lr0") base.lr0 = std::stod(value);
        else if (key == "gamma0") base.gamma0 = std::stod(value);
        else if (key == "alpha") base.alpha = std::stod(value);
        else if (key == "batch_fraction") base.batch_fraction = std::stod(value);
        else if (key == "temperature") base.temperature = std::stod(value);
        else if (key == "eps_hpwl") base.eps_hpwl = std::stod(value);
        else if (key == "eps_overlap") base.eps_overlap = std::stod(value);
        else if (key == "seed") base.seed = std::stoull(value);
        else if (key == "perturb") base.perturb = parse_bool(value, key);
        else if (key == "uniform_batch") base.uniform_batch = parse_bool(value, key);
        else if (key == "adaptive_gamma") base.adaptive_gamma_on = parse_bool(value, key);
        else if (key == "gamma_fixed") base.gamma_fixed = std::stod(value);
        else if (key == "penalty_full_pairs")
            base.penalty_full_pairs = parse_bool(value, key);
        else
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": unknown config key " + key);
    }
    base.validate();
    return base;
}

}  // namespace rlplace
