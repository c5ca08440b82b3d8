// SPDX-License-Identifier: Apache-2.0
#include "repsim/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>

#include "repsim/errors.hpp"

namespace repsim {

namespace {

double parse_double(const std::string &key, const std::string &v) {
    std::size_t used = 0;
    double out = 0.0;
    try {
        out = std::stod(v, &used);
    } catch (const std::exception &) {
        throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
    }
    if (used != v.size())
        throw ConfigError("config: trailing junk in '" + key + " = " + v + "'");
    if (!std::isfinite(out))
        throw ConfigError("config: '" + key + "' must be finite");
    return out;
}

int parse_int(const std::string &key, const std::string &v) {
    const double d = parse_double(key, v);
    const int i = static_cast<int>(d);
    if (static_cast<double>(i) != d)
        throw ConfigError("config: '" + key + "' expects an integer, got '" + v + "'");
    return i;
}

std::uint64_t parse_u64(const std::string &key, const std::string &v) {
    try {
        std::size_t used = 0;
        const std::uint64_t out = std::stoull(v, &used);
        if (used != v.size()) throw std::invalid_argument("junk");
        return out;
    } catch (const std::exception &) {
        throw ConfigError("config: '" + key + "' expects an unsigned integer, got '" +
                          v + "'");
    }
}

std::string trim(const std::string &s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

void apply_override(RunConfig &cfg, const std::string &key,
                    const std::string &value) {
    using Setter = std::function<void(RunConfig &, const std::string &)>;
    static const std::map<std::string, Setter> setters = {
        {"frequency", [](RunConfig &c, const std::string &v) { c.frequency = parse_double("frequency", v); }},
        {"tx_power_dbm", [](RunConfig &c, const std::string &v) { c.tx_power_dbm = parse_double("tx_power_dbm", v); }},
        {"bs_antennas", [](RunConfig &c, const std::string &v) { c.bs_antennas = parse_int("bs_antennas", v); }},
        {"asr_antennas", [](RunConfig &c, const std::string &v) { c.asr_antennas = parse_int("asr_antennas", v); }},
        {"sr_antennas", [](RunConfig &c, const std::string &v) { c.sr_antennas = parse_int("sr_antennas", v); }},
        {"radius", [](RunConfig &c, const std::string &v) { c.radius = parse_double("radius", v); }},
        {"min_ue_radius", [](RunConfig &c, const std::string &v) { c.min_ue_radius = parse_double("min_ue_radius", v); }},
        {"bs_asr_distance", [](RunConfig &c, const std::string &v) { c.bs_asr_distance = parse_double("bs_asr_distance", v); }},
        {"noise_asr_dbm", [](RunConfig &c, const std::string &v) { c.noise_asr_dbm = parse_double("noise_asr_dbm", v); }},
        {"noise_ue_dbm", [](RunConfig &c, const std::string &v) { c.noise_ue_dbm = parse_double("noise_ue_dbm", v); }},
        {"num_ues", [](RunConfig &c, const std::string &v) { c.num_ues = parse_int("num_ues", v); }},
        {"num_subchannels", [](RunConfig &c, const std::string &v) { c.num_subchannels = parse_int("num_subchannels", v); }},
        {"num_slots", [](RunConfig &c, const std::string &v) { c.num_slots = parse_int("num_slots", v); }},
        {"lambda", [](RunConfig &c, const std::string &v) { c.lambda = parse_double("lambda", v); }},
        {"eta_start", [](RunConfig &c, const std::string &v) { c.eta_start = parse_double("eta_start", v); }},
        {"eta_stop", [](RunConfig &c, const std::string &v) { c.eta_stop = parse_double("eta_stop", v); }},
        {"eta_step", [](RunConfig &c, const std::string &v) { c.eta_step = parse_double("eta_step", v); }},
        {"trials", [](RunConfig &c, const std::string &v) { c.trials = parse_int("trials", v); }},
        {"seed", [](RunConfig &c, const std::string &v) { c.seed = parse_u64("seed", v); }},
        {"codebook_levels", [](RunConfig &c, const std::string &v) { c.codebook_levels = parse_int("codebook_levels", v); }},
        {"grid_points", [](RunConfig &c, const std::string &v) { c.grid_points = parse_int("grid_points", v); }},
        {"mode", [](RunConfig &c, const std::string &v) { c.mode = v; }},
        {"capacity_mode", [](RunConfig &c, const std::string &v) { c.capacity_mode = v; }},
        {"exec", [](RunConfig &c, const std::string &v) { c.exec = v; }},
    };
    const auto it = setters.find(key);
    if (it == setters.end())
        throw ConfigError("config: unknown key '" + key + "'");
    it->second(cfg, value);
}

RunConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) +
                              " is not 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config: empty key or value at line " +
                              std::to_string(lineno));
        apply_override(cfg, key, value);
    }
    if (in.bad()) throw IoError("read failure on '" + path + "'");
    cfg.validate();
    return cfg;
}

void RunConfig::validate() const {
    auto bad = [](const std::string &m) { throw ConfigError(m); };
    if (frequency <= 0) bad("frequency must be positive");
    if (bs_antennas < 1 || asr_antennas < 1 || sr_antennas < 1)
        bad("antenna counts must be >= 1");
    if (sr_antennas != 2 * asr_antennas)
        bad("hardware parity requires sr_antennas == 2 * asr_antennas");
    if (radius <= 0 || bs_asr_distance <= 0) bad("distances must be positive");
    if (min_ue_radius <= 0 || min_ue_radius >= radius)
        bad("min_ue_radius must lie in (0, radius)");
    if (num_ues < 1) bad("num_ues must be >= 1");
    if (num_subchannels < 1) bad("num_subchannels must be >= 1");
    if (num_slots < 0) bad("num_slots must be >= 0");
    if (!std::isfinite(lambda)) bad("lambda must be finite");
    if (eta_step <= 0) bad("eta_step must be positive");
    if (eta_stop < eta_start) bad("eta_stop must be >= eta_start");
    if (eta_start < 0) bad("eta_start must be >= 0");
    if (trials < 1) bad("trials must be >= 1");
    if (codebook_levels < 1 || codebook_levels > 20)
        bad("codebook_levels out of range");
    if (grid_points < codebook_levels || grid_points % codebook_levels != 0)
        bad("grid_points must be a positive multiple of codebook_levels");
    if (mode != "asr" && mode != "sr" && mode != "both")
        bad("mode must be asr, sr, or both");
    if (capacity_mode != "global_n" && capacity_mode != "per_beam_n")
        bad("capacity_mode must be global_n or per_beam_n");
    if (exec != "serial" && exec != "parallel")
        bad("exec must be serial or parallel");
}

std::vector<double> RunConfig::eta_grid() const {
    std::vector<double> out;
    for (double e = eta_start; e <= eta_stop + 1e-9; e += eta_step)
        out.push_back(e);
    return out;
}

std::vector<std::pair<std::string, std::string>> config_items(const RunConfig &cfg) {
    auto num = [](double v) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.10g", v);
        return std::string(buf);
    };
    return {
        {"frequency", num(cfg.frequency)},
        {"tx_power_dbm", num(cfg.tx_power_dbm)},
        {"bs_antennas", std::to_string(cfg.bs_antennas)},
        {"asr_antennas", std::to_string(cfg.asr_antennas)},
        {"sr_antennas", std::to_string(cfg.sr_antennas)},
        {"radius", num(cfg.radius)},
        {"min_ue_radius", num(cfg.min_ue_radius)},
        {"bs_asr_distance", num(cfg.bs_asr_distance)},
        {"noise_asr_dbm", num(cfg.noise_asr_dbm)},
        {"noise_ue_dbm", num(cfg.noise_ue_dbm)},
        {"num_ues", std::to_string(cfg.num_ues)},
        {"num_subchannels", std::to_string(cfg.num_subchannels)},
        {"num_slots", std::to_string(cfg.num_slots)},
        {"lambda", num(cfg.lambda)},
        {"eta_start", num(cfg.eta_start)},
        {"eta_stop", num(cfg.eta_stop)},
        {"eta_step", num(cfg.eta_step)},
        {"trials", std::to_string(cfg.trials)},
        {"seed", std::to_string(cfg.seed)},
        {"codebook_levels", std::to_string(cfg.codebook_levels)},
        {"grid_points", std::to_string(cfg.grid_points)},
        {"mode", cfg.mode},
        {"capacity_mode", cfg.capacity_mode},
        {"exec", cfg.exec},
    };
}

} // namespace repsim
