// SPDX-License-Identifier: Apache-2.0
#include "repsim/instance_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "repsim/errors.hpp"

namespace repsim {

using nlohmann::json;

ProblemInstance instance_from_json(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("instance parse error: ") + e.what());
    }
    ProblemInstance inst;
    try {
        inst.n_ues = j.at("n_ues").get<int>();
        inst.n_beams = j.at("n_beams").get<int>();
        inst.feasible.clear();
        for (const auto &row : j.at("feasible")) {
            std::vector<std::uint8_t> r;
            for (const auto &v : row) r.push_back(v.get<int>() ? 1 : 0);
            inst.feasible.push_back(std::move(r));
        }
        inst.panel_of_beam = j.at("panel_of_beam").get<std::vector<int>>();
        inst.n_subchannels = j.at("n_subchannels").get<int>();
        inst.q_slots = j.at("q_slots").get<int>();
        inst.lambda = j.at("lambda").get<double>();
        const std::string mode = j.value("capacity_mode", "global_n");
        if (mode == "global_n")
            inst.capacity_mode = CapacityMode::global_n;
        else if (mode == "per_beam_n")
            inst.capacity_mode = CapacityMode::per_beam_n;
        else
            throw ConfigError("instance: unknown capacity_mode '" + mode + "'");
        if (j.contains("rate")) {
            const auto &jr = j.at("rate");
            inst.rate.set_size(inst.n_ues, inst.n_beams);
            int k = 0;
            for (const auto &row : jr) {
                int b = 0;
                for (const auto &v : row) inst.rate(k, b++) = v.get<double>();
                ++k;
            }
        }
    } catch (const json::exception &e) {
        throw ConfigError(std::string("instance field error: ") + e.what());
    }
    try {
        inst.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    return inst;
}

std::string instance_to_json(const ProblemInstance &inst) {
    json j;
    j["n_ues"] = inst.n_ues;
    j["n_beams"] = inst.n_beams;
    json rows = json::array();
    for (const auto &row : inst.feasible) {
        json r = json::array();
        for (std::uint8_t v : row) r.push_back(static_cast<int>(v));
        rows.push_back(std::move(r));
    }
    j["feasible"] = std::move(rows);
    j["panel_of_beam"] = inst.panel_of_beam;
    j["n_subchannels"] = inst.n_subchannels;
    j["q_slots"] = inst.q_slots;
    j["lambda"] = inst.lambda;
    j["capacity_mode"] = inst.capacity_mode == CapacityMode::global_n
                             ? "global_n"
                             : "per_beam_n";
    if (inst.rate.n_elem != 0) {
        json rr = json::array();
        for (int k = 0; k < inst.n_ues; ++k) {
            json r = json::array();
            for (int b = 0; b < inst.n_beams; ++b) r.push_back(inst.rate(k, b));
            rr.push_back(std::move(r));
        }
        j["rate"] = std::move(rr);
    }
    return j.dump(2);
}

ProblemInstance load_instance(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open instance file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("read failure on '" + path + "'");
    return instance_from_json(ss.str());
}

void save_instance(const std::string &path, const ProblemInstance &inst) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << instance_to_json(inst) << "\n";
    if (!out) throw IoError("write failure on '" + path + "'");
}

std::string solution_to_json(const ScheduleSolution &sol) {
    json j;
    j["assignment"] = sol.assignment;
    j["active_beams"] = sol.active_beams;
    j["served_count"] = sol.served_count;
    j["objective"] = sol.objective;
    j["per_panel_slots"] = {sol.per_panel_slots[0], sol.per_panel_slots[1]};
    return j.dump(2);
}

} // namespace repsim
