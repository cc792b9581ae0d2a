#ifndef SBR_INSTANCE_IO_HPP
#define SBR_INSTANCE_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "sbr/instance.hpp"

namespace sbr {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Instance file layout:
//   { "capacity": int, "buffer_pickup": minutes, "additional_trips": int,
//     "stops": [{"id", "x", "y"}],
//     "schools": [{"id", "origin", "dismissal", "demand": {stop: count}}],
//     "matrix": [[deciminutes]] }
// "matrix" may be omitted; it is then derived from the stop coordinates.
// Unknown fields are ignored with a warning so newer files still load.

Instance load_instance(const std::filesystem::path& path,
                       std::vector<std::string>* warnings = nullptr);
Instance instance_from_json_text(const std::string& text,
                                 std::vector<std::string>* warnings = nullptr);
void save_instance(const Instance& inst, const std::filesystem::path& path);
std::string instance_to_json_text(const Instance& inst);

ScenarioSpec load_scenario_spec(const std::filesystem::path& path);
ScenarioSpec scenario_spec_from_json_text(const std::string& text);

bool operator==(const Stop& a, const Stop& b);
bool operator==(const School& a, const School& b);
bool operator==(const Instance& a, const Instance& b);

}  // namespace sbr

#endif
