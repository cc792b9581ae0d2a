#include "sbr/instance_io.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace sbr {

using nlohmann::ordered_json;

namespace {

ordered_json parse_text(const std::string& text) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what());
    }
}

void warn_unknown_fields(const ordered_json& obj, const std::set<std::string>& known,
                         const std::string& where, std::vector<std::string>* warnings) {
    if (!warnings) return;
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!known.count(it.key()))
            warnings->push_back("ignoring unknown field \"" + it.key() + "\" in " + where);
}

const ordered_json& require(const ordered_json& obj, const std::string& key,
                            const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError("missing field \"" + key + "\" in " + where);
    return *it;
}

double require_number(const ordered_json& obj, const std::string& key,
                      const std::string& where) {
    const auto& v = require(obj, key, where);
    if (!v.is_number())
        throw ParseError("field \"" + key + "\" in " + where + " must be a number");
    return v.get<double>();
}

}  // namespace

Instance instance_from_json_text(const std::string& text,
                                 std::vector<std::string>* warnings) {
    const ordered_json j = parse_text(text);
    if (!j.is_object()) throw ParseError("instance file must hold a JSON object");
    warn_unknown_fields(j, {"capacity", "buffer_pickup", "additional_trips",
                            "stops", "schools", "matrix"},
                        "instance", warnings);

    Instance inst;
    inst.bus_capacity = static_cast<int>(require_number(j, "capacity", "instance"));
    inst.buffer_pickup = dm_from_minutes(require_number(j, "buffer_pickup", "instance"));
    inst.additional_trips =
        static_cast<int>(require_number(j, "additional_trips", "instance"));

    const auto& stops = require(j, "stops", "instance");
    if (!stops.is_array()) throw ParseError("\"stops\" must be an array");
    for (const auto& s : stops) {
        const std::string where = "stops[" + std::to_string(inst.stops.size()) + "]";
        warn_unknown_fields(s, {"id", "x", "y"}, where, warnings);
        Stop stop;
        stop.id = static_cast<StopId>(require_number(s, "id", where));
        stop.x = require_number(s, "x", where);
        stop.y = require_number(s, "y", where);
        inst.stops.push_back(stop);
    }

    const auto& schools = require(j, "schools", "instance");
    if (!schools.is_array()) throw ParseError("\"schools\" must be an array");
    for (const auto& s : schools) {
        const std::string where = "schools[" + std::to_string(inst.schools.size()) + "]";
        warn_unknown_fields(s, {"id", "origin", "dismissal", "demand"}, where, warnings);
        School school;
        school.id = static_cast<SchoolId>(require_number(s, "id", where));
        school.origin_stop = static_cast<StopId>(require_number(s, "origin", where));
        school.dismissal = dm_from_minutes(require_number(s, "dismissal", where));
        const auto& demand = require(s, "demand", where);
        if (!demand.is_object())
            throw ParseError("field \"demand\" in " + where + " must be an object");
        for (auto it = demand.begin(); it != demand.end(); ++it) {
            StopId sid;
            try {
                sid = std::stoi(it.key());
            } catch (const std::exception&) {
                throw ParseError("demand key \"" + it.key() + "\" in " + where +
                                 " is not a stop id");
            }
            if (!it.value().is_number_integer() || it.value().get<int>() < 0)
                throw ParseError("demand for stop " + it.key() + " in " + where +
                                 " must be a nonnegative integer");
            school.demand[sid] = it.value().get<int>();
            school.assigned_stops.push_back(sid);
        }
        inst.schools.push_back(std::move(school));
    }

    if (auto it = j.find("matrix"); it != j.end()) {
        if (!it->is_array() || it->size() != inst.stops.size())
            throw ParseError("\"matrix\" must be a square array matching the stop count");
        TravelTimeMatrix m(inst.stops.size());
        for (std::size_t r = 0; r < it->size(); ++r) {
            const auto& row = (*it)[r];
            if (!row.is_array() || row.size() != inst.stops.size())
                throw ParseError("\"matrix\" row " + std::to_string(r) + " has wrong length");
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (!row[c].is_number())
                    throw ParseError("\"matrix\" entry (" + std::to_string(r) + "," +
                                     std::to_string(c) + ") is not a number");
                m.set(r, c, row[c].get<Dm>());
            }
        }
        inst.matrix = std::move(m);
    } else {
        inst.matrix = matrix_from_geometry(inst.stops);
    }
    return inst;
}

Instance load_instance(const std::filesystem::path& path,
                       std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return instance_from_json_text(text, warnings);
}

std::string instance_to_json_text(const Instance& inst) {
    ordered_json j;
    j["capacity"] = inst.bus_capacity;
    j["buffer_pickup"] = minutes(inst.buffer_pickup);
    j["additional_trips"] = inst.additional_trips;
    j["stops"] = ordered_json::array();
    for (const auto& s : inst.stops)
        j["stops"].push_back({{"id", s.id}, {"x", s.x}, {"y", s.y}});
    j["schools"] = ordered_json::array();
    for (const auto& school : inst.schools) {
        ordered_json demand = ordered_json::object();
        for (const auto& [stop, count] : school.demand)
            demand[std::to_string(stop)] = count;
        j["schools"].push_back({{"id", school.id},
                                {"origin", school.origin_stop},
                                {"dismissal", minutes(school.dismissal)},
                                {"demand", std::move(demand)}});
    }
    j["matrix"] = ordered_json::array();
    for (std::size_t r = 0; r < inst.matrix.size(); ++r) {
        ordered_json row = ordered_json::array();
        for (std::size_t c = 0; c < inst.matrix.size(); ++c)
            row.push_back(inst.matrix.at(r, c));
        j["matrix"].push_back(std::move(row));
    }
    return j.dump(2) + "\n";
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path.string());
    out << instance_to_json_text(inst);
}

ScenarioSpec scenario_spec_from_json_text(const std::string& text) {
    const ordered_json j = parse_text(text);
    if (!j.is_object()) throw ParseError("scenario file must hold a JSON object");
    ScenarioSpec spec;
    spec.n_stops = static_cast<int>(require_number(j, "n_stops", "scenario"));
    spec.n_schools = static_cast<int>(require_number(j, "n_schools", "scenario"));
    spec.avg_students_per_school =
        static_cast<int>(require_number(j, "avg_students_per_school", "scenario"));
    spec.max_stops_per_school =
        static_cast<int>(require_number(j, "max_stops_per_school", "scenario"));
    spec.dismissal_min = dm_from_minutes(require_number(j, "dismissal_min", "scenario"));
    spec.dismissal_max = dm_from_minutes(require_number(j, "dismissal_max", "scenario"));
    if (j.contains("dismissal_grid"))
        spec.dismissal_grid = dm_from_minutes(j["dismissal_grid"].get<double>());
    if (j.contains("capacity")) spec.capacity = j["capacity"].get<int>();
    if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
    return spec;
}

ScenarioSpec load_scenario_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return scenario_spec_from_json_text(text);
}

bool operator==(const Stop& a, const Stop& b) {
    return a.id == b.id && a.x == b.x && a.y == b.y;
}

bool operator==(const School& a, const School& b) {
    return a.id == b.id && a.origin_stop == b.origin_stop &&
           a.dismissal == b.dismissal && a.demand == b.demand &&
           a.assigned_stops == b.assigned_stops;
}

bool operator==(const Instance& a, const Instance& b) {
    return a.stops == b.stops && a.schools == b.schools && a.matrix == b.matrix &&
           a.bus_capacity == b.bus_capacity && a.buffer_pickup == b.buffer_pickup &&
           a.additional_trips == b.additional_trips;
}

}  // namespace sbr
