#include "sbr/solution_io.hpp"

#include <fstream>

#include <json.hpp>

#include "sbr/instance_io.hpp"

namespace sbr {

using nlohmann::ordered_json;

std::string solution_to_json_text(const std::vector<SolutionTrip>& trips,
                                  const Instance& inst) {
    ordered_json j;
    j["trips"] = ordered_json::array();
    for (const auto& st : trips) {
        ordered_json loads = ordered_json::object();
        for (const auto& [stop, students] : st.trip.loads)
            loads[std::to_string(stop)] =
                LoadFraction{students, inst.bus_capacity}.str();
        j["trips"].push_back({{"id", st.trip.id},
                              {"school", st.trip.school},
                              {"stops", st.trip.stops},
                              {"loads", std::move(loads)},
                              {"start", minutes(st.schedule.start)},
                              {"tt", minutes(st.schedule.travel_time)},
                              {"end", minutes(st.schedule.end)}});
    }
    return j.dump(2) + "\n";
}

void save_solution(const std::vector<SolutionTrip>& trips, const Instance& inst,
                   const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path.string());
    out << solution_to_json_text(trips, inst);
}

std::vector<SolutionTrip> solution_from_json_text(const std::string& text,
                                                  const Instance& inst) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!j.is_object() || !j.contains("trips") || !j["trips"].is_array())
        throw ParseError("solution file must hold an object with a \"trips\" array");

    std::vector<SolutionTrip> trips;
    for (const auto& t : j["trips"]) {
        const std::string where = "trips[" + std::to_string(trips.size()) + "]";
        SolutionTrip st;
        for (const char* key : {"id", "school", "stops", "loads", "start", "tt", "end"})
            if (!t.contains(key))
                throw ParseError("missing field \"" + std::string(key) + "\" in " + where);
        st.trip.id = t["id"].get<TripId>();
        st.trip.school = t["school"].get<SchoolId>();
        st.trip.stops = t["stops"].get<std::vector<StopId>>();
        for (auto it = t["loads"].begin(); it != t["loads"].end(); ++it) {
            const std::string frac = it.value().get<std::string>();
            const auto slash = frac.find('/');
            if (slash == std::string::npos)
                throw ParseError("load \"" + frac + "\" in " + where +
                                 " is not a num/den fraction");
            const long long num = std::stoll(frac.substr(0, slash));
            const long long den = std::stoll(frac.substr(slash + 1));
            if (den <= 0 || num < 0)
                throw ParseError("load \"" + frac + "\" in " + where + " is out of range");
            const long long students = num * inst.bus_capacity;
            if (students % den != 0)
                throw ParseError("load \"" + frac + "\" in " + where +
                                 " is not a whole number of students for capacity " +
                                 std::to_string(inst.bus_capacity));
            st.trip.loads[std::stoi(it.key())] = static_cast<int>(students / den);
        }
        st.schedule.start = dm_from_minutes(t["start"].get<double>());
        st.schedule.travel_time = dm_from_minutes(t["tt"].get<double>());
        st.schedule.end = dm_from_minutes(t["end"].get<double>());
        trips.push_back(std::move(st));
    }
    return trips;
}

std::vector<SolutionTrip> load_solution(const std::filesystem::path& path,
                                        const Instance& inst) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return solution_from_json_text(text, inst);
}

std::string manifest_to_json_text(const RoutingSolution& sol, ObjectiveKind kind,
                                  std::uint64_t seed) {
    ordered_json j;
    j["objective_kind"] = to_string(kind);
    j["seed"] = seed;
    j["wall_time"] = sol.wall_time_sec;
    j["objective_value"] = sol.objective_value;
    if (sol.bound)
        j["bound"] = *sol.bound;
    else
        j["bound"] = nullptr;
    if (auto gap = sol.gap_pct())
        j["gap"] = *gap;
    else
        j["gap"] = nullptr;
    return j.dump(2) + "\n";
}

void save_manifest(const RoutingSolution& sol, ObjectiveKind kind, std::uint64_t seed,
                   const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path.string());
    out << manifest_to_json_text(sol, kind, seed);
}

std::string blocking_to_json_text(const BlockingSolution& sol) {
    ordered_json j;
    j["blocks"] = ordered_json::array();
    for (const auto& block : sol.blocks) j["blocks"].push_back(block.trips);
    j["bus_count"] = sol.bus_count;
    j["edges_used"] = sol.edges_used;
    return j.dump(2) + "\n";
}

void save_blocking(const BlockingSolution& sol, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path.string());
    out << blocking_to_json_text(sol);
}

}  // namespace sbr
