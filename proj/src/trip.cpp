#include "sbr/trip.hpp"

#include <string>

namespace sbr {

int Trip::students_carried() const {
    int total = 0;
    for (const auto& [stop, count] : loads) total += count;
    return total;
}

Dm trip_travel_time(const Trip& trip, const Instance& inst) {
    const School* school = inst.find_school(trip.school);
    if (!school) throw DataError("trip " + std::to_string(trip.id) + " names unknown school");
    if (trip.stops.empty())
        throw DataError("trip " + std::to_string(trip.id) + " has no stops");
    Dm total = inst.travel(school->origin_stop, trip.stops.front());
    for (std::size_t i = 0; i + 1 < trip.stops.size(); ++i)
        total += inst.travel(trip.stops[i], trip.stops[i + 1]);
    return total;
}

TripSchedule schedule_trip(const Trip& trip, const Instance& inst, Dm start) {
    const School* school = inst.find_school(trip.school);
    if (!school) throw DataError("trip " + std::to_string(trip.id) + " names unknown school");
    if (start < school->dismissal || start > school->dismissal + inst.buffer_pickup)
        throw DataError("trip " + std::to_string(trip.id) + " start " + minutes_str(start) +
                        " outside pickup window [" + minutes_str(school->dismissal) + ", " +
                        minutes_str(school->dismissal + inst.buffer_pickup) + "]");
    TripSchedule sched;
    sched.start = start;
    sched.travel_time = trip_travel_time(trip, inst);
    sched.end = sched.start + sched.travel_time;
    return sched;
}

Dm deadhead(const Trip& t1, const Trip& t2, const Instance& inst) {
    const School* to_school = inst.find_school(t2.school);
    if (!to_school) throw DataError("trip " + std::to_string(t2.id) + " names unknown school");
    if (t1.stops.empty())
        throw DataError("trip " + std::to_string(t1.id) + " has no stops");
    return inst.travel(t1.stops.back(), to_school->origin_stop);
}

bool is_compatible(const Trip& t1, const TripSchedule& s1, const Trip& t2,
                   const TripSchedule& s2, const Instance& inst) {
    if (t1.id == t2.id) return false;  // a bus cannot follow a trip with itself
    return s1.end + deadhead(t1, t2, inst) <= s2.start;
}

CompatibilityGraph build_compatibility_graph(const std::vector<SolutionTrip>& trips,
                                             const Instance& inst) {
    CompatibilityGraph g;
    for (const auto& st : trips) g.nodes.push_back(st.trip.id);
    for (const auto& a : trips) {
        for (const auto& b : trips) {
            if (a.trip.id == b.trip.id) continue;
            const Dm dd = deadhead(a.trip, b.trip, inst);
            g.deadhead[{a.trip.id, b.trip.id}] = dd;
            if (a.schedule.end + dd <= b.schedule.start)
                g.add_edge(a.trip.id, b.trip.id);
        }
    }
    return g;
}

std::vector<Violation> check_routing_feasibility(const std::vector<SolutionTrip>& trips,
                                                 const Instance& inst) {
    std::vector<Violation> out;
    auto bad = [&out](std::string rule, std::string detail) {
        out.push_back({std::move(rule), std::move(detail)});
    };

    std::set<TripId> trip_ids;
    std::map<SchoolId, int> trips_per_school;
    // carried[school][stop] accumulates students picked up across trips
    std::map<SchoolId, std::map<StopId, int>> carried;

    for (const auto& st : trips) {
        const Trip& trip = st.trip;
        const std::string tag = "trip " + std::to_string(trip.id);
        if (!trip_ids.insert(trip.id).second) bad("trip-id-unique", "duplicate " + tag);

        const School* school = inst.find_school(trip.school);
        if (!school) {
            bad("trip-school-known", tag + " names unknown school " + std::to_string(trip.school));
            continue;
        }
        ++trips_per_school[trip.school];

        if (trip.stops.empty()) {
            bad("trip-nonempty", tag + " visits no stops");
            continue;
        }
        const std::set<StopId> assigned(school->assigned_stops.begin(),
                                        school->assigned_stops.end());
        std::set<StopId> seen;
        for (StopId s : trip.stops) {
            if (!seen.insert(s).second)
                bad("simple-path", tag + " visits stop " + std::to_string(s) + " twice");
            if (!assigned.count(s))
                bad("stop-assignment", tag + " visits stop " + std::to_string(s) +
                                           " not assigned to school " +
                                           std::to_string(trip.school));
        }

        int trip_load = 0;
        for (const auto& [stop, count] : trip.loads) {
            if (!seen.count(stop))
                bad("load-at-visited-stop", tag + " loads students at unvisited stop " +
                                                std::to_string(stop));
            if (count <= 0)
                bad("load-positive", tag + " has nonpositive load at stop " +
                                         std::to_string(stop));
            trip_load += count;
            carried[trip.school][stop] += count;
        }
        if (trip_load > inst.bus_capacity)
            bad("trip-capacity", tag + " carries " + std::to_string(trip_load) + " > " +
                                     std::to_string(inst.bus_capacity));

        // Schedule consistency: start inside the pickup window, end identity,
        // travel time matching the path.
        if (st.schedule.start < school->dismissal ||
            st.schedule.start > school->dismissal + inst.buffer_pickup)
            bad("start-window", tag + " starts at " + minutes_str(st.schedule.start) +
                                    " outside the pickup window");
        const Dm tt = trip_travel_time(trip, inst);
        if (st.schedule.travel_time != tt)
            bad("travel-time", tag + " schedule claims " + minutes_str(st.schedule.travel_time) +
                                   " but the path takes " + minutes_str(tt));
        if (st.schedule.end != st.schedule.start + st.schedule.travel_time)
            bad("end-time", tag + " end differs from start + travel time");
    }

    for (const auto& school : inst.schools) {
        const std::string tag = "school " + std::to_string(school.id);
        for (const auto& [stop, demand] : school.demand) {
            const auto& got = carried[school.id];
            auto it = got.find(stop);
            const int served = it == got.end() ? 0 : it->second;
            if (served != demand)
                bad("demand-coverage", tag + " stop " + std::to_string(stop) + " serves " +
                                           std::to_string(served) + " of " +
                                           std::to_string(demand) + " students");
        }
        const int lo = minimum_trips(school, inst.bus_capacity);
        const int hi = lo + inst.additional_trips;
        const int got = trips_per_school.count(school.id) ? trips_per_school[school.id] : 0;
        if (got < lo || got > hi)
            bad("trip-count-bounds", tag + " uses " + std::to_string(got) +
                                         " trips outside [" + std::to_string(lo) + ", " +
                                         std::to_string(hi) + "]");
    }
    return out;
}

}  // namespace sbr
