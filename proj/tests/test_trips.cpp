#include <doctest.h>

#include "fixtures.hpp"
#include "sbr/rng.hpp"
#include "sbr/trip.hpp"

using namespace sbr;
using namespace sbr::testing;

TEST_CASE("trip travel time sums the open path") {
    const Instance inst = two_school_demo();

    Trip two_stop{0, 0, {1, 2}, {{1, 20}, {2, 20}}};
    CHECK(trip_travel_time(two_stop, inst) == 20 * kDmPerMinute);

    Trip one_stop{1, 0, {1}, {{1, 20}}};
    CHECK(trip_travel_time(one_stop, inst) == 10 * kDmPerMinute);

    // school 1's stop is co-located with the school
    Trip degenerate{2, 1, {5}, {{5, 30}}};
    CHECK(trip_travel_time(degenerate, inst) == 0);

    Trip unknown_stop{3, 0, {99}, {}};
    CHECK_THROWS_AS(trip_travel_time(unknown_stop, inst), DataError);
}

TEST_CASE("schedule_trip pins departure to the pickup window") {
    Instance inst = two_school_demo();
    Trip trip{0, 0, {1}, {{1, 20}}};

    // zero buffer forces start = dismissal
    const TripSchedule sched = schedule_trip(trip, inst, 0);
    CHECK(sched.start == 0);
    CHECK(sched.travel_time == 10 * kDmPerMinute);
    CHECK(sched.end == 10 * kDmPerMinute);
    CHECK_THROWS_AS(schedule_trip(trip, inst, 1), DataError);
    CHECK_THROWS_AS(schedule_trip(trip, inst, -1), DataError);

    // with a buffer the closing boundary is accepted
    inst.buffer_pickup = 15 * kDmPerMinute;
    const TripSchedule late = schedule_trip(trip, inst, 15 * kDmPerMinute);
    CHECK(late.start == 15 * kDmPerMinute);
    CHECK(late.end == 25 * kDmPerMinute);
    CHECK_THROWS_AS(schedule_trip(trip, inst, 16 * kDmPerMinute), DataError);
}

TEST_CASE("deadhead runs from the last stop to the next school") {
    const Instance inst = two_school_demo();
    const auto trips = demo_compatible_solution(inst);

    CHECK(deadhead(trips[0].trip, trips[2].trip, inst) == 10 * kDmPerMinute);
    CHECK(deadhead(trips[1].trip, trips[2].trip, inst) == 10 * kDmPerMinute);
    // school 1's trip ends at the stop co-located with its own school
    CHECK(deadhead(trips[2].trip, trips[2].trip, inst) == 0);
    CHECK(deadhead(trips[2].trip, trips[0].trip, inst) == 20 * kDmPerMinute);
}

TEST_CASE("compatibility follows end + deadhead <= start") {
    const Instance inst = two_school_demo();
    const auto good = demo_compatible_solution(inst);
    const auto tight = demo_mintt_solution(inst);

    // 10 + 10 <= 20: the short school-0 trip reaches school 1 exactly on time
    CHECK(is_compatible(good[0].trip, good[0].schedule, good[2].trip, good[2].schedule,
                        inst));
    // 20 + 10 > 20: the travel-time-minimal split misses school 1
    CHECK_FALSE(is_compatible(tight[0].trip, tight[0].schedule, tight[2].trip,
                              tight[2].schedule, inst));
    CHECK_FALSE(is_compatible(tight[1].trip, tight[1].schedule, tight[2].trip,
                              tight[2].schedule, inst));
    // never compatible with itself
    CHECK_FALSE(is_compatible(good[2].trip, good[2].schedule, good[2].trip,
                              good[2].schedule, inst));
}

TEST_CASE("compatibility monotonicity in start and travel time") {
    const Instance inst = two_school_demo();
    const auto trips = demo_compatible_solution(inst);

    // pushing the follower's start later never removes the edge
    TripSchedule later = trips[2].schedule;
    for (Dm shift = 0; shift <= 100; shift += 10) {
        later.start = trips[2].schedule.start + shift;
        later.end = later.start + later.travel_time;
        CHECK(is_compatible(trips[0].trip, trips[0].schedule, trips[2].trip, later, inst));
    }
    // growing the leader's travel time never adds an edge
    TripSchedule longer = trips[1].schedule;
    bool was_compatible =
        is_compatible(trips[1].trip, longer, trips[2].trip, trips[2].schedule, inst);
    for (Dm extra = 0; extra <= 200; extra += 10) {
        longer.travel_time = trips[1].schedule.travel_time + extra;
        longer.end = longer.start + longer.travel_time;
        const bool now =
            is_compatible(trips[1].trip, longer, trips[2].trip, trips[2].schedule, inst);
        CHECK((was_compatible || !now));
        was_compatible = now;
    }
}

TEST_CASE("compatibility graph over the demo solutions") {
    const Instance inst = two_school_demo();

    const auto good = demo_compatible_solution(inst);
    const CompatibilityGraph g1 = build_compatibility_graph(good, inst);
    CHECK(g1.nodes.size() == 3);
    REQUIRE(g1.edges.size() == 1);
    CHECK(g1.edges[0] == std::pair<TripId, TripId>{0, 2});
    CHECK(g1.has_edge(0, 2));
    CHECK_FALSE(g1.has_edge(2, 0));
    CHECK(g1.deadhead.size() == 6);  // all ordered pairs

    const auto tight = demo_mintt_solution(inst);
    CHECK(build_compatibility_graph(tight, inst).edges.empty());

    const std::vector<SolutionTrip> single = {good[0]};
    CHECK(build_compatibility_graph(single, inst).edges.empty());
}

TEST_CASE("compatibility graph is a DAG on generated instances") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        ScenarioSpec spec;
        spec.n_stops = 18;
        spec.n_schools = 3;
        spec.avg_students_per_school = 70;
        spec.max_stops_per_school = 6;
        spec.dismissal_min = 0;
        spec.dismissal_max = 30 * kDmPerMinute;
        spec.seed = seed;
        const Instance inst = generate_scenario(spec);

        // quick feasible solution: one stop per trip as far as capacity allows
        std::vector<SolutionTrip> trips;
        int id = 0;
        for (const auto& school : inst.schools) {
            std::map<StopId, int> remaining = school.demand;
            while (!remaining.empty()) {
                Trip t;
                t.id = id++;
                t.school = school.id;
                int spare = inst.bus_capacity;
                for (auto it = remaining.begin(); it != remaining.end() && spare > 0;) {
                    const int q = std::min(spare, it->second);
                    t.stops.push_back(it->first);
                    t.loads[it->first] = q;
                    spare -= q;
                    it->second -= q;
                    it = it->second == 0 ? remaining.erase(it) : std::next(it);
                }
                SolutionTrip st{t, schedule_trip(t, inst, school.dismissal)};
                trips.push_back(std::move(st));
            }
        }
        const CompatibilityGraph g = build_compatibility_graph(trips, inst);
        // edges only ever point from strictly earlier starts to later ones
        std::map<TripId, Dm> start;
        for (const auto& st : trips) start[st.trip.id] = st.schedule.start;
        for (const auto& [a, b] : g.edges) CHECK(start[a] < start[b]);
    }
}

TEST_CASE("feasibility checker accepts the demo solutions") {
    const Instance inst = two_school_demo();
    CHECK(check_routing_feasibility(demo_compatible_solution(inst), inst).empty());
    CHECK(check_routing_feasibility(demo_mintt_solution(inst), inst).empty());
}

TEST_CASE("feasibility checker pinpoints broken solutions") {
    const Instance inst = two_school_demo();
    auto trips = demo_compatible_solution(inst);

    SUBCASE("dropping a trip leaves demand and the count bound unmet") {
        trips.erase(trips.begin() + 1);
        const auto violations = check_routing_feasibility(trips, inst);
        bool coverage = false, count = false;
        for (const auto& v : violations) {
            if (v.rule == "demand-coverage") coverage = true;
            if (v.rule == "trip-count-bounds") count = true;
        }
        CHECK(coverage);
        CHECK(count);
    }
    SUBCASE("overloading a bus") {
        trips[0].trip.loads[1] = 58;  // > 48
        bool found = false;
        for (const auto& v : check_routing_feasibility(trips, inst))
            if (v.rule == "trip-capacity") found = true;
        CHECK(found);
    }
    SUBCASE("load at an unvisited stop") {
        trips[0].trip.loads[2] = 1;
        bool found = false;
        for (const auto& v : check_routing_feasibility(trips, inst))
            if (v.rule == "load-at-visited-stop") found = true;
        CHECK(found);
    }
    SUBCASE("revisiting a stop inside one trip") {
        trips[1].trip.stops = {2, 3, 2};
        bool found = false;
        for (const auto& v : check_routing_feasibility(trips, inst))
            if (v.rule == "simple-path") found = true;
        CHECK(found);
    }
    SUBCASE("visiting another school's stop") {
        trips[0].trip.stops = {1, 5};
        bool found = false;
        for (const auto& v : check_routing_feasibility(trips, inst))
            if (v.rule == "stop-assignment") found = true;
        CHECK(found);
    }
    SUBCASE("stale schedule") {
        trips[0].schedule.end += 5;
        bool found = false;
        for (const auto& v : check_routing_feasibility(trips, inst))
            if (v.rule == "end-time") found = true;
        CHECK(found);
    }
}

TEST_CASE("split loads across trips are legal") {
    const Instance inst = two_school_demo();
    // stop 2's twenty students ride on both school-0 buses
    auto trips = std::vector<SolutionTrip>{
        make_trip(0, 0, {1, 2}, {{1, 20}, {2, 8}}, inst),
        make_trip(1, 0, {2, 3}, {{2, 12}, {3, 20}}, inst),
        make_trip(2, 1, {5}, {{5, 30}}, inst),
    };
    CHECK(check_routing_feasibility(trips, inst).empty());
}
