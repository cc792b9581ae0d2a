#ifndef SBR_TESTS_FIXTURES_HPP
#define SBR_TESTS_FIXTURES_HPP

#include <filesystem>

#include "sbr/instance_io.hpp"
#include "sbr/trip.hpp"

namespace sbr::testing {

// The bundled two-school example: school 0 closes at 0 with 60 students over
// stops {1, 2, 3}; school 1 closes at 20 min with one co-located stop. Legs
// are multiples of 10 minutes; capacity 48 forces two trips for school 0.
inline Instance two_school_demo() {
    return load_instance(std::filesystem::path(SBR_DATA_DIR) / "two_school_demo.json");
}

inline SolutionTrip make_trip(int id, SchoolId school, std::vector<StopId> stops,
                              std::map<StopId, int> loads, const Instance& inst) {
    SolutionTrip st;
    st.trip.id = id;
    st.trip.school = school;
    st.trip.stops = std::move(stops);
    st.trip.loads = std::move(loads);
    st.schedule = schedule_trip(st.trip, inst, inst.find_school(school)->dismissal);
    return st;
}

// Short-trip split: school 0 sends one bus to stop 1 only, the second covers
// stops 2 and 3; the first bus can reach school 1 in time.
inline std::vector<SolutionTrip> demo_compatible_solution(const Instance& inst) {
    return {
        make_trip(0, 0, {1}, {{1, 20}}, inst),
        make_trip(1, 0, {2, 3}, {{2, 20}, {3, 20}}, inst),
        make_trip(2, 1, {5}, {{5, 30}}, inst),
    };
}

// Travel-time-minimal split: 20 + 20 minutes, nothing reaches school 1.
inline std::vector<SolutionTrip> demo_mintt_solution(const Instance& inst) {
    return {
        make_trip(0, 0, {1, 2}, {{1, 20}, {2, 20}}, inst),
        make_trip(1, 0, {3}, {{3, 20}}, inst),
        make_trip(2, 1, {5}, {{5, 30}}, inst),
    };
}

}  // namespace sbr::testing

#endif
