#ifndef SBR_TRIP_HPP
#define SBR_TRIP_HPP

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "sbr/instance.hpp"

namespace sbr {

using TripId = int;

/// An open path: departs the school, serves its stop sequence in order, and
/// ends at the last stop (no return leg). Loads are integer student counts;
/// the capacity fraction a stop consumes is loads[s] / bus_capacity.
struct Trip {
    TripId id = 0;
    SchoolId school = 0;
    std::vector<StopId> stops;
    std::map<StopId, int> loads;

    int students_carried() const;
};

struct TripSchedule {
    Dm start = 0;
    Dm travel_time = 0;
    Dm end = 0;
};

struct SolutionTrip {
    Trip trip;
    TripSchedule schedule;
};

/// Directed relation "t2 can be served after t1 by the same bus".
struct CompatibilityGraph {
    std::vector<TripId> nodes;
    std::vector<std::pair<TripId, TripId>> edges;
    std::map<std::pair<TripId, TripId>, Dm> deadhead;

    bool has_edge(TripId a, TripId b) const {
        return edge_set_.count({a, b}) != 0;
    }
    void add_edge(TripId a, TripId b) {
        edges.emplace_back(a, b);
        edge_set_.insert({a, b});
    }

private:
    std::set<std::pair<TripId, TripId>> edge_set_;
};

/// Duration of the open path: school to first stop plus the stop-to-stop legs.
Dm trip_travel_time(const Trip& trip, const Instance& inst);

/// Fixes the departure time; must lie inside the school's pickup window.
TripSchedule schedule_trip(const Trip& trip, const Instance& inst, Dm start);

/// Empty-bus leg from t1's last stop to the origin school of t2.
Dm deadhead(const Trip& t1, const Trip& t2, const Instance& inst);

bool is_compatible(const Trip& t1, const TripSchedule& s1, const Trip& t2,
                   const TripSchedule& s2, const Instance& inst);

CompatibilityGraph build_compatibility_graph(const std::vector<SolutionTrip>& trips,
                                             const Instance& inst);

/// Checks a full trip set against the routing rules: exact demand coverage,
/// per-trip capacity, loads only at visited stops, per-school trip-count
/// bounds, simple-path structure, and schedule consistency.
std::vector<Violation> check_routing_feasibility(const std::vector<SolutionTrip>& trips,
                                                 const Instance& inst);

}  // namespace sbr

#endif
