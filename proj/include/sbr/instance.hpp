#ifndef SBR_INSTANCE_HPP
#define SBR_INSTANCE_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sbr/units.hpp"

namespace sbr {

using StopId = int;
using SchoolId = int;

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Stop {
    StopId id = 0;
    double x = 0.0;  // abstract distance units (1 unit = 1 travel minute)
    double y = 0.0;
};

struct School {
    SchoolId id = 0;
    StopId origin_stop = 0;
    Dm dismissal = 0;                    // time the school closes
    std::map<StopId, int> demand;        // students waiting per stop
    std::vector<StopId> assigned_stops;  // stops reserved for this school

    int total_students() const;
};

/// Symmetric travel durations between stops, dwell time included.
/// Indexed by position of the stop in Instance::stops.
class TravelTimeMatrix {
public:
    TravelTimeMatrix() = default;
    explicit TravelTimeMatrix(std::size_t n) : n_(n), d_(n * n, 0) {}

    std::size_t size() const { return n_; }
    Dm at(std::size_t a, std::size_t b) const { return d_[a * n_ + b]; }
    void set(std::size_t a, std::size_t b, Dm v) { d_[a * n_ + b] = v; }

    // Replaces every entry with the shortest-path duration, so a trip that
    // "just passes through" an intermediate stop needs no explicit visit.
    void metric_close();
    bool satisfies_triangle_inequality() const;

    bool operator==(const TravelTimeMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<Dm> d_;
};

struct Instance {
    std::vector<Stop> stops;
    std::vector<School> schools;
    TravelTimeMatrix matrix;
    int bus_capacity = 48;
    Dm buffer_pickup = 0;     // pickup slack after dismissal; 0 for PM trips
    int additional_trips = 0; // allowed surplus over each school's minimum

    int stop_index(StopId id) const;  // -1 when unknown
    Dm travel(StopId from, StopId to) const;
    const School* find_school(SchoolId id) const;
};

struct ScenarioSpec {
    int n_stops = 0;
    int n_schools = 0;
    int avg_students_per_school = 0;
    int max_stops_per_school = 0;
    Dm dismissal_min = 0;
    Dm dismissal_max = 0;
    Dm dismissal_grid = 15 * kDmPerMinute;
    int capacity = 48;
    std::uint64_t seed = 0;
};

struct Violation {
    std::string rule;
    std::string detail;
};

/// Builds a random instance shaped by the scenario parameters: stops uniform
/// in a square region, each assigned to its nearest school with a free slot,
/// per-school populations spread around the requested average, dismissal
/// times on the minute grid. Deterministic for a fixed spec.
Instance generate_scenario(const ScenarioSpec& spec);

/// Fewest trips that can carry a school's population: ceil(students/capacity).
int minimum_trips(const School& school, int capacity);

/// Reports every broken data-model invariant; empty means well formed.
std::vector<Violation> validate_instance(const Instance& inst);

/// Travel-time matrix from stop coordinates: Euclidean minutes plus a fixed
/// per-stop dwell, then metric closure.
TravelTimeMatrix matrix_from_geometry(const std::vector<Stop>& stops);

}  // namespace sbr

#endif
