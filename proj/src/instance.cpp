#include "sbr/instance.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sbr/rng.hpp"

namespace sbr {

namespace {
constexpr Dm kDwell = 5;  // 0.5 min dwell folded into every leg
}

int School::total_students() const {
    int total = 0;
    for (const auto& [stop, count] : demand) total += count;
    return total;
}

void TravelTimeMatrix::metric_close() {
    for (std::size_t k = 0; k < n_; ++k)
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                d_[i * n_ + j] = std::min(d_[i * n_ + j], d_[i * n_ + k] + d_[k * n_ + j]);
}

bool TravelTimeMatrix::satisfies_triangle_inequality() const {
    for (std::size_t k = 0; k < n_; ++k)
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (d_[i * n_ + j] > d_[i * n_ + k] + d_[k * n_ + j]) return false;
    return true;
}

int Instance::stop_index(StopId id) const {
    for (std::size_t i = 0; i < stops.size(); ++i)
        if (stops[i].id == id) return static_cast<int>(i);
    return -1;
}

Dm Instance::travel(StopId from, StopId to) const {
    const int a = stop_index(from);
    const int b = stop_index(to);
    if (a < 0 || b < 0)
        throw DataError("travel time requested for unknown stop " +
                        std::to_string(a < 0 ? from : to));
    return matrix.at(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
}

const School* Instance::find_school(SchoolId id) const {
    for (const auto& s : schools)
        if (s.id == id) return &s;
    return nullptr;
}

TravelTimeMatrix matrix_from_geometry(const std::vector<Stop>& stops) {
    const std::size_t n = stops.size();
    TravelTimeMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double dx = stops[i].x - stops[j].x;
            const double dy = stops[i].y - stops[j].y;
            m.set(i, j, dm_from_minutes(std::sqrt(dx * dx + dy * dy)) + kDwell);
        }
    }
    m.metric_close();
    return m;
}

int minimum_trips(const School& school, int capacity) {
    if (capacity < 1) throw DataError("bus capacity must be at least 1");
    const int total = school.total_students();
    return (total + capacity - 1) / capacity;
}

Instance generate_scenario(const ScenarioSpec& spec) {
    if (spec.n_schools < 1)
        throw DataError("scenario needs at least one school");
    if (spec.n_stops < 1)
        throw DataError("scenario needs at least one stop");
    if (spec.n_stops < spec.n_schools)
        throw DataError("scenario needs at least one stop per school");
    if (spec.avg_students_per_school < 1)
        throw DataError("average students per school must be positive");
    if (spec.max_stops_per_school < 1)
        throw DataError("max stops per school must be positive");
    if (spec.dismissal_min > spec.dismissal_max)
        throw DataError("dismissal range is inverted");
    if (spec.dismissal_grid < 1) throw DataError("dismissal grid must be positive");
    if (spec.capacity < 1) throw DataError("bus capacity must be at least 1");

    Rng rng(spec.seed);
    Instance inst;
    inst.bus_capacity = spec.capacity;
    inst.buffer_pickup = 0;
    inst.additional_trips = 0;

    // Region side scales gently with stop count so stop spacing stays in the
    // few-minute range typical of an urban district.
    const double side = 12.0 + 1.2 * std::sqrt(static_cast<double>(spec.n_stops));

    inst.stops.reserve(static_cast<std::size_t>(spec.n_stops + spec.n_schools));
    for (int i = 0; i < spec.n_stops; ++i)
        inst.stops.push_back({i, rng.uniform_real(0.0, side), rng.uniform_real(0.0, side)});
    // School origins are stops of their own, appended after the student stops.
    std::vector<StopId> origins;
    for (int k = 0; k < spec.n_schools; ++k) {
        const StopId id = spec.n_stops + k;
        inst.stops.push_back({id, rng.uniform_real(0.0, side), rng.uniform_real(0.0, side)});
        origins.push_back(id);
    }

    inst.matrix = matrix_from_geometry(inst.stops);

    // Assign each stop to the nearest school that still has a free slot;
    // leftovers stay unassigned once every school is full.
    std::vector<School> schools(static_cast<std::size_t>(spec.n_schools));
    for (int k = 0; k < spec.n_schools; ++k) {
        schools[static_cast<std::size_t>(k)].id = k;
        schools[static_cast<std::size_t>(k)].origin_stop = origins[static_cast<std::size_t>(k)];
    }
    for (int s = 0; s < spec.n_stops; ++s) {
        int best = -1;
        Dm best_d = 0;
        for (int k = 0; k < spec.n_schools; ++k) {
            auto& school = schools[static_cast<std::size_t>(k)];
            if (static_cast<int>(school.assigned_stops.size()) >= spec.max_stops_per_school)
                continue;
            const Dm d = inst.travel(s, school.origin_stop);
            if (best < 0 || d < best_d) {
                best = k;
                best_d = d;
            }
        }
        if (best >= 0) schools[static_cast<std::size_t>(best)].assigned_stops.push_back(s);
    }
    // Proximity assignment can starve a school whose origin sits far from
    // every stop; rebalance by moving over the closest stop from the school
    // that currently holds the most.
    for (auto& school : schools) {
        if (!school.assigned_stops.empty()) continue;
        School* donor = nullptr;
        for (auto& other : schools)
            if (other.assigned_stops.size() > 1 &&
                (!donor || other.assigned_stops.size() > donor->assigned_stops.size()))
                donor = &other;
        if (!donor)
            throw DataError("school " + std::to_string(school.id) +
                            " received no stops; increase n_stops");
        StopId take = donor->assigned_stops.front();
        for (StopId s : donor->assigned_stops)
            if (inst.travel(s, school.origin_stop) < inst.travel(take, school.origin_stop))
                take = s;
        donor->assigned_stops.erase(
            std::find(donor->assigned_stops.begin(), donor->assigned_stops.end(), take));
        school.assigned_stops.push_back(take);
    }

    // Populations vary around the requested average, one student minimum per
    // stop, remainder spread by random weights.
    for (auto& school : schools) {
        const int n = static_cast<int>(school.assigned_stops.size());
        const int lo = std::max(n, (spec.avg_students_per_school * 7 + 9) / 10);
        const int hi = std::max(lo, (spec.avg_students_per_school * 13) / 10);
        const int population = static_cast<int>(rng.uniform_int(lo, hi));

        std::vector<int> weights(static_cast<std::size_t>(n));
        int weight_sum = 0;
        for (auto& w : weights) {
            w = static_cast<int>(rng.uniform_int(1, 9));
            weight_sum += w;
        }
        int assigned = 0;
        for (int i = 0; i < n; ++i) {
            int share = 1 + (population - n) * weights[static_cast<std::size_t>(i)] / weight_sum;
            if (i == n - 1) share = population - assigned;
            school.demand[school.assigned_stops[static_cast<std::size_t>(i)]] = share;
            assigned += share;
        }
    }

    // Dismissal times: discrete uniform on the grid inside the range.
    const std::int64_t slots = (spec.dismissal_max - spec.dismissal_min) / spec.dismissal_grid;
    for (auto& school : schools)
        school.dismissal =
            spec.dismissal_min + spec.dismissal_grid * rng.uniform_int(0, slots);

    inst.schools = std::move(schools);
    return inst;
}

std::vector<Violation> validate_instance(const Instance& inst) {
    std::vector<Violation> out;
    auto bad = [&out](std::string rule, std::string detail) {
        out.push_back({std::move(rule), std::move(detail)});
    };

    std::set<StopId> ids;
    for (const auto& stop : inst.stops)
        if (!ids.insert(stop.id).second)
            bad("stop-id-unique", "duplicate stop id " + std::to_string(stop.id));

    if (inst.matrix.size() != inst.stops.size())
        bad("matrix-size", "matrix is " + std::to_string(inst.matrix.size()) +
                               "x" + std::to_string(inst.matrix.size()) + " for " +
                               std::to_string(inst.stops.size()) + " stops");

    const std::size_t n = inst.matrix.size();
    bool nonneg = true, zero_diag = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (inst.matrix.at(i, i) != 0) zero_diag = false;
        for (std::size_t j = 0; j < n; ++j)
            if (inst.matrix.at(i, j) < 0) nonneg = false;
    }
    if (!nonneg) bad("matrix-nonnegativity", "negative travel time entry");
    if (!zero_diag) bad("matrix-zero-diagonal", "nonzero diagonal entry");
    if (nonneg && !inst.matrix.satisfies_triangle_inequality())
        bad("matrix-triangle", "matrix violates the triangle inequality");

    if (inst.bus_capacity < 1)
        bad("capacity-positive", "bus_capacity = " + std::to_string(inst.bus_capacity));
    if (inst.buffer_pickup < 0)
        bad("buffer-nonnegative", "buffer_pickup = " + minutes_str(inst.buffer_pickup));
    if (inst.additional_trips < 0)
        bad("additional-trips-nonnegative",
            "additional_trips = " + std::to_string(inst.additional_trips));

    std::set<SchoolId> school_ids;
    std::set<StopId> claimed;
    for (const auto& school : inst.schools) {
        const std::string tag = "school " + std::to_string(school.id);
        if (!school_ids.insert(school.id).second)
            bad("school-id-unique", "duplicate " + tag);
        if (!ids.count(school.origin_stop))
            bad("origin-known", tag + " origin stop " + std::to_string(school.origin_stop) +
                                    " is not a listed stop");
        const std::set<StopId> assigned(school.assigned_stops.begin(),
                                        school.assigned_stops.end());
        if (assigned.size() != school.assigned_stops.size())
            bad("assigned-stops-distinct", tag + " lists a stop twice");
        if (assigned.count(school.origin_stop))
            bad("origin-not-assigned", tag + " assigns its own origin stop");
        for (StopId s : school.assigned_stops) {
            if (!ids.count(s))
                bad("assigned-known", tag + " assigns unknown stop " + std::to_string(s));
            if (!claimed.insert(s).second)
                bad("disjoint-assignment",
                    "stop " + std::to_string(s) + " is assigned to two schools");
            auto it = school.demand.find(s);
            if (it == school.demand.end() || it->second < 1)
                bad("assigned-stop-has-demand",
                    tag + " stop " + std::to_string(s) + " has no students");
        }
        for (const auto& [s, count] : school.demand) {
            if (!assigned.count(s))
                bad("demand-within-assignment",
                    tag + " has demand at unassigned stop " + std::to_string(s));
            if (count < 0)
                bad("demand-nonnegative",
                    tag + " negative demand at stop " + std::to_string(s));
        }
    }
    return out;
}

}  // namespace sbr
