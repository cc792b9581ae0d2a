#ifndef SBR_SOLVER_HPP
#define SBR_SOLVER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sbr/instance.hpp"
#include "sbr/objective.hpp"
#include "sbr/trip.hpp"

namespace sbr {

/// Local-search move kinds, combinable as a bitmask.
namespace moves {
inline constexpr unsigned kRelocate = 1u << 0;
inline constexpr unsigned kSwap = 1u << 1;
inline constexpr unsigned kTwoOpt = 1u << 2;
inline constexpr unsigned kShiftLoad = 1u << 3;
inline constexpr unsigned kResplit = 1u << 4;
inline constexpr unsigned kAll = (1u << 5) - 1;
}  // namespace moves

struct SolverConfig {
    double time_limit_sec = 60.0;
    std::uint64_t seed = 0;
    ObjectiveKind objective = ObjectiveKind::MaxComTT;
    double trip_penalty = 1000.0;
    double compat_benefit = 200.0;
    unsigned neighborhood_ops = moves::kAll;
    int restarts = 3;
    std::function<void(const struct RoutingSolution&)> on_incumbent;
};

struct RoutingSolution {
    std::vector<SolutionTrip> trips;
    double objective_value = 0.0;
    std::optional<double> bound;  // set when optimality is proven
    double wall_time_sec = 0.0;

    std::optional<double> gap_pct() const;
};

/// Objective value of a trip set under the chosen kind. Travel time counts
/// in minutes; each trip and each compatibility edge weigh in per the kind.
double evaluate_objective(const std::vector<SolutionTrip>& trips,
                          const CompatibilityGraph& compat, ObjectiveKind kind,
                          double trip_penalty = 1000.0, double compat_benefit = 200.0);

/// Provably optimal solution for desk-scale instances. Requires a zero
/// pickup buffer (departures pinned to dismissal) and refuses instances
/// whose per-school search space is out of enumeration reach; intended
/// envelope is at most ~12 stops per school and ~8 trips overall.
RoutingSolution solve_exact(const Instance& inst, const SolverConfig& config);

/// Nearest-neighbor construction then first-improvement local search over
/// the configured move set, restarted per config. Always feasible.
RoutingSolution solve_heuristic(const Instance& inst, const SolverConfig& config);

}  // namespace sbr

#endif
