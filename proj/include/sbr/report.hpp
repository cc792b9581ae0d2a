#ifndef SBR_REPORT_HPP
#define SBR_REPORT_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sbr/blocking.hpp"
#include "sbr/solver.hpp"

namespace sbr {

struct ExperimentRow {
    std::string scenario;
    ObjectiveKind objective = ObjectiveKind::MaxComTT;
    double rt_sec = 0.0;
    std::optional<double> gap_pct;
    int n_trips = 0;
    int n_buses = 0;
    double total_tt_min = 0.0;
    std::string error;  // per-objective failure; empty on success
};

struct ExperimentRun {
    ExperimentRow row;
    std::map<int, int> histogram;  // travel-time bin start (min) -> trip count
    RoutingSolution routing;
    BlockingSolution blocking;
};

struct TradeoffSummary {
    double buses_saved_pct = 0.0;
    double extra_tt_per_bus = 0.0;  // minutes; negative when the new side is cheaper
};

/// Solves the instance once per objective (exact when the instance fits the
/// enumeration envelope, heuristic otherwise), chains the trips into blocks,
/// and records one row per objective. Failures land in the row's error field.
std::vector<ExperimentRun> run_experiment(const Instance& inst,
                                          std::span<const ObjectiveKind> objectives,
                                          const SolverConfig& config,
                                          const std::string& scenario_id);

/// Trip travel times bucketed into 5-minute bins, left-closed, keyed by the
/// bin's start minute.
std::map<int, int> travel_time_histogram(const std::vector<SolutionTrip>& trips);

/// Bus saving and travel-time price of the compatibility-aware side against
/// the traditional side. Rejects rows with zero buses.
TradeoffSummary tradeoff(const ExperimentRow& best_new, const ExperimentRow& best_trad);

/// Lowest bus count wins; ties break on lower total travel time.
const ExperimentRow* select_best(const std::vector<ExperimentRun>& runs,
                                 std::span<const ObjectiveKind> kinds);

/// Writes report.csv, report.json, histograms.csv and tradeoffs.csv into the
/// directory. Byte-identical across repeated calls on the same data.
void emit_reports(const std::vector<ExperimentRun>& runs,
                  const std::filesystem::path& dir);

bool instance_fits_exact_solver(const Instance& inst);

}  // namespace sbr

#endif
