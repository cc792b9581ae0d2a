#include "sbr/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace sbr {

using nlohmann::ordered_json;

namespace {

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

}  // namespace

bool instance_fits_exact_solver(const Instance& inst) {
    if (inst.buffer_pickup != 0) return false;
    int slots = 0;
    for (const auto& school : inst.schools) {
        if (school.assigned_stops.size() > 10) return false;
        slots += minimum_trips(school, inst.bus_capacity) + inst.additional_trips;
    }
    return slots <= 10;
}

std::vector<ExperimentRun> run_experiment(const Instance& inst,
                                          std::span<const ObjectiveKind> objectives,
                                          const SolverConfig& config,
                                          const std::string& scenario_id) {
    std::vector<ExperimentRun> runs;
    const bool exact = instance_fits_exact_solver(inst);
    for (ObjectiveKind kind : objectives) {
        ExperimentRun run;
        run.row.scenario = scenario_id;
        run.row.objective = kind;
        SolverConfig cfg = config;
        cfg.objective = kind;
        try {
            run.routing = exact ? solve_exact(inst, cfg) : solve_heuristic(inst, cfg);
            const CompatibilityGraph compat =
                build_compatibility_graph(run.routing.trips, inst);
            run.blocking = solve_blocking(compat);

            run.row.rt_sec = run.routing.wall_time_sec;
            run.row.gap_pct = run.routing.gap_pct();
            run.row.n_trips = static_cast<int>(run.routing.trips.size());
            run.row.n_buses = run.blocking.bus_count;
            Dm total_tt = 0;
            for (const auto& st : run.routing.trips)
                total_tt += st.schedule.travel_time;
            run.row.total_tt_min = minutes(total_tt);
            run.histogram = travel_time_histogram(run.routing.trips);
        } catch (const std::exception& e) {
            run.row.error = e.what();
        }
        runs.push_back(std::move(run));
    }
    return runs;
}

std::map<int, int> travel_time_histogram(const std::vector<SolutionTrip>& trips) {
    std::map<int, int> bins;
    for (const auto& st : trips) {
        const int bin = static_cast<int>(st.schedule.travel_time / (5 * kDmPerMinute)) * 5;
        ++bins[bin];
    }
    return bins;
}

TradeoffSummary tradeoff(const ExperimentRow& best_new, const ExperimentRow& best_trad) {
    if (best_new.n_buses <= 0 || best_trad.n_buses <= 0)
        throw std::invalid_argument("tradeoff undefined for zero-bus rows");
    if (best_new.scenario != best_trad.scenario)
        throw std::invalid_argument("tradeoff rows must come from the same scenario");
    TradeoffSummary s;
    s.buses_saved_pct = 100.0 * (best_trad.n_buses - best_new.n_buses) / best_trad.n_buses;
    s.extra_tt_per_bus = best_new.total_tt_min / best_new.n_buses -
                         best_trad.total_tt_min / best_trad.n_buses;
    return s;
}

const ExperimentRow* select_best(const std::vector<ExperimentRun>& runs,
                                 std::span<const ObjectiveKind> kinds) {
    const ExperimentRow* best = nullptr;
    for (const auto& run : runs) {
        if (!run.row.error.empty()) continue;
        if (std::find(kinds.begin(), kinds.end(), run.row.objective) == kinds.end())
            continue;
        if (!best || run.row.n_buses < best->n_buses ||
            (run.row.n_buses == best->n_buses && run.row.total_tt_min < best->total_tt_min))
            best = &run.row;
    }
    return best;
}

void emit_reports(const std::vector<ExperimentRun>& runs,
                  const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);

    // Table rows, one line per (scenario, objective).
    {
        std::ofstream csv(dir / "report.csv", std::ios::binary);
        if (!csv) throw std::runtime_error("cannot write report.csv");
        csv << "scenario,objective,rt_sec,gap_pct,n_trips,n_buses,total_tt_min\n";
        for (const auto& run : runs) {
            const auto& row = run.row;
            csv << row.scenario << "," << to_string(row.objective) << ",";
            if (row.error.empty()) {
                csv << fixed(row.rt_sec, 3) << ",";
                csv << (row.gap_pct ? fixed(*row.gap_pct, 2) : "") << ",";
                csv << row.n_trips << "," << row.n_buses << ","
                    << fixed(row.total_tt_min, 1);
            } else {
                csv << ",,,,";
            }
            csv << "\n";
        }
    }

    // Histogram points, plot-ready.
    {
        std::ofstream csv(dir / "histograms.csv", std::ios::binary);
        if (!csv) throw std::runtime_error("cannot write histograms.csv");
        csv << "scenario,objective,bin_start_min,trips\n";
        for (const auto& run : runs)
            for (const auto& [bin, count] : run.histogram)
                csv << run.row.scenario << "," << to_string(run.row.objective) << ","
                    << bin << "," << count << "\n";
    }

    // Per-scenario tradeoff of best proposed vs best traditional rows.
    std::vector<std::string> scenario_order;
    std::map<std::string, std::vector<ExperimentRun>> by_scenario;
    for (const auto& run : runs) {
        if (!by_scenario.count(run.row.scenario)) scenario_order.push_back(run.row.scenario);
        // Rebuild light copies holding only rows; histograms are not needed.
        ExperimentRun light;
        light.row = run.row;
        by_scenario[run.row.scenario].push_back(std::move(light));
    }
    static constexpr ObjectiveKind kProposed[] = {ObjectiveKind::MaxComTT,
                                                  ObjectiveKind::MaxCom};
    static constexpr ObjectiveKind kTraditional[] = {ObjectiveKind::MinN,
                                                     ObjectiveKind::MinTT};
    std::map<std::string, TradeoffSummary> tradeoffs;
    {
        std::ofstream csv(dir / "tradeoffs.csv", std::ios::binary);
        if (!csv) throw std::runtime_error("cannot write tradeoffs.csv");
        csv << "scenario,buses_saved_pct,extra_tt_per_bus_min\n";
        for (const auto& scenario : scenario_order) {
            const auto& group = by_scenario[scenario];
            const ExperimentRow* best_new = select_best(group, kProposed);
            const ExperimentRow* best_trad = select_best(group, kTraditional);
            if (!best_new || !best_trad || best_new->n_buses <= 0 || best_trad->n_buses <= 0)
                continue;
            const TradeoffSummary t = tradeoff(*best_new, *best_trad);
            tradeoffs[scenario] = t;
            csv << scenario << "," << fixed(t.buses_saved_pct, 2) << ","
                << fixed(t.extra_tt_per_bus, 2) << "\n";
        }
    }

    // Full JSON: rows plus histograms plus tradeoffs.
    {
        ordered_json j;
        j["rows"] = ordered_json::array();
        for (const auto& run : runs) {
            const auto& row = run.row;
            ordered_json r;
            r["scenario"] = row.scenario;
            r["objective"] = to_string(row.objective);
            if (row.error.empty()) {
                r["rt_sec"] = row.rt_sec;
                if (row.gap_pct)
                    r["gap_pct"] = *row.gap_pct;
                else
                    r["gap_pct"] = nullptr;
                r["n_trips"] = row.n_trips;
                r["n_buses"] = row.n_buses;
                r["total_tt_min"] = row.total_tt_min;
                ordered_json hist = ordered_json::object();
                for (const auto& [bin, count] : run.histogram)
                    hist[std::to_string(bin)] = count;
                r["histogram"] = std::move(hist);
            } else {
                r["error"] = row.error;
            }
            j["rows"].push_back(std::move(r));
        }
        ordered_json t = ordered_json::object();
        for (const auto& [scenario, summary] : tradeoffs)
            t[scenario] = {{"buses_saved_pct", summary.buses_saved_pct},
                           {"extra_tt_per_bus_min", summary.extra_tt_per_bus}};
        j["tradeoffs"] = std::move(t);

        std::ofstream out(dir / "report.json", std::ios::binary);
        if (!out) throw std::runtime_error("cannot write report.json");
        out << j.dump(2) << "\n";
    }
}

}  // namespace sbr
