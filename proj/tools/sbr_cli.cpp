#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sbr/blocking.hpp"
#include "sbr/instance_io.hpp"
#include "sbr/model.hpp"
#include "sbr/mps.hpp"
#include "sbr/report.hpp"
#include "sbr/solution_io.hpp"
#include "sbr/solver.hpp"

namespace {

sbr::ObjectiveKind parse_objective(const std::string& name) {
    const auto kind = sbr::objective_from_string(name);
    if (!kind)
        throw CLI::ValidationError("--objective",
                                   "expected one of maxcom+tt|maxcom|minn|mintt, got " + name);
    return *kind;
}

std::vector<sbr::ObjectiveKind> parse_objectives(const std::string& list) {
    if (list == "all")
        return {sbr::kAllObjectives.begin(), sbr::kAllObjectives.end()};
    std::vector<sbr::ObjectiveKind> kinds;
    std::size_t from = 0;
    while (from <= list.size()) {
        const std::size_t comma = list.find(',', from);
        const std::string token =
            list.substr(from, comma == std::string::npos ? std::string::npos : comma - from);
        if (!token.empty()) kinds.push_back(parse_objective(token));
        if (comma == std::string::npos) break;
        from = comma + 1;
    }
    if (kinds.empty()) throw CLI::ValidationError("--objectives", "no objectives given");
    return kinds;
}

sbr::Instance load_with_warnings(const std::string& path) {
    std::vector<std::string> warnings;
    sbr::Instance inst = sbr::load_instance(path, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    return inst;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"school bus routing for trip compatibility: generator, solvers, "
                 "blocking, model export, experiment reports"};
    app.require_subcommand(1);

    // generate
    std::string gen_spec, gen_out;
    std::uint64_t gen_seed = 0;
    bool gen_seed_given = false;
    int gen_additional = 0;
    auto* generate = app.add_subcommand("generate", "generate a random instance");
    generate->add_option("--spec", gen_spec, "scenario spec JSON")->required();
    generate->add_option("--seed", gen_seed, "override the spec's seed")
        ->each([&](const std::string&) { gen_seed_given = true; });
    generate->add_option("--additional-trips", gen_additional,
                         "allowed trips over each school's minimum")
        ->check(CLI::NonNegativeNumber);
    generate->add_option("-o,--output", gen_out, "instance JSON to write")->required();

    // solve
    std::string solve_instance, solve_objective = "maxcom+tt", solve_out;
    double solve_time_limit = 60.0;
    std::uint64_t solve_seed = 0;
    bool solve_heur = false;
    auto* solve = app.add_subcommand("solve", "solve the routing problem");
    solve->add_option("--instance", solve_instance, "instance JSON")->required();
    solve->add_option("--objective", solve_objective, "maxcom+tt|maxcom|minn|mintt");
    solve->add_option("--time-limit", solve_time_limit, "seconds");
    solve->add_option("--seed", solve_seed, "heuristic seed");
    solve->add_flag("--heuristic", solve_heur, "force the heuristic solver");
    solve->add_option("-o,--output", solve_out, "solution JSON to write")->required();

    // block
    std::string block_solution, block_instance, block_out;
    auto* block = app.add_subcommand("block", "chain a routing solution into buses");
    block->add_option("--solution", block_solution, "solution JSON")->required();
    block->add_option("--instance", block_instance, "instance JSON the solution solves")
        ->required();
    block->add_option("-o,--output", block_out, "blocking JSON to write")->required();

    // experiment
    std::string exp_dir, exp_objectives = "all", exp_out;
    double exp_time_limit = 60.0;
    std::uint64_t exp_seed = 0;
    auto* experiment =
        app.add_subcommand("experiment", "run objectives over an instance directory");
    experiment->add_option("--instances", exp_dir, "directory of instance JSON files")
        ->required();
    experiment->add_option("--objectives", exp_objectives, "all or comma list");
    experiment->add_option("--time-limit", exp_time_limit, "seconds per solve");
    experiment->add_option("--seed", exp_seed, "heuristic seed");
    experiment->add_option("-o,--output", exp_out, "report directory")->required();

    // export-mps
    std::string mps_instance, mps_objective = "maxcom+tt", mps_out, mps_solution;
    bool mps_blocking = false;
    auto* export_mps = app.add_subcommand("export-mps", "write the model as MPS");
    export_mps->add_option("--instance", mps_instance, "instance JSON")->required();
    export_mps->add_option("--objective", mps_objective, "maxcom+tt|maxcom|minn|mintt");
    export_mps->add_flag("--blocking", mps_blocking,
                         "export the trip-chaining model instead of routing");
    export_mps->add_option("--solution", mps_solution,
                           "solution JSON (required with --blocking)");
    export_mps->add_option("-o,--output", mps_out, "MPS file to write")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*generate) {
            sbr::ScenarioSpec spec = sbr::load_scenario_spec(gen_spec);
            if (gen_seed_given) spec.seed = gen_seed;
            sbr::Instance inst = sbr::generate_scenario(spec);
            inst.additional_trips = gen_additional;
            sbr::save_instance(inst, gen_out);
            std::cout << "wrote " << gen_out << " (" << inst.stops.size() << " stops, "
                      << inst.schools.size() << " schools)\n";
        } else if (*solve) {
            const sbr::Instance inst = load_with_warnings(solve_instance);
            sbr::SolverConfig config;
            config.objective = parse_objective(solve_objective);
            config.time_limit_sec = solve_time_limit;
            config.seed = solve_seed;
            const bool exact = !solve_heur && sbr::instance_fits_exact_solver(inst);
            const sbr::RoutingSolution sol = exact ? sbr::solve_exact(inst, config)
                                                   : sbr::solve_heuristic(inst, config);
            sbr::save_solution(sol.trips, inst, solve_out);
            sbr::save_manifest(sol, config.objective, config.seed,
                               solve_out + ".manifest.json");
            std::cout << (exact ? "exact" : "heuristic") << " objective "
                      << sol.objective_value << ", " << sol.trips.size() << " trips, "
                      << solve_out << " written\n";
        } else if (*block) {
            const sbr::Instance inst = load_with_warnings(block_instance);
            const auto trips = sbr::load_solution(block_solution, inst);
            const auto violations = sbr::check_routing_feasibility(trips, inst);
            if (!violations.empty()) {
                std::cerr << "solution is infeasible:\n";
                for (const auto& v : violations)
                    std::cerr << "  " << v.rule << ": " << v.detail << "\n";
                return 1;
            }
            const sbr::CompatibilityGraph compat =
                sbr::build_compatibility_graph(trips, inst);
            const sbr::BlockingSolution blocks = sbr::solve_blocking(compat);
            sbr::save_blocking(blocks, block_out);
            std::cout << blocks.bus_count << " buses for " << trips.size()
                      << " trips, " << block_out << " written\n";
        } else if (*experiment) {
            const auto kinds = parse_objectives(exp_objectives);
            std::vector<std::filesystem::path> files;
            for (const auto& entry : std::filesystem::directory_iterator(exp_dir))
                if (entry.path().extension() == ".json") files.push_back(entry.path());
            std::sort(files.begin(), files.end());
            if (files.empty()) {
                std::cerr << "no .json instances under " << exp_dir << "\n";
                return 1;
            }
            sbr::SolverConfig config;
            config.time_limit_sec = exp_time_limit;
            config.seed = exp_seed;
            std::vector<sbr::ExperimentRun> all;
            for (const auto& file : files) {
                const sbr::Instance inst = load_with_warnings(file.string());
                auto runs = sbr::run_experiment(inst, kinds, config, file.stem().string());
                for (auto& run : runs) {
                    if (!run.row.error.empty())
                        std::cerr << file.stem().string() << "/"
                                  << to_string(run.row.objective)
                                  << " failed: " << run.row.error << "\n";
                    all.push_back(std::move(run));
                }
            }
            sbr::emit_reports(all, exp_out);
            std::cout << "wrote " << all.size() << " rows to " << exp_out << "\n";
        } else if (*export_mps) {
            const sbr::Instance inst = load_with_warnings(mps_instance);
            sbr::ModelInstance model;
            if (mps_blocking) {
                if (mps_solution.empty())
                    throw CLI::ValidationError("--solution",
                                               "--blocking needs a solution JSON");
                const auto trips = sbr::load_solution(mps_solution, inst);
                const auto compat = sbr::build_compatibility_graph(trips, inst);
                model = sbr::build_blocking_model(trips, compat);
            } else {
                sbr::ModelSpec spec;
                spec.objective = parse_objective(mps_objective);
                model = sbr::build_routing_model(inst, spec);
            }
            sbr::export_model(model, mps_out);
            std::cout << "wrote " << mps_out << " (" << model.vars.size() << " columns, "
                      << model.rows.size() << " rows)\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
