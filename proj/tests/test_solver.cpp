#include <doctest.h>

#include "fixtures.hpp"
#include "sbr/blocking.hpp"
#include "sbr/report.hpp"
#include "sbr/solution_io.hpp"
#include "sbr/solver.hpp"

using namespace sbr;
using namespace sbr::testing;

namespace {

SolverConfig config_for(ObjectiveKind kind, std::uint64_t seed = 1) {
    SolverConfig config;
    config.objective = kind;
    config.time_limit_sec = 120.0;
    config.seed = seed;
    return config;
}

ScenarioSpec micro_spec(std::uint64_t seed) {
    ScenarioSpec spec;
    spec.n_stops = 3 + static_cast<int>(seed % 5);  // 3..7 student stops
    spec.n_schools = 1 + static_cast<int>(seed % 3);
    if (spec.n_stops < spec.n_schools) spec.n_stops = spec.n_schools;
    spec.avg_students_per_school = 30 + static_cast<int>(seed % 40);
    spec.max_stops_per_school = 3;
    spec.dismissal_min = 0;
    spec.dismissal_max = 30 * kDmPerMinute;
    spec.seed = seed;
    return spec;
}

}  // namespace

TEST_CASE("evaluate_objective on the demo solutions") {
    const Instance inst = two_school_demo();
    const auto good = demo_compatible_solution(inst);
    const auto tight = demo_mintt_solution(inst);
    const auto g_good = build_compatibility_graph(good, inst);
    const auto g_tight = build_compatibility_graph(tight, inst);

    // 50 travel minutes + 3 trips * 1000 - 1 edge * 200
    CHECK(evaluate_objective(good, g_good, ObjectiveKind::MaxComTT) == 2850.0);
    // 40 + 3000 - 0: cheaper travel but worse compound objective
    CHECK(evaluate_objective(tight, g_tight, ObjectiveKind::MaxComTT) == 3040.0);

    CHECK(evaluate_objective(good, g_good, ObjectiveKind::MaxCom) == -1.0);
    CHECK(evaluate_objective(tight, g_tight, ObjectiveKind::MaxCom) == 0.0);
    CHECK(evaluate_objective(good, g_good, ObjectiveKind::MinN) == 3.0);
    CHECK(evaluate_objective(good, g_good, ObjectiveKind::MinTT) == 50.0);
    CHECK(evaluate_objective(tight, g_tight, ObjectiveKind::MinTT) == 40.0);

    CHECK(evaluate_objective({}, CompatibilityGraph{}, ObjectiveKind::MaxComTT) == 0.0);
    CHECK(evaluate_objective({}, CompatibilityGraph{}, ObjectiveKind::MinTT) == 0.0);
}

TEST_CASE("exact solver reproduces the demo optima") {
    const Instance inst = two_school_demo();

    SUBCASE("compound objective trades travel time for one edge") {
        const RoutingSolution sol = solve_exact(inst, config_for(ObjectiveKind::MaxComTT));
        CHECK(sol.objective_value == 2850.0);
        REQUIRE(sol.bound.has_value());
        CHECK(*sol.bound == 2850.0);
        CHECK(check_routing_feasibility(sol.trips, inst).empty());

        Dm total_tt = 0;
        for (const auto& st : sol.trips) total_tt += st.schedule.travel_time;
        CHECK(total_tt == 50 * kDmPerMinute);
        const auto g = build_compatibility_graph(sol.trips, inst);
        CHECK(g.edges.size() == 1);
        CHECK(solve_blocking(g).bus_count == 2);
    }
    SUBCASE("travel-time objective finds the 40-minute split") {
        const RoutingSolution sol = solve_exact(inst, config_for(ObjectiveKind::MinTT));
        CHECK(sol.objective_value == 40.0);
        CHECK(check_routing_feasibility(sol.trips, inst).empty());
        const auto g = build_compatibility_graph(sol.trips, inst);
        CHECK(g.edges.empty());
        CHECK(solve_blocking(g).bus_count == 3);
    }
    SUBCASE("pure compatibility also finds the edge") {
        const RoutingSolution sol = solve_exact(inst, config_for(ObjectiveKind::MaxCom));
        CHECK(sol.objective_value == -1.0);
        CHECK(check_routing_feasibility(sol.trips, inst).empty());
    }
    SUBCASE("trip count is pinned by the bounds") {
        const RoutingSolution sol = solve_exact(inst, config_for(ObjectiveKind::MinN));
        CHECK(sol.objective_value == 3.0);
        CHECK(check_routing_feasibility(sol.trips, inst).empty());
    }
}

TEST_CASE("exact solver on single-school corners") {
    // two stops, one trip: the cheaper stop order wins
    std::string text = R"({
      "capacity": 48, "buffer_pickup": 0, "additional_trips": 0,
      "stops": [{"id": 0, "x": 0, "y": 0}, {"id": 1, "x": 6, "y": 0},
                {"id": 2, "x": 12, "y": 0}],
      "schools": [{"id": 0, "origin": 0, "demand": {"1": 10, "2": 10}, "dismissal": 0}]
    })";
    const Instance inst = instance_from_json_text(text);
    const RoutingSolution sol = solve_exact(inst, config_for(ObjectiveKind::MinTT));
    REQUIRE(sol.trips.size() == 1);
    CHECK(sol.trips[0].trip.stops == std::vector<StopId>{1, 2});
    // 6 + 0.5 dwell, twice
    CHECK(sol.trips[0].schedule.travel_time == 130);
    CHECK(check_routing_feasibility(sol.trips, inst).empty());
}

TEST_CASE("exact solver refuses unsupported shapes") {
    Instance inst = two_school_demo();
    SUBCASE("positive buffer") {
        inst.buffer_pickup = 10;
        CHECK_THROWS_AS(solve_exact(inst, config_for(ObjectiveKind::MinTT)),
                        std::invalid_argument);
    }
    SUBCASE("invalid instance") {
        inst.matrix.set(0, 1, -1);
        CHECK_THROWS_AS(solve_exact(inst, config_for(ObjectiveKind::MinTT)),
                        std::invalid_argument);
    }
}

TEST_CASE("exact solver handles split-demand stops") {
    // one stop holds more students than a bus: both trips must visit it
    std::string text = R"({
      "capacity": 48, "buffer_pickup": 0, "additional_trips": 0,
      "stops": [{"id": 0, "x": 0, "y": 0}, {"id": 1, "x": 5, "y": 0}],
      "schools": [{"id": 0, "origin": 0, "demand": {"1": 60}, "dismissal": 0}]
    })";
    const Instance inst = instance_from_json_text(text);
    const RoutingSolution sol = solve_exact(inst, config_for(ObjectiveKind::MinTT));
    REQUIRE(sol.trips.size() == 2);
    for (const auto& st : sol.trips) CHECK(st.trip.stops == std::vector<StopId>{1});
    CHECK(check_routing_feasibility(sol.trips, inst).empty());
}

TEST_CASE("heuristic stays feasible and deterministic") {
    const Instance inst = two_school_demo();
    for (ObjectiveKind kind : kAllObjectives) {
        const RoutingSolution a = solve_heuristic(inst, config_for(kind, 5));
        const RoutingSolution b = solve_heuristic(inst, config_for(kind, 5));
        CHECK(check_routing_feasibility(a.trips, inst).empty());
        CHECK(a.objective_value == b.objective_value);
        CHECK(solution_to_json_text(a.trips, inst) == solution_to_json_text(b.trips, inst));
        CHECK_FALSE(a.bound.has_value());
    }
}

TEST_CASE("heuristic with zero restarts still constructs a feasible solution") {
    const Instance inst = two_school_demo();
    SolverConfig config = config_for(ObjectiveKind::MaxComTT);
    config.restarts = 1;
    config.neighborhood_ops = 0;  // construction only
    const RoutingSolution sol = solve_heuristic(inst, config);
    CHECK(check_routing_feasibility(sol.trips, inst).empty());
}

TEST_CASE("heuristic reaches the demo optimum") {
    const Instance inst = two_school_demo();
    const RoutingSolution sol = solve_heuristic(inst, config_for(ObjectiveKind::MaxComTT));
    CHECK(sol.objective_value == 2850.0);
}

TEST_CASE("heuristic never beats the exact optimum on micro instances") {
    int solved = 0;
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const Instance inst = generate_scenario(micro_spec(seed));
        for (ObjectiveKind kind : kAllObjectives) {
            const RoutingSolution exact = solve_exact(inst, config_for(kind));
            const RoutingSolution heur = solve_heuristic(inst, config_for(kind, seed));
            CHECK(check_routing_feasibility(exact.trips, inst).empty());
            CHECK(check_routing_feasibility(heur.trips, inst).empty());
            CHECK(heur.objective_value >= exact.objective_value - 1e-9);
        }
        ++solved;
    }
    CHECK(solved == 12);
}

TEST_CASE("objective relaxations dominate on the exact solver") {
    for (std::uint64_t seed = 20; seed < 26; ++seed) {
        const Instance inst = generate_scenario(micro_spec(seed));
        const auto compound = solve_exact(inst, config_for(ObjectiveKind::MaxComTT));
        const auto best_tt = solve_exact(inst, config_for(ObjectiveKind::MinTT));
        const auto best_com = solve_exact(inst, config_for(ObjectiveKind::MaxCom));

        Dm tt_compound = 0, tt_best = 0;
        for (const auto& st : compound.trips) tt_compound += st.schedule.travel_time;
        for (const auto& st : best_tt.trips) tt_best += st.schedule.travel_time;
        CHECK(tt_best <= tt_compound);

        const auto edges = [&](const RoutingSolution& sol) {
            return build_compatibility_graph(sol.trips, inst).edges.size();
        };
        CHECK(edges(best_com) >= edges(compound));
    }
}

TEST_CASE("minn optimum equals the sum of per-school minimums when A is zero") {
    for (std::uint64_t seed = 30; seed < 36; ++seed) {
        const Instance inst = generate_scenario(micro_spec(seed));
        REQUIRE(inst.additional_trips == 0);
        int expected = 0;
        for (const auto& school : inst.schools)
            expected += minimum_trips(school, inst.bus_capacity);
        const RoutingSolution sol = solve_exact(inst, config_for(ObjectiveKind::MinN));
        CHECK(sol.objective_value == static_cast<double>(expected));
        CHECK(static_cast<int>(sol.trips.size()) == expected);
    }
}

TEST_CASE("exact solver is deterministic") {
    const Instance inst = generate_scenario(micro_spec(4));
    const RoutingSolution a = solve_exact(inst, config_for(ObjectiveKind::MaxComTT));
    const RoutingSolution b = solve_exact(inst, config_for(ObjectiveKind::MaxComTT));
    CHECK(solution_to_json_text(a.trips, inst) == solution_to_json_text(b.trips, inst));
}

TEST_CASE("heuristic scales to a catalog-sized instance") {
    ScenarioSpec spec;
    spec.n_stops = 100;
    spec.n_schools = 5;
    spec.avg_students_per_school = 91;
    spec.max_stops_per_school = 13;
    spec.dismissal_min = 0;
    spec.dismissal_max = 30 * kDmPerMinute;
    spec.seed = 77;
    const Instance inst = generate_scenario(spec);
    CHECK_FALSE(instance_fits_exact_solver(inst));

    SolverConfig config = config_for(ObjectiveKind::MaxComTT, 2);
    config.restarts = 2;
    const RoutingSolution sol = solve_heuristic(inst, config);
    CHECK(check_routing_feasibility(sol.trips, inst).empty());
    CHECK(sol.trips.size() >= 10);  // ~2 trips per school at this population
    CHECK(sol.wall_time_sec < 30.0);

    // the compound objective should find at least some compatibility here
    const auto g = build_compatibility_graph(sol.trips, inst);
    CHECK(solve_blocking(g).bus_count <= static_cast<int>(sol.trips.size()));
}

TEST_CASE("an expired time limit with no incumbent is an error") {
    const Instance inst = two_school_demo();
    SolverConfig config = config_for(ObjectiveKind::MaxComTT);
    config.time_limit_sec = 1e-12;  // expires before construction
    CHECK_THROWS_AS(solve_heuristic(inst, config), std::runtime_error);
    config.time_limit_sec = 0;
    CHECK_THROWS_AS(solve_heuristic(inst, config), std::invalid_argument);
    CHECK_THROWS_AS(solve_exact(inst, config), std::invalid_argument);
}

TEST_CASE("incumbent callbacks arrive in improvement order") {
    const Instance inst = two_school_demo();
    SolverConfig config = config_for(ObjectiveKind::MaxComTT);
    std::vector<double> seen;
    config.on_incumbent = [&seen](const RoutingSolution& sol) {
        seen.push_back(sol.objective_value);
    };
    solve_heuristic(inst, config);
    REQUIRE_FALSE(seen.empty());
    for (std::size_t i = 1; i < seen.size(); ++i) CHECK(seen[i] <= seen[i - 1]);
}
