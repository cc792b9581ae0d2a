#include <doctest.h>

#include "fixtures.hpp"
#include "sbr/blocking.hpp"
#include "sbr/rng.hpp"

using namespace sbr;

namespace {

CompatibilityGraph graph_of(int n, const std::vector<std::pair<int, int>>& edges) {
    CompatibilityGraph g;
    for (int i = 0; i < n; ++i) g.nodes.push_back(i);
    for (const auto& [a, b] : edges) g.add_edge(a, b);
    return g;
}

CompatibilityGraph random_dag(Rng& rng) {
    const int n = static_cast<int>(rng.uniform_int(1, 12));
    CompatibilityGraph g;
    for (int i = 0; i < n; ++i) g.nodes.push_back(i);
    const int pct = static_cast<int>(rng.uniform_int(5, 50));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (rng.uniform_int(0, 99) < pct) g.add_edge(a, b);
    return g;
}

}  // namespace

TEST_CASE("branching compatibility still saves only one bus") {
    // a feeds either b or c, never both
    const auto g = graph_of(3, {{0, 1}, {0, 2}});
    CHECK(g.edges.size() == 2);
    CHECK(count_saveable_buses(g) == 1);

    const BlockingSolution sol = solve_blocking(g);
    CHECK(sol.bus_count == 2);
    CHECK(sol.edges_used == 1);

    const BlockingSolution oracle = solve_blocking_oracle(g);
    CHECK(oracle.bus_count == 2);
}

TEST_CASE("a chain collapses into one block") {
    const auto g = graph_of(3, {{0, 1}, {1, 2}});
    const BlockingSolution sol = solve_blocking(g);
    CHECK(sol.bus_count == 1);
    REQUIRE(sol.blocks.size() == 1);
    CHECK(sol.blocks[0].trips == std::vector<TripId>{0, 1, 2});
    CHECK(count_saveable_buses(g) == 2);
    CHECK(solve_blocking_oracle(g).bus_count == 1);
    // alone/middle objective: one middle trip, nobody alone
    CHECK(blocking_objective(solve_blocking_oracle(g), 3) == -1);
}

TEST_CASE("no edges means one bus per trip") {
    const auto g = graph_of(4, {});
    const BlockingSolution sol = solve_blocking(g);
    CHECK(sol.bus_count == 4);
    CHECK(sol.edges_used == 0);
    CHECK(count_saveable_buses(g) == 0);
    CHECK(blocking_objective(solve_blocking_oracle(g), 4) == 4);
}

TEST_CASE("tiny cases pin the alone/middle objective") {
    // one trip: alone, objective 1, one block
    const auto single = graph_of(1, {});
    const auto sol1 = solve_blocking_oracle(single);
    CHECK(sol1.bus_count == 1);
    CHECK(blocking_objective(sol1, 1) == 1);

    // two compatible trips pair up: objective 0, one block
    const auto pair = graph_of(2, {{0, 1}});
    const auto sol2 = solve_blocking_oracle(pair);
    CHECK(sol2.bus_count == 1);
    CHECK(blocking_objective(sol2, 2) == 0);

    // two incompatible trips: both alone, objective 2
    const auto split = graph_of(2, {});
    const auto sol3 = solve_blocking_oracle(split);
    CHECK(sol3.bus_count == 2);
    CHECK(blocking_objective(sol3, 2) == 2);
}

TEST_CASE("matching equals the exhaustive oracle on random DAGs") {
    Rng rng(2024);
    for (int round = 0; round < 250; ++round) {
        const CompatibilityGraph g = random_dag(rng);
        const BlockingSolution fast = solve_blocking(g);
        const BlockingSolution slow = solve_blocking_oracle(g);
        REQUIRE(fast.bus_count == slow.bus_count);
        // the oracle's objective collapses to n - 2 * edges_used
        const int n = static_cast<int>(g.nodes.size());
        CHECK(blocking_objective(slow, n) == n - 2 * slow.edges_used);
        CHECK(fast.edges_used == n - fast.bus_count);
        CHECK(count_saveable_buses(g) == n - fast.bus_count);
    }
}

TEST_CASE("blocks really are chains of compatibility edges") {
    Rng rng(99);
    for (int round = 0; round < 50; ++round) {
        const CompatibilityGraph g = random_dag(rng);
        const BlockingSolution sol = solve_blocking(g);
        int covered = 0;
        for (const auto& block : sol.blocks) {
            covered += static_cast<int>(block.trips.size());
            for (std::size_t i = 0; i + 1 < block.trips.size(); ++i)
                CHECK(g.has_edge(block.trips[i], block.trips[i + 1]));
        }
        CHECK(covered == static_cast<int>(g.nodes.size()));
    }
}

TEST_CASE("adding edges never costs a bus") {
    Rng rng(7);
    for (int round = 0; round < 40; ++round) {
        CompatibilityGraph g = random_dag(rng);
        int prev = solve_blocking(g).bus_count;
        for (int extra = 0; extra < 8; ++extra) {
            const int n = static_cast<int>(g.nodes.size());
            if (n < 2) break;
            const int a = static_cast<int>(rng.uniform_int(0, n - 2));
            const int b = static_cast<int>(rng.uniform_int(a + 1, n - 1));
            if (g.has_edge(a, b)) continue;
            g.add_edge(a, b);
            const int now = solve_blocking(g).bus_count;
            CHECK(now <= prev);
            prev = now;
        }
    }
}

TEST_CASE("cyclic input is rejected") {
    auto g = graph_of(2, {{0, 1}, {1, 0}});
    CHECK_THROWS_AS(solve_blocking(g), std::invalid_argument);
    CHECK_THROWS_AS(solve_blocking_oracle(g), std::invalid_argument);
}

TEST_CASE("oracle size guard") {
    CompatibilityGraph g;
    for (int i = 0; i < 13; ++i) g.nodes.push_back(i);
    CHECK_THROWS_AS(solve_blocking_oracle(g), std::invalid_argument);
    CHECK_NOTHROW(solve_blocking(g));
}

TEST_CASE("chains replay as feasible bus schedules on the demo instance") {
    const Instance inst = sbr::testing::two_school_demo();
    const auto trips = sbr::testing::demo_compatible_solution(inst);
    const CompatibilityGraph g = build_compatibility_graph(trips, inst);
    const BlockingSolution sol = solve_blocking(g);
    CHECK(sol.bus_count == 2);

    std::map<TripId, const SolutionTrip*> by_id;
    for (const auto& st : trips) by_id[st.trip.id] = &st;
    for (const auto& block : sol.blocks) {
        Dm clock = 0;
        for (std::size_t i = 0; i < block.trips.size(); ++i) {
            const SolutionTrip& st = *by_id[block.trips[i]];
            if (i > 0) {
                const SolutionTrip& prev = *by_id[block.trips[i - 1]];
                clock += deadhead(prev.trip, st.trip, inst);
            }
            CHECK(clock <= st.schedule.start);
            clock = st.schedule.end;
        }
    }
}
