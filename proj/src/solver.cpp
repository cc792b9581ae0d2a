#include "sbr/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sbr/rng.hpp"

namespace sbr {

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
    Clock::time_point until;
    bool expired() const { return Clock::now() >= until; }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void require_valid(const Instance& inst) {
    const auto violations = validate_instance(inst);
    if (!violations.empty())
        throw std::invalid_argument("instance invalid: " + violations.front().rule + " (" +
                                    violations.front().detail + ")");
}

// ---------------------------------------------------------------------------
// Shared scoring
// ---------------------------------------------------------------------------

// Internal scores are kept on a deciminute scale (10x the reported minute
// objective) so travel times stay integral; trip and compatibility weights
// scale accordingly.
struct ScoreWeights {
    ObjectiveKind kind;
    double per_tt_dm = 0.0;
    double per_trip = 0.0;
    double per_edge = 0.0;

    static ScoreWeights make(ObjectiveKind kind, double trip_penalty,
                             double compat_benefit) {
        ScoreWeights w{kind};
        switch (kind) {
            case ObjectiveKind::MaxComTT:
                w.per_tt_dm = 1.0;
                w.per_trip = kDmPerMinute * trip_penalty;
                w.per_edge = -kDmPerMinute * compat_benefit;
                break;
            case ObjectiveKind::MaxCom: w.per_edge = -1.0; break;
            case ObjectiveKind::MinN: w.per_trip = 1.0; break;
            case ObjectiveKind::MinTT: w.per_tt_dm = 1.0; break;
        }
        return w;
    }

    double score(Dm total_tt, int n_trips, int n_edges) const {
        return per_tt_dm * static_cast<double>(total_tt) + per_trip * n_trips +
               per_edge * n_edges;
    }
};

// ---------------------------------------------------------------------------
// Exact solver
// ---------------------------------------------------------------------------

// Per-school enumeration, exploiting the zero-buffer structure: every trip of
// school k2 starts exactly at k2's dismissal, so whether a trip t1 can feed
// school k2 depends only on t1's end time and last stop. The number of edges
// a candidate trip contributes is then (trips of k2) * reach(t1, k2), and the
// whole objective separates by school once per-school trip counts are fixed.
struct SchoolContext {
    const School* school = nullptr;
    std::vector<StopId> stops;    // id order
    std::vector<int> demand;      // by stop position
    int n = 0;
    int min_trips = 0;
    std::vector<std::vector<Dm>> path_tt;   // [mask][last]
    std::vector<std::vector<int>> parent;   // [mask][last]
};

SchoolContext make_context(const Instance& inst, const School& school) {
    SchoolContext ctx;
    ctx.school = &school;
    ctx.stops = school.assigned_stops;
    std::sort(ctx.stops.begin(), ctx.stops.end());
    ctx.n = static_cast<int>(ctx.stops.size());
    if (ctx.n > 16)
        throw std::invalid_argument("school " + std::to_string(school.id) +
                                    " has too many stops for exact enumeration");
    for (StopId s : ctx.stops) ctx.demand.push_back(school.demand.at(s));
    ctx.min_trips = minimum_trips(school, inst.bus_capacity);

    const int full = (1 << ctx.n) - 1;
    const Dm inf = std::numeric_limits<Dm>::max() / 4;
    ctx.path_tt.assign(static_cast<std::size_t>(full) + 1,
                       std::vector<Dm>(static_cast<std::size_t>(ctx.n), inf));
    ctx.parent.assign(static_cast<std::size_t>(full) + 1,
                      std::vector<int>(static_cast<std::size_t>(ctx.n), -1));
    for (int i = 0; i < ctx.n; ++i)
        ctx.path_tt[1u << i][static_cast<std::size_t>(i)] =
            inst.travel(school.origin_stop, ctx.stops[static_cast<std::size_t>(i)]);
    for (int mask = 1; mask <= full; ++mask) {
        for (int last = 0; last < ctx.n; ++last) {
            if (!(mask & (1 << last))) continue;
            const Dm base = ctx.path_tt[static_cast<std::size_t>(mask)]
                                       [static_cast<std::size_t>(last)];
            if (base >= inf) continue;
            for (int nxt = 0; nxt < ctx.n; ++nxt) {
                if (mask & (1 << nxt)) continue;
                const int to = mask | (1 << nxt);
                const Dm cand = base + inst.travel(ctx.stops[static_cast<std::size_t>(last)],
                                                   ctx.stops[static_cast<std::size_t>(nxt)]);
                if (cand < ctx.path_tt[static_cast<std::size_t>(to)]
                                      [static_cast<std::size_t>(nxt)]) {
                    ctx.path_tt[static_cast<std::size_t>(to)][static_cast<std::size_t>(nxt)] =
                        cand;
                    ctx.parent[static_cast<std::size_t>(to)][static_cast<std::size_t>(nxt)] =
                        last;
                }
            }
        }
    }
    return ctx;
}

// Transportation feasibility: demands d_s split across the chosen trips, each
// bounded by the bus capacity. Gale-Hoffman over trip subsets.
bool loads_feasible(const std::vector<int>& masks, const SchoolContext& ctx, int capacity) {
    const int m = static_cast<int>(masks.size());
    int full = 0;
    for (int mask : masks) full |= mask;
    const int need = (1 << ctx.n) - 1;
    if ((full & need) != need) return false;
    for (int sub = 1; sub < (1 << m); ++sub) {
        int visited_by_sub = 0;
        for (int i = 0; i < m; ++i)
            if (sub & (1 << i)) visited_by_sub |= masks[static_cast<std::size_t>(i)];
        int exclusive_demand = 0;
        for (int s = 0; s < ctx.n; ++s) {
            // stops visited only by trips inside the subset
            bool outside = false;
            for (int i = 0; i < m && !outside; ++i)
                if (!(sub & (1 << i)) && (masks[static_cast<std::size_t>(i)] & (1 << s)))
                    outside = true;
            if (!outside && (visited_by_sub & (1 << s)))
                exclusive_demand += ctx.demand[static_cast<std::size_t>(s)];
        }
        if (exclusive_demand > capacity * __builtin_popcount(static_cast<unsigned>(sub)))
            return false;
    }
    return true;
}

// Integral split of the school's demand across the chosen visit sets,
// via shortest augmenting paths. Deterministic scan order.
std::vector<std::map<StopId, int>> split_loads(const std::vector<int>& masks,
                                               const SchoolContext& ctx, int capacity) {
    const int m = static_cast<int>(masks.size());
    std::vector<std::map<StopId, int>> loads(static_cast<std::size_t>(m));
    std::vector<int> spare(static_cast<std::size_t>(m), capacity);
    std::vector<std::vector<int>> assigned(static_cast<std::size_t>(ctx.n),
                                           std::vector<int>(static_cast<std::size_t>(m), 0));

    for (int s = 0; s < ctx.n; ++s) {
        int remaining = ctx.demand[static_cast<std::size_t>(s)];
        while (remaining > 0) {
            // Direct fill first.
            int direct = -1;
            for (int i = 0; i < m; ++i)
                if ((masks[static_cast<std::size_t>(i)] & (1 << s)) &&
                    spare[static_cast<std::size_t>(i)] > 0) {
                    direct = i;
                    break;
                }
            if (direct >= 0) {
                const int q = std::min(remaining, spare[static_cast<std::size_t>(direct)]);
                assigned[static_cast<std::size_t>(s)][static_cast<std::size_t>(direct)] += q;
                spare[static_cast<std::size_t>(direct)] -= q;
                remaining -= q;
                continue;
            }
            // Augment: free a visiting trip by pushing one unit of some other
            // stop's assignment to a trip with spare capacity.
            bool moved = false;
            for (int i = 0; i < m && !moved; ++i) {
                if (!(masks[static_cast<std::size_t>(i)] & (1 << s))) continue;
                for (int s2 = 0; s2 < ctx.n && !moved; ++s2) {
                    if (assigned[static_cast<std::size_t>(s2)][static_cast<std::size_t>(i)] == 0)
                        continue;
                    for (int j = 0; j < m && !moved; ++j) {
                        if (j == i || spare[static_cast<std::size_t>(j)] == 0) continue;
                        if (!(masks[static_cast<std::size_t>(j)] & (1 << s2))) continue;
                        const int q = std::min(
                            {remaining,
                             assigned[static_cast<std::size_t>(s2)][static_cast<std::size_t>(i)],
                             spare[static_cast<std::size_t>(j)]});
                        assigned[static_cast<std::size_t>(s2)][static_cast<std::size_t>(i)] -= q;
                        assigned[static_cast<std::size_t>(s2)][static_cast<std::size_t>(j)] += q;
                        spare[static_cast<std::size_t>(j)] -= q;
                        assigned[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)] += q;
                        remaining -= q;
                        moved = true;
                    }
                }
            }
            if (!moved)
                throw std::logic_error("load split failed on a feasible visit multiset");
        }
    }
    for (int s = 0; s < ctx.n; ++s)
        for (int i = 0; i < m; ++i)
            if (assigned[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)] > 0)
                loads[static_cast<std::size_t>(i)][ctx.stops[static_cast<std::size_t>(s)]] =
                    assigned[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)];
    return loads;
}

struct CandidateScore {
    double weight = 0.0;
    int best_last = -1;
};

struct SchoolPick {
    std::vector<int> masks;  // chosen visit sets, enumeration order
    double weight = 0.0;
};

// Weight of each visit set under a fixed trip-count vector: best last stop
// for (travel time, edges earned against every school's trip count).
std::vector<CandidateScore> score_candidates(const SchoolContext& ctx,
                                             const Instance& inst,
                                             const std::vector<SchoolContext>& all,
                                             const std::vector<int>& trip_counts,
                                             std::size_t self_idx,
                                             const ScoreWeights& w) {
    const int full = (1 << ctx.n) - 1;
    std::vector<CandidateScore> scores(static_cast<std::size_t>(full) + 1);
    for (int mask = 1; mask <= full; ++mask) {
        double best = std::numeric_limits<double>::infinity();
        int best_last = -1;
        for (int last = 0; last < ctx.n; ++last) {
            if (!(mask & (1 << last))) continue;
            const Dm tt = ctx.path_tt[static_cast<std::size_t>(mask)]
                                     [static_cast<std::size_t>(last)];
            const Dm end = ctx.school->dismissal + tt;
            const StopId last_id = ctx.stops[static_cast<std::size_t>(last)];
            int edges = 0;
            for (std::size_t k2 = 0; k2 < all.size(); ++k2) {
                const Dm arrive =
                    end + inst.travel(last_id, all[k2].school->origin_stop);
                if (arrive > all[k2].school->dismissal) continue;
                edges += trip_counts[k2] - (k2 == self_idx ? 1 : 0);
            }
            const double cand = w.per_tt_dm * static_cast<double>(tt) + w.per_trip +
                                w.per_edge * edges;
            if (cand < best) {
                best = cand;
                best_last = last;
            }
        }
        scores[static_cast<std::size_t>(mask)] = {best, best_last};
    }
    return scores;
}

// Minimum-weight feasible multiset of visit sets for one school. Candidates
// are scanned fattest-first; ties keep the first find, which mirrors how a
// count-only objective stops at its first optimal incumbent.
bool best_multiset(const SchoolContext& ctx, int n_trips, int capacity,
                   const std::vector<CandidateScore>& scores, const Deadline& deadline,
                   SchoolPick* out, bool* timed_out) {
    const int full = (1 << ctx.n) - 1;
    std::vector<int> order;
    for (int mask = full; mask >= 1; --mask) order.push_back(mask);

    double min_weight = std::numeric_limits<double>::infinity();
    for (int mask = 1; mask <= full; ++mask)
        min_weight = std::min(min_weight, scores[static_cast<std::size_t>(mask)].weight);

    SchoolPick best;
    best.weight = std::numeric_limits<double>::infinity();
    bool found = false;
    std::vector<int> chosen;
    long steps = 0;

    auto rec = [&](auto&& self, std::size_t from, int depth, int covered,
                   double weight) -> void {
        if (*timed_out) return;
        if ((++steps & 0xfff) == 0 && deadline.expired()) {
            *timed_out = true;
            return;
        }
        if (weight + min_weight * (n_trips - depth) >= best.weight) return;
        if (depth == n_trips) {
            if (covered != full) return;
            if (!loads_feasible(chosen, ctx, capacity)) return;
            best.masks = chosen;
            best.weight = weight;
            found = true;
            return;
        }
        for (std::size_t i = from; i < order.size(); ++i) {
            const int mask = order[i];
            // Final slot must close the cover.
            if (depth + 1 == n_trips && (covered | mask) != full) continue;
            chosen.push_back(mask);
            self(self, i, depth + 1, covered | mask,
                 weight + scores[static_cast<std::size_t>(mask)].weight);
            chosen.pop_back();
        }
    };
    rec(rec, 0, 0, 0, 0.0);

    if (found) *out = best;
    return found;
}

}  // namespace

std::optional<double> RoutingSolution::gap_pct() const {
    if (!bound) return std::nullopt;
    const double denom = std::max(std::abs(*bound), 1e-9);
    return (objective_value - *bound) / denom * 100.0;
}

double evaluate_objective(const std::vector<SolutionTrip>& trips,
                          const CompatibilityGraph& compat, ObjectiveKind kind,
                          double trip_penalty, double compat_benefit) {
    Dm total_tt = 0;
    for (const auto& st : trips) total_tt += st.schedule.travel_time;
    const int n = static_cast<int>(trips.size());
    const int e = static_cast<int>(compat.edges.size());
    switch (kind) {
        case ObjectiveKind::MaxComTT:
            return minutes(total_tt) + trip_penalty * n - compat_benefit * e;
        case ObjectiveKind::MaxCom: return -static_cast<double>(e);
        case ObjectiveKind::MinN: return static_cast<double>(n);
        case ObjectiveKind::MinTT: return minutes(total_tt);
    }
    return 0.0;
}

RoutingSolution solve_exact(const Instance& inst, const SolverConfig& config) {
    const auto t0 = Clock::now();
    require_valid(inst);
    if (inst.buffer_pickup != 0)
        throw std::invalid_argument(
            "exact solver requires buffer_pickup = 0 (fixed departures)");
    if (config.time_limit_sec <= 0) throw std::invalid_argument("time limit must be positive");

    const Deadline deadline{t0 + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(config.time_limit_sec))};
    const ScoreWeights weights =
        ScoreWeights::make(config.objective, config.trip_penalty, config.compat_benefit);

    if (inst.schools.empty()) {
        RoutingSolution empty;
        empty.bound = 0.0;
        empty.wall_time_sec = seconds_since(t0);
        return empty;
    }

    std::vector<SchoolContext> ctx;
    for (const auto& school : inst.schools) ctx.push_back(make_context(inst, school));

    int total_slots = 0;
    for (const auto& c : ctx) total_slots += c.min_trips + inst.additional_trips;
    if (total_slots > 10)
        throw std::invalid_argument("instance too large for exact enumeration: " +
                                    std::to_string(total_slots) + " trip slots");

    // Trip-count vectors within [min, min + A] per school, lexicographic.
    std::vector<int> counts;
    for (const auto& c : ctx) counts.push_back(c.min_trips);

    struct Best {
        double score = std::numeric_limits<double>::infinity();
        std::vector<int> counts;
        std::vector<SchoolPick> picks;
    } best;
    bool timed_out = false;

    for (;;) {
        double score = 0.0;
        std::vector<SchoolPick> picks(ctx.size());
        bool feasible = true;
        for (std::size_t k = 0; k < ctx.size() && feasible; ++k) {
            const auto scores =
                score_candidates(ctx[k], inst, ctx, counts, k, weights);
            if (!best_multiset(ctx[k], counts[k], inst.bus_capacity, scores, deadline,
                               &picks[k], &timed_out))
                feasible = false;
            else
                score += picks[k].weight;
            if (timed_out) break;
        }
        if (timed_out) break;
        if (feasible && score < best.score) {
            best.score = score;
            best.counts = counts;
            best.picks = std::move(picks);
        }

        // next count vector
        std::size_t pos = 0;
        while (pos < counts.size()) {
            if (counts[pos] < ctx[pos].min_trips + inst.additional_trips) {
                ++counts[pos];
                for (std::size_t r = 0; r < pos; ++r) counts[r] = ctx[r].min_trips;
                break;
            }
            ++pos;
        }
        if (pos == counts.size()) break;
    }

    if (best.picks.empty())
        throw std::runtime_error(timed_out ? "time limit hit before any exact solution"
                                           : "no feasible routing exists");

    // Materialize trips: paths from the subset table, loads from the split.
    RoutingSolution sol;
    TripId next_id = 0;
    for (std::size_t k = 0; k < ctx.size(); ++k) {
        const auto scores = score_candidates(ctx[k], inst, ctx, best.counts, k, weights);
        const auto loads = split_loads(best.picks[k].masks, ctx[k], inst.bus_capacity);
        for (std::size_t i = 0; i < best.picks[k].masks.size(); ++i) {
            const int mask = best.picks[k].masks[i];
            Trip trip;
            trip.id = next_id++;
            trip.school = ctx[k].school->id;
            int last = scores[static_cast<std::size_t>(mask)].best_last;
            std::vector<int> rev;
            for (int m = mask; last >= 0;) {
                rev.push_back(last);
                const int prev = ctx[k].parent[static_cast<std::size_t>(m)]
                                              [static_cast<std::size_t>(last)];
                m ^= 1 << last;
                last = prev;
            }
            for (auto it = rev.rbegin(); it != rev.rend(); ++it)
                trip.stops.push_back(ctx[k].stops[static_cast<std::size_t>(*it)]);
            trip.loads = loads[i];
            TripSchedule sched = schedule_trip(trip, inst, ctx[k].school->dismissal);
            sol.trips.push_back({std::move(trip), sched});
        }
    }

    const CompatibilityGraph compat = build_compatibility_graph(sol.trips, inst);
    sol.objective_value = evaluate_objective(sol.trips, compat, config.objective,
                                             config.trip_penalty, config.compat_benefit);
    if (!timed_out) sol.bound = sol.objective_value;
    sol.wall_time_sec = seconds_since(t0);
    if (config.on_incumbent) config.on_incumbent(sol);
    return sol;
}

// ---------------------------------------------------------------------------
// Heuristic
// ---------------------------------------------------------------------------

namespace {

struct HeuristicState {
    std::vector<SolutionTrip> trips;
    std::vector<std::vector<int>> out_edges;  // recomputed incrementally
    Dm total_tt = 0;
    int edges = 0;
};

Dm path_tt(const std::vector<StopId>& stops, const School& school, const Instance& inst) {
    if (stops.empty()) return 0;
    Dm total = inst.travel(school.origin_stop, stops.front());
    for (std::size_t i = 0; i + 1 < stops.size(); ++i)
        total += inst.travel(stops[i], stops[i + 1]);
    return total;
}

void refresh_schedule(SolutionTrip& st, const Instance& inst) {
    const School* school = inst.find_school(st.trip.school);
    st.schedule.start = school->dismissal;
    st.schedule.travel_time = path_tt(st.trip.stops, *school, inst);
    st.schedule.end = st.schedule.start + st.schedule.travel_time;
}

// Outgoing compatibility of one trip against the whole pool. Incoming edges
// of other trips never change when this trip's path changes, because their
// condition reads only this trip's start time, which is pinned.
std::vector<int> outgoing(const HeuristicState& state, std::size_t i, const Instance& inst) {
    std::vector<int> out;
    const auto& a = state.trips[i];
    for (std::size_t j = 0; j < state.trips.size(); ++j) {
        if (i == j) continue;
        const auto& b = state.trips[j];
        const Dm dd = inst.travel(a.trip.stops.back(),
                                  inst.find_school(b.trip.school)->origin_stop);
        if (a.schedule.end + dd <= b.schedule.start) out.push_back(static_cast<int>(j));
    }
    return out;
}

void rebuild_edges(HeuristicState& state, const Instance& inst) {
    state.out_edges.assign(state.trips.size(), {});
    state.edges = 0;
    state.total_tt = 0;
    for (std::size_t i = 0; i < state.trips.size(); ++i) {
        state.out_edges[i] = outgoing(state, i, inst);
        state.edges += static_cast<int>(state.out_edges[i].size());
        state.total_tt += state.trips[i].schedule.travel_time;
    }
}

// Re-evaluates the trips whose paths were touched by a move.
void refresh_trips(HeuristicState& state, const Instance& inst,
                   const std::vector<std::size_t>& touched) {
    for (std::size_t i : touched) {
        state.total_tt -= state.trips[i].schedule.travel_time;
        refresh_schedule(state.trips[i], inst);
        state.total_tt += state.trips[i].schedule.travel_time;
        state.edges -= static_cast<int>(state.out_edges[i].size());
        state.out_edges[i] = outgoing(state, i, inst);
        state.edges += static_cast<int>(state.out_edges[i].size());
    }
}

double state_score(const HeuristicState& state, const ScoreWeights& w) {
    return w.score(state.total_tt, static_cast<int>(state.trips.size()), state.edges);
}

// Greedy nearest-neighbor construction. Each trip fills to capacity before
// the next one opens, so every school uses exactly its minimum trip count.
std::vector<SolutionTrip> construct(const Instance& inst, Rng& rng) {
    std::vector<SolutionTrip> all;
    TripId next_id = 0;
    for (const auto& school : inst.schools) {
        std::map<StopId, int> remaining = school.demand;
        auto left = [&remaining]() {
            int total = 0;
            for (const auto& [s, q] : remaining) total += q;
            return total;
        };
        while (left() > 0) {
            Trip trip;
            trip.id = next_id++;
            trip.school = school.id;
            StopId pos = school.origin_stop;
            int spare = inst.bus_capacity;
            while (spare > 0 && left() > 0) {
                // nearest stop with demand left; occasionally the second
                // nearest, for restart diversity
                std::vector<std::pair<Dm, StopId>> options;
                for (const auto& [s, q] : remaining)
                    if (q > 0) options.emplace_back(inst.travel(pos, s), s);
                std::sort(options.begin(), options.end());
                std::size_t pick = 0;
                if (options.size() > 1 && rng.uniform_int(0, 3) == 0) pick = 1;
                const StopId s = options[pick].second;
                const int q = std::min(spare, remaining[s]);
                trip.stops.push_back(s);
                trip.loads[s] = q;
                remaining[s] -= q;
                if (remaining[s] == 0) remaining.erase(s);
                spare -= q;
                pos = s;
            }
            SolutionTrip st{std::move(trip), {}};
            refresh_schedule(st, inst);
            all.push_back(std::move(st));
        }
    }
    return all;
}

}  // namespace

namespace {

int trip_spare(const Trip& trip, int capacity) {
    return capacity - trip.students_carried();
}

// Cheapest insertion position for a new stop.
std::size_t best_insert_position(const std::vector<StopId>& stops, StopId s,
                                 const School& school, const Instance& inst) {
    std::size_t best_pos = 0;
    Dm best_tt = std::numeric_limits<Dm>::max();
    for (std::size_t pos = 0; pos <= stops.size(); ++pos) {
        std::vector<StopId> cand = stops;
        cand.insert(cand.begin() + static_cast<std::ptrdiff_t>(pos), s);
        const Dm tt = path_tt(cand, school, inst);
        if (tt < best_tt) {
            best_tt = tt;
            best_pos = pos;
        }
    }
    return best_pos;
}

// Rebuilds two trips from their pooled stops by nearest-neighbor, filling the
// first to capacity. Deterministic; returns false when pooling is pointless.
bool resplit_pair(Trip& t1, Trip& t2, const School& school, const Instance& inst,
                  int capacity) {
    std::map<StopId, int> pool;
    for (const auto& [s, q] : t1.loads) pool[s] += q;
    for (const auto& [s, q] : t2.loads) pool[s] += q;
    if (pool.size() < 2) return false;

    auto build = [&](Trip& trip, int budget) {
        trip.stops.clear();
        trip.loads.clear();
        StopId pos = school.origin_stop;
        int spare = budget;
        while (spare > 0 && !pool.empty()) {
            StopId nearest = -1;
            Dm nearest_d = 0;
            for (const auto& [s, q] : pool) {
                const Dm d = inst.travel(pos, s);
                if (nearest < 0 || d < nearest_d) {
                    nearest = s;
                    nearest_d = d;
                }
            }
            const int q = std::min(spare, pool[nearest]);
            trip.stops.push_back(nearest);
            trip.loads[nearest] = q;
            pool[nearest] -= q;
            if (pool[nearest] == 0) pool.erase(nearest);
            spare -= q;
            pos = nearest;
        }
    };
    build(t1, capacity);
    build(t2, capacity);
    if (!pool.empty()) return false;  // cannot happen: pooled load fits two buses
    if (t2.stops.empty()) {
        // Everything fit in the first bus; trips must stay nonempty, so the
        // tail stop moves over.
        const StopId s = t1.stops.back();
        t1.stops.pop_back();
        if (t1.stops.empty()) return false;
        t2.stops.push_back(s);
        t2.loads[s] = t1.loads.at(s);
        t1.loads.erase(s);
    }
    return true;
}

}  // namespace

RoutingSolution solve_heuristic(const Instance& inst, const SolverConfig& config) {
    const auto t0 = Clock::now();
    require_valid(inst);
    if (config.time_limit_sec <= 0) throw std::invalid_argument("time limit must be positive");
    const Deadline deadline{t0 + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(config.time_limit_sec))};
    const ScoreWeights weights =
        ScoreWeights::make(config.objective, config.trip_penalty, config.compat_benefit);

    std::vector<SolutionTrip> best_trips;
    double best_score = std::numeric_limits<double>::infinity();

    const int restarts = std::max(1, config.restarts);
    for (int restart = 0; restart < restarts && !deadline.expired(); ++restart) {
        Rng rng(config.seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(restart));
        HeuristicState state;
        state.trips = construct(inst, rng);
        rebuild_edges(state, inst);
        double score = state_score(state, weights);

        // Accepts the staged change when it strictly improves the compound
        // objective, otherwise restores trips and counters verbatim.
        auto attempt = [&](std::vector<std::size_t> touched, auto&& mutate) -> bool {
            std::vector<SolutionTrip> saved_trips;
            std::vector<std::vector<int>> saved_out;
            saved_trips.reserve(touched.size());
            saved_out.reserve(touched.size());
            for (std::size_t t : touched) {
                saved_trips.push_back(state.trips[t]);
                saved_out.push_back(state.out_edges[t]);
            }
            const Dm saved_tt = state.total_tt;
            const int saved_edges = state.edges;

            auto rollback = [&] {
                for (std::size_t idx = 0; idx < touched.size(); ++idx) {
                    state.trips[touched[idx]] = saved_trips[idx];
                    state.out_edges[touched[idx]] = saved_out[idx];
                }
                state.total_tt = saved_tt;
                state.edges = saved_edges;
            };

            if (!mutate()) {
                rollback();  // mutators may bail mid-change
                return false;
            }
            refresh_trips(state, inst, touched);
            const double cand = state_score(state, weights);
            if (cand < score - 1e-9) {
                score = cand;
                return true;
            }
            rollback();
            return false;
        };

        bool improved = true;
        while (improved && !deadline.expired()) {
            improved = false;

            for (std::size_t i = 0; i < state.trips.size(); ++i) {
                if (deadline.expired()) break;

                // 2-opt inside one trip
                if (config.neighborhood_ops & moves::kTwoOpt) {
                    const std::size_t len = state.trips[i].trip.stops.size();
                    for (std::size_t p = 0; p + 1 < len; ++p)
                        for (std::size_t r = p + 1; r < len; ++r)
                            improved |= attempt({i}, [&] {
                                auto& stops = state.trips[i].trip.stops;
                                std::reverse(stops.begin() + static_cast<std::ptrdiff_t>(p),
                                             stops.begin() + static_cast<std::ptrdiff_t>(r) + 1);
                                return true;
                            });
                }

                for (std::size_t j = 0; j < state.trips.size(); ++j) {
                    if (i == j) continue;
                    if (state.trips[i].trip.school != state.trips[j].trip.school) continue;

                    // relocate one stop, load and all
                    if (config.neighborhood_ops & moves::kRelocate) {
                        const auto stops_snapshot = state.trips[i].trip.stops;
                        for (StopId s : stops_snapshot) {
                            improved |= attempt({i, j}, [&] {
                                Trip& ti = state.trips[i].trip;
                                Trip& tj = state.trips[j].trip;
                                if (ti.stops.size() <= 1) return false;
                                auto it = ti.loads.find(s);
                                if (it == ti.loads.end()) return false;
                                const int q = it->second;
                                if (trip_spare(tj, inst.bus_capacity) < q) return false;
                                ti.stops.erase(
                                    std::find(ti.stops.begin(), ti.stops.end(), s));
                                ti.loads.erase(it);
                                if (tj.loads.count(s)) {
                                    tj.loads[s] += q;
                                } else {
                                    const School* school = inst.find_school(tj.school);
                                    tj.stops.insert(
                                        tj.stops.begin() +
                                            static_cast<std::ptrdiff_t>(best_insert_position(
                                                tj.stops, s, *school, inst)),
                                        s);
                                    tj.loads[s] = q;
                                }
                                return true;
                            });
                        }
                    }

                    // swap two stops between trips
                    if (config.neighborhood_ops & moves::kSwap && i < j) {
                        const auto stops_i = state.trips[i].trip.stops;
                        const auto stops_j = state.trips[j].trip.stops;
                        for (StopId s : stops_i)
                            for (StopId u : stops_j) {
                                improved |= attempt({i, j}, [&] {
                                    Trip& ti = state.trips[i].trip;
                                    Trip& tj = state.trips[j].trip;
                                    if (s == u) return false;
                                    if (!ti.loads.count(s) || !tj.loads.count(u)) return false;
                                    if (ti.loads.count(u) || tj.loads.count(s)) return false;
                                    const int qs = ti.loads.at(s);
                                    const int qu = tj.loads.at(u);
                                    if (ti.students_carried() - qs + qu > inst.bus_capacity)
                                        return false;
                                    if (tj.students_carried() - qu + qs > inst.bus_capacity)
                                        return false;
                                    *std::find(ti.stops.begin(), ti.stops.end(), s) = u;
                                    *std::find(tj.stops.begin(), tj.stops.end(), u) = s;
                                    ti.loads.erase(s);
                                    ti.loads[u] = qu;
                                    tj.loads.erase(u);
                                    tj.loads[s] = qs;
                                    return true;
                                });
                            }
                    }

                    // consolidate a split stop into the trip that also visits it
                    if (config.neighborhood_ops & moves::kShiftLoad) {
                        const auto stops_snapshot = state.trips[i].trip.stops;
                        for (StopId s : stops_snapshot) {
                            improved |= attempt({i, j}, [&] {
                                Trip& ti = state.trips[i].trip;
                                Trip& tj = state.trips[j].trip;
                                if (ti.stops.size() <= 1) return false;
                                if (!ti.loads.count(s) || !tj.loads.count(s)) return false;
                                const int q = ti.loads.at(s);
                                if (trip_spare(tj, inst.bus_capacity) < q) return false;
                                ti.stops.erase(
                                    std::find(ti.stops.begin(), ti.stops.end(), s));
                                ti.loads.erase(s);
                                tj.loads[s] += q;
                                return true;
                            });
                        }
                    }

                    // tear both trips down and rebuild the pair
                    if (config.neighborhood_ops & moves::kResplit && i < j) {
                        improved |= attempt({i, j}, [&] {
                            const School* school =
                                inst.find_school(state.trips[i].trip.school);
                            return resplit_pair(state.trips[i].trip, state.trips[j].trip,
                                                *school, inst, inst.bus_capacity);
                        });
                    }
                }
            }
        }

        if (score < best_score) {
            best_score = score;
            best_trips = state.trips;
            if (config.on_incumbent) {
                RoutingSolution incumbent;
                incumbent.trips = best_trips;
                const CompatibilityGraph compat =
                    build_compatibility_graph(incumbent.trips, inst);
                incumbent.objective_value =
                    evaluate_objective(incumbent.trips, compat, config.objective,
                                       config.trip_penalty, config.compat_benefit);
                incumbent.wall_time_sec = seconds_since(t0);
                config.on_incumbent(incumbent);
            }
        }
    }

    if (best_trips.empty()) throw std::runtime_error("time limit hit before construction");

    RoutingSolution sol;
    sol.trips = std::move(best_trips);
    const CompatibilityGraph compat = build_compatibility_graph(sol.trips, inst);
    sol.objective_value = evaluate_objective(sol.trips, compat, config.objective,
                                             config.trip_penalty, config.compat_benefit);
    sol.wall_time_sec = seconds_since(t0);
    return sol;
}

}  // namespace sbr
