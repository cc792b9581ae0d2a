#include "sbr/model.hpp"

#include <algorithm>
#include <cmath>

namespace sbr {

int ModelInstance::add_var(ModelVar v) {
    const int idx = static_cast<int>(vars.size());
    if (!index.emplace(v.name, idx).second)
        throw ModelError("duplicate variable name " + v.name);
    vars.push_back(std::move(v));
    return idx;
}

int ModelInstance::var(const std::string& name) const {
    auto it = index.find(name);
    if (it == index.end()) throw ModelError("unknown variable " + name);
    return it->second;
}

double ModelInstance::objective_at(const std::vector<double>& x) const {
    double total = 0.0;
    for (std::size_t i = 0; i < vars.size(); ++i) total += vars[i].obj * x[i];
    return total;
}

double ModelInstance::max_violation(const std::vector<double>& x) const {
    double worst = 0.0;
    for (const auto& row : rows) {
        double lhs = 0.0;
        for (const auto& [v, coeff] : row.terms) lhs += coeff * x[static_cast<std::size_t>(v)];
        double gap = 0.0;
        switch (row.sense) {
            case RowSense::LE: gap = lhs - row.rhs; break;
            case RowSense::GE: gap = row.rhs - lhs; break;
            case RowSense::EQ: gap = std::abs(lhs - row.rhs); break;
        }
        worst = std::max(worst, gap);
    }
    return worst;
}

void audit_indicator_rows(const ModelInstance& model) {
    for (const auto& row : model.rows) {
        if (row.relax_indicator < 0) continue;
        // Worst-case LHS with the indicator at 0 and every other variable at
        // the bound that works against the row.
        double worst = 0.0;
        for (const auto& [v, coeff] : row.terms) {
            if (v == row.relax_indicator) continue;
            const auto& var = model.vars[static_cast<std::size_t>(v)];
            if (row.sense == RowSense::LE)
                worst += coeff > 0 ? coeff * var.ub : coeff * var.lb;
            else
                worst += coeff > 0 ? coeff * var.lb : coeff * var.ub;
        }
        const bool slack = row.sense == RowSense::LE ? worst <= row.rhs + 1e-9
                                                     : worst >= row.rhs - 1e-9;
        if (!slack)
            throw ModelError("big-M too small: row " + row.name +
                             " binds with its indicator at 0");
    }
}

namespace {

struct SchoolLayout {
    const School* school = nullptr;
    std::vector<StopId> stops;                    // assigned stops, id order
    std::vector<std::pair<StopId, StopId>> arcs;  // school-out, stop-stop, school-in
    int slots = 0;                                // trip positions reserved
    int first_trip = 0;                           // global index of slot 0
    Dm tt_ub = 0;
};

std::string tname(int global_trip) { return "t" + std::to_string(global_trip); }

}  // namespace

ModelInstance build_routing_model(const Instance& inst, const ModelSpec& spec) {
    if (!validate_instance(inst).empty())
        throw ModelError("instance fails validation; run validate_instance for details");
    if (spec.trip_penalty <= 0 || spec.compat_benefit <= 0)
        throw ModelError("objective weights must be positive");

    // Layout: per-school stop lists, arc lists, and trip slots.
    std::vector<SchoolLayout> layout;
    int n_trips = 0;
    Dm max_dismissal = 0;
    Dm max_leg = 0;
    Dm min_dismissal = inst.schools.empty() ? 0 : inst.schools.front().dismissal;
    for (const auto& school : inst.schools) {
        SchoolLayout sl;
        sl.school = &school;
        sl.stops = school.assigned_stops;
        std::sort(sl.stops.begin(), sl.stops.end());
        for (StopId s : sl.stops) sl.arcs.emplace_back(school.origin_stop, s);
        for (StopId a : sl.stops)
            for (StopId b : sl.stops)
                if (a != b) sl.arcs.emplace_back(a, b);
        for (StopId s : sl.stops) sl.arcs.emplace_back(s, school.origin_stop);
        sl.slots = minimum_trips(school, inst.bus_capacity) + inst.additional_trips;
        sl.first_trip = n_trips;
        n_trips += sl.slots;

        Dm longest = 0;
        for (const auto& [a, b] : sl.arcs) longest = std::max(longest, inst.travel(a, b));
        sl.tt_ub = longest * static_cast<Dm>(sl.stops.size());
        max_leg = std::max(max_leg, longest);
        max_dismissal = std::max(max_dismissal, school.dismissal);
        min_dismissal = std::min(min_dismissal, school.dismissal);
        layout.push_back(std::move(sl));
    }
    for (const auto& a : layout)
        for (const auto& b : layout)
            max_leg = std::max(max_leg, inst.travel(a.school->origin_stop, b.school->origin_stop));
    // Deadheads from any stop to any origin also bound the deadhead range.
    for (const auto& sl : layout)
        for (StopId s : sl.stops)
            for (const auto& other : layout)
                max_leg = std::max(max_leg, inst.travel(s, other.school->origin_stop));

    Dm tt_ub_all = 0;
    for (const auto& sl : layout) tt_ub_all = std::max(tt_ub_all, sl.tt_ub);

    // Two relaxation constants. The deadhead constant must exceed every real
    // deadhead and push pairs with an unused trip past any start time; the
    // compatibility constant must absorb the deadhead constant on top of the
    // latest possible end time.
    const Dm horizon = max_dismissal + inst.buffer_pickup;
    const Dm m_deadhead = 2 * std::max(max_leg, horizon + 1);
    const Dm m_required = horizon + tt_ub_all + m_deadhead - min_dismissal;
    Dm m_compat = spec.big_m == 0 ? m_required : spec.big_m;
    if (m_compat < m_required)
        throw ModelError("big_M " + minutes_str(spec.big_m) + " too small; need at least " +
                         minutes_str(m_required));

    ModelInstance model;
    model.name = "routing_" + to_string(spec.objective);
    model.minimize = true;

    const double obj_tt = spec.objective == ObjectiveKind::MaxComTT ||
                                  spec.objective == ObjectiveKind::MinTT
                              ? 1.0
                              : 0.0;
    const double obj_trip = spec.objective == ObjectiveKind::MaxComTT
                                ? spec.trip_penalty
                                : (spec.objective == ObjectiveKind::MinN ? 1.0 : 0.0);
    // Compatibility is a benefit: it enters the minimization negatively.
    const double obj_compat = spec.objective == ObjectiveKind::MaxComTT
                                  ? -spec.compat_benefit
                                  : (spec.objective == ObjectiveKind::MaxCom ? -1.0 : 0.0);

    // ---- variables ----
    for (const auto& sl : layout)
        for (int t = 0; t < sl.slots; ++t)
            model.add_var({"t2s_" + tname(sl.first_trip + t) + "_k" +
                               std::to_string(sl.school->id),
                           VarType::Binary, 0, 1, obj_trip});

    for (const auto& sl : layout)
        for (int t = 0; t < sl.slots; ++t)
            for (StopId s : sl.stops)
                model.add_var({"s2t_s" + std::to_string(s) + "_" + tname(sl.first_trip + t),
                               VarType::Binary, 0, 1, 0});

    for (const auto& sl : layout)
        for (int t = 0; t < sl.slots; ++t)
            for (StopId s : sl.stops) {
                const double cap_share =
                    std::min(1.0, static_cast<double>(sl.school->demand.at(s)) /
                                      inst.bus_capacity);
                model.add_var({"p4t_s" + std::to_string(s) + "_" + tname(sl.first_trip + t),
                               VarType::Continuous, 0, cap_share, 0});
            }

    for (const auto& sl : layout)
        for (int t = 0; t < sl.slots; ++t)
            for (StopId s : sl.stops)
                model.add_var({"l_s" + std::to_string(s) + "_" + tname(sl.first_trip + t),
                               VarType::Binary, 0, 1, 0});

    for (const auto& sl : layout)
        for (int t = 0; t < sl.slots; ++t)
            for (const auto& [a, b] : sl.arcs)
                model.add_var({"x_" + tname(sl.first_trip + t) + "_" + std::to_string(a) +
                                   "_" + std::to_string(b),
                               VarType::Binary, 0, 1, 0});

    for (const auto& sl : layout)
        for (int t = 0; t < sl.slots; ++t)
            for (const auto& [a, b] : sl.arcs)
                model.add_var({"c_" + tname(sl.first_trip + t) + "_" + std::to_string(a) +
                                   "_" + std::to_string(b),
                               VarType::Continuous, 0,
                               static_cast<double>(sl.stops.size()), 0});

    for (const auto& sl : layout)
        for (int t = 0; t < sl.slots; ++t) {
            model.add_var({"tt_" + tname(sl.first_trip + t), VarType::Continuous, 0,
                           minutes(sl.tt_ub), obj_tt});
            model.add_var({"start_" + tname(sl.first_trip + t), VarType::Continuous,
                           minutes(sl.school->dismissal),
                           minutes(sl.school->dismissal + inst.buffer_pickup), 0});
            model.add_var({"end_" + tname(sl.first_trip + t), VarType::Continuous,
                           minutes(sl.school->dismissal),
                           minutes(sl.school->dismissal + inst.buffer_pickup + sl.tt_ub),
                           0});
        }

    for (int t1 = 0; t1 < n_trips; ++t1)
        for (int t2 = 0; t2 < n_trips; ++t2) {
            if (t1 == t2) continue;
            model.add_var({"b_" + std::to_string(t1) + "_" + std::to_string(t2),
                           VarType::Binary, 0, 1, obj_compat});
        }
    for (int t1 = 0; t1 < n_trips; ++t1)
        for (int t2 = 0; t2 < n_trips; ++t2) {
            if (t1 == t2) continue;
            model.add_var({"dd_" + std::to_string(t1) + "_" + std::to_string(t2),
                           VarType::Continuous, 0, minutes(m_deadhead), 0});
        }

    // ---- rows ----
    auto add_row = [&model](ModelRow row) { model.rows.push_back(std::move(row)); };

    // Stops may only join trips their school actually uses.
    for (const auto& sl : layout)
        for (int t = 0; t < sl.slots; ++t)
            for (StopId s : sl.stops) {
                const std::string tn = tname(sl.first_trip + t);
                ModelRow row{"assign_s" + std::to_string(s) + "_" + tn, RowSense::LE, 0};
                row.terms = {{model.var("s2t_s" + std::to_string(s) + "_" + tn), 1.0},
                             {model.var("t2s_" + tn + "_k" + std::to_string(sl.school->id)),
                              -1.0}};
                add_row(std::move(row));
            }

    // Per-trip capacity.
    for (const auto& sl : layout)
        for (int t = 0; t < sl.slots; ++t) {
            const std::string tn = tname(sl.first_trip + t);
            ModelRow row{"cap_" + tn, RowSense::LE, 1.0};
            for (StopId s : sl.stops)
                row.terms.push_back({model.var("p4t_s" + std::to_string(s) + "_" + tn), 1.0});
            add_row(std::move(row));
        }

    // Every student is picked up.
    for (const auto& sl : layout)
        for (StopId s : sl.stops) {
            ModelRow row{"cover_k" + std::to_string(sl.school->id) + "_s" + std::to_string(s),
                         RowSense::EQ,
                         static_cast<double>(sl.school->demand.at(s)) / inst.bus_capacity};
            for (int t = 0; t < sl.slots; ++t)
                row.terms.push_back(
                    {model.var("p4t_s" + std::to_string(s) + "_" + tname(sl.first_trip + t)),
                     1.0});
            add_row(std::move(row));
        }

    // Loads only where the trip stops.
    for (const auto& sl : layout)
        for (int t = 0; t < sl.slots; ++t)
            for (StopId s : sl.stops) {
                const std::string tn = tname(sl.first_trip + t);
                ModelRow row{"loadvisit_s" + std::to_string(s) + "_" + tn, RowSense::LE, 0};
                row.terms = {{model.var("p4t_s" + std::to_string(s) + "_" + tn), 1.0},
                             {model.var("s2t_s" + std::to_string(s) + "_" + tn), -1.0}};
                add_row(std::move(row));
            }

    // A visited stop is left exactly once (toward another stop or the school).
    for (const auto& sl : layout)
        for (int t = 0; t < sl.slots; ++t)
            for (StopId s : sl.stops) {
                const std::string tn = tname(sl.first_trip + t);
                ModelRow row{"visitout_s" + std::to_string(s) + "_" + tn, RowSense::EQ, 0};
                for (const auto& [a, b] : sl.arcs)
                    if (a == s)
                        row.terms.push_back({model.var("x_" + tn + "_" + std::to_string(a) +
                                                       "_" + std::to_string(b)),
                                             1.0});
                row.terms.push_back(
                    {model.var("s2t_s" + std::to_string(s) + "_" + tn), -1.0});
                add_row(std::move(row));
            }

    // Used trips leave the school once.
    for (const auto& sl : layout)
        for (int t = 0; t < sl.slots; ++t) {
            const std::string tn = tname(sl.first_trip + t);
            ModelRow row{"depart_" + tn, RowSense::EQ, 0};
            for (const auto& [a, b] : sl.arcs)
                if (a == sl.school->origin_stop)
                    row.terms.push_back({model.var("x_" + tn + "_" + std::to_string(a) + "_" +
                                                   std::to_string(b)),
                                         1.0});
            row.terms.push_back(
                {model.var("t2s_" + tn + "_k" + std::to_string(sl.school->id)), -1.0});
            add_row(std::move(row));
        }

    // Flow conservation at every stop.
    for (const auto& sl : layout)
        for (int t = 0; t < sl.slots; ++t)
            for (StopId s : sl.stops) {
                const std::string tn = tname(sl.first_trip + t);
                ModelRow row{"flowbal_s" + std::to_string(s) + "_" + tn, RowSense::EQ, 0};
                for (const auto& [a, b] : sl.arcs) {
                    if (a == s)
                        row.terms.push_back({model.var("x_" + tn + "_" + std::to_string(a) +
                                                       "_" + std::to_string(b)),
                                             1.0});
                    else if (b == s)
                        row.terms.push_back({model.var("x_" + tn + "_" + std::to_string(a) +
                                                       "_" + std::to_string(b)),
                                             -1.0});
                }
                add_row(std::move(row));
            }

    // Trip duration: every leg except the fictional return to the school.
    for (const auto& sl : layout)
        for (int t = 0; t < sl.slots; ++t) {
            const std::string tn = tname(sl.first_trip + t);
            ModelRow row{"traveltime_" + tn, RowSense::EQ, 0};
            row.terms.push_back({model.var("tt_" + tn), 1.0});
            for (const auto& [a, b] : sl.arcs)
                if (b != sl.school->origin_stop)
                    row.terms.push_back({model.var("x_" + tn + "_" + std::to_string(a) + "_" +
                                                   std::to_string(b)),
                                         -minutes(inst.travel(a, b))});
            add_row(std::move(row));
        }

    // End time identity.
    for (int t = 0; t < n_trips; ++t) {
        ModelRow row{"endtime_" + tname(t), RowSense::EQ, 0};
        row.terms = {{model.var("end_" + tname(t)), 1.0},
                     {model.var("start_" + tname(t)), -1.0},
                     {model.var("tt_" + tname(t)), -1.0}};
        add_row(std::move(row));
    }

    // Compatibility: a pair may only be marked when the first trip, plus the
    // deadhead, arrives by the second trip's start.
    for (int t1 = 0; t1 < n_trips; ++t1)
        for (int t2 = 0; t2 < n_trips; ++t2) {
            if (t1 == t2) continue;
            const std::string suffix = std::to_string(t1) + "_" + std::to_string(t2);
            ModelRow row{"compat_" + suffix, RowSense::LE, minutes(m_compat)};
            row.terms = {{model.var("end_" + tname(t1)), 1.0},
                         {model.var("dd_" + suffix), 1.0},
                         {model.var("b_" + suffix), minutes(m_compat)},
                         {model.var("start_" + tname(t2)), -1.0}};
            row.relax_indicator = model.var("b_" + suffix);
            add_row(std::move(row));
        }

    // Deadhead lower bound; pairs involving an unused trip are pushed beyond
    // any feasible start so they can never look compatible.
    for (const auto& sl1 : layout)
        for (int u = 0; u < sl1.slots; ++u)
            for (const auto& sl2 : layout)
                for (int v = 0; v < sl2.slots; ++v) {
                    const int t1 = sl1.first_trip + u;
                    const int t2 = sl2.first_trip + v;
                    if (t1 == t2) continue;
                    const std::string suffix =
                        std::to_string(t1) + "_" + std::to_string(t2);
                    ModelRow row{"deadhead_" + suffix, RowSense::GE, minutes(m_deadhead)};
                    row.terms.push_back({model.var("dd_" + suffix), 1.0});
                    row.terms.push_back(
                        {model.var("t2s_" + tname(t1) + "_k" +
                                   std::to_string(sl1.school->id)),
                         minutes(m_deadhead) / 2});
                    row.terms.push_back(
                        {model.var("t2s_" + tname(t2) + "_k" +
                                   std::to_string(sl2.school->id)),
                         minutes(m_deadhead) / 2});
                    for (StopId s : sl1.stops)
                        row.terms.push_back(
                            {model.var("l_s" + std::to_string(s) + "_" + tname(t1)),
                             -minutes(inst.travel(s, sl2.school->origin_stop))});
                    add_row(std::move(row));
                }

    // Last stop marker: the stop whose return arc is taken.
    for (const auto& sl : layout)
        for (int t = 0; t < sl.slots; ++t)
            for (StopId s : sl.stops) {
                const std::string tn = tname(sl.first_trip + t);
                ModelRow row{"laststop_s" + std::to_string(s) + "_" + tn, RowSense::EQ, 0};
                row.terms = {{model.var("x_" + tn + "_" + std::to_string(s) + "_" +
                                        std::to_string(sl.school->origin_stop)),
                              1.0},
                             {model.var("l_s" + std::to_string(s) + "_" + tn), -1.0}};
                add_row(std::move(row));
            }

    // Symmetry: used slots take the lowest ids.
    for (const auto& sl : layout)
        for (int a = 0; a < sl.slots; ++a)
            for (int bslot = a + 1; bslot < sl.slots; ++bslot) {
                ModelRow row{"sym_k" + std::to_string(sl.school->id) + "_" +
                                 std::to_string(sl.first_trip + a) + "_" +
                                 std::to_string(sl.first_trip + bslot),
                             RowSense::GE, 0};
                row.terms = {{model.var("t2s_" + tname(sl.first_trip + a) + "_k" +
                                        std::to_string(sl.school->id)),
                              1.0},
                             {model.var("t2s_" + tname(sl.first_trip + bslot) + "_k" +
                                        std::to_string(sl.school->id)),
                              -1.0}};
                add_row(std::move(row));
            }

    // Commodity flow: each visited stop retains one unit shipped from the
    // school along used arcs, which rules out disconnected loops.
    for (const auto& sl : layout)
        for (int t = 0; t < sl.slots; ++t)
            for (StopId s : sl.stops) {
                const std::string tn = tname(sl.first_trip + t);
                ModelRow row{"commod_s" + std::to_string(s) + "_" + tn, RowSense::EQ, 0};
                for (const auto& [a, b] : sl.arcs) {
                    if (b == s)
                        row.terms.push_back({model.var("c_" + tn + "_" + std::to_string(a) +
                                                       "_" + std::to_string(b)),
                                             1.0});
                    else if (a == s)
                        row.terms.push_back({model.var("c_" + tn + "_" + std::to_string(a) +
                                                       "_" + std::to_string(b)),
                                             -1.0});
                }
                row.terms.push_back(
                    {model.var("s2t_s" + std::to_string(s) + "_" + tn), -1.0});
                add_row(std::move(row));
            }

    for (const auto& sl : layout)
        for (int t = 0; t < sl.slots; ++t)
            for (const auto& [a, b] : sl.arcs) {
                const std::string tn = tname(sl.first_trip + t);
                const std::string arc = std::to_string(a) + "_" + std::to_string(b);
                ModelRow row{"commcap_" + tn + "_" + arc, RowSense::LE, 0};
                row.terms = {{model.var("c_" + tn + "_" + arc), 1.0},
                             {model.var("x_" + tn + "_" + arc),
                              -static_cast<double>(sl.stops.size())}};
                add_row(std::move(row));
            }

    // Trip-count window per school.
    for (const auto& sl : layout) {
        const int needed = minimum_trips(*sl.school, inst.bus_capacity);
        ModelRow lo{"tripmin_k" + std::to_string(sl.school->id), RowSense::GE,
                    static_cast<double>(needed)};
        ModelRow hi{"tripmax_k" + std::to_string(sl.school->id), RowSense::LE,
                    static_cast<double>(needed + inst.additional_trips)};
        for (int t = 0; t < sl.slots; ++t) {
            const int v = model.var("t2s_" + tname(sl.first_trip + t) + "_k" +
                                    std::to_string(sl.school->id));
            lo.terms.push_back({v, 1.0});
            hi.terms.push_back({v, 1.0});
        }
        add_row(std::move(lo));
        add_row(std::move(hi));
    }

    // Unused trips never earn compatibility credit.
    for (const auto& sl1 : layout)
        for (int u = 0; u < sl1.slots; ++u)
            for (const auto& sl2 : layout)
                for (int v = 0; v < sl2.slots; ++v) {
                    const int t1 = sl1.first_trip + u;
                    const int t2 = sl2.first_trip + v;
                    if (t1 == t2) continue;
                    const std::string suffix =
                        std::to_string(t1) + "_" + std::to_string(t2);
                    ModelRow r1{"bused1_" + suffix, RowSense::LE, 0};
                    r1.terms = {{model.var("b_" + suffix), 1.0},
                                {model.var("t2s_" + tname(t1) + "_k" +
                                           std::to_string(sl1.school->id)),
                                 -1.0}};
                    add_row(std::move(r1));
                    ModelRow r2{"bused2_" + suffix, RowSense::LE, 0};
                    r2.terms = {{model.var("b_" + suffix), 1.0},
                                {model.var("t2s_" + tname(t2) + "_k" +
                                           std::to_string(sl2.school->id)),
                                 -1.0}};
                    add_row(std::move(r2));
                }

    audit_indicator_rows(model);
    return model;
}

ModelInstance build_blocking_model(const std::vector<SolutionTrip>& trips,
                                   const CompatibilityGraph& compat) {
    ModelInstance model;
    model.name = "blocking";
    model.minimize = true;

    for (const auto& st : trips)
        if (std::find(compat.nodes.begin(), compat.nodes.end(), st.trip.id) ==
            compat.nodes.end())
            throw ModelError("compatibility graph misses trip " +
                             std::to_string(st.trip.id));

    // Successor choices exist only for compatible pairs.
    for (const auto& [a, b] : compat.edges)
        model.add_var({"y_" + std::to_string(a) + "_" + std::to_string(b),
                       VarType::Binary, 0, 1, 0});
    for (const auto& st : trips)
        model.add_var(
            {"a_t" + std::to_string(st.trip.id), VarType::Binary, 0, 1, 1.0});
    for (const auto& st : trips)
        model.add_var(
            {"m_t" + std::to_string(st.trip.id), VarType::Binary, 0, 1, -1.0});
    // First-of-tour markers belong to the formulation but no row uses them.
    for (const auto& st : trips) {
        ModelVar f{"f_t" + std::to_string(st.trip.id), VarType::Binary, 0, 1, 0};
        f.declared_only = true;
        model.add_var(std::move(f));
    }

    for (const auto& st : trips) {
        const TripId t = st.trip.id;
        std::vector<int> out, in;
        for (const auto& [a, b] : compat.edges) {
            if (a == t) out.push_back(model.var("y_" + std::to_string(a) + "_" +
                                                std::to_string(b)));
            if (b == t) in.push_back(model.var("y_" + std::to_string(a) + "_" +
                                               std::to_string(b)));
        }
        const int alone = model.var("a_t" + std::to_string(t));
        const int middle = model.var("m_t" + std::to_string(t));

        ModelRow serve{"serve_t" + std::to_string(t), RowSense::GE, 1.0};
        for (int v : out) serve.terms.push_back({v, 1.0});
        for (int v : in) serve.terms.push_back({v, 1.0});
        serve.terms.push_back({alone, 1.0});
        model.rows.push_back(std::move(serve));

        ModelRow succ{"succ_t" + std::to_string(t), RowSense::LE, 1.0};
        for (int v : out) succ.terms.push_back({v, 1.0});
        succ.terms.push_back({alone, 1.0});
        model.rows.push_back(std::move(succ));

        ModelRow pred{"pred_t" + std::to_string(t), RowSense::LE, 1.0};
        for (int v : in) pred.terms.push_back({v, 1.0});
        pred.terms.push_back({alone, 1.0});
        model.rows.push_back(std::move(pred));

        ModelRow pairlim{"pairlim_t" + std::to_string(t), RowSense::LE, 2.0};
        for (int v : out) pairlim.terms.push_back({v, 1.0});
        for (int v : in) pairlim.terms.push_back({v, 1.0});
        model.rows.push_back(std::move(pairlim));

        ModelRow mid{"middle_t" + std::to_string(t), RowSense::EQ, 1.0};
        for (int v : out) mid.terms.push_back({v, 1.0});
        for (int v : in) mid.terms.push_back({v, 1.0});
        mid.terms.push_back({alone, 1.0});
        mid.terms.push_back({middle, -1.0});
        model.rows.push_back(std::move(mid));
    }
    return model;
}

}  // namespace sbr
