#ifndef SBR_MODEL_HPP
#define SBR_MODEL_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sbr/instance.hpp"
#include "sbr/objective.hpp"
#include "sbr/trip.hpp"

namespace sbr {

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ModelSpec {
    ObjectiveKind objective = ObjectiveKind::MaxComTT;
    double trip_penalty = 1000.0;   // weight per used trip
    double compat_benefit = 200.0;  // reward per compatible ordered pair
    Dm big_m = 0;                   // relaxation constant; 0 derives the
                                    // smallest audited value per instance
};

enum class VarType { Continuous, Binary };
enum class RowSense { LE, GE, EQ };

struct ModelVar {
    std::string name;
    VarType type = VarType::Continuous;
    double lb = 0.0;
    double ub = 0.0;
    double obj = 0.0;
    bool declared_only = false;  // present in the formulation, used in no row

    ModelVar() = default;
    ModelVar(std::string n, VarType t, double l, double u, double o = 0.0)
        : name(std::move(n)), type(t), lb(l), ub(u), obj(o) {}
};

struct ModelRow {
    std::string name;
    RowSense sense = RowSense::LE;
    double rhs = 0.0;
    std::vector<std::pair<int, double>> terms;  // (variable index, coefficient)
    int relax_indicator = -1;  // binary whose 0 value must leave the row slack

    ModelRow() = default;
    ModelRow(std::string n, RowSense s, double r) : name(std::move(n)), sense(s), rhs(r) {}
};

/// A fully-materialized linear model, deterministic in variable and row
/// order. Times are expressed in minutes.
struct ModelInstance {
    std::string name;
    bool minimize = true;
    std::vector<ModelVar> vars;
    std::vector<ModelRow> rows;

    int add_var(ModelVar v);
    int var(const std::string& name) const;  // throws ModelError when missing

    double objective_at(const std::vector<double>& x) const;
    /// Largest row violation at the point x (0 when feasible).
    double max_violation(const std::vector<double>& x) const;

    std::map<std::string, int> index;
};

/// Routing model: trip-building variables and rules for every school, trip
/// timing, pairwise deadheads and compatibility, trip-count bounds, symmetry
/// breaking, and commodity-flow connectivity, under the selected objective.
ModelInstance build_routing_model(const Instance& inst, const ModelSpec& spec);

/// Trip-chaining model over an existing trip set: pair successor choices,
/// alone markers, middle markers; minimizes alone minus middle trips.
ModelInstance build_blocking_model(const std::vector<SolutionTrip>& trips,
                                   const CompatibilityGraph& compat);

/// Verifies that every big-M row is slack over the variable bounds when its
/// indicator is 0. Throws ModelError naming the first offending row.
void audit_indicator_rows(const ModelInstance& model);

}  // namespace sbr

#endif
