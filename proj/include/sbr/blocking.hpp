#ifndef SBR_BLOCKING_HPP
#define SBR_BLOCKING_HPP

#include <vector>

#include "sbr/trip.hpp"

namespace sbr {

/// One bus: an ordered chain of trips, each consecutive pair compatible.
struct Block {
    std::vector<TripId> trips;
};

struct BlockingSolution {
    std::vector<Block> blocks;
    int bus_count = 0;
    int edges_used = 0;  // chained pairs; bus_count = |trips| - edges_used
};

/// Minimum number of buses covering all trips, via maximum bipartite matching
/// between out-copies and in-copies of the trips (minimum path cover).
/// Rejects cyclic inputs.
BlockingSolution solve_blocking(const CompatibilityGraph& compat);

/// Reference solver: exhaustively partitions the trips into chains and keeps
/// a partition minimizing (#alone trips - #middle trips). Guarded to at most
/// 12 trips. Exists to cross-check solve_blocking.
BlockingSolution solve_blocking_oracle(const CompatibilityGraph& compat);

/// Alone/middle objective of a chain partition; for the oracle's optimum this
/// equals |trips| - 2 * edges_used.
int blocking_objective(const BlockingSolution& sol, int n_trips);

/// Buses that chaining saves relative to one bus per trip: the maximum
/// matching size. Lets reports contrast raw edge counts against real savings.
int count_saveable_buses(const CompatibilityGraph& compat);

}  // namespace sbr

#endif
