#include "sbr/blocking.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace sbr {

namespace {

struct IndexedGraph {
    std::vector<TripId> ids;
    std::map<TripId, int> index;
    std::vector<std::vector<int>> succ;  // adjacency by index, sorted
};

IndexedGraph index_graph(const CompatibilityGraph& compat) {
    IndexedGraph g;
    g.ids = compat.nodes;
    for (std::size_t i = 0; i < g.ids.size(); ++i)
        g.index[g.ids[i]] = static_cast<int>(i);
    g.succ.assign(g.ids.size(), {});
    for (const auto& [a, b] : compat.edges) {
        auto ia = g.index.find(a);
        auto ib = g.index.find(b);
        if (ia == g.index.end() || ib == g.index.end())
            throw std::invalid_argument("compatibility edge references unknown trip");
        g.succ[static_cast<std::size_t>(ia->second)].push_back(ib->second);
    }
    for (auto& adj : g.succ) std::sort(adj.begin(), adj.end());
    return g;
}

void require_acyclic(const IndexedGraph& g) {
    const int n = static_cast<int>(g.ids.size());
    std::vector<int> state(static_cast<std::size_t>(n), 0);  // 0 new, 1 open, 2 done
    std::vector<std::pair<int, std::size_t>> stack;
    for (int root = 0; root < n; ++root) {
        if (state[static_cast<std::size_t>(root)] != 0) continue;
        stack.push_back({root, 0});
        state[static_cast<std::size_t>(root)] = 1;
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            if (i < g.succ[static_cast<std::size_t>(v)].size()) {
                const int w = g.succ[static_cast<std::size_t>(v)][i++];
                if (state[static_cast<std::size_t>(w)] == 1)
                    throw std::invalid_argument("compatibility graph contains a cycle");
                if (state[static_cast<std::size_t>(w)] == 0) {
                    state[static_cast<std::size_t>(w)] = 1;
                    stack.push_back({w, 0});
                }
            } else {
                state[static_cast<std::size_t>(v)] = 2;
                stack.pop_back();
            }
        }
    }
}

// Augmenting-path matching between out-copies (left) and in-copies (right).
// Deterministic: vertices and adjacency are scanned in index order.
struct Matching {
    std::vector<int> succ_of;  // left -> right partner, -1 if none
    std::vector<int> pred_of;  // right -> left partner, -1 if none
    int size = 0;
};

bool augment(const IndexedGraph& g, int u, std::vector<char>& visited, Matching& m) {
    for (int w : g.succ[static_cast<std::size_t>(u)]) {
        if (visited[static_cast<std::size_t>(w)]) continue;
        visited[static_cast<std::size_t>(w)] = 1;
        if (m.pred_of[static_cast<std::size_t>(w)] < 0 ||
            augment(g, m.pred_of[static_cast<std::size_t>(w)], visited, m)) {
            m.succ_of[static_cast<std::size_t>(u)] = w;
            m.pred_of[static_cast<std::size_t>(w)] = u;
            return true;
        }
    }
    return false;
}

Matching max_matching(const IndexedGraph& g) {
    const int n = static_cast<int>(g.ids.size());
    Matching m;
    m.succ_of.assign(static_cast<std::size_t>(n), -1);
    m.pred_of.assign(static_cast<std::size_t>(n), -1);
    for (int u = 0; u < n; ++u) {
        std::vector<char> visited(static_cast<std::size_t>(n), 0);
        if (augment(g, u, visited, m)) ++m.size;
    }
    return m;
}

BlockingSolution chains_from_matching(const IndexedGraph& g, const Matching& m) {
    BlockingSolution sol;
    const int n = static_cast<int>(g.ids.size());
    // Chains start at trips with no matched predecessor.
    for (int v = 0; v < n; ++v) {
        if (m.pred_of[static_cast<std::size_t>(v)] >= 0) continue;
        Block block;
        for (int cur = v; cur >= 0; cur = m.succ_of[static_cast<std::size_t>(cur)])
            block.trips.push_back(g.ids[static_cast<std::size_t>(cur)]);
        sol.edges_used += static_cast<int>(block.trips.size()) - 1;
        sol.blocks.push_back(std::move(block));
    }
    sol.bus_count = static_cast<int>(sol.blocks.size());
    return sol;
}

}  // namespace

BlockingSolution solve_blocking(const CompatibilityGraph& compat) {
    const IndexedGraph g = index_graph(compat);
    require_acyclic(g);
    return chains_from_matching(g, max_matching(g));
}

int count_saveable_buses(const CompatibilityGraph& compat) {
    const IndexedGraph g = index_graph(compat);
    require_acyclic(g);
    return max_matching(g).size;
}

int blocking_objective(const BlockingSolution& sol, int n_trips) {
    int alone = 0, middle = 0;
    int covered = 0;
    for (const auto& block : sol.blocks) {
        covered += static_cast<int>(block.trips.size());
        if (block.trips.size() == 1)
            ++alone;
        else
            middle += static_cast<int>(block.trips.size()) - 2;
    }
    if (covered != n_trips)
        throw std::invalid_argument("blocking solution does not cover every trip");
    return alone - middle;
}

BlockingSolution solve_blocking_oracle(const CompatibilityGraph& compat) {
    const IndexedGraph g = index_graph(compat);
    const int n = static_cast<int>(g.ids.size());
    if (n > 12)
        throw std::invalid_argument("blocking oracle is limited to 12 trips, got " +
                                    std::to_string(n));
    require_acyclic(g);

    std::vector<std::vector<char>> can_follow(
        static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
    for (int u = 0; u < n; ++u)
        for (int w : g.succ[static_cast<std::size_t>(u)])
            can_follow[static_cast<std::size_t>(u)][static_cast<std::size_t>(w)] = 1;

    // Every chain partition, built by appending each trip (in index order) to
    // an open chain tail or starting a fresh chain. Appending never shrinks
    // the block count, so branches at or beyond the incumbent are cut.
    std::vector<std::vector<int>> chains;
    std::vector<std::vector<int>> best_chains;
    int best = n + 1;

    auto rec = [&](auto&& self, int next) -> void {
        if (static_cast<int>(chains.size()) >= best) return;
        if (next == n) {
            best = static_cast<int>(chains.size());
            best_chains = chains;
            return;
        }
        // index loop: deeper frames grow and shrink the chain list
        const std::size_t open = chains.size();
        for (std::size_t ci = 0; ci < open; ++ci) {
            if (!can_follow[static_cast<std::size_t>(chains[ci].back())]
                           [static_cast<std::size_t>(next)])
                continue;
            chains[ci].push_back(next);
            self(self, next + 1);
            chains[ci].pop_back();
        }
        chains.push_back({next});
        self(self, next + 1);
        chains.pop_back();
    };
    rec(rec, 0);

    // Index order is a topological order only when the caller's trip order is;
    // appending forward-only may miss edges that point to lower indices, so
    // re-run on a topologically sorted relabeling if any edge goes backward.
    bool backward = false;
    for (int u = 0; u < n && !backward; ++u)
        for (int w : g.succ[static_cast<std::size_t>(u)])
            if (w < u) backward = true;
    if (backward) {
        // Kahn order, then map the problem onto it.
        std::vector<int> indeg(static_cast<std::size_t>(n), 0);
        for (int u = 0; u < n; ++u)
            for (int w : g.succ[static_cast<std::size_t>(u)]) ++indeg[static_cast<std::size_t>(w)];
        std::vector<int> order;
        std::vector<int> queue;
        for (int v = 0; v < n; ++v)
            if (indeg[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
        while (!queue.empty()) {
            std::sort(queue.begin(), queue.end());
            const int v = queue.front();
            queue.erase(queue.begin());
            order.push_back(v);
            for (int w : g.succ[static_cast<std::size_t>(v)])
                if (--indeg[static_cast<std::size_t>(w)] == 0) queue.push_back(w);
        }
        CompatibilityGraph relabeled;
        for (int v : order) relabeled.nodes.push_back(g.ids[static_cast<std::size_t>(v)]);
        for (const auto& e : compat.edges) relabeled.add_edge(e.first, e.second);
        return solve_blocking_oracle(relabeled);
    }

    BlockingSolution sol;
    for (const auto& chain : best_chains) {
        Block block;
        for (int v : chain) block.trips.push_back(g.ids[static_cast<std::size_t>(v)]);
        sol.edges_used += static_cast<int>(block.trips.size()) - 1;
        sol.blocks.push_back(std::move(block));
    }
    sol.bus_count = static_cast<int>(sol.blocks.size());
    return sol;
}

}  // namespace sbr
