#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <vector>

#include "relokit/core.hpp"

namespace relokit {

// Successive-shortest-path min-cost flow over integer capacities and costs.
// solve_negative augments only while the cheapest augmenting path has
// strictly negative cost, which maximizes sum(-cost * flow) without forcing
// a maximum flow. Cost per unit of flow is convex in the flow value, so
// stopping at the first non-improving path is globally optimal.
class MinCostFlow {
public:
    explicit MinCostFlow(int node_count) : adj_(static_cast<size_t>(node_count)) {
        if (node_count < 2)
            throw input_error("MinCostFlow: need at least two nodes");
    }

    // Adds a directed arc and its zero-capacity reverse; returns the arc id.
    int add_arc(int from, int to, long long cap, long long cost) {
        if (from < 0 || to < 0 || from >= static_cast<int>(adj_.size()) ||
            to >= static_cast<int>(adj_.size()) || cap < 0)
            throw input_error("MinCostFlow: bad arc");
        const int id = static_cast<int>(arcs_.size());
        arcs_.push_back({to, cap, cost});
        arcs_.push_back({from, 0, -cost});
        adj_[static_cast<size_t>(from)].push_back(id);
        adj_[static_cast<size_t>(to)].push_back(id + 1);
        return id;
    }

    struct Result {
        long long flow = 0;
        long long cost = 0;
    };

    Result solve_negative(int source, int sink) {
        Result total;
        while (true) {
            const auto path = shortest_path(source, sink);
            if (!path.reachable || path.dist >= 0) break;
            long long push = std::numeric_limits<long long>::max();
            for (int v = sink; v != source;) {
                const int a = path.parent_arc[static_cast<size_t>(v)];
                push = std::min(push, arcs_[static_cast<size_t>(a)].cap);
                v = arcs_[static_cast<size_t>(a ^ 1)].to;
            }
            for (int v = sink; v != source;) {
                const int a = path.parent_arc[static_cast<size_t>(v)];
                arcs_[static_cast<size_t>(a)].cap -= push;
                arcs_[static_cast<size_t>(a ^ 1)].cap += push;
                v = arcs_[static_cast<size_t>(a ^ 1)].to;
            }
            total.flow += push;
            total.cost += push * path.dist;
        }
        return total;
    }

    // Flow absorbed by the arc (its reverse arc's accumulated capacity).
    [[nodiscard]] long long flow_on(int arc_id) const {
        return arcs_[static_cast<size_t>(arc_id) ^ 1].cap;
    }

private:
    struct Arc {
        int to;
        long long cap;
        long long cost;
    };

    struct PathResult {
        bool reachable = false;
        long long dist = 0;
        std::vector<int> parent_arc;
    };

    // Bellman-Ford with a queue; residual graphs of shortest-path
    // augmentation never contain negative cycles, so this terminates.
    PathResult shortest_path(int source, int sink) const {
        constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
        const size_t n = adj_.size();
        std::vector<long long> dist(n, kInf);
        std::vector<char> queued(n, 0);
        PathResult out;
        out.parent_arc.assign(n, -1);
        dist[static_cast<size_t>(source)] = 0;
        std::deque<int> queue{source};
        queued[static_cast<size_t>(source)] = 1;
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            queued[static_cast<size_t>(u)] = 0;
            for (int id : adj_[static_cast<size_t>(u)]) {
                const Arc& a = arcs_[static_cast<size_t>(id)];
                if (a.cap <= 0) continue;
                const long long nd = dist[static_cast<size_t>(u)] + a.cost;
                if (nd < dist[static_cast<size_t>(a.to)]) {
                    dist[static_cast<size_t>(a.to)] = nd;
                    out.parent_arc[static_cast<size_t>(a.to)] = id;
                    if (!queued[static_cast<size_t>(a.to)]) {
                        queue.push_back(a.to);
                        queued[static_cast<size_t>(a.to)] = 1;
                    }
                }
            }
        }
        if (dist[static_cast<size_t>(sink)] >= kInf) return out;
        out.reachable = true;
        out.dist = dist[static_cast<size_t>(sink)];
        return out;
    }

    std::vector<Arc> arcs_;
    std::vector<std::vector<int>> adj_;
};

}  // namespace relokit
