#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relokit/core.hpp"
#include "relokit/flow.hpp"
#include "relokit/rng.hpp"
#include "relokit/scheduler.hpp"

namespace relokit {

struct OracleBattery {
    int total = 0;
    int matched = 0;
    std::string first_mismatch;

    [[nodiscard]] bool ok() const { return total > 0 && matched == total; }
};

namespace detail {

inline std::vector<std::string> numbered_zone_names(int zones) {
    std::vector<std::string> names;
    names.reserve(static_cast<size_t>(zones));
    for (int i = 0; i < zones; ++i) names.push_back(std::to_string(i));
    return names;
}

}  // namespace detail

// Seeded random transportation instances (bounded feeders/receivers/supply,
// travel times within the relocation bound); the min-cost-flow solution must
// match the exhaustive optimum exactly on every one.
inline OracleBattery flow_oracle_battery(int instances, std::uint64_t seed, int max_feeders = 4,
                                         int max_receivers = 4, int max_b = 3) {
    OracleBattery out;
    SplitRng rng(substream(seed, "flow-oracle"));
    const TimeGrid grid(1.0, 15, 30, 45);
    for (int n = 0; n < instances; ++n) {
        const int nf = rng.next_int(1, max_feeders);
        const int nr = rng.next_int(1, max_receivers);
        const int zones = nf + nr;
        IntMatrix T(zones, 0);
        for (int i = 0; i < zones; ++i)
            for (int j = 0; j < zones; ++j)
                if (i != j) T.at(i, j) = rng.next_int(1, grid.n_R);
        const ServiceNetwork net(detail::numbered_zone_names(zones), T);
        ImbalanceReport rep;
        rep.estimator = "seeded";
        rep.b.resize(static_cast<size_t>(zones));
        for (int fi = 0; fi < nf; ++fi) {
            rep.b[static_cast<size_t>(fi)] = rng.next_int(1, max_b);
            rep.feeders.push_back(fi);
        }
        for (int ri = 0; ri < nr; ++ri) {
            rep.b[static_cast<size_t>(nf + ri)] = -rng.next_int(1, max_b);
            rep.receivers.push_back(nf + ri);
        }
        const auto utility = utility_matrix(rep, net, grid);
        const auto fast = solve_relocation_flows(rep, utility, grid);
        const auto slow = brute_force_flows(rep, utility);
        ++out.total;
        if (fast.objective == slow.objective) {
            ++out.matched;
        } else if (out.first_mismatch.empty()) {
            out.first_mismatch = "flow instance " + std::to_string(n) + ": solver " +
                                 std::to_string(fast.objective) + " vs oracle " +
                                 std::to_string(slow.objective);
        }
    }
    return out;
}

// Seeded random assignment instances (bounded operators/tasks, travel times
// that straddle the horizon so infeasible pairs occur); matching objective
// against full enumeration, scaled-integer equality.
inline OracleBattery assignment_oracle_battery(int instances, std::uint64_t seed,
                                               int max_operators = 6, int max_tasks = 6, int eta = 7) {
    OracleBattery out;
    SplitRng rng(substream(seed, "assignment-oracle"));
    const TimeGrid grid(1.0, 15, 30, 45);
    for (int n = 0; n < instances; ++n) {
        const int zones = rng.next_int(2, 5);
        IntMatrix T(zones, 0);
        for (int i = 0; i < zones; ++i)
            for (int j = 0; j < zones; ++j)
                if (i != j) T.at(i, j) = rng.next_int(1, 40);
        const ServiceNetwork net(detail::numbered_zone_names(zones), T);
        const int M = rng.next_int(1, max_operators);
        std::vector<OperatorState> ops;
        for (int u = 0; u < M; ++u) {
            OperatorState op;
            op.id = u;
            op.residual_time = rng.next_int(0, 20);
            op.destination_zone = rng.next_int(0, zones - 1);
            ops.push_back(op);
        }
        const int task_count = rng.next_int(1, max_tasks);
        std::map<ZonePair, std::vector<int>> tasks;
        for (int t = 0; t < task_count; ++t) {
            const int feeder = rng.next_int(0, zones - 1);
            const int receiver = (feeder + 1 + rng.next_int(0, zones - 2)) % zones;
            tasks[{feeder, receiver}].push_back(rng.next_int(1, eta));
        }
        const auto fast = assign_operators(tasks, ops, net, grid);
        const long long slow = brute_force_assignment(tasks, ops, net, grid);
        ++out.total;
        if (fast.objective_scaled == slow) {
            ++out.matched;
        } else if (out.first_mismatch.empty()) {
            out.first_mismatch = "assignment instance " + std::to_string(n) + ": solver " +
                                 std::to_string(fast.objective_scaled) + " vs oracle " +
                                 std::to_string(slow);
        }
    }
    return out;
}

}  // namespace relokit
