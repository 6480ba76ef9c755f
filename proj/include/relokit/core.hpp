#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace relokit {

// Thrown when an operation receives arguments that violate its contract.
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a scenario/config file is malformed or inconsistent. CLI exit code 2.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when an input data file is missing or unreadable. CLI exit code 3.
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown by brute-force oracles when the instance exceeds their enumeration guard.
struct oracle_too_large : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Discretization of the operating day plus the three controller horizons,
// all expressed in whole slots of length tau minutes.
//   n_C: slots per planning period (decisions every n_C slots)
//   n_R: relocation completion bound
//   n_O: prediction horizon
// Construction enforces 1 <= n_C <= n_R <= n_O and tau > 0.
struct TimeGrid {
    double tau = 1.0;
    int n_C = 1;
    int n_R = 1;
    int n_O = 1;

    TimeGrid() = default;
    TimeGrid(double tau_minutes, int nc, int nr, int no)
        : tau(tau_minutes), n_C(nc), n_R(nr), n_O(no) {
        if (!(tau > 0.0))
            throw input_error("TimeGrid: tau must be positive");
        if (n_C < 1 || n_C > n_R || n_R > n_O)
            throw input_error("TimeGrid: need 1 <= n_C <= n_R <= n_O");
    }

    [[nodiscard]] double period_minutes() const { return n_C * tau; }
    [[nodiscard]] double relocation_bound_minutes() const { return n_R * tau; }
    [[nodiscard]] double horizon_minutes() const { return n_O * tau; }
};

// Maps a timestamp in minutes from day start to its slot index.
inline long slot_of(double minutes, const TimeGrid& grid) {
    if (minutes < 0.0)
        throw input_error("slot_of: negative timestamp");
    return static_cast<long>(std::floor(minutes / grid.tau));
}

// Start of a slot in minutes; inverse of slot_of on slot boundaries.
inline double minutes_of(long slot, const TimeGrid& grid) {
    if (slot < 0)
        throw input_error("minutes_of: negative slot");
    return static_cast<double>(slot) * grid.tau;
}

// Slots at which the controller re-plans: 0, n_C, 2*n_C, ... below day_slots.
inline std::vector<long> decision_points(const TimeGrid& grid, long day_slots) {
    if (day_slots < grid.n_C)
        throw input_error("decision_points: day shorter than one planning period");
    std::vector<long> points;
    for (long s = 0; s < day_slots; s += grid.n_C)
        points.push_back(s);
    return points;
}

// Square integer matrix with zone-indexed access.
struct IntMatrix {
    int n = 0;
    std::vector<int> cells;

    IntMatrix() = default;
    explicit IntMatrix(int size, int fill = 0) : n(size), cells(static_cast<size_t>(size) * size, fill) {
        if (size < 0)
            throw input_error("IntMatrix: negative size");
    }

    [[nodiscard]] int at(int i, int j) const { return cells[static_cast<size_t>(i) * n + j]; }
    int& at(int i, int j) { return cells[static_cast<size_t>(i) * n + j]; }
};

// Zones plus slot-valued travel times. travel(i,j) is the duration of a
// customer or relocation trip from i to j; operator_travel(i,j) is the
// repositioning time of an operator moving without a train (defaults to
// the trip matrix when not provided). Entries must be non-negative and
// diagonal-free trips of zero length are allowed only on the diagonal.
struct ServiceNetwork {
    std::vector<std::string> zone_names;
    IntMatrix travel;
    IntMatrix operator_travel;

    ServiceNetwork() = default;
    ServiceNetwork(std::vector<std::string> names, IntMatrix trip_times)
        : ServiceNetwork(std::move(names), trip_times, trip_times) {}
    ServiceNetwork(std::vector<std::string> names, IntMatrix trip_times, IntMatrix op_times)
        : zone_names(std::move(names)), travel(std::move(trip_times)), operator_travel(std::move(op_times)) {
        const int n = static_cast<int>(zone_names.size());
        if (travel.n != n || operator_travel.n != n)
            throw input_error("ServiceNetwork: matrix size does not match zone count");
        for (int v : travel.cells)
            if (v < 0) throw input_error("ServiceNetwork: negative travel time");
        for (int v : operator_travel.cells)
            if (v < 0) throw input_error("ServiceNetwork: negative operator travel time");
    }

    [[nodiscard]] int zone_count() const { return static_cast<int>(zone_names.size()); }
    [[nodiscard]] int travel_time(int i, int j) const { return travel.at(i, j); }
    [[nodiscard]] int operator_travel_time(int i, int j) const { return operator_travel.at(i, j); }
};

// One customer trip request. Slots and zones are already resolved against a
// TimeGrid and ServiceNetwork. customer_willingness is a stored uniform draw
// in [0,1) consumed by the user-based scheme (accept iff draw < gamma).
struct TripRequest {
    long request_slot = 0;
    int origin = 0;
    int destination = 0;
    int duration_slots = 1;
    double customer_willingness = 0.0;
};

// State of one relocation operator. residual_time is the number of slots
// until the operator is free counted from the current decision point;
// destination_zone is where the operator is (or will be when free).
struct OperatorState {
    int id = 0;
    int residual_time = 0;
    int destination_zone = 0;

    [[nodiscard]] bool available_now() const { return residual_time == 0; }
};

// One committed relocation task: operator u drives to feeder i, couples a
// train of planned_size vehicles, and delivers it to receiver j. All slots
// are absolute. A task whose feeder ran dry by pickup_slot realizes fewer
// vehicles than planned (possibly zero).
struct Assignment {
    int operator_id = 0;
    int feeder = 0;
    int receiver = 0;
    int task_index = 0;
    int planned_size = 1;
    long start_slot = 0;
    long pickup_slot = 0;
    long completion_slot = 0;
    long approach_slots = 0;  // empty travel to the feeder, waiting excluded
};

// A vehicle (or stacked train) currently driving between zones.
struct EnRouteVehicle {
    int destination = 0;
    long arrival_slot = 0;
    int vehicle_count = 1;
    bool relocation = false;
};

// Full simulator state at a slot boundary: per-zone parked inventory,
// vehicles in motion, operator roster, and tasks committed but not finished.
struct SystemState {
    long slot = 0;
    std::vector<int> inventory;
    std::vector<EnRouteVehicle> en_route;
    std::vector<OperatorState> operators;
    std::vector<Assignment> pending_tasks;

    [[nodiscard]] int parked_total() const {
        int s = 0;
        for (int v : inventory) s += v;
        return s;
    }
    [[nodiscard]] int moving_total() const {
        int s = 0;
        for (const auto& e : en_route) s += e.vehicle_count;
        return s;
    }
    [[nodiscard]] int fleet_total() const { return parked_total() + moving_total(); }
};

using ZonePair = std::pair<int, int>;

// Output of one controller pass at decision point k. flows holds the stage-2
// solution x(i,j) > 0; tasks its train decomposition; assignments the stage-3
// operator commitments; robotic_rates the continuous dispatch rates for the
// robotic scheme. Unused sections stay empty depending on scheme.
struct RelocationPlan {
    int decision_index = 0;
    std::map<ZonePair, int> flows;
    std::map<ZonePair, std::vector<int>> tasks;
    std::vector<Assignment> assignments;
    std::map<ZonePair, double> robotic_rates;

    [[nodiscard]] int total_flow() const {
        int s = 0;
        for (const auto& [pair, x] : flows) s += x;
        return s;
    }
};

// Checks internal plan consistency: every task list decomposes its flow with
// train sizes in [1, eta], full trains first; every assignment references an
// existing task exactly once; no operator appears twice. Throws input_error
// on the first violation.
inline void validate_plan(const RelocationPlan& plan, int eta) {
    if (eta < 1)
        throw input_error("validate_plan: eta must be >= 1");
    for (const auto& [pair, trains] : plan.tasks) {
        auto it = plan.flows.find(pair);
        const int x = it == plan.flows.end() ? 0 : it->second;
        int sum = 0;
        for (size_t l = 0; l < trains.size(); ++l) {
            const int p = trains[l];
            if (p < 1 || p > eta)
                throw input_error("validate_plan: train size outside [1, eta]");
            if (l + 1 < trains.size() && p != eta)
                throw input_error("validate_plan: only the last train may be partial");
            sum += p;
        }
        if (sum != x)
            throw input_error("validate_plan: tasks do not decompose flow");
    }
    std::map<int, int> operator_load;
    std::map<std::pair<ZonePair, int>, int> task_load;
    for (const auto& a : plan.assignments) {
        const ZonePair pair{a.feeder, a.receiver};
        auto it = plan.tasks.find(pair);
        if (it == plan.tasks.end() || a.task_index < 0 ||
            a.task_index >= static_cast<int>(it->second.size()))
            throw input_error("validate_plan: assignment references unknown task");
        if (a.planned_size != it->second[static_cast<size_t>(a.task_index)])
            throw input_error("validate_plan: assignment size disagrees with task");
        if (++operator_load[a.operator_id] > 1)
            throw input_error("validate_plan: operator assigned twice");
        if (++task_load[{pair, a.task_index}] > 1)
            throw input_error("validate_plan: task assigned twice");
    }
}

}  // namespace relokit
