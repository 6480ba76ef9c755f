#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <vector>

#include <relokit/flow.hpp>
#include <relokit/mincostflow.hpp>
#include <relokit/oracle.hpp>
#include <relokit/rng.hpp>

using namespace relokit;

namespace {

const TimeGrid kGrid(1.0, 15, 30, 45);

ServiceNetwork three_zone_network() {
    IntMatrix t(3, 10);
    t.at(0, 1) = 5;
    t.at(0, 2) = 20;
    for (int i = 0; i < 3; ++i) t.at(i, i) = 0;
    return ServiceNetwork({"A", "C", "D"}, t);
}

}  // namespace

TEST_CASE("pair utility is the residual relocation time") {
    IntMatrix t(2, 12);
    t.at(0, 0) = 0;
    t.at(1, 1) = 0;
    const ServiceNetwork net({"a", "b"}, t);
    const auto report = classify_zones({3, -2}, "x");
    const auto u = utility_matrix(report, net, kGrid);
    REQUIRE(u.at(0, 1) == 18);   // 30 - 12
    REQUIRE(u.at(1, 0) == -30);  // not a feeder-receiver pair
    REQUIRE(u.at(0, 0) == -30);
    REQUIRE(u.at(1, 1) == -30);

    const auto bad = classify_zones({1, -1, 0}, "x");
    REQUIRE_THROWS_AS(utility_matrix(bad, net, kGrid), input_error);
}

TEST_CASE("flow solver splits supply across receivers by utility") {
    const auto net = three_zone_network();
    const auto report = classify_zones({2, -1, -3}, "x");
    const auto u = utility_matrix(report, net, kGrid);
    REQUIRE(u.at(0, 1) == 25);
    REQUIRE(u.at(0, 2) == 10);

    const auto sol = solve_relocation_flows(report, u, kGrid);
    REQUIRE(sol.objective == 35);
    REQUIRE(sol.flows.size() == 2);
    REQUIRE(sol.flows.at({0, 1}) == 1);
    REQUIRE(sol.flows.at({0, 2}) == 1);

    const auto oracle = brute_force_flows(report, u);
    REQUIRE(oracle.objective == sol.objective);
    REQUIRE(oracle.flows == sol.flows);
}

TEST_CASE("pairs with nothing to spare carry no flow") {
    IntMatrix t(2, 30);  // travel exactly fills the bound, J = 0
    t.at(0, 0) = 0;
    t.at(1, 1) = 0;
    const ServiceNetwork net({"a", "b"}, t);
    const auto report = classify_zones({4, -4}, "x");
    const auto u = utility_matrix(report, net, kGrid);
    REQUIRE(u.at(0, 1) == 0);
    const auto sol = solve_relocation_flows(report, u, kGrid);
    REQUIRE(sol.flows.empty());
    REQUIRE(sol.objective == 0);
    REQUIRE(brute_force_flows(report, u).objective == 0);
}

TEST_CASE("one-sided imbalance reports produce empty plans") {
    const auto net = three_zone_network();
    for (auto b : {std::vector<long>{2, 1, 0}, std::vector<long>{-2, -1, 0}}) {
        const auto report = classify_zones(b, "x");
        const auto u = utility_matrix(report, net, kGrid);
        const auto sol = solve_relocation_flows(report, u, kGrid);
        REQUIRE(sol.flows.empty());
        REQUIRE(sol.objective == 0);
    }
}

TEST_CASE("solver agrees with the exhaustive oracle on random instances") {
    const auto battery = flow_oracle_battery(60, 5);
    INFO(battery.first_mismatch);
    REQUIRE(battery.ok());
    REQUIRE(battery.total == 60);
    REQUIRE(battery.matched == 60);
}

TEST_CASE("solutions respect supply and demand on random instances") {
    SplitRng rng(substream(11, "flow-feasibility"));
    for (int rep = 0; rep < 80; ++rep) {
        const int zones = static_cast<int>(rng.next_int(2, 7));
        std::vector<long> b(static_cast<size_t>(zones));
        bool has_f = false, has_r = false;
        for (auto& v : b) {
            v = rng.next_int(0, 8) - 4;
            has_f = has_f || v > 0;
            has_r = has_r || v < 0;
        }
        if (!has_f || !has_r) continue;
        IntMatrix t(zones);
        for (int i = 0; i < zones; ++i)
            for (int j = 0; j < zones; ++j)
                t.at(i, j) = i == j ? 0 : static_cast<int>(rng.next_int(1, 40));
        std::vector<std::string> names;
        for (int i = 0; i < zones; ++i) names.push_back(std::to_string(i));
        const ServiceNetwork net(names, t);
        const auto report = classify_zones(b, "x");
        const auto u = utility_matrix(report, net, kGrid);
        const auto sol = solve_relocation_flows(report, u, kGrid);

        std::map<int, long> out_by_feeder, in_by_receiver;
        long long recomputed = 0;
        for (const auto& [pair, x] : sol.flows) {
            REQUIRE(x > 0);
            REQUIRE(u.at(pair.first, pair.second) > 0);
            out_by_feeder[pair.first] += x;
            in_by_receiver[pair.second] += x;
            recomputed += static_cast<long long>(x) * u.at(pair.first, pair.second);
        }
        for (const auto& [zone, total] : out_by_feeder)
            REQUIRE(total <= b[static_cast<size_t>(zone)]);
        for (const auto& [zone, total] : in_by_receiver)
            REQUIRE(total <= -b[static_cast<size_t>(zone)]);
        REQUIRE(recomputed == sol.objective);
    }
}

TEST_CASE("repeat solves give identical answers") {
    const auto net = three_zone_network();
    const auto report = classify_zones({2, -1, -3}, "x");
    const auto u = utility_matrix(report, net, kGrid);
    const auto a = solve_relocation_flows(report, u, kGrid);
    const auto b = solve_relocation_flows(report, u, kGrid);
    REQUIRE(a.flows == b.flows);
    REQUIRE(a.objective == b.objective);
}

TEST_CASE("the exhaustive oracle refuses oversized instances") {
    std::vector<long> b(9, -1);
    b[0] = 100;  // C(108, 8) ways to spread one feeder over 8 receivers
    std::vector<std::string> names;
    IntMatrix t(9, 3);
    for (int i = 0; i < 9; ++i) {
        names.push_back(std::to_string(i));
        t.at(i, i) = 0;
    }
    const ServiceNetwork net(names, t);
    const auto report = classify_zones(b, "x");
    const auto u = utility_matrix(report, net, kGrid);
    REQUIRE_THROWS_AS(brute_force_flows(report, u), oracle_too_large);
}

TEST_CASE("flows decompose into full trains first") {
    REQUIRE(split_into_tasks(10, 7) == std::vector<int>{7, 3});
    REQUIRE(split_into_tasks(7, 7) == std::vector<int>{7});
    REQUIRE(split_into_tasks(16, 7) == std::vector<int>{7, 7, 2});
    REQUIRE(split_into_tasks(3, 7) == std::vector<int>{3});
    REQUIRE(split_into_tasks(0, 7).empty());
    REQUIRE(split_into_tasks(4, 1) == std::vector<int>{1, 1, 1, 1});
    REQUIRE_THROWS_AS(split_into_tasks(1, 0), input_error);
    REQUIRE_THROWS_AS(split_into_tasks(-1, 7), input_error);

    std::map<ZonePair, int> flows{{{0, 1}, 10}, {{2, 3}, 0}};
    const auto tasks = split_into_tasks(flows, 7);
    REQUIRE(tasks.size() == 1);
    REQUIRE(tasks.at({0, 1}) == std::vector<int>{7, 3});
}

TEST_CASE("min-cost flow stops at the first non-improving path") {
    MinCostFlow net(2);
    const int cheap = net.add_arc(0, 1, 1, -3);
    const int dear = net.add_arc(0, 1, 1, 1);
    const auto result = net.solve_negative(0, 1);
    REQUIRE(result.flow == 1);
    REQUIRE(result.cost == -3);
    REQUIRE(net.flow_on(cheap) == 1);
    REQUIRE(net.flow_on(dear) == 0);
}

TEST_CASE("min-cost flow saturates all improving capacity") {
    MinCostFlow net(3);
    const int first = net.add_arc(0, 1, 5, -2);
    const int second = net.add_arc(1, 2, 3, 1);  // net path cost -1
    const auto result = net.solve_negative(0, 2);
    REQUIRE(result.flow == 3);
    REQUIRE(result.cost == -3);
    REQUIRE(net.flow_on(first) == 3);
    REQUIRE(net.flow_on(second) == 3);
    REQUIRE_THROWS_AS(MinCostFlow(1), input_error);
    MinCostFlow bad(2);
    REQUIRE_THROWS_AS(bad.add_arc(0, 5, 1, 0), input_error);
    REQUIRE_THROWS_AS(bad.add_arc(0, 1, -1, 0), input_error);
}
