// Walks one decision interval through the planning pipeline by hand: size up
// each zone, pick the relocation flows, cut them into trains, hand the trains
// to operators, and show the driverless dispatch plan for the same flows.
#include <relokit/relokit.hpp>

#include <cmath>
#include <cstdio>

using namespace relokit;

int main() {
    const TimeGrid grid(1.0, 10, 15, 20);
    IntMatrix travel(4);
    const int t[4][4] = {{0, 4, 6, 9}, {4, 0, 5, 8}, {6, 5, 0, 7}, {9, 8, 7, 0}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) travel.at(i, j) = t[i][j];
    const ServiceNetwork network({"harbor", "market", "campus", "stadium"}, travel);

    std::printf("planning interval: replan every %d slots, finish relocations inside %d,\n"
                "look %d slots ahead\n\n", grid.n_C, grid.n_R, grid.n_O);

    // Stage 1: per-zone imbalance from stock, arrivals already on the road,
    // and the demand expected before the horizon closes.
    const long stock[4] = {9, 1, 0, 6};
    const long en_route[4] = {1, 0, 1, 0};
    const double expected[4] = {3.0, 4.5, 3.5, 2.0};
    std::vector<long> b;
    std::printf("zone      stock  inbound  expected  imbalance\n");
    for (int z = 0; z < 4; ++z) {
        const double raw = worst_case_imbalance(stock[z], en_route[z], expected[z]);
        b.push_back(static_cast<long>(std::floor(raw)));
        std::printf("%-8s %6ld %8ld %9.1f %10ld\n", network.zone_names[z].c_str(), stock[z],
                    en_route[z], expected[z], b.back());
    }

    const auto report = classify_zones(b, "worst-case");
    std::printf("\nsurplus zones feed, deficit zones receive:");
    for (int z : report.feeders) std::printf(" +%s", network.zone_names[z].c_str());
    for (int z : report.receivers) std::printf(" -%s", network.zone_names[z].c_str());
    std::printf("\n\n");

    // Stage 2: pairwise utilities and the flow choice. Each moved vehicle is
    // worth the slack it leaves before the relocation bound.
    const auto utility = utility_matrix(report, network, grid);
    const auto flow = solve_relocation_flows(report, utility, grid);
    std::printf("chosen flows (utility %lld):\n", flow.objective);
    for (const auto& [pair, x] : flow.flows)
        std::printf("  %s -> %s: %d vehicles (worth %lld each)\n",
                    network.zone_names[pair.first].c_str(),
                    network.zone_names[pair.second].c_str(), x, utility.at(pair.first, pair.second));

    // Stage 3a: cut flows into trains no longer than eta and match them to
    // the crew. Pickup waits for the approach drive; completion ends the tow.
    const int eta = 3;
    const auto tasks = split_into_tasks(flow.flows, eta);
    std::vector<OperatorState> crew = {{0, 0, 1}, {1, 0, 3}};
    const auto plan = assign_operators(tasks, crew, network, grid);
    std::printf("\ncrew plan with trains of at most %d (efficiency %.2f):\n", eta, plan.objective);
    for (const auto& a : plan.assignments)
        std::printf("  operator %d: drive %s -> %s (%ld slots), tow %d to %s, done at slot %ld\n",
                    a.operator_id, network.zone_names[crew[a.operator_id].destination_zone].c_str(),
                    network.zone_names[a.feeder].c_str(), a.approach_slots, a.planned_size,
                    network.zone_names[a.receiver].c_str(), a.completion_slot);

    // Stage 3b: the driverless alternative spreads the same flows over the
    // interval as single-vehicle dispatches.
    const auto schedule = robotic_rates(flow.flows, network, grid);
    std::printf("\ndriverless dispatch of the same flows:\n");
    for (const auto& [pair, alpha] : schedule.rates)
        std::printf("  %s -> %s at %.2f vehicles per slot\n",
                    network.zone_names[pair.first].c_str(),
                    network.zone_names[pair.second].c_str(), alpha);
    for (const auto& d : schedule.dispatches)
        std::printf("  slot %ld: one vehicle %s -> %s\n", d.slot,
                    network.zone_names[d.feeder].c_str(), network.zone_names[d.receiver].c_str());

    // Coda: the probabilistic sizing of a single zone. The shortage curve
    // scores each stock level by the expected number of empty slots ahead.
    const std::vector<double> arrivals_pmf = {0.45, 0.35, 0.20};
    const std::vector<double> requests_pmf = {0.25, 0.45, 0.30};
    std::vector<DeltaDistribution> deltas(8, delta_distribution(arrivals_pmf, requests_pmf));
    const ShortageCurve curve(deltas, 8);
    std::printf("\nshortage scores for market over the next 8 slots:\n  ");
    for (long v = 0; v <= 5; ++v) std::printf("v=%ld: %.3f  ", v, curve.score(v));
    const long need = probabilistic_imbalance(curve, 1, 0.05);
    std::printf("\nwith 1 on hand and a 0.05 tolerance the zone bids %ld (a deficit of %ld)\n",
                need, -need);
    return 0;
}
