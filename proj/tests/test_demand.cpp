#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include <relokit/demand.hpp>

using namespace relokit;

namespace {

const TimeGrid kUnit(1.0, 15, 30, 45);

TripLog parse(const std::string& csv, const ZoneMap& zones, const TimeGrid& grid,
              const TripCsvOptions& options = {}) {
    std::istringstream in(csv);
    return parse_trip_csv(in, zones, grid, options);
}

}  // namespace

TEST_CASE("zone map assigns dense indices in name order") {
    const auto zones = ZoneMap::from_names({"4", "12", "33"});
    REQUIRE(zones.size() == 3);
    REQUIRE(zones.find("4") == 0);
    REQUIRE(zones.find("12") == 1);
    REQUIRE(zones.find("33") == 2);
    REQUIRE_FALSE(zones.find("99").has_value());
    REQUIRE_THROWS_AS(ZoneMap::from_names({"a", "a"}), input_error);
}

TEST_CASE("zone map survives a save and load round trip") {
    const auto zones = ZoneMap::from_names({"north", "south"});
    const std::string path = "/tmp/relokit_zone_roundtrip.csv";
    zones.save_csv(path);
    const auto back = ZoneMap::load_csv(path);
    REQUIRE(back.names == zones.names);
    REQUIRE_THROWS_AS(ZoneMap::load_csv("/nonexistent/zones.csv"), data_error);
}

TEST_CASE("a well-formed trip row maps to slot and duration") {
    const auto zones = ZoneMap::from_names({"4", "12"});
    const auto log = parse(
        "pickup_datetime,dropoff_datetime,pickup_zone,dropoff_zone\n"
        "2016-05-02 08:00:00,2016-05-02 08:12:00,4,12\n",
        zones, kUnit);
    REQUIRE(log.trips.size() == 1);
    REQUIRE(log.trips[0].request_slot == 480);
    REQUIRE(log.trips[0].duration_slots == 12);
    REQUIRE(log.trips[0].origin == 0);
    REQUIRE(log.trips[0].destination == 1);
    REQUIRE(log.day == "2016-05-02");
    REQUIRE(log.skipped_rows == 0);
}

TEST_CASE("column order does not matter and T separators parse") {
    const auto zones = ZoneMap::from_names({"4", "12"});
    const auto log = parse(
        "dropoff_zone,pickup_datetime,pickup_zone,dropoff_datetime\n"
        "12,2016-05-02T08:00,4,2016-05-02T08:12\n",
        zones, kUnit);
    REQUIRE(log.trips.size() == 1);
    REQUIRE(log.trips[0].request_slot == 480);
    REQUIRE(log.trips[0].duration_slots == 12);
}

TEST_CASE("coarser grids floor the slot and round the duration") {
    const auto zones = ZoneMap::from_names({"4", "12"});
    const TimeGrid quarter(15.0, 1, 2, 3);
    const auto log = parse(
        "pickup_datetime,dropoff_datetime,pickup_zone,dropoff_zone\n"
        "2016-05-02 08:05:00,2016-05-02 08:17:00,4,12\n",
        zones, quarter);
    REQUIRE(log.trips[0].request_slot == 32);   // 485 min / 15
    REQUIRE(log.trips[0].duration_slots == 1);  // 12 min -> 0.8 slots, half-up
}

TEST_CASE("sub-slot trips clamp to one slot") {
    const auto zones = ZoneMap::from_names({"4", "12"});
    const auto log = parse(
        "pickup_datetime,dropoff_datetime,pickup_zone,dropoff_zone\n"
        "2016-05-02 08:00:00,2016-05-02 08:00:20,4,12\n",
        zones, kUnit);
    REQUIRE(log.trips[0].duration_slots == 1);
}

TEST_CASE("broken rows are skipped and counted") {
    const auto zones = ZoneMap::from_names({"4", "12"});
    const auto log = parse(
        "pickup_datetime,dropoff_datetime,pickup_zone,dropoff_zone\n"
        "2016-05-02 08:00:00,2016-05-02 08:12:00,4,12\n"
        "garbage,2016-05-02 08:12:00,4,12\n"
        "2016-05-02 09:00:00,2016-05-02 09:05:00,7,12\n"
        "2016-05-02 10:00:00,2016-05-02 10:00:00,4,12\n"
        "2016-05-02 11:00:00,2016-05-02 10:59:00,4,12\n",
        zones, kUnit);
    REQUIRE(log.trips.size() == 1);
    REQUIRE(log.skipped_rows == 4);  // bad timestamp, unknown zone, zero and negative span
    REQUIRE(log.filtered_rows == 0);
}

TEST_CASE("zone filter drops rows with either endpoint outside") {
    const auto zones = ZoneMap::from_names({"4", "12", "33"});
    TripCsvOptions options;
    options.zone_filter = {"4", "12"};
    const auto log = parse(
        "pickup_datetime,dropoff_datetime,pickup_zone,dropoff_zone\n"
        "2016-05-02 08:00:00,2016-05-02 08:12:00,4,12\n"
        "2016-05-02 08:00:00,2016-05-02 08:12:00,4,33\n"
        "2016-05-02 08:00:00,2016-05-02 08:12:00,33,4\n"
        "2016-05-02 08:00:00,2016-05-02 08:12:00,4,99\n",
        zones, kUnit, options);
    REQUIRE(log.trips.size() == 1);
    REQUIRE(log.filtered_rows == 3);  // outside-filter zones, known or not
    REQUIRE(log.skipped_rows == 0);
}

TEST_CASE("without a date filter later days extend the slot axis") {
    const auto zones = ZoneMap::from_names({"4", "12"});
    const auto log = parse(
        "pickup_datetime,dropoff_datetime,pickup_zone,dropoff_zone\n"
        "2016-05-02 08:00:00,2016-05-02 08:12:00,4,12\n"
        "2016-05-03 00:30:00,2016-05-03 00:40:00,12,4\n",
        zones, kUnit);
    REQUIRE(log.trips.size() == 2);
    REQUIRE(log.trips[0].request_slot == 480);
    REQUIRE(log.trips[1].request_slot == 1440 + 30);
}

TEST_CASE("a date filter keeps only its day anchored at midnight") {
    const auto zones = ZoneMap::from_names({"4", "12"});
    TripCsvOptions options;
    options.date_filter = "2016-05-03";
    const auto log = parse(
        "pickup_datetime,dropoff_datetime,pickup_zone,dropoff_zone\n"
        "2016-05-02 08:00:00,2016-05-02 08:12:00,4,12\n"
        "2016-05-03 00:30:00,2016-05-03 00:40:00,12,4\n",
        zones, kUnit, options);
    REQUIRE(log.trips.size() == 1);
    REQUIRE(log.trips[0].request_slot == 30);
    REQUIRE(log.day == "2016-05-03");
    REQUIRE(log.filtered_rows == 1);
}

TEST_CASE("trips come out sorted by slot with file order preserved on ties") {
    const auto zones = ZoneMap::from_names({"4", "12"});
    const auto log = parse(
        "pickup_datetime,dropoff_datetime,pickup_zone,dropoff_zone\n"
        "2016-05-02 09:00:00,2016-05-02 09:10:00,4,12\n"
        "2016-05-02 08:00:00,2016-05-02 08:10:00,12,4\n"
        "2016-05-02 08:00:00,2016-05-02 08:20:00,4,12\n",
        zones, kUnit);
    REQUIRE(log.trips.size() == 3);
    REQUIRE(log.trips[0].request_slot == 480);
    REQUIRE(log.trips[0].origin == 1);  // first 08:00 row in file order
    REQUIRE(log.trips[1].origin == 0);
    REQUIRE(log.trips[2].request_slot == 540);
}

TEST_CASE("willingness draws are reproducible for identical content") {
    const auto zones = ZoneMap::from_names({"4", "12"});
    const std::string csv =
        "pickup_datetime,dropoff_datetime,pickup_zone,dropoff_zone\n"
        "2016-05-02 08:00:00,2016-05-02 08:12:00,4,12\n"
        "2016-05-02 09:00:00,2016-05-02 09:12:00,12,4\n";
    const auto a = parse(csv, zones, kUnit);
    const auto b = parse(csv, zones, kUnit);
    REQUIRE(a.trips.size() == 2);
    for (size_t i = 0; i < a.trips.size(); ++i) {
        REQUIRE(a.trips[i].customer_willingness == b.trips[i].customer_willingness);
        REQUIRE(a.trips[i].customer_willingness >= 0.0);
        REQUIRE(a.trips[i].customer_willingness < 1.0);
    }
}

TEST_CASE("headers missing a required column fail loudly") {
    const auto zones = ZoneMap::from_names({"4"});
    std::istringstream in("pickup_datetime,dropoff_datetime,pickup_zone\nx,y,z\n");
    REQUIRE_THROWS_AS(parse_trip_csv(in, zones, kUnit), data_error);
    std::istringstream empty("");
    REQUIRE_THROWS_AS(parse_trip_csv(empty, zones, kUnit), data_error);
    REQUIRE_THROWS_AS(parse_trip_csv("/nonexistent/trips.csv", zones, kUnit), data_error);
}

TEST_CASE("travel times average per pair with fallbacks") {
    TripLog log;
    log.zone_count = 3;
    auto add = [&](int o, int d, int dur) {
        TripRequest t;
        t.origin = o;
        t.destination = d;
        t.duration_slots = dur;
        log.trips.push_back(t);
    };
    add(0, 1, 10);
    add(0, 1, 12);
    add(0, 1, 14);
    add(1, 0, 9);
    const auto m = build_travel_time_matrix(log, 3);
    REQUIRE(m.at(0, 1) == 12);  // direct mean
    REQUIRE(m.at(1, 0) == 9);   // direct mean
    // zone 2 never appears: global mean (10+12+14+9)/4 = 11.25 -> 11
    REQUIRE(m.at(0, 2) == 11);
    REQUIRE(m.at(2, 0) == 11);
    REQUIRE(m.at(2, 2) == 11);
}

TEST_CASE("unobserved direction borrows the reverse mean") {
    TripLog log;
    log.zone_count = 2;
    TripRequest t;
    t.origin = 1;
    t.destination = 0;
    t.duration_slots = 9;
    log.trips.push_back(t);
    const auto m = build_travel_time_matrix(log, 2);
    REQUIRE(m.at(0, 1) == 9);
    REQUIRE(m.at(1, 0) == 9);
}

TEST_CASE("travel means round half up and never drop below one slot") {
    TripLog log;
    log.zone_count = 2;
    for (int dur : {1, 2}) {
        TripRequest t;
        t.origin = 0;
        t.destination = 1;
        t.duration_slots = dur;
        log.trips.push_back(t);
    }
    REQUIRE(build_travel_time_matrix(log, 2).at(0, 1) == 2);  // mean 1.5

    TripLog empty;
    empty.zone_count = 2;
    REQUIRE_THROWS_AS(build_travel_time_matrix(empty, 2), input_error);
}

TEST_CASE("slot counts place requests at departure and arrivals at dropoff") {
    TripLog log;
    log.zone_count = 2;
    TripRequest t;
    t.request_slot = 3;
    t.origin = 0;
    t.destination = 1;
    t.duration_slots = 4;
    log.trips.push_back(t);
    const auto g = slot_counts(log, 2, 10);
    REQUIRE(g.request_count(0, 3) == 1);
    REQUIRE(g.arrival_count(1, 7) == 1);
    REQUIRE(g.request_count(1, 3) == 0);

    // Arrival past the cap is dropped, the request still counts.
    TripLog tail = log;
    tail.trips[0].duration_slots = 20;
    const auto h = slot_counts(tail, 2, 10);
    REQUIRE(h.request_count(0, 3) == 1);
    long arrivals = 0;
    for (long s = 0; s < 10; ++s) arrivals += h.arrival_count(1, s);
    REQUIRE(arrivals == 0);
}

TEST_CASE("request histogram pools history days into masses") {
    const TimeGrid g(1.0, 1, 1, 1);
    std::vector<SlotCounts> days;
    for (int c : {0, 1, 1, 2}) {
        SlotCounts d(1, 1);
        d.requests[0] = c;
        days.push_back(d);
    }
    const auto model = build_demand_model(days, g, 0);
    REQUIRE(model.beta_C == 2);
    const auto& f = model.request_hist(0, 1);
    REQUIRE(f.size() == 3);
    REQUIRE(f[0] == Catch::Approx(0.25));
    REQUIRE(f[1] == Catch::Approx(0.50));
    REQUIRE(f[2] == Catch::Approx(0.25));
    double sum = 0.0;
    for (double p : f) sum += p;
    REQUIRE(sum == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("counts beyond the cap fold into the top bucket") {
    const TimeGrid g(1.0, 1, 1, 1);
    std::vector<SlotCounts> days;
    for (int c : {0, 5}) {
        SlotCounts d(1, 1);
        d.requests[0] = c;
        days.push_back(d);
    }
    const auto model = build_demand_model(days, g, 0, 3);
    REQUIRE(model.beta_C == 3);
    const auto& f = model.request_hist(0, 1);
    REQUIRE(f[0] == Catch::Approx(0.5));
    REQUIRE(f[3] == Catch::Approx(0.5));
}

TEST_CASE("window aggregate sums per-slot means") {
    // Five days, one request per day staggered so every slot of the
    // 45-slot window has mean 0.2: the expected request total is 9.
    const TimeGrid g(1.0, 15, 30, 45);
    std::vector<SlotCounts> days;
    for (int d = 0; d < 5; ++d) {
        SlotCounts day(1, 45);
        for (long s = 0; s < 45; ++s)
            if (s % 5 == d) day.requests[static_cast<size_t>(s)] = 1;
        days.push_back(day);
    }
    const auto model = build_demand_model(days, g, 0);
    REQUIRE(model.C[0] == Catch::Approx(9.0).margin(1e-12));
    REQUIRE(model.D[0] == Catch::Approx(0.0));
}

TEST_CASE("model window follows the anchor decision point") {
    const TimeGrid g(1.0, 2, 2, 2);
    SlotCounts day(1, 6);
    day.requests[4] = 3;  // absolute slot 4 = anchor 2*2 + (t=1) - 1
    const auto model = build_demand_model(std::vector<SlotCounts>{day}, g, 2);
    REQUIRE(model.request_hist(0, 1)[3] == Catch::Approx(1.0));
    REQUIRE(model.request_hist(0, 2)[0] == Catch::Approx(1.0));
    REQUIRE_THROWS_AS(build_demand_model(std::vector<SlotCounts>{}, g, 0), input_error);
}

TEST_CASE("imbalance ratio signs follow the dominant side") {
    TripLog log;
    log.zone_count = 2;
    auto add = [&](int o, int d, long slot, int dur, int copies) {
        for (int c = 0; c < copies; ++c) {
            TripRequest t;
            t.origin = o;
            t.destination = d;
            t.request_slot = slot;
            t.duration_slots = dur;
            log.trips.push_back(t);
        }
    };
    SECTION("arrivals dominate") {
        add(1, 0, 0, 5, 40);  // 40 arrivals into zone 0 at slot 5
        add(0, 1, 0, 5, 10);  // 10 departures from zone 0
        REQUIRE(imbalance_ratio(log, 0, 0, 10) == Catch::Approx(4.0));
    }
    SECTION("departures dominate") {
        add(1, 0, 0, 5, 10);
        add(0, 1, 0, 5, 40);
        REQUIRE(imbalance_ratio(log, 0, 0, 10) == Catch::Approx(-4.0));
    }
    SECTION("balanced zone reads one") {
        add(1, 0, 0, 5, 25);
        add(0, 1, 0, 5, 25);
        REQUIRE(imbalance_ratio(log, 0, 0, 10) == Catch::Approx(1.0));
    }
    SECTION("one-sided zones read infinite") {
        add(1, 0, 0, 5, 3);
        REQUIRE(std::isinf(imbalance_ratio(log, 0, 0, 10)));
        REQUIRE(imbalance_ratio(log, 0, 0, 10) > 0);
        REQUIRE(imbalance_ratio(log, 1, 0, 10) < 0);
        REQUIRE(std::isinf(imbalance_ratio(log, 1, 0, 10)));
    }
    SECTION("dead zone reads undefined") {
        add(1, 0, 50, 5, 1);  // outside the window
        REQUIRE(std::isnan(imbalance_ratio(log, 0, 0, 10)));
        REQUIRE_THROWS_AS(imbalance_ratio(log, 0, 5, 4), input_error);
    }
    SECTION("window edges are inclusive on both sides") {
        add(0, 1, 10, 5, 1);  // departure exactly at t2
        REQUIRE(imbalance_ratio(log, 0, 0, 10) < 0);
        REQUIRE(std::isnan(imbalance_ratio(log, 0, 0, 9)));
    }
}

namespace {

TripLog demand_at(const std::vector<std::pair<int, long>>& origin_slots, int zones) {
    TripLog log;
    log.zone_count = zones;
    for (const auto& [origin, slot] : origin_slots) {
        TripRequest t;
        t.origin = origin;
        t.destination = (origin + 1) % zones;
        t.request_slot = slot;
        t.duration_slots = 5;
        log.trips.push_back(t);
    }
    return log;
}

}  // namespace

TEST_CASE("initial placement splits the fleet by morning demand share") {
    SECTION("exact shares") {
        const auto log = demand_at({{0, 0}, {0, 10}, {0, 20}, {1, 30}}, 2);
        REQUIRE(initial_fleet_placement(log, 4, kUnit) == std::vector<int>{3, 1});
    }
    SECTION("three zones") {
        std::vector<std::pair<int, long>> rows;
        for (int c = 0; c < 5; ++c) rows.push_back({0, c});
        for (int c = 0; c < 3; ++c) rows.push_back({1, c});
        for (int c = 0; c < 2; ++c) rows.push_back({2, c});
        REQUIRE(initial_fleet_placement(demand_at(rows, 3), 10, kUnit) ==
                std::vector<int>{5, 3, 2});
    }
    SECTION("largest remainder with ties to the lower zone") {
        const auto log = demand_at({{0, 0}, {1, 0}}, 2);
        REQUIRE(initial_fleet_placement(log, 3, kUnit) == std::vector<int>{2, 1});
    }
    SECTION("quiet mornings fall back to whole-day counts") {
        const auto log = demand_at({{1, 200}, {1, 300}}, 2);
        REQUIRE(initial_fleet_placement(log, 2, kUnit) == std::vector<int>{0, 2});
    }
    SECTION("no trips at all spread uniformly") {
        TripLog log;
        log.zone_count = 2;
        REQUIRE(initial_fleet_placement(log, 4, kUnit) == std::vector<int>{2, 2});
        REQUIRE(initial_fleet_placement(log, 5, kUnit) == std::vector<int>{3, 2});
    }
    SECTION("bad inputs") {
        REQUIRE_THROWS_AS(initial_fleet_placement(demand_at({{0, 0}}, 1), -1, kUnit), input_error);
        TripLog log;
        REQUIRE_THROWS_AS(initial_fleet_placement(log, 1, kUnit), input_error);
    }
}

TEST_CASE("synthetic demand is seed-deterministic") {
    SyntheticSpec spec;
    spec.zones = 2;
    spec.slots = 100;
    spec.departure_rate = {RateProfile(0.2), RateProfile(0.1)};
    spec.destination_weights = {{0.0, 1.0}, {1.0, 0.0}};
    spec.travel = IntMatrix(2, 3);
    const auto a = synthesize_demand(spec, 9);
    const auto b = synthesize_demand(spec, 9);
    const auto c = synthesize_demand(spec, 10);
    REQUIRE(a.trips.size() == b.trips.size());
    for (size_t i = 0; i < a.trips.size(); ++i) {
        REQUIRE(a.trips[i].request_slot == b.trips[i].request_slot);
        REQUIRE(a.trips[i].origin == b.trips[i].origin);
        REQUIRE(a.trips[i].destination == b.trips[i].destination);
        REQUIRE(a.trips[i].customer_willingness == b.trips[i].customer_willingness);
    }
    bool differs = c.trips.size() != a.trips.size();
    for (size_t i = 0; !differs && i < a.trips.size(); ++i)
        differs = a.trips[i].request_slot != c.trips[i].request_slot ||
                  a.trips[i].origin != c.trips[i].origin;
    REQUIRE(differs);
    REQUIRE_FALSE(a.empty());
}

TEST_CASE("synthetic specs validate their shape") {
    SyntheticSpec spec;
    spec.zones = 2;
    spec.slots = 10;
    spec.departure_rate = {RateProfile(0.1), RateProfile(0.1)};
    spec.destination_weights = {{0.5, 0.5}, {0.98, 0.0}};  // second row sums to 0.98
    spec.travel = IntMatrix(2, 1);
    REQUIRE_THROWS_AS(spec.validate(), config_error);
    spec.destination_weights[1] = {1.0, 0.0};
    REQUIRE_NOTHROW(spec.validate());
    spec.departure_rate[0] = RateProfile(-0.1);
    REQUIRE_THROWS_AS(spec.validate(), config_error);
}

TEST_CASE("rate profiles step at segment starts") {
    RateProfile p;
    p.segments = {{0, 0.5}, {60, 2.0}, {120, 0.0}};
    REQUIRE(p.rate_at(0) == 0.5);
    REQUIRE(p.rate_at(59) == 0.5);
    REQUIRE(p.rate_at(60) == 2.0);
    REQUIRE(p.rate_at(200) == 0.0);
}
