#include <catch2/catch_amalgamated.hpp>

#include <relokit/core.hpp>

using namespace relokit;

TEST_CASE("grid construction enforces horizon ordering") {
    REQUIRE_NOTHROW(TimeGrid(1.0, 15, 30, 45));
    REQUIRE_NOTHROW(TimeGrid(15.0, 1, 1, 1));
    REQUIRE_THROWS_AS(TimeGrid(0.0, 1, 1, 1), input_error);
    REQUIRE_THROWS_AS(TimeGrid(-1.0, 1, 1, 1), input_error);
    REQUIRE_THROWS_AS(TimeGrid(1.0, 0, 1, 1), input_error);
    REQUIRE_THROWS_AS(TimeGrid(1.0, 16, 15, 45), input_error);
    REQUIRE_THROWS_AS(TimeGrid(1.0, 15, 46, 45), input_error);
}

TEST_CASE("grid exposes horizon lengths in minutes") {
    const TimeGrid g(15.0, 1, 2, 3);
    REQUIRE(g.period_minutes() == 15.0);
    REQUIRE(g.relocation_bound_minutes() == 30.0);
    REQUIRE(g.horizon_minutes() == 45.0);
}

TEST_CASE("slot_of floors minutes onto the grid") {
    const TimeGrid unit(1.0, 15, 30, 45);
    REQUIRE(slot_of(0.0, unit) == 0);
    REQUIRE(slot_of(59.5, unit) == 59);
    REQUIRE(slot_of(60.0, unit) == 60);

    const TimeGrid quarter(15.0, 1, 2, 3);
    REQUIRE(slot_of(30.0, quarter) == 2);
    REQUIRE(slot_of(44.9, quarter) == 2);
    REQUIRE(slot_of(45.0, quarter) == 3);

    REQUIRE_THROWS_AS(slot_of(-0.5, unit), input_error);
}

TEST_CASE("minutes_of inverts slot_of on slot boundaries") {
    const TimeGrid g(7.5, 2, 4, 8);
    for (long s = 0; s < 50; ++s) REQUIRE(slot_of(minutes_of(s, g), g) == s);
    REQUIRE_THROWS_AS(minutes_of(-1, g), input_error);
}

TEST_CASE("decision points step by the planning period") {
    const TimeGrid g(1.0, 15, 30, 45);
    REQUIRE(decision_points(g, 45) == std::vector<long>{0, 15, 30});
    REQUIRE(decision_points(g, 1440).size() == 96);
    REQUIRE(decision_points(g, 1440).back() == 1425);

    const TimeGrid whole(1.0, 10, 10, 10);
    REQUIRE(decision_points(whole, 10) == std::vector<long>{0});

    REQUIRE_THROWS_AS(decision_points(g, 14), input_error);
}

TEST_CASE("square matrix round-trips cells") {
    IntMatrix m(3, 5);
    REQUIRE(m.at(2, 2) == 5);
    m.at(1, 2) = 9;
    REQUIRE(m.at(1, 2) == 9);
    REQUIRE(m.at(2, 1) == 5);
    REQUIRE_THROWS_AS(IntMatrix(-1), input_error);
}

TEST_CASE("network validates matrix shapes and signs") {
    IntMatrix t(2, 1);
    REQUIRE_NOTHROW(ServiceNetwork({"a", "b"}, t));
    REQUIRE_THROWS_AS(ServiceNetwork({"a", "b", "c"}, t), input_error);

    IntMatrix bad(2, 1);
    bad.at(0, 1) = -2;
    REQUIRE_THROWS_AS(ServiceNetwork({"a", "b"}, bad), input_error);
}

TEST_CASE("operator travel defaults to the trip matrix") {
    IntMatrix t(2, 0);
    t.at(0, 1) = 7;
    t.at(1, 0) = 9;
    const ServiceNetwork net({"a", "b"}, t);
    REQUIRE(net.operator_travel_time(0, 1) == 7);
    REQUIRE(net.operator_travel_time(1, 0) == 9);

    IntMatrix op(2, 0);
    op.at(0, 1) = 3;
    const ServiceNetwork split({"a", "b"}, t, op);
    REQUIRE(split.travel_time(0, 1) == 7);
    REQUIRE(split.operator_travel_time(0, 1) == 3);
}

TEST_CASE("operator availability follows residual time") {
    OperatorState op;
    REQUIRE(op.available_now());
    op.residual_time = 3;
    REQUIRE_FALSE(op.available_now());
}

TEST_CASE("system state totals split parked and moving vehicles") {
    SystemState s;
    s.inventory = {3, 0, 2};
    s.en_route.push_back({1, 10, 4, true});
    s.en_route.push_back({2, 12, 1, false});
    REQUIRE(s.parked_total() == 5);
    REQUIRE(s.moving_total() == 5);
    REQUIRE(s.fleet_total() == 10);
}

static RelocationPlan small_plan() {
    RelocationPlan plan;
    plan.flows[{0, 1}] = 10;
    plan.tasks[{0, 1}] = {7, 3};
    Assignment a;
    a.operator_id = 0;
    a.feeder = 0;
    a.receiver = 1;
    a.task_index = 0;
    a.planned_size = 7;
    plan.assignments.push_back(a);
    return plan;
}

TEST_CASE("plan validation accepts a consistent decomposition") {
    REQUIRE_NOTHROW(validate_plan(small_plan(), 7));
}

TEST_CASE("plan validation rejects broken decompositions") {
    SECTION("train larger than eta") {
        auto plan = small_plan();
        plan.tasks[{0, 1}] = {8, 2};
        plan.assignments.clear();
        REQUIRE_THROWS_AS(validate_plan(plan, 7), input_error);
    }
    SECTION("partial train before the last") {
        auto plan = small_plan();
        plan.tasks[{0, 1}] = {3, 7};
        plan.assignments.clear();
        REQUIRE_THROWS_AS(validate_plan(plan, 7), input_error);
    }
    SECTION("sizes do not sum to the flow") {
        auto plan = small_plan();
        plan.tasks[{0, 1}] = {7, 2};
        plan.assignments.clear();
        REQUIRE_THROWS_AS(validate_plan(plan, 7), input_error);
    }
    SECTION("zero-size train") {
        RelocationPlan plan;
        plan.flows[{0, 1}] = 0;
        plan.tasks[{0, 1}] = {0};
        REQUIRE_THROWS_AS(validate_plan(plan, 7), input_error);
    }
}

TEST_CASE("plan validation rejects inconsistent assignments") {
    SECTION("unknown task index") {
        auto plan = small_plan();
        plan.assignments[0].task_index = 2;
        REQUIRE_THROWS_AS(validate_plan(plan, 7), input_error);
    }
    SECTION("size disagrees with the task") {
        auto plan = small_plan();
        plan.assignments[0].planned_size = 5;
        REQUIRE_THROWS_AS(validate_plan(plan, 7), input_error);
    }
    SECTION("operator doubly booked") {
        auto plan = small_plan();
        auto second = plan.assignments[0];
        second.task_index = 1;
        second.planned_size = 3;
        plan.assignments.push_back(second);
        REQUIRE_THROWS_AS(validate_plan(plan, 7), input_error);
    }
    SECTION("task doubly assigned") {
        auto plan = small_plan();
        auto second = plan.assignments[0];
        second.operator_id = 1;
        plan.assignments.push_back(second);
        REQUIRE_THROWS_AS(validate_plan(plan, 7), input_error);
    }
    SECTION("bad eta") {
        REQUIRE_THROWS_AS(validate_plan(small_plan(), 0), input_error);
    }
}
