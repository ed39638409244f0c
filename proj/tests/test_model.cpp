#include "helpers.hpp"
#include "sidsp/construct.hpp"

#include <doctest.h>

using namespace sidsp;
using sidsp::test::TinyBuilder;

TEST_CASE("due_time follows the priority buckets") {
    CHECK(due_time(1) == 24);
    CHECK(due_time(2) == 24);
    CHECK(due_time(3) == 24);
    CHECK(due_time(4) == 12);
    CHECK(due_time(5) == 12);
    CHECK(due_time(6) == 12);
    CHECK(due_time(7) == 6);
    CHECK(due_time(9) == 6);
    CHECK(due_time(10) == 3);
    CHECK_THROWS_AS(due_time(0), std::invalid_argument);
    CHECK_THROWS_AS(due_time(11), std::invalid_argument);
}

namespace {

Instance two_station_instance() {
    return TinyBuilder{}
        .sat("satA", 30)
        .sat("satB", 30)
        .station("gs0")
        .window("wA", "gs0", "satA", 0, 500)
        .window("wB", "gs0", "satB", 0, 800)
        .datum("d0", "satA", 5, 100, 0)
        .datum("d1", "satB", 5, 100, 0)
        .build();
}

Schedule two_task_schedule(Seconds gap) {
    Schedule s;
    DownlinkTask a;
    a.id = "dt-wA";
    a.window = "wA";
    a.begin = 0;
    a.duration = 100;
    a.end = 100;
    a.dset = {{"d0", 100}};
    DownlinkTask b;
    b.id = "dt-wB";
    b.window = "wB";
    b.begin = 100 + gap;
    b.duration = 100;
    b.end = b.begin + 100;
    b.dset = {{"d1", 100}};
    s.tasks = {a, b};
    s.plans["d0"] = {"d0", {{"wA", 100}}};
    s.plans["d1"] = {"d1", {{"wB", 100}}};
    s.scheduled = {"d0", "d1"};
    return s;
}

}  // namespace

TEST_CASE("validate_schedule: sigma gap between cross-satellite station neighbors") {
    Instance inst = two_station_instance();
    SolveMode mode = parse_mode("segment:rearrange");

    auto ok = validate_schedule(inst, two_task_schedule(60), mode);
    CHECK(ok.empty());

    auto bad = validate_schedule(inst, two_task_schedule(59), mode);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0].kind == ViolationKind::SetupGap);
}

TEST_CASE("validate_schedule: empty schedule is feasible on any instance") {
    Instance inst = two_station_instance();
    Schedule empty;
    for (const char* m : {"segment:rearrange", "segment:fofd", "unsegment:rearrange",
                          "unsegment:fofd"})
        CHECK(validate_schedule(inst, empty, parse_mode(m)).empty());
}

TEST_CASE("validate_schedule: undersized segment is reported with its datum") {
    Instance inst = TinyBuilder{}
                        .sat("satA", 30)
                        .station("gs0")
                        .window("w0", "gs0", "satA", 0, 400)
                        .window("w1", "gs0", "satA", 500, 900)
                        .datum("d0", "satA", 5, 100, 0)
                        .build();
    Schedule s;
    DownlinkTask t0;
    t0.id = "dt-w0";
    t0.window = "w0";
    t0.begin = 0;
    t0.duration = 20;
    t0.end = 20;
    t0.dset = {{"d0", 20}};
    DownlinkTask t1;
    t1.id = "dt-w1";
    t1.window = "w1";
    t1.begin = 500;
    t1.duration = 80;
    t1.end = 580;
    t1.dset = {{"d0", 80}};
    s.tasks = {t0, t1};
    s.plans["d0"] = {"d0", {{"w0", 20}, {"w1", 80}}};
    s.scheduled = {"d0"};

    auto violations = validate_schedule(inst, s, parse_mode("segment:rearrange"));
    std::vector<Violation> seg;
    for (const auto& v : violations)
        if (v.kind == ViolationKind::SegmentMinimum) seg.push_back(v);
    REQUIRE(seg.size() == 1);
    CHECK(seg[0].datum == "d0");
    CHECK(seg[0].task == "dt-w0");  // the 20 s piece
}

TEST_CASE("validate_schedule: unresolved ids are structural, not violations") {
    Instance inst = two_station_instance();
    Schedule s;
    DownlinkTask t;
    t.id = "dt-x";
    t.window = "nope";
    t.begin = 0;
    t.duration = 100;
    t.end = 100;
    t.dset = {{"d0", 100}};
    s.tasks = {t};
    CHECK_THROWS_AS(validate_schedule(inst, s, parse_mode("segment:rearrange")),
                    structural_error);
}

TEST_CASE("validate_schedule is deterministic and order-normalized") {
    Instance inst = two_station_instance();
    Schedule s = two_task_schedule(10);  // setup-gap violation
    s.tasks[0].duration = 20;            // also below d0 and inconsistent sums
    auto a = validate_schedule(inst, s, parse_mode("segment:rearrange"));
    auto b = validate_schedule(inst, s, parse_mode("segment:rearrange"));
    CHECK(a == b);
    CHECK(std::is_sorted(a.begin(), a.end()));
}

TEST_CASE("failure_rate examples") {
    Instance inst = TinyBuilder{}
                        .sat("satA", 10)
                        .station("gs0")
                        .window("w0", "gs0", "satA", 0, 1000)
                        .datum("d0", "satA", 3, 50, 0)
                        .datum("d1", "satA", 7, 50, 0)
                        .build();
    Schedule none;
    CHECK(failure_rate(inst, none) == doctest::Approx(1.0));

    Schedule all;
    all.scheduled = {"d0", "d1"};
    CHECK(failure_rate(inst, all) == doctest::Approx(0.0));

    Schedule only7;
    only7.scheduled = {"d1"};
    CHECK(failure_rate(inst, only7) == doctest::Approx(0.3));
}

TEST_CASE("failure_rate of an instance without data is zero") {
    Instance inst = TinyBuilder{}
                        .sat("satA", 10)
                        .station("gs0")
                        .window("w0", "gs0", "satA", 0, 1000)
                        .build();
    CHECK(failure_rate(inst, Schedule{}) == 0.0);
}

TEST_CASE("service_balance examples") {
    Instance inst = TinyBuilder{}
                        .sat("satA", 10)
                        .station("gs0")
                        .window("w0", "gs0", "satA", 0, 1000)
                        .window("w1", "gs0", "satA", 2000, 3000)
                        .datum("d0", "satA", 5, 1000, 0)
                        .build();
    SUBCASE("no tasks at all") { CHECK(service_balance(inst, Schedule{}) == doctest::Approx(1.0)); }
    SUBCASE("one of two equal windows fully used") {
        Schedule s;
        DownlinkTask t;
        t.id = "dt-w0";
        t.window = "w0";
        t.begin = 0;
        t.duration = 1000;
        t.end = 1000;
        t.dset = {{"d0", 1000}};
        s.tasks = {t};
        s.plans["d0"] = {"d0", {{"w0", 1000}}};
        s.scheduled = {"d0"};
        CHECK(service_balance(inst, s) == doctest::Approx(0.5));
    }
}

TEST_CASE("service_balance: every window exactly filled gives zero") {
    Instance inst = TinyBuilder{}
                        .sat("satA", 10)
                        .sat("satB", 10)
                        .station("gs0")
                        .station("gs1")
                        .window("w0", "gs0", "satA", 0, 100)
                        .window("w1", "gs1", "satB", 0, 200)
                        .datum("d0", "satA", 5, 100, 0)
                        .datum("d1", "satB", 5, 200, 0)
                        .build();
    Schedule s;
    DownlinkTask t0;
    t0.id = "dt-w0";
    t0.window = "w0";
    t0.begin = 0;
    t0.duration = 100;
    t0.end = 100;
    t0.dset = {{"d0", 100}};
    DownlinkTask t1;
    t1.id = "dt-w1";
    t1.window = "w1";
    t1.begin = 0;
    t1.duration = 200;
    t1.end = 200;
    t1.dset = {{"d1", 200}};
    s.tasks = {t0, t1};
    s.plans["d0"] = {"d0", {{"w0", 100}}};
    s.plans["d1"] = {"d1", {{"w1", 200}}};
    s.scheduled = {"d0", "d1"};
    CHECK(service_balance(inst, s) == doctest::Approx(0.0));
}

TEST_CASE("objectives stay inside the unit square on random feasible schedules") {
    Rng rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        Instance inst = generate(Family::ND, 15, 100 + trial);
        std::vector<int> order = test::identity_order(inst);
        rng.shuffle(order);
        auto [sched, obj] = rhga(inst, parse_mode("segment:rearrange"), order);
        CHECK(obj.f1 >= 0.0);
        CHECK(obj.f1 <= 1.0);
        CHECK(obj.f2 >= 0.0);
        CHECK(obj.f2 <= 1.0);
    }
}

TEST_CASE("removing a scheduled datum never improves either objective") {
    Rng rng(7);
    Instance inst = generate(Family::ND, 20, 5);
    std::vector<int> order = test::identity_order(inst);
    rng.shuffle(order);
    SolveMode mode = parse_mode("segment:rearrange");
    auto [sched, obj] = rhga(inst, mode, order);
    WindowState st = WindowState::from_schedule(inst, sched);
    for (int d : st.scheduled_data()) {
        WindowState cut = st;
        cut.remove_datum(d);
        ObjectivePoint after = evaluate(inst, cut.to_schedule());
        CHECK(after.f1 >= obj.f1 - kEps);
        CHECK(after.f2 >= obj.f2 - kEps);
    }
}

TEST_CASE("fofd mode flags out-of-release-order transmission") {
    Instance inst = TinyBuilder{}
                        .sat("satA", 10)
                        .station("gs0")
                        .window("w0", "gs0", "satA", 0, 500)
                        .window("w1", "gs0", "satA", 1000, 1500)
                        .datum("early", "satA", 5, 50, 0)
                        .datum("late", "satA", 5, 50, 100)
                        .build();
    Schedule s;
    DownlinkTask t0;  // the later-released datum transmits first
    t0.id = "dt-w0";
    t0.window = "w0";
    t0.begin = 100;
    t0.duration = 50;
    t0.end = 150;
    t0.dset = {{"late", 50}};
    DownlinkTask t1;
    t1.id = "dt-w1";
    t1.window = "w1";
    t1.begin = 1000;
    t1.duration = 50;
    t1.end = 1050;
    t1.dset = {{"early", 50}};
    s.tasks = {t0, t1};
    s.plans["late"] = {"late", {{"w0", 50}}};
    s.plans["early"] = {"early", {{"w1", 50}}};
    s.scheduled = {"early", "late"};

    CHECK(validate_schedule(inst, s, parse_mode("segment:rearrange")).empty());
    auto violations = validate_schedule(inst, s, parse_mode("segment:fofd"));
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].kind == ViolationKind::ReleaseOrder);
    CHECK(violations[0].datum == "late");
}

TEST_CASE("unsegment mode flags split data") {
    Instance inst = TinyBuilder{}
                        .sat("satA", 10)
                        .station("gs0")
                        .window("w0", "gs0", "satA", 0, 500)
                        .window("w1", "gs0", "satA", 1000, 1500)
                        .datum("d0", "satA", 5, 100, 0)
                        .build();
    Schedule s;
    DownlinkTask t0;
    t0.id = "dt-w0";
    t0.window = "w0";
    t0.begin = 0;
    t0.duration = 50;
    t0.end = 50;
    t0.dset = {{"d0", 50}};
    DownlinkTask t1;
    t1.id = "dt-w1";
    t1.window = "w1";
    t1.begin = 1000;
    t1.duration = 50;
    t1.end = 1050;
    t1.dset = {{"d0", 50}};
    s.tasks = {t0, t1};
    s.plans["d0"] = {"d0", {{"w0", 50}, {"w1", 50}}};
    s.scheduled = {"d0"};

    CHECK(validate_schedule(inst, s, parse_mode("segment:rearrange")).empty());
    auto violations = validate_schedule(inst, s, parse_mode("unsegment:rearrange"));
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].kind == ViolationKind::UnsegmentSplit);
}

TEST_CASE("logical time binds the task begin, not its end") {
    // Begin right before expiry is legal even though the task ends past it.
    Instance inst = TinyBuilder{}
                        .sat("satA", 10)
                        .station("gs0")
                        .window("w0", "gs0", "satA", 0, 86400)
                        .datum("d0", "satA", 10, 100, 0)  // expiry at 10800
                        .build();
    Schedule s;
    DownlinkTask t;
    t.id = "dt-w0";
    t.window = "w0";
    t.begin = 10799;
    t.duration = 100;
    t.end = 10899;
    t.dset = {{"d0", 100}};
    s.tasks = {t};
    s.plans["d0"] = {"d0", {{"w0", 100}}};
    s.scheduled = {"d0"};
    CHECK(validate_schedule(inst, s, parse_mode("segment:rearrange")).empty());

    s.tasks[0].begin = 10800;  // at expiry: too late
    s.tasks[0].end = 10900;
    auto violations = validate_schedule(inst, s, parse_mode("segment:rearrange"));
    REQUIRE(!violations.empty());
    CHECK(violations[0].kind == ViolationKind::LogicalTime);
}
