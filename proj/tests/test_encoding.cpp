#include "helpers.hpp"
#include "sidsp/construct.hpp"
#include "sidsp/encoding.hpp"

#include <doctest.h>

using namespace sidsp;
using sidsp::test::TinyBuilder;

TEST_CASE("begin_from_gene") {
    TransmissionWindow w{"w", "g", "s", 100, 300};
    CHECK(begin_from_gene(0.0, w, 50) == doctest::Approx(100));
    CHECK(begin_from_gene(1.0, w, 200) == doctest::Approx(100));  // clamp forces zero slack
    CHECK(begin_from_gene(0.5, w, 50) == doctest::Approx(200));
    CHECK(begin_from_gene(0.9, w, 50) == doctest::Approx(250));  // clamped to fit
    CHECK_THROWS_AS(begin_from_gene(0.5, w, 250), std::invalid_argument);
    CHECK_THROWS_AS(begin_from_gene(-0.1, w, 50), std::invalid_argument);
}

TEST_CASE("decode of the all-zero chromosome is an empty feasible schedule") {
    Instance inst = TinyBuilder{}
                        .sat("satA", 10)
                        .station("gs0")
                        .window("w0", "gs0", "satA", 0, 500)
                        .datum("d0", "satA", 5, 100, 0)
                        .build();
    auto result = decode(Chromosome::zeros(inst), inst, parse_mode("segment:rearrange"));
    CHECK(result.schedule.tasks.empty());
    CHECK(result.violations.empty());
}

TEST_CASE("decode builds one task per used window") {
    Instance inst = TinyBuilder{}
                        .sat("satA", 10)
                        .station("gs0")
                        .window("w0", "gs0", "satA", 0, 500)
                        .datum("d0", "satA", 5, 100, 0)
                        .build();
    Chromosome c = Chromosome::zeros(inst);
    c.x[0] = 1;
    c.y[0] = {{0, 1.0}};
    c.z[0] = 0.0;
    auto result = decode(c, inst, parse_mode("segment:rearrange"));
    CHECK(result.violations.empty());
    REQUIRE(result.schedule.tasks.size() == 1);
    CHECK(result.schedule.tasks[0].begin == doctest::Approx(0));
    CHECK(result.schedule.tasks[0].duration == doctest::Approx(100));
}

TEST_CASE("decode splits a datum across windows per its y genes") {
    Instance inst = TinyBuilder{}
                        .sat("satA", 10)
                        .station("gs0")
                        .window("w0", "gs0", "satA", 0, 500)
                        .window("w1", "gs0", "satA", 1000, 1500)
                        .datum("d0", "satA", 5, 100, 0)
                        .build();
    Chromosome c = Chromosome::zeros(inst);
    c.x[0] = 1;
    c.y[0] = {{0, 0.6}, {1, 0.4}};
    auto result = decode(c, inst, parse_mode("segment:rearrange"));
    CHECK(result.violations.empty());
    REQUIRE(result.schedule.tasks.size() == 2);
    Seconds total = 0;
    for (const auto& t : result.schedule.tasks)
        for (const auto& p : t.dset) total += p.duration;
    CHECK(total == doctest::Approx(100));
}

TEST_CASE("decode reports violations instead of repairing") {
    Instance inst = TinyBuilder{}
                        .sat("satA", 30)
                        .station("gs0")
                        .window("w0", "gs0", "satA", 0, 500)
                        .datum("d0", "satA", 5, 100, 0)
                        .build();
    Chromosome c = Chromosome::zeros(inst);
    c.x[0] = 1;
    c.y[0] = {{0, 0.1}};  // 10 s piece: below d0, and the datum is incomplete
    auto result = decode(c, inst, parse_mode("segment:rearrange"));
    CHECK(!result.violations.empty());
    bool has_seg = false, has_complete = false;
    for (const auto& v : result.violations) {
        has_seg |= v.kind == ViolationKind::SegmentMinimum;
        has_complete |= v.kind == ViolationKind::CompletedTransmission;
    }
    CHECK(has_seg);
    CHECK(has_complete);
}

TEST_CASE("encode of the empty schedule is the all-zero chromosome") {
    Instance inst = TinyBuilder{}
                        .sat("satA", 10)
                        .station("gs0")
                        .window("w0", "gs0", "satA", 0, 500)
                        .datum("d0", "satA", 5, 100, 0)
                        .build();
    Chromosome c = encode(Schedule{}, inst);
    CHECK(c.x == std::vector<uint8_t>{0});
    CHECK(c.y[0].empty());
    CHECK(c.z == std::vector<double>{0.0});
}

TEST_CASE("encode inverts the begin gene") {
    Instance inst = TinyBuilder{}
                        .sat("satA", 10)
                        .station("gs0")
                        .window("w0", "gs0", "satA", 100, 300)
                        .datum("d0", "satA", 5, 200, 0)
                        .build();
    WindowState st(inst);
    REQUIRE(st.place_piece(0, 0, 200, parse_mode("segment:rearrange")));
    st.mark_scheduled(0);
    Chromosome c = encode(st.to_schedule(), inst);
    CHECK(c.z[0] == doctest::Approx(0.0));  // task fills its window from the start
    REQUIRE(c.y[0].size() == 1);
    CHECK(c.y[0][0].second == doctest::Approx(1.0));
}

TEST_CASE("encode rejects infeasible schedules") {
    Instance inst = TinyBuilder{}
                        .sat("satA", 10)
                        .station("gs0")
                        .window("w0", "gs0", "satA", 0, 500)
                        .datum("d0", "satA", 5, 100, 0)
                        .build();
    Schedule bad;
    DownlinkTask t;
    t.id = "dt-w0";
    t.window = "w0";
    t.begin = 450;  // runs past the window end
    t.duration = 100;
    t.end = 550;
    t.dset = {{"d0", 100}};
    bad.tasks = {t};
    bad.plans["d0"] = {"d0", {{"w0", 100}}};
    bad.scheduled = {"d0"};
    CHECK_THROWS_AS(encode(bad, inst), std::invalid_argument);
}

TEST_CASE("round trip preserves tasks and objectives on random schedules") {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        Instance inst = generate(Family::MD, 20, seed);
        std::vector<int> order = sidsp::test::identity_order(inst);
        Rng rng(seed * 13);
        rng.shuffle(order);
        SolveMode mode = seed % 2 ? parse_mode("segment:rearrange")
                                  : parse_mode("unsegment:rearrange");
        auto [sched, obj] = rhga(inst, mode, order);

        Chromosome c = encode(sched, inst);
        // Conservation: y rows sum to exactly one or zero.
        for (int d = 0; d < (int)inst.data.size(); ++d) {
            double s = c.y_sum(d);
            if (c.x[d])
                CHECK(s == doctest::Approx(1.0));
            else
                CHECK(s == 0.0);
        }

        auto result = decode(c, inst, mode);
        CHECK(result.violations.empty());
        CHECK(evaluate(inst, result.schedule) == obj);
        REQUIRE(result.schedule.tasks.size() == sched.tasks.size());
        for (size_t i = 0; i < sched.tasks.size(); ++i) {
            CHECK(result.schedule.tasks[i].window == sched.tasks[i].window);
            CHECK(result.schedule.tasks[i].begin ==
                  doctest::Approx(sched.tasks[i].begin).epsilon(1e-9));
            CHECK(result.schedule.tasks[i].duration ==
                  doctest::Approx(sched.tasks[i].duration).epsilon(1e-9));
        }
    }
}
