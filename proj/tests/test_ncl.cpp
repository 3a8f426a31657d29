#include "searchlight/ncl.hpp"

#include <doctest.h>

#include <sstream>

using namespace searchlight;

namespace {
/// Complete graph on four OR vertices: 3-regular with six edges and no
/// parallel edges.
ConstraintGraph k4_graph() {
    ConstraintGraph g;
    g.vertices = {{NclVertexKind::Or, {0, 1, 2}},
                  {NclVertexKind::Or, {0, 3, 4}},
                  {NclVertexKind::Or, {1, 3, 5}},
                  {NclVertexKind::Or, {2, 4, 5}}};
    g.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    g.ea = {0, EdgeDir::TowardU};
    g.eb = {5, EdgeDir::TowardV};
    validate_graph(g);
    return g;
}
}  // namespace

TEST_CASE("legality of OR configurations on parallel edges") {
    ConstraintGraph g = fixture_three_parallel();
    validate_graph(g);
    Configuration c;
    c.orientation = {EdgeDir::TowardU, EdgeDir::TowardV, EdgeDir::TowardV};
    CHECK(is_legal_config(g, c).legal);
    Configuration all;
    all.orientation = {EdgeDir::TowardU, EdgeDir::TowardU, EdgeDir::TowardU};
    LegalityReport r = is_legal_config(g, all);
    CHECK_FALSE(r.legal);
    CHECK(r.violating_vertex == 1);
}

TEST_CASE("legal moves preserve inward flow") {
    ConstraintGraph g = fixture_three_parallel();
    Configuration c;
    c.orientation = {EdgeDir::TowardU, EdgeDir::TowardV, EdgeDir::TowardV};
    CHECK(is_legal_move(g, c, 2));        // v1 keeps edge 1 inward
    CHECK_FALSE(is_legal_move(g, c, 0));  // v0 loses its only inward edge
}

TEST_CASE("AND vertices need the output or both inputs inward") {
    ConstraintGraph g;
    g.vertices.push_back({NclVertexKind::And, {0, 1, 2}});
    g.vertices.push_back({NclVertexKind::Or, {0, 1, 2}});
    g.edges = {{0, 1}, {0, 1}, {0, 1}};
    g.ea = {0, EdgeDir::TowardU};
    g.eb = {1, EdgeDir::TowardV};
    Configuration c;
    c.orientation = {EdgeDir::TowardV, EdgeDir::TowardU, EdgeDir::TowardV};
    LegalityReport r = is_legal_config(g, c);
    CHECK_FALSE(r.legal);
    CHECK(r.violating_vertex == 0);
    c.orientation[2] = EdgeDir::TowardU;  // both inputs now inward
    CHECK(is_legal_config(g, c).legal);
}

TEST_CASE("self-loops and broken incidences are rejected") {
    ConstraintGraph g = fixture_three_parallel();
    g.edges[0] = {0, 0};
    CHECK_THROWS_AS(validate_graph(g), NclError);
}

TEST_CASE("asynchronous schedules are checked at phase boundaries") {
    ConstraintGraph g = fixture_three_parallel();
    Configuration c;
    c.orientation = {EdgeDir::TowardU, EdgeDir::TowardV, EdgeDir::TowardV};

    CHECK(check_async_schedule(g, c, {}).legal);

    AsyncSchedule one;
    one.events.push_back({2, Scalar(0), Scalar(1)});
    CHECK(check_async_schedule(g, c, one).legal);
    CHECK(serialize_async(g, c, one) == std::vector<int>{2});

    // e1 and e2 both mid-flip at t=1 leave vertex 1 with nothing inward
    AsyncSchedule both;
    both.events.push_back({1, Scalar(0), Scalar(2)});
    both.events.push_back({2, Scalar(1), Scalar(3)});
    AsyncCheck ck = check_async_schedule(g, c, both);
    CHECK_FALSE(ck.legal);
    CHECK(ck.violation_time == Scalar(1));
    CHECK(ck.violating_vertex == 1);
    CHECK_THROWS_AS(serialize_async(g, c, both), IllegalAsync);

    AsyncSchedule overlap;
    overlap.events.push_back({1, Scalar(0), Scalar(2)});
    overlap.events.push_back({1, Scalar(1), Scalar(3)});
    CHECK_THROWS_AS(check_async_schedule(g, c, overlap), MalformedSchedule);

    // touching phases of one edge are fine
    AsyncSchedule touching;
    touching.events.push_back({2, Scalar(0), Scalar(1)});
    touching.events.push_back({2, Scalar(1), Scalar(2)});
    CHECK(check_async_schedule(g, c, touching).legal);
}

TEST_CASE("overlapping phases of distinct edges serialize by start time") {
    ConstraintGraph g = k4_graph();
    Configuration c;
    // e0 -> A, e1 -> C, e2 -> D, e3 -> B, e4 -> D, e5 -> C
    c.orientation = {EdgeDir::TowardU, EdgeDir::TowardV, EdgeDir::TowardV,
                     EdgeDir::TowardU, EdgeDir::TowardV, EdgeDir::TowardU};
    REQUIRE(is_legal_config(g, c).legal);
    AsyncSchedule s;
    s.events.push_back({1, Scalar(0), Scalar(1)});
    s.events.push_back({4, ratio(1, 2), Scalar(2)});
    REQUIRE(check_async_schedule(g, c, s).legal);
    CHECK(serialize_async(g, c, s) == std::vector<int>{1, 4});
}

TEST_CASE("edge-to-edge decisions on the small machines") {
    EeDecision d = ee_decide(fixture_three_parallel());
    CHECK(d.reachable);
    CHECK(d.restriction_violated);  // some legal config hits both targets
    CHECK(d.moves.empty());

    ConstraintGraph gi;
    gi.vertices.push_back({NclVertexKind::And, {0, 1, 2}});
    gi.vertices.push_back({NclVertexKind::And, {0, 1, 2}});
    gi.edges = {{0, 1}, {0, 1}, {0, 1}};
    gi.ea = {0, EdgeDir::TowardV};
    gi.eb = {1, EdgeDir::TowardV};
    EeDecision di = ee_decide(gi);
    CHECK_FALSE(di.reachable);
    CHECK_FALSE(di.restriction_violated);

    CHECK(ee_decide(k4_graph()).reachable);
}

TEST_CASE("serialization is sound on random machines") {
    std::mt19937 rng(7);
    int serialized = 0;
    for (int i = 0; i < 40; ++i) {
        ConstraintGraph g = random_constraint_graph(rng, 2 + 2 * (i % 3));
        Configuration start;
        if (!find_legal_config(g, start)) continue;
        AsyncSchedule s = random_async_schedule(rng, g, start, 12);
        std::vector<int> moves = serialize_async(g, start, s);
        CHECK(moves.size() == s.events.size());
        Configuration cur = start;
        for (int e : moves) {
            cur.orientation[e] = reversed(cur.orientation[e]);
            CHECK(is_legal_config(g, cur).legal);
        }
        CHECK(cur.orientation == async_final_config(start, s).orientation);

        // time-reversal: undoing the moves in reverse is legal too
        Configuration back = cur;
        for (auto it = moves.rbegin(); it != moves.rend(); ++it) {
            back.orientation[*it] = reversed(back.orientation[*it]);
            CHECK(is_legal_config(g, back).legal);
        }
        CHECK(back.orientation == start.orientation);
        ++serialized;
    }
    CHECK(serialized >= 30);
}

TEST_CASE("machine files round-trip bit-exactly") {
    std::mt19937 rng(19);
    for (int i = 0; i < 10; ++i) {
        ConstraintGraph g = random_constraint_graph(rng, 4);
        NclFile f;
        f.graph = g;
        if (find_legal_config(g, f.config)) {
            f.has_config = true;
            f.schedule = random_async_schedule(rng, g, f.config, 6);
        }
        std::string s1 = serialize_ncl(f);
        std::istringstream in(s1);
        NclFile f2 = parse_ncl(in);
        CHECK(serialize_ncl(f2) == s1);
        CHECK(serialize_ncl(f) == s1);
    }
}

TEST_CASE("machine parser rejects malformed inputs") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return parse_ncl(in);
    };
    CHECK_THROWS_AS(parse("ncl v2\n"), NclError);
    // an edge appearing only once
    CHECK_THROWS_AS(parse("ncl v1\nor 0 1 2\nor 0 1 3\ntarget 0 u\ntarget 1 v\n"),
                    NclError);
    // missing targets
    CHECK_THROWS_AS(parse("ncl v1\nor 0 1 2\nor 0 1 2\n"), NclError);
}

TEST_CASE("oversized machines are refused") {
    std::mt19937 rng(3);
    ConstraintGraph g = random_constraint_graph(rng, 18);  // 27 edges
    CHECK_THROWS_AS(ee_decide(g), GraphTooLarge);
}
