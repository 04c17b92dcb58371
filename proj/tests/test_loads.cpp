#include "support.hpp"

#include "frameforge/loads.hpp"

#include <doctest.h>

#include <set>

using namespace frameforge;

namespace {

FrameGraph graph_of(const ProblemSpec& spec) {
    const auto plan = plan_construction(spec);
    const auto nodes = generate_nodes(spec, plan);
    return {nodes, map_connectivity(nodes, generate_elements(spec, plan))};
}

}  // namespace

TEST_SUITE("loads") {

TEST_CASE("selector grammar") {
    CHECK(parse_selector("all girders") == LoadSelector{selector::AllGirders{}});
    CHECK(parse_selector("Every beam") == LoadSelector{selector::AllGirders{}});
    CHECK(parse_selector("girders at story 2") == LoadSelector{selector::GirdersAtStory{2}});
    CHECK(parse_selector("second floor girders") == LoadSelector{selector::GirdersAtStory{2}});
    CHECK(parse_selector("top node of each story at the leftmost bay") == LoadSelector{selector::TopNodesLeftmostBay{}});
    CHECK(parse_selector("leftmost columns") == LoadSelector{selector::LeftmostColumns{}});
    CHECK(parse_selector("node at bay 2 story 1 right") ==
          LoadSelector{selector::NodesAt{2, 1, selector::Side::right}});
    CHECK(std::holds_alternative<selector::Custom>(parse_selector("the roof, roughly")));

    for (const LoadSelector& s :
         {LoadSelector{selector::AllGirders{}}, LoadSelector{selector::GirdersAtStory{3}},
          LoadSelector{selector::TopNodesLeftmostBay{}}, LoadSelector{selector::LeftmostColumns{}},
          LoadSelector{selector::NodesAt{3, 2, selector::Side::left}}}) {
        CHECK(parse_selector(canonical_text(s)) == s);
    }
}

TEST_CASE("benchmark pattern on 3-2-3") {
    const auto spec = make_stepped_frame({3, 2, 3}, 6.0, {3, 3, 3}, benchmark_loads());
    const auto g = graph_of(spec);
    const auto loads = assign_loads(spec, g);
    REQUIRE(loads.nodal.size() == 3);
    std::set<double> ys;
    for (const auto& l : loads.nodal) {
        const auto& n = g.node(l.node);
        CHECK(n.x == 0.0);
        ys.insert(n.y);
        CHECK(l.fx == 50.0);
        CHECK(l.fy == 0.0);
    }
    CHECK(ys == std::set<double>{3.0, 6.0, 9.0});
    REQUIRE(loads.member.size() == 8);
    for (const auto& l : loads.member) {
        const auto& e = g.element(l.element);
        CHECK(e.kind == ElementKind::girder);
        // w along local y (rotated +90 deg from i -> j) must point down globally
        const double ly = (e.coord_j.x - e.coord_i.x) / e.length();
        CHECK(l.w * ly == doctest::Approx(-10.0));
    }
}

TEST_CASE("directions and selectors resolve to the right entities") {
    auto spec = make_stepped_frame({3, 2, 3}, 6.0, {3, 3, 3});
    spec.loads = {{LoadType::distributed, "girders at story 3", Direction::up, 4.0},
                  {LoadType::point, "node at bay 2 story 2 right", Direction::left, 7.0},
                  {LoadType::distributed, "leftmost columns", Direction::right, 2.0}};
    const auto g = graph_of(spec);
    const auto loads = assign_loads(spec, g);
    REQUIRE(loads.member.size() == 2 + 3);
    int girders = 0;
    for (const auto& l : loads.member) {
        const auto& e = g.element(l.element);
        if (e.kind == ElementKind::girder) {
            ++girders;
            CHECK(e.coord_i.y == 9.0);
            CHECK(l.w * (e.coord_j.x - e.coord_i.x) / e.length() == doctest::Approx(4.0));
        } else {
            CHECK(e.coord_i.x == 0.0);
            // local y of a column is (-dy, dx)/L; a rightward load projects as -dy/L
            CHECK(l.w * -(e.coord_j.y - e.coord_i.y) / e.length() == doctest::Approx(2.0));
        }
    }
    CHECK(girders == 2);
    REQUIRE(loads.nodal.size() == 1);
    CHECK(g.node(loads.nodal[0].node).x == 12.0);
    CHECK(g.node(loads.nodal[0].node).y == 6.0);
    CHECK(loads.nodal[0].fx == -7.0);
}

TEST_CASE("load errors") {
    auto spec = make_stepped_frame({3, 2, 3}, 6.0, {3, 3, 3});
    const auto g = graph_of(spec);
    spec.loads = {{LoadType::point, "somewhere nice", Direction::down, 1.0}};
    CHECK(fftest::error_code_of([&] { select_loads(spec); }) == ErrorCode::UnresolvableSelector);
    spec.loads = {{LoadType::point, "all girders", Direction::down, 1.0}};
    CHECK(fftest::error_code_of([&] { assign_loads(spec, g); }) == ErrorCode::UnresolvableSelector);
    spec.loads = {{LoadType::distributed, "girders at story 4", Direction::down, 1.0}};
    CHECK(fftest::error_code_of([&] { assign_loads(spec, g); }) == ErrorCode::EmptySelection);
    spec.loads = {{LoadType::distributed, "all girders", Direction::right, 1.0}};
    CHECK(fftest::error_code_of([&] { assign_loads(spec, g); }) == ErrorCode::UnsupportedLoad);
}

TEST_CASE("compile_model rejects dangling references") {
    const auto spec = make_stepped_frame({3, 2, 3}, 6.0, {3, 3, 3}, benchmark_loads());
    const auto g = graph_of(spec);
    auto loads = assign_loads(spec, g);
    CHECK_NOTHROW(compile_model(spec, g, loads));
    loads.member.push_back({99, -1.0});
    try {
        compile_model(spec, g, loads);
        FAIL("expected DanglingReference");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DanglingReference);
        CHECK(e.details().at("kind") == "element");
        CHECK(e.details().at("id") == 99);
    }
}

TEST_CASE("model and assignment documents round trip") {
    const auto spec = make_stepped_frame({2, 3, 1, 4, 5}, 6.0, {3, 3, 3, 3, 3}, benchmark_loads());
    const auto g = graph_of(spec);
    const auto assignments = select_loads(spec);
    CHECK(assignments_from_json(to_json(assignments)) == assignments);
    const auto loads = resolve_assignments(assignments, g, spec);
    CHECK(loads_from_json(to_json(loads)) == loads);
    const auto model = compile_model(spec, g, loads);
    CHECK(model_from_json(to_json(model)) == model);
    CHECK(model_digest(model_from_json(to_json(model))) == model_digest(model));
}

}
