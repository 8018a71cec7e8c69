#include "weiljet/jets.hpp"

#include "weiljet/errors.hpp"

#include <doctest.h>

#include <vector>

using namespace weiljet;

namespace {

// The order-n expansion of s(x) = x^2 at x = 1: 1 + 2u (+ u^2).
SectionJet square_section(int order) {
    Polynomial e = poly_parse(order >= 2 ? "1 + 2*X1 + X1^2" : "1 + 2*X1", 1);
    return make_section_jet({1, 1}, order, {Rat(1)}, {e});
}

SectionJet cube_section(int order) {
    std::string text = "1 + 3*X1";
    if (order >= 2) text += " + 3*X1^2";
    if (order >= 3) text += " + X1^3";
    return make_section_jet({1, 1}, order, {Rat(1)}, {poly_parse(text, 1)});
}

} // namespace

TEST_CASE("model algebras per approach") {
    CHECK(same_algebra(jet_model_algebra(JetApproach::Second, 2),
                       SimplicialInfObject::power(2).dual_algebra()));
    CHECK(same_algebra(jet_model_algebra(JetApproach::Third, 3),
                       SimplicialInfObject::order(3).dual_algebra()));
    CHECK_THROWS_AS(jet_model_algebra(JetApproach::First, 2), SchemaError);
    CHECK(approach_parse("SECOND") == JetApproach::Second);
    CHECK(approach_to_string(JetApproach::Third) == "THIRD");
    CHECK_THROWS_AS(approach_parse("FOURTH"), ParseError);
}

TEST_CASE("candidate layout: gamma parameters then extras") {
    const JetCandidate c = make_candidate(JetApproach::Second, 2, {2, 1},
                                          {Rat(0), Rat(0), Rat(5)}, {"c1"});
    CHECK(c.gamma_count() == 6); // two input coordinates, three non-unit monomials
    CHECK(c.extra_count() == 1);
    CHECK(c.param_count() == 7);
    CHECK(c.param_names[0] == "g1b1");
    CHECK(c.param_names[3] == "g2b1");
    CHECK(c.param_names[6] == "c1");
    CHECK(c.gamma_param(1, 2) == 4);
    REQUIRE(c.body.size() == 1);
    REQUIRE(c.body[0].size() == 3);
    CHECK(c.body[0][0].is_zero());
}

TEST_CASE("expansion of the squaring section at 1") {
    const JetCandidate c = from_section_jet(square_section(2), JetApproach::Second);
    CHECK(c.order == 2);
    CHECK(c.point == std::vector<Rat>{Rat(1), Rat(1)});
    const auto& names = c.param_names;
    CHECK(c.body[0][0] == poly_parse("2*g1b1", names));
    CHECK(c.body[0][1] == poly_parse("2*g1b2", names));
    CHECK(c.body[0][2] == poly_parse("2*g1b3 + 2*g1b1*g1b2", names));

    const JetCandidate cc = from_section_jet(cube_section(2), JetApproach::Second);
    CHECK(cc.body[0][0] == poly_parse("3*g1b1", cc.param_names));
    CHECK(cc.body[0][1] == poly_parse("3*g1b2", cc.param_names));
    CHECK(cc.body[0][2] == poly_parse("3*g1b3 + 6*g1b1*g1b2", cc.param_names));
}

TEST_CASE("pointwise conditions hold for section expansions") {
    const JetCandidate c = from_section_jet(square_section(2), JetApproach::Second);
    const CheckReport report = check_second(c);
    CHECK(report.overall());
    CHECK(report.find("projection") != nullptr);
    CHECK(report.find("scaling axis 1") != nullptr);
    CHECK(report.find("scaling axis 2") != nullptr);
    CHECK(report.find("infinitesimal scaling axis 2") != nullptr);
    CHECK(report.find("infinitesimal scaling order") != nullptr);
    CHECK(report.find("transposition (1 2)") != nullptr);

    CHECK(check_second_tangential(c).overall());
}

TEST_CASE("symbolic coefficient families ride along as extras") {
    // s(x) = 1 + c1*u + c2*u^2 with symbolic c1, c2.
    const SectionJet s = make_section_jet(
        {1, 1}, 2, {Rat(1)},
        {poly_parse("1 + c1*X1 + c2*X1^2", std::vector<std::string>{"X1", "c1", "c2"})},
        {"c1", "c2"});
    const JetCandidate c = from_section_jet(s, JetApproach::Second);
    CHECK(c.extra_names == std::vector<std::string>{"c1", "c2"});
    CHECK(c.body[0][0] == poly_parse("c1*g1b1", c.param_names));
    CHECK(check_second(c).overall());
    CHECK(check_second_tangential(c).overall());
}

TEST_CASE("a nonlinear dependence breaks scaling") {
    JetCandidate c = make_candidate(JetApproach::Second, 1, {1, 1}, {Rat(1), Rat(1)});
    c.body[0][0] = poly_parse("g1b1^2", c.param_names);
    const CheckReport report = check_second(c);
    CHECK_FALSE(report.overall());
    REQUIRE(report.find("scaling axis 1") != nullptr);
    CHECK_FALSE(report.find("scaling axis 1")->pass);
    REQUIRE(report.find("projection") != nullptr);
    CHECK(report.find("projection")->pass);
}

TEST_CASE("evaluation on a concrete tangent square") {
    const JetCandidate c = from_section_jet(square_section(2), JetApproach::Second);
    ProlongedPoint input = make_point({1, 0}, c.algebra, c.gamma_count());
    input.components[0][0] = Polynomial::constant(3, Rat(1));
    input.components[0][1] = Polynomial::constant(3, Rat(3));
    input.components[0][2] = Polynomial::constant(3, Rat(5));
    input.components[0][3] = Polynomial::constant(3, Rat(7));

    const ProlongedPoint out = apply(c, input);
    CHECK(out.space.base_dim == 1);
    CHECK(out.space.fiber_dim == 1);
    CHECK(out.components[0] == input.components[0]); // base block rides along
    CHECK(out.components[1][0] == Polynomial::constant(3, Rat(1)));
    CHECK(out.components[1][1] == Polynomial::constant(3, Rat(6)));
    CHECK(out.components[1][2] == Polynomial::constant(3, Rat(10)));
    // 2*7 + 2*3*5 = 44.
    CHECK(out.components[1][3] == Polynomial::constant(3, Rat(44)));

    // The generic input reproduces the body itself.
    const ProlongedPoint sym = apply(c, generic_input(c));
    CHECK(sym.components[1][1] == c.body[0][0]);
    CHECK(sym.components[1][3] == c.body[0][2]);

    // Inputs anchored elsewhere are rejected.
    input.components[0][0] = Polynomial::constant(3, Rat(2));
    CHECK_THROWS_AS(apply(c, input), MismatchError);
}

TEST_CASE("forgetting the last axis recovers the lower expansion") {
    const JetCandidate c2 = from_section_jet(square_section(2), JetApproach::Second);
    const JetCandidate c1 = from_section_jet(square_section(1), JetApproach::Second);
    CHECK(project_second(c2) == c1);
    CHECK(project_second_to(c2, 1) == c1);
    CHECK(project_second_to(c2, 2) == c2);

    // A candidate that fails the pointwise conditions cannot be projected.
    JetCandidate bad = make_candidate(JetApproach::Second, 2, {1, 1}, {Rat(1), Rat(1)});
    bad.body[0][0] = poly_parse("g1b2", bad.param_names); // wrong-axis dependence
    CHECK_THROWS_AS(project_second(bad), MismatchError);
}

TEST_CASE("induced action on points over other shapes") {
    const JetCandidate c = from_section_jet(square_section(2), JetApproach::Second);

    SUBCASE("the full power shape gives back apply") {
        const ProlongedPoint gamma = generic_input(c);
        CHECK(induced_map(c, SimplicialInfObject::power(2), gamma) == apply(c, gamma));
    }

    SUBCASE("two independent first-order directions") {
        const SimplicialInfObject D = SimplicialInfObject::graded(2, 1);
        ProlongedPoint gamma = make_point({1, 0}, D.dual_algebra(), 2);
        gamma.components[0][0] = Polynomial::constant(2, Rat(1));
        gamma.components[0][1] = Polynomial::variable(2, 0);
        gamma.components[0][2] = Polynomial::variable(2, 1);

        const ProlongedPoint out = induced_map(c, D, gamma, 2);
        CHECK(out.components[0] == gamma.components[0]);
        CHECK(out.components[1][0] == Polynomial::constant(2, Rat(1)));
        CHECK(out.components[1][1] == Polynomial::variable(2, 0) * Rat(2));
        CHECK(out.components[1][2] == Polynomial::variable(2, 1) * Rat(2));
    }
}

TEST_CASE("composition matches the chain-rule section") {
    const JetCandidate lower = from_section_jet(square_section(2), JetApproach::Second);
    // sigma(x, y) = x*y at (1, 1), so the composite tracks x^3 at 1.
    const SectionJet upper_section =
        make_section_jet({2, 1}, 2, {Rat(1), Rat(1)}, {poly_parse("1 + X1 + X2 + X1*X2", 2)});
    const JetCandidate upper = from_section_jet(upper_section, JetApproach::Second);

    const JetCandidate composite = compose_jets(upper, lower);
    const SectionJet combined = make_section_jet(
        {1, 2}, 2, {Rat(1)},
        {poly_parse("1 + 2*X1 + X1^2", 1), poly_parse("1 + 3*X1 + 3*X1^2", 1)});
    CHECK(composite == from_section_jet(combined, JetApproach::Second));
    CHECK(check_second(composite).overall());

    // The upper candidate must be anchored at the lower candidate's values.
    const SectionJet moved =
        make_section_jet({2, 1}, 2, {Rat(1), Rat(2)}, {poly_parse("1 + X1 + X2 + X1*X2", 2)});
    CHECK_THROWS_AS(compose_jets(from_section_jet(moved, JetApproach::Second), lower),
                    MismatchError);
}

TEST_CASE("candidate JSON round trip and caps") {
    const JetCandidate c = from_section_jet(square_section(2), JetApproach::Second);
    const JetCandidate back = candidate_from_json(candidate_to_json(c));
    CHECK(back == c);
    CHECK(back.extra_names == c.extra_names);

    nlohmann::json j = candidate_to_json(c);
    j["order"] = 5;
    CHECK_THROWS_AS(candidate_from_json(j), CapExceeded);
    j["order"] = 2;
    j["approach"] = "FIRST";
    CHECK_THROWS_AS(candidate_from_json(j), SchemaError);
}

TEST_CASE("section expansions are validated") {
    // Expansion over the wrong parameter pool.
    CHECK_THROWS_AS(make_section_jet({1, 1}, 2, {Rat(1)}, {poly_parse("1 + X2", 2)}),
                    SchemaError);
    // Terms above the order are rejected, not silently dropped.
    CHECK_THROWS_AS(make_section_jet({1, 1}, 1, {Rat(1)}, {poly_parse("1 + X1^2", 1)}),
                    SchemaError);
    // The displacement-free part must be rational: here it is the extra c1.
    CHECK_THROWS_AS(
        make_section_jet({1, 1}, 1, {Rat(1)},
                         {poly_parse("c1 + X1", std::vector<std::string>{"X1", "c1"})}, {"c1"}),
        SchemaError);
    // Expansion count must match the fiber dimension.
    CHECK_THROWS_AS(make_section_jet({1, 2}, 1, {Rat(1)}, {poly_parse("1 + X1", 1)}),
                    SchemaError);
}
