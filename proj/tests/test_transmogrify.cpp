#include "weiljet/jets.hpp"

#include "weiljet/errors.hpp"
#include "weiljet/infinitesimal.hpp"
#include "weiljet/prolong.hpp"
#include "weiljet/weil.hpp"

#include <doctest.h>

#include <string>
#include <vector>

using namespace weiljet;

namespace {

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

SectionJet symbolic_family() {
    return make_section_jet(
        {1, 1}, 2, {Rat(0)},
        {poly_parse("1 + c1*X1 + c2*X1^2", std::vector<std::string>{"X1", "c1", "c2"})},
        {"c1", "c2"});
}

} // namespace

TEST_CASE("tower evaluation recovers the section candidate") {
    CHECK(phi_raw(tower_from_section_jet(square_section(2))) ==
          from_section_jet(square_section(2), JetApproach::Second));
    CHECK(phi_raw(tower_from_section_jet(cube_section(3))) ==
          from_section_jet(cube_section(3), JetApproach::Second));
    // A whole coefficient family at once.
    CHECK(phi_raw(tower_from_section_jet(symbolic_family())) ==
          from_section_jet(symbolic_family(), JetApproach::Second));
}

TEST_CASE("tower map requires holonomy") {
    FirstApproachTower T = make_tower(2, {2, 1},
                                      {Polynomial::constant(0, Rat(1)),
                                       Polynomial::constant(0, Rat(1)),
                                       Polynomial::constant(0, Rat(1))});
    T.levels[1][1][1] = Polynomial::constant(0, Rat(1));
    try {
        phi(T);
        FAIL("expected MismatchError");
    } catch (const MismatchError& ex) {
        CHECK(std::string(ex.what()).find("not holonomic") != std::string::npos);
    }
}

TEST_CASE("tower map report") {
    const TransmogrifyResult res = phi(tower_from_section_jet(cube_section(2)));
    CHECK(res.report.subject() == "tower image");
    CHECK(res.report.overall());
    REQUIRE(res.report.find("projection square") != nullptr);
    CHECK(res.report.find("projection square")->pass);
    CHECK(res.candidate == from_section_jet(cube_section(2), JetApproach::Second));
}

TEST_CASE("axis fusion divides by the factorials") {
    CHECK(psi_raw(from_section_jet(square_section(2), JetApproach::Second)) ==
          from_section_jet(square_section(2), JetApproach::Third));
    CHECK(psi_raw(from_section_jet(cube_section(3), JetApproach::Second)) ==
          from_section_jet(cube_section(3), JetApproach::Third));
    CHECK(psi_raw(from_section_jet(symbolic_family(), JetApproach::Second)) ==
          from_section_jet(symbolic_family(), JetApproach::Third));
}

TEST_CASE("axis fusion rejects exchange-variant candidates") {
    JetCandidate c = make_candidate(JetApproach::Second, 2, {1, 1}, {Rat(1), Rat(1)});
    c.body[0][0] = poly_parse("g1b1", c.param_names);
    c.body[0][1] = poly_parse("2*g1b2", c.param_names);
    try {
        psi_raw(c);
        FAIL("expected MismatchError");
    } catch (const MismatchError& ex) {
        CHECK(std::string(ex.what()).find("equal-size axis sets disagree") != std::string::npos);
    }
}

TEST_CASE("axis fusion report") {
    const TransmogrifyResult res = psi(from_section_jet(cube_section(3), JetApproach::Second));
    CHECK(res.report.subject() == "second-to-third image");
    CHECK(res.report.overall());
    REQUIRE(res.report.find("projection square") != nullptr);
    CHECK(res.report.find("projection square")->pass);
}

TEST_CASE("square of the coordinate sum") {
    AlgebraPtr w3 = SimplicialInfObject::power(3).dual_algebra();
    const WeilElement s = elem_make(w3, poly_parse("X1 + X2 + X3", 3));
    CHECK(elem_mul(s, s) == elem_make(w3, poly_parse("2*X1*X2 + 2*X1*X3 + 2*X2*X3", 3)));

    // The same identity as a composite of duals: routing the coordinate sum
    // of six first-order axes through the pair products equals squaring
    // composed with the coordinate sum of the three-fold power.
    std::vector<Polynomial> pairs = {poly_parse("X1*X2", 3), poly_parse("X1*X3", 3),
                                     poly_parse("X2*X3", 3), poly_parse("X1*X2", 3),
                                     poly_parse("X1*X3", 3), poly_parse("X2*X3", 3)};
    const InfMapping chi = make_monomial_mapping(SimplicialInfObject::power(3),
                                                 SimplicialInfObject::graded(6, 1), pairs);
    const HomPtr route1 = hom_compose(mapping_hom(chi), plus_map(SimplicialInfObject::graded(6, 1)));
    const HomPtr square = hom_make(SimplicialInfObject::order(1).dual_algebra(),
                                   SimplicialInfObject::order(3).dual_algebra(),
                                   {poly_parse("X1^2", 1)});
    const HomPtr route2 = hom_compose(plus_map(SimplicialInfObject::power(3)), square);
    CHECK(same_algebra(route1->source(), route2->source()));
    CHECK(same_algebra(route1->target(), route2->target()));
    CHECK(route1->images() == route2->images());
    CHECK(route1->images()[0] == poly_parse("2*X1*X2 + 2*X1*X3 + 2*X2*X3", 3));
}

TEST_CASE("induced action factors through axis fusion") {
    // Acting on a point spread over all coordinate pairs equals fusing the
    // axes first and spreading the result.
    const JetCandidate nabla = from_section_jet(cube_section(3), JetApproach::Second);
    const SimplicialInfObject shape = SimplicialInfObject::brace(3, 2);

    ProlongedPoint gamma = make_point({1, 0}, SimplicialInfObject::order(2).dual_algebra(), 2);
    gamma.param_names = {"g1", "g2"};
    gamma.components[0][0] = Polynomial::constant(2, Rat(1));
    gamma.components[0][1] = Polynomial::variable(2, 0);
    gamma.components[0][2] = Polynomial::variable(2, 1);

    const ProlongedPoint lhs = induced_map(nabla, shape, plus_precompose(gamma, shape), 0);
    const JetCandidate fused = psi_raw(project_second(nabla));
    const ProlongedPoint rhs = functor_apply(plus_map(shape), apply(fused, gamma));
    CHECK(lhs == rhs);
}
