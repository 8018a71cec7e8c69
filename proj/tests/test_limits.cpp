#include "weiljet/limits.hpp"

#include "weiljet/errors.hpp"

#include <doctest.h>

#include <vector>

using namespace weiljet;

namespace {

AlgebraPtr line(int order) { return SimplicialInfObject::order(order).dual_algebra(); }
AlgebraPtr cube(int m) { return SimplicialInfObject::power(m).dual_algebra(); }

} // namespace

TEST_CASE("limit verdict on a one-axis equalizer") {
    const AlgebraPtr big = cube(2);
    const AlgebraPtr small = cube(1);
    std::vector<Polynomial> kill{Polynomial::variable(2, 0), Polynomial::constant(2, Rat(0))};
    WeilDiagram diagram{{big, big},
                        {{0, 1, hom_identity(big)}, {0, 1, hom_make(big, big, kill)}}};
    const HomPtr incl = hom_make(small, big, {Polynomial::variable(2, 0)});
    const LimitVerdict v = limit_subspace(diagram, ConeCandidate{small, {incl, incl}});
    CHECK(v.is_limit);
    CHECK(v.failure == LimitFailure::None);
    CHECK(v.apex_dim == 2);
    CHECK(v.subspace_dim == 2);
}

TEST_CASE("failure certificates name the defect") {
    SUBCASE("legs that disagree across an identity arrow") {
        const AlgebraPtr big = cube(2);
        WeilDiagram diagram{{big, big}, {{0, 1, hom_identity(big)}}};
        ConeCandidate cone{line(1),
                           {hom_make(line(1), big, {Polynomial::variable(2, 0)}),
                            hom_make(line(1), big, {Polynomial::variable(2, 1)})}};
        const LimitVerdict v = limit_subspace(diagram, cone);
        CHECK_FALSE(v.is_limit);
        CHECK(v.failure == LimitFailure::LegsDontCommute);
        CHECK_FALSE(v.detail.empty());
    }

    SUBCASE("legs with a joint kernel") {
        // Dimensions agree (2 vs 2), so only the kernel disqualifies the cone.
        WeilDiagram diagram{{line(1)}, {}};
        ConeCandidate cone{line(1), {hom_make(line(1), line(1), {Polynomial(1)})}};
        const LimitVerdict v = limit_subspace(diagram, cone);
        CHECK_FALSE(v.is_limit);
        CHECK(v.failure == LimitFailure::NotInjective);
        REQUIRE(v.kernel_witness.size() == 2);
        CHECK(v.kernel_witness[1] != Rat(0)); // the generator dies under the leg
    }

    SUBCASE("apex too small for the subspace") {
        WeilDiagram diagram{{cube(2)}, {}};
        ConeCandidate cone{line(1), {hom_make(line(1), cube(2), {Polynomial::variable(2, 0)})}};
        const LimitVerdict v = limit_subspace(diagram, cone);
        CHECK_FALSE(v.is_limit);
        CHECK(v.failure == LimitFailure::DimensionDeficit);
        CHECK(v.apex_dim == 2);
        CHECK(v.subspace_dim == 4);
    }

    SUBCASE("malformed cones are rejected") {
        WeilDiagram diagram{{cube(2)}, {}};
        CHECK_THROWS_AS(limit_subspace(diagram, ConeCandidate{line(1), {}}), SchemaError);
    }
}

TEST_CASE("standard representation of the three-coordinate brace shape") {
    const SimplicialInfObject D = SimplicialInfObject::brace(3, 2);
    const QCRepresentation rep = standard_qcr(D);
    CHECK(rep.target == D);
    REQUIRE(rep.pieces.size() == 3);
    REQUIRE(rep.overlaps.size() == 3);

    CHECK(rep.pieces[0].slots == std::vector<int>{1, 2});
    CHECK(rep.pieces[1].slots == std::vector<int>{1, 3});
    CHECK(rep.pieces[2].slots == std::vector<int>{2, 3});
    for (const auto& piece : rep.pieces) {
        CHECK(piece.object == SimplicialInfObject::power(2));
        CHECK(is_monomial_mapping(piece.injection));
    }
    const Polynomial d1 = Polynomial::variable(2, 0);
    const Polynomial d2 = Polynomial::variable(2, 1);
    const Polynomial zero2(2);
    CHECK(rep.pieces[0].injection.components == std::vector<Polynomial>{d1, d2, zero2});
    CHECK(rep.pieces[1].injection.components == std::vector<Polynomial>{d1, zero2, d2});
    CHECK(rep.pieces[2].injection.components == std::vector<Polynomial>{zero2, d1, d2});

    const Polynomial e1 = Polynomial::variable(1, 0);
    const Polynomial zero1(1);
    CHECK(rep.overlaps[0].piece_a == 0);
    CHECK(rep.overlaps[0].piece_b == 1);
    CHECK(rep.overlaps[0].slots == std::vector<int>{1});
    CHECK(rep.overlaps[0].object == SimplicialInfObject::power(1));
    CHECK(rep.overlaps[0].into_a.components == std::vector<Polynomial>{e1, zero1});
    CHECK(rep.overlaps[0].into_b.components == std::vector<Polynomial>{e1, zero1});

    CHECK(rep.overlaps[1].piece_a == 0);
    CHECK(rep.overlaps[1].piece_b == 2);
    CHECK(rep.overlaps[1].slots == std::vector<int>{2});
    CHECK(rep.overlaps[1].into_a.components == std::vector<Polynomial>{zero1, e1});
    CHECK(rep.overlaps[1].into_b.components == std::vector<Polynomial>{e1, zero1});

    CHECK(rep.overlaps[2].piece_a == 1);
    CHECK(rep.overlaps[2].piece_b == 2);
    CHECK(rep.overlaps[2].slots == std::vector<int>{3});
    CHECK(rep.overlaps[2].into_a.components == std::vector<Polynomial>{zero1, e1});
    CHECK(rep.overlaps[2].into_b.components == std::vector<Polynomial>{zero1, e1});

    const auto [diagram, cone] = qcr_dualize(rep);
    CHECK(limit_subspace(diagram, cone).is_limit);
}

TEST_CASE("standard representations of the small shapes") {
    SUBCASE("full power shape is a single piece") {
        const QCRepresentation rep = standard_qcr(SimplicialInfObject::power(2));
        REQUIRE(rep.pieces.size() == 1);
        CHECK(rep.pieces[0].slots == std::vector<int>{1, 2});
        CHECK(rep.overlaps.empty());
    }

    SUBCASE("two-coordinate graded shape splits into two lines over a point") {
        const QCRepresentation rep = standard_qcr(SimplicialInfObject::graded(2, 1));
        REQUIRE(rep.pieces.size() == 2);
        CHECK(rep.pieces[0].slots == std::vector<int>{1});
        CHECK(rep.pieces[1].slots == std::vector<int>{2});
        REQUIRE(rep.overlaps.size() == 1);
        CHECK(rep.overlaps[0].object == SimplicialInfObject::power(0));
        CHECK(rep.overlaps[0].slots.empty());
    }

    SUBCASE("three-coordinate graded shape needs all three point overlaps") {
        const QCRepresentation rep = standard_qcr(SimplicialInfObject::graded(3, 1));
        CHECK(rep.pieces.size() == 3);
        CHECK(rep.overlaps.size() == 3);
    }

    SUBCASE("asymmetric vanishing lists are covered too") {
        const QCRepresentation rep =
            standard_qcr(SimplicialInfObject::square_free(3, {{1, 3}, {2, 3}}));
        REQUIRE(rep.pieces.size() == 2);
        CHECK(rep.pieces[0].slots == std::vector<int>{1, 2});
        CHECK(rep.pieces[1].slots == std::vector<int>{3});
    }

    SUBCASE("shapes with higher-order coordinates are rejected") {
        CHECK_THROWS_AS(standard_qcr(SimplicialInfObject::order(2)), SchemaError);
        CHECK_THROWS_AS(standard_qcr(SimplicialInfObject::graded(2, 2)), SchemaError);
    }

    SUBCASE("degree cap") {
        CHECK_THROWS_AS(standard_qcr(SimplicialInfObject::power(9)), CapExceeded);
    }
}

TEST_CASE("a mutilated covering loses the limit property") {
    const SimplicialInfObject D = SimplicialInfObject::brace(3, 2);
    QCRepresentation rep = standard_qcr(D);
    // Drop the last piece and the overlaps that touch it.
    rep.pieces.pop_back();
    std::vector<QCOverlap> kept;
    for (const auto& ov : rep.overlaps) {
        if (ov.piece_a < 2 && ov.piece_b < 2) kept.push_back(ov);
    }
    rep.overlaps = std::move(kept);
    REQUIRE(rep.pieces.size() == 2);
    REQUIRE(rep.overlaps.size() == 1);

    const LimitVerdict v = verify_nonstandard_qcr(D, rep);
    CHECK_FALSE(v.is_limit);
    CHECK(v.failure == LimitFailure::DimensionDeficit);
    CHECK(v.apex_dim == 7);
    CHECK(v.subspace_dim == 6);
}

TEST_CASE("nonstandard verification validates its input") {
    const QCRepresentation rep = standard_qcr(SimplicialInfObject::brace(3, 2));
    CHECK_THROWS_AS(verify_nonstandard_qcr(SimplicialInfObject::power(3), rep), SchemaError);

    QCRepresentation broken = rep;
    broken.overlaps[0].piece_b = 7;
    CHECK_THROWS_AS(verify_nonstandard_qcr(SimplicialInfObject::brace(3, 2), broken), SchemaError);
}
