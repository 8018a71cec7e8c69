#pragma once

#include "weiljet/infinitesimal.hpp"
#include "weiljet/limits.hpp"
#include "weiljet/prolong.hpp"
#include "weiljet/report.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace weiljet {

// The three jet models implemented here. FIRST is the classical tower of
// fiberwise-linear one-step extensions (FirstApproachTower below); SECOND
// works over the algebra of the n-fold square-free power object; THIRD works
// over the single-variable truncated algebra.
enum class JetApproach { First, Second, Third };

std::string approach_to_string(JetApproach a);
JetApproach approach_parse(const std::string& text);

// Model algebra a candidate of the given approach and order lives over.
AlgebraPtr jet_model_algebra(JetApproach a, int order);

// A candidate jet at one point of a trivial bundle R^base x R^fiber -> R^base.
//
// The candidate acts on inputs anchored at the base point: for an input whose
// coordinate j has coefficient gamma_{j,nu} at the non-unit basis monomial nu,
// the output's fiber coordinate c has coefficient body[c][idx(nu)-1], a
// polynomial over the parameter pool. The pool lists one parameter g{j}b{k}
// per input coefficient first (coordinate-major, basis order) and then the
// named extras, so symbolic coefficients of a whole family can ride along.
// The output's base block is the input itself and the unit fiber coefficients
// are the point's fiber values, which makes the projection condition
// structural; apply() re-verifies the anchoring instead of assuming it.
struct JetCandidate {
    JetApproach approach = JetApproach::Second;
    int order = 0;
    CoordSpace bundle;
    std::vector<Rat> point; // base values then fiber values
    AlgebraPtr algebra;
    std::vector<std::string> extra_names;
    std::vector<std::string> param_names; // gamma parameters then extras
    std::vector<std::vector<Polynomial>> body; // [fiber coord][basis index - 1]

    int gamma_count() const;
    int extra_count() const { return static_cast<int>(extra_names.size()); }
    int param_count() const { return gamma_count() + extra_count(); }
    // Pool index of the parameter for input coordinate `coord` (0-based) at
    // the non-unit basis monomial with basis index `basis_index` (>= 1).
    int gamma_param(int coord, int basis_index) const;

    bool operator==(const JetCandidate& other) const;
};

// A candidate with zero body; callers fill in the body polynomials over the
// pool the constructor lays out.
JetCandidate make_candidate(JetApproach a, int order, CoordSpace bundle,
                            std::vector<Rat> point,
                            std::vector<std::string> extra_names = {});

// The fully symbolic input: coordinate j has the base value as unit
// coefficient and parameter g{j+1}b{k} at the k-th non-unit basis monomial.
ProlongedPoint generic_input(const JetCandidate& c);

// Evaluate the candidate. The input must be over the model algebra, have
// exactly base_dim coordinates, and be anchored at the base point. Its pool
// may be anything that contains the candidate's extras as a block starting at
// extras_base (default: the candidate's own gamma block size, i.e. the pool
// of generic_input).
ProlongedPoint apply(const JetCandidate& c, const ProlongedPoint& input,
                     int extras_base = -1);

// Pointwise conditions for a second-approach candidate: projection, per-axis
// scalar scaling, per-axis nilpotent scaling, and invariance under adjacent
// axis transpositions. All items are exact polynomial identities. Capped at
// order <= 4.
CheckReport check_second(const JetCandidate& c);

// The stronger recursive condition on a second-approach candidate whose
// pointwise conditions already hold: the projected candidate satisfies it
// again, and fusing the last two axes commutes with projection.
CheckReport check_second_tangential(const JetCandidate& c);

// Forget the last axis: insert the input along a degenerate extension and
// restrict the output. Re-checks that the result commutes with all axis
// insertions and deletions; a failure there means the input did not satisfy
// the pointwise conditions and raises MismatchError.
JetCandidate project_second(const JetCandidate& c);
JetCandidate project_second_to(const JetCandidate& c, int target_order);

// The action of a second-approach candidate on points over the algebra of an
// arbitrary square-free shape of dimension <= order: evaluate the projected
// candidates on the restrictions of gamma to the shape's standard pieces and
// solve for the unique point matching all of them. Inconsistent piece values
// raise MismatchError. extras_base has the same meaning as in apply().
ProlongedPoint induced_map(const JetCandidate& c, const SimplicialInfObject& shape,
                           const ProlongedPoint& gamma, int extras_base = -1);

// Composite of two second-approach candidates of the same order, where the
// upper candidate's base space is the lower candidate's total space and its
// base point is the lower candidate's point. The result is a candidate over
// the combined bundle (base of lower, fibers of both); its extras are the
// lower extras followed by the upper extras. Re-checks that projecting the
// composite agrees with composing the projections.
JetCandidate compose_jets(const JetCandidate& upper, const JetCandidate& lower);

// Pointwise conditions for a third-approach candidate: projection, scalar
// reparametrization, and nilpotent reparametrization. Capped at order <= 4.
CheckReport check_third(const JetCandidate& c);

// The recursive condition for third-approach candidates: the projection
// satisfies it again, and every simple reparametrization d |-> sum of powers
// factors through the projection to the reparametrization's dimension.
CheckReport check_third_tangential(const JetCandidate& c);

// Lower a third-approach candidate by one order: feed it the input spread
// along a fresh nilpotent of the target order and read the result off the
// diagonal. Off-diagonal residue means the candidate's pointwise conditions
// fail and raises MismatchError.
JetCandidate project_third(const JetCandidate& c);
JetCandidate project_third_to(const JetCandidate& c, int target_order);

// -------------------------------------------------------------------------
// First approach: towers of one-step extensions.

// Stacked fiber dimension of the level-th jet space of the bundle:
// fiber * (1 + base)^level.
int stacked_fiber_dim(const CoordSpace& bundle, int level);

// A tower of depth k at one point: level l is the matrix of the level-l
// one-step extension acting on base tangents, written in the stacked fiber
// coordinates of level l-1 (so it has stacked_fiber_dim(bundle, l-1) rows and
// base_dim columns). Entries and the point are polynomials over a shared
// parameter pool so whole families can be checked at once.
struct FirstApproachTower {
    int depth = 0;
    CoordSpace bundle;
    std::vector<Polynomial> point; // base values then fiber values
    int param_count = 0;
    std::vector<std::string> param_names;
    std::vector<std::vector<std::vector<Polynomial>>> levels;

    bool operator==(const FirstApproachTower& other) const;
};

FirstApproachTower make_tower(int depth, CoordSpace bundle, std::vector<Polynomial> point,
                              std::vector<std::string> param_names = {});

// Forget the top level.
FirstApproachTower truncate_tower(const FirstApproachTower& T);

enum class TowerClass { NonHolonomic, SemiHolonomic, Holonomic };

std::string tower_class_to_string(TowerClass c);

struct FirstCheckResult {
    CheckReport report;
    TowerClass classification = TowerClass::NonHolonomic;
};

// Per-level linearity conditions (symbolic), the relatedness of consecutive
// levels, and the exchange of the two partial evaluations at every level >= 2.
// Relatedness at all levels upgrades the class to SemiHolonomic, all exchange
// conditions on top of that to Holonomic. Capped at depth <= 3.
FirstCheckResult check_first(const FirstApproachTower& T);

// -------------------------------------------------------------------------
// Maps between the approaches.

struct TransmogrifyResult {
    JetCandidate candidate;
    CheckReport report;
};

// Raw evaluation of a tower on an input over the algebra of the depth-fold
// power object: peel off the last axis, follow the top level along it, and
// recurse on the perturbed truncated tower. gamma's pool must contain the
// tower parameters as a block starting at tower_params_base.
ProlongedPoint phi_apply(const FirstApproachTower& T, const ProlongedPoint& gamma,
                         int tower_params_base);

// The second-approach candidate a tower evaluates to, without any condition
// checks. The tower point must be rational.
JetCandidate phi_raw(const FirstApproachTower& T);

// Tower-to-second-approach map. Requires a holonomic tower (MismatchError
// otherwise); the report re-verifies the pointwise and recursive conditions
// on the image and the square against the truncated tower.
TransmogrifyResult phi(const FirstApproachTower& T);

// Second-to-third-approach map: evaluate on inputs spread uniformly over all
// axes and divide the diagonal coefficients by the subset factorials. The
// equal-size coefficients of the result of apply() must agree; disagreement
// signals a non-invariant input candidate and raises MismatchError.
JetCandidate psi_raw(const JetCandidate& c);

// psi with re-verification: pointwise conditions of the image, the square
// against projection on both sides, and the recursive condition.
TransmogrifyResult psi(const JetCandidate& c);

// -------------------------------------------------------------------------
// Jets of sections.

// A formal section of the trivial bundle, expanded at a base point: one
// polynomial per fiber coordinate over the pool [u_1..u_base][extras], where
// u is the displacement from the base point. Terms of u-degree above the
// order are not stored; the u-free part must be a rational constant (the
// fiber value at the point).
struct SectionJet {
    CoordSpace bundle;
    int order = 0;
    std::vector<Rat> base_point;
    std::vector<Polynomial> expansions;
    std::vector<std::string> extra_names;
};

SectionJet make_section_jet(CoordSpace bundle, int order, std::vector<Rat> base_point,
                            std::vector<Polynomial> expansions,
                            std::vector<std::string> extra_names = {});

// The candidate a section's expansion determines: substitute the non-unit
// part of the input for the displacement and expand in the model algebra.
// target_order < 0 means the section's own order; any other value must match
// it (MismatchError), it exists so callers can state their expectation.
// For the first approach use tower_from_section_jet.
JetCandidate from_section_jet(const SectionJet& s, JetApproach a, int target_order = -1);

// The tower of a section: level l is the matrix of l-th partial derivatives
// of the stacked level-(l-1) expansions, taken at the base point.
FirstApproachTower tower_from_section_jet(const SectionJet& s, int depth = -1);

// -------------------------------------------------------------------------
// Serialization.

nlohmann::json candidate_to_json(const JetCandidate& c);
JetCandidate candidate_from_json(const nlohmann::json& j);
nlohmann::json tower_to_json(const FirstApproachTower& T);
FirstApproachTower tower_from_json(const nlohmann::json& j);

} // namespace weiljet
