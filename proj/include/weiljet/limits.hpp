#pragma once

#include "weiljet/infinitesimal.hpp"
#include "weiljet/linalg.hpp"
#include "weiljet/weil.hpp"

#include <string>
#include <vector>

namespace weiljet {

// A finite diagram in the category of Weil algebras.
struct WeilDiagram {
    std::vector<AlgebraPtr> objects;
    struct Arrow {
        int source = 0;
        int target = 0;
        HomPtr hom;
    };
    std::vector<Arrow> arrows;
};

// A cone over a diagram: one leg from the apex to every object.
struct ConeCandidate {
    AlgebraPtr apex;
    std::vector<HomPtr> legs;
};

enum class LimitFailure { None, LegsDontCommute, NotInjective, DimensionDeficit };

struct LimitVerdict {
    bool is_limit = false;
    LimitFailure failure = LimitFailure::None;
    int apex_dim = 0;
    int subspace_dim = 0;          // dimension of the equalizer subspace
    std::vector<Rat> kernel_witness; // apex coordinates killed by every leg
    std::string detail;
};

// Decides whether the cone exhibits the apex as the limit of the diagram:
// forms the product of all objects, cuts the subspace where every arrow
// equation hom(a_i) = a_j holds, and compares it with the image of the
// stacked legs. LIMIT iff the legs commute with all arrows, are jointly
// injective, and the apex dimension equals the subspace dimension. The
// verdict carries a certificate (kernel vector or dimension gap) on failure.
LimitVerdict limit_subspace(const WeilDiagram& diagram, const ConeCandidate& cone);

// A covering of a square-free object by basic pieces D^k glued along
// overlaps, whose dual algebra diagram is expected to be a limit.
struct QCPiece {
    std::vector<int> slots; // target coordinates (1-based, increasing)
    SimplicialInfObject object;
    InfMapping injection; // piece -> target
};

struct QCOverlap {
    int piece_a = 0;
    int piece_b = 0;
    std::vector<int> slots; // common target coordinates
    SimplicialInfObject object;
    InfMapping into_a; // overlap -> piece_a
    InfMapping into_b; // overlap -> piece_b
};

struct QCRepresentation {
    SimplicialInfObject target = SimplicialInfObject::order(1);
    std::vector<QCPiece> pieces;
    std::vector<QCOverlap> overlaps;
};

// The standard representation: one piece per maximal vanishing-free
// increasing sequence (lexicographic order), overlap objects on the maximal
// common subsequences of each pair of pieces. Requires square-free
// coordinates and degree <= 8. The result is certified; a certification
// failure is an internal error.
QCRepresentation standard_qcr(const SimplicialInfObject& D);

// Dualizes a representation to its Weil diagram plus the canonical cone
// (apex = target algebra, legs = dual injections).
std::pair<WeilDiagram, ConeCandidate> qcr_dualize(const QCRepresentation& rep);

// Certifies an arbitrary user-supplied representation. All component maps
// must be monomial mappings.
LimitVerdict verify_nonstandard_qcr(const SimplicialInfObject& D, const QCRepresentation& rep);

} // namespace weiljet
