#pragma once

#include "weiljet/infinitesimal.hpp"
#include "weiljet/weil.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace weiljet {

// A coordinate space R^(base+fiber); plain spaces use fiber_dim = 0, bundle
// total spaces mark the split, and the bundle projection is always the
// projection onto the first block.
struct CoordSpace {
    int base_dim = 0;
    int fiber_dim = 0;
    int dim() const { return base_dim + fiber_dim; }
    bool operator==(const CoordSpace&) const = default;
};

// A point of (R^k) tensor W: one W-element per coordinate, with coefficients
// that are themselves polynomials in a shared pool of named parameters, so
// identity checks are exact polynomial identities instead of sampled ones.
struct ProlongedPoint {
    CoordSpace space;
    AlgebraPtr algebra;
    // components[coordinate][basis index] over param_count variables.
    std::vector<std::vector<Polynomial>> components;
    int param_count = 0;
    std::vector<std::string> param_names; // optional, for serialization

    bool operator==(const ProlongedPoint& other) const {
        return space == other.space && same_algebra(algebra, other.algebra) &&
               components == other.components;
    }
};

// A zero-initialized point over the given algebra.
ProlongedPoint make_point(CoordSpace space, AlgebraPtr algebra, int param_count);

// Re-declares every coefficient polynomial over a larger parameter pool.
ProlongedPoint extend_pool(const ProlongedPoint& p, int new_param_count);

// The action id tensor h on points: componentwise application of the
// homomorphism's linear basis map. Requires p.algebra = h.source.
ProlongedPoint functor_apply(const WeilHom& h, const ProlongedPoint& p);
inline ProlongedPoint functor_apply(const HomPtr& h, const ProlongedPoint& p) {
    return functor_apply(*h, p);
}

// Scaling along one axis (1-based): the coefficient at a basis monomial is
// multiplied by alpha^(exponent of that axis variable). The polynomial
// overload admits symbolic or nilpotent scalars from the parameter pool.
ProlongedPoint scale_axis(const Rat& alpha, int axis, const ProlongedPoint& p);
ProlongedPoint scale_axis(const Polynomial& alpha, int axis, const ProlongedPoint& p);

// Simplicial structure maps between points over the square-free power
// algebras: s_i inserts a dummy coordinate at slot i (1-based), d_i sets
// coordinate i to zero and renumbers. Both are functor_apply on the dual
// coordinate maps.
ProlongedPoint simplicial_s(int i, const ProlongedPoint& p);
ProlongedPoint simplicial_d(int i, const ProlongedPoint& p);

// Coordinate permutation: realized by the dual substitution
// X_j -> X_{perm[j-1]} (perm lists the 1-based images of 1..n).
ProlongedPoint permute_axes(const std::vector<int>& perm, const ProlongedPoint& p);

// A first-order point is degenerate when every non-unit coefficient
// vanishes; a bundle point is vertical when its base block is degenerate.
bool is_degenerate(const ProlongedPoint& p);
bool is_vertical(const ProlongedPoint& p);

// Precomposition with the coordinate-sum map: carries a point over the
// algebra of D_n into one over the object's algebra (n = dimension).
ProlongedPoint plus_precompose(const ProlongedPoint& p, const SimplicialInfObject& D);

nlohmann::json point_to_json(const ProlongedPoint& p);
ProlongedPoint point_from_json(const nlohmann::json& j);

} // namespace weiljet
