#pragma once

#include "weiljet/report.hpp"
#include "weiljet/weil.hpp"

#include <set>
#include <string>
#include <vector>

namespace weiljet {

// The basic shapes of simplicial infinitesimal objects:
//   Order      D_n      one coordinate d with d^{n+1} = 0
//   Power      D^m      m first-order coordinates, no product relations
//   Graded     D(m)_n   m coordinates, products of n+1 factors vanish
//   SquareFree D{m;S}   m first-order coordinates, listed products vanish
//   Brace      D{m}_n   D{m;S} with S = all (n+1)-element index subsets
enum class InfKind { Order, Power, Graded, SquareFree, Brace };

class SimplicialInfObject {
public:
    static SimplicialInfObject order(int n);                                        // D_n
    static SimplicialInfObject power(int m);                                        // D^m
    static SimplicialInfObject graded(int m, int n);                                // D(m)_n
    static SimplicialInfObject square_free(int m, std::vector<std::vector<int>> S); // D{m;S}
    static SimplicialInfObject brace(int m, int n);                                 // D{m}_n

    InfKind kind() const { return kind_; }
    // The number of coordinates (the object sits inside R^degree).
    int degree() const { return m_; }
    // The order parameter n of D_n, D(m)_n, D{m}_n.
    int order_param() const;
    // Minimal list of vanishing index sets for square-free shapes (each a
    // strictly increasing sequence; for D{m}_n the expanded subset list).
    const std::vector<std::vector<int>>& vanishing_products() const;

    int dimension() const;
    bool is_symmetric() const;
    AlgebraPtr dual_algebra() const;
    std::string to_string() const;

    // True when the coordinates are individually first-order (every square
    // vanishes): all shapes except D_n with n != 1 and D(m)_n with n != 1.
    bool square_free_coords() const;

    bool operator==(const SimplicialInfObject& other) const = default;

private:
    SimplicialInfObject(InfKind kind, int m, int n, std::vector<std::vector<int>> S)
        : kind_(kind), m_(m), n_(n), S_(std::move(S)) {}

    InfKind kind_ = InfKind::Order;
    int m_ = 1; // degree (coordinate count); 1 for D_n
    int n_ = 1; // order parameter where applicable
    std::vector<std::vector<int>> S_;
};

SimplicialInfObject inf_parse(const std::string& text);

// A polynomial in one coordinate d of D_n with all coefficients 0 or 1 and
// zero constant term, recorded by its exponent set.
struct SimplePolynomial {
    int n = 1;               // ambient D_n
    std::set<int> exponents; // nonempty subset of {1..n}
};

// Least l with rho^{l+1} = 0 in the dual algebra of D_n.
int simple_poly_dim(const SimplePolynomial& rho);

// Dual algebra map of d in D_l |-> rho(d) in D_n, where l = simple_poly_dim.
HomPtr simple_poly_hom(const SimplePolynomial& rho);

// A coordinate mapping between simplicial infinitesimal objects, one
// component per target coordinate, written in the source coordinates. In a
// monomial mapping every component is a single coefficient-1 monomial or
// zero; the polynomial variant drops that restriction.
struct InfMapping {
    SimplicialInfObject source;
    SimplicialInfObject target;
    std::vector<Polynomial> components; // over degree(source) variables
};

InfMapping make_monomial_mapping(SimplicialInfObject source, SimplicialInfObject target,
                                 std::vector<Polynomial> components);
InfMapping make_poly_mapping(SimplicialInfObject source, SimplicialInfObject target,
                             std::vector<Polynomial> components);
bool is_monomial_mapping(const InfMapping& f);

// The dual algebra homomorphism, from the target's algebra to the source's;
// construction verifies well-definedness.
HomPtr mapping_hom(const InfMapping& f);

// The coordinate-sum map from the object into D_n, n = dimension, returned
// as its dual hom (algebra of D_n into the object's algebra); construction
// verifies well-definedness, which certifies the dimension value.
HomPtr plus_map(const SimplicialInfObject& D);

// Verifies the standard inclusion families between graded objects and their
// products on the grid m, n <= max_m, max_n, each realized as an
// identity-on-coordinates mapping with a well-defined dual hom.
CheckReport check_inclusions(int max_m = 4, int max_n = 4);

} // namespace weiljet
