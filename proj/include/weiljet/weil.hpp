#pragma once

#include "weiljet/polynomial.hpp"

#include <json.hpp>

#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace weiljet {

// Finite-dimensional quotient Q[X1..Xm]/I by a monomial ideal, with the
// standard-monomial basis (monomials outside I) listed unit-first in graded
// order. Algebras are immutable and shared by reference.
class WeilAlgebra {
public:
    WeilAlgebra(int var_count, MonomialIdeal ideal);

    int var_count() const { return vars_; }
    const MonomialIdeal& ideal() const { return ideal_; }
    const std::vector<Monomial>& basis() const { return basis_; }
    int dim() const { return static_cast<int>(basis_.size()); }

    // Index of a standard monomial in the basis; -1 if m lies in the ideal.
    int basis_index(const Monomial& m) const;

    // Product of two basis monomials: index of the (necessarily standard or
    // killed) product, or -1 when the product falls into the ideal.
    int basis_product(int i, int j) const { return mul_table_[i * dim() + j]; }

    bool operator==(const WeilAlgebra& other) const {
        return vars_ == other.vars_ && ideal_ == other.ideal_;
    }

private:
    int vars_;
    MonomialIdeal ideal_;
    std::vector<Monomial> basis_;
    std::map<Monomial, int, Monomial::GrlexLess> basis_index_;
    std::vector<int> mul_table_;
};

using AlgebraPtr = std::shared_ptr<const WeilAlgebra>;

// Constructs the quotient algebra, verifying finite-dimensionality: every
// variable must have some pure power among the ideal generators.
AlgebraPtr build_algebra(int var_count, const MonomialIdeal& ideal);

inline AlgebraPtr build_algebra(int var_count, std::vector<Monomial> generators) {
    return build_algebra(var_count, MonomialIdeal(std::move(generators)));
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

// Element of a Weil algebra, kept in normal form (only standard monomials).
class WeilElement {
public:
    WeilElement(AlgebraPtr algebra, Polynomial value);

    const AlgebraPtr& algebra() const { return algebra_; }
    const Polynomial& value() const { return value_; }
    std::vector<Rat> coords() const; // coefficients per basis monomial

    bool operator==(const WeilElement& other) const;

private:
    AlgebraPtr algebra_;
    Polynomial value_;
};

WeilElement elem_make(AlgebraPtr algebra, const Polynomial& p);
WeilElement elem_add(const WeilElement& a, const WeilElement& b);
WeilElement elem_mul(const WeilElement& a, const WeilElement& b);
WeilElement elem_scale(const WeilElement& a, const Rat& c);

// Algebra homomorphism stored by variable images (polynomials over the
// target's variables). Always unital; construction verifies that source-ideal
// generators map to zero and that images have no constant term.
class WeilHom {
public:
    WeilHom(AlgebraPtr source, AlgebraPtr target, std::vector<Polynomial> images);

    const AlgebraPtr& source() const { return source_; }
    const AlgebraPtr& target() const { return target_; }
    const std::vector<Polynomial>& images() const { return images_; }

    // Image of a source basis monomial, reduced in the target.
    Polynomial image_of_monomial(const Monomial& m) const;

    // Matrix of the induced linear map on bases, column i = coordinates of
    // the image of source basis monomial i. Computed on demand, cached.
    const std::vector<std::vector<Rat>>& basis_matrix() const;

private:
    AlgebraPtr source_;
    AlgebraPtr target_;
    std::vector<Polynomial> images_;
    mutable std::once_flag matrix_once_;
    mutable std::vector<std::vector<Rat>> matrix_; // [target dim][source dim]
};

using HomPtr = std::shared_ptr<const WeilHom>;

HomPtr hom_make(AlgebraPtr source, AlgebraPtr target, std::vector<Polynomial> images);
HomPtr hom_identity(AlgebraPtr algebra);
WeilElement hom_apply(const WeilHom& h, const WeilElement& a);
// Composite g . f (apply f first): substitutes f's images into g's images.
HomPtr hom_compose(const HomPtr& g, const HomPtr& f);

// Tensor product: concatenated variables, second block's generators shifted.
AlgebraPtr tensor(const AlgebraPtr& w1, const AlgebraPtr& w2);

nlohmann::json algebra_to_json(const WeilAlgebra& w);
AlgebraPtr algebra_from_json(const nlohmann::json& j);
nlohmann::json element_to_json(const WeilElement& e);
WeilElement element_from_json(const nlohmann::json& j);
nlohmann::json hom_to_json(const WeilHom& h);
HomPtr hom_from_json(const nlohmann::json& j);

} // namespace weiljet
