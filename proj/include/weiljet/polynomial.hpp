#pragma once

#include "weiljet/errors.hpp"
#include "weiljet/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace weiljet {

// A power product of variables, stored sparsely: variable index (0-based) to
// exponent, never storing zero exponents. The empty map is the unit monomial.
class Monomial {
public:
    Monomial() = default;

    static Monomial one() { return {}; }
    static Monomial var(int index, int exponent = 1);

    int degree() const;
    int exponent(int index) const;
    bool is_unit() const { return exps_.empty(); }
    int max_var() const; // largest variable index used; -1 for the unit

    bool divides(const Monomial& other) const;
    Monomial operator*(const Monomial& other) const;

    const std::map<int, int>& exponents() const { return exps_; }

    bool operator==(const Monomial& other) const = default;

    // Canonical enumeration order: ascending total degree, then within a
    // degree the variable-major order 1 < X1 < X2, X1^2 < X1*X2 < X2^2, ...
    // Used for basis enumeration and deterministic printing.
    static bool grlex_less(const Monomial& a, const Monomial& b);
    struct GrlexLess {
        bool operator()(const Monomial& a, const Monomial& b) const { return grlex_less(a, b); }
    };

private:
    std::map<int, int> exps_;
};

// Sparse multivariate polynomial over the rationals with a declared variable
// count. Operations between polynomials require equal variable counts.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rat, Monomial::GrlexLess>;

    Polynomial() = default; // zero polynomial over zero variables
    explicit Polynomial(int var_count);

    static Polynomial constant(int var_count, const Rat& c);
    static Polynomial variable(int var_count, int index);
    static Polynomial term(int var_count, const Monomial& m, const Rat& c);

    int var_count() const { return vars_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    Rat coeff(const Monomial& m) const;
    Rat constant_term() const { return coeff(Monomial::one()); }
    int total_degree() const; // 0 for the zero polynomial

    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit()); }

    // Re-declare the polynomial over a larger variable pool (embedding).
    Polynomial with_vars(int new_var_count) const;

    // Adds c*m into the term map, dropping the entry if it cancels.
    Polynomial& add_term(const Monomial& m, const Rat& c);

    Polynomial operator-() const;
    Polynomial operator*(const Rat& scalar) const;
    Rat eval(const std::vector<Rat>& point) const;
    Polynomial derivative(int var) const;

    bool operator==(const Polynomial& other) const = default;

private:
    int vars_ = 0;
    TermMap terms_;
};

Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_sub(const Polynomial& a, const Polynomial& b);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);

inline Polynomial operator+(const Polynomial& a, const Polynomial& b) { return poly_add(a, b); }
inline Polynomial operator-(const Polynomial& a, const Polynomial& b) { return poly_sub(a, b); }
inline Polynomial operator*(const Polynomial& a, const Polynomial& b) { return poly_mul(a, b); }

// A monomial ideal, kept minimal: no stored generator divides another. A
// monomial belongs to the ideal iff some generator divides it, so quotient
// normal forms reduce to a divisibility scan.
class MonomialIdeal {
public:
    MonomialIdeal() = default;
    explicit MonomialIdeal(std::vector<Monomial> generators);

    const std::vector<Monomial>& generators() const { return gens_; }
    bool contains(const Monomial& m) const;

    bool operator==(const MonomialIdeal& other) const = default;

private:
    std::vector<Monomial> gens_; // minimal, sorted in grlex order
};

// Canonical representative of p in the quotient by I: delete every term whose
// monomial lies in I. Idempotent, and a ring map onto the quotient.
Polynomial normal_form(const Polynomial& p, const MonomialIdeal& I);

// Ring homomorphism by substitution: replace variable j with images[j]
// (all images over a common variable count), expand, and normalize.
Polynomial substitute(const Polynomial& p, const std::vector<Polynomial>& images);

// Text format: sum of `c*X1^a1*...*Xm^am` terms, integer or p/q coefficients.
// An optional name table replaces the default X1..Xm variable names; printing
// and parsing round-trip exactly.
std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& names = {});
std::string poly_to_string(const Polynomial& p, const std::vector<std::string>& names = {});
Monomial monomial_parse(const std::string& text, int var_count);
Polynomial poly_parse(const std::string& text, int var_count);
Polynomial poly_parse(const std::string& text, const std::vector<std::string>& names);

} // namespace weiljet
