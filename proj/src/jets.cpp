#include "weiljet/jets.hpp"

#include "weiljet/errors.hpp"
#include "weiljet/linalg.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

namespace weiljet {

namespace {

// Re-declare p over new_count variables with every index shifted up by offset.
Polynomial shift_vars(const Polynomial& p, int offset, int new_count) {
    Polynomial out(new_count);
    for (const auto& [mono, coef] : p.terms()) {
        Monomial shifted;
        for (const auto& [v, exp] : mono.exponents()) shifted = shifted * Monomial::var(v + offset, exp);
        out.add_term(shifted, coef);
    }
    return out;
}

// Terms whose exponent at var is exactly exp, with that factor removed. Only
// valid when var is the last variable, so the remaining indices survive the
// shrink to new_count.
Polynomial select_var_part(const Polynomial& p, int var, int exp, int new_count) {
    Polynomial out(new_count);
    for (const auto& [mono, coef] : p.terms()) {
        if (mono.exponent(var) != exp) continue;
        Monomial rest;
        for (const auto& [v, e] : mono.exponents())
            if (v != var) rest = rest * Monomial::var(v, e);
        out.add_term(rest, coef);
    }
    return out;
}

// Drop terms whose exponent at var exceeds max_exp (reduction modulo the
// nilpotency var^(max_exp+1)).
Polynomial reduce_var_power(const Polynomial& p, int var, int max_exp) {
    Polynomial out(p.var_count());
    for (const auto& [mono, coef] : p.terms())
        if (mono.exponent(var) <= max_exp) out.add_term(mono, coef);
    return out;
}

int max_var_exponent(const Polynomial& p, int var) {
    int best = 0;
    for (const auto& [mono, coef] : p.terms()) best = std::max(best, mono.exponent(var));
    return best;
}

ProlongedPoint reduce_point_var(const ProlongedPoint& p, int var, int max_exp) {
    ProlongedPoint out = p;
    for (auto& row : out.components)
        for (auto& poly : row) poly = reduce_var_power(poly, var, max_exp);
    return out;
}

int point_max_exponent(const ProlongedPoint& p, int var) {
    int best = 0;
    for (const auto& row : p.components)
        for (const auto& poly : row) best = std::max(best, max_var_exponent(poly, var));
    return best;
}

// Largest per-term total degree in the variables below bound.
int degree_below(const Monomial& m, int bound) {
    int deg = 0;
    for (const auto& [v, exp] : m.exponents())
        if (v < bound) deg += exp;
    return deg;
}

int gamma_degree(const Polynomial& p, int gamma_count) {
    int best = 0;
    for (const auto& [mono, coef] : p.terms()) best = std::max(best, degree_below(mono, gamma_count));
    return best;
}

int body_gamma_degree(const JetCandidate& c) {
    int best = 0;
    for (const auto& row : c.body)
        for (const auto& poly : row) best = std::max(best, gamma_degree(poly, c.gamma_count()));
    return best;
}

// Componentwise product of two algebra elements given by basis coefficient
// vectors of polynomials.
std::vector<Polynomial> elem_vec_mul(const WeilAlgebra& alg, const std::vector<Polynomial>& a,
                                     const std::vector<Polynomial>& b) {
    const int dim = alg.dim();
    const int pool = a.empty() ? 0 : a[0].var_count();
    std::vector<Polynomial> out(dim, Polynomial(pool));
    for (int i = 0; i < dim; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < dim; ++j) {
            if (b[j].is_zero()) continue;
            int t = alg.basis_product(i, j);
            if (t >= 0) out[t] = out[t] + a[i] * b[j];
        }
    }
    return out;
}

constexpr int kCheckOrderCap = 4;
constexpr int kMapOrderCap = 3;

void validate_candidate(const JetCandidate& c, JetApproach expected, int order_cap) {
    if (c.approach != expected)
        throw SchemaError("candidate has the wrong approach for this operation");
    if (c.order < 0) throw SchemaError("candidate order must be nonnegative");
    if (c.order > order_cap)
        throw CapExceeded("candidate order " + std::to_string(c.order) +
                          " exceeds the supported bound " + std::to_string(order_cap));
    const int m = c.bundle.base_dim;
    const int e = c.bundle.fiber_dim;
    if (m < 1 || e < 1) throw SchemaError("candidate bundle needs positive dimensions");
    if (static_cast<int>(c.point.size()) != m + e)
        throw SchemaError("candidate point must list base and fiber values");
    if (!c.algebra || !same_algebra(c.algebra, jet_model_algebra(c.approach, c.order)))
        throw SchemaError("candidate algebra does not match its approach and order");
    const int dim = c.algebra->dim();
    if (static_cast<int>(c.body.size()) != e)
        throw SchemaError("candidate body must have one row per fiber coordinate");
    for (const auto& row : c.body) {
        if (static_cast<int>(row.size()) != dim - 1)
            throw SchemaError("candidate body row has the wrong number of coefficients");
        for (const auto& poly : row)
            if (poly.var_count() != c.param_count())
                throw SchemaError("candidate body polynomial is over the wrong parameter pool");
    }
    if (static_cast<int>(c.param_names.size()) != c.param_count())
        throw SchemaError("candidate parameter names are out of sync");
}

std::string axes_label(int n) { return SimplicialInfObject::power(n).to_string(); }

} // namespace

std::string approach_to_string(JetApproach a) {
    switch (a) {
        case JetApproach::First: return "FIRST";
        case JetApproach::Second: return "SECOND";
        case JetApproach::Third: return "THIRD";
    }
    throw SchemaError("unknown approach");
}

JetApproach approach_parse(const std::string& text) {
    if (text == "FIRST") return JetApproach::First;
    if (text == "SECOND") return JetApproach::Second;
    if (text == "THIRD") return JetApproach::Third;
    throw ParseError("unknown approach '" + text + "' (expected FIRST, SECOND or THIRD)");
}

AlgebraPtr jet_model_algebra(JetApproach a, int order) {
    if (order < 0) throw SchemaError("jet order must be nonnegative");
    switch (a) {
        case JetApproach::Second: return SimplicialInfObject::power(order).dual_algebra();
        case JetApproach::Third: return SimplicialInfObject::order(order).dual_algebra();
        case JetApproach::First: break;
    }
    throw SchemaError("towers do not have a single model algebra");
}

int JetCandidate::gamma_count() const {
    return bundle.base_dim * (algebra->dim() - 1);
}

int JetCandidate::gamma_param(int coord, int basis_index) const {
    return coord * (algebra->dim() - 1) + (basis_index - 1);
}

bool JetCandidate::operator==(const JetCandidate& other) const {
    return approach == other.approach && order == other.order && bundle == other.bundle &&
           point == other.point && extra_names == other.extra_names && body == other.body;
}

JetCandidate make_candidate(JetApproach a, int order, CoordSpace bundle, std::vector<Rat> point,
                            std::vector<std::string> extra_names) {
    JetCandidate c;
    c.approach = a;
    c.order = order;
    c.bundle = bundle;
    c.point = std::move(point);
    c.algebra = jet_model_algebra(a, order);
    c.extra_names = std::move(extra_names);
    const int m = bundle.base_dim;
    const int e = bundle.fiber_dim;
    if (m < 1 || e < 1) throw SchemaError("candidate bundle needs positive dimensions");
    if (static_cast<int>(c.point.size()) != m + e)
        throw SchemaError("candidate point must list base and fiber values");
    const int dim = c.algebra->dim();
    for (int j = 0; j < m; ++j)
        for (int k = 1; k < dim; ++k)
            c.param_names.push_back("g" + std::to_string(j + 1) + "b" + std::to_string(k));
    c.param_names.insert(c.param_names.end(), c.extra_names.begin(), c.extra_names.end());
    c.body.assign(e, std::vector<Polynomial>(dim - 1, Polynomial(c.param_count())));
    return c;
}

ProlongedPoint generic_input(const JetCandidate& c) {
    const int m = c.bundle.base_dim;
    const int dim = c.algebra->dim();
    ProlongedPoint p = make_point({m, 0}, c.algebra, c.param_count());
    p.param_names = c.param_names;
    for (int j = 0; j < m; ++j) {
        p.components[j][0] = Polynomial::constant(c.param_count(), c.point[j]);
        for (int k = 1; k < dim; ++k)
            p.components[j][k] = Polynomial::variable(c.param_count(), c.gamma_param(j, k));
    }
    return p;
}

ProlongedPoint apply(const JetCandidate& c, const ProlongedPoint& input, int extras_base) {
    const int m = c.bundle.base_dim;
    const int e = c.bundle.fiber_dim;
    const int dim = c.algebra->dim();
    if (!same_algebra(input.algebra, c.algebra))
        throw MismatchError("input is not over the candidate's model algebra");
    if (input.space.dim() != m)
        throw MismatchError("input has the wrong number of coordinates");
    for (const auto& row : input.components)
        if (static_cast<int>(row.size()) != dim)
            throw SchemaError("input point has the wrong coefficient count");
    if (extras_base < 0) extras_base = c.gamma_count();
    if (extras_base + c.extra_count() > input.param_count)
        throw SchemaError("input parameter pool does not contain the candidate extras");
    for (int j = 0; j < m; ++j)
        if (!(input.components[j][0] == Polynomial::constant(input.param_count, c.point[j])))
            throw MismatchError("input is not anchored at the candidate's base point");

    std::vector<Polynomial> images(c.param_count(), Polynomial(input.param_count));
    for (int j = 0; j < m; ++j)
        for (int k = 1; k < dim; ++k) images[c.gamma_param(j, k)] = input.components[j][k];
    for (int t = 0; t < c.extra_count(); ++t)
        images[c.gamma_count() + t] = Polynomial::variable(input.param_count, extras_base + t);

    ProlongedPoint out = make_point({m, e}, c.algebra, input.param_count);
    out.param_names = input.param_names;
    for (int j = 0; j < m; ++j) out.components[j] = input.components[j];
    for (int j = 0; j < e; ++j) {
        out.components[m + j][0] = Polynomial::constant(input.param_count, c.point[m + j]);
        for (int k = 1; k < dim; ++k)
            out.components[m + j][k] = substitute(c.body[j][k - 1], images);
    }
    return out;
}

CheckReport check_second(const JetCandidate& c) {
    validate_candidate(c, JetApproach::Second, kCheckOrderCap);
    const int n = c.order;
    const int m = c.bundle.base_dim;
    const int e = c.bundle.fiber_dim;
    CheckReport report("candidate over " + axes_label(n));

    ProlongedPoint gamma = generic_input(c);
    ProlongedPoint out = apply(c, gamma);
    bool proj = true;
    for (int j = 0; j < m; ++j) proj = proj && out.components[j] == gamma.components[j];
    for (int j = 0; j < e; ++j)
        proj = proj && out.components[m + j][0] == Polynomial::constant(c.param_count(), c.point[m + j]);
    report.add("projection", proj, proj ? "" : "output does not sit over the input");

    const int P = c.param_count();
    const int nil_order = std::max(n, body_gamma_degree(c));
    int observed = 0;
    ProlongedPoint gamma_ext = extend_pool(gamma, P + 1);
    ProlongedPoint out_ext = extend_pool(out, P + 1);
    Polynomial fresh = Polynomial::variable(P + 1, P);
    for (int axis = 1; axis <= n; ++axis) {
        ProlongedPoint lhs = apply(c, scale_axis(fresh, axis, gamma_ext), c.gamma_count());
        ProlongedPoint rhs = scale_axis(fresh, axis, out_ext);
        const std::string suffix = " axis " + std::to_string(axis);
        bool scal = lhs == rhs;
        report.add("scaling" + suffix, scal, scal ? "" : "the two sides differ as polynomials in the scalar");
        observed = std::max({observed, point_max_exponent(lhs, P), point_max_exponent(rhs, P)});
        bool nil = reduce_point_var(lhs, P, nil_order) == reduce_point_var(rhs, P, nil_order);
        report.add("infinitesimal scaling" + suffix, nil,
                   nil ? "" : "the two sides differ modulo the adjoined nilpotent");
    }
    if (n >= 1) {
        bool bound_ok = observed <= nil_order;
        report.add("infinitesimal scaling order", bound_ok,
                   "nilpotent order " + std::to_string(nil_order + 1) + " adjoined; highest power seen " +
                       std::to_string(observed));
    }

    for (int axis = 1; axis < n; ++axis) {
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i + 1;
        std::swap(perm[axis - 1], perm[axis]);
        ProlongedPoint lhs = apply(c, permute_axes(perm, gamma));
        ProlongedPoint rhs = permute_axes(perm, out);
        bool ok = lhs == rhs;
        report.add("transposition (" + std::to_string(axis) + " " + std::to_string(axis + 1) + ")", ok,
                   ok ? "" : "output is not equivariant under the axis swap");
    }
    return report;
}

JetCandidate project_second(const JetCandidate& c) {
    validate_candidate(c, JetApproach::Second, kCheckOrderCap);
    if (c.order < 1) throw SchemaError("cannot project an order-0 candidate");
    const int n = c.order;
    const int m = c.bundle.base_dim;
    const int e = c.bundle.fiber_dim;
    JetCandidate out = make_candidate(JetApproach::Second, n - 1, c.bundle, c.point, c.extra_names);

    // Reading the candidate on inputs inserted along a degenerate last axis
    // amounts to killing every parameter whose monomial uses that axis and
    // renaming the rest into the smaller pool.
    std::vector<Polynomial> images(c.param_count(), Polynomial(out.param_count()));
    const auto& big_basis = c.algebra->basis();
    for (int j = 0; j < m; ++j) {
        for (int k = 1; k < c.algebra->dim(); ++k) {
            const Monomial& nu = big_basis[k];
            if (nu.exponent(n - 1) > 0) continue;
            int small_idx = out.algebra->basis_index(nu);
            images[c.gamma_param(j, k)] =
                Polynomial::variable(out.param_count(), out.gamma_param(j, small_idx));
        }
    }
    for (int t = 0; t < c.extra_count(); ++t)
        images[c.gamma_count() + t] = Polynomial::variable(out.param_count(), out.gamma_count() + t);
    for (int j = 0; j < e; ++j) {
        for (int k = 1; k < out.algebra->dim(); ++k) {
            int big_idx = c.algebra->basis_index(out.algebra->basis()[k]);
            out.body[j][k - 1] = substitute(c.body[j][big_idx - 1], images);
        }
    }

    // A candidate that satisfies the pointwise conditions commutes with every
    // axis insertion and deletion through its projection; verify both
    // families instead of assuming them.
    ProlongedPoint small_gamma = generic_input(out);
    ProlongedPoint small_out = apply(out, small_gamma);
    ProlongedPoint big_gamma = generic_input(c);
    ProlongedPoint big_out = apply(c, big_gamma);
    for (int i = 1; i <= n; ++i) {
        if (!(apply(c, simplicial_s(i, small_gamma), out.gamma_count()) ==
              simplicial_s(i, small_out)))
            throw MismatchError("projection does not commute with inserting axis " + std::to_string(i) +
                                "; the candidate violates the pointwise conditions");
        if (!(apply(out, simplicial_d(i, big_gamma), c.gamma_count()) == simplicial_d(i, big_out)))
            throw MismatchError("projection does not commute with deleting axis " + std::to_string(i) +
                                "; the candidate violates the pointwise conditions");
    }
    return out;
}

JetCandidate project_second_to(const JetCandidate& c, int target_order) {
    if (target_order < 0 || target_order > c.order)
        throw SchemaError("projection target order must lie between 0 and the candidate order");
    JetCandidate out = c;
    while (out.order > target_order) out = project_second(out);
    return out;
}

namespace {

void tangential_second_rec(const JetCandidate& c, CheckReport& report) {
    const int n = c.order;
    if (n <= 1) {
        report.add("order " + std::to_string(n) + ": no further conditions", true);
        return;
    }
    JetCandidate proj = project_second(c);
    // Fusing the last two axes of a lower-order generic input must give the
    // same result whether the candidate or its projection acts first.
    std::vector<Polynomial> images;
    for (int j = 0; j + 2 < n; ++j) images.push_back(Polynomial::variable(n, j));
    images.push_back(Polynomial::term(n, Monomial::var(n - 2) * Monomial::var(n - 1), 1));
    HomPtr fuse = hom_make(proj.algebra, c.algebra, images);
    ProlongedPoint gamma = generic_input(proj);
    ProlongedPoint lhs = apply(c, functor_apply(fuse, gamma), proj.gamma_count());
    ProlongedPoint rhs = functor_apply(fuse, apply(proj, gamma));
    bool ok = lhs == rhs;
    report.add("order " + std::to_string(n) + ": fusion of the last two axes", ok,
               ok ? "" : "acting before and after the fusion disagree");
    tangential_second_rec(proj, report);
}

} // namespace

CheckReport check_second_tangential(const JetCandidate& c) {
    validate_candidate(c, JetApproach::Second, kCheckOrderCap);
    CheckReport report("recursive conditions over " + axes_label(c.order));
    tangential_second_rec(c, report);
    return report;
}

ProlongedPoint induced_map(const JetCandidate& c, const SimplicialInfObject& shape,
                           const ProlongedPoint& gamma, int extras_base) {
    validate_candidate(c, JetApproach::Second, kCheckOrderCap);
    const int m = c.bundle.base_dim;
    const int e = c.bundle.fiber_dim;
    if (shape.dimension() > c.order)
        throw MismatchError("shape dimension exceeds the candidate order");
    AlgebraPtr target_alg = shape.dual_algebra();
    if (!same_algebra(gamma.algebra, target_alg))
        throw MismatchError("input is not over the shape's algebra");
    if (gamma.space.dim() != m) throw MismatchError("input has the wrong number of coordinates");
    const int t_dim = target_alg->dim();
    if (extras_base < 0) extras_base = m * (t_dim - 1);

    QCRepresentation rep = standard_qcr(shape);
    std::vector<HomPtr> duals;
    std::vector<ProlongedPoint> values;
    int rows = 0;
    for (const auto& piece : rep.pieces) {
        HomPtr dual = mapping_hom(piece.injection);
        JetCandidate lowered = project_second_to(c, static_cast<int>(piece.slots.size()));
        values.push_back(apply(lowered, functor_apply(dual, gamma), extras_base));
        rows += dual->target()->dim();
        duals.push_back(std::move(dual));
    }
    RatMatrix stacked(rows, t_dim);
    int r0 = 0;
    for (const auto& dual : duals) {
        const auto& mat = dual->basis_matrix();
        const int pdim = dual->target()->dim();
        for (int r = 0; r < pdim; ++r)
            for (int s = 0; s < t_dim; ++s) stacked.at(r0 + r, s) = mat[r][s];
        r0 += pdim;
    }

    ProlongedPoint out = make_point({m, e}, target_alg, gamma.param_count);
    out.param_names = gamma.param_names;
    for (int coord = 0; coord < m + e; ++coord) {
        std::vector<Polynomial> rhs;
        rhs.reserve(rows);
        for (const auto& v : values)
            for (const auto& poly : v.components[coord]) rhs.push_back(poly);
        std::vector<Polynomial> x;
        if (!solve_poly(stacked, rhs, &x))
            throw MismatchError(
                "piece values are inconsistent; no point over the shape matches all restrictions");
        out.components[coord] = std::move(x);
    }
    return out;
}

JetCandidate compose_jets(const JetCandidate& upper, const JetCandidate& lower) {
    validate_candidate(lower, JetApproach::Second, kCheckOrderCap);
    validate_candidate(upper, JetApproach::Second, kCheckOrderCap);
    if (upper.order != lower.order)
        throw MismatchError("composite candidates must share an order");
    const int m = lower.bundle.base_dim;
    const int e = lower.bundle.fiber_dim;
    const int f = upper.bundle.fiber_dim;
    if (upper.bundle.base_dim != m + e)
        throw MismatchError("upper candidate's base space must be the lower candidate's total space");
    for (int j = 0; j < m + e; ++j)
        if (upper.point[j] != lower.point[j])
            throw MismatchError("candidates are anchored at different points");

    std::vector<Rat> point = lower.point;
    point.insert(point.end(), upper.point.begin() + (m + e), upper.point.end());
    std::vector<std::string> extras = lower.extra_names;
    extras.insert(extras.end(), upper.extra_names.begin(), upper.extra_names.end());
    JetCandidate out =
        make_candidate(JetApproach::Second, lower.order, {m, e + f}, std::move(point), std::move(extras));

    ProlongedPoint gamma = generic_input(out);
    ProlongedPoint through = apply(lower, gamma, out.gamma_count());
    ProlongedPoint top = apply(upper, through, out.gamma_count() + lower.extra_count());
    const int dim = out.algebra->dim();
    for (int j = 0; j < e; ++j)
        for (int k = 1; k < dim; ++k) out.body[j][k - 1] = through.components[m + j][k];
    for (int j = 0; j < f; ++j)
        for (int k = 1; k < dim; ++k) out.body[e + j][k - 1] = top.components[m + e + j][k];

    if (lower.order >= 1 &&
        !(project_second(out) == compose_jets(project_second(upper), project_second(lower))))
        throw MismatchError("projecting the composite disagrees with composing the projections");
    return out;
}

CheckReport check_third(const JetCandidate& c) {
    validate_candidate(c, JetApproach::Third, kCheckOrderCap);
    const int n = c.order;
    const int m = c.bundle.base_dim;
    const int e = c.bundle.fiber_dim;
    CheckReport report("candidate over " + SimplicialInfObject::order(n).to_string());

    ProlongedPoint gamma = generic_input(c);
    ProlongedPoint out = apply(c, gamma);
    bool proj = true;
    for (int j = 0; j < m; ++j) proj = proj && out.components[j] == gamma.components[j];
    for (int j = 0; j < e; ++j)
        proj = proj && out.components[m + j][0] == Polynomial::constant(c.param_count(), c.point[m + j]);
    report.add("projection", proj, proj ? "" : "output does not sit over the input");

    if (n >= 1) {
        const int P = c.param_count();
        const int nil_order = std::max(n, body_gamma_degree(c));
        Polynomial fresh = Polynomial::variable(P + 1, P);
        ProlongedPoint lhs = apply(c, scale_axis(fresh, 1, extend_pool(gamma, P + 1)), c.gamma_count());
        ProlongedPoint rhs = scale_axis(fresh, 1, extend_pool(out, P + 1));
        bool scal = lhs == rhs;
        report.add("reparametrization scaling", scal,
                   scal ? "" : "the two sides differ as polynomials in the scalar");
        int observed = std::max(point_max_exponent(lhs, P), point_max_exponent(rhs, P));
        bool nil = reduce_point_var(lhs, P, nil_order) == reduce_point_var(rhs, P, nil_order);
        report.add("infinitesimal reparametrization", nil,
                   nil ? "" : "the two sides differ modulo the adjoined nilpotent");
        report.add("infinitesimal reparametrization order", observed <= nil_order,
                   "nilpotent order " + std::to_string(nil_order + 1) + " adjoined; highest power seen " +
                       std::to_string(observed));
    }
    return report;
}

JetCandidate project_third(const JetCandidate& c) {
    validate_candidate(c, JetApproach::Third, kCheckOrderCap);
    if (c.order < 1) throw SchemaError("cannot project an order-0 candidate");
    const int n = c.order - 1;
    const int m = c.bundle.base_dim;
    const int e = c.bundle.fiber_dim;
    JetCandidate out = make_candidate(JetApproach::Third, n, c.bundle, c.point, c.extra_names);

    // Feed the candidate the lower-order input spread along a fresh nilpotent
    // of order n: the coefficient at the k-th power picks up the k-th power
    // of the nilpotent, and the result must concentrate on that diagonal.
    const int SP = out.param_count();
    const int pool = SP + 1;
    ProlongedPoint delta = make_point({m, 0}, c.algebra, pool);
    for (int j = 0; j < m; ++j) {
        delta.components[j][0] = Polynomial::constant(pool, c.point[j]);
        for (int k = 1; k <= n; ++k)
            delta.components[j][k] = Polynomial::term(pool, Monomial::var(SP, k), 1) *
                                     Polynomial::variable(pool, out.gamma_param(j, k));
    }
    ProlongedPoint res = apply(c, delta, out.gamma_count());
    for (int j = 0; j < e; ++j) {
        Polynomial top = reduce_var_power(res.components[m + j][c.algebra->dim() - 1], SP, n);
        if (!top.is_zero())
            throw MismatchError("top coefficient survives the nilpotent truncation; "
                                "the candidate does not project");
        for (int k = 1; k <= n; ++k) {
            Polynomial val = reduce_var_power(res.components[m + j][k], SP, n);
            for (const auto& [mono, coef] : val.terms())
                if (mono.exponent(SP) != k)
                    throw MismatchError("off-diagonal residue at power " + std::to_string(k) +
                                        "; the candidate does not project");
            out.body[j][k - 1] = select_var_part(val, SP, k, SP);
        }
    }
    return out;
}

JetCandidate project_third_to(const JetCandidate& c, int target_order) {
    if (target_order < 0 || target_order > c.order)
        throw SchemaError("projection target order must lie between 0 and the candidate order");
    JetCandidate out = c;
    while (out.order > target_order) out = project_third(out);
    return out;
}

namespace {

std::string simple_poly_text(const std::set<int>& exps) {
    std::string text;
    for (int e : exps) {
        if (!text.empty()) text += "+";
        text += e == 1 ? "d" : "d^" + std::to_string(e);
    }
    return text;
}

void tangential_third_rec(const JetCandidate& c, CheckReport& report) {
    const int n = c.order;
    if (n <= 1) {
        report.add("order " + std::to_string(n) + ": no further conditions", true);
        return;
    }
    // Every simple reparametrization factors through the projection to the
    // reparametrization's own dimension.
    for (int mask = 1; mask < (1 << n); ++mask) {
        std::set<int> exps;
        for (int bit = 0; bit < n; ++bit)
            if (mask & (1 << bit)) exps.insert(bit + 1);
        SimplePolynomial rho{n, exps};
        const int l = simple_poly_dim(rho);
        HomPtr hom = simple_poly_hom(rho);
        JetCandidate lowered = project_third_to(c, l);
        ProlongedPoint gamma = generic_input(lowered);
        ProlongedPoint lhs = apply(c, functor_apply(hom, gamma), lowered.gamma_count());
        ProlongedPoint rhs = functor_apply(hom, apply(lowered, gamma));
        bool ok = lhs == rhs;
        report.add("order " + std::to_string(n) + ": reparametrization " + simple_poly_text(exps), ok,
                   ok ? "" : "acting before and after the reparametrization disagree");
    }
    tangential_third_rec(project_third(c), report);
}

} // namespace

CheckReport check_third_tangential(const JetCandidate& c) {
    validate_candidate(c, JetApproach::Third, kCheckOrderCap);
    CheckReport report("recursive conditions over " + SimplicialInfObject::order(c.order).to_string());
    tangential_third_rec(c, report);
    return report;
}

// ---------------------------------------------------------------------------
// First approach.

int stacked_fiber_dim(const CoordSpace& bundle, int level) {
    int dim = bundle.fiber_dim;
    for (int l = 0; l < level; ++l) dim *= 1 + bundle.base_dim;
    return dim;
}

namespace {

constexpr int kTowerDepthCap = 3;

void validate_tower(const FirstApproachTower& T) {
    if (T.depth < 0) throw SchemaError("tower depth must be nonnegative");
    if (T.depth > kTowerDepthCap)
        throw CapExceeded("tower depth " + std::to_string(T.depth) + " exceeds the supported bound " +
                          std::to_string(kTowerDepthCap));
    const int m = T.bundle.base_dim;
    const int e = T.bundle.fiber_dim;
    if (m < 1 || e < 1) throw SchemaError("tower bundle needs positive dimensions");
    if (static_cast<int>(T.point.size()) != m + e)
        throw SchemaError("tower point must list base and fiber values");
    for (const auto& poly : T.point)
        if (poly.var_count() != T.param_count)
            throw SchemaError("tower point entry is over the wrong parameter pool");
    if (static_cast<int>(T.levels.size()) != T.depth)
        throw SchemaError("tower must carry one matrix per level");
    for (int l = 1; l <= T.depth; ++l) {
        const auto& L = T.levels[l - 1];
        if (static_cast<int>(L.size()) != stacked_fiber_dim(T.bundle, l - 1))
            throw SchemaError("level " + std::to_string(l) + " matrix has the wrong number of rows");
        for (const auto& row : L) {
            if (static_cast<int>(row.size()) != m)
                throw SchemaError("level " + std::to_string(l) + " matrix has the wrong number of columns");
            for (const auto& entry : row)
                if (entry.var_count() != T.param_count)
                    throw SchemaError("level " + std::to_string(l) +
                                      " entry is over the wrong parameter pool");
        }
    }
    if (static_cast<int>(T.param_names.size()) != T.param_count)
        throw SchemaError("tower parameter names are out of sync");
}

} // namespace

bool FirstApproachTower::operator==(const FirstApproachTower& other) const {
    return depth == other.depth && bundle == other.bundle && point == other.point &&
           param_count == other.param_count && levels == other.levels;
}

FirstApproachTower make_tower(int depth, CoordSpace bundle, std::vector<Polynomial> point,
                              std::vector<std::string> param_names) {
    FirstApproachTower T;
    T.depth = depth;
    T.bundle = bundle;
    T.point = std::move(point);
    T.param_count = static_cast<int>(param_names.size());
    T.param_names = std::move(param_names);
    for (int l = 1; l <= depth; ++l)
        T.levels.emplace_back(stacked_fiber_dim(bundle, l - 1),
                              std::vector<Polynomial>(bundle.base_dim, Polynomial(T.param_count)));
    validate_tower(T);
    return T;
}

FirstApproachTower truncate_tower(const FirstApproachTower& T) {
    if (T.depth < 1) throw SchemaError("cannot truncate a depth-0 tower");
    FirstApproachTower out = T;
    out.depth -= 1;
    out.levels.pop_back();
    return out;
}

std::string tower_class_to_string(TowerClass c) {
    switch (c) {
        case TowerClass::NonHolonomic: return "non-holonomic";
        case TowerClass::SemiHolonomic: return "semi-holonomic";
        case TowerClass::Holonomic: return "holonomic";
    }
    throw SchemaError("unknown tower class");
}

FirstCheckResult check_first(const FirstApproachTower& T) {
    validate_tower(T);
    const int m = T.bundle.base_dim;
    const int P = T.param_count;
    FirstCheckResult result;
    result.report = CheckReport("tower of depth " + std::to_string(T.depth));
    CheckReport& report = result.report;

    // Symbolic base tangent plus one scalar and one nilpotent parameter.
    const int PE = P + m + 2;
    std::vector<Polynomial> that(m);
    for (int i = 0; i < m; ++i) that[i] = Polynomial::variable(PE, P + i);
    Polynomial alpha = Polynomial::variable(PE, P + m);
    Polynomial eta = Polynomial::variable(PE, P + m + 1);

    std::vector<std::vector<Polynomial>> moved(T.depth);
    for (int l = 1; l <= T.depth; ++l) {
        const auto& L = T.levels[l - 1];
        const int rows = static_cast<int>(L.size());
        std::vector<Polynomial> w(rows, Polynomial(PE)), w_alpha(rows, Polynomial(PE)),
            w_eta(rows, Polynomial(PE));
        for (int r = 0; r < rows; ++r) {
            for (int i = 0; i < m; ++i) {
                Polynomial entry = L[r][i].with_vars(PE);
                w[r] = w[r] + entry * that[i];
                w_alpha[r] = w_alpha[r] + entry * (alpha * that[i]);
                w_eta[r] = w_eta[r] + entry * (eta * that[i]);
            }
        }
        const std::string prefix = "level " + std::to_string(l) + " ";
        report.add(prefix + "projection", true, "base block is the input tangent");
        bool scal = true, nil = true;
        for (int r = 0; r < rows; ++r) {
            scal = scal && w_alpha[r] == alpha * w[r];
            nil = nil && reduce_var_power(w_eta[r], P + m + 1, 1) ==
                             reduce_var_power(eta * w[r], P + m + 1, 1);
        }
        report.add(prefix + "scaling", scal, scal ? "" : "the moved tangent does not scale linearly");
        report.add(prefix + "infinitesimal scaling", nil,
                   nil ? "" : "the moved tangent does not scale linearly over the nilpotent");
        moved[l - 1] = std::move(w);
    }

    bool related_all = true;
    bool exchange_all = true;
    for (int l = 2; l <= T.depth; ++l) {
        const int low = stacked_fiber_dim(T.bundle, l - 2);
        bool related = true;
        for (int r = 0; r < low; ++r) related = related && moved[l - 1][r] == moved[l - 2][r];
        report.add("level " + std::to_string(l) + " relatedness", related,
                   related ? "" : "the level does not restrict to the one below it");
        related_all = related_all && related;

        // Exchange of the two partial evaluations: follow the top level along
        // the first tangent block and the lower level along the second, then
        // the other way around; the two second-order points must agree.
        const int PG = P + 3 * m;
        std::vector<Polynomial> g1(m), g2(m), g12(m);
        for (int i = 0; i < m; ++i) {
            g1[i] = Polynomial::variable(PG, P + i);
            g2[i] = Polynomial::variable(PG, P + m + i);
            g12[i] = Polynomial::variable(PG, P + 2 * m + i);
        }
        auto mat_vec = [&](const std::vector<std::vector<Polynomial>>& L, int rows,
                           const std::vector<Polynomial>& v) {
            std::vector<Polynomial> out(rows, Polynomial(PG));
            for (int r = 0; r < rows; ++r)
                for (int i = 0; i < m; ++i) out[r] = out[r] + L[r][i].with_vars(PG) * v[i];
            return out;
        };
        const int rows_top = stacked_fiber_dim(T.bundle, l - 1);
        std::vector<Polynomial> wA = mat_vec(T.levels[l - 1], rows_top, g1);
        std::vector<Polynomial> wB = mat_vec(T.levels[l - 1], rows_top, g2);
        std::vector<Polynomial> low_g1 = mat_vec(T.levels[l - 2], low, g1);
        std::vector<Polynomial> low_g2 = mat_vec(T.levels[l - 2], low, g2);
        std::vector<Polynomial> low_g12 = mat_vec(T.levels[l - 2], low, g12);
        bool exchange = true;
        for (int r = 0; r < low && exchange; ++r) {
            exchange = exchange && low_g2[r] == wB[r] && wA[r] == low_g1[r];
            Polynomial mixedA = low_g12[r];
            Polynomial mixedB = low_g12[r];
            for (int i = 0; i < m; ++i) {
                mixedA = mixedA + wA[low + r * m + i] * g2[i];
                mixedB = mixedB + wB[low + r * m + i] * g1[i];
            }
            exchange = exchange && mixedA == mixedB;
        }
        report.add("level " + std::to_string(l) + " exchange", exchange,
                   exchange ? "" : "the two partial evaluation orders disagree");
        exchange_all = exchange_all && exchange;
    }

    if (!related_all)
        result.classification = TowerClass::NonHolonomic;
    else if (!exchange_all)
        result.classification = TowerClass::SemiHolonomic;
    else
        result.classification = TowerClass::Holonomic;
    return result;
}

// ---------------------------------------------------------------------------
// Tower evaluation and the two conversion maps.

namespace {

// Fiber coefficients of the tower acting on gamma (coordinates x basis
// coefficients, both over `pool`). Peels the last axis off: the top level
// moves the whole stack along the tangent in that direction, which the
// recursion sees as a first-order perturbation of the truncated tower by a
// fresh nilpotent; afterwards the nilpotent parts are folded back into the
// coefficients that carry the last axis.
std::vector<std::vector<Polynomial>> phi_fibers(
    const CoordSpace& bundle, int depth, const std::vector<Polynomial>& point,
    const std::vector<std::vector<std::vector<Polynomial>>>& levels,
    const std::vector<std::vector<Polynomial>>& gamma, int pool) {
    const int m = bundle.base_dim;
    const int e = bundle.fiber_dim;
    if (depth == 0) {
        std::vector<std::vector<Polynomial>> out(e);
        for (int j = 0; j < e; ++j) out[j] = {point[m + j]};
        return out;
    }
    AlgebraPtr big = SimplicialInfObject::power(depth).dual_algebra();
    AlgebraPtr small = SimplicialInfObject::power(depth - 1).dual_algebra();
    const int bdim = big->dim();
    const int sdim = small->dim();
    const int pool2 = pool + 1;
    Polynomial eta = Polynomial::variable(pool2, pool);

    std::vector<Polynomial> that(m);
    for (int j = 0; j < m; ++j)
        that[j] = gamma[j][big->basis_index(Monomial::var(depth - 1))].with_vars(pool2);

    const int rows = stacked_fiber_dim(bundle, depth - 1);
    std::vector<Polynomial> w(rows, Polynomial(pool2));
    for (int r = 0; r < rows; ++r)
        for (int i = 0; i < m; ++i)
            w[r] = w[r] + levels[depth - 1][r][i].with_vars(pool2) * that[i];

    std::vector<Polynomial> point2(m + e);
    for (int j = 0; j < m; ++j) point2[j] = point[j].with_vars(pool2) + eta * that[j];
    for (int j = 0; j < e; ++j) point2[m + j] = point[m + j].with_vars(pool2) + eta * w[j];
    std::vector<std::vector<std::vector<Polynomial>>> levels2(depth - 1);
    int offset = e;
    for (int l = 1; l < depth; ++l) {
        const int rl = stacked_fiber_dim(bundle, l - 1);
        levels2[l - 1].assign(rl, std::vector<Polynomial>(m, Polynomial(pool2)));
        for (int r = 0; r < rl; ++r)
            for (int i = 0; i < m; ++i)
                levels2[l - 1][r][i] =
                    levels[l - 1][r][i].with_vars(pool2) + eta * w[offset + r * m + i];
        offset += rl * m;
    }

    std::vector<std::vector<Polynomial>> gamma2(m, std::vector<Polynomial>(sdim));
    for (int j = 0; j < m; ++j) {
        for (int k = 0; k < sdim; ++k) {
            const Monomial& mono = small->basis()[k];
            int base_idx = big->basis_index(mono);
            int up_idx = big->basis_index(mono * Monomial::var(depth - 1));
            gamma2[j][k] =
                gamma[j][base_idx].with_vars(pool2) + eta * gamma[j][up_idx].with_vars(pool2);
        }
    }

    auto rec = phi_fibers(bundle, depth - 1, point2, levels2, gamma2, pool2);

    std::vector<std::vector<Polynomial>> out(e, std::vector<Polynomial>(bdim, Polynomial(pool)));
    for (int j = 0; j < e; ++j) {
        for (int k = 0; k < bdim; ++k) {
            const Monomial& mono = big->basis()[k];
            if (mono.exponent(depth - 1) == 0) {
                out[j][k] = select_var_part(rec[j][small->basis_index(mono)], pool, 0, pool);
            } else {
                Monomial lowmono;
                for (const auto& [v, exp] : mono.exponents())
                    if (v != depth - 1) lowmono = lowmono * Monomial::var(v, exp);
                out[j][k] = select_var_part(rec[j][small->basis_index(lowmono)], pool, 1, pool);
            }
        }
    }
    return out;
}

} // namespace

ProlongedPoint phi_apply(const FirstApproachTower& T, const ProlongedPoint& gamma,
                         int tower_params_base) {
    validate_tower(T);
    const int m = T.bundle.base_dim;
    const int e = T.bundle.fiber_dim;
    AlgebraPtr big = SimplicialInfObject::power(T.depth).dual_algebra();
    if (!same_algebra(gamma.algebra, big))
        throw MismatchError("input is not over the matching power algebra");
    if (gamma.space.dim() != m) throw MismatchError("input has the wrong number of coordinates");
    if (tower_params_base < 0 || tower_params_base + T.param_count > gamma.param_count)
        throw SchemaError("input parameter pool does not contain the tower parameters");

    std::vector<Polynomial> point(m + e);
    for (int j = 0; j < m + e; ++j)
        point[j] = shift_vars(T.point[j], tower_params_base, gamma.param_count);
    std::vector<std::vector<std::vector<Polynomial>>> levels(T.depth);
    for (int l = 0; l < T.depth; ++l) {
        levels[l].resize(T.levels[l].size());
        for (size_t r = 0; r < T.levels[l].size(); ++r)
            for (const auto& entry : T.levels[l][r])
                levels[l][r].push_back(shift_vars(entry, tower_params_base, gamma.param_count));
    }
    for (int j = 0; j < m; ++j)
        if (!(gamma.components[j][0] == point[j]))
            throw MismatchError("input is not anchored at the tower's point");

    auto fib = phi_fibers(T.bundle, T.depth, point, levels, gamma.components, gamma.param_count);
    ProlongedPoint out = make_point({m, e}, big, gamma.param_count);
    out.param_names = gamma.param_names;
    for (int j = 0; j < m; ++j) out.components[j] = gamma.components[j];
    for (int j = 0; j < e; ++j) out.components[m + j] = std::move(fib[j]);
    return out;
}

JetCandidate phi_raw(const FirstApproachTower& T) {
    validate_tower(T);
    const int m = T.bundle.base_dim;
    const int e = T.bundle.fiber_dim;
    std::vector<Rat> pt(m + e);
    for (int j = 0; j < m + e; ++j) {
        if (!T.point[j].is_constant())
            throw SchemaError("tower point must be rational to form a candidate");
        pt[j] = T.point[j].constant_term();
    }
    JetCandidate c = make_candidate(JetApproach::Second, T.depth, T.bundle, std::move(pt),
                                    T.param_names);
    ProlongedPoint out = phi_apply(T, generic_input(c), c.gamma_count());
    const int dim = c.algebra->dim();
    for (int j = 0; j < e; ++j)
        for (int k = 1; k < dim; ++k) c.body[j][k - 1] = out.components[m + j][k];
    return c;
}

TransmogrifyResult phi(const FirstApproachTower& T) {
    FirstCheckResult fc = check_first(T);
    if (fc.classification != TowerClass::Holonomic)
        throw MismatchError("tower is not holonomic (" + tower_class_to_string(fc.classification) +
                            "); its evaluation is not a valid candidate");
    TransmogrifyResult res{phi_raw(T), CheckReport("tower image")};
    res.report.merge(check_second(res.candidate));
    res.report.merge(check_second_tangential(res.candidate));
    if (T.depth >= 1) {
        bool square = project_second(res.candidate) == phi_raw(truncate_tower(T));
        res.report.add("projection square", square,
                       square ? "" : "projecting the image disagrees with truncating the tower");
    }
    return res;
}

JetCandidate psi_raw(const JetCandidate& c) {
    validate_candidate(c, JetApproach::Second, kMapOrderCap);
    const int n = c.order;
    const int m = c.bundle.base_dim;
    const int e = c.bundle.fiber_dim;
    JetCandidate out = make_candidate(JetApproach::Third, n, c.bundle, c.point, c.extra_names);
    if (n <= 1) {
        out.body = c.body;
        return out;
    }
    ProlongedPoint gamma = generic_input(out);
    ProlongedPoint spread = plus_precompose(gamma, SimplicialInfObject::power(n));
    ProlongedPoint val = apply(c, spread, out.gamma_count());
    const auto& basis = c.algebra->basis();
    for (int j = 0; j < e; ++j) {
        std::vector<int> first(n + 1, -1);
        for (int k = 1; k < c.algebra->dim(); ++k) {
            const int size = basis[k].degree();
            if (first[size] < 0)
                first[size] = k;
            else if (!(val.components[m + j][k] == val.components[m + j][first[size]]))
                throw MismatchError("coefficients at equal-size axis sets disagree; "
                                    "the candidate is not exchange-invariant");
        }
        for (int s = 1; s <= n; ++s)
            out.body[j][s - 1] = val.components[m + j][first[s]] * (Rat(1) / factorial(s));
    }
    return out;
}

TransmogrifyResult psi(const JetCandidate& c) {
    TransmogrifyResult res{psi_raw(c), CheckReport("second-to-third image")};
    res.report.merge(check_third(res.candidate));
    if (c.order >= 1) {
        bool square = project_third(res.candidate) == psi_raw(project_second(c));
        res.report.add("projection square", square,
                       square ? "" : "projection and conversion do not commute");
    }
    res.report.merge(check_third_tangential(res.candidate));
    return res;
}

// ---------------------------------------------------------------------------
// Jets of sections.

SectionJet make_section_jet(CoordSpace bundle, int order, std::vector<Rat> base_point,
                            std::vector<Polynomial> expansions,
                            std::vector<std::string> extra_names) {
    const int m = bundle.base_dim;
    const int e = bundle.fiber_dim;
    if (m < 1 || e < 1) throw SchemaError("section bundle needs positive dimensions");
    if (order < 0) throw SchemaError("section order must be nonnegative");
    if (static_cast<int>(base_point.size()) != m)
        throw SchemaError("section base point has the wrong size");
    if (static_cast<int>(expansions.size()) != e)
        throw SchemaError("sections need one expansion per fiber coordinate");
    const int pool = m + static_cast<int>(extra_names.size());
    for (const auto& p : expansions) {
        if (p.var_count() != pool) throw SchemaError("expansion is over the wrong parameter pool");
        for (const auto& [mono, coef] : p.terms()) {
            const int udeg = degree_below(mono, m);
            if (udeg > order) throw SchemaError("expansion carries terms above the order");
            if (udeg == 0 && !mono.is_unit())
                throw SchemaError("the displacement-free part of an expansion must be a rational constant");
        }
    }
    return SectionJet{bundle, order, std::move(base_point), std::move(expansions),
                      std::move(extra_names)};
}

JetCandidate from_section_jet(const SectionJet& s, JetApproach a, int target_order) {
    if (a == JetApproach::First)
        throw SchemaError("first-approach jets of sections are towers; use tower_from_section_jet");
    if (target_order >= 0 && target_order != s.order)
        throw MismatchError("requested order does not match the section expansion order");
    const int m = s.bundle.base_dim;
    const int e = s.bundle.fiber_dim;
    std::vector<Rat> pt(m + e);
    for (int j = 0; j < m; ++j) pt[j] = s.base_point[j];
    for (int j = 0; j < e; ++j) pt[m + j] = s.expansions[j].constant_term();
    JetCandidate c = make_candidate(a, s.order, s.bundle, std::move(pt), s.extra_names);
    const int dim = c.algebra->dim();
    const int P = c.param_count();

    // The displacement of input coordinate i is its non-unit part.
    std::vector<std::vector<Polynomial>> disp(m, std::vector<Polynomial>(dim, Polynomial(P)));
    for (int i = 0; i < m; ++i)
        for (int k = 1; k < dim; ++k) disp[i][k] = Polynomial::variable(P, c.gamma_param(i, k));

    for (int j = 0; j < e; ++j) {
        std::vector<Polynomial> acc(dim, Polynomial(P));
        for (const auto& [mono, coef] : s.expansions[j].terms()) {
            Monomial extra_part;
            std::vector<int> upow(m, 0);
            for (const auto& [v, exp] : mono.exponents()) {
                if (v < m)
                    upow[v] = exp;
                else
                    extra_part = extra_part * Monomial::var(c.gamma_count() + (v - m), exp);
            }
            std::vector<Polynomial> term(dim, Polynomial(P));
            term[0] = Polynomial::term(P, extra_part, coef);
            for (int i = 0; i < m; ++i)
                for (int rep = 0; rep < upow[i]; ++rep) term = elem_vec_mul(*c.algebra, term, disp[i]);
            for (int k = 0; k < dim; ++k) acc[k] = acc[k] + term[k];
        }
        if (!(acc[0] == Polynomial::constant(P, c.point[m + j])))
            throw MismatchError("expansion unit coefficient drifted away from the fiber value");
        for (int k = 1; k < dim; ++k) c.body[j][k - 1] = acc[k];
    }
    return c;
}

namespace {

// Evaluate at zero displacement: keep only displacement-free terms and
// renumber the extras down into their own pool.
Polynomial at_zero_displacement(const Polynomial& p, int m, int extras) {
    Polynomial out(extras);
    for (const auto& [mono, coef] : p.terms()) {
        if (degree_below(mono, m) > 0) continue;
        Monomial shifted;
        for (const auto& [v, exp] : mono.exponents()) shifted = shifted * Monomial::var(v - m, exp);
        out.add_term(shifted, coef);
    }
    return out;
}

} // namespace

FirstApproachTower tower_from_section_jet(const SectionJet& s, int depth) {
    if (depth >= 0 && depth != s.order)
        throw MismatchError("requested depth does not match the section expansion order");
    const int m = s.bundle.base_dim;
    const int e = s.bundle.fiber_dim;
    const int extras = static_cast<int>(s.extra_names.size());
    std::vector<Polynomial> point(m + e);
    for (int j = 0; j < m; ++j) point[j] = Polynomial::constant(extras, s.base_point[j]);
    for (int j = 0; j < e; ++j)
        point[m + j] = Polynomial::constant(extras, s.expansions[j].constant_term());
    FirstApproachTower T = make_tower(s.order, s.bundle, std::move(point), s.extra_names);

    std::vector<Polynomial> stack = s.expansions;
    for (int l = 1; l <= s.order; ++l) {
        const int rows = static_cast<int>(stack.size());
        std::vector<Polynomial> next = stack;
        for (int r = 0; r < rows; ++r) {
            for (int i = 0; i < m; ++i) {
                Polynomial d = stack[r].derivative(i);
                T.levels[l - 1][r][i] = at_zero_displacement(d, m, extras);
                next.push_back(std::move(d));
            }
        }
        stack = std::move(next);
    }
    return T;
}

// ---------------------------------------------------------------------------
// Serialization.

nlohmann::json candidate_to_json(const JetCandidate& c) {
    nlohmann::json body = nlohmann::json::array();
    const auto& basis = c.algebra->basis();
    for (const auto& row : c.body) {
        nlohmann::json entry = nlohmann::json::object();
        for (size_t k = 0; k < row.size(); ++k)
            if (!row[k].is_zero())
                entry[monomial_to_string(basis[k + 1])] = poly_to_string(row[k], c.param_names);
        body.push_back(std::move(entry));
    }
    nlohmann::json point = nlohmann::json::array();
    for (const auto& v : c.point) point.push_back(rat_to_string(v));
    return {{"approach", approach_to_string(c.approach)},
            {"order", c.order},
            {"bundle", {{"base", c.bundle.base_dim}, {"fiber", c.bundle.fiber_dim}}},
            {"point", point},
            {"extras", c.extra_names},
            {"body", body}};
}

JetCandidate candidate_from_json(const nlohmann::json& j) {
    try {
        JetApproach a = approach_parse(j.at("approach").get<std::string>());
        if (a == JetApproach::First)
            throw SchemaError("FIRST-approach data is a tower; read it with the tower format");
        const int order = j.at("order").get<int>();
        if (order < 0) throw SchemaError("candidate order must be nonnegative");
        if (order > kCheckOrderCap)
            throw CapExceeded("candidate order " + std::to_string(order) +
                              " exceeds the supported bound " + std::to_string(kCheckOrderCap));
        CoordSpace bundle{j.at("bundle").at("base").get<int>(), j.at("bundle").at("fiber").get<int>()};
        std::vector<Rat> point;
        for (const auto& v : j.at("point")) point.push_back(rat_parse(v.get<std::string>()));
        std::vector<std::string> extras;
        for (const auto& v : j.at("extras")) extras.push_back(v.get<std::string>());
        JetCandidate c = make_candidate(a, order, bundle, std::move(point), std::move(extras));
        const auto& body = j.at("body");
        if (!body.is_array() || static_cast<int>(body.size()) != bundle.fiber_dim)
            throw SchemaError("candidate body must list one object per fiber coordinate");
        for (int r = 0; r < bundle.fiber_dim; ++r) {
            if (!body[r].is_object()) throw SchemaError("candidate body rows must be objects");
            for (const auto& [key, value] : body[r].items()) {
                Monomial mono = monomial_parse(key, c.algebra->var_count());
                int idx = c.algebra->basis_index(mono);
                if (idx < 1)
                    throw SchemaError("body key '" + key + "' is not a non-unit basis monomial");
                c.body[r][idx - 1] = poly_parse(value.get<std::string>(), c.param_names);
            }
        }
        return c;
    } catch (const nlohmann::json::exception& ex) {
        throw SchemaError(std::string("invalid candidate JSON: ") + ex.what());
    }
}

nlohmann::json tower_to_json(const FirstApproachTower& T) {
    nlohmann::json point = nlohmann::json::array();
    for (const auto& p : T.point) point.push_back(poly_to_string(p, T.param_names));
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& L : T.levels) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : L) {
            nlohmann::json cols = nlohmann::json::array();
            for (const auto& entry : row) cols.push_back(poly_to_string(entry, T.param_names));
            rows.push_back(std::move(cols));
        }
        levels.push_back(std::move(rows));
    }
    return {{"approach", "FIRST"},
            {"depth", T.depth},
            {"bundle", {{"base", T.bundle.base_dim}, {"fiber", T.bundle.fiber_dim}}},
            {"point", point},
            {"params", T.param_names},
            {"levels", levels}};
}

FirstApproachTower tower_from_json(const nlohmann::json& j) {
    try {
        if (j.at("approach").get<std::string>() != "FIRST")
            throw SchemaError("tower data must use the FIRST approach");
        const int depth = j.at("depth").get<int>();
        CoordSpace bundle{j.at("bundle").at("base").get<int>(), j.at("bundle").at("fiber").get<int>()};
        std::vector<std::string> params;
        for (const auto& v : j.at("params")) params.push_back(v.get<std::string>());
        std::vector<Polynomial> point;
        for (const auto& v : j.at("point")) point.push_back(poly_parse(v.get<std::string>(), params));
        FirstApproachTower T = make_tower(depth, bundle, std::move(point), std::move(params));
        const auto& levels = j.at("levels");
        if (!levels.is_array() || static_cast<int>(levels.size()) != depth)
            throw SchemaError("tower must carry one matrix per level");
        for (int l = 0; l < depth; ++l) {
            const auto& rows = levels[l];
            if (!rows.is_array() || rows.size() != T.levels[l].size())
                throw SchemaError("level " + std::to_string(l + 1) + " matrix has the wrong shape");
            for (size_t r = 0; r < rows.size(); ++r) {
                const auto& cols = rows[r];
                if (!cols.is_array() || cols.size() != T.levels[l][r].size())
                    throw SchemaError("level " + std::to_string(l + 1) + " matrix has the wrong shape");
                for (size_t i = 0; i < cols.size(); ++i)
                    T.levels[l][r][i] = poly_parse(cols[i].get<std::string>(), T.param_names);
            }
        }
        return T;
    } catch (const nlohmann::json::exception& ex) {
        throw SchemaError(std::string("invalid tower JSON: ") + ex.what());
    }
}

} // namespace weiljet
