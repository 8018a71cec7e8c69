#include "weiljet/prolong.hpp"

namespace weiljet {

ProlongedPoint make_point(CoordSpace space, AlgebraPtr algebra, int param_count) {
    ProlongedPoint p;
    p.space = space;
    p.algebra = std::move(algebra);
    p.param_count = param_count;
    p.components.assign(space.dim(), std::vector<Polynomial>(p.algebra->dim(), Polynomial(param_count)));
    return p;
}

ProlongedPoint extend_pool(const ProlongedPoint& p, int new_param_count) {
    if (new_param_count < p.param_count) throw SchemaError("cannot shrink parameter pool");
    ProlongedPoint q = p;
    q.param_count = new_param_count;
    for (auto& coord : q.components) {
        for (auto& coeff : coord) coeff = coeff.with_vars(new_param_count);
    }
    return q;
}

ProlongedPoint functor_apply(const WeilHom& h, const ProlongedPoint& p) {
    if (!same_algebra(p.algebra, h.source())) throw MismatchError("point not over the homomorphism source");
    ProlongedPoint q;
    q.space = p.space;
    q.algebra = h.target();
    q.param_count = p.param_count;
    q.param_names = p.param_names;
    const auto& mat = h.basis_matrix(); // [target dim][source dim]
    int tdim = h.target()->dim();
    int sdim = h.source()->dim();
    q.components.assign(p.space.dim(), std::vector<Polynomial>(tdim, Polynomial(p.param_count)));
    for (int coord = 0; coord < p.space.dim(); ++coord) {
        for (int t = 0; t < tdim; ++t) {
            Polynomial acc(p.param_count);
            for (int s = 0; s < sdim; ++s) {
                if (mat[t][s] != 0) acc = poly_add(acc, p.components[coord][s] * mat[t][s]);
            }
            q.components[coord][t] = std::move(acc);
        }
    }
    return q;
}

namespace {

void require_axis(int axis, const ProlongedPoint& p) {
    if (axis < 1 || axis > p.algebra->var_count()) throw SchemaError("axis out of range");
}

} // namespace

ProlongedPoint scale_axis(const Rat& alpha, int axis, const ProlongedPoint& p) {
    require_axis(axis, p);
    ProlongedPoint q = p;
    for (auto& coord : q.components) {
        for (int b = 0; b < p.algebra->dim(); ++b) {
            int e = p.algebra->basis()[b].exponent(axis - 1);
            if (e == 0) continue;
            Rat factor(1);
            for (int i = 0; i < e; ++i) factor *= alpha;
            coord[b] = coord[b] * factor;
        }
    }
    return q;
}

ProlongedPoint scale_axis(const Polynomial& alpha, int axis, const ProlongedPoint& p) {
    require_axis(axis, p);
    if (alpha.var_count() != p.param_count) throw SchemaError("scalar over wrong parameter pool");
    ProlongedPoint q = p;
    for (auto& coord : q.components) {
        for (int b = 0; b < p.algebra->dim(); ++b) {
            int e = p.algebra->basis()[b].exponent(axis - 1);
            for (int i = 0; i < e; ++i) coord[b] = poly_mul(coord[b], alpha);
        }
    }
    return q;
}

namespace {

AlgebraPtr power_algebra(int n) { return SimplicialInfObject::power(n).dual_algebra(); }

// Dual of the coordinate map that omits slot i: X_j -> X_j (j < i),
// X_j -> X_{j+1} (j >= i), from n variables into n+1.
HomPtr s_hom(int i, int n) {
    std::vector<Polynomial> images;
    for (int j = 1; j <= n; ++j) {
        images.push_back(Polynomial::variable(n + 1, (j < i ? j : j + 1) - 1));
    }
    return hom_make(power_algebra(n), power_algebra(n + 1), std::move(images));
}

// Dual of the coordinate map that inserts 0 at slot i: X_i -> 0 and the
// later variables shift down, from n+1 variables into n.
HomPtr d_hom(int i, int n) {
    std::vector<Polynomial> images;
    for (int j = 1; j <= n + 1; ++j) {
        if (j == i) {
            images.push_back(Polynomial(n));
        } else {
            images.push_back(Polynomial::variable(n, (j < i ? j : j - 1) - 1));
        }
    }
    return hom_make(power_algebra(n + 1), power_algebra(n), std::move(images));
}

} // namespace

ProlongedPoint simplicial_s(int i, const ProlongedPoint& p) {
    int n = p.algebra->var_count();
    if (i < 1 || i > n + 1) throw SchemaError("insertion slot out of range");
    if (!same_algebra(p.algebra, power_algebra(n))) {
        throw MismatchError("simplicial map needs a square-free power algebra");
    }
    return functor_apply(s_hom(i, n), p);
}

ProlongedPoint simplicial_d(int i, const ProlongedPoint& p) {
    int n = p.algebra->var_count() - 1;
    if (i < 1 || i > n + 1) throw SchemaError("deletion slot out of range");
    if (!same_algebra(p.algebra, power_algebra(n + 1))) {
        throw MismatchError("simplicial map needs a square-free power algebra");
    }
    return functor_apply(d_hom(i, n), p);
}

ProlongedPoint permute_axes(const std::vector<int>& perm, const ProlongedPoint& p) {
    int n = p.algebra->var_count();
    if (static_cast<int>(perm.size()) != n) throw SchemaError("permutation has wrong length");
    std::vector<bool> seen(n, false);
    std::vector<Polynomial> images(n, Polynomial(n));
    for (int j = 0; j < n; ++j) {
        int t = perm[j];
        if (t < 1 || t > n || seen[t - 1]) throw SchemaError("not a permutation");
        seen[t - 1] = true;
        images[j] = Polynomial::variable(n, t - 1);
    }
    return functor_apply(hom_make(p.algebra, p.algebra, std::move(images)), p);
}

bool is_degenerate(const ProlongedPoint& p) {
    for (const auto& coord : p.components) {
        for (std::size_t b = 1; b < coord.size(); ++b) {
            if (!coord[b].is_zero()) return false;
        }
    }
    return true;
}

bool is_vertical(const ProlongedPoint& p) {
    for (int coord = 0; coord < p.space.base_dim; ++coord) {
        for (std::size_t b = 1; b < p.components[coord].size(); ++b) {
            if (!p.components[coord][b].is_zero()) return false;
        }
    }
    return true;
}

ProlongedPoint plus_precompose(const ProlongedPoint& p, const SimplicialInfObject& D) {
    HomPtr plus = plus_map(D);
    if (!same_algebra(p.algebra, plus->source())) {
        throw MismatchError("point is not over the algebra of D_n with n = dimension of " + D.to_string());
    }
    return functor_apply(plus, p);
}

nlohmann::json point_to_json(const ProlongedPoint& p) {
    nlohmann::json comps = nlohmann::json::array();
    for (int coord = 0; coord < p.space.dim(); ++coord) {
        nlohmann::json entry = nlohmann::json::object();
        for (int b = 0; b < p.algebra->dim(); ++b) {
            if (!p.components[coord][b].is_zero()) {
                entry[monomial_to_string(p.algebra->basis()[b])] =
                    poly_to_string(p.components[coord][b], p.param_names);
            }
        }
        comps.push_back(std::move(entry));
    }
    return {{"space", {{"base", p.space.base_dim}, {"fiber", p.space.fiber_dim}}},
            {"algebra", algebra_to_json(*p.algebra)},
            {"params", p.param_names},
            {"components", comps}};
}

ProlongedPoint point_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("space") || !j.contains("algebra") || !j.contains("components")) {
        throw SchemaError("point: expected fields space, algebra, components");
    }
    const auto& js = j["space"];
    if (!js.is_object() || !js.contains("base") || !js.contains("fiber")) {
        throw SchemaError("point: space needs base and fiber");
    }
    CoordSpace space{js["base"].get<int>(), js["fiber"].get<int>()};
    AlgebraPtr algebra = algebra_from_json(j["algebra"]);
    std::vector<std::string> names;
    if (j.contains("params")) {
        if (!j["params"].is_array()) throw SchemaError("point: params must be an array of names");
        for (const auto& n : j["params"]) names.push_back(n.get<std::string>());
    }
    ProlongedPoint p = make_point(space, algebra, static_cast<int>(names.size()));
    p.param_names = names;
    const auto& comps = j["components"];
    if (!comps.is_array() || static_cast<int>(comps.size()) != space.dim()) {
        throw SchemaError("point: need one component entry per coordinate");
    }
    for (int coord = 0; coord < space.dim(); ++coord) {
        if (!comps[coord].is_object()) throw SchemaError("point: component entry must be an object");
        for (const auto& [key, value] : comps[coord].items()) {
            Monomial basis_mon = monomial_parse(key, algebra->var_count());
            int b = algebra->basis_index(basis_mon);
            if (b < 0) throw SchemaError("point: monomial outside the algebra basis: " + key);
            p.components[coord][b] =
                names.empty() ? poly_parse(value.get<std::string>(), 0) : poly_parse(value.get<std::string>(), names);
        }
    }
    return p;
}

} // namespace weiljet
