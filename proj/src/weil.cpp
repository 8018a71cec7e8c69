#include "weiljet/weil.hpp"

#include <algorithm>

namespace weiljet {

WeilAlgebra::WeilAlgebra(int var_count, MonomialIdeal ideal)
    : vars_(var_count), ideal_(std::move(ideal)) {
    if (vars_ < 0) throw SchemaError("negative variable count");
    // Finite-dimensionality: every variable needs a pure-power generator,
    // which then bounds its exponent in any standard monomial.
    std::vector<int> bound(vars_, -1);
    for (const auto& g : ideal_.generators()) {
        if (g.exponents().size() == 1) {
            auto [v, e] = *g.exponents().begin();
            if (v < vars_ && (bound[v] < 0 || e < bound[v])) bound[v] = e;
        }
    }
    for (int j = 0; j < vars_; ++j) {
        if (bound[j] < 0) {
            throw SchemaError("infinite-dimensional quotient: variable X" + std::to_string(j + 1) +
                              " has no nilpotency witness in the ideal");
        }
    }
    // Enumerate all exponent vectors below the bounds and keep standard ones.
    std::vector<int> exps(vars_, 0);
    while (true) {
        Monomial m;
        for (int j = 0; j < vars_; ++j) {
            if (exps[j] > 0) m = m * Monomial::var(j, exps[j]);
        }
        if (!ideal_.contains(m)) basis_.push_back(m);
        int j = 0;
        while (j < vars_ && exps[j] + 1 >= bound[j]) {
            exps[j] = 0;
            ++j;
        }
        if (j == vars_) break;
        ++exps[j];
    }
    std::sort(basis_.begin(), basis_.end(), Monomial::grlex_less);
    for (int i = 0; i < dim(); ++i) basis_index_[basis_[i]] = i;

    mul_table_.assign(static_cast<std::size_t>(dim()) * dim(), -1);
    for (int i = 0; i < dim(); ++i) {
        for (int j = 0; j < dim(); ++j) {
            mul_table_[i * dim() + j] = basis_index(basis_[i] * basis_[j]);
        }
    }
}

int WeilAlgebra::basis_index(const Monomial& m) const {
    auto it = basis_index_.find(m);
    return it == basis_index_.end() ? -1 : it->second;
}

AlgebraPtr build_algebra(int var_count, const MonomialIdeal& ideal) {
    return std::make_shared<WeilAlgebra>(var_count, ideal);
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
    if (a == b) return true;
    return a && b && *a == *b;
}

WeilElement::WeilElement(AlgebraPtr algebra, Polynomial value) : algebra_(std::move(algebra)) {
    if (!algebra_) throw SchemaError("element without algebra");
    if (value.var_count() != algebra_->var_count()) {
        throw SchemaError("element polynomial has wrong variable count");
    }
    value_ = normal_form(value, algebra_->ideal());
}

std::vector<Rat> WeilElement::coords() const {
    std::vector<Rat> out(algebra_->dim(), Rat(0));
    for (const auto& [m, c] : value_.terms()) {
        out[algebra_->basis_index(m)] = c;
    }
    return out;
}

bool WeilElement::operator==(const WeilElement& other) const {
    return same_algebra(algebra_, other.algebra_) && value_ == other.value_;
}

WeilElement elem_make(AlgebraPtr algebra, const Polynomial& p) {
    return WeilElement(std::move(algebra), p);
}

namespace {

void require_same_algebra(const WeilElement& a, const WeilElement& b) {
    if (!same_algebra(a.algebra(), b.algebra())) throw MismatchError("elements of different algebras");
}

} // namespace

WeilElement elem_add(const WeilElement& a, const WeilElement& b) {
    require_same_algebra(a, b);
    return WeilElement(a.algebra(), poly_add(a.value(), b.value()));
}

WeilElement elem_mul(const WeilElement& a, const WeilElement& b) {
    require_same_algebra(a, b);
    return WeilElement(a.algebra(), poly_mul(a.value(), b.value()));
}

WeilElement elem_scale(const WeilElement& a, const Rat& c) {
    return WeilElement(a.algebra(), a.value() * c);
}

WeilHom::WeilHom(AlgebraPtr source, AlgebraPtr target, std::vector<Polynomial> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (!source_ || !target_) throw SchemaError("homomorphism without source or target");
    if (static_cast<int>(images_.size()) != source_->var_count()) {
        throw SchemaError("homomorphism image count does not match source variable count");
    }
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (images_[i].var_count() != target_->var_count()) {
            throw SchemaError("homomorphism image over wrong variable pool");
        }
        if (images_[i].constant_term() != 0) throw NonAugmentedHom(static_cast<int>(i));
        images_[i] = normal_form(images_[i], target_->ideal());
    }
    for (const auto& g : source_->ideal().generators()) {
        Polynomial image = substitute(Polynomial::term(source_->var_count(), g, Rat(1)), images_);
        if (!normal_form(image, target_->ideal()).is_zero()) {
            throw IllDefinedHom(monomial_to_string(g));
        }
    }
}

Polynomial WeilHom::image_of_monomial(const Monomial& m) const {
    Polynomial p = Polynomial::term(source_->var_count(), m, Rat(1));
    Polynomial image = images_.empty()
                           ? Polynomial::constant(target_->var_count(), p.constant_term())
                           : substitute(p, images_);
    return normal_form(image, target_->ideal());
}

const std::vector<std::vector<Rat>>& WeilHom::basis_matrix() const {
    std::call_once(matrix_once_, [this] {
        int rows = target_->dim();
        int cols = source_->dim();
        matrix_.assign(rows, std::vector<Rat>(cols, Rat(0)));
        for (int j = 0; j < cols; ++j) {
            Polynomial image = image_of_monomial(source_->basis()[j]);
            for (const auto& [m, c] : image.terms()) {
                matrix_[target_->basis_index(m)][j] = c;
            }
        }
    });
    return matrix_;
}

HomPtr hom_make(AlgebraPtr source, AlgebraPtr target, std::vector<Polynomial> images) {
    return std::make_shared<WeilHom>(std::move(source), std::move(target), std::move(images));
}

HomPtr hom_identity(AlgebraPtr algebra) {
    std::vector<Polynomial> images;
    for (int i = 0; i < algebra->var_count(); ++i) {
        images.push_back(Polynomial::variable(algebra->var_count(), i));
    }
    return hom_make(algebra, algebra, std::move(images));
}

WeilElement hom_apply(const WeilHom& h, const WeilElement& a) {
    if (!same_algebra(a.algebra(), h.source())) throw MismatchError("element not in homomorphism source");
    if (h.source()->var_count() == 0) {
        return WeilElement(h.target(), Polynomial::constant(h.target()->var_count(), a.value().constant_term()));
    }
    return WeilElement(h.target(), substitute(a.value(), h.images()));
}

HomPtr hom_compose(const HomPtr& g, const HomPtr& f) {
    if (!same_algebra(f->target(), g->source())) throw MismatchError("homomorphisms not composable");
    std::vector<Polynomial> images;
    images.reserve(f->images().size());
    for (const auto& im : f->images()) {
        images.push_back(normal_form(substitute(im, g->images()), g->target()->ideal()));
    }
    return hom_make(f->source(), g->target(), std::move(images));
}

AlgebraPtr tensor(const AlgebraPtr& w1, const AlgebraPtr& w2) {
    int m1 = w1->var_count();
    int m2 = w2->var_count();
    std::vector<Monomial> gens = w1->ideal().generators();
    for (const auto& g : w2->ideal().generators()) {
        Monomial shifted;
        for (const auto& [v, e] : g.exponents()) shifted = shifted * Monomial::var(v + m1, e);
        gens.push_back(shifted);
    }
    return build_algebra(m1 + m2, MonomialIdeal(std::move(gens)));
}

nlohmann::json algebra_to_json(const WeilAlgebra& w) {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : w.ideal().generators()) gens.push_back(monomial_to_string(g));
    return {{"vars", w.var_count()}, {"generators", gens}};
}

namespace {

void require_fields(const nlohmann::json& j, std::initializer_list<const char*> fields, const char* what) {
    if (!j.is_object()) throw SchemaError(std::string(what) + ": expected a JSON object");
    for (const char* f : fields) {
        if (!j.contains(f)) throw SchemaError(std::string(what) + ": missing field '" + f + "'");
    }
}

} // namespace

AlgebraPtr algebra_from_json(const nlohmann::json& j) {
    require_fields(j, {"vars", "generators"}, "algebra");
    if (!j["vars"].is_number_integer() || !j["generators"].is_array()) {
        throw SchemaError("algebra: 'vars' must be an integer and 'generators' an array");
    }
    int vars = j["vars"].get<int>();
    std::vector<Monomial> gens;
    for (const auto& g : j["generators"]) {
        if (!g.is_string()) throw SchemaError("algebra: generators must be strings");
        gens.push_back(monomial_parse(g.get<std::string>(), vars));
    }
    return build_algebra(vars, std::move(gens));
}

nlohmann::json element_to_json(const WeilElement& e) {
    nlohmann::json coeffs = nlohmann::json::object();
    for (const auto& [m, c] : e.value().terms()) {
        coeffs[monomial_to_string(m)] = rat_to_string(c);
    }
    return {{"algebra", algebra_to_json(*e.algebra())}, {"coeffs", coeffs}};
}

WeilElement element_from_json(const nlohmann::json& j) {
    require_fields(j, {"algebra", "coeffs"}, "element");
    AlgebraPtr algebra = algebra_from_json(j["algebra"]);
    if (!j["coeffs"].is_object()) throw SchemaError("element: 'coeffs' must be an object");
    Polynomial p(algebra->var_count());
    for (const auto& [key, value] : j["coeffs"].items()) {
        if (!value.is_string()) throw SchemaError("element: coefficient values must be strings");
        p.add_term(monomial_parse(key, algebra->var_count()), rat_parse(value.get<std::string>()));
    }
    return WeilElement(algebra, p);
}

nlohmann::json hom_to_json(const WeilHom& h) {
    nlohmann::json images = nlohmann::json::array();
    for (const auto& im : h.images()) images.push_back(poly_to_string(im));
    return {{"source", algebra_to_json(*h.source())},
            {"target", algebra_to_json(*h.target())},
            {"images", images}};
}

HomPtr hom_from_json(const nlohmann::json& j) {
    require_fields(j, {"source", "target", "images"}, "homomorphism");
    AlgebraPtr source = algebra_from_json(j["source"]);
    AlgebraPtr target = algebra_from_json(j["target"]);
    if (!j["images"].is_array()) throw SchemaError("homomorphism: 'images' must be an array");
    std::vector<Polynomial> images;
    for (const auto& im : j["images"]) {
        if (!im.is_string()) throw SchemaError("homomorphism: images must be strings");
        images.push_back(poly_parse(im.get<std::string>(), target->var_count()));
    }
    return hom_make(std::move(source), std::move(target), std::move(images));
}

} // namespace weiljet
