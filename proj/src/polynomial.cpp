#include "weiljet/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace weiljet {

Rat rat_parse(const std::string& text) {
    auto bad = [&]() { throw ParseError("invalid rational: '" + text + "'"); };
    if (text.empty()) bad();
    std::string s = text;
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(Int(s));
        }
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (num.empty() || den.empty() || den.find('/') != std::string::npos) bad();
        Int d(den);
        if (d == 0) bad();
        return Rat(Int(num), d);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        bad();
    }
    return Rat(0); // unreachable
}

std::string rat_to_string(const Rat& r) {
    std::ostringstream out;
    if (denominator(r) == 1) {
        out << numerator(r);
    } else {
        out << numerator(r) << '/' << denominator(r);
    }
    return out.str();
}

Rat factorial(int n) {
    Int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return Rat(f);
}

Monomial Monomial::var(int index, int exponent) {
    Monomial m;
    if (exponent != 0) m.exps_[index] = exponent;
    return m;
}

int Monomial::degree() const {
    int d = 0;
    for (const auto& [v, e] : exps_) d += e;
    return d;
}

int Monomial::exponent(int index) const {
    auto it = exps_.find(index);
    return it == exps_.end() ? 0 : it->second;
}

int Monomial::max_var() const {
    return exps_.empty() ? -1 : exps_.rbegin()->first;
}

bool Monomial::divides(const Monomial& other) const {
    for (const auto& [v, e] : exps_) {
        if (other.exponent(v) < e) return false;
    }
    return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial r = *this;
    for (const auto& [v, e] : other.exps_) {
        r.exps_[v] += e;
    }
    return r;
}

bool Monomial::grlex_less(const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    // Same degree: compare exponent vectors from the lowest variable index;
    // the one with the higher exponent at the first difference comes first.
    auto ia = a.exps_.begin(), ib = b.exps_.begin();
    while (ia != a.exps_.end() && ib != b.exps_.end()) {
        if (ia->first != ib->first) return ia->first < ib->first;
        if (ia->second != ib->second) return ia->second > ib->second;
        ++ia;
        ++ib;
    }
    return false; // equal monomials
}

Polynomial::Polynomial(int var_count) : vars_(var_count) {}

Polynomial Polynomial::constant(int var_count, const Rat& c) {
    Polynomial p(var_count);
    p.add_term(Monomial::one(), c);
    return p;
}

Polynomial Polynomial::variable(int var_count, int index) {
    Polynomial p(var_count);
    p.add_term(Monomial::var(index), Rat(1));
    return p;
}

Polynomial Polynomial::term(int var_count, const Monomial& m, const Rat& c) {
    Polynomial p(var_count);
    p.add_term(m, c);
    return p;
}

Rat Polynomial::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

int Polynomial::total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

Polynomial Polynomial::with_vars(int new_var_count) const {
    if (new_var_count < vars_) {
        for (const auto& [m, c] : terms_) {
            if (m.max_var() >= new_var_count) {
                throw SchemaError("cannot shrink polynomial variable pool below used variables");
            }
        }
    }
    Polynomial p = *this;
    p.vars_ = new_var_count;
    return p;
}

Polynomial& Polynomial::add_term(const Monomial& m, const Rat& c) {
    if (c == 0) return *this;
    if (m.max_var() >= vars_) throw SchemaError("monomial uses variable outside declared pool");
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
    return *this;
}

Polynomial Polynomial::operator-() const {
    Polynomial p(vars_);
    for (const auto& [m, c] : terms_) p.terms_.emplace(m, -c);
    return p;
}

Polynomial Polynomial::operator*(const Rat& scalar) const {
    Polynomial p(vars_);
    if (scalar == 0) return p;
    for (const auto& [m, c] : terms_) p.terms_.emplace(m, c * scalar);
    return p;
}

Rat Polynomial::eval(const std::vector<Rat>& point) const {
    if (static_cast<int>(point.size()) != vars_) {
        throw SchemaError("evaluation point has wrong length");
    }
    Rat total(0);
    for (const auto& [m, c] : terms_) {
        Rat v = c;
        for (const auto& [var, e] : m.exponents()) {
            for (int i = 0; i < e; ++i) v *= point[var];
        }
        total += v;
    }
    return total;
}

Polynomial Polynomial::derivative(int var) const {
    Polynomial p(vars_);
    for (const auto& [m, c] : terms_) {
        int e = m.exponent(var);
        if (e == 0) continue;
        Monomial reduced;
        for (const auto& [v, k] : m.exponents()) {
            int nk = (v == var) ? k - 1 : k;
            if (nk > 0) reduced = reduced * Monomial::var(v, nk);
        }
        p.add_term(reduced, c * e);
    }
    return p;
}

namespace {

void require_same_vars(const Polynomial& a, const Polynomial& b) {
    if (a.var_count() != b.var_count()) {
        throw SchemaError("polynomial operands declared over different variable pools");
    }
}

} // namespace

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
    require_same_vars(a, b);
    Polynomial r = a;
    for (const auto& [m, c] : b.terms()) r.add_term(m, c);
    return r;
}

Polynomial poly_sub(const Polynomial& a, const Polynomial& b) {
    require_same_vars(a, b);
    Polynomial r = a;
    for (const auto& [m, c] : b.terms()) r.add_term(m, -c);
    return r;
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    require_same_vars(a, b);
    Polynomial r(a.var_count());
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            r.add_term(ma * mb, ca * cb);
        }
    }
    return r;
}

MonomialIdeal::MonomialIdeal(std::vector<Monomial> generators) {
    // Keep only divisibility-minimal generators, deduplicated.
    std::sort(generators.begin(), generators.end(), Monomial::grlex_less);
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    for (const auto& g : generators) {
        bool redundant = false;
        for (const auto& h : generators) {
            if (!(h == g) && h.divides(g)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) gens_.push_back(g);
    }
}

bool MonomialIdeal::contains(const Monomial& m) const {
    for (const auto& g : gens_) {
        if (g.divides(m)) return true;
    }
    return false;
}

Polynomial normal_form(const Polynomial& p, const MonomialIdeal& I) {
    Polynomial r(p.var_count());
    for (const auto& [m, c] : p.terms()) {
        if (!I.contains(m)) r.add_term(m, c);
    }
    return r;
}

Polynomial substitute(const Polynomial& p, const std::vector<Polynomial>& images) {
    if (images.empty()) {
        if (p.var_count() != 0) throw SchemaError("substitute: no images for nonzero variable pool");
        return p;
    }
    int target_vars = images[0].var_count();
    for (const auto& im : images) {
        if (im.var_count() != target_vars) {
            throw SchemaError("substitute: images declared over different variable pools");
        }
    }
    if (static_cast<int>(images.size()) < p.var_count()) {
        throw SchemaError("substitute: fewer images than variables");
    }
    // Memoize image powers; exponents are small but reused across terms.
    std::vector<std::vector<Polynomial>> powers(images.size());
    auto power = [&](int var, int e) -> const Polynomial& {
        auto& cache = powers[var];
        if (cache.empty()) cache.push_back(Polynomial::constant(target_vars, Rat(1)));
        while (static_cast<int>(cache.size()) <= e) {
            cache.push_back(poly_mul(cache.back(), images[var]));
        }
        return cache[e];
    };
    Polynomial result(target_vars);
    for (const auto& [m, c] : p.terms()) {
        Polynomial term = Polynomial::constant(target_vars, c);
        for (const auto& [var, e] : m.exponents()) {
            term = poly_mul(term, power(var, e));
        }
        result = poly_add(result, term);
    }
    return result;
}

namespace {

std::string default_name(int index) { return "X" + std::to_string(index + 1); }

std::string var_name(int index, const std::vector<std::string>& names) {
    if (index < static_cast<int>(names.size())) return names[index];
    return default_name(index);
}

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Recursive-descent parser over `term (+|-) term ...`, each term a `*`-joined
// list of an optional rational coefficient and name^exp factors.
class PolyParser {
public:
    PolyParser(std::string text, int var_count, const std::vector<std::string>& names)
        : text_(std::move(text)), vars_(var_count) {
        for (int i = 0; i < var_count; ++i) {
            name_to_index_[var_name(i, names)] = i;
        }
    }

    Polynomial parse() {
        Polynomial p(vars_);
        skip_ws();
        if (at_end()) fail("empty polynomial text");
        bool first = true;
        while (!at_end()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = (take() == '-') ? -1 : 1;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-' between terms");
            }
            auto [m, c] = parse_term();
            p.add_term(m, c * sign);
            skip_ws();
            first = false;
        }
        return p;
    }

private:
    std::pair<Monomial, Rat> parse_term() {
        Rat coeff(1);
        Monomial m;
        bool any_factor = false;
        bool expect_factor = true;
        while (expect_factor) {
            skip_ws();
            if (at_end()) break;
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                coeff *= parse_rational();
                any_factor = true;
            } else if (is_name_char(c)) {
                auto [var, e] = parse_var_power();
                m = m * Monomial::var(var, e);
                any_factor = true;
            } else {
                fail(std::string("unexpected character '") + c + "'");
            }
            skip_ws();
            if (!at_end() && peek() == '*') {
                take();
                expect_factor = true;
            } else {
                expect_factor = false;
            }
        }
        if (!any_factor) fail("empty term");
        return {m, coeff};
    }

    Rat parse_rational() {
        std::string digits = take_digits();
        skip_ws();
        if (!at_end() && peek() == '/') {
            take();
            skip_ws();
            std::string den = take_digits();
            if (den.empty()) fail("expected denominator digits after '/'");
            return rat_parse(digits + "/" + den);
        }
        return rat_parse(digits);
    }

    std::pair<int, int> parse_var_power() {
        std::string name;
        while (!at_end() && is_name_char(peek())) name += take();
        auto it = name_to_index_.find(name);
        if (it == name_to_index_.end()) fail("unknown variable '" + name + "'");
        int e = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
            take();
            skip_ws();
            std::string digits = take_digits();
            if (digits.empty()) fail("expected exponent digits after '^'");
            e = std::stoi(digits);
            if (e <= 0) fail("exponent must be positive");
        }
        return {it->second, e};
    }

    std::string take_digits() {
        std::string out;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) out += take();
        return out;
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    char take() { return text_[pos_++]; }
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("polynomial parse error at position " + std::to_string(pos_) + ": " + why);
    }

    std::string text_;
    int vars_;
    std::map<std::string, int> name_to_index_;
    std::size_t pos_ = 0;
};

} // namespace

std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& names) {
    if (m.is_unit()) return "1";
    std::string out;
    for (const auto& [v, e] : m.exponents()) {
        if (!out.empty()) out += "*";
        out += var_name(v, names);
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

std::string poly_to_string(const Polynomial& p, const std::vector<std::string>& names) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : p.terms()) {
        Rat a = c;
        if (out.empty()) {
            if (a < 0) {
                out += "-";
                a = -a;
            }
        } else {
            out += (a < 0) ? " - " : " + ";
            if (a < 0) a = -a;
        }
        if (m.is_unit()) {
            out += rat_to_string(a);
        } else {
            if (a != 1) out += rat_to_string(a) + "*";
            out += monomial_to_string(m, names);
        }
    }
    return out;
}

Monomial monomial_parse(const std::string& text, int var_count) {
    Polynomial p = poly_parse(text, var_count);
    if (p.terms().size() != 1 || p.terms().begin()->second != 1) {
        throw ParseError("expected a single monomial with coefficient 1: '" + text + "'");
    }
    return p.terms().begin()->first;
}

Polynomial poly_parse(const std::string& text, int var_count) {
    return PolyParser(text, var_count, {}).parse();
}

Polynomial poly_parse(const std::string& text, const std::vector<std::string>& names) {
    return PolyParser(text, static_cast<int>(names.size()), names).parse();
}

} // namespace weiljet
