#include "weiljet/infinitesimal.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <functional>

namespace weiljet {

namespace {

constexpr int kDimensionSearchCap = 20;

void validate_sequences(int m, const std::vector<std::vector<int>>& S) {
    for (const auto& seq : S) {
        if (seq.empty()) throw SchemaError("vanishing product must be nonempty");
        int prev = 0;
        for (int i : seq) {
            if (i <= prev || i > m) {
                throw SchemaError("vanishing product must be strictly increasing within 1.." +
                                  std::to_string(m));
            }
            prev = i;
        }
    }
}

// Drop any sequence that contains another listed sequence as a subset (all
// sequences are increasing, so subsequence and subset coincide).
std::vector<std::vector<int>> minimalize(std::vector<std::vector<int>> S) {
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());
    auto subset = [](const std::vector<int>& a, const std::vector<int>& b) {
        return std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    std::vector<std::vector<int>> minimal;
    for (const auto& a : S) {
        bool redundant = false;
        for (const auto& b : S) {
            if (b != a && subset(b, a)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) minimal.push_back(a);
    }
    return minimal;
}

} // namespace

SimplicialInfObject SimplicialInfObject::order(int n) {
    if (n < 0) throw SchemaError("order must be nonnegative");
    return SimplicialInfObject(InfKind::Order, 1, n, {});
}

SimplicialInfObject SimplicialInfObject::power(int m) {
    if (m < 0) throw SchemaError("degree must be nonnegative");
    return SimplicialInfObject(InfKind::Power, m, 1, {});
}

SimplicialInfObject SimplicialInfObject::graded(int m, int n) {
    if (m < 1 || n < 0) throw SchemaError("graded object needs degree >= 1 and order >= 0");
    return SimplicialInfObject(InfKind::Graded, m, n, {});
}

SimplicialInfObject SimplicialInfObject::square_free(int m, std::vector<std::vector<int>> S) {
    if (m < 0) throw SchemaError("degree must be nonnegative");
    validate_sequences(m, S);
    auto minimal = minimalize(std::move(S));
    if (minimal.empty()) return power(m);
    return SimplicialInfObject(InfKind::SquareFree, m, 1, std::move(minimal));
}

SimplicialInfObject SimplicialInfObject::brace(int m, int n) {
    if (m < 0 || n < 0) throw SchemaError("brace object needs nonnegative parameters");
    std::vector<std::vector<int>> S;
    // All strictly increasing (n+1)-element sequences in 1..m.
    std::vector<int> pick;
    std::function<void(int)> rec = [&](int next) {
        if (static_cast<int>(pick.size()) == n + 1) {
            S.push_back(pick);
            return;
        }
        for (int i = next; i <= m; ++i) {
            pick.push_back(i);
            rec(i + 1);
            pick.pop_back();
        }
    };
    rec(1);
    return SimplicialInfObject(InfKind::Brace, m, n, std::move(S));
}

int SimplicialInfObject::order_param() const {
    switch (kind_) {
    case InfKind::Order:
    case InfKind::Graded:
    case InfKind::Brace:
        return n_;
    default:
        throw SchemaError("object has no order parameter: " + to_string());
    }
}

const std::vector<std::vector<int>>& SimplicialInfObject::vanishing_products() const {
    return S_;
}

int SimplicialInfObject::dimension() const {
    // For the one-coordinate and graded shapes the value n is taken as
    // definitional (consistent with the coordinate-sum map being
    // well-defined exactly into D_n; see plus_map).
    if (kind_ == InfKind::Order || kind_ == InfKind::Graded) return n_;
    if (m_ > kDimensionSearchCap) {
        throw CapExceeded("dimension search capped at degree " + std::to_string(kDimensionSearchCap));
    }
    // Longest increasing index sequence avoiding every vanishing product as
    // a subset, by exhaustive bitmask search.
    std::vector<unsigned> blockers;
    for (const auto& seq : S_) {
        unsigned mask = 0;
        for (int i : seq) mask |= 1u << (i - 1);
        blockers.push_back(mask);
    }
    int best = 0;
    for (unsigned mask = 0; mask < (1u << m_); ++mask) {
        bool blocked = false;
        for (unsigned b : blockers) {
            if ((mask & b) == b) {
                blocked = true;
                break;
            }
        }
        if (!blocked) best = std::max(best, std::popcount(mask));
    }
    return best;
}

bool SimplicialInfObject::is_symmetric() const {
    if (kind_ != InfKind::SquareFree) return true; // the named families all are
    // S is closed under the coordinate permutations iff for every listed
    // size-k product, every size-k index subset also vanishes (contains some
    // listed product as a subset).
    auto blocked = [&](const std::vector<int>& set) {
        for (const auto& seq : S_) {
            if (std::includes(set.begin(), set.end(), seq.begin(), seq.end())) return true;
        }
        return false;
    };
    for (const auto& seq : S_) {
        int k = static_cast<int>(seq.size());
        std::vector<int> pick;
        bool ok = true;
        std::function<void(int)> rec = [&](int next) {
            if (!ok) return;
            if (static_cast<int>(pick.size()) == k) {
                if (!blocked(pick)) ok = false;
                return;
            }
            for (int i = next; i <= m_ && ok; ++i) {
                pick.push_back(i);
                rec(i + 1);
                pick.pop_back();
            }
        };
        rec(1);
        if (!ok) return false;
    }
    return true;
}

bool SimplicialInfObject::square_free_coords() const {
    switch (kind_) {
    case InfKind::Power:
    case InfKind::SquareFree:
    case InfKind::Brace:
        return true;
    case InfKind::Order:
    case InfKind::Graded:
        return n_ == 1;
    }
    return false;
}

AlgebraPtr SimplicialInfObject::dual_algebra() const {
    std::vector<Monomial> gens;
    switch (kind_) {
    case InfKind::Order:
        gens.push_back(Monomial::var(0, n_ + 1));
        return build_algebra(1, std::move(gens));
    case InfKind::Graded: {
        // All monomials of total degree exactly n+1 in m variables.
        std::vector<int> exps(m_, 0);
        std::function<void(int, int)> rec = [&](int var, int remaining) {
            if (var == m_ - 1) {
                exps[var] = remaining;
                Monomial g;
                for (int j = 0; j < m_; ++j) {
                    if (exps[j] > 0) g = g * Monomial::var(j, exps[j]);
                }
                gens.push_back(g);
                return;
            }
            for (int e = 0; e <= remaining; ++e) {
                exps[var] = e;
                rec(var + 1, remaining - e);
            }
        };
        rec(0, n_ + 1);
        return build_algebra(m_, std::move(gens));
    }
    case InfKind::Power:
    case InfKind::SquareFree:
    case InfKind::Brace:
        for (int j = 0; j < m_; ++j) gens.push_back(Monomial::var(j, 2));
        for (const auto& seq : S_) {
            Monomial g;
            for (int i : seq) g = g * Monomial::var(i - 1);
            gens.push_back(g);
        }
        return build_algebra(m_, std::move(gens));
    }
    throw SchemaError("unknown object kind");
}

std::string SimplicialInfObject::to_string() const {
    switch (kind_) {
    case InfKind::Order:
        return n_ == 1 ? "D" : "D_" + std::to_string(n_);
    case InfKind::Power:
        return "D^" + std::to_string(m_);
    case InfKind::Graded: {
        std::string out = "D(" + std::to_string(m_) + ")";
        if (n_ != 1) out += "_" + std::to_string(n_);
        return out;
    }
    case InfKind::Brace:
        return "D{" + std::to_string(m_) + "}_" + std::to_string(n_);
    case InfKind::SquareFree: {
        std::string out = "D{" + std::to_string(m_) + ";";
        bool first_seq = true;
        for (const auto& seq : S_) {
            if (!first_seq) out += ",";
            first_seq = false;
            out += "(";
            for (std::size_t i = 0; i < seq.size(); ++i) {
                if (i) out += ",";
                out += std::to_string(seq[i]);
            }
            out += ")";
        }
        return out + "}";
    }
    }
    throw SchemaError("unknown object kind");
}

namespace {

class InfParser {
public:
    explicit InfParser(std::string text) : text_(std::move(text)) {}

    SimplicialInfObject parse() {
        skip_ws();
        expect('D');
        skip_ws();
        SimplicialInfObject result = [&] {
            if (at_end()) return SimplicialInfObject::order(1);
            switch (peek()) {
            case '_':
                take();
                return SimplicialInfObject::order(parse_int());
            case '^':
                take();
                return SimplicialInfObject::power(parse_int());
            case '(': {
                take();
                int m = parse_int();
                expect(')');
                skip_ws();
                int n = 1;
                if (!at_end() && peek() == '_') {
                    take();
                    n = parse_int();
                }
                return SimplicialInfObject::graded(m, n);
            }
            case '{':
                return parse_braced();
            default:
                fail("unexpected character");
            }
        }();
        skip_ws();
        if (!at_end()) fail("trailing input");
        return result;
    }

private:
    SimplicialInfObject parse_braced() {
        expect('{');
        int m = parse_int();
        skip_ws();
        if (!at_end() && peek() == '}') {
            take();
            skip_ws();
            expect('_');
            return SimplicialInfObject::brace(m, parse_int());
        }
        expect(';');
        std::vector<std::vector<int>> S;
        skip_ws();
        while (!at_end() && peek() == '(') {
            take();
            std::vector<int> seq;
            seq.push_back(parse_int());
            skip_ws();
            while (!at_end() && peek() == ',') {
                take();
                seq.push_back(parse_int());
                skip_ws();
            }
            expect(')');
            S.push_back(std::move(seq));
            skip_ws();
            if (!at_end() && peek() == ',') {
                take();
                skip_ws();
                if (at_end() || peek() != '(') fail("expected '(' after ','");
            }
        }
        expect('}');
        return SimplicialInfObject::square_free(m, std::move(S));
    }

    int parse_int() {
        skip_ws();
        std::string digits;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) digits += take();
        if (digits.empty()) fail("expected an integer");
        return std::stoi(digits);
    }

    void expect(char c) {
        skip_ws();
        if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
        take();
    }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    char take() { return text_[pos_++]; }
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("object parse error at position " + std::to_string(pos_) + ": " + why);
    }

    std::string text_;
    std::size_t pos_ = 0;
};

} // namespace

SimplicialInfObject inf_parse(const std::string& text) {
    return InfParser(text).parse();
}

int simple_poly_dim(const SimplePolynomial& rho) {
    if (rho.exponents.empty()) throw SchemaError("simple polynomial needs a nonempty exponent set");
    for (int e : rho.exponents) {
        if (e < 1 || e > rho.n) throw SchemaError("simple polynomial exponent out of range");
    }
    AlgebraPtr w = SimplicialInfObject::order(rho.n).dual_algebra();
    Polynomial value(1);
    for (int e : rho.exponents) value.add_term(Monomial::var(0, e), Rat(1));
    WeilElement p = elem_make(w, value);
    const WeilElement rho_elem = p;
    int k = 1;
    while (true) {
        WeilElement next = elem_mul(p, rho_elem);
        if (next.value().is_zero()) return k;
        p = next;
        ++k;
    }
}

HomPtr simple_poly_hom(const SimplePolynomial& rho) {
    int l = simple_poly_dim(rho);
    AlgebraPtr source = SimplicialInfObject::order(l).dual_algebra();
    AlgebraPtr target = SimplicialInfObject::order(rho.n).dual_algebra();
    Polynomial image(1);
    for (int e : rho.exponents) image.add_term(Monomial::var(0, e), Rat(1));
    return hom_make(std::move(source), std::move(target), {image});
}

InfMapping make_poly_mapping(SimplicialInfObject source, SimplicialInfObject target,
                             std::vector<Polynomial> components) {
    if (static_cast<int>(components.size()) != target.degree()) {
        throw SchemaError("mapping needs one component per target coordinate");
    }
    for (auto& c : components) {
        if (c.var_count() != source.degree()) {
            throw SchemaError("mapping component over wrong variable pool");
        }
    }
    return InfMapping{std::move(source), std::move(target), std::move(components)};
}

bool is_monomial_mapping(const InfMapping& f) {
    for (const auto& c : f.components) {
        if (c.is_zero()) continue;
        if (c.terms().size() != 1 || c.terms().begin()->second != 1 ||
            c.terms().begin()->first.is_unit()) {
            return false;
        }
    }
    return true;
}

InfMapping make_monomial_mapping(SimplicialInfObject source, SimplicialInfObject target,
                                 std::vector<Polynomial> components) {
    InfMapping f = make_poly_mapping(std::move(source), std::move(target), std::move(components));
    if (!is_monomial_mapping(f)) {
        throw SchemaError("component is not a coefficient-1 monomial or zero");
    }
    return f;
}

HomPtr mapping_hom(const InfMapping& f) {
    return hom_make(f.target.dual_algebra(), f.source.dual_algebra(), f.components);
}

HomPtr plus_map(const SimplicialInfObject& D) {
    int n = D.dimension();
    AlgebraPtr source = SimplicialInfObject::order(n).dual_algebra();
    AlgebraPtr target = D.dual_algebra();
    Polynomial sum(D.degree());
    for (int j = 0; j < D.degree(); ++j) sum.add_term(Monomial::var(j), Rat(1));
    return hom_make(std::move(source), std::move(target), {sum});
}

CheckReport check_inclusions(int max_m, int max_n) {
    CheckReport report("inclusions");
    auto graded_obj = [](int m, int n) { return SimplicialInfObject::graded(m, n); };

    auto identity_components = [](int vars) {
        std::vector<Polynomial> comps;
        for (int j = 0; j < vars; ++j) comps.push_back(Polynomial::variable(vars, j));
        return comps;
    };
    auto well_defined = [](AlgebraPtr source, AlgebraPtr target, std::vector<Polynomial> images,
                           std::string* witness) {
        try {
            hom_make(std::move(source), std::move(target), std::move(images));
            return true;
        } catch (const std::exception& e) {
            *witness = e.what();
            return false;
        }
    };

    // Family 1: the graded object of order n sits inside the one of order
    // n+1 on the same coordinates.
    for (int m = 1; m <= max_m; ++m) {
        for (int n = 1; n <= max_n; ++n) {
            std::string witness;
            bool ok = well_defined(graded_obj(m, n + 1).dual_algebra(), graded_obj(m, n).dual_algebra(),
                                   identity_components(m), &witness);
            report.add("D(" + std::to_string(m) + ")_" + std::to_string(n) + " into D(" +
                           std::to_string(m) + ")_" + std::to_string(n + 1),
                       ok, witness);
        }
    }

    // Family 2: D(1)_n coincides with D_n (identity maps both ways).
    for (int n = 1; n <= max_n; ++n) {
        std::string w1, w2;
        bool ok = well_defined(graded_obj(1, n).dual_algebra(),
                               SimplicialInfObject::order(n).dual_algebra(), identity_components(1),
                               &w1) &&
                  well_defined(SimplicialInfObject::order(n).dual_algebra(),
                               graded_obj(1, n).dual_algebra(), identity_components(1), &w2);
        report.add("D(1)_" + std::to_string(n) + " equals D_" + std::to_string(n), ok, w1 + w2);
    }

    // Family 3: D(m1+m2)_n sits inside D(m1)_n x D(m2)_n coordinatewise.
    for (int m1 = 1; m1 + 1 <= max_m; ++m1) {
        for (int m2 = 1; m1 + m2 <= max_m; ++m2) {
            for (int n = 1; n <= max_n; ++n) {
                std::string witness;
                AlgebraPtr product = tensor(graded_obj(m1, n).dual_algebra(), graded_obj(m2, n).dual_algebra());
                bool ok = well_defined(product, graded_obj(m1 + m2, n).dual_algebra(),
                                       identity_components(m1 + m2), &witness);
                report.add("D(" + std::to_string(m1 + m2) + ")_" + std::to_string(n) + " into D(" +
                               std::to_string(m1) + ")_" + std::to_string(n) + " x D(" +
                               std::to_string(m2) + ")_" + std::to_string(n),
                           ok, witness);
            }
        }
    }

    // Family 4: D(m1)_n x D(m2)_1 sits inside D(m1+m2)_{n+1}.
    for (int m1 = 1; m1 + 1 <= max_m; ++m1) {
        for (int m2 = 1; m1 + m2 <= max_m; ++m2) {
            for (int n = 1; n <= max_n; ++n) {
                std::string witness;
                AlgebraPtr product = tensor(graded_obj(m1, n).dual_algebra(), graded_obj(m2, 1).dual_algebra());
                bool ok = well_defined(graded_obj(m1 + m2, n + 1).dual_algebra(), product,
                                       identity_components(m1 + m2), &witness);
                report.add("D(" + std::to_string(m1) + ")_" + std::to_string(n) + " x D(" +
                               std::to_string(m2) + ") into D(" + std::to_string(m1 + m2) + ")_" +
                               std::to_string(n + 1),
                           ok, witness);
            }
        }
    }
    return report;
}

} // namespace weiljet
