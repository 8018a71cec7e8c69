// Acceptance gate: one timed criterion per line, nonzero exit when any
// criterion fails its checks or overruns its time bound.

#include "weiljet/commands.hpp"
#include "weiljet/errors.hpp"
#include "weiljet/infinitesimal.hpp"
#include "weiljet/jets.hpp"
#include "weiljet/limits.hpp"
#include "weiljet/prolong.hpp"
#include "weiljet/weil.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

using namespace weiljet;

namespace {

// A section of the trivial bundle R^m x R^e with one symbolic coefficient
// per fiber coordinate and displacement monomial, so every check below
// covers the whole family at once.
SectionJet symbolic_section(int m, int e, int n) {
    std::vector<Monomial> monos;
    std::vector<int> exps(m, 0);
    std::function<void(int, int)> walk = [&](int var, int left) {
        if (var == m) {
            Monomial mono;
            bool unit = true;
            for (int i = 0; i < m; ++i) {
                if (exps[i] > 0) {
                    mono = mono * Monomial::var(i, exps[i]);
                    unit = false;
                }
            }
            if (!unit) monos.push_back(mono);
            return;
        }
        for (int d = 0; d <= left; ++d) {
            exps[var] = d;
            walk(var + 1, left - d);
        }
        exps[var] = 0;
    };
    walk(0, n);

    const int K = static_cast<int>(monos.size());
    const int pool = m + e * K;
    std::vector<std::string> extra_names;
    std::vector<Polynomial> expansions;
    for (int j = 0; j < e; ++j) {
        Polynomial f = Polynomial::constant(pool, Rat(1));
        for (int k = 0; k < K; ++k) {
            extra_names.push_back("c" + std::to_string(j + 1) + "m" + std::to_string(k + 1));
            f = f + Polynomial::term(pool, monos[k] * Monomial::var(m + j * K + k, 1), Rat(1));
        }
        expansions.push_back(std::move(f));
    }
    return make_section_jet({m, e}, n, std::vector<Rat>(m, Rat(1)), std::move(expansions),
                            std::move(extra_names));
}

// A fully symbolic one-coordinate point over the shape's algebra, anchored
// at 1, with room for `extras` trailing parameters in the pool.
ProlongedPoint anchored_generic(const SimplicialInfObject& shape, int extras) {
    const AlgebraPtr alg = shape.dual_algebra();
    const int dim = alg->dim();
    const int pool = (dim - 1) + extras;
    ProlongedPoint p = make_point({1, 0}, alg, pool);
    p.components[0][0] = Polynomial::constant(pool, Rat(1));
    for (int k = 1; k < dim; ++k) p.components[0][k] = Polynomial::variable(pool, k - 1);
    return p;
}

bool criterion_degree_dimension() {
    bool ok = true;
    const SimplicialInfObject g3 = SimplicialInfObject::graded(3, 1);
    ok = ok && g3.degree() == 3 && g3.dimension() == 1;
    const SimplicialInfObject s1 = SimplicialInfObject::square_free(3, {{1, 2}});
    ok = ok && s1.degree() == 3 && s1.dimension() == 2;
    const SimplicialInfObject s2 = SimplicialInfObject::square_free(3, {{1, 2}, {1, 3}});
    ok = ok && s2.degree() == 3 && s2.dimension() == 2;
    const SimplicialInfObject p3 = SimplicialInfObject::power(3);
    ok = ok && p3.degree() == 3 && p3.dimension() == 3;
    return ok;
}

bool criterion_simple_dimensions() {
    auto dim3 = [](std::set<int> exps) {
        return simple_poly_dim(SimplePolynomial{3, std::move(exps)});
    };
    bool ok = dim3({1}) == 3 && dim3({1, 2}) == 3 && dim3({1, 3}) == 3;
    ok = ok && dim3({2}) == 1 && dim3({3}) == 1 && dim3({2, 3}) == 1;

    // Exhaustively over every nonempty exponent set up to degree 5: the
    // dimension never exceeds the ambient order and attains it exactly when
    // the linear term is present; the witnessing hom always constructs.
    for (int n = 1; n <= 5 && ok; ++n) {
        for (int mask = 1; mask < (1 << n) && ok; ++mask) {
            std::set<int> exps;
            for (int bit = 0; bit < n; ++bit)
                if (mask & (1 << bit)) exps.insert(bit + 1);
            const SimplePolynomial rho{n, exps};
            const int dim = simple_poly_dim(rho);
            ok = ok && dim <= n && (dim == n) == (exps.count(1) == 1);
            const HomPtr h = simple_poly_hom(rho);
            ok = ok && h->source()->dim() == dim + 1;
        }
    }
    return ok;
}

bool criterion_standard_qcr() {
    const SimplicialInfObject D = SimplicialInfObject::brace(3, 2);
    const QCRepresentation rep = standard_qcr(D);
    bool ok = rep.target == D && rep.pieces.size() == 3 && rep.overlaps.size() == 3;
    if (!ok) return false;

    const Polynomial d1 = Polynomial::variable(2, 0);
    const Polynomial d2 = Polynomial::variable(2, 1);
    const Polynomial z2(2);
    ok = ok && rep.pieces[0].slots == std::vector<int>{1, 2} &&
         rep.pieces[0].injection.components == std::vector<Polynomial>{d1, d2, z2};
    ok = ok && rep.pieces[1].slots == std::vector<int>{1, 3} &&
         rep.pieces[1].injection.components == std::vector<Polynomial>{d1, z2, d2};
    ok = ok && rep.pieces[2].slots == std::vector<int>{2, 3} &&
         rep.pieces[2].injection.components == std::vector<Polynomial>{z2, d1, d2};
    for (const auto& piece : rep.pieces) ok = ok && piece.object == SimplicialInfObject::power(2);

    const Polynomial e1 = Polynomial::variable(1, 0);
    const Polynomial z1(1);
    ok = ok && rep.overlaps[0].slots == std::vector<int>{1} &&
         rep.overlaps[0].into_a.components == std::vector<Polynomial>{e1, z1} &&
         rep.overlaps[0].into_b.components == std::vector<Polynomial>{e1, z1};
    ok = ok && rep.overlaps[1].slots == std::vector<int>{2} &&
         rep.overlaps[1].into_a.components == std::vector<Polynomial>{z1, e1} &&
         rep.overlaps[1].into_b.components == std::vector<Polynomial>{e1, z1};
    ok = ok && rep.overlaps[2].slots == std::vector<int>{3} &&
         rep.overlaps[2].into_a.components == std::vector<Polynomial>{z1, e1} &&
         rep.overlaps[2].into_b.components == std::vector<Polynomial>{z1, e1};
    for (const auto& ov : rep.overlaps) ok = ok && ov.object == SimplicialInfObject::power(1);

    auto [diagram, cone] = qcr_dualize(rep);
    ok = ok && limit_subspace(diagram, cone).is_limit;

    for (const SimplicialInfObject& shape :
         {SimplicialInfObject::graded(2, 1), SimplicialInfObject::graded(3, 1),
          SimplicialInfObject::square_free(3, {{1, 3}, {2, 3}})}) {
        auto [dg, cn] = qcr_dualize(standard_qcr(shape));
        ok = ok && limit_subspace(dg, cn).is_limit;
    }
    return ok;
}

bool criterion_equalizers() {
    const CheckReport report = equalizer_fork_suite(3);
    return report.overall() && report.items().size() == 10;
}

bool criterion_simplicial() {
    const CheckReport report = simplicial_identity_suite(3);
    return report.overall() && report.items().size() == 16;
}

bool criterion_section_jets_pass_checkers() {
    bool ok = true;
    for (int n = 1; n <= 3 && ok; ++n) {
        for (int m = 1; m <= 2 && ok; ++m) {
            for (int e = 1; e <= 2 && ok; ++e) {
                const SectionJet s = symbolic_section(m, e, n);
                const JetCandidate c2 = from_section_jet(s, JetApproach::Second);
                ok = ok && check_second(c2).overall() && check_second_tangential(c2).overall();
                const JetCandidate c3 = from_section_jet(s, JetApproach::Third);
                ok = ok && check_third(c3).overall() && check_third_tangential(c3).overall();
                ok = ok && check_first(tower_from_section_jet(s)).classification ==
                               TowerClass::Holonomic;
            }
        }
    }
    return ok;
}

bool criterion_transmogrify() {
    bool ok = true;
    for (int m = 1; m <= 2 && ok; ++m) {
        for (int e = 1; e <= 2 && ok; ++e) {
            for (int n = 1; n <= 2 && ok; ++n) {
                const SectionJet s = symbolic_section(m, e, n);
                ok = ok && phi_raw(tower_from_section_jet(s)) ==
                               from_section_jet(s, JetApproach::Second);
            }
            for (int n = 1; n <= 3 && ok; ++n) {
                const SectionJet s = symbolic_section(m, e, n);
                ok = ok && psi_raw(from_section_jet(s, JetApproach::Second)) ==
                               from_section_jet(s, JetApproach::Third);
            }
            // Both conversions commute with forgetting the top order.
            const FirstApproachTower T = tower_from_section_jet(symbolic_section(m, e, 2));
            ok = ok && project_second(phi_raw(T)) == phi_raw(truncate_tower(T));
            for (int n = 2; n <= 3 && ok; ++n) {
                const JetCandidate c = from_section_jet(symbolic_section(m, e, n),
                                                        JetApproach::Second);
                ok = ok && project_third(psi_raw(c)) == psi_raw(project_second(c));
            }
        }
    }
    return ok;
}

bool criterion_induced_naturality() {
    const JetCandidate nabla = from_section_jet(symbolic_section(1, 1, 3), JetApproach::Second);
    const int extras = nabla.extra_count();

    const SimplicialInfObject cube3 = SimplicialInfObject::power(3);
    const SimplicialInfObject sf4 = SimplicialInfObject::square_free(4, {{1, 2}});
    const SimplicialInfObject sf5 = SimplicialInfObject::square_free(5, {{1, 2}, {3, 4}});
    const SimplicialInfObject sf6 = SimplicialInfObject::square_free(6, {{1, 2}, {3, 4}, {5, 6}});
    const SimplicialInfObject g3 = SimplicialInfObject::graded(3, 1);

    auto v = [](int vars, int i) { return Polynomial::variable(vars, i); };
    std::vector<InfMapping> chain;
    chain.push_back(make_monomial_mapping(cube3, sf4, {v(3, 0), v(3, 0), v(3, 1), v(3, 2)}));
    chain.push_back(
        make_monomial_mapping(sf4, sf5, {v(4, 0), v(4, 1), v(4, 2), v(4, 2), v(4, 3)}));
    chain.push_back(make_monomial_mapping(
        sf5, sf6, {v(5, 0), v(5, 1), v(5, 2), v(5, 3), v(5, 4), v(5, 4)}));
    chain.push_back(make_monomial_mapping(
        sf6, g3,
        {Polynomial::term(6, Monomial::var(0, 1) * Monomial::var(2, 1), Rat(1)),
         Polynomial::term(6, Monomial::var(1, 1) * Monomial::var(4, 1), Rat(1)),
         Polynomial::term(6, Monomial::var(3, 1) * Monomial::var(5, 1), Rat(1))}));

    bool ok = true;
    for (const InfMapping& chi : chain) {
        const HomPtr dual = mapping_hom(chi);
        const ProlongedPoint gamma = anchored_generic(chi.target, extras);
        const int extras_base = chi.target.dual_algebra()->dim() - 1;
        const ProlongedPoint lhs =
            induced_map(nabla, chi.source, functor_apply(dual, gamma), extras_base);
        const ProlongedPoint rhs =
            functor_apply(dual, induced_map(nabla, chi.target, gamma, extras_base));
        ok = ok && lhs == rhs;
    }
    return ok;
}

bool criterion_negative_controls() {
    // A candidate tweaked at the top coefficient satisfies every pointwise
    // condition and is caught exactly once, by the recursive one.
    const SectionJet square =
        make_section_jet({1, 1}, 2, {Rat(1)}, {poly_parse("1 + 2*X1 + X1^2", 1)});
    JetCandidate c = from_section_jet(square, JetApproach::Second);
    c.body[0][2] = c.body[0][2] + Polynomial::variable(c.param_count(), 2);
    bool ok = check_second(c).overall();
    const CheckReport tang = check_second_tangential(c);
    ok = ok && !tang.overall();
    int fails = 0;
    for (const auto& item : tang.items()) {
        if (!item.pass) {
            ++fails;
            ok = ok && item.name == "order 2: fusion of the last two axes";
        }
    }
    ok = ok && fails == 1;

    // Dropping one piece of a covering leaves a certified dimension gap.
    const SimplicialInfObject D = SimplicialInfObject::brace(3, 2);
    QCRepresentation rep = standard_qcr(D);
    rep.pieces.pop_back();
    std::vector<QCOverlap> kept;
    for (const auto& ov : rep.overlaps)
        if (ov.piece_a < 2 && ov.piece_b < 2) kept.push_back(ov);
    rep.overlaps = std::move(kept);
    const LimitVerdict v = verify_nonstandard_qcr(D, rep);
    ok = ok && !v.is_limit && v.failure == LimitFailure::DimensionDeficit && v.apex_dim == 7 &&
         v.subspace_dim == 6;
    return ok;
}

struct Criterion {
    const char* name;
    int bound_s;
    std::function<bool()> body;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"degree and dimension table", 1, criterion_degree_dimension},
        {"simple reparametrization dimensions", 1, criterion_simple_dimensions},
        {"standard quasi-colimit representations", 5, criterion_standard_qcr},
        {"equalizer diagram certificates", 10, criterion_equalizers},
        {"simplicial identity families", 10, criterion_simplicial},
        {"holonomic candidates pass all checkers", 60, criterion_section_jets_pass_checkers},
        {"transmogrification equalities and squares", 60, criterion_transmogrify},
        {"induced maps natural under shape maps", 30, criterion_induced_naturality},
        {"negative controls", 5, criterion_negative_controls},
    };

    bool all = true;
    int idx = 1;
    for (const auto& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        std::string note;
        try {
            ok = criterion.body();
        } catch (const std::exception& ex) {
            ok = false;
            note = std::string(" [exception: ") + ex.what() + "]";
        }
        const auto stop = std::chrono::steady_clock::now();
        const double secs = std::chrono::duration<double>(stop - start).count();
        const bool pass = ok && secs < criterion.bound_s;
        std::printf("[%s] %d. %s (%.2f s, bound %d s)%s\n", pass ? "PASS" : "FAIL", idx,
                    criterion.name, secs, criterion.bound_s, note.c_str());
        all = all && pass;
        ++idx;
    }
    return all ? 0 : 1;
}
