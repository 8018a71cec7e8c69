#include "weiljet/commands.hpp"

#include "weiljet/errors.hpp"
#include "weiljet/infinitesimal.hpp"
#include "weiljet/jets.hpp"
#include "weiljet/limits.hpp"
#include "weiljet/prolong.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace weiljet {
namespace {

constexpr int kSuiteLevelCap = 4;

std::vector<std::string> coord_names(int count) {
    std::vector<std::string> names;
    names.reserve(count);
    for (int i = 1; i <= count; ++i) names.push_back("d" + std::to_string(i));
    return names;
}

nlohmann::json mapping_components_json(const InfMapping& f) {
    nlohmann::json arr = nlohmann::json::array();
    const auto names = coord_names(f.source.degree());
    for (const auto& comp : f.components) arr.push_back(poly_to_string(comp, names));
    return arr;
}

nlohmann::json rep_to_json(const QCRepresentation& rep) {
    nlohmann::json pieces = nlohmann::json::array();
    for (const auto& piece : rep.pieces) {
        pieces.push_back({{"object", piece.object.to_string()},
                          {"slots", piece.slots},
                          {"injection", mapping_components_json(piece.injection)}});
    }
    nlohmann::json overlaps = nlohmann::json::array();
    for (const auto& ov : rep.overlaps) {
        overlaps.push_back({{"pieces", {ov.piece_a, ov.piece_b}},
                            {"object", ov.object.to_string()},
                            {"slots", ov.slots},
                            {"into_first", mapping_components_json(ov.into_a)},
                            {"into_second", mapping_components_json(ov.into_b)}});
    }
    return {{"target", rep.target.to_string()},
            {"pieces", std::move(pieces)},
            {"overlaps", std::move(overlaps)}};
}

void embed_report(nlohmann::json& out, const CheckReport& report) {
    nlohmann::json doc = report_to_json(report);
    out["subject"] = doc["subject"];
    out["checks"] = doc["checks"];
    out["pass"] = report.overall();
}

CommandResult guarded(const std::string& command,
                      const std::function<int(nlohmann::json&)>& body) {
    nlohmann::json out;
    out["schema_version"] = 1;
    out["command"] = command;
    const auto start = std::chrono::steady_clock::now();
    int code = 0;
    try {
        code = body(out);
    } catch (const ParseError& ex) {
        out["error"] = ex.what();
        code = 2;
    } catch (const SchemaError& ex) {
        out["error"] = ex.what();
        code = 2;
    } catch (const CapExceeded& ex) {
        out["error"] = ex.what();
        code = 3;
    } catch (const std::exception& ex) {
        // MismatchError and the construction-time hom errors land here: the
        // input was readable but the mathematics rejected it.
        out["error"] = ex.what();
        code = 1;
    }
    if (!out.contains("checks")) out["checks"] = nlohmann::json::array();
    if (!out.contains("pass")) out["pass"] = (code == 0);
    const auto stop = std::chrono::steady_clock::now();
    out["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
    return {std::move(out), code};
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open file: " + path);
    try {
        nlohmann::json j;
        in >> j;
        return j;
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError("invalid JSON in " + path + ": " + ex.what());
    }
}

// A single coordinate over the square-free power algebra of the given level,
// with one fresh parameter per basis monomial: the generic element, so that
// a map identity verified on it holds for every point.
ProlongedPoint symbolic_power_point(int level) {
    const AlgebraPtr alg = SimplicialInfObject::power(level).dual_algebra();
    const int dim = alg->dim();
    ProlongedPoint p = make_point({1, 0}, alg, dim);
    for (int k = 0; k < dim; ++k) p.components[0][k] = Polynomial::variable(dim, k);
    return p;
}

std::string at_pair(int i, int j) {
    return "fails at i=" + std::to_string(i) + ", j=" + std::to_string(j);
}

} // namespace

CheckReport simplicial_identity_suite(int max_n) {
    CheckReport report("simplicial identities");
    for (int n = 0; n <= max_n; ++n) {
        const std::string level = " (n=" + std::to_string(n) + ")";
        const ProlongedPoint p = symbolic_power_point(n);

        if (n >= 2) {
            bool ok = true;
            std::string witness;
            for (int j = 2; j <= n && ok; ++j)
                for (int i = 1; i < j && ok; ++i)
                    if (!(simplicial_d(i, simplicial_d(j, p)) ==
                          simplicial_d(j - 1, simplicial_d(i, p)))) {
                        ok = false;
                        witness = at_pair(i, j);
                    }
            report.add("d_i d_j = d_{j-1} d_i for i<j" + level, ok, witness);
        }

        {
            bool ok = true;
            std::string witness;
            for (int j = 1; j <= n + 1 && ok; ++j)
                for (int i = 1; i <= j && ok; ++i)
                    if (!(simplicial_s(i, simplicial_s(j, p)) ==
                          simplicial_s(j + 1, simplicial_s(i, p)))) {
                        ok = false;
                        witness = at_pair(i, j);
                    }
            report.add("s_i s_j = s_{j+1} s_i for i<=j" + level, ok, witness);
        }

        if (n >= 1) {
            bool ok = true;
            std::string witness;
            for (int j = 2; j <= n + 1 && ok; ++j)
                for (int i = 1; i < j && ok; ++i)
                    if (!(simplicial_d(i, simplicial_s(j, p)) ==
                          simplicial_s(j - 1, simplicial_d(i, p)))) {
                        ok = false;
                        witness = at_pair(i, j);
                    }
            report.add("d_i s_j = s_{j-1} d_i for i<j" + level, ok, witness);
        }

        {
            bool ok = true;
            std::string witness;
            for (int j = 1; j <= n + 1 && ok; ++j)
                if (!(simplicial_d(j, simplicial_s(j, p)) == p)) {
                    ok = false;
                    witness = "fails at j=" + std::to_string(j);
                }
            report.add("d_j s_j = id" + level, ok, witness);
        }

        if (n >= 1) {
            bool ok = true;
            std::string witness;
            for (int j = 1; j <= n && ok; ++j)
                for (int i = j + 1; i <= n + 1 && ok; ++i)
                    if (!(simplicial_d(i, simplicial_s(j, p)) ==
                          simplicial_s(j, simplicial_d(i - 1, p)))) {
                        ok = false;
                        witness = at_pair(i, j);
                    }
            report.add("d_i s_j = s_j d_{i-1} for i>j" + level, ok, witness);
        }
    }
    return report;
}

CheckReport equalizer_fork_suite(int max_n) {
    CheckReport report("equalizer certificates");

    // The n-fold square-free power algebra as the equalizer of the identity
    // and the kill-last-axis endomorphism of the (n+1)-fold one.
    for (int n = 1; n <= max_n; ++n) {
        const AlgebraPtr small = SimplicialInfObject::power(n).dual_algebra();
        const AlgebraPtr big = SimplicialInfObject::power(n + 1).dual_algebra();
        std::vector<Polynomial> incl_images;
        std::vector<Polynomial> kill_images;
        for (int i = 0; i < n; ++i) {
            incl_images.push_back(Polynomial::variable(n + 1, i));
            kill_images.push_back(Polynomial::variable(n + 1, i));
        }
        kill_images.push_back(Polynomial::constant(n + 1, Rat(0)));
        const HomPtr incl = hom_make(small, big, incl_images);
        WeilDiagram diagram{{big, big},
                            {{0, 1, hom_identity(big)}, {0, 1, hom_make(big, big, kill_images)}}};
        ConeCandidate cone{small, {incl, incl}};
        const LimitVerdict v = limit_subspace(diagram, cone);
        report.add("axis-deletion equalizer (n=" + std::to_string(n) + ")", v.is_limit,
                   v.is_limit ? "apex dimension " + std::to_string(v.apex_dim) +
                                    " = subspace dimension " + std::to_string(v.subspace_dim)
                              : v.detail);
    }

    // The one-variable order-n algebra as the equalizer of the two ways of
    // splitting a product of two nilpotents into a product of three.
    for (int n = 1; n <= max_n; ++n) {
        const AlgebraPtr apex = SimplicialInfObject::order(n).dual_algebra();
        const AlgebraPtr high = SimplicialInfObject::order(n + 1).dual_algebra();
        const AlgebraPtr low = SimplicialInfObject::order(n).dual_algebra();
        const AlgebraPtr two = tensor(high, low);
        const AlgebraPtr three = tensor(tensor(high, high), low);
        const HomPtr leg1 = hom_make(
            apex, two,
            {Polynomial::term(2, Monomial::var(0, 1) * Monomial::var(1, 1), Rat(1))});
        const HomPtr f = hom_make(
            two, three,
            {Polynomial::term(3, Monomial::var(0, 1) * Monomial::var(1, 1), Rat(1)),
             Polynomial::variable(3, 2)});
        const HomPtr g = hom_make(
            two, three,
            {Polynomial::variable(3, 0),
             Polynomial::term(3, Monomial::var(1, 1) * Monomial::var(2, 1), Rat(1))});
        WeilDiagram diagram{{two, three}, {{0, 1, f}, {0, 1, g}}};
        ConeCandidate cone{apex, {leg1, hom_compose(f, leg1)}};
        const LimitVerdict v = limit_subspace(diagram, cone);
        report.add("factorization equalizer (n=" + std::to_string(n) + ")", v.is_limit,
                   v.is_limit ? "apex dimension " + std::to_string(v.apex_dim) +
                                    " = subspace dimension " + std::to_string(v.subspace_dim)
                              : v.detail);
    }

    // The order-n algebra as the symmetric part of its n-fold square-free
    // cover: arrows are the identity and the adjacent axis transpositions,
    // the cone leg the coordinate-sum map. The fixed subspace must have
    // dimension exactly n + 1.
    for (int n = 1; n <= max_n + 1; ++n) {
        const SimplicialInfObject cover = SimplicialInfObject::power(n);
        const AlgebraPtr big = cover.dual_algebra();
        const AlgebraPtr apex = SimplicialInfObject::order(n).dual_algebra();
        std::vector<WeilDiagram::Arrow> arrows{{0, 1, hom_identity(big)}};
        for (int i = 1; i < n; ++i) {
            std::vector<Polynomial> images;
            for (int j = 1; j <= n; ++j) {
                const int image = (j == i) ? i + 1 : (j == i + 1) ? i : j;
                images.push_back(Polynomial::variable(n, image - 1));
            }
            arrows.push_back({0, 1, hom_make(big, big, images)});
        }
        const HomPtr plus = plus_map(cover);
        WeilDiagram diagram{{big, big}, std::move(arrows)};
        ConeCandidate cone{apex, {plus, plus}};
        const LimitVerdict v = limit_subspace(diagram, cone);
        const bool ok = v.is_limit && v.subspace_dim == n + 1;
        report.add("symmetrization limit (n=" + std::to_string(n) + ")", ok,
                   ok ? "fixed subspace dimension " + std::to_string(v.subspace_dim)
                      : (v.is_limit ? "fixed subspace dimension " +
                                          std::to_string(v.subspace_dim) + ", expected " +
                                          std::to_string(n + 1)
                                    : v.detail));
    }

    return report;
}

CommandResult run_qcr(const std::string& expr) {
    return guarded("qcr", [&](nlohmann::json& out) {
        const SimplicialInfObject target = inf_parse(expr);
        const QCRepresentation rep = standard_qcr(target);
        out["representation"] = rep_to_json(rep);
        auto [diagram, cone] = qcr_dualize(rep);
        const LimitVerdict v = limit_subspace(diagram, cone);
        CheckReport report("representation of " + target.to_string());
        report.add("limit certificate", v.is_limit,
                   v.is_limit ? "apex dimension " + std::to_string(v.apex_dim) +
                                    " = subspace dimension " + std::to_string(v.subspace_dim)
                              : v.detail);
        embed_report(out, report);
        return report.overall() ? 0 : 1;
    });
}

CommandResult run_verify_identities(const std::string& only, int max_n) {
    return guarded("verify-identities", [&](nlohmann::json& out) {
        if (max_n < 1) throw SchemaError("--n must be at least 1");
        if (max_n > kSuiteLevelCap)
            throw CapExceeded("--n " + std::to_string(max_n) + " exceeds the supported bound " +
                              std::to_string(kSuiteLevelCap));
        if (!only.empty() && only != "simplicial" && only != "equalizers" && only != "inclusions")
            throw SchemaError("unknown suite '" + only +
                              "' (expected simplicial, equalizers or inclusions)");
        CheckReport report("identity suites");
        if (only.empty() || only == "simplicial") report.merge(simplicial_identity_suite(max_n));
        if (only.empty() || only == "equalizers") report.merge(equalizer_fork_suite(max_n));
        if (only.empty() || only == "inclusions") {
            const int grid = std::min(max_n + 1, 4);
            report.merge(check_inclusions(grid, grid));
        }
        embed_report(out, report);
        return report.overall() ? 0 : 1;
    });
}

CommandResult run_check_jet(const std::string& path, bool tangential) {
    return guarded("check-jet", [&](nlohmann::json& out) {
        const nlohmann::json doc = load_json_file(path);
        if (!doc.is_object() || !doc.contains("approach") || !doc["approach"].is_string())
            throw SchemaError("jet file needs a string 'approach' field");
        const std::string approach = doc["approach"].get<std::string>();
        out["approach"] = approach;
        if (approach == "FIRST") {
            if (tangential)
                throw SchemaError("--tangential applies to SECOND and THIRD candidates");
            const FirstApproachTower tower = tower_from_json(doc);
            const FirstCheckResult res = check_first(tower);
            out["classification"] = tower_class_to_string(res.classification);
            embed_report(out, res.report);
            return res.report.overall() ? 0 : 1;
        }
        const JetCandidate c = candidate_from_json(doc);
        CheckReport report =
            c.approach == JetApproach::Second ? check_second(c) : check_third(c);
        if (tangential)
            report.merge(c.approach == JetApproach::Second ? check_second_tangential(c)
                                                           : check_third_tangential(c));
        embed_report(out, report);
        return report.overall() ? 0 : 1;
    });
}

CommandResult run_transmogrify(const std::string& path, const std::string& map) {
    return guarded("transmogrify", [&](nlohmann::json& out) {
        if (map != "phi" && map != "psi")
            throw SchemaError("unknown map '" + map + "' (expected phi or psi)");
        out["map"] = map;
        const nlohmann::json doc = load_json_file(path);
        const TransmogrifyResult res =
            map == "phi" ? phi(tower_from_json(doc)) : psi(candidate_from_json(doc));
        out["image"] = candidate_to_json(res.candidate);
        embed_report(out, res.report);
        return res.report.overall() ? 0 : 1;
    });
}

namespace {

std::string join_ints(const nlohmann::json& arr) {
    std::ostringstream os;
    for (size_t i = 0; i < arr.size(); ++i) {
        if (i) os << ", ";
        os << arr[i].get<int>();
    }
    return os.str();
}

std::string join_strings(const nlohmann::json& arr) {
    std::ostringstream os;
    for (size_t i = 0; i < arr.size(); ++i) {
        if (i) os << ", ";
        os << arr[i].get<std::string>();
    }
    return os.str();
}

} // namespace

std::string render_text(const nlohmann::json& output) {
    std::ostringstream os;
    if (output.contains("command"))
        os << "command: " << output.at("command").get<std::string>() << "\n";
    if (output.contains("map")) os << "map: " << output.at("map").get<std::string>() << "\n";
    if (output.contains("approach"))
        os << "approach: " << output.at("approach").get<std::string>() << "\n";
    if (output.contains("error")) {
        os << "error: " << output.at("error").get<std::string>() << "\n";
        os << "FAIL\n";
        return os.str();
    }
    if (output.contains("representation")) {
        const auto& rep = output.at("representation");
        os << "target: " << rep.at("target").get<std::string>() << "\n";
        os << "pieces:\n";
        const auto& pieces = rep.at("pieces");
        for (size_t k = 0; k < pieces.size(); ++k) {
            os << "  " << k << ": " << pieces[k].at("object").get<std::string>() << " at slots ("
               << join_ints(pieces[k].at("slots")) << ") via ("
               << join_strings(pieces[k].at("injection")) << ")\n";
        }
        os << "overlaps:\n";
        for (const auto& ov : rep.at("overlaps")) {
            os << "  " << ov.at("pieces")[0].get<int>() << " & " << ov.at("pieces")[1].get<int>()
               << ": " << ov.at("object").get<std::string>() << " at slots ("
               << join_ints(ov.at("slots")) << ") via (" << join_strings(ov.at("into_first"))
               << ") / (" << join_strings(ov.at("into_second")) << ")\n";
        }
    }
    if (output.contains("classification"))
        os << "classification: " << output.at("classification").get<std::string>() << "\n";
    if (output.contains("image")) os << "image: " << output.at("image").dump() << "\n";
    if (output.contains("subject") && !output.at("subject").get<std::string>().empty())
        os << output.at("subject").get<std::string>() << "\n";
    if (output.contains("checks")) {
        for (const auto& check : output.at("checks")) {
            os << "  [" << (check.at("verdict").get<std::string>() == "pass" ? "pass" : "FAIL")
               << "] " << check.at("name").get<std::string>();
            if (check.contains("witness"))
                os << "  (" << check.at("witness").get<std::string>() << ")";
            os << "\n";
        }
    }
    if (output.contains("pass")) os << (output.at("pass").get<bool>() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

} // namespace weiljet
