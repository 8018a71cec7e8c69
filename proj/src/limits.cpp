#include "weiljet/limits.hpp"

#include <algorithm>
#include <functional>

namespace weiljet {

namespace {

void validate_diagram(const WeilDiagram& diagram, const ConeCandidate& cone) {
    if (!cone.apex) throw SchemaError("cone without apex");
    if (cone.legs.size() != diagram.objects.size()) {
        throw SchemaError("cone needs one leg per diagram object");
    }
    for (const auto& arrow : diagram.arrows) {
        if (arrow.source < 0 || arrow.source >= static_cast<int>(diagram.objects.size()) ||
            arrow.target < 0 || arrow.target >= static_cast<int>(diagram.objects.size())) {
            throw SchemaError("arrow endpoint out of range");
        }
        if (!same_algebra(arrow.hom->source(), diagram.objects[arrow.source]) ||
            !same_algebra(arrow.hom->target(), diagram.objects[arrow.target])) {
            throw SchemaError("arrow homomorphism does not match its endpoints");
        }
    }
    for (std::size_t i = 0; i < cone.legs.size(); ++i) {
        if (!same_algebra(cone.legs[i]->source(), cone.apex) ||
            !same_algebra(cone.legs[i]->target(), diagram.objects[i])) {
            throw SchemaError("cone leg does not match apex or object");
        }
    }
}

bool matrices_equal(const std::vector<std::vector<Rat>>& a, const std::vector<std::vector<Rat>>& b) {
    return a == b;
}

// Matrix product c = a*b for basis matrices stored row-major as vectors.
std::vector<std::vector<Rat>> mat_mul(const std::vector<std::vector<Rat>>& a,
                                      const std::vector<std::vector<Rat>>& b) {
    std::size_t rows = a.size();
    std::size_t inner = b.size();
    std::size_t cols = inner ? b[0].size() : 0;
    std::vector<std::vector<Rat>> c(rows, std::vector<Rat>(cols, Rat(0)));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) {
                if (b[k][j] != 0) c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return c;
}

} // namespace

LimitVerdict limit_subspace(const WeilDiagram& diagram, const ConeCandidate& cone) {
    validate_diagram(diagram, cone);
    LimitVerdict verdict;
    verdict.apex_dim = cone.apex->dim();

    // Legs must commute with every arrow; otherwise the cone is not a cone.
    for (std::size_t a = 0; a < diagram.arrows.size(); ++a) {
        const auto& arrow = diagram.arrows[a];
        auto composite = mat_mul(arrow.hom->basis_matrix(), cone.legs[arrow.source]->basis_matrix());
        if (!matrices_equal(composite, cone.legs[arrow.target]->basis_matrix())) {
            verdict.failure = LimitFailure::LegsDontCommute;
            verdict.detail = "legs do not commute with arrow " + std::to_string(a);
            return verdict;
        }
    }

    // Product space with one coordinate block per object.
    int total = 0;
    std::vector<int> offset(diagram.objects.size(), 0);
    for (std::size_t i = 0; i < diagram.objects.size(); ++i) {
        offset[i] = total;
        total += diagram.objects[i]->dim();
    }

    // Constraint rows: hom(a_source) - a_target = 0 for each arrow.
    int constraint_rows = 0;
    for (const auto& arrow : diagram.arrows) constraint_rows += diagram.objects[arrow.target]->dim();
    RatMatrix constraints(constraint_rows, total);
    int row = 0;
    for (const auto& arrow : diagram.arrows) {
        const auto& mat = arrow.hom->basis_matrix();
        int tdim = diagram.objects[arrow.target]->dim();
        int sdim = diagram.objects[arrow.source]->dim();
        for (int r = 0; r < tdim; ++r) {
            for (int c = 0; c < sdim; ++c) constraints.at(row + r, offset[arrow.source] + c) = mat[r][c];
            constraints.at(row + r, offset[arrow.target] + r) -= 1;
        }
        row += tdim;
    }
    verdict.subspace_dim = total - rank(constraints);

    // Stacked legs: the canonical map from the apex into the product.
    RatMatrix stacked(total, verdict.apex_dim);
    for (std::size_t i = 0; i < diagram.objects.size(); ++i) {
        const auto& mat = cone.legs[i]->basis_matrix();
        for (int r = 0; r < diagram.objects[i]->dim(); ++r) {
            for (int c = 0; c < verdict.apex_dim; ++c) stacked.at(offset[i] + r, c) = mat[r][c];
        }
    }
    // A dimension gap is the sharper certificate: it rules out an isomorphism
    // no matter how the legs behave, so report it before probing injectivity.
    if (verdict.apex_dim != verdict.subspace_dim) {
        verdict.failure = LimitFailure::DimensionDeficit;
        verdict.detail = "apex dimension " + std::to_string(verdict.apex_dim) +
                         " != equalizer subspace dimension " + std::to_string(verdict.subspace_dim);
        return verdict;
    }
    auto kernel = kernel_basis(stacked);
    if (!kernel.empty()) {
        verdict.failure = LimitFailure::NotInjective;
        verdict.kernel_witness = kernel.front();
        verdict.detail = "legs have a joint kernel";
        return verdict;
    }
    verdict.is_limit = true;
    return verdict;
}

namespace {

constexpr int kQcrDegreeCap = 8;

// The square-free object a representation can cover; graded objects of
// order 1 are rebuilt in brace form so their vanishing list is explicit.
SimplicialInfObject as_square_free(const SimplicialInfObject& D) {
    switch (D.kind()) {
    case InfKind::Power:
    case InfKind::SquareFree:
    case InfKind::Brace:
        return D;
    case InfKind::Order:
        if (D.order_param() == 1) return SimplicialInfObject::power(1);
        break;
    case InfKind::Graded:
        if (D.order_param() == 1) return SimplicialInfObject::brace(D.degree(), 1);
        break;
    }
    throw SchemaError("representation requires square-free coordinates: " + D.to_string());
}

std::vector<std::vector<int>> maximal_free_sequences(const SimplicialInfObject& D) {
    int m = D.degree();
    std::vector<unsigned> blockers;
    for (const auto& seq : D.vanishing_products()) {
        unsigned mask = 0;
        for (int i : seq) mask |= 1u << (i - 1);
        blockers.push_back(mask);
    }
    auto free_mask = [&](unsigned mask) {
        for (unsigned b : blockers) {
            if ((mask & b) == b) return false;
        }
        return true;
    };
    std::vector<unsigned> maximal;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        if (!free_mask(mask)) continue;
        bool is_maximal = true;
        for (int j = 0; j < m && is_maximal; ++j) {
            if (!(mask & (1u << j)) && free_mask(mask | (1u << j))) is_maximal = false;
        }
        if (is_maximal) maximal.push_back(mask);
    }
    std::vector<std::vector<int>> sequences;
    for (unsigned mask : maximal) {
        std::vector<int> seq;
        for (int j = 0; j < m; ++j) {
            if (mask & (1u << j)) seq.push_back(j + 1);
        }
        sequences.push_back(std::move(seq));
    }
    std::sort(sequences.begin(), sequences.end());
    return sequences;
}

InfMapping slot_injection(const SimplicialInfObject& from, const SimplicialInfObject& to,
                          const std::vector<int>& from_slots, const std::vector<int>& to_slots) {
    // Coordinates of `to` listed in to_slots receive the matching coordinate
    // of `from` (matched through the shared slot labels); all others are 0.
    int k = from.degree();
    std::vector<Polynomial> components;
    for (int i : to_slots) {
        auto it = std::find(from_slots.begin(), from_slots.end(), i);
        if (it == from_slots.end()) {
            components.push_back(Polynomial(k));
        } else {
            components.push_back(Polynomial::variable(k, static_cast<int>(it - from_slots.begin())));
        }
    }
    return make_monomial_mapping(from, to, std::move(components));
}

} // namespace

QCRepresentation standard_qcr(const SimplicialInfObject& D) {
    SimplicialInfObject target = as_square_free(D);
    if (target.degree() > kQcrDegreeCap) {
        throw CapExceeded("standard representation capped at degree " + std::to_string(kQcrDegreeCap));
    }
    QCRepresentation rep;
    rep.target = D;

    std::vector<int> all_slots;
    for (int i = 1; i <= target.degree(); ++i) all_slots.push_back(i);

    auto sequences = maximal_free_sequences(target);
    for (const auto& seq : sequences) {
        SimplicialInfObject piece = SimplicialInfObject::power(static_cast<int>(seq.size()));
        QCPiece p{seq, piece, slot_injection(piece, target, seq, all_slots)};
        rep.pieces.push_back(std::move(p));
    }
    for (std::size_t a = 0; a < rep.pieces.size(); ++a) {
        for (std::size_t b = a + 1; b < rep.pieces.size(); ++b) {
            std::vector<int> common;
            std::set_intersection(rep.pieces[a].slots.begin(), rep.pieces[a].slots.end(),
                                  rep.pieces[b].slots.begin(), rep.pieces[b].slots.end(),
                                  std::back_inserter(common));
            SimplicialInfObject overlap = SimplicialInfObject::power(static_cast<int>(common.size()));
            QCOverlap o{static_cast<int>(a),
                        static_cast<int>(b),
                        common,
                        overlap,
                        slot_injection(overlap, rep.pieces[a].object, common, rep.pieces[a].slots),
                        slot_injection(overlap, rep.pieces[b].object, common, rep.pieces[b].slots)};
            rep.overlaps.push_back(std::move(o));
        }
    }

    auto [diagram, cone] = qcr_dualize(rep);
    LimitVerdict verdict = limit_subspace(diagram, cone);
    if (!verdict.is_limit) {
        throw MismatchError("internal error: standard representation of " + D.to_string() +
                            " failed certification: " + verdict.detail);
    }
    return rep;
}

std::pair<WeilDiagram, ConeCandidate> qcr_dualize(const QCRepresentation& rep) {
    WeilDiagram diagram;
    ConeCandidate cone;
    cone.apex = rep.target.dual_algebra();

    for (const auto& piece : rep.pieces) {
        diagram.objects.push_back(piece.object.dual_algebra());
        cone.legs.push_back(mapping_hom(piece.injection));
    }
    for (const auto& overlap : rep.overlaps) {
        int index = static_cast<int>(diagram.objects.size());
        diagram.objects.push_back(overlap.object.dual_algebra());
        HomPtr dual_a = mapping_hom(overlap.into_a);
        HomPtr dual_b = mapping_hom(overlap.into_b);
        diagram.arrows.push_back({overlap.piece_a, index, dual_a});
        diagram.arrows.push_back({overlap.piece_b, index, dual_b});
        // Canonical leg through piece_a; commutation with the piece_b arrow
        // is what limit_subspace then checks.
        cone.legs.push_back(hom_compose(dual_a, cone.legs[overlap.piece_a]));
    }
    return {std::move(diagram), std::move(cone)};
}

LimitVerdict verify_nonstandard_qcr(const SimplicialInfObject& D, const QCRepresentation& rep) {
    if (!(rep.target == D)) throw SchemaError("representation target mismatch");
    for (const auto& piece : rep.pieces) {
        if (!is_monomial_mapping(piece.injection)) {
            throw SchemaError("piece injection is not a monomial mapping");
        }
    }
    for (const auto& overlap : rep.overlaps) {
        if (!is_monomial_mapping(overlap.into_a) || !is_monomial_mapping(overlap.into_b)) {
            throw SchemaError("overlap map is not a monomial mapping");
        }
        if (overlap.piece_a < 0 || overlap.piece_a >= static_cast<int>(rep.pieces.size()) ||
            overlap.piece_b < 0 || overlap.piece_b >= static_cast<int>(rep.pieces.size())) {
            throw SchemaError("overlap references a missing piece");
        }
    }
    auto [diagram, cone] = qcr_dualize(rep);
    return limit_subspace(diagram, cone);
}

} // namespace weiljet
