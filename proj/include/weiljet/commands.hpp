#pragma once

#include "weiljet/report.hpp"

#include <json.hpp>

#include <string>

namespace weiljet {

// Outcome of one CLI command: the structured output document plus the exit
// code the process should return (0 all checks pass, 1 a check failed or a
// mismatch was detected, 2 parse or schema error, 3 a cap was exceeded).
struct CommandResult {
    nlohmann::json output;
    int exit_code = 0;
};

CommandResult run_qcr(const std::string& expr);
CommandResult run_verify_identities(const std::string& only, int max_n);
CommandResult run_check_jet(const std::string& path, bool tangential);
CommandResult run_transmogrify(const std::string& path, const std::string& map);

// The five identity families of the simplicial structure maps s_i and d_i,
// verified on a fully symbolic point for every level up to max_n.
CheckReport simplicial_identity_suite(int max_n);

// Limit certificates for the built-in equalizer-style diagrams: the
// axis-deletion equalizer, the factorization equalizer on tensor algebras,
// and the symmetrization limit with its expected subspace dimension.
CheckReport equalizer_fork_suite(int max_n);

// Renders a command's JSON output for terminals. Derives everything from
// the document itself and omits timing, so the text form is as
// deterministic as the structured one.
std::string render_text(const nlohmann::json& output);

} // namespace weiljet
