#pragma once

#include <stdexcept>
#include <string>

namespace weiljet {

// Parse failures in any of the text formats (polynomials, rationals,
// infinitesimal-object expressions).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structurally invalid JSON input (missing fields, wrong shapes).
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A size cap was exceeded (degree, order, or enumeration bound).
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Variable-count / algebra / arity / point mismatches between operands.
struct MismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A homomorphism's variable images do not send the source ideal into the
// target ideal; carries the offending generator (as text).
struct IllDefinedHom : std::runtime_error {
    explicit IllDefinedHom(std::string generator_text)
        : std::runtime_error("ill-defined homomorphism: generator " + generator_text +
                             " does not map into the target ideal"),
          generator(std::move(generator_text)) {}
    std::string generator;
};

// A homomorphism image has a nonzero constant term (does not fix the origin).
struct NonAugmentedHom : std::runtime_error {
    explicit NonAugmentedHom(int variable_index)
        : std::runtime_error("non-augmented homomorphism: image of variable " +
                             std::to_string(variable_index + 1) + " has a nonzero constant term"),
          variable(variable_index) {}
    int variable;
};

} // namespace weiljet
