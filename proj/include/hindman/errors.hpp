#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hindman {

// Base for everything this library throws on purpose.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structural size cap on symbolic set expressions was exceeded, or a
// finite-sums evaluation was pushed past its internal window.
struct expression_limit_error : error {
    using error::error;
};

// Malformed user input: predicate text, coloring files, witness strings,
// out-of-range parameters.  The CLI maps this to exit code 4.
struct input_error : error {
    using error::error;
};

// Predicate DSL syntax error; column is 1-based.
struct parse_error : input_error {
    parse_error(const std::string& what, std::size_t col)
        : input_error(what + " at column " + std::to_string(col)), column(col) {}
    std::size_t column;
};

// An extension lemma was invoked without its bounded precondition holding.
struct precondition_not_witnessed : error {
    using error::error;
};

// extension2's Y is not tilde-in the family at bound.
struct y_not_in_family_tilde : precondition_not_witnessed {
    using precondition_not_witnessed::precondition_not_witnessed;
};

// An index named a family item that does not exist under the current policy.
struct unknown_generator : error {
    using error::error;
};

// Search ran out of node/scan budget (or could not certify either outcome).
// The CLI maps this to exit code 3.
struct budget_exhausted : error {
    budget_exhausted(const std::string& what, std::uint64_t nodes, std::uint64_t scanned,
                     std::uint32_t depth)
        : error(what), nodes_expanded(nodes), candidates_scanned(scanned), max_depth(depth) {}
    std::uint64_t nodes_expanded;
    std::uint64_t candidates_scanned;
    std::uint32_t max_depth;
};

// No monochromatic witness at the bound.  The CLI maps this to exit code 2.
// oracle_agrees is meaningful in explicit mode only: true means the
// exhaustive check confirms absence, false means the oracle found a witness
// the bounded machinery missed.
struct no_witness_at_bound : error {
    no_witness_at_bound(const std::string& what, int oracle_state)
        : error(what), oracle_cross_check(oracle_state) {}
    int oracle_cross_check;  // 1 = oracle confirms absence, 0 = oracle disagrees, -1 = n/a
};

// Witness extraction could not pick a next element below the bound.
struct extraction_stuck : error {
    extraction_stuck(const std::string& what, std::vector<std::uint64_t> partial_)
        : error(what), partial(std::move(partial_)) {}
    std::vector<std::uint64_t> partial;
};

}  // namespace hindman
