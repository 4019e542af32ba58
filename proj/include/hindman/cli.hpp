#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "hindman/driver.hpp"
#include "hindman/oracle.hpp"

namespace hindman {

// Arithmetic/boolean membership DSL over the variable n; see the grammar in
// the implementation.  Throws parse_error with a 1-based column.
nat_set parse_predicate(const std::string& text);

// Two-line file: "colors k" then one digit in [1..k] per element of [1..N].
coloring load_coloring(const std::string& path);

// Deterministic key:value report blocks, shared by the CLI and the tests.
std::string format_policy(const fip_policy& p);
std::string format_fip(const std::string& key, const fip_report& r);
std::string format_tilde(const std::string& key, const tilde_result& t);
std::string format_decision(const std::string& shown, const decision& d, const nat_set& a);
std::string format_sum_witness(const coloring& c, const sum_witness& w, const fip_policy& p);
std::string format_no_witness(const coloring& c, int oracle_cross, const fip_policy& p);
std::string format_iterated(const std::vector<std::string>& shown, const iterated_decision& d,
                            const std::vector<nat_set>& as);
std::string format_forcing(const forcing_result& r);
std::string format_semigroup(const std::string& name, const semigroup_report& r);

// args excludes the program name.  Reports go to out, diagnostics to err.
// Exit codes: 0 success, 2 no witness / failed verification, 3 budget
// exhausted, 4 bad input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hindman
