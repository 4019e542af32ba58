#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hindman/family.hpp"

namespace hindman {

// F_n = set bits of n; every finite set appears exactly once, and every
// finite F is contained in F_m for infinitely many m.
std::vector<std::uint64_t> canonical_finite_set(std::uint64_t n);

// Kleene-Brouwer order: proper extensions precede, then first difference.
// Returns -1, 0, 1.
int kb_compare(const std::vector<std::uint64_t>& s, const std::vector<std::uint64_t>& t);

struct search_budget {
    std::uint64_t max_nodes = 4096;           // fip-admitted nodes
    std::uint64_t max_scan = 4000000;         // child candidates examined
    std::uint64_t max_closings = 64;          // schema-producing dead-end closings
    std::uint64_t max_helper_nodes = 200000;  // complementary-witness DFS steps
};

struct search_stats {
    std::uint64_t nodes_expanded = 0;
    std::uint64_t candidates_scanned = 0;
    std::uint32_t max_depth = 0;
    std::uint64_t closings = 0;
    std::vector<std::string> notes;
};

// A node of the proof tree: strictly increasing seq with, in sign mode, one
// sign per conditioned set fixed on entry (signs fills up to its full length
// while seq is still shorter, hence len(signs) can briefly exceed len(seq)).
struct search_node {
    std::vector<std::uint64_t> seq;
    std::vector<int> signs;
    std::vector<std::vector<std::size_t>> satisfied_constraints;  // F_i per position
};

struct ns_certificate {
    std::size_t set_index = 0;  // which conditioned set
    int sign = 1;
    std::vector<std::uint64_t> suffix;  // the suffix of S this certifies
    std::vector<std::uint64_t> sums;    // nonempty_sums(suffix)
    bool exact = true;                  // every sum membership-checked
};

struct search_witness {
    std::vector<std::uint64_t> s;
    std::vector<int> signs;                    // sign mode only
    std::vector<ns_certificate> ns_checks;     // empty in part1 mode
    fip_report shift_family_fip;  // U plus the (signed) A shifted by every FS value
    fip_report fs_family_fip;     // U plus the FS(S)-n schema (attached, not gated)
    search_node node;             // the accepted node with its level constraints
};

struct search_extension {
    family v;
    fip_report v_fip;     // bounded_fip(V)
    fip_report failure;   // bounded_fip(V plus {A}), refuted at bound
};

struct search_outcome {
    std::optional<search_witness> witness;
    std::optional<search_extension> extension;
    fip_policy policy;
    search_stats stats;
};

// Theorem part1 tree: s_i in U_{F_i} plus bounded fip of U with {A-n : n in
// FS(sigma)}.  On exhaustion, dead ends are closed in Kleene-Brouwer
// (= postorder) order to assemble an extension family V with V plus {A}
// refuted at bound.  Throws budget_exhausted when neither outcome certifies.
search_outcome search_part1(const family& u, const nat_set& a, std::uint32_t m,
                            const fip_policy& p, const search_budget& budget = {});

// part1 plus the exact node condition NS(sigma) subset of A.
search_outcome search_part2(const family& u, const nat_set& a, std::uint32_t m,
                            const fip_policy& p, const search_budget& budget = {});

// Alternating sign tree over sets A_1..A_r: entering position i <= r picks
// b_i (+1 before -1); every suffix must satisfy NS(suffix_i) subset of
// b_i*A_i exactly, plus the fip condition over the signed shifts.  Target
// length r+m-1 gives the last conditioned suffix m elements.  Exhaustion
// throws budget_exhausted (no closing ladder in sign mode).
search_outcome search_iterated(const family& u, const std::vector<nat_set>& as, std::uint32_t m,
                               const fip_policy& p, const search_budget& budget = {});

}  // namespace hindman
