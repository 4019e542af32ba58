#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hindman/search.hpp"
#include "hindman/semigroup.hpp"

namespace hindman {

// A k-coloring of an initial segment (explicit digits over [1..n]) or of all
// naturals (symbolic classes, disjointness and coverage spot-checked).
struct coloring {
    std::uint32_t k = 0;
    bool symbolic = false;
    std::uint64_t n = 0;                  // explicit domain [1..n]
    std::vector<std::uint32_t> assign;    // assign[j-1] in [1,k]
    std::vector<nat_set> classes;         // symbolic mode

    nat_set class_set(std::uint32_t color) const;  // 1-based
};

coloring explicit_coloring(std::uint32_t k, std::vector<std::uint32_t> assign);
// Checks that the classes partition [1, check_bound) pointwise.
coloring symbolic_coloring(std::vector<nat_set> classes, std::uint64_t check_bound);

struct sum_witness {
    std::vector<std::uint64_t> s;
    std::uint32_t color = 0;            // 1-based; 0 when the target is a plain set
    std::vector<std::uint64_t> sums;    // nonempty sums, each membership-checked
    std::uint64_t bound_context = 0;    // n in explicit mode, the policy bound otherwise
};

// Either a sums witness for A (side_a) with V extended by the FS(S)-n schema,
// or a family V whose join with A is refuted at bound, extended so that A^c
// is tilde-in V.  Both sides carry the tilde certificate for the chosen side.
struct decision {
    bool side_a = true;
    family v;
    tilde_result certificate;
    std::optional<sum_witness> witness;       // side A
    std::optional<fip_report> refutation;     // side A^c: bounded_fip(V + {A})
    fip_policy policy;
    search_stats stats;
};

decision extend_decide(const family& u, const nat_set& a, std::uint32_t m, const fip_policy& p,
                       const search_budget& budget = {});

// First color whose class admits a sums witness.  Explicit colorings are
// searched exhaustively with every sum confined to [1..n]; symbolic colorings
// go through extend_decide per class.  Throws no_witness_at_bound when every
// color fails (cross-checked against the exhaustive oracle in explicit mode).
sum_witness hindman_witness(const coloring& c, std::uint32_t m, const fip_policy& p,
                            const search_budget& budget = {});

// Greedy extraction: x_t is the least admissible element of the running
// intersection C with its shifts by every nonempty sum so far, each
// intersection certified tilde-in V before the pick.
std::vector<std::uint64_t> galvin_glazer(const family& v, const nat_set& c, std::uint32_t m,
                                         const fip_policy& p);

struct iterated_witness {
    std::vector<std::uint64_t> s;
    std::vector<int> signs;
    std::vector<ns_certificate> certificates;   // exact NS(suffix_i) in signed A_i
    std::vector<tilde_result> tilde_certs;      // signed A_i tilde-in V, per set
};

struct iterated_decision {
    iterated_witness witness;
    family v;   // U plus one sums schema per conditioned suffix
    fip_policy policy;
    search_stats stats;
};

iterated_decision iterated_decide(const family& u, const std::vector<nat_set>& as,
                                  std::uint32_t m, const fip_policy& p,
                                  const search_budget& budget = {});

}  // namespace hindman
