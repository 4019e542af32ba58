#pragma once

#include "hindman/family.hpp"

namespace hindman {

// Per-item outcome of the X in~ U+U check.
struct item_semigroup_entry {
    std::size_t item = 0;
    std::string label;
    verdict v = verdict::unknown;
    std::vector<std::size_t> witness_y;           // Y as a family-part index set, when verified
    std::optional<std::uint64_t> counterexample;  // a shift n with X-n not tilde-in U
    std::uint64_t n_range = 0;                    // shifts n < n_range were examined
};

struct semigroup_report {
    verdict overall = verdict::unknown;  // weakest item verdict combined with fip
    fip_report fip;
    std::vector<item_semigroup_entry> items;
};

// Every item X must satisfy X in~ U+U: some Y in~ U with X-n in~ U for all
// n in Y, verified at bound.
semigroup_report check_semigroup(const family& u, const fip_policy& p);

// extension1: U plus {A} fails bounded fip; append the schema A^c - n over
// X = {n : U_F - n in~ U} together with the n=0 instance (A^c itself).
family extend_after_fip_failure(const family& u, const nat_set& a, const fip_policy& p);

// extension2: U plus {A, A-n} fails bounded fip for every sampled n in Y
// (Y itself tilde-in U); append A^c - n over X = {n : Y-n in~ U}, without
// the forced n=0 instance.  Falls back to extension1 when U plus {A}
// already fails.
family extend_after_pair_failure(const family& u, const nat_set& a, const nat_set& y,
                                 const fip_policy& p);

// extension3: the item named by x_index has A-n tilde-in U for every sampled
// n in it; append A as a plain generator.
family extend_by_membership(const family& u, const nat_set& a, std::size_t x_index,
                            const fip_policy& p);

}  // namespace hindman
