#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hindman/bits.hpp"
#include "hindman/natset.hpp"

namespace hindman {

// Bounded surrogate for "every finite intersection is infinite": scan [0,B),
// demand count >= t and a max element >= ceil(tau*B), over parts of size up
// to f_max drawn from generators and schema instances with parameter n < d.
struct fip_policy {
    std::uint64_t bound = 10000;      // B
    std::uint64_t min_count = 8;      // t
    double tail_fraction = 0.5;       // tau in (0,1]
    std::uint32_t max_part = 3;       // f_max
    std::uint64_t max_instance = 64;  // d

    std::uint64_t tail_threshold() const;  // ceil(tau * bound)
    void validate() const;                 // throws input_error on a bad field
};

enum class verdict { refuted_at_bound, unknown, verified_at_bound };

std::string to_string(verdict v);

// A batch of generators indexed by a shift parameter: either body-n over the
// admissible n, or the tail family [n,oo) (which no fixed body-n can spell).
struct generator_schema {
    enum class form { shifted_body, tail };

    form f = form::shifted_body;
    nat_set body;        // shifted_body only
    nat_set index_set;   // admissible parameters n
    bool include_zero = false;  // force an n=0 instance regardless of index_set
    std::string label;

    bool defined_at(std::uint64_t n) const;
    nat_set instance(std::uint64_t n) const;

    static generator_schema shifted(nat_set body, nat_set index_set, bool include_zero,
                                    std::string label);
    static generator_schema tails(nat_set index_set, std::string label);
};

// Ordered generator list plus schemas; append copies, indices never move.
struct family {
    std::vector<nat_set> generators;
    std::vector<generator_schema> schemas;
    std::string provenance;
};

family trivial_family();  // the single generator [0,oo)
family frechet_family();  // the tail schema over all n

family append(const family& u, std::vector<nat_set> gens,
              std::vector<generator_schema> schemas = {}, const std::string& note = "");

// One concrete item: a generator or an instantiated schema member.
struct family_item {
    nat_set set;
    bool from_schema = false;
    std::size_t origin = 0;      // generator index / schema index
    std::uint64_t shift_n = 0;   // instance parameter when from_schema
    std::string label;           // "g0", "s1(n=5)", ...
};

// Generators first, then per-schema instances with n < d in ascending n.
std::vector<family_item> family_items(const family& u, const fip_policy& p);

// Intersection of the items named by f (empty f denotes the naturals).
// Throws unknown_generator past the item list.
nat_set family_part(const family& u, const std::vector<std::size_t>& f, const fip_policy& p);

struct fip_witness {
    std::vector<std::size_t> part;  // item indices
    std::uint64_t count = 0;
    std::optional<std::uint64_t> max_element;
};

struct fip_report {
    verdict v = verdict::unknown;
    std::vector<fip_witness> witnesses;  // failing (refuted/unknown) or limiting (verified) part
    fip_policy policy;
};

struct tilde_result {
    verdict v = verdict::unknown;
    std::vector<std::size_t> witness;             // F with U_F inside the target, when verified
    std::optional<std::uint64_t> counterexample;  // first blocking element otherwise
};

fip_report bounded_fip(const family& u, const fip_policy& p);
tilde_result tilde_in(const nat_set& x, const family& u, const fip_policy& p);
tilde_result sum_tilde_in(const nat_set& x, const family& u, const family& v,
                          const fip_policy& p);

// Evaluated view of a family under a policy: item bitsets over [0,B) with
// extensional dedup, the part enumerator, and memoized tilde queries.  All
// reported index sets refer to the family's item numbering (first-occurrence
// representatives, which are also the shortlex-least ones).  Immutable after
// construction; the memo is internally locked.
class family_eval {
public:
    family_eval(const family& u, fip_policy p);

    const fip_policy& policy() const { return p_; }
    std::uint64_t bound() const { return p_.bound; }
    const std::vector<family_item>& items() const { return items_; }
    const bits& item_bits(std::size_t i) const { return ubits_[item_to_unique_[i]]; }
    std::size_t unique_count() const { return ubits_.size(); }
    const bits& unique_bits(std::size_t u) const { return ubits_[u]; }

    fip_report fip() const;
    // Verdict over this family's items plus extra sets (bitsets over [0,B)).
    // only_new skips parts drawn wholly from the base items — sound when the
    // base family is already verified under the same policy.
    verdict fip_verdict_with(const std::vector<const bits*>& extra, bool only_new) const;

    tilde_result tilde_bits(const bits& target) const;
    tilde_result tilde_set(const nat_set& x) const;
    tilde_result sum_tilde(const nat_set& x, const family_eval& v) const;

    // Pointwise evaluation of x on [0,len).
    static bits window_bits(const nat_set& x, std::uint64_t len);

private:
    // Shortlex part enumeration over unique item bitsets; fn(combo, part_bits)
    // returns true to stop.  Parts of size 0..f_max; combo holds unique ids.
    template <class Fn>
    void for_each_part(const std::vector<const bits*>& universe, std::uint32_t max_size,
                       std::size_t skip_below, Fn&& fn) const;

    std::vector<std::size_t> to_item_indices(const std::vector<std::size_t>& uniq) const;

    fip_policy p_;
    std::vector<family_item> items_;
    std::vector<bits> ubits_;
    std::vector<std::size_t> item_to_unique_;
    std::vector<std::size_t> unique_to_item_;
    mutable std::mutex mu_;
    mutable std::unordered_map<bits, tilde_result, bits::hasher> tilde_memo_;
};

}  // namespace hindman
