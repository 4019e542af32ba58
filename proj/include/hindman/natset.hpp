#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hindman/predexpr.hpp"

namespace hindman {

// Expression trees above this many nodes are rejected, not truncated.
inline constexpr std::size_t max_expression_nodes = 10000;

// Symbolic, immutable subset of the naturals with total pointwise membership
// and bounded enumeration.  shift realizes X-n := {m | m+n in X}; the
// finite-sums variant holds the base list and decides subset sums on demand.
class nat_set {
public:
    enum class kind {
        explicit_finite,
        tail,        // [k, oo)
        predicate,
        shifted,     // inner - n
        complemented,
        intersection,
        union_set,
        finite_sums,  // all subset sums of a finite base, 0 included
        computed      // opaque membership function with a memo
    };

    nat_set();  // the empty set

    static nat_set explicit_finite(std::vector<std::uint64_t> elems);
    static nat_set tail(std::uint64_t k);
    static nat_set everything();  // [0, oo)
    static nat_set empty();
    static nat_set predicate(pred_expr p);
    static nat_set finite_sums_of(std::vector<std::uint64_t> base);
    static nat_set nonempty_sums_of(std::vector<std::uint64_t> base);
    static nat_set computed(std::string label, std::function<bool(std::uint64_t)> fn);

    bool member(std::uint64_t n) const;
    std::vector<std::uint64_t> enumerate(std::uint64_t bound) const;
    std::string to_string() const;
    std::size_t node_count() const;
    kind which() const;

    friend nat_set shift(const nat_set& x, std::uint64_t n);
    friend nat_set complement(const nat_set& x);
    friend nat_set intersect(std::vector<nat_set> xs);
    friend nat_set unite(std::vector<nat_set> xs);

    struct node;  // defined in natset.cpp only

private:
    std::shared_ptr<const node> node_;
};

nat_set shift(const nat_set& x, std::uint64_t n);
nat_set complement(const nat_set& x);
nat_set intersect(std::vector<nat_set> xs);   // empty list denotes the naturals
nat_set unite(std::vector<nat_set> xs);       // empty list denotes the empty set
nat_set signed_set(const nat_set& a, int b);  // +1: a, -1: complement

// All subset sums of a strictly increasing base of positives, 0 included /
// excluded.  Exact, so callers keep |base| small (2^|base| subsets).
std::vector<std::uint64_t> finite_sums(const std::vector<std::uint64_t>& base);
std::vector<std::uint64_t> nonempty_sums(const std::vector<std::uint64_t>& base);

}  // namespace hindman
