#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hindman/driver.hpp"

namespace hindman {

// Exact check, no bounds: S strictly increasing and positive, every nonempty
// subset sum a member of the target.
bool verify_witness(const nat_set& target, const std::vector<std::uint64_t>& s);

// Coloring mode: every sum must carry the given color.  In explicit mode a
// sum outside [1..n] throws input_error (the domain cannot answer).
bool verify_witness(const coloring& c, std::uint32_t color, const std::vector<std::uint64_t>& s);

// First increasing S of length m, in lexicographic order, all sums inside the
// explicit domain and monochromatic.  Explicit colorings only.
std::optional<sum_witness> brute_force_witness(const coloring& c, std::uint32_t m);

struct forcing_result {
    std::uint32_t k = 0;
    std::uint32_t m = 0;
    std::uint64_t n_max = 0;
    std::optional<std::uint64_t> min_n;  // least forcing domain size, if any <= n_max
    std::uint64_t extremal_n = 0;        // domain of the recorded witness-free coloring
    std::string extremal_digits;         // lex-least witness-free coloring of [1..extremal_n]
};

// Least n <= n_max such that every k-coloring of [1..n] has a length-m
// monochromatic sums witness.  color(1) = 1 is fixed by symmetry; colorings
// are scanned in lexicographic digit order.  jobs > 1 splits the coloring
// space into contiguous chunks; the result is independent of the split.
forcing_result min_forcing_bound(std::uint32_t k, std::uint32_t m, std::uint64_t n_max,
                                 std::uint32_t jobs = 1);

}  // namespace hindman
