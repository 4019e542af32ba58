#include "hindman/oracle.hpp"

#include <algorithm>
#include <thread>
#include <utility>

#include "hindman/errors.hpp"

namespace hindman {

namespace {

bool increasing_positive(const std::vector<std::uint64_t>& s) {
    if (s.empty()) return false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == 0) return false;
        if (i > 0 && s[i] <= s[i - 1]) return false;
    }
    return true;
}

// Smallest-first completion of s to length m inside one color class, all
// sums staying in [1..n].  Extending smallest-first from every start yields
// the lexicographically first witness overall.
bool color_witness_rec(const std::vector<std::uint32_t>& assign, std::uint64_t n,
                       std::uint32_t color, std::uint32_t m, std::vector<std::uint64_t>& s,
                       std::vector<std::uint64_t>& sums) {
    if (s.size() == m) return true;
    std::uint64_t from = s.empty() ? 1 : s.back() + 1;
    for (std::uint64_t x = from; x <= n; ++x) {
        if (assign[x - 1] != color) continue;
        bool ok = true;
        for (std::uint64_t t : sums) {
            if (t + x > n || assign[t + x - 1] != color) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        std::size_t old = sums.size();
        s.push_back(x);
        for (std::size_t i = 0; i < old; ++i) sums.push_back(sums[i] + x);
        sums.push_back(x);
        if (color_witness_rec(assign, n, color, m, s, sums)) return true;
        s.pop_back();
        sums.resize(old);
    }
    return false;
}

bool has_witness(const std::vector<std::uint32_t>& assign, std::uint64_t n, std::uint32_t m) {
    for (std::uint64_t x1 = 1; x1 <= n; ++x1) {
        std::vector<std::uint64_t> s{x1}, sums{x1};
        if (color_witness_rec(assign, n, assign[x1 - 1], m, s, sums)) return true;
    }
    return false;
}

// Coloring #idx of [1..n] with color(1)=1: the remaining digits read off idx
// big-endian, so ascending idx is ascending lexicographic digit order.
std::vector<std::uint32_t> assign_of(std::uint64_t idx, std::uint32_t k, std::uint64_t n) {
    std::vector<std::uint32_t> a(n, 1);
    std::uint64_t rest = idx;
    for (std::uint64_t j = n; j >= 2; --j) {
        a[j - 1] = static_cast<std::uint32_t>(rest % k) + 1;
        rest /= k;
    }
    return a;
}

std::string digits_of(const std::vector<std::uint32_t>& assign) {
    std::string out;
    out.reserve(assign.size());
    for (std::uint32_t a : assign) out.push_back(static_cast<char>('0' + a));
    return out;
}

// First witness-free coloring index in [0, total), scanning chunks in
// parallel; the minimum over per-chunk firsts is split-independent.
std::optional<std::uint64_t> first_free_index(std::uint32_t k, std::uint32_t m, std::uint64_t n,
                                              std::uint64_t total, std::uint32_t jobs) {
    auto scan_range = [&](std::uint64_t lo, std::uint64_t hi) -> std::optional<std::uint64_t> {
        for (std::uint64_t idx = lo; idx < hi; ++idx)
            if (!has_witness(assign_of(idx, k, n), n, m)) return idx;
        return std::nullopt;
    };
    std::uint64_t workers = std::min<std::uint64_t>(jobs, total);
    if (workers <= 1 || total < 512) return scan_range(0, total);
    std::uint64_t chunk = (total + workers - 1) / workers;
    std::vector<std::optional<std::uint64_t>> firsts(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            std::uint64_t lo = w * chunk;
            std::uint64_t hi = std::min(total, lo + chunk);
            firsts[w] = scan_range(lo, hi);
        });
    }
    for (auto& t : threads) t.join();
    std::optional<std::uint64_t> best;
    for (const auto& f : firsts)
        if (f && (!best || *f < *best)) best = f;
    return best;
}

}  // namespace

bool verify_witness(const nat_set& target, const std::vector<std::uint64_t>& s) {
    if (!increasing_positive(s)) return false;
    for (std::uint64_t t : nonempty_sums(s))
        if (!target.member(t)) return false;
    return true;
}

bool verify_witness(const coloring& c, std::uint32_t color, const std::vector<std::uint64_t>& s) {
    if (color == 0 || color > c.k) throw input_error("color out of range");
    if (!increasing_positive(s)) return false;
    for (std::uint64_t t : nonempty_sums(s)) {
        if (c.symbolic) {
            if (!c.classes[color - 1].member(t)) return false;
        } else {
            if (t > c.n)
                throw input_error("sum " + std::to_string(t) + " lies outside the colored domain");
            if (c.assign[t - 1] != color) return false;
        }
    }
    return true;
}

std::optional<sum_witness> brute_force_witness(const coloring& c, std::uint32_t m) {
    if (c.symbolic) throw input_error("exhaustive search needs an explicit coloring");
    if (m == 0) throw input_error("witness length must be positive");
    for (std::uint64_t x1 = 1; x1 <= c.n; ++x1) {
        std::vector<std::uint64_t> s{x1}, sums{x1};
        if (color_witness_rec(c.assign, c.n, c.assign[x1 - 1], m, s, sums)) {
            sum_witness w;
            w.s = std::move(s);
            w.color = c.assign[x1 - 1];
            w.sums = nonempty_sums(w.s);
            w.bound_context = c.n;
            return w;
        }
    }
    return std::nullopt;
}

forcing_result min_forcing_bound(std::uint32_t k, std::uint32_t m, std::uint64_t n_max,
                                 std::uint32_t jobs) {
    if (k == 0 || k > 9) throw input_error("color count must lie in [1,9]");
    if (m == 0) throw input_error("witness length must be positive");
    if (n_max == 0) throw input_error("domain cap must be positive");
    if (jobs == 0) jobs = 1;
    forcing_result res;
    res.k = k;
    res.m = m;
    res.n_max = n_max;
    std::string last_free;
    std::uint64_t last_free_n = 0;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        std::uint64_t total = 1;
        for (std::uint64_t i = 1; i < n; ++i) {
            if (total > 100000000ull / k)
                throw input_error("coloring space too large to scan exhaustively");
            total *= k;
        }
        auto free_idx = first_free_index(k, m, n, total, jobs);
        if (!free_idx) {
            res.min_n = n;
            res.extremal_n = last_free_n;
            res.extremal_digits = last_free;
            return res;
        }
        last_free = digits_of(assign_of(*free_idx, k, n));
        last_free_n = n;
    }
    res.extremal_n = last_free_n;
    res.extremal_digits = last_free;
    return res;
}

}  // namespace hindman
