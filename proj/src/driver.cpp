#include "hindman/driver.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "hindman/errors.hpp"
#include "hindman/oracle.hpp"

namespace hindman {

nat_set coloring::class_set(std::uint32_t color) const {
    if (color == 0 || color > k) throw input_error("color out of range");
    if (symbolic) return classes[color - 1];
    std::vector<std::uint64_t> elems;
    for (std::uint64_t j = 1; j <= n; ++j)
        if (assign[j - 1] == color) elems.push_back(j);
    return nat_set::explicit_finite(std::move(elems));
}

coloring explicit_coloring(std::uint32_t k, std::vector<std::uint32_t> assign) {
    if (k == 0 || k > 9) throw input_error("color count must lie in [1,9]");
    if (assign.empty()) throw input_error("explicit coloring needs a nonempty domain");
    for (std::uint32_t a : assign)
        if (a == 0 || a > k) throw input_error("color digit out of range");
    coloring c;
    c.k = k;
    c.symbolic = false;
    c.n = assign.size();
    c.assign = std::move(assign);
    return c;
}

coloring symbolic_coloring(std::vector<nat_set> classes, std::uint64_t check_bound) {
    if (classes.empty()) throw input_error("symbolic coloring needs at least one class");
    coloring c;
    c.k = static_cast<std::uint32_t>(classes.size());
    c.symbolic = true;
    c.classes = std::move(classes);
    for (std::uint64_t v = 1; v < check_bound; ++v) {
        std::uint32_t hits = 0;
        for (const auto& cl : c.classes)
            if (cl.member(v)) ++hits;
        if (hits != 1)
            throw input_error("classes must partition the positive naturals: " +
                              std::to_string(v) +
                              (hits == 0 ? " is uncovered" : " is covered more than once"));
    }
    return c;
}

decision extend_decide(const family& u, const nat_set& a, std::uint32_t m, const fip_policy& p,
                       const search_budget& budget) {
    auto out = search_part2(u, a, m, p, budget);
    decision d;
    d.policy = p;
    d.stats = out.stats;
    if (out.witness) {
        const auto& w = *out.witness;
        auto sch = generator_schema::shifted(nat_set::nonempty_sums_of(w.s),
                                             nat_set::finite_sums_of(w.s), false, "fs_shift");
        d.side_a = true;
        d.v = append(u, {}, {sch}, "sums witness");
        d.certificate = family_eval(d.v, p).tilde_set(a);
        sum_witness sw;
        sw.s = w.s;
        sw.color = 0;
        sw.sums = nonempty_sums(w.s);
        sw.bound_context = p.bound;
        d.witness = std::move(sw);
    } else {
        const auto& ext = *out.extension;
        d.side_a = false;
        d.v = extend_after_fip_failure(ext.v, a, p);
        d.certificate = family_eval(d.v, p).tilde_set(complement(a));
        d.refutation = family_eval(append(d.v, {a}, {}, "refutation"), p).fip();
    }
    return d;
}

namespace {

// Exhaustive smallest-first search for a length-m witness inside one color
// class of an explicit coloring, every sum confined to [1..n].
bool explicit_color_witness(const coloring& c, std::uint32_t color, std::uint32_t m,
                            std::vector<std::uint64_t>& s, std::vector<std::uint64_t>& sums) {
    if (s.size() == m) return true;
    std::uint64_t from = s.empty() ? 1 : s.back() + 1;
    for (std::uint64_t x = from; x <= c.n; ++x) {
        if (c.assign[x - 1] != color) continue;
        bool ok = true;
        for (std::uint64_t t : sums) {
            if (t + x > c.n || c.assign[t + x - 1] != color) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        std::size_t old = sums.size();
        s.push_back(x);
        for (std::size_t i = 0; i < old; ++i) sums.push_back(sums[i] + x);
        sums.push_back(x);
        if (explicit_color_witness(c, color, m, s, sums)) return true;
        s.pop_back();
        sums.resize(old);
    }
    return false;
}

}  // namespace

sum_witness hindman_witness(const coloring& c, std::uint32_t m, const fip_policy& p,
                            const search_budget& budget) {
    p.validate();
    if (m == 0) throw input_error("witness length must be positive");
    if (c.k == 0) throw input_error("coloring has no classes");
    if (!c.symbolic) {
        for (std::uint32_t color = 1; color <= c.k; ++color) {
            std::vector<std::uint64_t> s, sums;
            if (explicit_color_witness(c, color, m, s, sums)) {
                sum_witness w;
                w.s = std::move(s);
                w.color = color;
                w.sums = nonempty_sums(w.s);
                w.bound_context = c.n;
                return w;
            }
        }
        int cross = brute_force_witness(c, m) ? 0 : 1;
        throw no_witness_at_bound("no color class admits a sums witness within the domain",
                                  cross);
    }
    for (std::uint32_t color = 1; color <= c.k; ++color) {
        decision d = extend_decide(trivial_family(), c.class_set(color), m, p, budget);
        if (d.side_a) {
            sum_witness w = *d.witness;
            w.color = color;
            return w;
        }
    }
    throw no_witness_at_bound("no class admitted a sums witness at bound", -1);
}

std::vector<std::uint64_t> galvin_glazer(const family& v, const nat_set& c, std::uint32_t m,
                                         const fip_policy& p) {
    p.validate();
    if (m == 0) throw input_error("extraction length must be positive");
    family_eval ve(v, p);
    if (ve.tilde_set(c).v != verdict::verified_at_bound)
        throw precondition_not_witnessed("target set is not tilde-in the family at bound");
    std::vector<std::uint64_t> s;
    std::vector<std::uint64_t> sums;
    while (s.size() < m) {
        std::vector<nat_set> parts{c};
        for (std::uint64_t t : sums) parts.push_back(shift(c, t));
        nat_set cur = intersect(parts);
        if (ve.tilde_set(cur).v != verdict::verified_at_bound)
            throw extraction_stuck("running intersection lost tilde membership", s);
        bits w = family_eval::window_bits(cur, p.bound);
        std::uint64_t from = s.empty() ? 1 : s.back() + 1;
        if (from >= p.bound) throw extraction_stuck("no admissible element below the bound", s);
        auto rel = w.shifted_down(from, p.bound - from).min_set();
        if (!rel) throw extraction_stuck("no admissible element below the bound", s);
        std::uint64_t x = from + *rel;
        std::size_t old = sums.size();
        s.push_back(x);
        for (std::size_t i = 0; i < old; ++i) sums.push_back(sums[i] + x);
        sums.push_back(x);
        std::sort(sums.begin(), sums.end());
        sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
    }
    return s;
}

iterated_decision iterated_decide(const family& u, const std::vector<nat_set>& as,
                                  std::uint32_t m, const fip_policy& p,
                                  const search_budget& budget) {
    auto out = search_iterated(u, as, m, p, budget);
    const auto& w = *out.witness;
    iterated_decision d;
    d.policy = p;
    d.stats = out.stats;
    std::vector<generator_schema> schemas;
    for (std::size_t i = 0; i < as.size(); ++i) {
        std::vector<std::uint64_t> suffix(w.s.begin() + static_cast<std::ptrdiff_t>(i),
                                          w.s.end());
        schemas.push_back(generator_schema::shifted(nat_set::nonempty_sums_of(suffix),
                                                    nat_set::finite_sums_of(suffix), false,
                                                    "fs_shift"));
    }
    d.v = append(u, {}, std::move(schemas), "iterated witness");
    family_eval ve(d.v, p);
    d.witness.s = w.s;
    d.witness.signs = w.signs;
    d.witness.certificates = w.ns_checks;
    for (std::size_t i = 0; i < as.size(); ++i)
        d.witness.tilde_certs.push_back(ve.tilde_set(signed_set(as[i], w.signs[i])));
    return d;
}

}  // namespace hindman
