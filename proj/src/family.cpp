#include "hindman/family.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "hindman/errors.hpp"

namespace hindman {

std::uint64_t fip_policy::tail_threshold() const {
    return static_cast<std::uint64_t>(
        std::ceil(static_cast<long double>(tail_fraction) * static_cast<long double>(bound)));
}

void fip_policy::validate() const {
    if (bound < 1) throw input_error("policy bound must be >= 1");
    if (min_count < 1) throw input_error("policy count must be >= 1");
    if (!(tail_fraction > 0.0) || tail_fraction > 1.0)
        throw input_error("policy tail fraction must be in (0,1]");
    if (max_part < 1) throw input_error("policy fmax must be >= 1");
    if (max_instance < 1) throw input_error("policy inst must be >= 1");
}

std::string to_string(verdict v) {
    switch (v) {
        case verdict::verified_at_bound: return "VerifiedAtBound";
        case verdict::refuted_at_bound: return "RefutedAtBound";
        case verdict::unknown: return "Unknown";
    }
    return "?";
}

bool generator_schema::defined_at(std::uint64_t n) const {
    if (n == 0 && include_zero) return true;
    return index_set.member(n);
}

nat_set generator_schema::instance(std::uint64_t n) const {
    return f == form::shifted_body ? shift(body, n) : nat_set::tail(n);
}

generator_schema generator_schema::shifted(nat_set body, nat_set index_set, bool include_zero,
                                           std::string label) {
    generator_schema s;
    s.f = form::shifted_body;
    s.body = std::move(body);
    s.index_set = std::move(index_set);
    s.include_zero = include_zero;
    s.label = std::move(label);
    return s;
}

generator_schema generator_schema::tails(nat_set index_set, std::string label) {
    generator_schema s;
    s.f = form::tail;
    s.index_set = std::move(index_set);
    s.include_zero = false;
    s.label = std::move(label);
    return s;
}

family trivial_family() {
    family u;
    u.generators = {nat_set::everything()};
    u.provenance = "trivial";
    return u;
}

family frechet_family() {
    family u;
    u.schemas = {generator_schema::tails(nat_set::everything(), "tails")};
    u.provenance = "frechet";
    return u;
}

family append(const family& u, std::vector<nat_set> gens,
              std::vector<generator_schema> schemas, const std::string& note) {
    family out = u;
    for (auto& g : gens) out.generators.push_back(std::move(g));
    for (auto& s : schemas) out.schemas.push_back(std::move(s));
    if (!note.empty())
        out.provenance += out.provenance.empty() ? note : "; " + note;
    return out;
}

std::vector<family_item> family_items(const family& u, const fip_policy& p) {
    p.validate();
    std::vector<family_item> out;
    for (std::size_t i = 0; i < u.generators.size(); ++i)
        out.push_back({u.generators[i], false, i, 0, "g" + std::to_string(i)});
    for (std::size_t j = 0; j < u.schemas.size(); ++j) {
        const auto& s = u.schemas[j];
        for (std::uint64_t n = 0; n < p.max_instance; ++n)
            if (s.defined_at(n))
                out.push_back({s.instance(n), true, j, n,
                               "s" + std::to_string(j) + "(n=" + std::to_string(n) + ")"});
    }
    return out;
}

nat_set family_part(const family& u, const std::vector<std::size_t>& f, const fip_policy& p) {
    auto items = family_items(u, p);
    std::vector<nat_set> parts;
    for (std::size_t idx : f) {
        if (idx >= items.size())
            throw unknown_generator("family has no item " + std::to_string(idx) + " (only " +
                                    std::to_string(items.size()) + " under this policy)");
        parts.push_back(items[idx].set);
    }
    return intersect(std::move(parts));
}

family_eval::family_eval(const family& u, fip_policy p) : p_(p) {
    p_.validate();
    items_ = family_items(u, p_);
    std::unordered_map<bits, std::size_t, bits::hasher> seen;
    for (std::size_t i = 0; i < items_.size(); ++i) {
        bits b = window_bits(items_[i].set, p_.bound);
        auto it = seen.find(b);
        if (it == seen.end()) {
            seen.emplace(b, ubits_.size());
            item_to_unique_.push_back(ubits_.size());
            unique_to_item_.push_back(i);
            ubits_.push_back(std::move(b));
        } else {
            item_to_unique_.push_back(it->second);
        }
    }
}

bits family_eval::window_bits(const nat_set& x, std::uint64_t len) {
    bits b(len);
    for (std::uint64_t n = 0; n < len; ++n)
        if (x.member(n)) b.set(n);
    return b;
}

template <class Fn>
void family_eval::for_each_part(const std::vector<const bits*>& universe, std::uint32_t max_size,
                                std::size_t skip_below, Fn&& fn) const {
    if (skip_below > 0 && skip_below >= universe.size()) return;  // nothing qualifying
    std::vector<std::size_t> combo;
    std::vector<bits> prefix;
    prefix.push_back(bits::full(p_.bound));
    bool stopped = false;
    auto rec = [&](auto&& self, std::size_t start, std::uint32_t remaining, bool has_new) -> void {
        if (stopped) return;
        if (remaining == 0) {
            if (has_new) stopped = fn(combo, prefix.back());
            return;
        }
        for (std::size_t i = start; i + remaining <= universe.size() && !stopped; ++i) {
            combo.push_back(i);
            prefix.push_back(and_of(prefix.back(), *universe[i]));
            self(self, i + 1, remaining - 1, has_new || i >= skip_below);
            prefix.pop_back();
            combo.pop_back();
        }
    };
    for (std::uint32_t s = 0; s <= max_size && !stopped; ++s)
        rec(rec, 0, s, skip_below == 0);
}

std::vector<std::size_t> family_eval::to_item_indices(const std::vector<std::size_t>& uniq) const {
    std::vector<std::size_t> out;
    out.reserve(uniq.size());
    for (std::size_t u : uniq) out.push_back(unique_to_item_[u]);
    return out;
}

fip_report family_eval::fip() const {
    fip_report r;
    r.policy = p_;
    const std::uint64_t t = p_.min_count, tail = p_.tail_threshold();
    std::optional<fip_witness> refuted, tail_fail, limiting;
    std::vector<const bits*> universe;
    universe.reserve(ubits_.size());
    for (const auto& b : ubits_) universe.push_back(&b);
    for_each_part(universe, p_.max_part, 0, [&](const std::vector<std::size_t>& combo,
                                                const bits& part) {
        std::uint64_t c = part.count();
        auto mx = part.max_set();
        if (c < t) {
            refuted = fip_witness{to_item_indices(combo), c, mx};
            return true;
        }
        if (!tail_fail && (!mx || *mx < tail)) tail_fail = fip_witness{to_item_indices(combo), c, mx};
        if (!limiting || c < limiting->count) limiting = fip_witness{to_item_indices(combo), c, mx};
        return false;
    });
    if (refuted) {
        r.v = verdict::refuted_at_bound;
        r.witnesses = {*refuted};
    } else if (tail_fail) {
        r.v = verdict::unknown;
        r.witnesses = {*tail_fail};
    } else if (limiting) {
        r.v = verdict::verified_at_bound;
        r.witnesses = {*limiting};
    } else {
        r.v = verdict::verified_at_bound;  // unreachable: the empty part always exists
    }
    return r;
}

verdict family_eval::fip_verdict_with(const std::vector<const bits*>& extra,
                                      bool only_new) const {
    const std::uint64_t t = p_.min_count, tail = p_.tail_threshold();
    std::vector<const bits*> universe;
    universe.reserve(ubits_.size() + extra.size());
    for (const auto& b : ubits_) universe.push_back(&b);
    for (const bits* e : extra) {
        bool dup = false;
        for (const bits* have : universe)
            if (*have == *e) {
                dup = true;
                break;
            }
        if (!dup) universe.push_back(e);
    }
    std::size_t skip = only_new ? ubits_.size() : 0;
    verdict out = verdict::verified_at_bound;
    bool saw_unknown = false;
    for_each_part(universe, p_.max_part, skip,
                  [&](const std::vector<std::size_t>&, const bits& part) {
                      std::uint64_t c = part.count();
                      if (c < t) {
                          out = verdict::refuted_at_bound;
                          return true;
                      }
                      auto mx = part.max_set();
                      if (!mx || *mx < tail) saw_unknown = true;
                      return false;
                  });
    if (out == verdict::verified_at_bound && saw_unknown) out = verdict::unknown;
    return out;
}

tilde_result family_eval::tilde_bits(const bits& target) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = tilde_memo_.find(target);
        if (it != tilde_memo_.end()) return it->second;
    }
    tilde_result r;
    bool indefinite = false;
    std::vector<const bits*> universe;
    universe.reserve(ubits_.size());
    for (const auto& b : ubits_) universe.push_back(&b);
    for_each_part(universe, p_.max_part, 0, [&](const std::vector<std::size_t>& combo,
                                                const bits& part) {
        if (!part.any()) {
            indefinite = true;  // empty at bound decides nothing
            return false;
        }
        auto bad = part.first_not_in(target);
        if (!bad) {
            r.v = verdict::verified_at_bound;
            r.witness = to_item_indices(combo);
            return true;
        }
        if (!r.counterexample) r.counterexample = *bad;
        return false;
    });
    if (r.v != verdict::verified_at_bound)
        r.v = indefinite ? verdict::unknown : verdict::refuted_at_bound;
    {
        std::lock_guard<std::mutex> lock(mu_);
        tilde_memo_.emplace(target, r);
    }
    return r;
}

tilde_result family_eval::tilde_set(const nat_set& x) const {
    return tilde_bits(window_bits(x, p_.bound));
}

tilde_result family_eval::sum_tilde(const nat_set& x, const family_eval& v) const {
    const std::uint64_t b = p_.bound;
    bits xbits2 = window_bits(x, 2 * b);
    // Per-shift verdicts of X-n in~ U, filled lazily; the bits-keyed memo
    // behind tilde_bits dedupes coinciding windows across calls.
    std::vector<signed char> inner(b, -1);
    auto inner_verdict = [&](std::uint64_t n) {
        if (inner[n] < 0) inner[n] = static_cast<signed char>(tilde_bits(xbits2.shifted_down(n, b)).v);
        return static_cast<verdict>(inner[n]);
    };
    tilde_result r;
    bool indefinite = false;
    std::vector<const bits*> universe;
    universe.reserve(v.ubits_.size());
    for (const auto& bb : v.ubits_) universe.push_back(&bb);
    for_each_part(universe, p_.max_part, 0, [&](const std::vector<std::size_t>& combo,
                                                const bits& y) {
        if (!y.any()) {
            indefinite = true;
            return false;
        }
        bool all_ok = true;
        y.for_each_set([&](std::uint64_t n) {
            verdict iv = inner_verdict(n);
            if (iv == verdict::verified_at_bound) return false;
            all_ok = false;
            if (iv == verdict::unknown) indefinite = true;
            if (!r.counterexample) r.counterexample = n;
            return true;
        });
        if (all_ok) {
            r.v = verdict::verified_at_bound;
            r.witness = v.to_item_indices(combo);
            r.counterexample.reset();
            return true;
        }
        return false;
    });
    if (r.v != verdict::verified_at_bound)
        r.v = indefinite ? verdict::unknown : verdict::refuted_at_bound;
    return r;
}

fip_report bounded_fip(const family& u, const fip_policy& p) {
    return family_eval(u, p).fip();
}

tilde_result tilde_in(const nat_set& x, const family& u, const fip_policy& p) {
    return family_eval(u, p).tilde_set(x);
}

tilde_result sum_tilde_in(const nat_set& x, const family& u, const family& v,
                          const fip_policy& p) {
    family_eval ue(u, p);
    family_eval ve(v, p);
    return ue.sum_tilde(x, ve);
}

}  // namespace hindman
