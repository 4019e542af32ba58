#include "hindman/semigroup.hpp"

#include <algorithm>
#include <memory>

#include "hindman/errors.hpp"

namespace hindman {

namespace {

verdict weaker(verdict a, verdict b) { return std::min(a, b); }

std::string part_text(const std::vector<std::size_t>& f) {
    std::string s = "{";
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(f[i]);
    }
    return s + "}";
}

}  // namespace

semigroup_report check_semigroup(const family& u, const fip_policy& p) {
    family_eval ev(u, p);
    semigroup_report rep;
    rep.fip = ev.fip();
    rep.overall = rep.fip.v;
    for (std::size_t i = 0; i < ev.items().size(); ++i) {
        tilde_result tr = ev.sum_tilde(ev.items()[i].set, ev);
        item_semigroup_entry e;
        e.item = i;
        e.label = ev.items()[i].label;
        e.v = tr.v;
        e.witness_y = tr.witness;
        e.counterexample = tr.counterexample;
        e.n_range = p.bound;
        rep.overall = weaker(rep.overall, tr.v);
        rep.items.push_back(std::move(e));
    }
    return rep;
}

family extend_after_fip_failure(const family& u, const nat_set& a, const fip_policy& p) {
    p.validate();
    family uext = append(u, {a});
    family_eval ev(uext, p);
    fip_report fr = ev.fip();
    if (fr.v != verdict::refuted_at_bound)
        throw precondition_not_witnessed("U plus A still passes bounded fip (verdict " +
                                         to_string(fr.v) + "), no failing F at bound");
    // The refutation part, with A taken out, is the finite intersection U_F
    // whose shifts index the new schema.
    const std::size_t a_index = u.generators.size();
    std::vector<nat_set> uf_sets;
    for (std::size_t idx : fr.witnesses.at(0).part)
        if (idx != a_index) uf_sets.push_back(ev.items()[idx].set);
    nat_set uf = intersect(std::move(uf_sets));

    auto u_eval = std::make_shared<family_eval>(u, p);
    bits uf2 = family_eval::window_bits(uf, 2 * p.bound);
    const std::uint64_t b = p.bound;
    nat_set x = nat_set::computed(
        "n : U_F-n in~ U, F=" + part_text(fr.witnesses.at(0).part),
        [u_eval, uf2, b](std::uint64_t n) {
            if (n >= b) return false;
            return u_eval->tilde_bits(uf2.shifted_down(n, b)).v == verdict::verified_at_bound;
        });
    auto sch = generator_schema::shifted(complement(a), std::move(x), true, "Ac-n");
    return append(u, {}, {std::move(sch)},
                  "ext1: Ac-n over {n : U_F-n in~ U} plus n=0, F=" +
                      part_text(fr.witnesses.at(0).part));
}

family extend_after_pair_failure(const family& u, const nat_set& a, const nat_set& y,
                                 const fip_policy& p) {
    p.validate();
    family_eval ue(u, p);
    tilde_result ty = ue.tilde_set(y);
    if (ty.v != verdict::verified_at_bound)
        throw y_not_in_family_tilde("Y is not tilde-in U at bound (verdict " + to_string(ty.v) +
                                    ")");
    bits abits = family_eval::window_bits(a, p.bound);
    if (ue.fip_verdict_with({&abits}, false) == verdict::refuted_at_bound)
        return extend_after_fip_failure(u, a, p);

    const bool base_ok = ue.fip().v == verdict::verified_at_bound;
    bits abits2 = family_eval::window_bits(a, 2 * p.bound);
    const std::uint64_t range = std::min(p.bound, p.max_instance);
    for (std::uint64_t n = 0; n < range; ++n) {
        if (!y.member(n)) continue;
        bits an = abits2.shifted_down(n, p.bound);
        if (ue.fip_verdict_with({&abits, &an}, base_ok) != verdict::refuted_at_bound)
            throw precondition_not_witnessed("U plus {A, A-" + std::to_string(n) +
                                             "} does not fail bounded fip");
    }

    auto u_eval = std::make_shared<family_eval>(u, p);
    bits y2 = family_eval::window_bits(y, 2 * p.bound);
    const std::uint64_t b = p.bound;
    nat_set x = nat_set::computed("n : Y-n in~ U", [u_eval, y2, b](std::uint64_t n) {
        if (n >= b) return false;
        return u_eval->tilde_bits(y2.shifted_down(n, b)).v == verdict::verified_at_bound;
    });
    auto sch = generator_schema::shifted(complement(a), std::move(x), false, "Ac-n");
    return append(u, {}, {std::move(sch)},
                  "ext2: Ac-n over {n : Y-n in~ U}, pair failures sampled to n<" +
                      std::to_string(range));
}

family extend_by_membership(const family& u, const nat_set& a, std::size_t x_index,
                            const fip_policy& p) {
    p.validate();
    family_eval ue(u, p);
    if (x_index >= ue.items().size())
        throw unknown_generator("family has no item " + std::to_string(x_index) + " (only " +
                                std::to_string(ue.items().size()) + " under this policy)");
    bits abits2 = family_eval::window_bits(a, 2 * p.bound);
    const std::uint64_t range = std::min(p.bound, p.max_instance);
    std::optional<std::uint64_t> bad;
    ue.item_bits(x_index).for_each_set([&](std::uint64_t n) {
        if (n >= range) return true;
        if (ue.tilde_bits(abits2.shifted_down(n, p.bound)).v != verdict::verified_at_bound) {
            bad = n;
            return true;
        }
        return false;
    });
    if (bad)
        throw precondition_not_witnessed("A-" + std::to_string(*bad) + " is not tilde-in U");
    return append(u, {a}, {},
                  "ext3: A joined via item " + std::to_string(x_index) + ", premises sampled to n<" +
                      std::to_string(range));
}

}  // namespace hindman
