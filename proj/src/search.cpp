#include "hindman/search.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <memory>
#include <utility>

#include "hindman/errors.hpp"

namespace hindman {

std::vector<std::uint64_t> canonical_finite_set(std::uint64_t n) {
    if (n == 0) throw input_error("canonical finite set index must be positive");
    std::vector<std::uint64_t> out;
    for (std::uint64_t b = 0; b < 64; ++b)
        if ((n >> b) & 1) out.push_back(b);
    return out;
}

int kb_compare(const std::vector<std::uint64_t>& s, const std::vector<std::uint64_t>& t) {
    std::size_t k = std::min(s.size(), t.size());
    for (std::size_t i = 0; i < k; ++i) {
        if (s[i] != t[i]) return s[i] < t[i] ? -1 : 1;
    }
    if (s.size() == t.size()) return 0;
    return s.size() > t.size() ? -1 : 1;  // proper extensions come first
}

namespace {

// First i >= from with inc[i] set and (when given) exc[i] clear.
std::optional<std::uint64_t> next_set_at_least(const bits& inc, const bits* exc,
                                               std::uint64_t from) {
    if (from >= inc.size()) return std::nullopt;
    const auto& iw = inc.words();
    std::size_t wi = from >> 6;
    std::uint64_t mask = ~std::uint64_t{0} << (from & 63);
    for (; wi < iw.size(); ++wi) {
        std::uint64_t v = iw[wi] & mask;
        if (exc) v &= ~exc->words()[wi];
        if (v) return wi * 64 + std::countr_zero(v);
        mask = ~std::uint64_t{0};
    }
    return std::nullopt;
}

struct dead_end {
    std::vector<std::uint64_t> fs;  // FS(sigma) within the wide window
    bits astar;                     // intersection of the A-n windows, nonempty
};

// One engine drives all three search modes.  Nodes are admitted by the level
// constraint s_k in U_{F_k}, the (optional) exact NS-containment masks, and
// the bounded fip of the base family joined with every conditioned shift.
class engine {
public:
    engine(const family& u, std::vector<nat_set> sets, bool exact_ns, bool sign_mode,
           std::uint32_t target, const fip_policy& p, const search_budget& budget)
        : u_(u),
          sets_(std::move(sets)),
          exact_ns_(exact_ns),
          sign_mode_(sign_mode),
          target_(target),
          p_(p),
          budget_(budget),
          ev_(u, p),
          b_(p.bound),
          wide_((std::uint64_t{target} + 1) * p.bound) {
        if (target_ == 0) throw input_error("search target length must be positive");
        if (ev_.fip().v != verdict::verified_at_bound)
            throw precondition_not_witnessed(
                "base family does not verify the finite intersection property at bound");
        pos_big_.resize(sets_.size());
        neg_big_.resize(sets_.size());
        std::size_t items = ev_.items().size();
        bool skipped = false;
        level_mask_.resize(std::size_t{target_} + 1);
        for (std::uint32_t k = 1; k <= target_; ++k) {
            bits m = bits::full(b_);
            for (std::uint64_t idx : canonical_finite_set(k)) {
                if (idx < items)
                    m.and_with(ev_.item_bits(idx));
                else
                    skipped = true;
            }
            level_mask_[k] = std::move(m);
        }
        if (skipped)
            stats_.notes.push_back(
                "level constraints past the item list are treated as unconstrained");
        gen_mask_ = bits::full(b_);
        for (std::size_t g = 0; g < u_.generators.size(); ++g)
            gen_mask_.and_with(ev_.item_bits(g));
    }

    search_outcome run() {
        search_outcome out;
        out.policy = p_;
        bool found = false;
        bool root_admitted = true;
        if (sign_mode_) {
            admit_node();
            found = dfs();
        } else {
            // The single conditioned set is active from the root on.
            root_admitted = enter_sign(+1);
            if (root_admitted) {
                admit_node();
                found = dfs();
            } else {
                // Rejected root: the empty sequence is itself a dead end, so
                // the closing ladder still gets the bare A-window to refute.
                bits awin = big(0, +1).shifted_down(0, b_);
                if (awin.any()) dead_.push_back({{0}, std::move(awin)});
            }
        }
        if (found) {
            out.witness = make_witness();
            out.stats = stats_;
            return out;
        }
        if (sign_mode_)
            throw budget_exhausted("sign-tree search exhausted at bound without a witness",
                                   stats_.nodes_expanded, stats_.candidates_scanned,
                                   stats_.max_depth);
        auto ext = phase2();
        if (!ext)
            throw budget_exhausted("search exhausted and the closing ladder did not refute",
                                   stats_.nodes_expanded, stats_.candidates_scanned,
                                   stats_.max_depth);
        out.extension = std::move(*ext);
        out.stats = stats_;
        return out;
    }

private:
    void admit_node() {
        if (++stats_.nodes_expanded > budget_.max_nodes)
            throw budget_exhausted("node budget exhausted", stats_.nodes_expanded,
                                   stats_.candidates_scanned, stats_.max_depth);
    }

    const bits& big(std::size_t i, int sign) {
        auto& slot = sign > 0 ? pos_big_[i] : neg_big_[i];
        if (!slot) slot = family_eval::window_bits(signed_set(sets_[i], sign), wide_);
        return *slot;
    }

    bool gate(const std::vector<bits>& news) {
        std::vector<const bits*> ptrs;
        ptrs.reserve(extras_.size() + news.size());
        for (const auto& e : extras_) ptrs.push_back(&e);
        for (const auto& e : news) ptrs.push_back(&e);
        return ev_.fip_verdict_with(ptrs, true) == verdict::verified_at_bound;
    }

    // Activate conditioned set #signs_ with the given sign; gated like a node.
    bool enter_sign(int sign) {
        std::size_t i = signs_.size();
        std::vector<bits> news;
        news.push_back(big(i, sign).shifted_down(0, b_));
        if (!gate(news)) return false;
        signs_.push_back(sign);
        fs_.push_back({0});
        astar_stack_.push_back({news[0]});
        extras_.push_back(std::move(news[0]));
        return true;
    }

    void leave_sign() {
        signs_.pop_back();
        fs_.pop_back();
        astar_stack_.pop_back();
        extras_.pop_back();
    }

    void push_element(std::uint64_t t, std::vector<bits>& news) {
        fs_snap_.push_back(fs_);
        std::size_t k = 0;
        for (std::size_t i = 0; i < fs_.size(); ++i) {
            bits a = astar_stack_[i].back();
            std::vector<std::uint64_t> merged = fs_[i];
            for (std::uint64_t n : fs_snap_.back()[i]) {
                a.and_with(news[k++]);
                merged.push_back(n + t);
            }
            std::sort(merged.begin(), merged.end());
            merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
            fs_[i] = std::move(merged);
            astar_stack_[i].push_back(std::move(a));
        }
        extras_counts_.push_back(news.size());
        for (auto& w : news) extras_.push_back(std::move(w));
        seq_.push_back(t);
    }

    void pop_element() {
        seq_.pop_back();
        fs_ = std::move(fs_snap_.back());
        fs_snap_.pop_back();
        for (auto& st : astar_stack_) st.pop_back();
        extras_.resize(extras_.size() - extras_counts_.back());
        extras_counts_.pop_back();
    }

    bool dfs() {
        stats_.max_depth = std::max(stats_.max_depth, static_cast<std::uint32_t>(seq_.size()));
        if (seq_.size() == target_) return true;
        if (sign_mode_ && signs_.size() < sets_.size() && signs_.size() == seq_.size()) {
            for (int sign : {+1, -1}) {
                if (!enter_sign(sign)) continue;
                admit_node();
                if (scan_children()) return true;
                leave_sign();
            }
            return false;
        }
        return scan_children();
    }

    bool scan_children() {
        std::uint64_t level = seq_.size() + 1;
        bits adm = level_mask_[level];
        if (exact_ns_)
            for (const auto& st : astar_stack_) adm.and_with(st.back());
        std::uint64_t from = seq_.empty() ? 1 : seq_.back() + 1;
        for (auto c = next_set_at_least(adm, nullptr, from); c;
             c = next_set_at_least(adm, nullptr, *c + 1)) {
            std::uint64_t t = *c;
            if (++stats_.candidates_scanned > budget_.max_scan)
                throw budget_exhausted("candidate scan budget exhausted", stats_.nodes_expanded,
                                       stats_.candidates_scanned, stats_.max_depth);
            std::vector<bits> news;
            for (std::size_t i = 0; i < fs_.size(); ++i) {
                const bits& src = big(i, signs_[i]);
                for (std::uint64_t n : fs_[i]) news.push_back(src.shifted_down(n + t, b_));
            }
            if (!gate(news)) continue;
            admit_node();
            push_element(t, news);
            if (dfs()) return true;
            pop_element();
        }
        if (!sign_mode_) record_dead_end();
        return false;
    }

    void record_dead_end() {
        const bits& astar = astar_stack_[0].back();
        // An empty shifted intersection closes trivially: V with it is refuted
        // outright, so only live dead ends are kept for the closing pass.
        if (!astar.any()) return;
        dead_.push_back({fs_[0], astar});
    }

    search_witness make_witness() {
        search_witness w;
        w.s = seq_;
        if (sign_mode_) w.signs = signs_;
        w.node.seq = seq_;
        w.node.signs = w.signs;
        std::size_t items = ev_.items().size();
        for (std::uint32_t k = 1; k <= target_; ++k) {
            std::vector<std::size_t> c;
            for (std::uint64_t idx : canonical_finite_set(k))
                if (idx < items) c.push_back(static_cast<std::size_t>(idx));
            w.node.satisfied_constraints.push_back(std::move(c));
        }
        if (exact_ns_) {
            for (std::size_t i = 0; i < signs_.size(); ++i) {
                ns_certificate cert;
                cert.set_index = i;
                cert.sign = signs_[i];
                cert.suffix.assign(seq_.begin() + static_cast<std::ptrdiff_t>(i), seq_.end());
                cert.sums = nonempty_sums(cert.suffix);
                nat_set target = signed_set(sets_[i], signs_[i]);
                for (std::uint64_t s : cert.sums) {
                    if (!target.member(s)) {
                        cert.exact = false;
                        break;
                    }
                }
                w.ns_checks.push_back(std::move(cert));
            }
        }
        std::vector<nat_set> shifts;
        for (std::size_t i = 0; i < signs_.size(); ++i) {
            nat_set base = signed_set(sets_[i], signs_[i]);
            for (std::uint64_t n : fs_[i]) shifts.push_back(shift(base, n));
        }
        w.shift_family_fip = family_eval(append(u_, shifts, {}, "witness shifts"), p_).fip();
        auto sch = generator_schema::shifted(nat_set::nonempty_sums_of(seq_),
                                             nat_set::finite_sums_of(seq_), false, "fs_shift");
        w.fs_family_fip = family_eval(append(u_, {}, {sch}, "witness sums"), p_).fip();
        return w;
    }

    // Close recorded dead ends in Kleene-Brouwer order (= the postorder they
    // were recorded in; the root closes last).  Each closing either finds the
    // shifted intersection already refuted against V, or adds a sums schema
    // built from a complementary witness and re-verifies.  Succeeds once V
    // joined with the target set itself is refuted at bound.
    std::optional<search_extension> phase2() {
        family v = u_;
        auto ve = std::make_shared<family_eval>(v, p_);
        bits awin = big(0, +1).shifted_down(0, b_);
        auto refutes = [&](const bits& x) {
            std::vector<const bits*> e{&x};
            return ve->fip_verdict_with(e, true) == verdict::refuted_at_bound;
        };
        bool done = refutes(awin);
        bool noted_cap = false;
        for (std::size_t di = 0; di < dead_.size() && !done; ++di) {
            const dead_end& de = dead_[di];
            if (refutes(de.astar)) continue;  // already closed against V
            if (stats_.closings >= budget_.max_closings) {
                if (!noted_cap) {
                    stats_.notes.push_back("closing budget reached; later dead ends skipped");
                    noted_cap = true;
                }
                continue;
            }
            auto sprime = complementary_witness(de.astar);
            if (!sprime) continue;
            auto sch = generator_schema::shifted(nat_set::nonempty_sums_of(*sprime),
                                                 nat_set::finite_sums_of(*sprime), false,
                                                 "fs_shift");
            family v2 = append(v, {}, {sch}, "closing");
            auto ve2 = std::make_shared<family_eval>(v2, p_);
            if (ve2->fip().v != verdict::verified_at_bound) continue;
            {
                std::vector<const bits*> e{&de.astar};
                if (ve2->fip_verdict_with(e, true) != verdict::refuted_at_bound) continue;
            }
            v = std::move(v2);
            ve = std::move(ve2);
            ++stats_.closings;
            done = refutes(awin);
        }
        if (!done) return std::nullopt;
        search_extension ext;
        ext.v = v;
        ext.v_fip = ve->fip();
        ext.failure = family_eval(append(v, {sets_[0]}, {}, "refutation"), p_).fip();
        return ext;
    }

    // Bounded DFS for a sums-witness disjoint from the shifted intersection:
    // smallest-first, t elements free then t elements past the tail threshold
    // plus the instance range, so every schema instance keeps t deep elements.
    std::optional<std::vector<std::uint64_t>> complementary_witness(const bits& astar) {
        const std::uint64_t theta = p_.tail_threshold() + p_.max_instance;
        const std::uint64_t need = p_.min_count;
        if (theta >= b_) return std::nullopt;
        std::vector<std::uint64_t> chosen;
        std::vector<bits> avoid;
        avoid.push_back(astar);
        std::uint64_t steps = 0;
        bool out_of_budget = false;
        std::function<bool()> rec = [&]() -> bool {
            std::uint64_t high = 0;
            for (std::uint64_t s : chosen)
                if (s >= theta) ++high;
            if (chosen.size() >= need && high >= need) return true;
            std::uint64_t from = chosen.empty() ? 1 : chosen.back() + 1;
            if (chosen.size() >= need) from = std::max(from, theta);
            for (auto c = next_set_at_least(gen_mask_, &avoid.back(), from); c;
                 c = next_set_at_least(gen_mask_, &avoid.back(), *c + 1)) {
                if (++steps > budget_.max_helper_nodes) {
                    out_of_budget = true;
                    return false;
                }
                bits na = avoid.back();
                na.or_with_self_shifted_down(*c);
                chosen.push_back(*c);
                avoid.push_back(std::move(na));
                if (rec()) return true;
                if (out_of_budget) return false;
                avoid.pop_back();
                chosen.pop_back();
            }
            return false;
        };
        if (!rec()) return std::nullopt;
        return chosen;
    }

    const family& u_;
    std::vector<nat_set> sets_;
    bool exact_ns_;
    bool sign_mode_;
    std::uint32_t target_;
    fip_policy p_;
    search_budget budget_;
    family_eval ev_;
    std::uint64_t b_;
    std::uint64_t wide_;
    std::vector<std::optional<bits>> pos_big_, neg_big_;
    std::vector<bits> level_mask_;
    bits gen_mask_;

    std::vector<std::uint64_t> seq_;
    std::vector<int> signs_;
    std::vector<std::vector<std::uint64_t>> fs_;
    std::vector<std::vector<std::vector<std::uint64_t>>> fs_snap_;
    std::vector<std::vector<bits>> astar_stack_;
    std::vector<bits> extras_;
    std::vector<std::size_t> extras_counts_;
    search_stats stats_;
    std::vector<dead_end> dead_;
};

}  // namespace

search_outcome search_part1(const family& u, const nat_set& a, std::uint32_t m,
                            const fip_policy& p, const search_budget& budget) {
    p.validate();
    engine e(u, {a}, false, false, m, p, budget);
    return e.run();
}

search_outcome search_part2(const family& u, const nat_set& a, std::uint32_t m,
                            const fip_policy& p, const search_budget& budget) {
    p.validate();
    engine e(u, {a}, true, false, m, p, budget);
    return e.run();
}

search_outcome search_iterated(const family& u, const std::vector<nat_set>& as, std::uint32_t m,
                               const fip_policy& p, const search_budget& budget) {
    p.validate();
    if (as.empty()) throw input_error("iterated search needs at least one conditioned set");
    if (m == 0) throw input_error("search target length must be positive");
    std::uint32_t target = static_cast<std::uint32_t>(as.size()) + m - 1;
    engine e(u, as, true, true, target, p, budget);
    return e.run();
}

}  // namespace hindman
