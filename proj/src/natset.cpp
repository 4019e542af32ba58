#include "hindman/natset.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <unordered_map>

#include "hindman/bits.hpp"
#include "hindman/errors.hpp"

namespace hindman {

namespace {

// Exact-enumeration ceiling for the list-returning finite_sums: a DP window
// this wide (bits) is always affordable; larger requests must have few
// elements so direct subset enumeration stays exact.
constexpr std::uint64_t fs_list_window = std::uint64_t{1} << 26;
// Membership window kept by the finite-sums set variant.
constexpr std::uint64_t fs_member_window = std::uint64_t{1} << 22;

void require_increasing_positive(const std::vector<std::uint64_t>& base) {
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (base[i] < 1) throw input_error("finite-sums base elements must be >= 1");
        if (i && base[i] <= base[i - 1])
            throw input_error("finite-sums base must be strictly increasing");
    }
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = a + b;
    return r < a ? std::numeric_limits<std::uint64_t>::max() : r;
}

}  // namespace

struct nat_set::node {
    kind k = kind::explicit_finite;
    std::size_t size = 1;
    std::vector<std::uint64_t> elems;  // explicit_finite elements / finite_sums base
    std::uint64_t param = 0;           // tail start / shift offset
    pred_expr pred;                    // predicate only
    std::vector<nat_set> kids;
    // finite_sums: set bits are the subset sums below fs_cap; queries at or
    // beyond the window fall back to exact branch-and-bound over the base.
    bits fs_window;
    std::uint64_t fs_cap = 0;
    std::vector<std::uint64_t> suffix_total;  // suffix_total[i] = sum of elems[i..]
    // computed
    std::string label;
    std::function<bool(std::uint64_t)> fn;
    mutable std::mutex memo_mu;
    mutable std::unordered_map<std::uint64_t, bool> memo;
};

namespace {

std::shared_ptr<nat_set::node> mk(nat_set::kind k) {
    auto p = std::make_shared<nat_set::node>();
    p->k = k;
    return p;
}

std::size_t combined_size(const std::vector<nat_set>& kids) {
    std::size_t s = 1;
    for (const auto& x : kids) {
        s += x.node_count();
        if (s > max_expression_nodes)
            throw expression_limit_error("set expression exceeds " +
                                         std::to_string(max_expression_nodes) + " nodes");
    }
    return s;
}

bool fs_beyond_window(const std::vector<std::uint64_t>& base,
                      const std::vector<std::uint64_t>& suffix_total, std::size_t i,
                      std::uint64_t target) {
    // Exact subset-sum decision, pruned by remaining totals.
    if (target == 0) return true;
    if (i == base.size() || target > suffix_total[i]) return false;
    if (base[i] <= target && fs_beyond_window(base, suffix_total, i + 1, target - base[i]))
        return true;
    return fs_beyond_window(base, suffix_total, i + 1, target);
}

}  // namespace

nat_set::nat_set() : node_(mk(kind::explicit_finite)) {}

nat_set nat_set::explicit_finite(std::vector<std::uint64_t> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    auto p = mk(kind::explicit_finite);
    p->elems = std::move(elems);
    nat_set x;
    x.node_ = std::move(p);
    return x;
}

nat_set nat_set::tail(std::uint64_t k) {
    auto p = mk(kind::tail);
    p->param = k;
    nat_set x;
    x.node_ = std::move(p);
    return x;
}

nat_set nat_set::everything() { return tail(0); }

nat_set nat_set::empty() { return nat_set{}; }

nat_set nat_set::predicate(pred_expr q) {
    auto p = mk(kind::predicate);
    p->pred = std::move(q);
    nat_set x;
    x.node_ = std::move(p);
    return x;
}

nat_set nat_set::finite_sums_of(std::vector<std::uint64_t> base) {
    require_increasing_positive(base);
    auto p = mk(kind::finite_sums);
    std::uint64_t total = 0;
    p->suffix_total.assign(base.size() + 1, 0);
    for (std::size_t i = base.size(); i-- > 0;)
        p->suffix_total[i] = sat_add(p->suffix_total[i + 1], base[i]);
    total = p->suffix_total.empty() ? 0 : p->suffix_total[0];
    p->fs_cap = std::min(sat_add(total, 1), fs_member_window);
    p->fs_window = bits(p->fs_cap);
    p->fs_window.set(0);
    for (std::uint64_t s : base) p->fs_window.or_with_self_shifted_up(s);
    p->elems = std::move(base);
    nat_set x;
    x.node_ = std::move(p);
    return x;
}

nat_set nat_set::nonempty_sums_of(std::vector<std::uint64_t> base) {
    return intersect({finite_sums_of(std::move(base)), tail(1)});
}

nat_set nat_set::computed(std::string label, std::function<bool(std::uint64_t)> fn) {
    auto p = mk(kind::computed);
    p->label = std::move(label);
    p->fn = std::move(fn);
    nat_set x;
    x.node_ = std::move(p);
    return x;
}

nat_set::kind nat_set::which() const { return node_->k; }

std::size_t nat_set::node_count() const { return node_->size; }

bool nat_set::member(std::uint64_t n) const {
    const node* p = node_.get();
    switch (p->k) {
        case kind::explicit_finite:
            return std::binary_search(p->elems.begin(), p->elems.end(), n);
        case kind::tail:
            return n >= p->param;
        case kind::predicate:
            return p->pred.eval(n);
        case kind::shifted:
            return p->kids[0].member(sat_add(n, p->param));
        case kind::complemented:
            return !p->kids[0].member(n);
        case kind::intersection:
            for (const auto& x : p->kids)
                if (!x.member(n)) return false;
            return true;
        case kind::union_set:
            for (const auto& x : p->kids)
                if (x.member(n)) return true;
            return false;
        case kind::finite_sums:
            if (n < p->fs_cap) return p->fs_window.test(n);
            return fs_beyond_window(p->elems, p->suffix_total, 0, n);
        case kind::computed: {
            std::lock_guard<std::mutex> lock(p->memo_mu);
            auto it = p->memo.find(n);
            if (it != p->memo.end()) return it->second;
            bool v = p->fn(n);
            p->memo.emplace(n, v);
            return v;
        }
    }
    return false;
}

std::vector<std::uint64_t> nat_set::enumerate(std::uint64_t bound) const {
    const node* p = node_.get();
    std::vector<std::uint64_t> out;
    if (p->k == kind::explicit_finite) {
        for (std::uint64_t e : p->elems) {
            if (e >= bound) break;
            out.push_back(e);
        }
        return out;
    }
    if (p->k == kind::tail) {
        for (std::uint64_t n = p->param; n < bound; ++n) out.push_back(n);
        return out;
    }
    for (std::uint64_t n = 0; n < bound; ++n)
        if (member(n)) out.push_back(n);
    return out;
}

std::string nat_set::to_string() const {
    const node* p = node_.get();
    switch (p->k) {
        case kind::explicit_finite: {
            std::string s = "{";
            for (std::size_t i = 0; i < p->elems.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(p->elems[i]);
            }
            return s + "}";
        }
        case kind::tail:
            return "[" + std::to_string(p->param) + ",oo)";
        case kind::predicate:
            return "{n : " + p->pred.to_string() + "}";
        case kind::shifted:
            return "(" + p->kids[0].to_string() + " - " + std::to_string(p->param) + ")";
        case kind::complemented:
            return "~" + p->kids[0].to_string();
        case kind::intersection:
        case kind::union_set: {
            std::string s = p->k == kind::intersection ? "inter(" : "union(";
            for (std::size_t i = 0; i < p->kids.size(); ++i) {
                if (i) s += ", ";
                s += p->kids[i].to_string();
            }
            return s + ")";
        }
        case kind::finite_sums: {
            std::string s = "FS{";
            for (std::size_t i = 0; i < p->elems.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(p->elems[i]);
            }
            return s + "}";
        }
        case kind::computed:
            return "<" + p->label + ">";
    }
    return "?";
}

nat_set shift(const nat_set& x, std::uint64_t n) {
    if (n == 0) return x;
    const auto k = x.which();
    switch (k) {
        case nat_set::kind::explicit_finite: {
            std::vector<std::uint64_t> elems;
            for (std::uint64_t e : x.node_->elems)
                if (e >= n) elems.push_back(e - n);
            return nat_set::explicit_finite(std::move(elems));
        }
        case nat_set::kind::tail:
            return nat_set::tail(x.node_->param > n ? x.node_->param - n : 0);
        case nat_set::kind::shifted:
            return shift(x.node_->kids[0], sat_add(x.node_->param, n));
        case nat_set::kind::complemented:
            return complement(shift(x.node_->kids[0], n));
        case nat_set::kind::intersection:
        case nat_set::kind::union_set: {
            std::vector<nat_set> kids;
            kids.reserve(x.node_->kids.size());
            for (const auto& kid : x.node_->kids) kids.push_back(shift(kid, n));
            return k == nat_set::kind::intersection ? intersect(std::move(kids))
                                                    : unite(std::move(kids));
        }
        default: {
            auto p = mk(nat_set::kind::shifted);
            p->param = n;
            p->kids = {x};
            p->size = combined_size(p->kids);
            nat_set out;
            out.node_ = std::move(p);
            return out;
        }
    }
}

nat_set complement(const nat_set& x) {
    if (x.which() == nat_set::kind::complemented) return x.node_->kids[0];
    auto p = mk(nat_set::kind::complemented);
    p->kids = {x};
    p->size = combined_size(p->kids);
    nat_set out;
    out.node_ = std::move(p);
    return out;
}

nat_set intersect(std::vector<nat_set> xs) {
    if (xs.empty()) return nat_set::everything();
    if (xs.size() == 1) return xs[0];
    auto p = mk(nat_set::kind::intersection);
    p->kids = std::move(xs);
    p->size = combined_size(p->kids);
    nat_set out;
    out.node_ = std::move(p);
    return out;
}

nat_set unite(std::vector<nat_set> xs) {
    if (xs.empty()) return nat_set::empty();
    if (xs.size() == 1) return xs[0];
    auto p = mk(nat_set::kind::union_set);
    p->kids = std::move(xs);
    p->size = combined_size(p->kids);
    nat_set out;
    out.node_ = std::move(p);
    return out;
}

nat_set signed_set(const nat_set& a, int b) {
    if (b == 1) return a;
    if (b == -1) return complement(a);
    throw input_error("sign must be +1 or -1");
}

std::vector<std::uint64_t> finite_sums(const std::vector<std::uint64_t>& base) {
    require_increasing_positive(base);
    std::uint64_t total = 0;
    for (std::uint64_t s : base) total = sat_add(total, s);
    std::vector<std::uint64_t> out;
    if (total < fs_list_window) {
        bits dp(total + 1);
        dp.set(0);
        for (std::uint64_t s : base) dp.or_with_self_shifted_up(s);
        for (std::uint64_t n = 0; n <= total; ++n)
            if (dp.test(n)) out.push_back(n);
        return out;
    }
    if (base.size() > 22)
        throw input_error("finite-sums base too large to enumerate exactly");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << base.size()); ++mask) {
        std::uint64_t sum = 0;
        for (std::size_t i = 0; i < base.size(); ++i)
            if (mask >> i & 1) sum = sat_add(sum, base[i]);
        out.push_back(sum);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::uint64_t> nonempty_sums(const std::vector<std::uint64_t>& base) {
    auto out = finite_sums(base);
    if (!out.empty() && out.front() == 0) out.erase(out.begin());
    return out;
}

}  // namespace hindman
