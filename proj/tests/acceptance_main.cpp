// Acceptance gate: nine end-to-end criteria, one pass/fail line each.
// Exit code is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hindman/cli.hpp"
#include "hindman/errors.hpp"

using namespace hindman;

namespace {

struct outcome {
    bool pass = true;
    std::string detail;
    std::string report;  // formatter output, byte-compared by criterion 9
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_secs(double s) {
    std::ostringstream o;
    o << std::fixed << std::setprecision(2) << s << "s";
    return o.str();
}

nat_set residue(std::uint64_t m, std::uint64_t r) {
    auto p = pred_expr::cmp(
        pred_expr::cmp_op::eq,
        arith_expr::bin(arith_expr::kind::mod, arith_expr::var(), arith_expr::lit(m)),
        arith_expr::lit(r));
    return nat_set::predicate(p);
}

// criterion 1: library FS/NS of 1000 random finite sets against an
// independent all-subsets enumerator.
outcome criterion1() {
    outcome o;
    std::mt19937_64 rng(20260818);
    std::uniform_int_distribution<std::uint64_t> val(1, 1000000);
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t len = 1 + static_cast<std::size_t>(rng() % 12);
        std::set<std::uint64_t> seen;
        while (seen.size() < len) seen.insert(val(rng));
        std::vector<std::uint64_t> s(seen.begin(), seen.end());

        std::set<std::uint64_t> ns_ref;
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << len); ++mask) {
            std::uint64_t sum = 0;
            for (std::size_t i = 0; i < len; ++i)
                if (mask & (std::uint64_t{1} << i)) sum += s[i];
            ns_ref.insert(sum);
        }
        std::vector<std::uint64_t> ns_want(ns_ref.begin(), ns_ref.end());
        std::vector<std::uint64_t> fs_want;
        fs_want.push_back(0);
        fs_want.insert(fs_want.end(), ns_want.begin(), ns_want.end());

        if (nonempty_sums(s) != ns_want || finite_sums(s) != fs_want) {
            o.pass = false;
            o.detail = "sum lists diverge at trial " + std::to_string(trial);
            return o;
        }
        nat_set sym = nat_set::nonempty_sums_of(s);
        for (int q = 0; q < 4; ++q) {
            std::uint64_t probe = q < 2 && !ns_want.empty()
                                      ? ns_want[rng() % ns_want.size()]
                                      : val(rng);
            if (sym.member(probe) != (ns_ref.count(probe) > 0)) {
                o.pass = false;
                o.detail = "symbolic membership diverges at trial " + std::to_string(trial);
                return o;
            }
        }
    }
    o.detail = "1000 random sets match the independent enumerator";
    return o;
}

// Independent pair check: does some color class of `digits` hold a, b, a+b?
bool has_pair_witness(const std::string& digits) {
    std::uint64_t n = digits.size();
    for (std::uint64_t a = 1; a <= n; ++a)
        for (std::uint64_t b = a + 1; a + b <= n; ++b)
            if (digits[a - 1] == digits[b - 1] && digits[a - 1] == digits[a + b - 1])
                return true;
    return false;
}

// criterion 2: minimal forcing bound for 2 colors, size-2 witnesses.
outcome criterion2(std::uint32_t jobs) {
    outcome o;
    forcing_result r = min_forcing_bound(2, 2, 12, jobs);
    o.report = format_forcing(r);
    if (!r.min_n || *r.min_n != 9) {
        o.pass = false;
        o.detail = "min_n is not 9";
        return o;
    }
    if (r.extremal_n != 8 || r.extremal_digits != "11212221") {
        o.pass = false;
        o.detail = "extremal coloring is not 11212221 over [1..8]";
        return o;
    }
    if (has_pair_witness(r.extremal_digits)) {
        o.pass = false;
        o.detail = "claimed extremal coloring has a witness";
        return o;
    }
    // Every 2-coloring of [1..9] with color(1)=1 must have a pair witness.
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << 8); ++idx) {
        std::string digits = "1";
        for (int j = 7; j >= 0; --j) digits.push_back(idx & (std::uint64_t{1} << j) ? '2' : '1');
        if (!has_pair_witness(digits)) {
            o.pass = false;
            o.detail = "witness-free coloring of [1..9] found: " + digits;
            return o;
        }
    }
    o.detail = "min_n=9 with extremal 11212221 re-verified exhaustively";
    return o;
}

// criterion 3: bounded machinery vs the exhaustive oracle on every
// 2-coloring of [1..10].
outcome criterion3() {
    outcome o;
    std::uint64_t agree = 0;
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << 10); ++idx) {
        std::vector<std::uint32_t> assign(10);
        for (int j = 0; j < 10; ++j) assign[9 - j] = (idx >> j) & 1 ? 2 : 1;
        coloring c = explicit_coloring(2, assign);
        auto brute = brute_force_witness(c, 2);
        bool found = false;
        try {
            sum_witness w = hindman_witness(c, 2, fip_policy{});
            found = true;
            o.report += format_sum_witness(c, w, fip_policy{});
            if (!verify_witness(c, w.color, w.s)) {
                o.pass = false;
                o.detail = "witness fails verification at coloring " + std::to_string(idx);
                return o;
            }
        } catch (const no_witness_at_bound& e) {
            o.report += format_no_witness(c, e.oracle_cross_check, fip_policy{});
            if (e.oracle_cross_check != 1) {
                o.pass = false;
                o.detail = "oracle cross-check failed at coloring " + std::to_string(idx);
                return o;
            }
        }
        if (brute.has_value() != found) {
            o.pass = false;
            o.detail = "existence disagrees with the oracle at coloring " + std::to_string(idx);
            return o;
        }
        if (brute && !verify_witness(c, brute->color, brute->s)) {
            o.pass = false;
            o.detail = "oracle witness fails verification at coloring " + std::to_string(idx);
            return o;
        }
        ++agree;
    }
    o.detail = "all " + std::to_string(agree) + " colorings agree with the oracle";
    return o;
}

std::vector<std::string> predicate_corpus() {
    std::vector<std::string> ps;
    for (std::uint64_t m = 2; m <= 10; ++m)
        for (std::uint64_t r = 0; r < m; ++r)
            ps.push_back("n % " + std::to_string(m) + " == " + std::to_string(r));
    for (std::uint64_t r = 0; r < 6; ++r) ps.push_back("n % 11 == " + std::to_string(r));
    ps.insert(ps.end(), {"n < 1", "n < 10", "n < 100", "n < 1000", "n > 0", "n > 5", "n > 50",
                         "n > 500", "n <= 64", "n >= 7"});
    ps.insert(ps.end(), {"n % 2 == 0 && n % 3 == 0", "n % 2 == 0 && n % 5 == 0",
                         "n % 3 == 0 && n % 4 == 0", "n % 2 == 0 && n > 10",
                         "n % 3 == 0 && n > 7", "n % 5 == 0 && n >= 20"});
    ps.insert(ps.end(), {"n % 2 == 1 && n % 3 == 1", "n % 2 == 1 && n % 3 == 2",
                         "n % 4 == 2 && n < 5000", "n % 2 == 0 && n < 100",
                         "n % 3 == 1 && n > 10", "n % 2 == 1 && n % 2 == 0"});
    ps.insert(ps.end(), {"!(n % 2 == 0)", "!(n % 2 == 1)", "!(n % 5 == 3)", "!(n % 4 == 1)",
                         "!(n > 100)", "!(n < 50)"});
    ps.insert(ps.end(), {"n % 2 == 0 || n % 2 == 1", "n % 2 == 0 || n > 100",
                         "n % 3 == 0 || n % 3 == 1", "n % 4 == 0 || n % 4 == 2",
                         "n % 2 == 0 || n % 3 == 0", "n % 2 == 1 || n % 6 == 0"});
    ps.insert(ps.end(), {"(n % 2 == 0 || n % 3 == 0) && n > 10", "n - 5 > 10", "n - 10 == 0",
                         "n + 5 < 20", "n * 2 < 100", "n * 3 == n + n + n"});
    return ps;
}

// criterion 4: extend_decide must return a decision for every corpus
// predicate, both sides re-verified independently.
outcome criterion4() {
    outcome o;
    const fip_policy p{};
    auto ps = predicate_corpus();
    if (ps.size() != 100) {
        o.pass = false;
        o.detail = "corpus has " + std::to_string(ps.size()) + " predicates, wanted 100";
        return o;
    }
    std::uint64_t side_a = 0, side_ac = 0;
    for (const auto& text : ps) {
        nat_set a = parse_predicate(text);
        decision d;
        try {
            d = extend_decide(trivial_family(), a, 4, p);
        } catch (const error& e) {
            o.pass = false;
            o.detail = "no decision for '" + text + "': " + e.what();
            return o;
        }
        o.report += format_decision(text, d, a);
        if (d.side_a) {
            ++side_a;
            if (!d.witness || d.witness->s.size() != 4 ||
                d.witness->sums != nonempty_sums(d.witness->s) || !verify_witness(a, d.witness->s)) {
                o.pass = false;
                o.detail = "sums witness for '" + text + "' fails the exact check";
                return o;
            }
        } else {
            ++side_ac;
            if (bounded_fip(append(d.v, {a}), p).v != verdict::refuted_at_bound) {
                o.pass = false;
                o.detail = "V plus A is not refuted for '" + text + "'";
                return o;
            }
            if (tilde_in(complement(a), d.v, p).v != verdict::verified_at_bound) {
                o.pass = false;
                o.detail = "Ac is not tilde-in V for '" + text + "'";
                return o;
            }
        }
    }
    o.detail = std::to_string(side_a) + " witnesses and " + std::to_string(side_ac) +
               " extensions, all re-verified";
    return o;
}

// criterion 5: randomized extension-lemma instances; valid preconditions
// must yield fip-verified families, invalid ones the precondition error.
outcome criterion5() {
    outcome o;
    const fip_policy p{2000, 8, 0.5, 3, 16};
    std::mt19937_64 rng(7001);
    auto rand_explicit = [&](std::uint64_t hi) {
        std::size_t len = 1 + static_cast<std::size_t>(rng() % 7);
        std::set<std::uint64_t> seen;
        while (seen.size() < len) seen.insert(1 + rng() % hi);
        return nat_set::explicit_finite({seen.begin(), seen.end()});
    };
    auto fat_set = [&]() {
        switch (rng() % 3) {
            case 0: return residue(2 + rng() % 8, 0);
            case 1: return nat_set::tail(rng() % 500);
            default: return complement(rand_explicit(100));
        }
    };
    auto check_valid = [&](const char* lemma, const std::function<family()>& go) {
        try {
            family v = go();
            if (bounded_fip(v, p).v != verdict::verified_at_bound) {
                o.pass = false;
                o.detail = std::string(lemma) + ": extension fails bounded fip";
            }
        } catch (const error& e) {
            o.pass = false;
            o.detail = std::string(lemma) + ": valid instance threw: " + e.what();
        }
        return o.pass;
    };
    auto check_invalid = [&](const char* lemma, const std::function<family()>& go) {
        try {
            go();
            o.pass = false;
            o.detail = std::string(lemma) + ": invalid instance was accepted";
        } catch (const precondition_not_witnessed&) {
            return true;
        } catch (const error& e) {
            o.pass = false;
            o.detail = std::string(lemma) + ": wrong rejection: " + e.what();
        }
        return o.pass;
    };

    for (int i = 0; i < 100; ++i) {
        family u = i % 2 ? frechet_family() : trivial_family();
        nat_set a = rand_explicit(1500);
        if (!check_valid("ext1", [&] { return extend_after_fip_failure(u, a, p); })) return o;
    }
    for (int i = 0; i < 34; ++i) {
        family u = i % 2 ? frechet_family() : trivial_family();
        nat_set a = fat_set();
        if (!check_invalid("ext1", [&] { return extend_after_fip_failure(u, a, p); })) return o;
    }

    for (int i = 0; i < 100; ++i) {
        family u = frechet_family();
        if (i % 2) {
            // pairwise-disjoint shifts: A meets A-n in nothing for sampled n
            std::uint64_t w = 4 + rng() % 9;
            std::uint64_t c = w + rng() % (16 - w);
            std::uint64_t bigp = 64 + rng() % 137;
            std::uint64_t off = rng() % bigp;
            auto pr = pred_expr::cmp(
                pred_expr::cmp_op::lt,
                arith_expr::bin(arith_expr::kind::mod,
                                arith_expr::bin(arith_expr::kind::add, arith_expr::var(),
                                                arith_expr::lit(off)),
                                arith_expr::lit(bigp)),
                arith_expr::lit(w));
            nat_set a = nat_set::predicate(pr);
            if (!check_valid("ext2", [&] {
                    family v = extend_after_pair_failure(u, a, nat_set::tail(c), p);
                    if (v.schemas.back().include_zero)
                        throw error("pair path was expected, fallback taken");
                    return v;
                }))
                return o;
        } else {
            nat_set a = rand_explicit(1500);
            std::uint64_t c = 1 + rng() % 15;
            if (!check_valid("ext2", [&] {
                    family v = extend_after_pair_failure(u, a, nat_set::tail(c), p);
                    if (!v.schemas.back().include_zero)
                        throw error("fallback path was expected");
                    return v;
                }))
                return o;
        }
    }
    for (int i = 0; i < 20; ++i) {
        // a sampled pair survives: A meets A-c fat for c below the width
        std::uint64_t w = 4 + rng() % 9;
        std::uint64_t c = 1 + rng() % (w - 1);
        std::uint64_t bigp = 64 + rng() % 137;
        auto pr = pred_expr::cmp(
            pred_expr::cmp_op::lt,
            arith_expr::bin(arith_expr::kind::mod, arith_expr::var(), arith_expr::lit(bigp)),
            arith_expr::lit(w));
        nat_set a = nat_set::predicate(pr);
        if (!check_invalid("ext2", [&] {
                return extend_after_pair_failure(frechet_family(), a, nat_set::tail(c), p);
            }))
            return o;
    }
    for (int i = 0; i < 13; ++i) {
        nat_set y = residue(2, rng() % 2);
        if (!check_invalid("ext2", [&] {
                return extend_after_pair_failure(frechet_family(), rand_explicit(1500), y, p);
            }))
            return o;
    }

    for (int i = 0; i < 100; ++i) {
        std::size_t x_index = rng() % 16;
        nat_set a = i % 2 ? nat_set::tail(rng() % 16)
                          : complement(rand_explicit(14));
        if (!check_valid("ext3", [&] {
                return extend_by_membership(frechet_family(), a, x_index, p);
            }))
            return o;
    }
    for (int i = 0; i < 33; ++i) {
        nat_set a = i % 2 ? residue(2 + rng() % 8, 1 + rng() % 2) : rand_explicit(100);
        if (!check_invalid("ext3", [&] {
                return extend_by_membership(frechet_family(), a, rng() % 16, p);
            }))
            return o;
    }
    o.detail = "300 valid extensions verified, 100 invalid rejected";
    return o;
}

// criterion 6: semigroup check across bounds.
outcome criterion6() {
    outcome o;
    family ev, od;
    ev.generators.push_back(residue(2, 0));
    od.generators.push_back(residue(2, 1));
    for (std::uint64_t b : {100, 1000, 10000}) {
        fip_policy p{b, 8, 0.5, 3, 64};
        if (check_semigroup(frechet_family(), p).overall != verdict::verified_at_bound) {
            o.pass = false;
            o.detail = "frechet not verified at bound " + std::to_string(b);
            return o;
        }
        if (check_semigroup(ev, p).overall != verdict::verified_at_bound) {
            o.pass = false;
            o.detail = "evens not verified at bound " + std::to_string(b);
            return o;
        }
        auto rep = check_semigroup(od, p);
        if (rep.overall != verdict::refuted_at_bound || !rep.items[0].counterexample ||
            *rep.items[0].counterexample != 1) {
            o.pass = false;
            o.detail = "odds not refuted with counterexample 1 at bound " + std::to_string(b);
            return o;
        }
    }
    o.detail = "frechet and evens verified, odds refuted, at bounds 100/1000/10000";
    return o;
}

// criterion 7: Kleene-Brouwer sort equals increasing-child DFS postorder on
// random finite trees.
outcome criterion7() {
    outcome o;
    std::mt19937_64 rng(7007);
    using node = std::vector<std::uint64_t>;
    for (int t = 0; t < 50; ++t) {
        std::size_t size = 2 + static_cast<std::size_t>(rng() % 499);
        std::set<node> nodes;
        std::vector<node> pool;
        nodes.insert(node{});
        pool.push_back(node{});
        while (nodes.size() < size) {
            node child = pool[rng() % pool.size()];
            child.push_back(1 + rng() % 1000);
            if (nodes.insert(child).second) pool.push_back(child);
        }
        std::map<node, std::vector<std::uint64_t>> children;
        for (const auto& nd : nodes) {
            if (nd.empty()) continue;
            node parent(nd.begin(), nd.end() - 1);
            children[parent].push_back(nd.back());
        }
        for (auto& [_, cs] : children) std::sort(cs.begin(), cs.end());
        std::vector<node> post;
        std::function<void(const node&)> visit = [&](const node& nd) {
            auto it = children.find(nd);
            if (it != children.end()) {
                for (std::uint64_t c : it->second) {
                    node ch = nd;
                    ch.push_back(c);
                    visit(ch);
                }
            }
            post.push_back(nd);
        };
        visit({});
        std::vector<node> sorted(nodes.begin(), nodes.end());
        std::sort(sorted.begin(), sorted.end(),
                  [](const node& a, const node& b) { return kb_compare(a, b) < 0; });
        if (sorted != post) {
            o.pass = false;
            o.detail = "orders diverge on tree " + std::to_string(t);
            return o;
        }
    }
    o.detail = "50 random trees sort into DFS postorder";
    return o;
}

// criterion 8: iterated decision with per-suffix exact re-verification.
outcome criterion8() {
    outcome o;
    const fip_policy p{};
    std::vector<nat_set> as{residue(2, 0), residue(3, 0)};
    iterated_decision d = iterated_decide(trivial_family(), as, 4, p);
    o.report = format_iterated({"n % 2 == 0", "n % 3 == 0"}, d, as);
    if (d.witness.s.size() != 5 || d.witness.signs.size() != 2 ||
        d.witness.certificates.size() != 2) {
        o.pass = false;
        o.detail = "witness shape is wrong";
        return o;
    }
    for (std::size_t i = 0; i < as.size(); ++i) {
        const auto& cert = d.witness.certificates[i];
        std::vector<std::uint64_t> suffix(d.witness.s.begin() + static_cast<std::ptrdiff_t>(i),
                                          d.witness.s.end());
        nat_set target = signed_set(as[i], d.witness.signs[i]);
        if (cert.suffix != suffix || cert.sums != nonempty_sums(suffix) || !cert.exact ||
            !verify_witness(target, suffix)) {
            o.pass = false;
            o.detail = "suffix " + std::to_string(i + 1) + " fails the exact NS check";
            return o;
        }
        for (std::uint64_t t : cert.sums) {
            if (!target.member(t)) {
                o.pass = false;
                o.detail = "sum " + std::to_string(t) + " leaves the signed set";
                return o;
            }
        }
        if (d.witness.tilde_certs[i].v != verdict::verified_at_bound) {
            o.pass = false;
            o.detail = "tilde certificate " + std::to_string(i + 1) + " not verified";
            return o;
        }
    }
    o.detail = "witness " + std::to_string(d.witness.s.front()) + ".." +
               std::to_string(d.witness.s.back()) + " with both suffixes re-verified";
    return o;
}

}  // namespace

int main() {
    int failures = 0;
    std::map<int, outcome> results;
    auto run_criterion = [&](int idx, double limit, const std::function<outcome()>& fn) {
        auto t0 = std::chrono::steady_clock::now();
        outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("unexpected exception: ") + e.what();
        }
        double el = seconds_since(t0);
        if (o.pass && limit > 0 && el > limit) {
            o.pass = false;
            o.detail = "over the " + fmt_secs(limit) + " budget";
        }
        std::cout << "criterion " << idx << ": " << (o.pass ? "pass" : "FAIL") << " ("
                  << fmt_secs(el) << ") " << o.detail << "\n";
        std::cout.flush();
        if (!o.pass) ++failures;
        results[idx] = std::move(o);
    };

    run_criterion(1, 10, criterion1);
    run_criterion(2, 60, [] { return criterion2(1); });
    run_criterion(3, 300, criterion3);
    run_criterion(4, 600, criterion4);
    run_criterion(5, 0, criterion5);
    run_criterion(6, 0, criterion6);
    run_criterion(7, 0, criterion7);
    run_criterion(8, 60, criterion8);

    run_criterion(9, 0, [&] {
        outcome o;
        outcome c2a = criterion2(1), c2b = criterion2(4);
        if (!c2a.pass || !c2b.pass || c2a.report != results[2].report ||
            c2b.report != results[2].report) {
            o.pass = false;
            o.detail = "forcing report differs across reruns or jobs 1 vs 4";
            return o;
        }
        if (criterion3().report != results[3].report) {
            o.pass = false;
            o.detail = "coloring reports differ across reruns";
            return o;
        }
        if (criterion4().report != results[4].report) {
            o.pass = false;
            o.detail = "decision reports differ across reruns";
            return o;
        }
        if (criterion8().report != results[8].report) {
            o.pass = false;
            o.detail = "iterated report differs across reruns";
            return o;
        }
        o.detail = "criteria 2-4 and 8 reports byte-identical across reruns and jobs 1 vs 4";
        return o;
    });

    return failures;
}
