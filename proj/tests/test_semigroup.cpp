#include <doctest.h>

#include <cstdint>
#include <vector>

#include "hindman/errors.hpp"
#include "hindman/semigroup.hpp"

using namespace hindman;

namespace {

const fip_policy small_policy{1000, 8, 0.5, 3, 16};

nat_set residue(std::uint64_t m, std::uint64_t r) {
    auto p = pred_expr::cmp(
        pred_expr::cmp_op::eq,
        arith_expr::bin(arith_expr::kind::mod, arith_expr::var(), arith_expr::lit(m)),
        arith_expr::lit(r));
    return nat_set::predicate(p);
}

nat_set mod_below(std::uint64_t m, std::uint64_t w) {
    auto p = pred_expr::cmp(
        pred_expr::cmp_op::lt,
        arith_expr::bin(arith_expr::kind::mod, arith_expr::var(), arith_expr::lit(m)),
        arith_expr::lit(w));
    return nat_set::predicate(p);
}

}  // namespace

TEST_CASE("frechet family is a semigroup at bound") {
    auto rep = check_semigroup(frechet_family(), small_policy);
    CHECK(rep.overall == verdict::verified_at_bound);
    CHECK(rep.fip.v == verdict::verified_at_bound);
    REQUIRE(rep.items.size() == 16);
    CHECK(rep.items[2].label == "s0(n=2)");
    CHECK(rep.items[2].n_range == 1000);
    for (const auto& e : rep.items) {
        CHECK(e.v == verdict::verified_at_bound);
        CHECK_FALSE(e.counterexample.has_value());
    }
}

TEST_CASE("evens close under shifted membership, odds do not") {
    family ev;
    ev.generators.push_back(residue(2, 0));
    auto rep_e = check_semigroup(ev, small_policy);
    CHECK(rep_e.overall == verdict::verified_at_bound);
    REQUIRE(rep_e.items.size() == 1);
    CHECK(rep_e.items[0].v == verdict::verified_at_bound);
    CHECK(rep_e.items[0].witness_y == std::vector<std::size_t>{0});

    family od;
    od.generators.push_back(residue(2, 1));
    auto rep_o = check_semigroup(od, small_policy);
    CHECK(rep_o.overall == verdict::refuted_at_bound);
    REQUIRE(rep_o.items.size() == 1);
    CHECK(rep_o.items[0].v == verdict::refuted_at_bound);
    REQUIRE(rep_o.items[0].counterexample.has_value());
    CHECK(*rep_o.items[0].counterexample == 1);
}

TEST_CASE("extension after fip failure appends a verified complement schema") {
    family u = trivial_family();
    nat_set a = nat_set::explicit_finite({1, 2, 3});
    family v = extend_after_fip_failure(u, a, small_policy);
    CHECK(v.generators.size() == u.generators.size());
    REQUIRE(v.schemas.size() == u.schemas.size() + 1);
    CHECK(v.schemas.back().include_zero);
    CHECK(bounded_fip(v, small_policy).v == verdict::verified_at_bound);
    CHECK(tilde_in(complement(a), v, small_policy).v == verdict::verified_at_bound);
}

TEST_CASE("extension after fip failure needs a failing part") {
    CHECK_THROWS_AS(extend_after_fip_failure(trivial_family(), residue(2, 0), small_policy),
                    precondition_not_witnessed);
}

TEST_CASE("pair extension demands Y tilde-in U") {
    CHECK_THROWS_AS(
        extend_after_pair_failure(frechet_family(), nat_set::explicit_finite({1, 2, 3}),
                                  residue(2, 0), small_policy),
        y_not_in_family_tilde);
}

TEST_CASE("pair extension on sampled pair failures appends an instance-only schema") {
    // a meets a-n in the empty set for every sampled n in [10,16).
    family u = frechet_family();
    nat_set a = mod_below(80, 6);
    family v = extend_after_pair_failure(u, a, nat_set::tail(10), small_policy);
    CHECK(v.generators.size() == u.generators.size());
    REQUIRE(v.schemas.size() == u.schemas.size() + 1);
    CHECK_FALSE(v.schemas.back().include_zero);
    CHECK(bounded_fip(v, small_policy).v == verdict::verified_at_bound);
}

TEST_CASE("pair extension rejects a surviving sampled pair") {
    // n = 2 keeps a meet a-2 fat, so the pair premise is not witnessed.
    CHECK_THROWS_AS(
        extend_after_pair_failure(frechet_family(), mod_below(80, 6), nat_set::tail(2),
                                  small_policy),
        precondition_not_witnessed);
}

TEST_CASE("pair extension falls back when U plus A already fails") {
    family u = frechet_family();
    family v = extend_after_pair_failure(u, nat_set::explicit_finite({1, 2, 3}),
                                         nat_set::tail(3), small_policy);
    REQUIRE(v.schemas.size() == u.schemas.size() + 1);
    CHECK(v.schemas.back().include_zero);  // the ext1 path keeps the n=0 instance
}

TEST_CASE("membership extension joins A as a generator") {
    family u = frechet_family();
    family v = extend_by_membership(u, nat_set::tail(7), 2, small_policy);
    REQUIRE(v.generators.size() == 1);
    CHECK(v.schemas.size() == u.schemas.size());
    CHECK(bounded_fip(v, small_policy).v == verdict::verified_at_bound);
}

TEST_CASE("membership extension rejects a non-tilde shift") {
    CHECK_THROWS_AS(extend_by_membership(frechet_family(), residue(2, 0), 2, small_policy),
                    precondition_not_witnessed);
}

TEST_CASE("membership extension rejects an out-of-range item") {
    CHECK_THROWS_AS(extend_by_membership(frechet_family(), nat_set::tail(7), 99, small_policy),
                    unknown_generator);
}
