#include <doctest.h>

#include <cstdint>
#include <vector>

#include "hindman/errors.hpp"
#include "hindman/oracle.hpp"

using namespace hindman;

namespace {

coloring parity(std::uint64_t n) {
    std::vector<std::uint32_t> a(n);
    for (std::uint64_t j = 1; j <= n; ++j) a[j - 1] = j % 2 == 0 ? 2 : 1;
    return explicit_coloring(2, std::move(a));
}

coloring mod3(std::uint64_t n) {
    std::vector<std::uint32_t> a(n);
    for (std::uint64_t j = 1; j <= n; ++j) a[j - 1] = static_cast<std::uint32_t>(j % 3) + 1;
    return explicit_coloring(3, std::move(a));
}

}  // namespace

TEST_CASE("set witnesses are checked sum by sum") {
    nat_set evens = nat_set::predicate(pred_expr::cmp(
        pred_expr::cmp_op::eq,
        arith_expr::bin(arith_expr::kind::mod, arith_expr::var(), arith_expr::lit(2)),
        arith_expr::lit(0)));
    CHECK(verify_witness(evens, {2, 4, 6}));
    CHECK_FALSE(verify_witness(evens, {2, 3}));
    CHECK_FALSE(verify_witness(evens, {4, 2}));  // not increasing
    CHECK_FALSE(verify_witness(evens, {0, 2}));  // not positive
    CHECK_FALSE(verify_witness(nat_set::everything(), {}));  // empty S never counts
}

TEST_CASE("coloring witnesses must stay inside the domain") {
    auto c = parity(12);
    CHECK(verify_witness(c, 2, {2, 4}));
    CHECK_FALSE(verify_witness(c, 1, {2, 4}));
    CHECK_THROWS_AS(verify_witness(c, 2, {8, 10}), input_error);  // 18 > 12
}

TEST_CASE("brute force witness search") {
    auto w = brute_force_witness(parity(12), 2);
    REQUIRE(w.has_value());
    CHECK(w->s == std::vector<std::uint64_t>{2, 4});
    CHECK(w->color == 2);
    CHECK_FALSE(brute_force_witness(parity(5), 2).has_value());
    auto w3 = brute_force_witness(mod3(9), 2);
    REQUIRE(w3.has_value());
    CHECK(w3->s == std::vector<std::uint64_t>{3, 6});
    CHECK(w3->color == 1);
    CHECK_FALSE(brute_force_witness(explicit_coloring(2, {1, 1, 2, 1, 2, 2, 2, 1}), 2)
                    .has_value());
}

TEST_CASE("minimal forcing bound for two colors and pairs") {
    auto r = min_forcing_bound(2, 2, 12);
    REQUIRE(r.min_n.has_value());
    CHECK(*r.min_n == 9);
    CHECK(r.extremal_n == 8);
    CHECK(r.extremal_digits == "11212221");
}

TEST_CASE("forcing scan is independent of the job split") {
    auto base = min_forcing_bound(2, 2, 10, 1);
    for (std::uint32_t jobs : {2u, 4u}) {
        auto r = min_forcing_bound(2, 2, 10, jobs);
        CHECK(r.min_n == base.min_n);
        CHECK(r.extremal_n == base.extremal_n);
        CHECK(r.extremal_digits == base.extremal_digits);
    }
}

TEST_CASE("forcing bound edge cases") {
    auto single = min_forcing_bound(1, 2, 10);
    REQUIRE(single.min_n.has_value());
    CHECK(*single.min_n == 3);
    CHECK(single.extremal_n == 2);
    CHECK(single.extremal_digits == "11");

    auto trivially = min_forcing_bound(2, 1, 5);
    REQUIRE(trivially.min_n.has_value());
    CHECK(*trivially.min_n == 1);
    CHECK(trivially.extremal_digits.empty());

    auto hopeless = min_forcing_bound(9, 2, 3);
    CHECK_FALSE(hopeless.min_n.has_value());
    CHECK(hopeless.extremal_n == 3);
    CHECK(hopeless.extremal_digits == "112");
}
