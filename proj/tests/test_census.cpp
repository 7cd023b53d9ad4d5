#include <doctest.h>

#include "oracles.hpp"
#include "resorder/census.hpp"
#include "resorder/errors.hpp"

using namespace resorder;

namespace {

FactoredNat factor_of(std::uint64_t m) { return factor_trial(m); }

}  // namespace

TEST_SUITE("census") {

TEST_CASE("multiplicative_order basics") {
  CHECK(multiplicative_order(2, 7, factor_of(6)) == 3);
  CHECK(test_oracle::scan_order(2, 7) == 3);
  CHECK(multiplicative_order(8, 7, factor_of(6)) == 1);    // 8 = 1 mod 7
  CHECK(multiplicative_order(10, 3, factor_of(2)) == 1);   // 10 = 1 mod 3
  CHECK_THROWS_AS(multiplicative_order(14, 7, factor_of(6)), domain_error);
}

TEST_CASE("multiplicative_order against the scan oracle") {
  for (std::uint64_t p : {101ull, 997ull, 1999ull})
    for (std::uint64_t a = 2; a <= 12; ++a) {
      if (a % p == 0) continue;
      CHECK(multiplicative_order(a, p, factor_of(p - 1)) ==
            test_oracle::scan_order(a, p));
    }
}

TEST_CASE("multiplicative_order at a large prime") {
  const std::uint64_t p = 9999991;
  REQUIRE(test_oracle::trial_is_prime(p));
  const FactoredNat pm1 = factor_of(p - 1);
  for (std::uint64_t a : {2ull, 3ull, 5ull})
    CHECK(multiplicative_order(a, p, pm1) == test_oracle::scan_order(a, p));
}

TEST_CASE("classify_mod4") {
  CHECK(classify_mod4(12) == 0);
  CHECK(classify_mod4(5) == 1);
  CHECK(classify_mod4(3) == 3);
  CHECK(classify_mod4(1) == 1);
  CHECK(classify_mod4(2) == 2);
}

TEST_CASE("census equals the brute-force census") {
  SUBCASE("a=5, x=100") {
    const OrderCensus c = census(5, 100);
    const auto brute = test_oracle::brute_census(5, 100);
    CHECK(c.counts == brute.counts);
    CHECK(c.excluded_count == brute.excluded);
    CHECK(c.total_primes == brute.total);
    CHECK(c.total_primes == 25);
  }
  SUBCASE("x=2000 for a in {2,3,5,6,10}") {
    for (std::uint64_t a : {2ull, 3ull, 5ull, 6ull, 10ull}) {
      const OrderCensus c = census(a, 2000);
      const auto brute = test_oracle::brute_census(a, 2000);
      CHECK(c.counts == brute.counts);
      CHECK(c.excluded_count == brute.excluded);
      CHECK(c.total_primes == 303);
    }
  }
}

TEST_CASE("partition identity") {
  for (std::uint64_t a : {2ull, 6ull, 12ull, 49ull}) {  // perfect powers allowed here
    const OrderCensus c = census(a, 5000);
    CHECK(c.counts[0] + c.counts[1] + c.counts[2] + c.counts[3] +
              c.excluded_count == c.total_primes);
    CHECK(c.excluded_count >= 1);
  }
}

TEST_CASE("worker count does not change the result") {
  const OrderCensus base = census(6, 100'000, 1);
  for (unsigned w : {2u, 4u, 8u}) CHECK(census(6, 100'000, w) == base);
}

TEST_CASE("counts grow monotonically in x") {
  const OrderCensus small = census(2, 100'000);
  const OrderCensus large = census(2, 1'000'000);
  for (int l = 0; l < 4; ++l) CHECK(small.counts[l] <= large.counts[l]);
  CHECK(small.total_primes == 9592);
  CHECK(large.total_primes == 78498);
}

TEST_CASE("empirical_density") {
  OrderCensus c;
  c.counts = {1, 2, 3, 4};
  c.excluded_count = 1;
  c.total_primes = 11;
  CHECK(empirical_density(c, 3) == doctest::Approx(4.0 / 11.0).epsilon(1e-12));
  CHECK_THROWS_AS(empirical_density(c, 4), precondition_error);
}

TEST_CASE("census preconditions") {
  CHECK_THROWS_AS(census(1, 100), precondition_error);
  CHECK_THROWS_AS(census(2, 2), precondition_error);
  CHECK_THROWS_AS(census(2, 100, 0), precondition_error);
  CHECK_THROWS_AS(census(2, kSpfTableCap + 1), resource_error);
}

}  // TEST_SUITE
