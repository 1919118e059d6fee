#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "pbratio/error.hpp"
#include "pbratio/oracle.hpp"
#include "pbratio/pmf.hpp"
#include "support/generators.hpp"

using pbratio::ParameterVector;
namespace oracle = pbratio::oracle;

TEST_CASE("brute_pmf fixtures") {
  CHECK(oracle::brute_pmf(ParameterVector::make({0.5})).masses == std::vector<double>{0.5, 0.5});
  const auto both = oracle::brute_pmf_both(ParameterVector::make({0.1, 0.2, 0.3}));
  const double expected[] = {0.504, 0.398, 0.092, 0.006};
  for (std::size_t x = 0; x < 4; ++x) {
    CHECK(std::abs(both.by_outcomes[x] - expected[x]) <= 1e-15);
    CHECK(std::abs(both.by_weights[x] - expected[x]) <= 1e-15);
  }
}

TEST_CASE("brute_pmf refuses n > 20") {
  const auto pv = ParameterVector::make(std::vector<double>(21, 0.1));
  try {
    (void)oracle::brute_pmf(pv);
    FAIL("expected TooLarge");
  } catch (const pbratio::Error& e) {
    CHECK(e.code() == pbratio::ErrorCode::TooLarge);
  }
}

TEST_CASE("both enumeration routes agree on random inputs") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pv = ParameterVector::make(pbtest::random_params(rng, 1, 14, 0.95));
    CHECK_NOTHROW((void)oracle::brute_pmf_both(pv));
  }
}

TEST_CASE("subset statistics") {
  const auto pv = ParameterVector::make({0.1, 0.2, 0.3});
  SUBCASE("x = 0 is the empty set") {
    const auto s = oracle::subset_statistics(pv, 0);
    REQUIRE(s.subsets.size() == 1);
    CHECK(s.subsets[0].members.empty());
    CHECK(s.subsets[0].weight == 1.0);
    CHECK(s.subsets[0].q_sum == 0.0);
    CHECK(s.subsets[0].q_sum_complement == doctest::Approx(s.q_total));
  }
  SUBCASE("x = n is the full set") {
    const auto s = oracle::subset_statistics(pv, 3);
    REQUIRE(s.subsets.size() == 1);
    CHECK(s.subsets[0].q_sum_complement == 0.0);
  }
  SUBCASE("x = 1 weights are the odds") {
    const auto s = oracle::subset_statistics(pv, 1);
    REQUIRE(s.subsets.size() == 3);
    CHECK(s.subsets[0].weight == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
    CHECK(s.subsets[1].weight == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(s.subsets[2].weight == doctest::Approx(3.0 / 7.0).epsilon(1e-15));
  }
  SUBCASE("lexicographic order") {
    const auto s = oracle::subset_statistics(ParameterVector::make({0.1, 0.2, 0.3, 0.4}), 2);
    const std::vector<std::vector<std::size_t>> expected = {{0, 1}, {0, 2}, {0, 3},
                                                            {1, 2}, {1, 3}, {2, 3}};
    REQUIRE(s.subsets.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(s.subsets[i].members == expected[i]);
  }
}

TEST_CASE("subset statistics invariants") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const auto pv = ParameterVector::make(pbtest::random_params(rng, 1, 12, 0.9));
    const auto b = pbratio::pmf(pv);
    for (std::size_t x = 0; x <= pv.size(); ++x) {
      const auto s = oracle::subset_statistics(pv, x);
      double total = 0.0;
      for (const auto& j : s.subsets) {
        total += j.normalized_weight;
        CHECK(std::abs(j.q_sum + j.q_sum_complement - s.q_total) <= 1e-12 * (1.0 + s.q_total));
      }
      if (b[x] > 0.0) CHECK(std::abs(total - 1.0) <= 1e-12);
      if (x < pv.size()) CHECK(oracle::max_weight_shift_error(pv, x) <= 1e-14);
    }
  }
}

TEST_CASE("subset count limit") {
  // n = 20 is allowed; C(20, 10) = 184756 is under the cap.
  const auto pv = ParameterVector::make(std::vector<double>(20, 0.05));
  CHECK(oracle::subset_statistics(pv, 10).subsets.size() == 184756);
  CHECK_THROWS_AS((void)oracle::subset_statistics(pv, 21), pbratio::Error);
}

TEST_CASE("ratio representations for [0.1, 0.2, 0.3]") {
  const auto pv = ParameterVector::make({0.1, 0.2, 0.3});
  const auto rep0 = oracle::verify_ratio_representations(pv, 0);
  CHECK(rep0.forward.from_pmf == doctest::Approx(0.398 / 0.504).epsilon(1e-14));
  // J(0) = {empty}, so the subset form is S(N) = 1/9 + 1/4 + 3/7.
  CHECK(rep0.forward.from_subsets == doctest::Approx(1.0 / 9 + 0.25 + 3.0 / 7).epsilon(1e-14));
  CHECK(rep0.pass);

  const auto rep_n = oracle::verify_ratio_representations(pv, 3);
  CHECK(rep_n.forward.from_pmf == 0.0);
  CHECK(rep_n.forward.from_subsets == 0.0);
  CHECK_FALSE(rep_n.inverse_odds.has_value());
  CHECK(rep_n.pass);
}

TEST_CASE("ratio representations reject b(x) = 0") {
  const auto pv = ParameterVector::make({0.3, 0.0});
  try {
    (void)oracle::verify_ratio_representations(pv, 2);
    FAIL("expected UndefinedRatio");
  } catch (const pbratio::Error& e) {
    CHECK(e.code() == pbratio::ErrorCode::UndefinedRatio);
  }
  // x = 1 is the support boundary: only the forward form is defined.
  const auto rep = oracle::verify_ratio_representations(pv, 1);
  CHECK_FALSE(rep.inverse_odds.has_value());
  CHECK(rep.pass);
}

TEST_CASE("ratio representations hold on random vectors") {
  std::mt19937_64 rng(100);
  for (int seed = 0; seed < 100; ++seed) {
    auto p = pbtest::random_params(rng, 1, 10, 0.95);
    if (seed % 4 == 0) p.push_back(0.0);
    const auto pv = ParameterVector::make(p);
    const auto b = pbratio::pmf(pv);
    for (std::size_t x = 0; x < b.size() && b[x] > 0.0; ++x) {
      const auto rep = oracle::verify_ratio_representations(pv, x);
      CHECK(rep.pass);
      CHECK(rep.forward.relative_error <= 1e-10);
      if (rep.inverse_odds) {
        CHECK(rep.inverse_odds->relative_error <= 1e-10);
        CHECK(rep.inverse_probabilities->relative_error <= 1e-10);
      }
    }
  }
}
