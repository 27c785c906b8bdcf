#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ewfs/measures.hpp"
#include "ewfs/quantum.hpp"
#include "oracles.hpp"

namespace ewfs {
namespace {

using Q = Rational;

double analytic_bound(int m) { return 1.0 - m * (1.0 - std::cos(std::numbers::pi / (2.0 * m))); }

TEST(Measures, PrBoxIsMaximallyNonAbsolute) {
  const auto pr = pr_box<Q>(ScenarioSpec::bipartite(2));
  EXPECT_EQ(non_absoluteness_fraction(pr).value, Q(1));
  EXPECT_EQ(non_absoluteness_coefficient(pr).value, Q(1));
}

TEST(Measures, LocalBehaviorsScoreZero) {
  for (int m : {2, 3}) {
    const auto s = ScenarioSpec::bipartite(m);
    const auto u = uniform_behavior<Q>(s);
    EXPECT_EQ(non_absoluteness_fraction(u).value, Q(0));
    EXPECT_EQ(non_absoluteness_coefficient(u).value, Q(0));
    std::vector<int> ones(static_cast<std::size_t>(m), 1);
    const auto d = deterministic_behavior<Q>(s, {ones, ones});
    EXPECT_EQ(non_absoluteness_fraction(d).value, Q(0));
    EXPECT_EQ(non_absoluteness_coefficient(d).value, Q(0));
  }
}

TEST(Measures, IsotropicPrBoxHasClosedForm) {
  // lambda PR + (1 - lambda) uniform: both measures equal 2 lambda - 1 for
  // lambda >= 1/2, since CHSH = 4 lambda meets the relaxed bound 2 + 4 eps.
  const auto s = ScenarioSpec::bipartite(2);
  for (const Q lambda : {Q(1, 2), Q(5, 8), Q(3, 4), Q(9, 10)}) {
    const auto p = mix(pr_box<Q>(s), uniform_behavior<Q>(s), lambda);
    EXPECT_EQ(non_absoluteness_fraction(p).value, 2 * lambda - 1);
    EXPECT_EQ(non_absoluteness_coefficient(p).value, 2 * lambda - 1);
  }
}

TEST(Measures, QuantumChainedMeetsTheAnalyticBound) {
  for (int m : {2, 3, 5}) {
    const auto s = ScenarioSpec::bipartite(m);
    const auto b = behavior_from_config(chained_optimal_config(m), s);
    EXPECT_NEAR(non_absoluteness_fraction(b).value, analytic_bound(m), 1e-6);
    EXPECT_NEAR(non_absoluteness_coefficient(b).value, analytic_bound(m), 1e-6);
  }
  const auto b2 = behavior_from_config(chained_optimal_config(2), ScenarioSpec::bipartite(2));
  EXPECT_NEAR(non_absoluteness_coefficient(b2).value, 0.41421, 1e-5);
}

TEST(Measures, CoefficientNeverExceedsFraction) {
  std::mt19937_64 rng(23);
  for (int m : {2, 3}) {
    for (int i = 0; i < 20; ++i) {
      const auto p = oracle::random_ns_behavior(ScenarioSpec::bipartite(m), rng);
      EXPECT_LE(non_absoluteness_coefficient(p).value, non_absoluteness_fraction(p).value);
    }
  }
}

TEST(Measures, CoefficientIsConvex) {
  std::mt19937_64 rng(29);
  const auto s = ScenarioSpec::bipartite(2);
  for (int i = 0; i < 15; ++i) {
    const auto p = oracle::random_ns_behavior(s, rng);
    const auto q = oracle::random_ns_behavior(s, rng);
    const Q lambda(i + 1, 17);
    const Q lhs = non_absoluteness_coefficient(mix(p, q, lambda)).value;
    const Q rhs = lambda * non_absoluteness_coefficient(p).value +
                  (1 - lambda) * non_absoluteness_coefficient(q).value;
    EXPECT_LE(lhs, rhs);
  }
}

TEST(Measures, WitnessesReassembleTheBehavior) {
  std::mt19937_64 rng(31);
  const auto s = ScenarioSpec::bipartite(3);
  const auto p = oracle::random_ns_behavior(s, rng);

  const auto af = non_absoluteness_fraction(p);
  const auto& fw = af.fraction();
  EXPECT_EQ(af.value, 1 - fw.lf_weight);
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    for (std::size_t o = 0; o < s.outcome_count(); ++o) {
      Q lf(0);
      for (std::size_t f = 0; f < s.friend_count(); ++f) lf += fw.lf_joint[(c * 4 + o) * 4 + f];
      EXPECT_EQ(lf + fw.ns_part[c * 4 + o], p.at(c, o));
      EXPECT_GE(fw.ns_part[c * 4 + o], 0);
    }
  }

  const auto ac = non_absoluteness_coefficient(p);
  EXPECT_EQ(ac.value, 2 * ac.coefficient().epsilon);
  EXPECT_EQ(marginalize(ac.coefficient().joint), p);
  EXPECT_EQ(ac.mode(), Mode::rational);
  EXPECT_EQ(ac.tolerance, 0.0);
}

TEST(Measures, SaturatingMixtureOfMaximizers) {
  const auto e = catalog_entry("I_2");
  const auto& s = e.scenario();
  const auto p_lf = marginalize(optimize_over_rlf<Q>(e, s, Q(0)).witness);
  const auto p_ns = ns_maximizer<Q>(e, s);
  for (const Q eps : {Q(1, 8), Q(1, 4)}) {
    const auto p = mix(p_lf, p_ns, Q(1 - 2 * eps));
    EXPECT_EQ(non_absoluteness_coefficient(p).value, 2 * eps);
    EXPECT_EQ(non_absoluteness_fraction(p).value, 2 * eps);
  }
}

TEST(Measures, SignallingBehaviorIsRejected) {
  const auto s = ScenarioSpec::bipartite(2);
  std::vector<Q> t(16, Q(0));
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) t[static_cast<std::size_t>((x * 2 + y) * 4 + x)] = Q(1);
  }
  const Behavior<Q> b(s, t);
  EXPECT_THROW(non_absoluteness_fraction(b), ValidationError);
  EXPECT_THROW(non_absoluteness_coefficient(b), ValidationError);
  EXPECT_THROW(mermin_measures(pr_box<Q>(s)), ValidationError);
}

TEST(LowerBound, ValuesAndPreconditions) {
  EXPECT_EQ(af_lower_bound(Q(3), Q(2), Q(4)), Q(1, 2));
  EXPECT_EQ(af_lower_bound(Q(1), Q(2), Q(4)), Q(0));
  EXPECT_EQ(af_lower_bound(Q(4), Q(2), Q(4)), Q(1));
  EXPECT_NEAR(af_lower_bound(2 * std::numbers::sqrt2, 2.0, 4.0), std::numbers::sqrt2 - 1, 1e-15);
  EXPECT_THROW(af_lower_bound(Q(3), Q(4), Q(4)), ValidationError);
  EXPECT_THROW(af_lower_bound(Q(5), Q(2), Q(4)), ValidationError);
  EXPECT_STREQ(measure_name(MeasureKind::fraction), "A_f");
  EXPECT_STREQ(measure_name(MeasureKind::coefficient), "A_c");
}

TEST(Rationalize, RecoversAnExactNearbyBehavior) {
  const auto s = ScenarioSpec::bipartite(3);
  const auto b = behavior_from_config(chained_optimal_config(3), s);
  const auto r = rationalize_behavior(b);
  EXPECT_TRUE(check_no_signalling(r).ok(0.0));
  for (std::size_t i = 0; i < b.table().size(); ++i) EXPECT_NEAR(r.table()[i].get_d(), b.table()[i], 1e-11);
  const auto exact = rationalize_behavior(convert<double>(pr_box<Q>(ScenarioSpec::bipartite(2))));
  EXPECT_EQ(exact, pr_box<Q>(ScenarioSpec::bipartite(2)));
}

TEST(Measures, FloatAndRationalAgree) {
  const auto s = ScenarioSpec::bipartite(3);
  const auto b = behavior_from_config(chained_optimal_config(3), s);
  const auto r = rationalize_behavior(b);
  EXPECT_NEAR(non_absoluteness_fraction(r).value.get_d(), non_absoluteness_fraction(b).value, 1e-8);
  EXPECT_NEAR(non_absoluteness_coefficient(r).value.get_d(), non_absoluteness_coefficient(b).value, 1e-8);
}

}  // namespace
}  // namespace ewfs
