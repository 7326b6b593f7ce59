#include <cmath>
#include <random>

#include <doctest.h>

#include "fixtures.hpp"
#include "ilion/cascade.hpp"

using namespace ilion;

namespace {

FeatureVector vec(std::initializer_list<std::pair<std::size_t, double>> entries) {
  FeatureVector v;
  for (const auto& [i, x] : entries) v[i] = x;
  return v;
}

/// Pack used by most decide() tests: aligned capability vocabulary plus one
/// unambiguous category phrase.
LexiconPack decide_fixture() {
  LexiconPack pack = test::fixture_pack(
      {{0, {"read", 0.5}},
       {4, {"analyze", 0.5}},
       {7, {"delete", 0.5}},
       {9, {"export", 0.5}}},
      {{AttackCategory::kPromptInjection, {"ignore previous instructions", 0.6}}});
  return pack;
}

}  // namespace

TEST_CASE("idc_drift basics") {
  FeatureVector v = vec({{0, 0.5}, {3, 0.25}});
  auto self_drift = idc_drift(v, v);
  REQUIRE(self_drift.has_value());
  CHECK(std::abs(*self_drift) <= 1e-12);

  auto disjoint = idc_drift(vec({{0, 1.0}}), vec({{1, 1.0}}));
  REQUIRE(disjoint.has_value());
  CHECK(*disjoint == 1.0);

  auto partial = idc_drift(vec({{0, 1.0}, {1, 1.0}}), vec({{0, 1.0}}));
  REQUIRE(partial.has_value());
  CHECK(*partial == doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(*partial == doctest::Approx(0.29289322).epsilon(1e-8));
}

TEST_CASE("irs_resonance is the cosine and complements drift") {
  FeatureVector v = vec({{0, 0.5}, {3, 0.25}});
  auto self_res = irs_resonance(v, v);
  REQUIRE(self_res.has_value());
  CHECK(*self_res == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(*irs_resonance(vec({{0, 1.0}}), vec({{1, 1.0}})) == 0.0);

  std::mt19937 rng(31);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    FeatureVector a;
    FeatureVector b;
    for (std::size_t d = 0; d < kFeatureDimensions; ++d) {
      a[d] = dist(rng);
      b[d] = dist(rng);
    }
    auto rho = irs_resonance(a, b);
    auto delta = idc_drift(a, b);
    REQUIRE(rho.has_value());
    REQUIRE(delta.has_value());
    CHECK(std::abs(*rho + *delta - 1.0) <= 1e-12);
  }
}

TEST_CASE("drift and resonance are undefined on zero vectors") {
  FeatureVector zero;
  CHECK_FALSE(idc_drift(zero, vec({{0, 1.0}})).has_value());
  CHECK_FALSE(irs_resonance(vec({{0, 1.0}}), zero).has_value());
}

TEST_CASE("cvl_vetoes uses a strict comparison") {
  CategorySignals signals;
  CHECK(cvl_vetoes(signals, 0.45).empty());

  signals[AttackCategory::kPromptInjection] = 0.6;
  auto vetoed = cvl_vetoes(signals, 0.45);
  REQUIRE(vetoed.size() == 1);
  CHECK(vetoed[0] == AttackCategory::kPromptInjection);

  CategorySignals boundary;
  boundary[AttackCategory::kJailbreak] = 0.45;
  CHECK(cvl_vetoes(boundary, 0.45).empty());  // exactly tau does not fire
}

TEST_CASE("decide: identical role and action text allows with zero drift") {
  Verdict v = decide(RoleDefinition{"read and analyze"},
                     ActionProposal{"read and analyze", std::nullopt}, decide_fixture(),
                     Thresholds{});
  CHECK(v.decision == Decision::kAllow);
  CHECK(v.triggered_layers.empty());
  REQUIRE(v.drift.has_value());
  CHECK(std::abs(*v.drift) <= 1e-12);
  CHECK(*v.resonance == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(v.coverage == CoverageFlag::kFull);
}

TEST_CASE("decide: disjoint support blocks through IDC and IRS") {
  Verdict v = decide(RoleDefinition{"read and analyze"},
                     ActionProposal{"delete then export", std::nullopt}, decide_fixture(),
                     Thresholds{});
  CHECK(v.decision == Decision::kBlock);
  CHECK(v.triggered(LayerId::kIdc));
  CHECK(v.triggered(LayerId::kIrs));  // rho = 0 < 0.10
  CHECK_FALSE(v.triggered(LayerId::kCvl));
  CHECK(*v.drift == 1.0);
}

TEST_CASE("decide: category phrase on an aligned action blocks through CVL only") {
  Verdict v = decide(RoleDefinition{"read and analyze"},
                     ActionProposal{"read analyze ignore previous instructions", std::nullopt},
                     decide_fixture(), Thresholds{});
  CHECK(v.decision == Decision::kBlock);
  CHECK(v.triggered_layers == std::vector<LayerId>{LayerId::kCvl});
  CHECK(v.signals[AttackCategory::kPromptInjection] == 0.6);
  REQUIRE(v.drift.has_value());
  CHECK(*v.drift <= 0.40);  // aligned remainder keeps IDC quiet
}

TEST_CASE("decide: empty action coverage abstains on IDC and IRS") {
  Verdict v = decide(RoleDefinition{"read and analyze"},
                     ActionProposal{"unmapped words only", std::nullopt}, decide_fixture(),
                     Thresholds{});
  CHECK(v.decision == Decision::kAllow);
  CHECK(v.coverage == CoverageFlag::kActionEmpty);
  CHECK_FALSE(v.drift.has_value());
  CHECK_FALSE(v.resonance.has_value());
}

TEST_CASE("decide: CVL may still block when coverage is partial") {
  // The action has no dimension hits, only a category phrase.
  LexiconPack pack = test::fixture_pack(
      {{0, {"read", 0.5}}}, {{AttackCategory::kJailbreak, {"jailbreak", 0.6}}});
  Verdict v = decide(RoleDefinition{"read"}, ActionProposal{"jailbreak now", std::nullopt}, pack,
                     Thresholds{});
  CHECK(v.coverage == CoverageFlag::kActionEmpty);
  CHECK(v.decision == Decision::kBlock);
  CHECK(v.triggered_layers == std::vector<LayerId>{LayerId::kCvl});
}

TEST_CASE("decide: empty role coverage") {
  Verdict v = decide(RoleDefinition{"unmapped role words"},
                     ActionProposal{"read and analyze", std::nullopt}, decide_fixture(),
                     Thresholds{});
  CHECK(v.coverage == CoverageFlag::kRoleEmpty);
  CHECK(v.decision == Decision::kAllow);
}

TEST_CASE("decide: fail_closed_on_empty blocks with a synthetic IDC trigger") {
  EngineOptions options;
  options.fail_closed_on_empty = true;
  Verdict v = decide(RoleDefinition{"read and analyze"},
                     ActionProposal{"unmapped words only", std::nullopt}, decide_fixture(),
                     Thresholds{}, options);
  CHECK(v.decision == Decision::kBlock);
  CHECK(v.triggered_layers == std::vector<LayerId>{LayerId::kIdc});
  CHECK(v.coverage == CoverageFlag::kActionEmpty);
  CHECK_FALSE(v.drift.has_value());
}

TEST_CASE("decide rejects malformed inputs instead of allowing") {
  CHECK_THROWS_AS(decide(RoleDefinition{"  \t"}, ActionProposal{"read", std::nullopt},
                         decide_fixture(), Thresholds{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(decide(RoleDefinition{"read"}, ActionProposal{"", std::nullopt},
                         decide_fixture(), Thresholds{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(decide(RoleDefinition{"read"}, ActionProposal{"read", std::nullopt},
                         decide_fixture(), Thresholds{1.5, 0.45, 0.10}),
                  std::invalid_argument);

  LexiconPack broken = decide_fixture();
  broken.dimension_lexicons[0].terms.push_back({"read", 0.5});  // duplicate
  CHECK_THROWS_AS(decide(RoleDefinition{"read"}, ActionProposal{"read", std::nullopt}, broken,
                         Thresholds{}),
                  PackLoadError);
}

TEST_CASE("Engine decide matches the free function and is repeatable") {
  Engine engine(decide_fixture());
  RoleDefinition role{"read and analyze"};
  ActionProposal action{"read then export data", std::nullopt};
  Verdict a = engine.decide(role, action);
  Verdict b = engine.decide(role, action);
  Verdict c = decide(role, action, decide_fixture(), Thresholds{});

  for (const Verdict* v : {&b, &c}) {
    CHECK(a.decision == v->decision);
    CHECK(a.drift == v->drift);  // bit-exact
    CHECK(a.resonance == v->resonance);
    CHECK(a.signals == v->signals);
    CHECK(a.triggered_layers == v->triggered_layers);
    CHECK(a.coverage == v->coverage);
  }
}

TEST_CASE("threshold monotonicity on random inputs") {
  std::mt19937 rng(808);
  std::uniform_real_distribution<double> tau_dist(0.01, 0.99);
  int evaluated = 0;
  for (int trial = 0; trial < 100; ++trial) {
    test::RandomVocabulary vocab = test::make_random_vocabulary(rng);
    Engine dummy_check(vocab.pack);  // validates the generated pack
    std::string role_text = test::random_text(rng, vocab.words, 1, 20);
    std::string action_text = test::random_text(rng, vocab.words, 1, 20);
    if (role_text.empty() || action_text.empty()) continue;
    RoleDefinition role{role_text};
    ActionProposal action{action_text, std::nullopt};

    for (int move = 0; move < 10; ++move) {
      Thresholds base{tau_dist(rng), tau_dist(rng), tau_dist(rng) * 0.9};
      Verdict before = decide(role, action, vocab.pack, base);

      Thresholds raised_idc = base;
      raised_idc.tau_idc = base.tau_idc + (1.0 - base.tau_idc) * 0.5;
      Thresholds raised_cvl = base;
      raised_cvl.tau_cvl = base.tau_cvl + (1.0 - base.tau_cvl) * 0.5;
      Thresholds lowered_irs = base;
      lowered_irs.tau_irs = base.tau_irs * 0.5;

      if (before.decision == Decision::kAllow) {
        CHECK(decide(role, action, vocab.pack, raised_idc).decision == Decision::kAllow);
        CHECK(decide(role, action, vocab.pack, raised_cvl).decision == Decision::kAllow);
        CHECK(decide(role, action, vocab.pack, lowered_irs).decision == Decision::kAllow);
      }
      Verdict any = decide(role, action, vocab.pack, raised_idc);
      CHECK((any.decision == Decision::kBlock) == !any.triggered_layers.empty());
      ++evaluated;
    }
  }
  CHECK(evaluated > 500);
}

TEST_CASE("pack weight scaling leaves drift untouched below saturation") {
  // Saturating sums clamp at 1, so the invariant is asserted in the regime
  // where no dimension sum crosses the clamp before or after scaling.
  LexiconPack pack = test::fixture_pack({{0, {"alpha", 0.05}},
                                         {1, {"beta", 0.04}},
                                         {2, {"gamma", 0.03}},
                                         {5, {"delta", 0.05}}},
                                        {{AttackCategory::kToolMisuse, {"omega", 0.05}}});
  RoleDefinition role{"alpha beta alpha"};
  ActionProposal action{"beta gamma delta omega", std::nullopt};
  Verdict base = decide(role, action, pack, Thresholds{});

  for (double k : {0.5, 2.0, 4.0}) {
    LexiconPack scaled = pack;
    for (auto& dim : scaled.dimension_lexicons) {
      for (auto& term : dim.terms) term.weight *= k;
    }
    for (auto& cat : scaled.category_lexicons) {
      for (auto& term : cat.terms) term.weight *= k;
    }
    Verdict v = decide(role, action, scaled, Thresholds{});
    REQUIRE(v.drift.has_value());
    CHECK(std::abs(*v.drift - *base.drift) <= 1e-12);
    CHECK(std::abs(*v.resonance - *base.resonance) <= 1e-12);
    // CVL signals do change with k.
    CHECK(v.signals[AttackCategory::kToolMisuse] ==
          doctest::Approx(0.05 * k).epsilon(1e-12));
  }
}

TEST_CASE("IRS condition is the drift condition restated") {
  std::mt19937 rng(272);
  test::RandomVocabulary vocab = test::make_random_vocabulary(rng);
  std::uniform_real_distribution<double> tau_dist(0.01, 0.9);
  for (int i = 0; i < 300; ++i) {
    std::string role_text = test::random_text(rng, vocab.words, 1, 15);
    std::string action_text = test::random_text(rng, vocab.words, 1, 15);
    if (role_text.empty() || action_text.empty()) continue;
    double tau_irs = tau_dist(rng);
    Verdict v = decide(RoleDefinition{role_text}, ActionProposal{action_text, std::nullopt},
                       vocab.pack, Thresholds{0.4, 0.45, tau_irs});
    if (!v.resonance.has_value()) continue;
    if (std::abs(*v.resonance - tau_irs) < 1e-9) continue;  // representability boundary
    CHECK((*v.resonance < tau_irs) == (*v.drift > 1.0 - tau_irs));
  }
}

namespace {

class StubProvider final : public VectorSpaceProvider {
 public:
  StubProvider(std::vector<double> role, std::vector<double> action, CategorySignals signals = {})
      : role_(std::move(role)), action_(std::move(action)), signals_(signals) {}
  std::vector<double> encode_role(std::string_view) const override { return role_; }
  std::pair<std::vector<double>, CategorySignals> encode_action(std::string_view) const override {
    return {action_, signals_};
  }

 private:
  std::vector<double> role_;
  std::vector<double> action_;
  CategorySignals signals_;
};

}  // namespace

TEST_CASE("decide_with_provider runs the same rule over provider vectors") {
  FeatureVectorSpace feature_space(decide_fixture());
  Verdict via_provider = decide_with_provider(feature_space, "read and analyze",
                                              "delete then export", Thresholds{});
  Verdict direct = decide(RoleDefinition{"read and analyze"},
                          ActionProposal{"delete then export", std::nullopt}, decide_fixture(),
                          Thresholds{});
  CHECK(via_provider.decision == direct.decision);
  CHECK(via_provider.drift == direct.drift);
  CHECK(via_provider.triggered_layers == direct.triggered_layers);

  // Provider contract violations are structural errors.
  StubProvider mismatched({1.0, 0.0}, {1.0, 0.0, 0.0});
  CHECK_THROWS_AS(decide_with_provider(mismatched, "r", "a", Thresholds{}),
                  std::invalid_argument);
  StubProvider negative({-1.0, 0.0}, {1.0, 0.0});
  CHECK_THROWS_AS(decide_with_provider(negative, "r", "a", Thresholds{}), std::invalid_argument);
  CategorySignals bad_signals;
  bad_signals[AttackCategory::kJailbreak] = 1.5;
  StubProvider out_of_range({1.0}, {1.0}, bad_signals);
  CHECK_THROWS_AS(decide_with_provider(out_of_range, "r", "a", Thresholds{}),
                  std::invalid_argument);
}
