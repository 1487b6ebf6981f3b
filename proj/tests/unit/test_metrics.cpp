#include <random>

#include "doctest.h"
#include "emagdm/errors.hpp"
#include "emagdm/metrics.hpp"

using namespace emagdm;

TEST_CASE("perfect predictions") {
  const auto r = score(ConfusionMatrix::from_counts({{5, 0, 0}, {0, 7, 0}, {0, 0, 3}}));
  CHECK(r.overall_accuracy == doctest::Approx(1.0));
  REQUIRE(r.kappa);
  CHECK(*r.kappa == doctest::Approx(1.0));
  for (const auto& c : r.per_class) {
    CHECK(*c.accuracy == doctest::Approx(1.0));
    CHECK(*c.sensitivity == doctest::Approx(1.0));
    CHECK(*c.specificity == doctest::Approx(1.0));
    CHECK(*c.precision == doctest::Approx(1.0));
    CHECK(*c.f1 == doctest::Approx(1.0));
  }
  CHECK_FALSE(r.macro_excludes_undefined);
}

TEST_CASE("constant predictor") {
  const auto r = score(ConfusionMatrix::from_counts({{50, 0}, {50, 0}}));
  CHECK(*r.per_class[0].sensitivity == doctest::Approx(1.0));
  CHECK(*r.per_class[0].specificity == doctest::Approx(0.0));
  CHECK(r.overall_accuracy == doctest::Approx(0.5));
  CHECK(*r.kappa == doctest::Approx(0.0));
  CHECK_FALSE(r.per_class[1].precision.has_value());
  CHECK_FALSE(r.per_class[1].f1.has_value());
  CHECK(r.macro_excludes_undefined);
  CHECK(*r.macro.precision == doctest::Approx(0.5));
}

TEST_CASE("kappa undefined when chance agreement is one") {
  const auto r = score(ConfusionMatrix::from_counts({{4, 0}, {0, 0}}));
  CHECK_FALSE(r.kappa.has_value());
  CHECK_THROWS_AS(score(ConfusionMatrix(2)), DomainError);
}

TEST_CASE("random confusion matrices against a recount") {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> cls(0, 2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> truth(60), pred(60);
    for (auto& t : truth) t = cls(rng);
    for (auto& p : pred) p = cls(rng);
    const auto r = score(ConfusionMatrix::from_predictions(truth, pred, 3));

    int correct = 0;
    for (std::size_t i = 0; i < 60; ++i) correct += truth[i] == pred[i];
    CHECK(r.overall_accuracy == doctest::Approx(correct / 60.0));

    double pe = 0.0;
    for (int c = 0; c < 3; ++c) {
      int tp = 0, tn = 0, fp = 0, fn = 0;
      for (std::size_t i = 0; i < 60; ++i) {
        const bool t = truth[i] == c, p = pred[i] == c;
        tp += t && p;
        tn += !t && !p;
        fp += !t && p;
        fn += t && !p;
      }
      pe += static_cast<double>(tp + fn) * (tp + fp) / (60.0 * 60.0);
      const auto& m = r.per_class[c];
      CHECK(m.tp == static_cast<std::size_t>(tp));
      CHECK(m.tn == static_cast<std::size_t>(tn));
      CHECK(m.fp == static_cast<std::size_t>(fp));
      CHECK(m.fn == static_cast<std::size_t>(fn));
      CHECK(*m.accuracy == doctest::Approx((tp + tn) / 60.0));
      if (tp + fn) CHECK(*m.sensitivity == doctest::Approx(static_cast<double>(tp) / (tp + fn)));
      if (tn + fp) CHECK(*m.specificity == doctest::Approx(static_cast<double>(tn) / (tn + fp)));
      if (tp + fp) CHECK(*m.precision == doctest::Approx(static_cast<double>(tp) / (tp + fp)));
      if (m.precision && m.sensitivity && *m.precision + *m.sensitivity > 0) {
        REQUIRE(m.f1);
        CHECK(*m.f1 == doctest::Approx(2 * *m.precision * *m.sensitivity / (*m.precision + *m.sensitivity)));
      }
    }
    const double po = correct / 60.0;
    CHECK(*r.kappa == doctest::Approx((po - pe) / (1 - pe)));
    CHECK(*r.kappa >= -1.0);
    CHECK(*r.kappa <= 1.0);
  }
}

TEST_CASE("confusion matrix bookkeeping") {
  ConfusionMatrix cm(3);
  cm.add(0, 2);
  cm.add(0, 2);
  cm.add(1, 1);
  CHECK(cm.count(0, 2) == 2);
  CHECK(cm.total() == 3);
  CHECK_THROWS_AS(cm.add(3, 0), DomainError);
  CHECK_THROWS_AS(ConfusionMatrix::from_counts({{1, 2}, {3}}), DomainError);
}
