#include <cmath>
#include <random>

#include "doctest.h"
#include "emagdm/divergence.hpp"
#include "emagdm/errors.hpp"
#include "laws.hpp"

using namespace emagdm;

namespace {

ProbabilityVector pv(std::vector<double> v) { return ProbabilityVector(std::move(v)); }

double kl_oracle(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > 0) s += a[i] * std::log2(a[i] / b[i]);
  }
  return s;
}

std::vector<double> random_dist(std::size_t n, std::mt19937_64& rng) { return testing::random_weights(n, rng); }

Bpa make(const FramePtr& f, std::vector<std::pair<std::vector<std::string_view>, double>> masses) {
  std::vector<FocalElement> focal;
  for (auto& [labels, m] : masses) {
    Subset s(f->size());
    for (auto l : labels) s.insert(f->index_of(l));
    focal.push_back({s, m});
  }
  return Bpa(f, std::move(focal));
}

std::vector<double> values(const WpblDistribution& d) { return {d.values().begin(), d.values().end()}; }

// Direct summation: sum_i w_i sum_j P_i(j) log2(P_i(j) / sum_k w_k P_k(j)).
double gdiv_oracle(const std::vector<std::vector<double>>& p, const std::vector<double>& w) {
  double s = 0.0;
  for (std::size_t j = 0; j < p.front().size(); ++j) {
    double mix = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) mix += w[k] * p[k][j];
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i][j] > 0) s += w[i] * p[i][j] * std::log2(p[i][j] / mix);
    }
  }
  return s;
}

}  // namespace

TEST_CASE("kl") {
  CHECK(kl(pv({0.5, 0.5}), pv({0.5, 0.5}), LogBase::two) == doctest::Approx(0.0));
  CHECK(kl(pv({1.0, 0.0}), pv({0.5, 0.5}), LogBase::two) == doctest::Approx(1.0));
  CHECK(kl(pv({0.7, 0.3}), pv({0.5, 0.5}), LogBase::two) ==
        doctest::Approx(0.7 * std::log2(1.4) + 0.3 * std::log2(0.6)).epsilon(1e-12));
  CHECK(kl(pv({0.7, 0.3}), pv({0.5, 0.5}), LogBase::e) ==
        doctest::Approx(0.7 * std::log(1.4) + 0.3 * std::log(0.6)).epsilon(1e-12));
  CHECK_THROWS_AS(kl(pv({0.5, 0.5}), pv({1.0, 0.0}), LogBase::two), DivergenceUndefinedError);
  CHECK_THROWS_AS(kl(pv({0.5, 0.5}), pv({0.2, 0.3, 0.5}), LogBase::two), DomainError);
  CHECK_THROWS_AS(pv({0.5, 0.6}), DomainError);
}

TEST_CASE("js") {
  CHECK(js(pv({0.3, 0.7}), pv({0.3, 0.7}), LogBase::two) == doctest::Approx(0.0));
  CHECK(js(pv({1.0, 0.0}), pv({0.0, 1.0}), LogBase::two) == doctest::Approx(1.0));
  const std::vector<double> a = {0.8, 0.2}, b = {0.2, 0.8}, m = {0.5, 0.5};
  const double oracle = 0.5 * (kl_oracle(a, m) + kl_oracle(b, m));
  CHECK(js(pv(a), pv(b), LogBase::two) == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(js(pv(b), pv(a), LogBase::two) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("js symmetric and bounded on random pairs") {
  std::mt19937_64 rng(3);
  for (int c = 0; c < 1000; ++c) {
    const std::size_t n = 2 + c % 6;
    const auto a = pv(random_dist(n, rng)), b = pv(random_dist(n, rng));
    const double ab = js(a, b, LogBase::two), ba = js(b, a, LogBase::two);
    REQUIRE(std::abs(ab - ba) < 1e-12);
    REQUIRE(ab >= -1e-15);
    REQUIRE(ab <= 1.0 + 1e-12);
  }
}

TEST_CASE("generalized js") {
  const auto w = WeightVector::uniform(2);
  const std::vector<ProbabilityVector> same = {pv({0.2, 0.8}), pv({0.2, 0.8})};
  CHECK(generalized_js(same, w, LogBase::two) == doctest::Approx(0.0));
  const std::vector<ProbabilityVector> disjoint = {pv({1, 0}), pv({0, 1})};
  CHECK(generalized_js(disjoint, w, LogBase::two) == doctest::Approx(1.0));

  // Entropy form in the library against the KL decomposition sum_i w_i KL(A_i || M).
  std::mt19937_64 rng(8);
  for (int c = 0; c < 200; ++c) {
    std::vector<std::vector<double>> d = {random_dist(4, rng), random_dist(4, rng), random_dist(4, rng)};
    std::vector<double> mix(4, 0.0);
    for (const auto& x : d) {
      for (std::size_t j = 0; j < 4; ++j) mix[j] += x[j] / 3.0;
    }
    double oracle = 0.0;
    for (const auto& x : d) oracle += kl_oracle(x, mix) / 3.0;
    const std::vector<ProbabilityVector> dists = {pv(d[0]), pv(d[1]), pv(d[2])};
    REQUIRE(std::abs(generalized_js(dists, WeightVector::uniform(3), LogBase::two) - oracle) < 1e-12);
  }
  CHECK_THROWS_AS(generalized_js(disjoint, WeightVector::uniform(3), LogBase::two), DomainError);
}

TEST_CASE("bjs and weighted divergence") {
  const auto f = Frame::make({"a", "b"});
  const auto props = singleton_propositions(*f);
  const auto m1 = make(f, {{{"a"}, 0.3}, {{"b"}, 0.2}, {{"a", "b"}, 0.5}});
  const auto m2 = make(f, {{{"a"}, 0.5}, {{"b"}, 0.5}});

  CHECK(bjs(m1, m1, props, LogBase::two) == doctest::Approx(0.0));
  CHECK(bjs(make(f, {{{"a"}, 1.0}}), make(f, {{{"b"}, 1.0}}), props, LogBase::two) == doctest::Approx(1.0));

  const std::vector<double> p = {0.55, 0.45}, q = {0.5, 0.5};
  CHECK(values(wpbl(m1, props))[0] == doctest::Approx(0.55));
  const double js_oracle = 0.5 * (kl_oracle(p, {0.525, 0.475}) + kl_oracle(q, {0.525, 0.475}));
  CHECK(bjs(m1, m2, props, LogBase::two) == doctest::Approx(js_oracle).epsilon(1e-12));
  CHECK(weighted_div(m1, m2, props, WeightVector::uniform(2), LogBase::two) == doctest::Approx(js_oracle).epsilon(1e-12));
  CHECK(weighted_div(m1, m1, props, WeightVector({0.9, 0.1}), LogBase::two) == doctest::Approx(0.0));

  const double ma = 0.7 * 0.55 + 0.3 * 0.5, mb = 0.7 * 0.45 + 0.3 * 0.5;
  const double term = 0.7 * (0.55 * std::log2(0.55 / ma) + 0.45 * std::log2(0.45 / mb)) +
                      0.3 * (0.5 * std::log2(0.5 / ma) + 0.5 * std::log2(0.5 / mb));
  CHECK(weighted_div(m1, m2, props, WeightVector({0.7, 0.3}), LogBase::two) == doctest::Approx(term).epsilon(1e-12));
  CHECK_THROWS_AS(weighted_div(m1, m2, props, WeightVector::uniform(3), LogBase::two), DomainError);
}

TEST_CASE("generalized weighted divergence against direct summation") {
  std::mt19937_64 rng(21);
  for (int c = 0; c < 500; ++c) {
    const auto f = testing::letters(2 + c % 4);
    const auto props = singleton_propositions(*f);
    std::vector<PseudoBpa> ms;
    std::vector<std::vector<double>> w;
    for (int k = 0; k < 3; ++k) {
      // Masses scaled below one: the pipeline feeds unnormalized rows.
      const auto b = testing::random_bpa(f, rng);
      std::vector<FocalElement> focal(b.focal_elements().begin(), b.focal_elements().end());
      for (auto& fe : focal) fe.mass *= 0.3;
      ms.emplace_back(f, std::move(focal));
      w.push_back(values(wpbl(ms.back(), props)));
    }
    const std::vector<const MassFunction*> ptrs = {&ms[0], &ms[1], &ms[2]};
    const auto uw = WeightVector::uniform(3);
    REQUIRE(std::abs(generalized_weighted_div(ptrs, props, uw, LogBase::two) - gdiv_oracle(w, {1 / 3.0, 1 / 3.0, 1 / 3.0})) <
            1e-12);
  }
}

TEST_CASE("non-singleton propositions are scaled by cardinality") {
  const auto f = Frame::make({"a", "b", "c"});
  const std::vector<Subset> props = {f->subset({"a"}), f->subset({"b", "c"})};
  const auto m1 = make(f, {{{"a"}, 0.6}, {{"b"}, 0.4}});
  const auto m2 = make(f, {{{"c"}, 0.5}, {{"a", "b"}, 0.5}});
  const auto p1 = values(wpbl(m1, props)), p2 = values(wpbl(m2, props));
  double oracle = 0.0;
  for (std::size_t j = 0; j < 2; ++j) {
    const double card = j == 0 ? 1.0 : 2.0;
    const double mix = 0.5 * p1[j] + 0.5 * p2[j];
    oracle += 0.5 * (p1[j] / card) * std::log2(p1[j] / mix) + 0.5 * (p2[j] / card) * std::log2(p2[j] / mix);
  }
  const MassFunction* ptrs[] = {&m1, &m2};
  CHECK(generalized_weighted_div(ptrs, props, WeightVector::uniform(2), LogBase::two) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("divergence laws") {
  for (const auto& r : {testing::gdiv_bound(1000, 1), testing::gdiv_identity(1000, 2), testing::gdiv_symmetry(1000, 3),
                        testing::reductions(1000, 4)}) {
    INFO(r.name << ": " << r.first_failure);
    CHECK(r.cases == 1000);
    CHECK(r.pass());
  }
}

TEST_CASE("log base parsing") {
  CHECK(parse_log_base("2") == LogBase::two);
  CHECK(parse_log_base("e") == LogBase::e);
  CHECK(to_string(LogBase::e) == "e");
  CHECK_THROWS_AS(parse_log_base("10"), DomainError);
}
