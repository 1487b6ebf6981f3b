#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "emagdm/errors.hpp"
#include "emagdm/pipeline.hpp"
#include "emagdm/recruitment.hpp"
#include "laws.hpp"

using namespace emagdm;

namespace {

BpaTensor one_cell(const std::vector<double>& masses) {
  BpaTensor t("e", 1, 1, masses.size());
  for (std::size_t f = 0; f < masses.size(); ++f) t.at(0, 0, f) = masses[f];
  return t;
}

OwaWeights explicit_owa(std::vector<double> w) {
  OwaWeights o;
  o.values = std::move(w);
  return o;
}

std::vector<double> plaus(const std::vector<double>& bels) {
  std::vector<Matrix> in;
  for (double b : bels) in.push_back(Matrix(1, 1, b));
  std::vector<double> out;
  for (const auto& m : ordered_weighted_plausibility(in)) out.push_back(m(0, 0));
  return out;
}

// 0.5 * a log2(a / m) + 0.5 * b log2(b / m) with m the midpoint.
double js_summand(double a, double b) {
  const double m = 0.5 * (a + b);
  double s = 0.0;
  if (a > 0) s += 0.5 * a * std::log2(a / m);
  if (b > 0) s += 0.5 * b * std::log2(b / m);
  return s;
}

Matrix normalize_columns(Matrix m) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, j);
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) /= s;
  }
  return m;
}

double upper_tail(int n, int k) {
  // P(X >= k) for X ~ Binomial(n, 1/2).
  double total = 0.0;
  for (int i = k; i <= n; ++i) total += std::exp(std::lgamma(n + 1) - std::lgamma(i + 1) - std::lgamma(n - i + 1) - n * std::log(2.0));
  return total;
}

}  // namespace

TEST_CASE("owa weights") {
  for (double w : owa_weights(5, OwaScheme::uniform).values) CHECK(w == doctest::Approx(0.2));
  const auto lin = owa_weights(4, OwaScheme::linear_descending).values;
  const std::vector<double> expect = {0.4, 0.3, 0.2, 0.1};
  for (std::size_t i = 0; i < 4; ++i) CHECK(lin[i] == doctest::Approx(expect[i]).epsilon(1e-12));
  for (double w : owa_weights(5, OwaScheme::orness, 0.5).values) CHECK(std::abs(w - 0.2) < 1e-9);

  for (double theta : {0.1, 0.3, 0.6, 0.8, 0.95, 0.99}) {
    const auto o = owa_weights(5, OwaScheme::orness, theta);
    CHECK(std::accumulate(o.values.begin(), o.values.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(o.orness() == doctest::Approx(theta).epsilon(1e-9));
    // Maximum-entropy weights form a geometric sequence.
    for (std::size_t f = 1; f + 1 < o.values.size(); ++f) {
      CHECK(o.values[f] * o.values[f] == doctest::Approx(o.values[f - 1] * o.values[f + 1]).epsilon(1e-9));
    }
  }
  CHECK(owa_weights(5, OwaScheme::orness, 0.95).tag() == "orness(0.95)");
  CHECK(owa_weights(5, OwaScheme::linear_descending).tag() == "linear-descending");
  CHECK_THROWS_AS(owa_weights(5, OwaScheme::orness, 1.0), DomainError);
  CHECK_THROWS_AS(owa_weights(5, OwaScheme::orness, 0.0), DomainError);
  CHECK(parse_owa_scheme("uniform") == OwaScheme::uniform);
  CHECK_THROWS_AS(parse_owa_scheme("max"), DomainError);
}

TEST_CASE("ordered weighted belief") {
  const std::vector<double> row = {0.0351, 0.0408, 0.0513, 0.0952, 0.0759};
  const auto mean = ordered_weighted_belief(one_cell(row), owa_weights(5, OwaScheme::uniform));
  CHECK(mean(0, 0) == doctest::Approx(std::accumulate(row.begin(), row.end(), 0.0) / 5).epsilon(1e-12));
  const auto top = ordered_weighted_belief(one_cell(row), explicit_owa({1, 0, 0, 0, 0}));
  CHECK(top(0, 0) == doctest::Approx(0.0952));

  const double oracle = 0.4 * 0.0952 + 0.3 * 0.0759 + 0.2 * 0.0513 + 0.1 * 0.0408;
  const auto bel = ordered_weighted_belief(one_cell(row), explicit_owa({0.4, 0.3, 0.2, 0.1, 0}));
  CHECK(bel(0, 0) == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(bel(0, 0) == doctest::Approx(0.0754).epsilon(1e-3));
  CHECK_THROWS_AS(ordered_weighted_belief(one_cell(row), explicit_owa({0.5, 0.5})), DomainError);
}

TEST_CASE("ordered weighted plausibility") {
  const auto a = plaus({0.2, 0.3, 0.5});
  CHECK(a[0] == doctest::Approx(0.2));
  CHECK(a[2] == doctest::Approx(0.5));
  CHECK(plaus({0.1, 0.1})[1] == doctest::Approx(0.5));
  const std::vector<double> bels = {0.06, 0.09, 0.12, 0.03};
  const double total = 0.06 + 0.09 + 0.12 + 0.03;
  const auto p = plaus(bels);
  for (std::size_t k = 0; k < 4; ++k) CHECK(p[k] == doctest::Approx(bels[k] / total).epsilon(1e-12));
  CHECK(p[2] == doctest::Approx(0.4));

  CHECK_THROWS_AS(plaus({0.3}), DomainError);
  CHECK_THROWS_WITH_AS(plaus({0.0, 0.0}), doctest::Contains("alternative 1, attribute 1"), DegenerateError);
}

TEST_CASE("expert wpbl along either axis") {
  const auto bel = Matrix::from_rows({{0.3, 0.1}, {0.1, 0.1}, {0.6, 0.2}});
  const Matrix pl(3, 2, 0.0);
  const auto alt = expert_wpbl(bel, pl, WpblAxis::alternatives);
  CHECK(alt(0, 0) == doctest::Approx(0.3));
  CHECK(alt(2, 0) == doctest::Approx(0.6));
  CHECK(alt(0, 1) == doctest::Approx(0.25));
  const auto att = expert_wpbl(bel, pl, WpblAxis::attributes);
  CHECK(att(0, 0) == doctest::Approx(0.75));
  CHECK(att(1, 1) == doctest::Approx(0.5));

  std::vector<std::vector<double>> rows(17, {0.3});
  rows[0] = {0.31};
  rows[1] = {0.29};
  const auto w = expert_wpbl(Matrix::from_rows(rows), Matrix(17, 1, 0.0), WpblAxis::alternatives);
  double s = 0.0;
  for (std::size_t i = 0; i < 17; ++i) s += w(i, 0);
  CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(w(0, 0) == doctest::Approx(0.31 / (0.31 + 0.29 + 15 * 0.3)).epsilon(1e-12));
  CHECK_THROWS_AS(expert_wpbl(Matrix(2, 2, 0.0), Matrix(2, 2, 0.0), WpblAxis::attributes), DegenerateError);
}

TEST_CASE("pairwise divergence") {
  const auto half = WeightVector::uniform(2);
  const auto a = normalize_columns(Matrix::from_rows({{0.2, 0.5}, {0.3, 0.1}, {0.4, 0.3}, {0.1, 0.6}}));
  for (auto axis : {WpblAxis::attributes, WpblAxis::alternatives}) {
    for (double d : pairwise_divergence(a, a, axis, half, LogBase::two)) CHECK(d == 0.0);
  }

  // Expert b differs from a in alternative 2 only.
  auto raw = Matrix::from_rows({{0.2, 0.5}, {0.3, 0.1}, {0.9, 0.05}, {0.1, 0.6}});
  const auto b = normalize_columns(raw);
  const auto d = pairwise_divergence(a, b, WpblAxis::alternatives, half, LogBase::two);
  for (std::size_t i = 0; i < 4; ++i) {
    const double oracle = js_summand(a(i, 0), b(i, 0)) + js_summand(a(i, 1), b(i, 1));
    CHECK(d[i] == doctest::Approx(oracle).epsilon(1e-12));
    if (i != 2) CHECK(d[i] < d[2]);
  }

  // Attributes axis: rows are the distributions; only row 2 differs.
  const auto ra = Matrix::from_rows({{0.4, 0.6}, {0.5, 0.5}, {0.7, 0.3}});
  const auto rb = Matrix::from_rows({{0.4, 0.6}, {0.5, 0.5}, {0.2, 0.8}});
  const auto e = pairwise_divergence(ra, rb, WpblAxis::attributes, half, LogBase::two);
  CHECK(e[0] == 0.0);
  CHECK(e[1] == 0.0);
  CHECK(e[2] == doctest::Approx(js_summand(0.7, 0.2) + js_summand(0.3, 0.8)).epsilon(1e-12));
}

TEST_CASE("divergence matrix") {
  CHECK(expert_pairs(4) == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  const auto m = divergence_matrix(Matrix::from_rows({{0.001}, {0.003}}), 2, PairAggregation::mean);
  CHECK(m.aggregate(0, 1) == doctest::Approx(0.002));
  CHECK(m.aggregate(1, 0) == doctest::Approx(0.002));
  CHECK(m.aggregate(0, 0) == 0.0);
  CHECK(divergence_matrix(Matrix::from_rows({{0.001}, {0.003}}), 2, PairAggregation::sum).aggregate(0, 1) ==
        doctest::Approx(0.004));
  const auto z = divergence_matrix(Matrix(5, 3, 0.0), 3, PairAggregation::mean);
  for (double v : z.aggregate.data()) CHECK(v == 0.0);
  CHECK_THROWS_AS(divergence_matrix(Matrix(5, 2, 0.0), 3, PairAggregation::mean), DomainError);
}

TEST_CASE("expert weights") {
  const auto two = expert_weights(Matrix::from_rows({{0, 0.004}, {0.004, 0}}));
  CHECK(two.weights[0] == doctest::Approx(0.5));
  CHECK(two.averages[0] == doctest::Approx(0.002));
  CHECK(expert_weights(Matrix::from_rows({{0, 0.004}, {0.004, 0}}), AverageConvention::sum).averages[0] ==
        doctest::Approx(0.004));

  const auto dmm = recruitment::printed_divergence_matrix();
  const auto w = expert_weights(dmm);
  const auto scaled = expert_weights(dmm.scaled(1234.5));
  const auto sum = expert_weights(dmm, AverageConvention::sum);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(scaled.weights[k] == doctest::Approx(w.weights[k]).epsilon(1e-12));
    CHECK(sum.weights[k] == doctest::Approx(w.weights[k]).epsilon(1e-12));
    CHECK(w.supports[k] == doctest::Approx(1.0 / w.averages[k]).epsilon(1e-12));
  }
  CHECK(std::accumulate(w.weights.begin(), w.weights.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));

  const Matrix zero(3, 3, 0.0);
  CHECK_THROWS_AS(expert_weights(zero), DegenerateError);
  const auto shared = expert_weights(zero, AverageConvention::divide_by_k, ZeroDivergencePolicy::share);
  CHECK(shared.zero_divergence);
  for (double x : shared.weights) CHECK(x == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("fuse") {
  const auto y = Matrix::from_rows({{0.1, 0.2}, {0.3, 0.4}});
  const std::vector<Matrix> same = {y, y, y};
  const std::vector<double> w = {0.2, 0.5, 0.3};
  const auto f = fuse(same, w);
  for (std::size_t i = 0; i < 4; ++i) CHECK(f.data()[i] == doctest::Approx(y.data()[i]).epsilon(1e-12));
  const std::vector<Matrix> mixed = {y, y.scaled(2.0)};
  const std::vector<double> onehot = {1.0, 0.0};
  CHECK(fuse(mixed, onehot) == y);
  const std::vector<double> bad = {1.0};
  CHECK_THROWS_AS(fuse(mixed, bad), DomainError);
}

TEST_CASE("rank") {
  const auto r = rank(Matrix::from_rows({{0.2}, {0.5}, {0.1}, {0.5}}));
  CHECK(r.order == std::vector<std::size_t>{1, 3, 0, 2});
  CHECK(r.ideal == std::vector<double>{0.5});

  const auto tie = rank(Matrix::from_rows({{0.3, 0.2}, {0.3, 0.2}, {0.3, 0.2}}));
  CHECK(tie.order == std::vector<std::size_t>{0, 1, 2});

  const auto two = rank(Matrix::from_rows({{0.3, 0.4}, {0.5, 0.1}}));
  const double norm = std::sqrt(0.5 * 0.5 + 0.4 * 0.4);
  CHECK(two.scores[0] == doctest::Approx((0.3 * 0.5 + 0.4 * 0.4) / norm).epsilon(1e-12));
  CHECK(two.scores[1] == doctest::Approx((0.5 * 0.5 + 0.1 * 0.4) / norm).epsilon(1e-12));
  CHECK(two.order == std::vector<std::size_t>{0, 1});

  CHECK_THROWS_AS(rank(Matrix(3, 2, 0.0)), DegenerateError);
}

TEST_CASE("pipeline on the recruitment data") {
  const auto experts = recruitment::decision_matrices();
  const auto r = run_pipeline(experts, recruitment::calibrated_config());
  std::vector<std::size_t> order = {0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return r.weights.weights[a] > r.weights.weights[b]; });
  CHECK(order == recruitment::printed_expert_order());
  CHECK(r.ranking.order.front() == 8);
  CHECK(r.ranking.order[1] == 15);
  CHECK(r.ranking.order[2] == 2);
  CHECK(r.ranking.order.back() == 11);

  const auto again = run_pipeline(experts, recruitment::calibrated_config());
  CHECK(again.weights.weights == r.weights.weights);
  CHECK(again.ranking.scores == r.ranking.scores);

  const std::vector<DecisionMatrix> one = {experts.front()};
  CHECK_THROWS_WITH_AS(run_pipeline(one, {}), "MAGDM requires ≥ 2 experts", DomainError);

  const std::vector<DecisionMatrix> twins = {experts[0], experts[0]};
  CHECK_THROWS_AS(run_pipeline(twins, {}), DegenerateError);
  PipelineConfig share;
  share.zero_divergence = ZeroDivergencePolicy::share;
  const auto t = run_pipeline(twins, share);
  CHECK(t.weights.weights[0] == doctest::Approx(0.5));

  std::vector<DecisionMatrix> narrow;
  for (const auto& e : experts) {
    Matrix col(e.values.rows(), 1);
    for (std::size_t i = 0; i < col.rows(); ++i) col(i, 0) = e.values(i, 0);
    narrow.push_back({e.expert_id, col, e.alternatives, {e.attributes[0]}});
  }
  CHECK_THROWS_AS(run_pipeline(narrow, {}), DomainError);
  PipelineConfig by_alternative;
  by_alternative.wpbl_axis = WpblAxis::alternatives;
  CHECK(run_pipeline(narrow, by_alternative).weights.weights.size() == 4);

  auto renamed = experts;
  renamed[1].attributes[0] = "Other";
  CHECK_THROWS_AS(run_pipeline(renamed, {}), DomainError);
}

TEST_CASE("pipeline invariants over random groups") {
  for (const auto& r : {testing::plausibility_partition(200, 41), testing::dmm_symmetric(200, 42),
                        testing::weights_scale_invariant(200, 43), testing::ranking_scale_invariant(200, 44)}) {
    INFO(r.name << ": " << r.first_failure);
    CHECK(r.pass());
  }
}

TEST_CASE("adding noise to one expert lowers its weight") {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> small(0.0, 3.0), large(0.0, 20.0);
  std::uniform_real_distribution<double> base(20.0, 80.0);
  int lower = 0, higher = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto experts = testing::random_experts(4, 10, 2, rng);
    Matrix common(10, 2);
    for (std::size_t i = 0; i < 10; ++i) {
      for (double& v : common.row(i)) v = base(rng);
    }
    for (auto& e : experts) {
      for (std::size_t i = 0; i < 10; ++i) {
        for (std::size_t j = 0; j < 2; ++j) e.values(i, j) = common(i, j) + small(rng);
      }
    }
    const double before = estimate_expert_weights(experts, {}).weights.weights[0];
    for (std::size_t i = 0; i < 10; ++i) {
      for (std::size_t j = 0; j < 2; ++j) experts[0].values(i, j) += large(rng);
    }
    const double after = estimate_expert_weights(experts, {}).weights.weights[0];
    if (after < before) ++lower;
    if (after > before) ++higher;
  }
  INFO("lower " << lower << ", higher " << higher);
  CHECK(upper_tail(lower + higher, lower) < 0.01);
}
