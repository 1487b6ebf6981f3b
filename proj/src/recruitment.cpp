#include "emagdm/recruitment.hpp"

namespace emagdm::recruitment {

namespace {

const std::vector<std::vector<double>> kScores = {
    {80, 75, 85, 80, 75, 70, 90, 85}, {65, 75, 60, 70, 70, 77, 60, 70}, {90, 85, 80, 85, 80, 90, 90, 95},
    {65, 70, 55, 60, 68, 72, 62, 72}, {75, 80, 75, 80, 50, 55, 70, 75}, {80, 80, 75, 85, 77, 82, 75, 75},
    {65, 70, 70, 60, 65, 72, 67, 75}, {70, 60, 75, 65, 75, 67, 82, 85}, {80, 85, 95, 85, 90, 85, 90, 92},
    {70, 75, 75, 80, 68, 78, 65, 70}, {50, 60, 62, 65, 60, 65, 65, 70}, {60, 65, 65, 75, 50, 60, 45, 50},
    {75, 75, 80, 80, 65, 75, 70, 75}, {80, 70, 75, 72, 80, 70, 75, 75}, {70, 65, 75, 70, 65, 70, 60, 65},
    {90, 95, 92, 90, 85, 80, 88, 90}, {80, 85, 70, 75, 75, 80, 70, 75},
};

}  // namespace

std::vector<DecisionMatrix> decision_matrices() {
  std::vector<std::string> alts;
  for (std::size_t i = 1; i <= kCandidates; ++i) alts.push_back(std::to_string(i));
  const std::vector<std::string> attrs = {"Panel interview", "1-on-1 interview"};
  std::vector<DecisionMatrix> out;
  for (std::size_t k = 0; k < kExperts; ++k) {
    Matrix m(kCandidates, kAttributes);
    for (std::size_t i = 0; i < kCandidates; ++i) {
      for (std::size_t j = 0; j < kAttributes; ++j) m(i, j) = kScores[i][2 * k + j];
    }
    out.push_back({"u" + std::to_string(k + 1), std::move(m), alts, attrs});
  }
  return out;
}

Matrix printed_memberships() {
  return Matrix::from_rows({
      {0.2500, 0.3333, 0.5000, 1.000, 0.7500, 0.5714, 0.7619, 0.8571, 0.5714, 0.4286},
      {0.6250, 0.8333, 0.7500, 0.5000, 0.3750, 0.5714, 0.7619, 0.8571, 0.5714, 0.4286},
      {0.0000, 0.0000, 0.0000, 0.0000, 1.0000, 0.2857, 0.3809, 0.5714, 0.9523, 0.7142},
      {0.6250, 0.8333, 0.7500, 0.5000, 0.3750, 0.7142, 0.9523, 0.5714, 0.3809, 0.2857},
      {0.3750, 0.5000, 0.7500, 0.8333, 0.6250, 0.4285, 0.5714, 0.8571, 0.7619, 0.5714},
      {0.2500, 0.3333, 0.5000, 1.0000, 0.7500, 0.4285, 0.5714, 0.8571, 0.7619, 0.5714},
      {0.6250, 0.8333, 0.7500, 0.5000, 0.3750, 0.7143, 0.9523, 0.5714, 0.3809, 0.2857},
      {0.5000, 0.6667, 1.0000, 0.6667, 0.5000, 1.0000, 0.0000, 0.0000, 0.0000, 0.0000},
      {0.2500, 0.3333, 0.5000, 1.0000, 0.7500, 0.2857, 0.3809, 0.5714, 0.9523, 0.7143},
      {0.5000, 0.6667, 1.0000, 0.667, 0.5000, 0.5714, 0.7619, 0.8571, 0.5714, 0.4286},
      {1.0000, 0.0000, 0.0000, 0.0000, 0.0000, 1.0000, 0.0000, 0.0000, 0.0000, 0.0000},
      {0.7500, 1.0000, 0.5000, 0.3333, 0.2500, 0.8571, 0.5714, 0.2857, 0.1904, 0.1428},
      {0.3750, 0.5000, 0.7500, 0.8333, 0.6250, 0.5714, 0.7619, 0.8571, 0.5714, 0.3809},
      {0.2500, 0.3333, 0.5000, 1.0000, 0.7500, 0.7142, 0.9523, 0.5714, 0.3809, 0.2857},
      {0.5000, 0.6667, 1.0000, 0.6667, 0.5000, 0.8571, 0.5714, 0.2857, 0.1905, 0.1428},
      {0.0000, 0.0000, 0.0000, 0.0000, 1.0000, 0.0000, 0.0000, 0.0000, 0.0000, 1.0000},
      {0.2500, 0.3333, 0.5000, 1.0000, 0.7500, 0.2857, 0.3809, 0.5714, 0.9523, 0.7143},
  });
}

Matrix printed_bpas() {
  return Matrix::from_rows({
      {0.0351, 0.0408, 0.0513, 0.0952, 0.0759, 0.0579, 0.0816, 0.0937, 0.0697, 0.0600},
      {0.0877, 0.1021, 0.0769, 0.0476, 0.0379, 0.0579, 0.0816, 0.0937, 0.0697, 0.0600},
      {0.0000, 0.0000, 0.0000, 0.0000, 0.1012, 0.0289, 0.0408, 0.0625, 0.1163, 0.1000},
      {0.0877, 0.1021, 0.0769, 0.0476, 0.0379, 0.0725, 0.1021, 0.0625, 0.0465, 0.0400},
      {0.0526, 0.0612, 0.0769, 0.0793, 0.0633, 0.0435, 0.0612, 0.0937, 0.0931, 0.0800},
      {0.0351, 0.0408, 0.0512, 0.0952, 0.0759, 0.0435, 0.0612, 0.0937, 0.0931, 0.0800},
      {0.0877, 0.1021, 0.0769, 0.0476, 0.0379, 0.0725, 0.1021, 0.0625, 0.0465, 0.0400},
      {0.0702, 0.0816, 0.1026, 0.0635, 0.0506, 0.1014, 0.0000, 0.0000, 0.0000, 0.0000},
      {0.0351, 0.0408, 0.0512, 0.0952, 0.0759, 0.0289, 0.0408, 0.0625, 0.1162, 0.1000},
      {0.0702, 0.0816, 0.1026, 0.0635, 0.0506, 0.0579, 0.0816, 0.0938, 0.0697, 0.0600},
      {0.1404, 0.0000, 0.0000, 0.0000, 0.0000, 0.1015, 0.0000, 0.0000, 0.0000, 0.0000},
      {0.1053, 0.1224, 0.0513, 0.0317, 0.0253, 0.0869, 0.0612, 0.0313, 0.0233, 0.0200},
      {0.0526, 0.0612, 0.0769, 0.0794, 0.0633, 0.0579, 0.0816, 0.0938, 0.0698, 0.0600},
      {0.0351, 0.0408, 0.0513, 0.0952, 0.0759, 0.0724, 0.1021, 0.0625, 0.0465, 0.0400},
      {0.0702, 0.0816, 0.1026, 0.0635, 0.0506, 0.0869, 0.0612, 0.0313, 0.0233, 0.0200},
      {0.0000, 0.0000, 0.0000, 0.0000, 0.1013, 0.0000, 0.0000, 0.0000, 0.0000, 0.1400},
      {0.0351, 0.0408, 0.0512, 0.0952, 0.0759, 0.0289, 0.0408, 0.0625, 0.1163, 0.1000},
  });
}

std::vector<PrintDefect> membership_print_defects() {
  return {
      {9, 3, 0.667, 5e-4, "printed with three decimals; checked at print precision"},
      {12, 9, 3.0 / 7.0, 1e-4, "printed 0.3809; the matching BPA cell (0.0600) implies 3/7"},
  };
}

Matrix printed_pairwise_divergence() {
  Matrix m = Matrix::from_rows({
      {6, 0, 2, 7, 16, 3},    {31, 4, 9, 59, 74, 1}, {36, 58, 29, 3, 1, 5},  {3, 1, 9, 6, 1, 13},
      {4, 9, 49, 1, 26, 16},  {0, 1, 32, 1, 34, 26}, {0, 1, 20, 0, 22, 4},   {5, 34, 15, 12, 2, 4},
      {39, 37, 17, 1, 5, 4},  {11, 1, 0, 9, 10, 0},  {36, 25, 29, 1, 1, 0},  {93, 53, 45, 6, 9, 0},
      {4, 40, 44, 19, 21, 1}, {2, 21, 41, 35, 60, 3}, {65, 3, 8, 41, 28, 1}, {45, 44, 45, 0, 0, 0},
      {1, 7, 61, 14, 81, 27},
  });
  return m.scaled(1e-4);
}

std::vector<double> printed_pair_averages() { return {0.0023, 0.0021, 0.0027, 0.0012, 0.0023, 0.0007}; }

Matrix printed_divergence_matrix() {
  return Matrix::from_rows({
      {0.0000, 0.0023, 0.0021, 0.0027},
      {0.0021, 0.0000, 0.0012, 0.0023},
      {0.0021, 0.0012, 0.0000, 0.0007},
      {0.0027, 0.0023, 0.0007, 0.0000},
  });
}

std::vector<double> printed_expert_averages() { return {0.0017, 0.0014, 0.0010, 0.0014}; }
std::vector<double> printed_expert_supports() { return {573.03, 691.65, 997.56, 704.38}; }
std::vector<double> printed_expert_weights() { return {0.1932, 0.2331, 0.3362, 0.2374}; }
std::vector<std::size_t> printed_expert_order() { return {2, 3, 1, 0}; }

Matrix printed_fused() {
  return Matrix::from_rows({
      {0.2715, 0.2474}, {0.2137, 0.2364}, {0.2797, 0.2869}, {0.2093, 0.2218}, {0.2164, 0.2264}, {0.2544, 0.2599},
      {0.2211, 0.2241}, {0.2513, 0.2235}, {0.2961, 0.2791}, {0.2299, 0.2449}, {0.1982, 0.2101}, {0.1796, 0.2002},
      {0.2373, 0.2454}, {0.2578, 0.2308}, {0.2225, 0.2187}, {0.2929, 0.2821}, {0.2444, 0.2534},
  });
}

std::vector<double> printed_ideal() { return {0.2961, 0.2869}; }

std::vector<int> printed_ranks() { return {4, 12, 3, 15, 13, 5, 12, 9, 1, 10, 16, 17, 8, 7, 14, 2, 6}; }

PipelineConfig calibrated_config() {
  PipelineConfig c;
  c.membership.terms = kTerms;
  c.owa_scheme = OwaScheme::orness;
  c.owa_orness = 0.95;
  c.log_base = LogBase::two;
  c.pair_weights = {0.5, 0.5};
  c.wpbl_axis = WpblAxis::attributes;
  c.pair_aggregation = PairAggregation::mean;
  c.average_convention = AverageConvention::divide_by_k;
  c.zero_divergence = ZeroDivergencePolicy::error;
  return c;
}

}  // namespace emagdm::recruitment
