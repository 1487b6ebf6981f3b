#include "emagdm/evidence.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <unordered_set>

#include "emagdm/errors.hpp"

namespace emagdm {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t universe) { return (universe + kWordBits - 1) / kWordBits; }

}  // namespace

// ---------------------------------------------------------------------------
// Subset

Subset::Subset(std::size_t universe) : universe_(universe), words_(word_count(universe), 0) {}

Subset::Subset(std::size_t universe, std::initializer_list<std::size_t> members) : Subset(universe) {
  for (auto i : members) insert(i);
}

Subset Subset::full(std::size_t universe) {
  Subset s(universe);
  for (std::size_t i = 0; i < universe; ++i) s.insert(i);
  return s;
}

void Subset::insert(std::size_t index) {
  if (index >= universe_) {
    throw DomainError("subset element " + std::to_string(index) + " outside frame of size " +
                      std::to_string(universe_));
  }
  words_[index / kWordBits] |= std::uint64_t{1} << (index % kWordBits);
}

bool Subset::contains(std::size_t index) const {
  if (index >= universe_) return false;
  return (words_[index / kWordBits] >> (index % kWordBits)) & 1U;
}

std::size_t Subset::cardinality() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool Subset::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

void Subset::require_same_universe(const Subset& other) const {
  if (universe_ != other.universe_) {
    throw DomainError("subsets belong to frames of different size (" + std::to_string(universe_) +
                      " vs " + std::to_string(other.universe_) + ")");
  }
}

bool Subset::is_subset_of(const Subset& other) const {
  require_same_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

bool Subset::intersects(const Subset& other) const {
  require_same_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & other.words_[w]) != 0) return true;
  }
  return false;
}

Subset Subset::intersection(const Subset& other) const {
  require_same_universe(other);
  Subset out(universe_);
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = words_[w] & other.words_[w];
  return out;
}

Subset Subset::complement() const {
  Subset out(universe_);
  for (std::size_t i = 0; i < universe_; ++i) {
    if (!contains(i)) out.insert(i);
  }
  return out;
}

std::vector<std::size_t> Subset::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < universe_; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

bool canonical_less(const Subset& a, const Subset& b) {
  const auto ca = a.cardinality();
  const auto cb = b.cardinality();
  if (ca != cb) return ca < cb;
  return a.members() < b.members();
}

// ---------------------------------------------------------------------------
// Frame

Frame::Frame(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw DomainError("frame of discernment needs at least one element");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) throw DomainError("duplicate frame element '" + l + "'");
  }
}

std::shared_ptr<const Frame> Frame::make(std::vector<std::string> labels) {
  return std::make_shared<const Frame>(std::move(labels));
}

std::size_t Frame::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw DomainError("'" + std::string(label) + "' is not in the frame");
  return static_cast<std::size_t>(it - labels_.begin());
}

Subset Frame::subset(std::initializer_list<std::string_view> labels) const {
  Subset s(size());
  for (auto l : labels) s.insert(index_of(l));
  return s;
}

Subset Frame::singleton(std::size_t index) const {
  Subset s(size());
  s.insert(index);
  return s;
}

// ---------------------------------------------------------------------------
// Mass functions

MassFunction::MassFunction(FramePtr frame, std::vector<FocalElement> focal) : frame_(std::move(frame)) {
  if (!frame_) throw DomainError("mass function needs a frame");
  for (auto& fe : focal) {
    if (fe.set.universe() != frame_->size()) {
      throw DomainError("focal element does not belong to the frame");
    }
    if (!std::isfinite(fe.mass) || fe.mass < 0.0 || fe.mass > 1.0) {
      throw DomainError("mass outside [0, 1]");
    }
    if (fe.set.empty()) {
      if (fe.mass != 0.0) throw DomainError("the empty set must carry zero mass");
      continue;
    }
    if (fe.mass == 0.0) continue;
    auto it = std::find_if(focal_.begin(), focal_.end(), [&](const FocalElement& e) { return e.set == fe.set; });
    if (it != focal_.end()) {
      it->mass += fe.mass;
      if (it->mass > 1.0 + kMassTolerance) throw DomainError("merged mass exceeds 1");
    } else {
      focal_.push_back(std::move(fe));
    }
  }
  std::sort(focal_.begin(), focal_.end(),
            [](const FocalElement& a, const FocalElement& b) { return canonical_less(a.set, b.set); });
}

double MassFunction::mass(const Subset& set) const {
  for (const auto& fe : focal_) {
    if (fe.set == set) return fe.mass;
  }
  return 0.0;
}

double MassFunction::total_mass() const {
  double s = 0.0;
  for (const auto& fe : focal_) s += fe.mass;
  return s;
}

Bpa::Bpa(FramePtr frame, std::vector<FocalElement> focal) : MassFunction(std::move(frame), std::move(focal)) {
  const double total = total_mass();
  if (std::abs(total - 1.0) > kMassTolerance) {
    std::ostringstream os;
    os << std::setprecision(12) << "BPA masses sum to " << total << ", expected 1";
    throw DomainError(os.str());
  }
}

PseudoBpa::PseudoBpa(FramePtr frame, std::vector<FocalElement> focal)
    : MassFunction(std::move(frame), std::move(focal)) {}

namespace {

void require_in_frame(const MassFunction& m, const Subset& u) {
  if (u.universe() != m.frame().size()) {
    throw DomainError("proposition is not a subset of the mass function's frame");
  }
}

}  // namespace

double belief(const MassFunction& m, const Subset& u) {
  require_in_frame(m, u);
  double s = 0.0;
  for (const auto& fe : m.focal_elements()) {
    if (fe.set.is_subset_of(u)) s += fe.mass;
  }
  return s;
}

double plausibility(const MassFunction& m, const Subset& u) {
  require_in_frame(m, u);
  double s = 0.0;
  for (const auto& fe : m.focal_elements()) {
    if (fe.set.intersects(u)) s += fe.mass;
  }
  return s;
}

Combination dempster_combine(const Bpa& a, const Bpa& b) {
  if (a.frame_ptr() != b.frame_ptr() && a.frame().labels() != b.frame().labels()) {
    throw DomainError("Dempster combination needs BPAs on the same frame");
  }
  std::vector<FocalElement> joint;
  double conflict = 0.0;
  for (const auto& x : a.focal_elements()) {
    for (const auto& y : b.focal_elements()) {
      const double product = x.mass * y.mass;
      Subset meet = x.set.intersection(y.set);
      if (meet.empty()) {
        conflict += product;
        continue;
      }
      auto it = std::find_if(joint.begin(), joint.end(), [&](const FocalElement& e) { return e.set == meet; });
      if (it != joint.end()) {
        it->mass += product;
      } else {
        joint.push_back({std::move(meet), product});
      }
    }
  }
  const double normalizer = 1.0 - conflict;
  if (normalizer <= MassFunction::kMassTolerance) {
    throw TotalConflictError("total conflict between BPAs (K = 1); Dempster's rule is undefined");
  }
  for (auto& fe : joint) fe.mass = std::min(1.0, fe.mass / normalizer);
  return {Bpa(a.frame_ptr(), std::move(joint)), conflict};
}

// ---------------------------------------------------------------------------
// WPBl

WpblDistribution::WpblDistribution(FramePtr frame, std::vector<double> values)
    : frame_(std::move(frame)), values_(std::move(values)) {
  double s = 0.0;
  for (double v : values_) {
    if (!(v >= 0.0)) throw DomainError("WPBl values must be nonnegative");
    s += v;
  }
  if (std::abs(s - 1.0) > MassFunction::kMassTolerance) throw DomainError("WPBl values must sum to 1");
}

WpblDistribution wpbl(const MassFunction& m, std::span<const Subset> propositions) {
  if (propositions.empty()) throw DomainError("WPBl needs at least one proposition");
  std::vector<double> raw;
  raw.reserve(propositions.size());
  double denom = 0.0;
  for (const auto& p : propositions) {
    const double v = belief(m, p) + plausibility(m, p);
    raw.push_back(v);
    denom += v;
  }
  if (denom <= 0.0) throw DegenerateError("degenerate evidence: Bel + Pl is zero on every proposition");
  for (auto& v : raw) v /= denom;
  return WpblDistribution(m.frame_ptr(), std::move(raw));
}

std::vector<Subset> singleton_propositions(const Frame& frame) {
  std::vector<Subset> out;
  out.reserve(frame.size());
  for (std::size_t i = 0; i < frame.size(); ++i) out.push_back(frame.singleton(i));
  return out;
}

std::string render(const MassFunction& m) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6);
  for (const auto& fe : m.focal_elements()) {
    os << '{';
    bool first = true;
    for (auto i : fe.set.members()) {
      if (!first) os << ',';
      os << m.frame().label(i);
      first = false;
    }
    os << "}: " << fe.mass << '\n';
  }
  return os.str();
}

}  // namespace emagdm
