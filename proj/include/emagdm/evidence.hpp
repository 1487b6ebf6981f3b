#pragma once

// Dempster-Shafer primitives: frames of discernment, mass functions,
// belief / plausibility, Dempster's rule and the WPBl distribution used by
// the belief divergences.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace emagdm {

/// Subset of an indexed frame, stored as a multi-word bitset.
class Subset {
 public:
  Subset() = default;
  explicit Subset(std::size_t universe);
  Subset(std::size_t universe, std::initializer_list<std::size_t> members);

  static Subset full(std::size_t universe);

  void insert(std::size_t index);
  bool contains(std::size_t index) const;

  std::size_t universe() const { return universe_; }
  std::size_t cardinality() const;
  bool empty() const;

  bool is_subset_of(const Subset& other) const;
  bool intersects(const Subset& other) const;
  Subset intersection(const Subset& other) const;
  Subset complement() const;
  std::vector<std::size_t> members() const;

  bool operator==(const Subset& other) const = default;
  /// Canonical order: by cardinality, then lexicographically by members.
  friend bool canonical_less(const Subset& a, const Subset& b);

 private:
  void require_same_universe(const Subset& other) const;

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Ordered set of mutually exclusive hypotheses.
class Frame {
 public:
  explicit Frame(std::vector<std::string> labels);

  static std::shared_ptr<const Frame> make(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t index) const { return labels_.at(index); }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Throws DomainError for labels not in the frame.
  std::size_t index_of(std::string_view label) const;
  Subset subset(std::initializer_list<std::string_view> labels) const;
  Subset singleton(std::size_t index) const;
  Subset whole() const { return Subset::full(size()); }

 private:
  std::vector<std::string> labels_;
};

using FramePtr = std::shared_ptr<const Frame>;

struct FocalElement {
  Subset set;
  double mass = 0.0;
};

/// Mass assignment over nonempty subsets of a frame. Zero-mass entries are
/// dropped and duplicate subsets merged on construction. Bpa adds the
/// sum-to-one requirement; PseudoBpa does not.
class MassFunction {
 public:
  static constexpr double kMassTolerance = 1e-9;

  const Frame& frame() const { return *frame_; }
  const FramePtr& frame_ptr() const { return frame_; }
  std::span<const FocalElement> focal_elements() const { return focal_; }

  double mass(const Subset& set) const;
  double total_mass() const;

 protected:
  MassFunction(FramePtr frame, std::vector<FocalElement> focal);

 private:
  FramePtr frame_;
  std::vector<FocalElement> focal_;
};

class Bpa : public MassFunction {
 public:
  Bpa(FramePtr frame, std::vector<FocalElement> focal);
};

class PseudoBpa : public MassFunction {
 public:
  PseudoBpa(FramePtr frame, std::vector<FocalElement> focal);
};

double belief(const MassFunction& m, const Subset& u);
double plausibility(const MassFunction& m, const Subset& u);

struct Combination {
  Bpa combined;
  double conflict;
};

/// Dempster's rule. Throws TotalConflictError when K = 1.
Combination dempster_combine(const Bpa& a, const Bpa& b);

/// Normalized Bel + Pl over an ordered list of propositions.
class WpblDistribution {
 public:
  WpblDistribution(FramePtr frame, std::vector<double> values);

  const FramePtr& frame_ptr() const { return frame_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  FramePtr frame_;
  std::vector<double> values_;
};

/// Throws DegenerateError when every proposition has Bel + Pl = 0.
WpblDistribution wpbl(const MassFunction& m, std::span<const Subset> propositions);

/// Singletons of every frame element, in frame order.
std::vector<Subset> singleton_propositions(const Frame& frame);

/// "{a,b}: 0.400000" lines in canonical focal order.
std::string render(const MassFunction& m);

}  // namespace emagdm
