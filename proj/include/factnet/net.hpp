#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace factnet {

/// An edge of the net. Endpoints are stored in sorted order; the edge itself
/// is unoriented. `label` is display-only and never affects identity lookups.
struct Fact {
  std::string id;
  std::string a;
  std::string b;
  std::string label;

  bool operator==(const Fact&) const = default;
};

using SystemPair = std::pair<std::string, std::string>;

SystemPair make_pair_key(std::string_view x, std::string_view y);

/// Immutable multigraph of systems and facts. All mutating operations return
/// a new value; instances are safe to share read-only across threads.
///
/// Facts carry a dense index (their position in id-sorted order) used by
/// amplitude tables for fast keying. Two nets built from the same add calls in
/// any order compare equal.
class FactNet {
 public:
  FactNet() = default;

  FactNet add_system(std::string_view name) const;
  FactNet add_fact(std::string_view a, std::string_view b, std::string_view id,
                   std::string_view label = "") const;
  /// Quadrature weight attached to the fact-set of a pair; enters chain sums
  /// as the weight of the intermediate fact-set. Defaults to 1.
  FactNet with_fact_set_weight(std::string_view a, std::string_view b,
                               double weight) const;
  FactNet with_self_facts_allowed() const;

  bool has_system(std::string_view name) const;
  bool has_fact(std::string_view id) const;

  const std::vector<std::string>& systems() const { return systems_; }
  const std::vector<Fact>& facts() const { return facts_; }

  const Fact& fact(std::string_view id) const;
  const Fact& fact_at(std::size_t index) const { return facts_[index]; }
  std::uint32_t fact_index(std::string_view id) const;

  std::vector<std::string> fact_set(std::string_view a, std::string_view b) const;
  std::span<const std::uint32_t> fact_set_indices(std::string_view a,
                                                  std::string_view b) const;
  std::vector<std::string> neighborhood(std::string_view s) const;
  std::vector<std::string> incident(std::string_view s) const;
  std::span<const std::uint32_t> incident_indices(std::string_view s) const;

  /// True iff every fact touches `center` and no fact joins two other systems.
  bool is_star_shaped(std::string_view center) const;

  double fact_set_weight(std::string_view a, std::string_view b) const;
  const std::map<SystemPair, double>& fact_set_weights() const { return weights_; }
  bool self_facts_allowed() const { return self_facts_; }

  bool operator==(const FactNet& rhs) const;

 private:
  friend class FactNetBuilder;
  void reindex();
  void require_system(std::string_view name) const;

  std::vector<std::string> systems_;  // sorted
  std::vector<Fact> facts_;           // sorted by id
  std::map<std::string, std::uint32_t, std::less<>> fact_by_id_;
  std::map<SystemPair, std::vector<std::uint32_t>> by_pair_;
  std::map<std::string, std::vector<std::uint32_t>, std::less<>> by_system_;
  std::map<SystemPair, double> weights_;  // only entries != 1.0
  bool self_facts_ = false;
};

/// Mutable assembly buffer; avoids the copy-per-call cost of the immutable
/// interface when generating grid-sized nets.
class FactNetBuilder {
 public:
  FactNetBuilder() = default;
  explicit FactNetBuilder(const FactNet& base);

  FactNetBuilder& add_system(std::string_view name);
  FactNetBuilder& add_fact(std::string_view a, std::string_view b,
                           std::string_view id, std::string_view label = "");
  FactNetBuilder& set_fact_set_weight(std::string_view a, std::string_view b,
                                      double weight);
  FactNetBuilder& allow_self_facts();

  bool has_system(std::string_view name) const;

  FactNet build() const;

 private:
  std::vector<std::string> systems_;
  std::vector<Fact> facts_;
  std::map<SystemPair, double> weights_;
  bool self_facts_ = false;
};

}  // namespace factnet
