#include "factnet/net.hpp"

#include <algorithm>

#include "factnet/errors.hpp"

namespace factnet {

SystemPair make_pair_key(std::string_view x, std::string_view y) {
  if (y < x) std::swap(x, y);
  return {std::string(x), std::string(y)};
}

void FactNet::require_system(std::string_view name) const {
  if (!has_system(name))
    raise(errc::unknown_system, "unknown system '" + std::string(name) + "'");
}

bool FactNet::has_system(std::string_view name) const {
  return std::binary_search(systems_.begin(), systems_.end(), name);
}

bool FactNet::has_fact(std::string_view id) const {
  return fact_by_id_.find(id) != fact_by_id_.end();
}

const Fact& FactNet::fact(std::string_view id) const {
  auto it = fact_by_id_.find(id);
  if (it == fact_by_id_.end())
    raise(errc::unknown_fact, "unknown fact '" + std::string(id) + "'");
  return facts_[it->second];
}

std::uint32_t FactNet::fact_index(std::string_view id) const {
  auto it = fact_by_id_.find(id);
  if (it == fact_by_id_.end())
    raise(errc::unknown_fact, "unknown fact '" + std::string(id) + "'");
  return it->second;
}

FactNet FactNet::add_system(std::string_view name) const {
  if (name.empty()) raise(errc::empty_name, "system name must be non-empty");
  if (has_system(name))
    raise(errc::duplicate_system, "system '" + std::string(name) + "' already exists");
  FactNet out = *this;
  out.systems_.insert(
      std::upper_bound(out.systems_.begin(), out.systems_.end(), name),
      std::string(name));
  out.reindex();
  return out;
}

FactNet FactNet::add_fact(std::string_view a, std::string_view b,
                          std::string_view id, std::string_view label) const {
  if (id.empty()) raise(errc::empty_name, "fact id must be non-empty");
  require_system(a);
  require_system(b);
  if (has_fact(id))
    raise(errc::duplicate_fact, "fact '" + std::string(id) + "' already exists");
  if (a == b) {
    if (!self_facts_)
      raise(errc::not_incident,
            "self-facts are disabled; enable the self-fact convention first");
    if (!fact_set_indices(a, b).empty())
      raise(errc::duplicate_fact,
            "system '" + std::string(a) + "' already has its self-fact");
  }
  FactNet out = *this;
  auto key = make_pair_key(a, b);
  out.facts_.push_back(Fact{std::string(id), key.first, key.second,
                            std::string(label)});
  std::sort(out.facts_.begin(), out.facts_.end(),
            [](const Fact& x, const Fact& y) { return x.id < y.id; });
  out.reindex();
  return out;
}

FactNet FactNet::with_fact_set_weight(std::string_view a, std::string_view b,
                                      double weight) const {
  require_system(a);
  require_system(b);
  if (!(weight > 0.0)) raise(errc::bad_params, "fact-set weight must be positive");
  FactNet out = *this;
  auto key = make_pair_key(a, b);
  if (weight == 1.0)
    out.weights_.erase(key);
  else
    out.weights_[key] = weight;
  return out;
}

FactNet FactNet::with_self_facts_allowed() const {
  FactNet out = *this;
  out.self_facts_ = true;
  return out;
}

void FactNet::reindex() {
  fact_by_id_.clear();
  by_pair_.clear();
  by_system_.clear();
  for (std::uint32_t i = 0; i < facts_.size(); ++i) {
    const Fact& f = facts_[i];
    fact_by_id_.emplace(f.id, i);
    by_pair_[{f.a, f.b}].push_back(i);
    by_system_[f.a].push_back(i);
    if (f.b != f.a) by_system_[f.b].push_back(i);
  }
}

std::vector<std::string> FactNet::fact_set(std::string_view a,
                                           std::string_view b) const {
  std::vector<std::string> out;
  for (std::uint32_t i : fact_set_indices(a, b)) out.push_back(facts_[i].id);
  return out;
}

std::span<const std::uint32_t> FactNet::fact_set_indices(
    std::string_view a, std::string_view b) const {
  require_system(a);
  require_system(b);
  auto it = by_pair_.find(make_pair_key(a, b));
  if (it == by_pair_.end()) return {};
  return it->second;
}

std::vector<std::string> FactNet::neighborhood(std::string_view s) const {
  require_system(s);
  std::vector<std::string> out;
  for (const auto& [pair, ids] : by_pair_) {
    if (ids.empty()) continue;
    if (pair.first == s)
      out.push_back(pair.second);
    else if (pair.second == s)
      out.push_back(pair.first);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> FactNet::incident(std::string_view s) const {
  std::vector<std::string> out;
  for (std::uint32_t i : incident_indices(s)) out.push_back(facts_[i].id);
  return out;
}

std::span<const std::uint32_t> FactNet::incident_indices(std::string_view s) const {
  require_system(s);
  auto it = by_system_.find(s);
  if (it == by_system_.end()) return {};
  return it->second;
}

bool FactNet::is_star_shaped(std::string_view center) const {
  require_system(center);
  for (const Fact& f : facts_)
    if (f.a != center && f.b != center) return false;
  return true;
}

double FactNet::fact_set_weight(std::string_view a, std::string_view b) const {
  require_system(a);
  require_system(b);
  auto it = weights_.find(make_pair_key(a, b));
  return it == weights_.end() ? 1.0 : it->second;
}

bool FactNet::operator==(const FactNet& rhs) const {
  return systems_ == rhs.systems_ && facts_ == rhs.facts_ &&
         weights_ == rhs.weights_ && self_facts_ == rhs.self_facts_;
}

FactNetBuilder::FactNetBuilder(const FactNet& base)
    : systems_(base.systems()),
      facts_(base.facts()),
      weights_(base.fact_set_weights()),
      self_facts_(base.self_facts_allowed()) {}

bool FactNetBuilder::has_system(std::string_view name) const {
  return std::find(systems_.begin(), systems_.end(), name) != systems_.end();
}

FactNetBuilder& FactNetBuilder::add_system(std::string_view name) {
  if (name.empty()) raise(errc::empty_name, "system name must be non-empty");
  if (has_system(name))
    raise(errc::duplicate_system, "system '" + std::string(name) + "' already exists");
  systems_.emplace_back(name);
  return *this;
}

FactNetBuilder& FactNetBuilder::add_fact(std::string_view a, std::string_view b,
                                         std::string_view id,
                                         std::string_view label) {
  if (id.empty()) raise(errc::empty_name, "fact id must be non-empty");
  if (!has_system(a)) raise(errc::unknown_system, "unknown system '" + std::string(a) + "'");
  if (!has_system(b)) raise(errc::unknown_system, "unknown system '" + std::string(b) + "'");
  if (a == b && !self_facts_)
    raise(errc::not_incident,
          "self-facts are disabled; enable the self-fact convention first");
  auto key = make_pair_key(a, b);
  facts_.push_back(Fact{std::string(id), key.first, key.second, std::string(label)});
  return *this;
}

FactNetBuilder& FactNetBuilder::set_fact_set_weight(std::string_view a,
                                                    std::string_view b,
                                                    double weight) {
  if (!(weight > 0.0)) raise(errc::bad_params, "fact-set weight must be positive");
  auto key = make_pair_key(a, b);
  if (weight == 1.0)
    weights_.erase(key);
  else
    weights_[key] = weight;
  return *this;
}

FactNetBuilder& FactNetBuilder::allow_self_facts() {
  self_facts_ = true;
  return *this;
}

FactNet FactNetBuilder::build() const {
  FactNet net;
  net.systems_ = systems_;
  std::sort(net.systems_.begin(), net.systems_.end());
  if (std::adjacent_find(net.systems_.begin(), net.systems_.end()) !=
      net.systems_.end())
    raise(errc::duplicate_system, "duplicate system in builder");
  net.facts_ = facts_;
  std::sort(net.facts_.begin(), net.facts_.end(),
            [](const Fact& x, const Fact& y) { return x.id < y.id; });
  for (std::size_t i = 0; i + 1 < net.facts_.size(); ++i)
    if (net.facts_[i].id == net.facts_[i + 1].id)
      raise(errc::duplicate_fact, "duplicate fact '" + net.facts_[i].id + "'");
  net.weights_ = weights_;
  net.self_facts_ = self_facts_;
  std::size_t self_count = 0;
  for (const Fact& f : net.facts_) {
    if (!net.has_system(f.a) || !net.has_system(f.b))
      raise(errc::unknown_system, "fact '" + f.id + "' references unknown system");
    if (f.a == f.b) ++self_count;
  }
  net.reindex();
  for (const auto& s : net.systems_) {
    auto self = net.fact_set_indices(s, s);
    if (self.size() > 1)
      raise(errc::duplicate_fact, "system '" + s + "' has more than one self-fact");
  }
  (void)self_count;
  return net;
}

}  // namespace factnet
