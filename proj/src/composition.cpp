#include "factnet/composition.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "factnet/errors.hpp"

namespace factnet {

std::string composite_fact_id(std::string_view a_fact, std::string_view b_fact) {
  return "(" + std::string(a_fact) + "|" + std::string(b_fact) + ")";
}

std::string composite_system_name(std::string_view a_system,
                                  std::string_view b_system) {
  return std::string(a_system) + "∪" + std::string(b_system);
}

namespace {

void require_neighbor(const FactNet& net, std::string_view s, std::string_view n) {
  if (net.fact_set_indices(s, n).empty())
    raise(errc::not_neighbor,
          "'" + std::string(n) + "' is not a neighbor of '" + std::string(s) + "'");
}

}  // namespace

GlueResult glue(const FactNet& net, const AmplitudeTable& table, std::string_view s,
                std::string_view a_system, std::string_view b_system) {
  if (table.system() != s)
    raise(errc::bad_params, "table belongs to '" + table.system() + "', not '" +
                                std::string(s) + "'");
  if (a_system == b_system)
    raise(errc::not_neighbor, "glue needs two distinct neighbors");
  require_neighbor(net, s, a_system);
  require_neighbor(net, s, b_system);
  const std::string composite = composite_system_name(a_system, b_system);
  if (net.has_system(composite))
    raise(errc::name_collision, "system '" + composite + "' already exists");

  GlueResult out;
  FactNetBuilder builder(net);
  builder.add_system(composite);
  std::vector<std::string> a_facts = net.fact_set(s, a_system);
  std::vector<std::string> b_facts = net.fact_set(s, b_system);
  for (const auto& a : a_facts)
    for (const auto& b : b_facts) {
      std::string id = composite_fact_id(a, b);
      if (net.has_fact(id))
        raise(errc::name_collision, "fact '" + id + "' already exists");
      builder.add_fact(s, composite, id);
      out.pairing[id] = {a, b};
    }
  out.net = builder.build();
  out.composite = composite;

  auto net_ptr = std::make_shared<const FactNet>(out.net);
  AmplitudeTableBuilder tb(table.rebind(net_ptr));
  for (const auto& [id, pair] : out.pairing) {
    const auto& [a0, b0] = pair;
    // A-marginal: W((a0,b0), a1) = delta(a0,a1) W(b0, a1)
    for (const auto& a1 : a_facts)
      tb.set(id, a1, a0 == a1 ? table.value(b0, a1) : cplx{});
    // B-marginal: W((a0,b0), b1) = delta(b0,b1) W(a0, b1)
    for (const auto& b1 : b_facts)
      tb.set(id, b1, b0 == b1 ? table.value(a0, b1) : cplx{});
  }
  out.table = tb.build();
  return out;
}

SplitResult split_to_qubits(const FactNet& net, const AmplitudeTable& table,
                            std::string_view s, std::string_view a_system) {
  if (table.system() != s)
    raise(errc::bad_params, "table belongs to '" + table.system() + "', not '" +
                                std::string(s) + "'");
  require_neighbor(net, s, a_system);
  if (s == a_system)
    raise(errc::not_neighbor, "cannot split the self fact-set");

  std::vector<std::string> a_facts = net.fact_set(s, a_system);

  SplitResult out;
  FactNetBuilder builder;
  for (const auto& sys : net.systems()) {
    if (sys == a_system) continue;
    builder.add_system(sys);
  }
  if (net.self_facts_allowed()) builder.allow_self_facts();
  bool drop_system = true;
  for (const Fact& f : net.facts()) {
    bool in_split_set =
        std::find(a_facts.begin(), a_facts.end(), f.id) != a_facts.end();
    if (in_split_set) continue;
    if (f.a == a_system || f.b == a_system) drop_system = false;
  }
  if (!drop_system) builder.add_system(a_system);
  for (const Fact& f : net.facts()) {
    bool in_split_set =
        std::find(a_facts.begin(), a_facts.end(), f.id) != a_facts.end();
    if (in_split_set) continue;
    builder.add_fact(f.a, f.b, f.id, f.label);
  }
  for (const auto& a : a_facts) {
    if (net.has_system(a) || builder.has_system(a))
      raise(errc::name_collision,
            "cannot name a qubit system '" + a + "': the name is taken");
    builder.add_system(a);
    builder.add_fact(std::string(s), a, "0_" + a);
    builder.add_fact(std::string(s), a, "1_" + a);
    out.qubits[a] = a;
  }
  for (const auto& [pair, w] : net.fact_set_weights())
    if (pair.first != a_system && pair.second != a_system)
      builder.set_fact_set_weight(pair.first, pair.second, w);
  out.net = builder.build();

  auto net_ptr = std::make_shared<const FactNet>(out.net);
  // Entries between surviving facts carry over; the 1-sector then inherits
  // the external correlations of the promoted facts.
  AmplitudeTableBuilder tb(table.rebind(net_ptr));
  for (const auto& a : a_facts) {
    for (std::uint32_t xi : net.incident_indices(s)) {
      const Fact& x = net.fact_at(xi);
      bool external =
          std::find(a_facts.begin(), a_facts.end(), x.id) == a_facts.end();
      if (!external) continue;
      if (!table.is_set(a, x.id)) continue;
      tb.set("1_" + a, x.id, table.value(a, x.id));
    }
  }
  out.table = tb.build();
  return out;
}

std::pair<FactNet, AmplitudeTable> reduce_from_qubits(
    const FactNet& net, const AmplitudeTable& table, std::string_view s,
    const std::vector<std::string>& qubit_systems, std::string_view merged_name,
    double tol) {
  if (table.system() != s)
    raise(errc::bad_params, "table belongs to '" + table.system() + "', not '" +
                                std::string(s) + "'");
  if (qubit_systems.empty()) raise(errc::bad_params, "no qubit systems given");
  std::vector<std::string> ones;
  std::vector<std::string> zeros_and_ones;
  for (const auto& q : qubit_systems) {
    auto facts = net.fact_set(s, q);
    if (facts.size() != 2)
      raise(errc::bad_params, "system '" + q + "' does not look like a qubit of '" +
                                  std::string(s) + "'");
    std::string one = "1_" + q;
    std::string zero = "0_" + q;
    if (std::find(facts.begin(), facts.end(), one) == facts.end() ||
        std::find(facts.begin(), facts.end(), zero) == facts.end())
      raise(errc::bad_params, "system '" + q + "' lacks the 0_/1_ fact pair");
    ones.push_back(one);
    zeros_and_ones.push_back(zero);
    zeros_and_ones.push_back(one);
  }
  for (std::size_t i = 0; i < ones.size(); ++i)
    for (std::size_t j = i + 1; j < ones.size(); ++j)
      if (std::abs(table.value(ones[i], ones[j])) > tol)
        raise(errc::reduction_obstruction,
              "W(" + ones[i] + "," + ones[j] + ") is nonzero; the split sets were "
              "not mutually exclusive");

  if (net.has_system(merged_name))
    raise(errc::name_collision,
          "system '" + std::string(merged_name) + "' already exists");

  FactNetBuilder builder;
  for (const auto& sys : net.systems())
    if (std::find(qubit_systems.begin(), qubit_systems.end(), sys) ==
        qubit_systems.end())
      builder.add_system(sys);
  builder.add_system(merged_name);
  if (net.self_facts_allowed()) builder.allow_self_facts();
  for (const Fact& f : net.facts()) {
    bool qubit_fact = std::find(zeros_and_ones.begin(), zeros_and_ones.end(),
                                f.id) != zeros_and_ones.end();
    if (qubit_fact) continue;
    builder.add_fact(f.a, f.b, f.id, f.label);
  }
  for (const auto& q : qubit_systems) builder.add_fact(std::string(s), merged_name, q);
  FactNet reduced = builder.build();

  auto net_ptr = std::make_shared<const FactNet>(reduced);
  AmplitudeTableBuilder tb(table.rebind(net_ptr));
  for (const auto& q : qubit_systems) {
    for (std::uint32_t xi : net.incident_indices(s)) {
      const Fact& x = net.fact_at(xi);
      bool internal = std::find(zeros_and_ones.begin(), zeros_and_ones.end(),
                                x.id) != zeros_and_ones.end();
      if (internal) continue;
      if (!table.is_set("1_" + q, x.id)) continue;
      tb.set(q, x.id, table.value("1_" + q, x.id));
    }
  }
  return {reduced, tb.build()};
}

std::string self_fact_id(std::string_view system) {
  return std::string(system) + "~self";
}

FactNet enable_self_facts(const FactNet& net) {
  FactNetBuilder builder(net);
  builder.allow_self_facts();
  for (const auto& s : net.systems()) {
    bool has_self = net.self_facts_allowed() && !net.fact_set_indices(s, s).empty();
    if (!has_self) builder.add_fact(s, s, self_fact_id(s));
  }
  return builder.build();
}

}  // namespace factnet
