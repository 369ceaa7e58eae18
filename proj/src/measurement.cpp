#include "factnet/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "factnet/complex_matrix.hpp"
#include "factnet/errors.hpp"
#include "factnet/scenarios.hpp"

namespace factnet {

std::pair<FactNet, AmplitudeTable> restrict_net(const FactNet& net,
                                                const AmplitudeTable& table,
                                                const Restriction& restriction) {
  if (!net.has_system(restriction.observer))
    raise(errc::unknown_system, "unknown observer '" + restriction.observer + "'");
  for (const auto& [neighbor, kept] : restriction.keep) {
    auto facts = net.fact_set(restriction.observer, neighbor);
    if (facts.empty())
      raise(errc::not_neighbor, "'" + neighbor + "' is not a neighbor of '" +
                                    restriction.observer + "'");
    if (kept.empty())
      raise(errc::empty_keep_set, "keep set for '" + neighbor + "' is empty");
    for (const auto& f : kept)
      if (std::find(facts.begin(), facts.end(), f) == facts.end())
        raise(errc::unknown_fact, "fact '" + f + "' is not in the fact-set of (" +
                                      restriction.observer + ", " + neighbor + ")");
  }

  FactNetBuilder builder;
  for (const auto& s : net.systems()) builder.add_system(s);
  if (net.self_facts_allowed()) builder.allow_self_facts();
  for (const Fact& f : net.facts()) {
    std::string other;
    if (f.a == restriction.observer)
      other = f.b;
    else if (f.b == restriction.observer)
      other = f.a;
    if (!other.empty()) {
      auto it = restriction.keep.find(other);
      if (it != restriction.keep.end() && !it->second.count(f.id)) continue;
    }
    builder.add_fact(f.a, f.b, f.id, f.label);
  }
  for (const auto& [pair, w] : net.fact_set_weights())
    builder.set_fact_set_weight(pair.first, pair.second, w);
  FactNet restricted = builder.build();
  auto ptr = std::make_shared<const FactNet>(restricted);
  return {restricted, table.rebind(ptr)};
}

AmplitudeTable reconstruct_w_prime(const FactNet& net, const AmplitudeTable& table,
                                   const Ordering& ordering) {
  const std::string& observer = table.system();
  if (!(net == table.net()))
    raise(errc::bad_params, "table is not bound to the given net");
  if (!net.is_star_shaped(observer))
    raise(errc::not_star_shaped,
          "W' reconstruction requires a star-shaped net around '" + observer + "'");
  std::vector<std::string> hood = net.neighborhood(observer);
  hood.erase(std::remove(hood.begin(), hood.end(), observer), hood.end());
  std::vector<std::string> sorted_order = ordering.sequence;
  std::sort(sorted_order.begin(), sorted_order.end());
  if (sorted_order != hood ||
      std::adjacent_find(sorted_order.begin(), sorted_order.end()) !=
          sorted_order.end())
    raise(errc::incomplete_ordering,
          "ordering must list every neighbor of '" + observer + "' exactly once");

  const std::size_t n = ordering.sequence.size();
  std::vector<std::vector<std::uint32_t>> bases(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto span = net.fact_set_indices(observer, ordering.sequence[k]);
    bases[k].assign(span.begin(), span.end());
  }

  // Adjacent amplitude-map blocks, then cumulative products with the
  // intermediate fact-set weights.
  std::vector<ComplexMatrix> adjacent(n > 0 ? n - 1 : 0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    ComplexMatrix m(bases[k].size(), bases[k + 1].size());
    for (std::size_t r = 0; r < bases[k].size(); ++r)
      for (std::size_t c = 0; c < bases[k + 1].size(); ++c)
        m(r, c) = table.value_at(bases[k][r], bases[k + 1][c]);
    adjacent[k] = std::move(m);
  }

  auto ptr = table.net_ptr();
  AmplitudeTableBuilder tb(ptr, observer);
  for (std::size_t i = 0; i < n; ++i) {
    ComplexMatrix block;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1) {
        block = adjacent[i];
      } else {
        double w = net.fact_set_weight(observer, ordering.sequence[j - 1]);
        block = block * adjacent[j - 1].scaled(w);
      }
      for (std::size_t r = 0; r < bases[i].size(); ++r)
        for (std::size_t c = 0; c < bases[j].size(); ++c)
          tb.set(net.fact_at(bases[i][r]).id, net.fact_at(bases[j][c]).id,
                 block(r, c));
    }
  }
  return tb.build();
}

namespace {

std::vector<std::pair<double, double>> slit_intensity(
    double l1, double l2, double d, double sigma, const std::vector<double>& grid,
    bool both_slits) {
  if (!(sigma > 0.0)) raise(errc::non_positive_sigma, "sigma must be positive");
  if (grid.empty()) raise(errc::bad_params, "screen grid is empty");

  ScenarioSpec spec;
  spec.name = Scenario::double_slit;
  spec.params["l1"] = std::to_string(l1);
  spec.params["l2"] = std::to_string(l2);
  spec.params["d"] = std::to_string(d);
  spec.params["sigma"] = std::to_string(sigma);
  ScenarioResult scenario = generate_with_grid(spec, grid);
  const std::string electron = "electron";
  FactNet net = scenario.net;
  AmplitudeTable table = scenario.tables.at(electron);

  if (!both_slits) {
    Restriction r;
    r.observer = electron;
    r.keep["slits"] = {"A"};
    std::tie(net, table) = restrict_net(net, table, r);
  }
  Ordering ordering{{"source", "slits", "screen"}};
  AmplitudeTable w_prime = reconstruct_w_prime(net, table, ordering);

  std::vector<std::pair<double, double>> out;
  out.reserve(grid.size());
  for (std::uint32_t xi : net.fact_set_indices(electron, "screen")) {
    const Fact& f = net.fact_at(xi);
    out.emplace_back(std::stod(f.label),
                     w_prime.conditional_probability(f.id, "1"));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::pair<double, double>> double_slit_intensity(
    double l1, double l2, double d, double sigma, const std::vector<double>& grid) {
  return slit_intensity(l1, l2, d, sigma, grid, true);
}

std::vector<std::pair<double, double>> single_slit_intensity(
    double l1, double l2, double d, double sigma, const std::vector<double>& grid) {
  return slit_intensity(l1, l2, d, sigma, grid, false);
}

std::size_t count_local_maxima(const std::vector<std::pair<double, double>>& curve) {
  std::size_t count = 0;
  for (std::size_t i = 1; i + 1 < curve.size(); ++i)
    if (curve[i].second > curve[i - 1].second &&
        curve[i].second > curve[i + 1].second)
      ++count;
  return count;
}

}  // namespace factnet
