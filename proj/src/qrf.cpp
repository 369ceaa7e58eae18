#include "factnet/qrf.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "factnet/complex_matrix.hpp"
#include "factnet/errors.hpp"

namespace factnet {

FactGroup::FactGroup(std::vector<std::string> elements,
                     std::vector<std::vector<std::string>> mul,
                     std::string identity)
    : elements_(std::move(elements)),
      mul_names_(std::move(mul)),
      identity_(std::move(identity)) {
  const std::size_t n = elements_.size();
  shape_ok_ = mul_names_.size() == n;
  for (const auto& row : mul_names_) shape_ok_ = shape_ok_ && row.size() == n;
  if (!shape_ok_) return;

  std::map<std::string, std::size_t> by_name;
  for (std::size_t i = 0; i < n; ++i) by_name.emplace(elements_[i], i);
  shape_ok_ = by_name.size() == n && by_name.count(identity_) != 0;
  if (!shape_ok_) return;

  mul_.assign(n, std::vector<std::size_t>(n, n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto it = by_name.find(mul_names_[i][j]);
      if (it == by_name.end()) {
        shape_ok_ = false;
        return;
      }
      mul_[i][j] = it->second;
    }
  inv_.assign(n, std::nullopt);
  const std::size_t e = by_name[identity_];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (mul_[i][j] == e && mul_[j][i] == e) inv_[i] = j;
}

FactGroup FactGroup::cyclic(std::size_t n) {
  std::vector<std::string> elements;
  for (std::size_t i = 0; i < n; ++i)
    elements.push_back(n == 2 && i == 1 ? "pi" : std::to_string(i));
  std::vector<std::vector<std::string>> mul(n, std::vector<std::string>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mul[i][j] = elements[(i + j) % n];
  return FactGroup(std::move(elements), std::move(mul), elements.empty() ? "" : "0");
}

std::size_t FactGroup::index(std::string_view element) const {
  auto it = std::find(elements_.begin(), elements_.end(), element);
  if (it == elements_.end())
    raise(errc::invalid_maps, "unknown group element '" + std::string(element) + "'");
  return static_cast<std::size_t>(it - elements_.begin());
}

std::string FactGroup::multiply(std::string_view x, std::string_view y) const {
  if (!shape_ok_) raise(errc::invalid_maps, "group table is malformed");
  return elements_[mul_[index(x)][index(y)]];
}

std::string FactGroup::inverse(std::string_view x) const {
  if (!shape_ok_) raise(errc::invalid_maps, "group table is malformed");
  auto inv = inv_[index(x)];
  if (!inv)
    raise(errc::invalid_maps, "element '" + std::string(x) + "' has no inverse");
  return elements_[*inv];
}

std::vector<std::string> FactGroup::validate() const {
  std::vector<std::string> out;
  const std::size_t n = elements_.size();
  if (n == 0) {
    out.push_back("group has no elements");
    return out;
  }
  if (!shape_ok_) {
    out.push_back("multiplication table is malformed (size or unknown names)");
    return out;
  }
  const std::size_t e = index(identity_);
  for (std::size_t i = 0; i < n; ++i) {
    if (mul_[e][i] != i)
      out.push_back("identity fails on the left of " + elements_[i]);
    if (mul_[i][e] != i)
      out.push_back("identity fails on the right of " + elements_[i]);
    if (!inv_[i]) out.push_back("element " + elements_[i] + " has no inverse");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (mul_[mul_[i][j]][k] != mul_[i][mul_[j][k]]) {
          out.push_back("associativity fails at (" + elements_[i] + "," +
                        elements_[j] + "," + elements_[k] + ")");
          return out;
        }
  return out;
}

IndexMaps::IndexMaps(std::shared_ptr<const FactNet> net, FactGroup group,
                     std::map<std::pair<std::string, std::string>,
                              std::map<std::string, std::string>>
                         assignments)
    : net_(std::move(net)), group_(std::move(group)), maps_(std::move(assignments)) {
  // Derive missing reverse maps through the inversion property and give
  // self-facts the neutral element.
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& [pair, map] : maps_) pairs.push_back(pair);
  for (const auto& pair : pairs) {
    auto reversed = std::make_pair(pair.second, pair.first);
    if (maps_.count(reversed)) continue;
    std::map<std::string, std::string> rev;
    for (const auto& [fact, element] : maps_.at(pair)) {
      try {
        rev[fact] = group_.inverse(element);
      } catch (const Error&) {
        rev[fact] = element;  // left for validate() to flag
      }
    }
    maps_[reversed] = std::move(rev);
  }
  if (net_) {
    for (const auto& s : net_->systems()) {
      auto self = net_->fact_set(s, s);
      if (self.empty()) continue;
      auto& map = maps_[{s, s}];
      for (const auto& f : self)
        if (!map.count(f)) map[f] = group_.identity();
    }
  }
}

std::string IndexMaps::to_group(std::string_view a_system, std::string_view b_system,
                                std::string_view fact) const {
  auto it = maps_.find({std::string(a_system), std::string(b_system)});
  if (it == maps_.end())
    raise(errc::invalid_maps, "no index map for the pair (" + std::string(a_system) +
                                  ", " + std::string(b_system) + ")");
  auto fit = it->second.find(std::string(fact));
  if (fit == it->second.end())
    raise(errc::invalid_maps,
          "fact '" + std::string(fact) + "' has no group assignment");
  return fit->second;
}

std::string IndexMaps::from_group(std::string_view a_system,
                                  std::string_view b_system,
                                  std::string_view element) const {
  auto it = maps_.find({std::string(a_system), std::string(b_system)});
  if (it == maps_.end())
    raise(errc::invalid_maps, "no index map for the pair (" + std::string(a_system) +
                                  ", " + std::string(b_system) + ")");
  for (const auto& [fact, elem] : it->second)
    if (elem == element) return fact;
  raise(errc::invalid_maps,
        "no fact maps to group element '" + std::string(element) + "'");
}

std::vector<std::string> IndexMaps::validate() const {
  std::vector<std::string> out = group_.validate();
  if (!net_) {
    out.push_back("index maps are not bound to a net");
    return out;
  }
  for (const auto& [pair, map] : maps_) {
    const auto& [a, b] = pair;
    auto facts = net_->fact_set(a, b);
    if (facts.size() != group_.elements().size())
      out.push_back("fact-set (" + a + "," + b + ") has " +
                    std::to_string(facts.size()) + " facts but the group has " +
                    std::to_string(group_.elements().size()) + " elements");
    std::set<std::string> seen;
    for (const auto& f : facts) {
      auto it = map.find(f);
      if (it == map.end()) {
        out.push_back("fact '" + f + "' of (" + a + "," + b + ") is unassigned");
        continue;
      }
      if (!seen.insert(it->second).second)
        out.push_back("element '" + it->second + "' is assigned twice in (" + a +
                      "," + b + ")");
    }
    for (const auto& [f, element] : map)
      if (std::find(facts.begin(), facts.end(), f) == facts.end())
        out.push_back("assignment for '" + f + "' which is not in (" + a + "," + b +
                      ")");
    // Inversion property against the reverse map.
    auto rit = maps_.find({b, a});
    if (rit == maps_.end()) {
      out.push_back("missing reverse map for (" + a + "," + b + ")");
      continue;
    }
    for (const auto& [f, element] : map) {
      auto bit = rit->second.find(f);
      if (bit == rit->second.end()) continue;
      try {
        if (group_.inverse(element) != bit->second)
          out.push_back("inversion property fails for fact '" + f + "' of (" + a +
                        "," + b + ")");
      } catch (const Error&) {
        // group defect already reported
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string transform_basis_fact(const IndexMaps& maps, std::string_view f,
                                 std::string_view h) {
  const Fact& ff = maps.net().fact(f);
  const Fact& hf = maps.net().fact(h);
  std::string shared;
  for (const std::string& x : {ff.a, ff.b})
    if (x == hf.a || x == hf.b) {
      if (!shared.empty() && shared != x)
        raise(errc::invalid_maps,
              "facts '" + std::string(f) + "' and '" + std::string(h) +
                  "' share both endpoints; the perspective is ambiguous");
      shared = x;
    }
  if (shared.empty())
    raise(errc::invalid_maps, "facts '" + std::string(f) + "' and '" +
                                  std::string(h) + "' share no system");
  const std::string a = shared;
  const std::string b = ff.a == a ? ff.b : ff.a;
  const std::string c = hf.a == a ? hf.b : hf.a;
  if (b == c || b == a || c == a)
    raise(errc::invalid_maps, "facts do not span a proper triangle corner");
  // g = (I^B_C)^{-1}( I^A_C(h) * I^B_A(f) )
  std::string product =
      maps.group().multiply(maps.to_group(a, c, h), maps.to_group(b, a, f));
  return maps.from_group(b, c, product);
}

double PerspectiveState::norm() const {
  double sum = 0.0;
  for (const auto& [key, z] : coefficients) sum += std::norm(z);
  return std::sqrt(sum);
}

PerspectiveState change_of_qrf(const IndexMaps& maps, const PerspectiveState& state,
                               std::string_view target) {
  if (state.perspective == target)
    raise(errc::perspective_mismatch, "state is already relative to '" +
                                          std::string(target) + "'");
  if (!maps.net().has_system(state.perspective) || !maps.net().has_system(target))
    raise(errc::perspective_mismatch, "perspective or target system is unknown");
  if (state.coefficients.empty())
    raise(errc::perspective_mismatch, "state has no coefficients");

  PerspectiveState out;
  out.perspective = std::string(target);
  for (const auto& [key, z] : state.coefficients) {
    const auto& [first, second] = key;
    const Fact& f1 = maps.net().fact(first);
    const Fact& f2 = maps.net().fact(second);
    auto touches = [&](const Fact& f, std::string_view s) {
      return f.a == s || f.b == s;
    };
    if (!touches(f1, state.perspective) || !touches(f2, state.perspective))
      raise(errc::perspective_mismatch,
            "coefficient (" + first + "," + second + ") is not relative to '" +
                state.perspective + "'");
    const bool first_shared = touches(f1, target);
    const bool second_shared = touches(f2, target);
    if (first_shared == second_shared)
      raise(errc::perspective_mismatch,
            "exactly one factor must be a fact with the target system");
    const std::string& shared = first_shared ? first : second;
    const std::string& other = first_shared ? second : first;
    std::string g = transform_basis_fact(maps, shared, other);
    out.coefficients[{shared, g}] += z;
  }
  return out;
}

double triangle_consistency(const AmplitudeTable& table_a,
                            const AmplitudeTable& table_b,
                            const AmplitudeTable& table_c) {
  const std::string& a = table_a.system();
  const std::string& b = table_b.system();
  const std::string& c = table_c.system();
  if (a == b || b == c || a == c)
    raise(errc::shape_mismatch, "triangle consistency needs three distinct systems");
  const FactNet& net = table_a.net();
  auto ab = net.fact_set(a, b);
  auto ac = net.fact_set(a, c);
  auto bc = net.fact_set(b, c);
  if (ab.empty() || ac.empty() || bc.empty())
    raise(errc::shape_mismatch, "the three systems do not form a triangle");

  // W^A_BC : rows F_AB, cols F_AC ; composed route goes through F_BC.
  ComplexMatrix direct(ab.size(), ac.size());
  for (std::size_t r = 0; r < ab.size(); ++r)
    for (std::size_t col = 0; col < ac.size(); ++col)
      direct(r, col) = table_a.value(ab[r], ac[col]);
  ComplexMatrix via(ab.size(), ac.size());
  for (std::size_t r = 0; r < ab.size(); ++r)
    for (std::size_t col = 0; col < ac.size(); ++col) {
      cplx sum{};
      for (const auto& g : bc)
        sum += table_b.value(ab[r], g) * table_c.value(g, ac[col]);
      via(r, col) = sum;
    }
  return direct.max_abs_diff(via);
}

std::pair<bool, std::vector<std::string>> consistency_check_functions(
    const IndexMaps& maps) {
  std::set<std::string> vertex_set;
  for (const auto& [pair, map] : maps.assignments()) {
    if (pair.first != pair.second) {
      vertex_set.insert(pair.first);
      vertex_set.insert(pair.second);
    }
  }
  if (vertex_set.size() != 3)
    raise(errc::invalid_maps, "consistency check needs a triangle of index maps");
  std::vector<std::string> v(vertex_set.begin(), vertex_set.end());

  std::vector<std::string> counterexamples;
  // All cyclic labelings (A,B,C): f in F_AB, g in F_BC, expect
  // f = G_C(g, G_B(f,g)).
  const std::array<std::array<int, 3>, 3> labelings{{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}};
  for (const auto& lab : labelings) {
    const std::string& a = v[lab[0]];
    const std::string& b = v[lab[1]];
    const std::string& c = v[lab[2]];
    for (const auto& f : maps.net().fact_set(a, b)) {
      for (const auto& g : maps.net().fact_set(b, c)) {
        std::string h = transform_basis_fact(maps, f, g);   // G_B(f,g) in F_AC
        std::string back = transform_basis_fact(maps, g, h);  // G_C(g,h) in F_AB
        if (back != f)
          counterexamples.push_back("f=" + f + " g=" + g + " -> " + back);
      }
    }
  }
  return {counterexamples.empty(), counterexamples};
}

}  // namespace factnet
