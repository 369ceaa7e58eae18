#include "factnet/scenarios.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <set>

#include "factnet/errors.hpp"

namespace factnet {

namespace {

constexpr double kPi = std::numbers::pi;

struct ParamReader {
  const std::map<std::string, std::string>& params;
  std::set<std::string> seen;

  double number(const std::string& key, double fallback) {
    seen.insert(key);
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    try {
      std::size_t used = 0;
      double v = std::stod(it->second, &used);
      if (used != it->second.size()) throw std::invalid_argument(key);
      return v;
    } catch (const std::exception&) {
      raise(errc::bad_params, "parameter '" + key + "' is not a number: '" +
                                  it->second + "'");
    }
  }

  long integer(const std::string& key, long fallback, long lo, long hi) {
    double v = number(key, static_cast<double>(fallback));
    long n = static_cast<long>(v);
    if (static_cast<double>(n) != v || n < lo || n > hi)
      raise(errc::bad_params, "parameter '" + key + "' must be an integer in [" +
                                  std::to_string(lo) + "," + std::to_string(hi) + "]");
    return n;
  }

  std::string text(const std::string& key, const std::string& fallback) {
    seen.insert(key);
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }

  void finish(const std::string& scenario) {
    for (const auto& [key, value] : params)
      if (!seen.count(key))
        raise(errc::bad_params,
              "unknown parameter '" + key + "' for scenario " + scenario);
  }
};

std::string padded(std::string_view prefix, std::size_t index, std::size_t count) {
  std::size_t width = 1;
  for (std::size_t v = count > 0 ? count - 1 : 0; v >= 10; v /= 10) ++width;
  std::string digits = std::to_string(index);
  std::string out(prefix);
  out.append(width - digits.size(), '0');
  out += digits;
  return out;
}

std::string format_position(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

const double kInvSqrt2 = std::sqrt(0.5);

ScenarioResult finish(FactNet net, std::vector<AmplitudeTable> tables,
                      std::map<std::string, std::string> metadata,
                      std::optional<QrfData> qrf = std::nullopt) {
  ScenarioResult out;
  out.net = std::move(net);
  for (auto& t : tables) out.tables.emplace(t.system(), std::move(t));
  // Every system owns a table, possibly with defaults only.
  auto ptr = std::make_shared<const FactNet>(out.net);
  for (const auto& s : out.net.systems())
    if (!out.tables.count(s)) out.tables.emplace(s, AmplitudeTable(ptr, s));
  out.metadata = std::move(metadata);
  out.qrf = std::move(qrf);
  return out;
}

ScenarioResult make_two_sg() {
  FactNet net = FactNetBuilder()
                    .add_system("S")
                    .add_system("SGz")
                    .add_system("SGx")
                    .add_fact("S", "SGz", "0", "z up")
                    .add_fact("S", "SGz", "1", "z down")
                    .add_fact("S", "SGx", "+", "x up")
                    .add_fact("S", "SGx", "-", "x down")
                    .build();
  auto ptr = std::make_shared<const FactNet>(net);
  AmplitudeTableBuilder tb(ptr, "S");
  tb.set("0", "+", kInvSqrt2)
      .set("0", "-", kInvSqrt2)
      .set("1", "+", kInvSqrt2)
      .set("1", "-", -kInvSqrt2);
  return finish(std::move(net), {tb.build()}, {{"scenario", "two_sg"}});
}

ScenarioResult make_three_sg() {
  FactNet net = FactNetBuilder()
                    .add_system("S")
                    .add_system("SGz")
                    .add_system("SGx")
                    .add_system("SGy")
                    .add_fact("S", "SGz", "0")
                    .add_fact("S", "SGz", "1")
                    .add_fact("S", "SGx", "+")
                    .add_fact("S", "SGx", "-")
                    .add_fact("S", "SGy", "+i")
                    .add_fact("S", "SGy", "-i")
                    .build();
  auto ptr = std::make_shared<const FactNet>(net);
  AmplitudeTableBuilder tb(ptr, "S");
  tb.set("0", "+", kInvSqrt2)
      .set("0", "-", kInvSqrt2)
      .set("1", "+", kInvSqrt2)
      .set("1", "-", -kInvSqrt2)
      .set("0", "+i", kInvSqrt2)
      .set("0", "-i", kInvSqrt2)
      .set("1", "+i", cplx{0.0, kInvSqrt2})
      .set("1", "-i", cplx{0.0, -kInvSqrt2})
      .set("+", "+i", cplx{0.5, 0.5})
      .set("+", "-i", cplx{0.5, -0.5})
      .set("-", "+i", cplx{0.5, -0.5})
      .set("-", "-i", cplx{0.5, 0.5});
  return finish(std::move(net), {tb.build()}, {{"scenario", "three_sg"}});
}

ScenarioResult make_position_momentum(ParamReader& reader) {
  const long n = reader.integer("n", 8, 2, 4096);
  const double dx = reader.number("dx", 1.0);
  const double hbar = reader.number("hbar", 1.0);
  if (!(dx > 0.0) || !(hbar > 0.0))
    raise(errc::bad_params, "dx and hbar must be positive");
  reader.finish("position_momentum");

  FactNetBuilder builder;
  builder.add_system("S").add_system("X").add_system("P");
  const auto count = static_cast<std::size_t>(n);
  for (std::size_t a = 0; a < count; ++a)
    builder.add_fact("S", "X", padded("x", a, count), format_position(a * dx));
  for (std::size_t k = 0; k < count; ++k)
    builder.add_fact("S", "P", padded("p", k, count),
                     format_position(2.0 * kPi * hbar * k / (n * dx)));
  FactNet net = builder.build();
  auto ptr = std::make_shared<const FactNet>(net);
  AmplitudeTableBuilder tb(ptr, "S");
  const double root = std::sqrt(static_cast<double>(n));
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t k = 0; k < count; ++k) {
      double phase = 2.0 * kPi * static_cast<double>(a) * static_cast<double>(k) /
                     static_cast<double>(n);
      tb.set(padded("x", a, count), padded("p", k, count),
             std::polar(1.0 / root, phase));
    }
  return finish(std::move(net), {tb.build()},
                {{"scenario", "position_momentum"},
                 {"note", "grid amplitudes carry a 1/sqrt(n) factor so the "
                          "parallel-fact convention and unitarity hold exactly"}});
}

ScenarioResult make_propagator(ParamReader& reader) {
  const double t0 = reader.number("t0", 0.0);
  const double t1 = reader.number("t1", 1.0);
  const double t2 = reader.number("t2", 2.0);
  const double sigma = reader.number("sigma", 0.2);
  const double mass = reader.number("m", 1.0);
  const double hbar = reader.number("hbar", 1.0);
  const long n0 = reader.integer("x0_points", 9, 1, 100000);
  const long n1 = reader.integer("x1_points", 301, 1, 1000000);
  const long n2 = reader.integer("x2_points", 9, 1, 100000);
  const double h0 = reader.number("x0_half", 1.5);
  const double h1 = reader.number("x1_half", 12.0);
  const double h2 = reader.number("x2_half", 1.5);
  if (!(sigma > 0.0)) raise(errc::non_positive_sigma, "sigma must be positive");
  if (!(mass > 0.0) || !(hbar > 0.0))
    raise(errc::bad_params, "m and hbar must be positive");
  reader.finish("propagator");

  struct Slice {
    std::string system;
    std::string prefix;
    double time;
    std::vector<double> xs;
    double step;
  };
  auto grid_of = [](double half, long n) {
    std::vector<double> xs;
    if (n == 1) {
      xs.push_back(0.0);
      return std::make_pair(xs, 1.0);
    }
    double step = 2.0 * half / static_cast<double>(n - 1);
    for (long i = 0; i < n; ++i) xs.push_back(-half + step * static_cast<double>(i));
    return std::make_pair(xs, step);
  };
  std::vector<Slice> slices = {{"X0", "a", t0, {}, 1.0},
                               {"X1", "b", t1, {}, 1.0},
                               {"X2", "c", t2, {}, 1.0}};
  std::tie(slices[0].xs, slices[0].step) = grid_of(h0, n0);
  std::tie(slices[1].xs, slices[1].step) = grid_of(h1, n1);
  std::tie(slices[2].xs, slices[2].step) = grid_of(h2, n2);

  FactNetBuilder builder;
  builder.add_system("S");
  for (const auto& s : slices) {
    builder.add_system(s.system);
    for (std::size_t i = 0; i < s.xs.size(); ++i)
      builder.add_fact("S", s.system, padded(s.prefix, i, s.xs.size()),
                       format_position(s.xs[i]));
    builder.set_fact_set_weight("S", s.system, s.step);
  }
  FactNet net = builder.build();
  auto ptr = std::make_shared<const FactNet>(net);
  AmplitudeTableBuilder tb(ptr, "S");
  for (std::size_t si = 0; si < slices.size(); ++si)
    for (std::size_t sj = si + 1; sj < slices.size(); ++sj) {
      const Slice& lhs = slices[si];
      const Slice& rhs = slices[sj];
      const double tau = hbar * (lhs.time - rhs.time) / mass;
      for (std::size_t i = 0; i < lhs.xs.size(); ++i)
        for (std::size_t j = 0; j < rhs.xs.size(); ++j)
          tb.set(padded(lhs.prefix, i, lhs.xs.size()),
                 padded(rhs.prefix, j, rhs.xs.size()),
                 free_propagator_amplitude(lhs.xs[i] - rhs.xs[j], tau, sigma));
    }
  return finish(std::move(net), {tb.build()},
                {{"scenario", "propagator"},
                 {"note", "fact-set weights carry the grid steps used in chain sums"}});
}

ScenarioResult make_entanglement() {
  FactNet net = FactNetBuilder()
                    .add_system("A")
                    .add_system("O")
                    .add_system("B")
                    .add_fact("A", "O", "a0")
                    .add_fact("A", "O", "a1")
                    .add_fact("O", "B", "b0")
                    .add_fact("O", "B", "b1")
                    .build();
  auto ptr = std::make_shared<const FactNet>(net);
  AmplitudeTableBuilder tb(ptr, "O");
  tb.set("a0", "b0", kInvSqrt2).set("a1", "b1", kInvSqrt2);
  tb.set("a0", "b1", cplx{}).set("a1", "b0", cplx{});
  return finish(std::move(net), {tb.build()}, {{"scenario", "entanglement"}});
}

ScenarioResult make_spinor() {
  FactNet net = FactNetBuilder()
                    .add_system("S")
                    .add_system("SGz")
                    .add_system("X")
                    .add_fact("S", "SGz", "0")
                    .add_fact("S", "SGz", "1")
                    .add_fact("S", "X", "x0")
                    .add_fact("S", "X", "x1")
                    .build();
  auto ptr = std::make_shared<const FactNet>(net);
  AmplitudeTableBuilder tb(ptr, "S");
  tb.set("0", "x0", kInvSqrt2).set("1", "x1", kInvSqrt2);
  tb.set("0", "x1", cplx{}).set("1", "x0", cplx{});
  return finish(std::move(net), {tb.build()}, {{"scenario", "spinor"}});
}

ScenarioResult make_circle_qubits(ParamReader& reader) {
  const long n = reader.integer("n", 12, 3, 4096);
  reader.finish("circle_qubits");
  const auto count = static_cast<std::size_t>(n);

  FactNetBuilder builder;
  builder.add_system("S");
  std::vector<std::string> sites;
  for (std::size_t i = 0; i < count; ++i) {
    sites.push_back(padded("s", i, count));
    builder.add_system(sites.back());
    builder.add_fact("S", sites.back(), "0_" + sites.back());
    builder.add_fact("S", sites.back(), "1_" + sites.back());
  }
  FactNet net = builder.build();
  auto ptr = std::make_shared<const FactNet>(net);
  AmplitudeTableBuilder tb(ptr, "S");
  // Finite-n amplitude reproducing the equiprobable-site conditionals
  // exactly; the cross value tends to the displayed large-n limit.
  const double cross = 1.0 / std::sqrt(static_cast<double>(n - 2));
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j) {
      if (i == j) continue;
      if (i < j) tb.set("0_" + sites[i], "0_" + sites[j], 1.0);
      tb.set("0_" + sites[i], "1_" + sites[j], cross);
    }
  return finish(std::move(net), {tb.build()},
                {{"scenario", "circle_qubits"},
                 {"note", "W(0_i,1_j) = 1/sqrt(n-2) realises the equiprobable "
                          "site statistics at finite n"}});
}

ScenarioResult make_three_qubit_qrf(ParamReader& reader) {
  const std::string group_name = reader.text("group", "Z2");
  reader.finish("three_qubit_qrf");
  std::size_t order = 0;
  if (group_name == "Z2")
    order = 2;
  else if (group_name == "Z3")
    order = 3;
  else
    raise(errc::bad_params, "group must be Z2 or Z3, got '" + group_name + "'");

  FactGroup group = FactGroup::cyclic(order);
  FactNetBuilder builder;
  builder.add_system("A").add_system("B").add_system("C");
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"A", "B"}, {"A", "C"}, {"B", "C"}};
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> facts;
  for (const auto& [x, y] : pairs) {
    std::string prefix;
    prefix += static_cast<char>(std::tolower(x[0]));
    prefix += static_cast<char>(std::tolower(y[0]));
    for (const auto& element : group.elements()) {
      std::string id = prefix + element;
      builder.add_fact(x, y, id, element);
      facts[{x, y}].push_back(id);
    }
  }
  FactNet net = builder.build();
  auto ptr = std::make_shared<const FactNet>(net);

  std::map<std::pair<std::string, std::string>, std::map<std::string, std::string>>
      assignments;
  for (const auto& [pair, ids] : facts) {
    auto& m = assignments[pair];
    for (std::size_t i = 0; i < ids.size(); ++i) m[ids[i]] = group.elements()[i];
  }
  IndexMaps maps(ptr, group, assignments);

  // State relative to A: equal superposition over F_AB times the identity
  // fact of F_AC; the B and C tables hold the transformed views.
  AmplitudeTableBuilder ta(ptr, "A");
  PerspectiveState state_a;
  state_a.perspective = "A";
  for (const auto& f : facts[{"A", "B"}]) {
    ta.set(f, facts[{"A", "C"}].front(), 1.0);
    for (std::size_t j = 1; j < facts[{"A", "C"}].size(); ++j)
      ta.set(f, facts[{"A", "C"}][j], cplx{});
    state_a.coefficients[{f, facts[{"A", "C"}].front()}] = 1.0;
  }
  PerspectiveState state_b = change_of_qrf(maps, state_a, "B");
  PerspectiveState state_c = change_of_qrf(maps, state_a, "C");
  AmplitudeTableBuilder tbuilder(ptr, "B");
  for (const auto& f : facts[{"A", "B"}])
    for (const auto& g : facts[{"B", "C"}]) {
      auto it = state_b.coefficients.find({f, g});
      tbuilder.set(f, g, it == state_b.coefficients.end() ? cplx{} : it->second);
    }
  AmplitudeTableBuilder tc(ptr, "C");
  for (const auto& h : facts[{"A", "C"}])
    for (const auto& g : facts[{"B", "C"}]) {
      auto it = state_c.coefficients.find({h, g});
      tc.set(h, g, it == state_c.coefficients.end() ? cplx{} : it->second);
    }

  return finish(std::move(net), {ta.build(), tbuilder.build(), tc.build()},
                {{"scenario", "three_qubit_qrf"}, {"group", group_name}},
                QrfData{group, maps});
}

}  // namespace

cplx free_propagator_amplitude(double dx, double tau, double sigma) {
  const cplx alpha{sigma * sigma, tau};
  return std::sqrt(1.0 / (2.0 * kPi * alpha)) * std::exp(-dx * dx / (2.0 * alpha));
}

ScenarioResult make_double_slit(double l1, double l2, double d, double sigma,
                                const std::vector<double>& screen_grid) {
  if (!(sigma > 0.0)) raise(errc::non_positive_sigma, "sigma must be positive");
  if (screen_grid.empty()) raise(errc::bad_params, "screen grid is empty");
  if (!(l1 > 0.0) || !(l2 > 0.0) || !(d > 0.0))
    raise(errc::bad_params, "l1, l2 and d must be positive");

  FactNetBuilder builder;
  builder.add_system("electron")
      .add_system("source")
      .add_system("slits")
      .add_system("screen");
  builder.add_fact("electron", "source", "1", "0");
  builder.add_fact("electron", "slits", "A", format_position(d));
  builder.add_fact("electron", "slits", "B", format_position(-d));
  const std::size_t count = screen_grid.size();
  for (std::size_t i = 0; i < count; ++i)
    builder.add_fact("electron", "screen", padded("x", i, count),
                     format_position(screen_grid[i]));
  if (count > 1)
    builder.set_fact_set_weight("electron", "screen",
                                (screen_grid.back() - screen_grid.front()) /
                                    static_cast<double>(count - 1));
  FactNet net = builder.build();
  auto ptr = std::make_shared<const FactNet>(net);
  AmplitudeTableBuilder tb(ptr, "electron");
  tb.set("A", "1", free_propagator_amplitude(d, l1 * l1, sigma));
  tb.set("B", "1", free_propagator_amplitude(d, l1 * l1, sigma));
  for (std::size_t i = 0; i < count; ++i) {
    const std::string id = padded("x", i, count);
    tb.set(id, "A", free_propagator_amplitude(screen_grid[i] - d, l2 * l2, sigma));
    tb.set(id, "B", free_propagator_amplitude(screen_grid[i] + d, l2 * l2, sigma));
    tb.set(id, "1",
           free_propagator_amplitude(screen_grid[i], l1 * l1 + l2 * l2, sigma));
  }
  return finish(std::move(net), {tb.build()},
                {{"scenario", "double_slit"},
                 {"note", "slits sit at +/-d; distances enter as i*l^2"}});
}

std::vector<std::tuple<double, double, double>> propagator_probability(
    double t_i, double t_j, double sigma, double mass, double hbar,
    const std::vector<double>& grid, double x_j) {
  if (!(sigma > 0.0)) raise(errc::non_positive_sigma, "sigma must be positive");
  if (!(mass > 0.0) || !(hbar > 0.0))
    raise(errc::bad_params, "m and hbar must be positive");
  if (grid.empty()) raise(errc::bad_params, "grid is empty");
  const double drift = hbar * (t_i - t_j) / (mass * sigma);
  const double width_sq = drift * drift + sigma * sigma;
  const double norm = 1.0 / std::sqrt(kPi * width_sq);
  std::vector<std::tuple<double, double, double>> out;
  out.reserve(grid.size());
  for (double x : grid) {
    double dx = x - x_j;
    out.emplace_back(x, x_j, norm * std::exp(-dx * dx / width_sq));
  }
  return out;
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) raise(errc::bad_params, "bad grid bounds or step");
  auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
  while (count > 1 && lo + step * static_cast<double>(count - 1) > hi + 1e-9 * step)
    --count;
  std::vector<double> xs;
  for (std::size_t i = 0; i < count; ++i) xs.push_back(lo + step * static_cast<double>(i));
  return xs;
}

Scenario scenario_from_name(std::string_view name) {
  for (std::size_t i = 0; i < scenario_names().size(); ++i)
    if (scenario_names()[i] == name) return static_cast<Scenario>(i);
  raise(errc::bad_params, "unknown scenario '" + std::string(name) + "'");
}

std::string scenario_name(Scenario s) {
  return scenario_names()[static_cast<std::size_t>(s)];
}

std::vector<std::string> scenario_names() {
  return {"two_sg",        "three_sg", "position_momentum",
          "propagator",    "entanglement", "spinor",
          "circle_qubits", "double_slit",  "three_qubit_qrf"};
}

ScenarioResult generate(const ScenarioSpec& spec) {
  ParamReader reader{spec.params, {}};
  switch (spec.name) {
    case Scenario::two_sg:
      reader.finish("two_sg");
      return make_two_sg();
    case Scenario::three_sg:
      reader.finish("three_sg");
      return make_three_sg();
    case Scenario::position_momentum:
      return make_position_momentum(reader);
    case Scenario::propagator:
      return make_propagator(reader);
    case Scenario::entanglement:
      reader.finish("entanglement");
      return make_entanglement();
    case Scenario::spinor:
      reader.finish("spinor");
      return make_spinor();
    case Scenario::circle_qubits:
      return make_circle_qubits(reader);
    case Scenario::double_slit: {
      const double xmin = reader.number("xmin", -10.0);
      const double xmax = reader.number("xmax", 10.0);
      const double step = reader.number("step", 0.05);
      ScenarioSpec inner = spec;
      inner.params.erase("xmin");
      inner.params.erase("xmax");
      inner.params.erase("step");
      return generate_with_grid(inner, uniform_grid(xmin, xmax, step));
    }
    case Scenario::three_qubit_qrf:
      return make_three_qubit_qrf(reader);
  }
  raise(errc::bad_params, "unknown scenario");
}

ScenarioResult generate_with_grid(const ScenarioSpec& spec,
                                  const std::vector<double>& screen_grid) {
  if (spec.name != Scenario::double_slit)
    raise(errc::bad_params, "explicit grids are a double_slit feature");
  ParamReader reader{spec.params, {}};
  const double l1 = reader.number("l1", 10.0);
  const double l2 = reader.number("l2", 10.0);
  const double d = reader.number("d", 1.0);
  const double sigma = reader.number("sigma", 0.1);
  reader.finish("double_slit");
  return make_double_slit(l1, l2, d, sigma, screen_grid);
}

}  // namespace factnet
