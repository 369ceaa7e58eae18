#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "factnet/amplitude.hpp"
#include "factnet/net.hpp"
#include "factnet/qrf.hpp"

namespace factnet {

enum class Scenario {
  two_sg,
  three_sg,
  position_momentum,
  propagator,
  entanglement,
  spinor,
  circle_qubits,
  double_slit,
  three_qubit_qrf,
};

Scenario scenario_from_name(std::string_view name);
std::string scenario_name(Scenario s);
std::vector<std::string> scenario_names();

struct ScenarioSpec {
  Scenario name = Scenario::two_sg;
  std::map<std::string, std::string> params;
};

struct QrfData {
  FactGroup group;
  IndexMaps maps;
};

struct ScenarioResult {
  FactNet net;
  std::map<std::string, AmplitudeTable> tables;
  std::optional<QrfData> qrf;
  std::map<std::string, std::string> metadata;
};

/// Builds the requested example net with its amplitudes. Unknown or invalid
/// parameters raise BadParams; every output passes the hermiticity and
/// parallel-fact validators with zero findings.
ScenarioResult generate(const ScenarioSpec& spec);

/// double_slit with an explicit screen grid instead of xmin/xmax/step params.
ScenarioResult generate_with_grid(const ScenarioSpec& spec,
                                  const std::vector<double>& screen_grid);

ScenarioResult make_double_slit(double l1, double l2, double d, double sigma,
                                const std::vector<double>& screen_grid);

/// Free-propagation amplitude between two position facts separated by dx,
/// with tau the elapsed-time surrogate (hbar*dt/m, or l^2 in the distance
/// form) and sigma the detector resolution.
cplx free_propagator_amplitude(double dx, double tau, double sigma);

/// Closed-form conditional density between two position measurements,
/// normalised to integrate to one over the target coordinate. Returns
/// (x_i, x_j, density) triples over the grid.
std::vector<std::tuple<double, double, double>> propagator_probability(
    double t_i, double t_j, double sigma, double mass, double hbar,
    const std::vector<double>& grid, double x_j = 0.0);

/// Uniformly spaced grid helper, inclusive endpoints.
std::vector<double> uniform_grid(double lo, double hi, double step);

}  // namespace factnet
