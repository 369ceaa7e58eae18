#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "factnet/amplitude.hpp"
#include "factnet/net.hpp"

namespace factnet {

/// Post-selection of facts relative to an observer. Neighbors absent from
/// `keep` are left untouched; listed neighbors must keep a nonempty subset.
struct Restriction {
  std::string observer;
  std::map<std::string, std::set<std::string>> keep;
};

/// Total order over the observer's neighborhood; the local clock used to
/// rebuild amplitudes after a restriction.
struct Ordering {
  std::vector<std::string> sequence;
};

/// Drops every fact of an observer-incident fact-set that is not kept.
/// Systems, other fact-sets and weights survive; the table loses entries
/// that referenced removed facts (hermiticity and the parallel-fact rule are
/// preserved by construction).
std::pair<FactNet, AmplitudeTable> restrict_net(const FactNet& net,
                                                const AmplitudeTable& table,
                                                const Restriction& restriction);

/// Chain-restoring amplitude for a star observer under an ordering
/// X0 -> ... -> Xn: nearest neighbors keep W, and for i < j
/// W'(x_i, x_j) sums the products of consecutive W values over all
/// intermediate kept facts (each intermediate fact-set contributing its
/// quadrature weight). The result satisfies the chain property between any
/// X_i and X_j through any X_k with i < k < j.
AmplitudeTable reconstruct_w_prime(const FactNet& net, const AmplitudeTable& table,
                                   const Ordering& ordering);

/// Two-slit intensity on a screen grid: builds the source/slits/screen net
/// with the free-propagation amplitudes (distances enter as i*l^2 in natural
/// units), restores the chain property along source -> slits -> screen and
/// evaluates P(x | source fact) on the grid.
/// Slits sit at +/- d; sigma is the position resolution.
std::vector<std::pair<double, double>> double_slit_intensity(
    double l1, double l2, double d, double sigma, const std::vector<double>& grid);

/// Same pipeline restricted to the single slit at +d.
std::vector<std::pair<double, double>> single_slit_intensity(
    double l1, double l2, double d, double sigma, const std::vector<double>& grid);

/// Strict local maxima of a sampled curve (interior points only).
std::size_t count_local_maxima(const std::vector<std::pair<double, double>>& curve);

}  // namespace factnet
