#pragma once

#include <cmath>
#include <vector>

#include "geocut/grid.hpp"
#include "geocut/integrator.hpp"
#include "geocut/model.hpp"

namespace testsupport {

using namespace geocut;

/// y == 1, capacity == 1: the kernel g is identically one.
inline StochasticNetworkModel unitKernelModel(const Rectangle& rec, double lambda) {
  return StochasticNetworkModel(rec, IntensityField::homogeneous(lambda),
                                LinkProbability::constant(1.0), CapacityLaw::constant(1.0));
}

/// y = min(1, 1/dist), capacity == 1.
inline StochasticNetworkModel inverseKernelModel(const Rectangle& rec, double lambda) {
  return StochasticNetworkModel(rec, IntensityField::homogeneous(lambda),
                                LinkProbability::inverseDistance(1.0), CapacityLaw::constant(1.0));
}

inline StochasticNetworkModel hotspotModel(const Rectangle& rec,
                                           std::vector<GaussianHotspot> hotspots,
                                           double background = 0.0) {
  return StochasticNetworkModel(rec, IntensityField::gaussianMixture(std::move(hotspots), background),
                                LinkProbability::inverseDistance(1.0), CapacityLaw::constant(1.0));
}

inline AccuracyBudget deltaBudget(double delta, double eps = 1.0) {
  AccuracyBudget b;
  b.additiveEps = eps;
  b.deltaOverride = delta;
  return b;
}

struct PairSums {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// Independent evaluator for the EDCC sums: classifies every ordered grid
/// pair with classifyLink and accumulates 1/2 f f g area^2 for Alpha/Gamma
/// occurrences and f f g area^2 once per ordered (outside, inside) Beta
/// pair. Shares only the kernel values with the implementation under test.
inline PairSums pairClassificationSums(const StochasticNetworkModel& model,
                                       const IntegrationGrid& grid, const CircularCut& cut) {
  const std::size_t n = grid.pointCount();
  std::vector<Point> pts(n);
  std::vector<double> fw(n);
  std::vector<bool> inside(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = grid.point(i);
    fw[i] = model.intensity().at(pts[i]) * grid.cellArea(i);
    inside[i] = cut.containsPoint(pts[i]);
  }
  PairSums sums;
  for (std::size_t i = 0; i < n; ++i) {
    if (fw[i] == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (fw[j] == 0.0) continue;
      const double g = model.kernelDistanceOnly()
                           ? model.kernelAtDistance(distance(pts[i], pts[j]))
                           : model.expectedCapacityKernel(pts[i], pts[j]);
      const double w = fw[i] * fw[j] * g;
      switch (classifyLink(pts[i], pts[j], cut)) {
        case LinkClass::Alpha:
          sums.alpha += 0.5 * w;
          break;
        case LinkClass::Beta:
          if (!inside[i] && inside[j]) sums.beta += w;
          break;
        case LinkClass::Gamma:
          sums.gamma += 0.5 * w;
          break;
        case LinkClass::Untouched:
          break;
      }
    }
  }
  return sums;
}

}  // namespace testsupport
