#include "geocut/planner.hpp"

#include <algorithm>
#include <cmath>

namespace geocut {

namespace {

SensitivityMap sweep(const StochasticNetworkModel& model, double r, const AccuracyBudget& budget,
                     int threads, std::size_t pointBudget, double extraDeltaCap) {
  AccuracyBudget half = budget.halved();
  if (extraDeltaCap > 0.0) half.deltaCap = std::min(half.deltaCap, extraDeltaCap);

  IntegrationGrid grid = computeGrid(model.rec(), r, half, model, pointBudget);
  const Rectangle recR = model.rec().inset(r);

  AccuracyBudget effective = half;
  effective.deltaOverride = grid.delta();

  EdccOptions edccOptions;
  edccOptions.threads = threads;
  edccOptions.pointBudget = pointBudget;
  EdccEngine engine(model, grid, edccOptions);

  SensitivityMap map;
  map.recR = recR;
  map.delta = grid.delta();
  map.radius = r;
  map.budget = effective;

  const IntegrationGrid centers(recR, grid.delta());
  map.nCols = centers.nCols();
  map.nRows = centers.nRows();
  map.values.resize(centers.pointCount());

  for (std::size_t i = 0; i < centers.pointCount(); ++i) {
    const CircularCut cut(centers.point(i), r);
    map.values[i] = engine.evaluate(cut, effective).total;
  }

  map.argmaxValue = map.values.empty() ? 0.0 : map.values[0];
  std::size_t best = 0;
  for (std::size_t i = 1; i < map.values.size(); ++i) {
    if (map.values[i] > map.argmaxValue) {
      map.argmaxValue = map.values[i];
      best = i;
    }
  }
  map.argmaxRow = static_cast<int>(best / static_cast<std::size_t>(map.nCols));
  map.argmaxCol = static_cast<int>(best % static_cast<std::size_t>(map.nCols));
  map.argmax = centers.point(best);
  return map;
}

}  // namespace

SensitivityMap fsl(const StochasticNetworkModel& model, double r, const AccuracyBudget& budget,
                   const FslOptions& options) {
  return sweep(model, r, budget, options.threads, options.pointBudget, 0.0);
}

std::pair<CircularCut, double> worstCut(const SensitivityMap& map) {
  if (map.values.empty()) throw InvalidArgument("worstCut needs a nonempty map");
  return {CircularCut(map.argmax, map.radius), map.argmaxValue};
}

AttackDistribution AttackDistribution::uniform() {
  AttackDistribution d;
  d.kind_ = Kind::Uniform;
  return d;
}

AttackDistribution AttackDistribution::density(IntensityField psi, double variationBound) {
  if (!(variationBound >= 0.0) || !std::isfinite(variationBound)) {
    throw InvalidArgument("attack density needs a finite nonnegative variation bound");
  }
  AttackDistribution d;
  d.kind_ = Kind::Density;
  d.psi_ = std::move(psi);
  d.variationBound_ = variationBound;
  return d;
}

double rcce(const StochasticNetworkModel& model, double r, const AccuracyBudget& budget,
            const AttackDistribution& dist, const RcceOptions& options) {
  // Fold the attack density's variation into the grid choice: its
  // discretization error is bounded by V_psi * delta * |Rec_r| * max TEC,
  // with max TEC coarsely bounded through the model's T.
  double extraCap = 0.0;
  if (dist.kind() == AttackDistribution::Kind::Density && dist.variationBound() > 0.0 &&
      budget.deltaOverride <= 0.0) {
    const Rectangle recR = model.rec().inset(r);
    const double tecBound =
        2.0 * model.maxBound() * model.rec().area() * model.rec().area();
    const double denom = dist.variationBound() * recR.area() * tecBound * budget.constFactor;
    if (denom > 0.0) extraCap = 0.5 * budget.additiveEps / denom;
  }

  const SensitivityMap map = sweep(model, r, budget, options.threads, options.pointBudget, extraCap);
  const IntegrationGrid centers(map.recR, map.delta);

  if (dist.kind() == AttackDistribution::Kind::Uniform) {
    double weighted = 0.0;
    for (std::size_t i = 0; i < map.values.size(); ++i) {
      weighted += map.values[i] * centers.cellArea(i);
    }
    const double norm = options.normalizeOverRec ? model.rec().area() : map.recR.area();
    return weighted / norm;
  }

  double weighted = 0.0;
  double totalWeight = 0.0;
  for (std::size_t i = 0; i < map.values.size(); ++i) {
    const double w = dist.psi().at(centers.point(i)) * centers.cellArea(i);
    weighted += w * map.values[i];
    totalWeight += w;
  }
  if (std::abs(totalWeight - 1.0) > 1e-6) {
    throw UnnormalizedDensity("attack density integrates to " + std::to_string(totalWeight) +
                              " over the admissible region (expected 1)");
  }
  return weighted;
}

}  // namespace geocut
