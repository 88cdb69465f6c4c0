#pragma once

#include <cstdint>
#include <vector>

#include "geocut/grid.hpp"
#include "geocut/model.hpp"

namespace geocut {

/// Per-class expected damage of one cut, with the budget and grid constant
/// it was computed under. total is alpha + beta + gamma by construction.
struct DamageBreakdown {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double total = 0.0;
  double delta = 0.0;
  CircularCut cut{Point{0.0, 0.0}, 1.0};
  AccuracyBudget budgetUsed;
};

struct EdccOptions {
  int threads = 0;  // 0 = hardware concurrency
  std::size_t pointBudget = kDefaultPointBudget;
  /// Grid points whose intensity falls below this fraction of the grid
  /// maximum are dropped from the pair sums; the neglected mass is orders of
  /// magnitude below any attainable accuracy budget.
  double intensityFloor = 1e-16;
};

/// Shared precomputation for evaluating many cuts against one model and one
/// integration grid: intensity-weighted sample points and the tabulated
/// kernel. Immutable after construction; evaluate() is const and
/// thread-safe. The model must outlive the engine.
class EdccEngine {
 public:
  EdccEngine(const StochasticNetworkModel& model, IntegrationGrid grid, EdccOptions options = {});

  const IntegrationGrid& grid() const { return grid_; }
  const StochasticNetworkModel& model() const { return *model_; }

  /// One EDCC evaluation: midpoint sums of the alpha/beta integrals over
  /// center-classified squares and the gamma integral over shadow regions.
  DamageBreakdown evaluate(const CircularCut& cut, const AccuracyBudget& budgetUsed) const;

 private:
  template <typename KernelFn>
  DamageBreakdown evaluateImpl(const CircularCut& cut, const AccuracyBudget& budgetUsed,
                               const KernelFn& kernel) const;

  const StochasticNetworkModel* model_;
  IntegrationGrid grid_;
  EdccOptions options_;
  std::vector<double> px_, py_, fw_;  // active points: position and f * cellArea
  bool useTable_ = false;
  DistanceKernel table_{};
  std::shared_ptr<const void> tableKeepAlive_;
};

/// EDCC entry point: selects the grid for the budget, checks that the cut is
/// admissible (center in Rec_r), and evaluates.
DamageBreakdown edcc(const StochasticNetworkModel& model, const CircularCut& cut,
                     const AccuracyBudget& budget, const EdccOptions& options = {});

/// Midpoint value of the integral of f(v) g(u, v) over the shadow region
/// K_u, membership decided at square centers. Requires u outside the closed
/// disk (throws SourceInsideDisk).
double evaluateGamma(const StochasticNetworkModel& model, Point u, const CircularCut& cut,
                     const IntegrationGrid& grid);

}  // namespace geocut
