#include "geocut/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace geocut {

namespace {

int cellCount(double extent, double delta) {
  int n = static_cast<int>(std::floor(extent / delta + 1e-9));
  if (n * delta < extent - 1e-9 * delta) ++n;
  return std::max(n, 1);
}

}  // namespace

AccuracyConstants resolveConstants(const Rectangle& rec, double r, const AccuracyBudget& budget,
                                   const StochasticNetworkModel& model) {
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("cut radius must be positive");
  const double diag = rec.diagonal();
  const double area = rec.area();
  const double a = budget.constFactor * diag * diag / std::sqrt(r);
  AccuracyConstants k;
  k.c0 = budget.c0 > 0.0 ? budget.c0
                         : budget.constFactor * diag * diag * area * model.maxBound() / std::sqrt(r);
  k.c1 = a * model.variationBound() * r * diag * area;
  k.c2 = a * area / (2.0 * r);
  return k;
}

IntegrationGrid::IntegrationGrid(Rectangle rec, double delta) : rec_(rec), delta_(delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw InvalidArgument("grid constant must be positive and finite");
  }
  nCols_ = cellCount(rec_.width(), delta_);
  nRows_ = cellCount(rec_.height(), delta_);
}

IntegrationGrid computeGrid(const Rectangle& rec, double r, const AccuracyBudget& budget,
                            const StochasticNetworkModel& model, std::size_t pointBudget) {
  rec.inset(r);  // throws DegenerateRec when Rec_r is empty

  double delta;
  if (budget.deltaOverride > 0.0) {
    delta = budget.deltaOverride;
  } else {
    if (!(budget.additiveEps > 0.0)) throw InvalidArgument("additive accuracy must be positive");
    if (budget.mode == BudgetMode::Combined && !(budget.multiplicativeEps > 0.0)) {
      throw InvalidArgument("combined mode needs a positive multiplicative accuracy");
    }
    const AccuracyConstants k = resolveConstants(rec, r, budget, model);
    const double inf = std::numeric_limits<double>::infinity();
    if (budget.mode == BudgetMode::Additive) {
      delta = k.c0 > 0.0 ? (budget.additiveEps / k.c0) * (budget.additiveEps / k.c0) : inf;
    } else {
      const double dAdd = k.c1 > 0.0 ? (budget.additiveEps / k.c1) * (budget.additiveEps / k.c1) : inf;
      const double dMul = k.c2 > 0.0
                              ? (budget.multiplicativeEps / k.c2) * (budget.multiplicativeEps / k.c2)
                              : inf;
      delta = std::min(dAdd, dMul);
    }
  }
  delta = std::min({delta, budget.deltaCap, 0.5 * r - kGeomTol});
  if (!(delta > 0.0)) throw InvalidArgument("selected grid constant is not positive");

  IntegrationGrid grid(rec, delta);
  if (grid.pointCount() > pointBudget) {
    throw InfeasibleBudget("grid would need " + std::to_string(grid.pointCount()) +
                           " points, budget is " + std::to_string(pointBudget) +
                           "; relax eps or override delta");
  }
  return grid;
}

SquareClass classifySquare(const IntegrationGrid& grid, int row, int col, const CircularCut& cut) {
  if (row < 0 || row >= grid.nRows() || col < 0 || col >= grid.nCols()) {
    throw InvalidArgument("square index out of range");
  }
  const double x0 = grid.cellX0(col), x1 = grid.cellX1(col);
  const double y0 = grid.cellY0(row), y1 = grid.cellY1(row);

  const bool allCornersIn =
      cut.containsPoint({x0, y0}) && cut.containsPoint({x1, y0}) && cut.containsPoint({x0, y1}) &&
      cut.containsPoint({x1, y1});
  if (allCornersIn) return SquareClass::Inside;

  const double dx = std::max({x0 - cut.center.x, 0.0, cut.center.x - x1});
  const double dy = std::max({y0 - cut.center.y, 0.0, cut.center.y - y1});
  if (dx * dx + dy * dy > (cut.radius + kGeomTol) * (cut.radius + kGeomTol)) {
    return SquareClass::Outside;
  }
  return SquareClass::Boundary;
}

}  // namespace geocut
