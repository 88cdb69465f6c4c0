#pragma once

#include <cstddef>
#include <limits>

#include "geocut/geometry.hpp"
#include "geocut/model.hpp"

namespace geocut {

enum class BudgetMode { Additive, Combined };

/// Accuracy budget driving grid selection. The calibration constants follow
/// the sqrt(delta) error laws: additive error c0*sqrt(delta); in Combined
/// mode additive c1*sqrt(delta) plus multiplicative c2*sqrt(delta), with c1,
/// c2 derived from the model bounds unless overridden.
struct AccuracyBudget {
  double additiveEps = 0.0;
  double multiplicativeEps = 0.0;  // Combined mode only
  BudgetMode mode = BudgetMode::Additive;

  /// Calibration constant for the additive law; 0 selects the derived
  /// default constFactor * diag^2 * |Rec| * T / sqrt(r).
  double c0 = 0.0;
  /// Scales every derived calibration constant.
  double constFactor = 1.0;

  /// Direct grid-constant override (> 0). Still capped at r/2; the implied
  /// epsilon is c0 * sqrt(delta).
  double deltaOverride = 0.0;
  /// Optional upper bound on the selected delta.
  double deltaCap = std::numeric_limits<double>::infinity();

  /// The budget with both tolerances halved, as used by the map sweeps.
  AccuracyBudget halved() const {
    AccuracyBudget b = *this;
    b.additiveEps *= 0.5;
    b.multiplicativeEps *= 0.5;
    return b;
  }
};

/// Calibration constants resolved against a concrete model and radius.
struct AccuracyConstants {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

AccuracyConstants resolveConstants(const Rectangle& rec, double r, const AccuracyBudget& budget,
                                   const StochasticNetworkModel& model);

inline double impliedEpsilon(double delta, double c0) { return c0 * std::sqrt(delta); }

/// Square tiling of a rectangle with nominal edge length delta; the last row
/// and column are clipped to the rectangle, and their sample points are the
/// clipped squares' centroids. Points enumerate row-major from the
/// south-west corner.
class IntegrationGrid {
 public:
  IntegrationGrid(Rectangle rec, double delta);

  const Rectangle& rec() const { return rec_; }
  double delta() const { return delta_; }
  int nCols() const { return nCols_; }
  int nRows() const { return nRows_; }
  std::size_t pointCount() const {
    return static_cast<std::size_t>(nCols_) * static_cast<std::size_t>(nRows_);
  }

  double cellX0(int col) const { return rec_.xMin + col * delta_; }
  double cellX1(int col) const { return std::min(cellX0(col) + delta_, rec_.xMax); }
  double cellY0(int row) const { return rec_.yMin + row * delta_; }
  double cellY1(int row) const { return std::min(cellY0(row) + delta_, rec_.yMax); }

  Point point(int row, int col) const {
    return Point{0.5 * (cellX0(col) + cellX1(col)), 0.5 * (cellY0(row) + cellY1(row))};
  }
  double cellArea(int row, int col) const {
    return (cellX1(col) - cellX0(col)) * (cellY1(row) - cellY0(row));
  }

  Point point(std::size_t index) const {
    return point(static_cast<int>(index / static_cast<std::size_t>(nCols_)),
                 static_cast<int>(index % static_cast<std::size_t>(nCols_)));
  }
  double cellArea(std::size_t index) const {
    return cellArea(static_cast<int>(index / static_cast<std::size_t>(nCols_)),
                    static_cast<int>(index % static_cast<std::size_t>(nCols_)));
  }

 private:
  Rectangle rec_;
  double delta_;
  int nCols_;
  int nRows_;
};

inline constexpr std::size_t kDefaultPointBudget = 10'000'000;

/// Selects the grid constant for the requested accuracy: delta =
/// min((eps/c0)^2, r/2 - tol, deltaCap) in Additive mode, additionally
/// satisfying the combined-mode relations against c1 and c2 in Combined
/// mode. A deltaOverride wins over the formula but is still capped at r/2.
IntegrationGrid computeGrid(const Rectangle& rec, double r, const AccuracyBudget& budget,
                            const StochasticNetworkModel& model,
                            std::size_t pointBudget = kDefaultPointBudget);

enum class SquareClass { Inside, Outside, Boundary };

/// Inside: all four corners in the closed disk. Outside: the square's
/// minimum distance to the center exceeds the radius. Boundary otherwise.
/// Diagnostic / error-accounting helper; integration itself classifies by
/// square centers.
SquareClass classifySquare(const IntegrationGrid& grid, int row, int col, const CircularCut& cut);

}  // namespace geocut
