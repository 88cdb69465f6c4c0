#pragma once

#include <utility>
#include <vector>

#include "geocut/grid.hpp"
#include "geocut/integrator.hpp"
#include "geocut/model.hpp"

namespace geocut {

/// TEC of a radius-r cut at every grid center of the admissible region
/// Rec_r. Rows enumerate south to north; ties in the argmax break toward the
/// lowest (row, col) index.
struct SensitivityMap {
  Rectangle recR;
  double delta = 0.0;
  int nCols = 0;
  int nRows = 0;
  std::vector<double> values;  // row-major, nRows * nCols
  Point argmax{0.0, 0.0};
  double argmaxValue = 0.0;
  int argmaxRow = 0;
  int argmaxCol = 0;
  AccuracyBudget budget;  // effective per-EDCC budget (halved, delta pinned)
  double radius = 0.0;

  SensitivityMap() : recR(0.0, 1.0, 0.0, 1.0) {}

  double valueAt(int row, int col) const {
    return values[static_cast<std::size_t>(row) * static_cast<std::size_t>(nCols) +
                  static_cast<std::size_t>(col)];
  }
  Point center(int row, int col) const { return IntegrationGrid(recR, delta).point(row, col); }
};

struct FslOptions {
  int threads = 0;
  std::size_t pointBudget = kDefaultPointBudget;
};

/// Full-region sensitivity sweep: one shared integration grid and kernel
/// table (half the budget buys the grid spacing, half the per-cut accuracy,
/// both served by the same delta), one EDCC per admissible center.
SensitivityMap fsl(const StochasticNetworkModel& model, double r, const AccuracyBudget& budget,
                   const FslOptions& options = {});

/// The approximate worst cut of a map: cut(argmax, radius) and its value.
std::pair<CircularCut, double> worstCut(const SensitivityMap& map);

/// Location law of a random attack: uniform over Rec_r or an explicit
/// density with a known variation bound.
class AttackDistribution {
 public:
  enum class Kind { Uniform, Density };

  static AttackDistribution uniform();
  static AttackDistribution density(IntensityField psi, double variationBound);

  Kind kind() const { return kind_; }
  const IntensityField& psi() const { return psi_; }
  double variationBound() const { return variationBound_; }

 private:
  AttackDistribution() = default;
  Kind kind_ = Kind::Uniform;
  IntensityField psi_ = IntensityField::homogeneous(0.0);
  double variationBound_ = 0.0;
};

struct RcceOptions {
  int threads = 0;
  std::size_t pointBudget = kDefaultPointBudget;
  /// Strict-replication switch: normalize the uniform expectation by |Rec|
  /// instead of the admissible-center area |Rec_r|.
  bool normalizeOverRec = false;
};

/// Expected damage of a randomly located cut: the area-weighted mean of the
/// sensitivity map for the uniform law, or the psi-weighted sum for an
/// explicit density (psi validated to integrate to 1 over Rec_r within
/// 1e-6).
double rcce(const StochasticNetworkModel& model, double r, const AccuracyBudget& budget,
            const AttackDistribution& dist, const RcceOptions& options = {});

}  // namespace geocut
