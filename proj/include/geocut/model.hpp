#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "geocut/geometry.hpp"

namespace geocut {

class CounterRng;

/// Piecewise-constant raster of mean node densities. Row 0 is the
/// southernmost row; `origin` is the lower-left corner of cell (0, 0).
struct RasterGrid {
  int nCols = 0;
  int nRows = 0;
  double cellSize = 1.0;
  Point origin{0.0, 0.0};
  std::vector<double> values;  // row-major, nRows * nCols entries

  double at(int row, int col) const {
    return values[static_cast<std::size_t>(row) * static_cast<std::size_t>(nCols) +
                  static_cast<std::size_t>(col)];
  }
  Rectangle extent() const;
  double maxValue() const;
  /// Exact total mass: cellSize^2 * sum of cell values.
  double totalMass() const;
};

struct GaussianHotspot {
  Point center;
  double sigma = 1.0;
  double amplitude = 1.0;
};

/// Node intensity f of the point process: analytic (homogeneous or Gaussian
/// hotspot mixture) or a raster sampled piecewise-constant per cell.
class IntensityField {
 public:
  enum class Kind { Analytic, Raster };
  enum class AnalyticForm { None, Homogeneous, GaussianMixture };

  static IntensityField homogeneous(double lambda);
  static IntensityField gaussianMixture(std::vector<GaussianHotspot> hotspots,
                                        double background = 0.0);
  static IntensityField raster(RasterGrid grid);

  Kind kind() const { return kind_; }
  AnalyticForm analyticForm() const { return form_; }

  double at(Point u) const;
  /// Upper bound on f over rec (tight for homogeneous and raster kinds).
  double maxOver(const Rectangle& rec) const;
  /// Integral of f over rec; exact for raster and homogeneous kinds, via
  /// error functions for Gaussian mixtures.
  double integralOver(const Rectangle& rec) const;
  /// Bound on |grad f| over rec: analytic for built-ins, max adjacent-cell
  /// slope for rasters.
  double slopeBound(const Rectangle& rec) const;

  const RasterGrid* rasterData() const { return raster_.get(); }
  const std::vector<GaussianHotspot>& hotspots() const { return hotspots_; }
  double background() const { return background_; }
  double lambda() const { return lambda_; }

 private:
  IntensityField() = default;

  Kind kind_ = Kind::Analytic;
  AnalyticForm form_ = AnalyticForm::None;
  double lambda_ = 0.0;
  double background_ = 0.0;
  std::vector<GaussianHotspot> hotspots_;
  std::shared_ptr<const RasterGrid> raster_;
};

/// Link existence probability y(u, v) in [0, 1], symmetric.
class LinkProbability {
 public:
  enum class Kind { InverseDistance, Constant, Custom };

  /// y = min(1, kappa / max(dist, floorDistance, kGeomTol)).
  static LinkProbability inverseDistance(double kappa = 1.0, double floorDistance = 0.0);
  static LinkProbability constant(double p);
  /// Caller guarantees symmetry; values are range-checked on evaluation.
  static LinkProbability custom(std::function<double(Point, Point)> fn, double maxValue = 1.0);

  Kind kind() const { return kind_; }
  bool distanceOnly() const { return kind_ != Kind::Custom; }

  double value(Point u, Point v) const;
  /// Built-in kinds only (throws InvalidArgument for Custom).
  double valueAtDistance(double dist) const;
  double maxValue() const { return maxValue_; }
  double kappa() const { return kappa_; }
  double floorDistance() const { return floorDistance_; }

 private:
  LinkProbability() = default;

  Kind kind_ = Kind::Constant;
  double p_ = 1.0;
  double kappa_ = 1.0;
  double floorDistance_ = 0.0;
  double maxValue_ = 1.0;
  std::function<double(Point, Point)> fn_;
};

/// Link capacity law: the density h(c, dist) of the capacity of a link whose
/// endpoints are `dist` apart, supported on [0, maxCapacity]. Capacities are
/// assumed to depend on endpoint positions through their distance only.
class CapacityLaw {
 public:
  enum class Kind { Constant, Custom };

  static CapacityLaw constant(double c0);
  static CapacityLaw custom(std::function<double(double c, double dist)> density,
                            double maxCapacity);

  Kind kind() const { return kind_; }
  double maxCapacity() const { return maxCapacity_; }

  /// Tabulates custom first moments on a distance-bucket grid covering
  /// [0, maxDistance], checking the density normalization. Called once by
  /// the owning model before the law is shared across threads.
  void prepare(double maxDistance);

  /// Expected capacity at endpoint distance d: integral of c*h(c, d).
  double firstMomentAtDistance(double dist) const;
  double firstMoment(Point u, Point v) const { return firstMomentAtDistance(distance(u, v)); }
  /// Largest tabulated first moment (maxCapacity before prepare()).
  double maxFirstMoment() const;

  /// Draws one capacity; rejection sampling against the tabulated density
  /// ceiling for Custom laws.
  double sampleCapacity(CounterRng& rng, double dist) const;

  static constexpr int kDistanceBuckets = 4096;
  static constexpr int kQuadraturePanels = 256;

 private:
  CapacityLaw() = default;

  struct Table {
    double maxDistance = 0.0;
    std::vector<double> firstMoment;
    std::vector<double> densityCeiling;
  };

  double integrateFirstMoment(double dist) const;

  Kind kind_ = Kind::Constant;
  double c0_ = 0.0;
  double maxCapacity_ = 0.0;
  std::function<double(double, double)> density_;
  std::shared_ptr<const Table> table_;
};

/// Distance-indexed lookup table for the expected-capacity kernel g with
/// linear interpolation. The knot spacing is split at the link-probability
/// clamp breakpoint: linear in the distance below it (where built-in kernels
/// are flat) and linear in 1/distance above it (where inverse-distance
/// kernels are themselves linear), so interpolation of the built-in kinds is
/// exact to rounding.
struct DistanceKernel {
  const double* values = nullptr;  // kKnots + 1 entries
  double breakpoint = 0.0;         // region split b
  double scaleBelow = 0.0;         // kHalf / b
  double invAtB = 0.0;             // 1 / b
  double uScale = 0.0;             // kHalf / (1/b - 1/maxDistance)
  double maxT = 0.0;

  static constexpr int kKnots = 4096;
  static constexpr int kHalf = kKnots / 2;

  double knotParameter(double dist) const {
    if (dist <= breakpoint) return dist * scaleBelow;
    return kHalf + (invAtB - 1.0 / dist) * uScale;
  }

  double knotDistance(double t) const {
    if (t <= kHalf) return t / scaleBelow;
    return 1.0 / (invAtB - (t - kHalf) / uScale);
  }

  double operator()(double dist) const {
    double t = knotParameter(dist);
    if (t > maxT) t = maxT;
    if (t < 0.0) t = 0.0;
    const int i = static_cast<int>(t);
    const double frac = t - i;
    return values[i] + frac * (values[i + 1] - values[i]);
  }
};

/// The stochastic network model N = (PPP(f), y, H, Rec) together with the
/// bounds M (variation rate of f, g and f*f*g) and T (their maxima) used by
/// grid selection. Immutable after construction and shareable across
/// threads.
class StochasticNetworkModel {
 public:
  StochasticNetworkModel(Rectangle rec, IntensityField intensity, LinkProbability linkProb,
                         CapacityLaw capacity, std::optional<double> variationBound = {},
                         std::optional<double> maxBound = {});

  const Rectangle& rec() const { return rec_; }
  const IntensityField& intensity() const { return intensity_; }
  const LinkProbability& linkProb() const { return linkProb_; }
  const CapacityLaw& capacity() const { return capacity_; }

  double variationBound() const { return variationBound_; }  // M
  double maxBound() const { return maxBound_; }              // T
  double maxIntensity() const { return maxIntensity_; }
  double kernelMaxValue() const { return maxKernel_; }
  double expectedNodeCount() const { return nodeMass_; }

  /// f(u); throws OutOfDomain when u is outside Rec.
  double intensityAt(Point u) const;

  /// g(u, v) = y(u, v) * E[capacity at dist(u, v)]. Symmetric, in
  /// [0, maxCapacity]. Coincident points use the clamped y value at zero
  /// distance.
  double expectedCapacityKernel(Point u, Point v) const;

  /// True when g depends on (u, v) through distance only, enabling the
  /// tabulated hot path.
  bool kernelDistanceOnly() const { return linkProb_.distanceOnly(); }
  /// g as a function of distance (distance-only kernels; table-accelerated
  /// when validation passed).
  double kernelAtDistance(double dist) const;

  /// Tabulated kernel view, or nullopt when the kernel is not distance-only
  /// or the table failed its interpolation-accuracy validation (1e-4
  /// relative) against direct evaluation.
  std::optional<DistanceKernel> distanceKernel() const;
  double kernelTableMaxRelError() const { return tableMaxRelError_; }

 private:
  double kernelDirectAtDistance(double dist) const;
  void buildKernelTable();
  void deriveBounds(std::optional<double> userM, std::optional<double> userT);

  Rectangle rec_;
  IntensityField intensity_;
  LinkProbability linkProb_;
  CapacityLaw capacity_;

  double variationBound_ = 0.0;
  double maxBound_ = 0.0;
  double maxIntensity_ = 0.0;
  double maxKernel_ = 0.0;
  double nodeMass_ = 0.0;

  std::shared_ptr<const std::vector<double>> kernelTable_;
  DistanceKernel kernelView_{};
  bool kernelTableValid_ = false;
  double tableMaxRelError_ = 0.0;
};

}  // namespace geocut
