#include "geocut/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "geocut/rng.hpp"

namespace geocut {

namespace {

// Mass fraction of a unit-amplitude 1-D Gaussian (scale sigma, center c)
// inside [lo, hi], as a multiple of sigma*sqrt(2*pi).
double gaussianMassFraction(double c, double sigma, double lo, double hi) {
  const double inv = 1.0 / (sigma * std::numbers::sqrt2);
  return 0.5 * (std::erf((hi - c) * inv) - std::erf((lo - c) * inv));
}

// Knot transform for the kernel table, split at the link-probability clamp
// breakpoint when there is one.
DistanceKernel makeKernelTransform(const LinkProbability& y, double maxDist) {
  DistanceKernel view;
  double breakpoint = 0.5 * maxDist;
  if (y.kind() == LinkProbability::Kind::InverseDistance) {
    const double clampAt = std::max({y.kappa(), y.floorDistance(), kGeomTol});
    if (clampAt < maxDist) breakpoint = clampAt;
  }
  view.breakpoint = breakpoint;
  view.scaleBelow = DistanceKernel::kHalf / breakpoint;
  view.invAtB = 1.0 / breakpoint;
  view.uScale = DistanceKernel::kHalf / (1.0 / breakpoint - 1.0 / maxDist);
  view.maxT = static_cast<double>(DistanceKernel::kKnots) - 1e-9;
  return view;
}

}  // namespace

Rectangle RasterGrid::extent() const {
  return Rectangle(origin.x, origin.x + nCols * cellSize, origin.y, origin.y + nRows * cellSize);
}

double RasterGrid::maxValue() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, v);
  return m;
}

double RasterGrid::totalMass() const {
  double sum = 0.0;
  for (double v : values) sum += v;
  return cellSize * cellSize * sum;
}

IntensityField IntensityField::homogeneous(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("homogeneous intensity must be finite and nonnegative");
  }
  IntensityField f;
  f.kind_ = Kind::Analytic;
  f.form_ = AnalyticForm::Homogeneous;
  f.lambda_ = lambda;
  return f;
}

IntensityField IntensityField::gaussianMixture(std::vector<GaussianHotspot> hotspots,
                                               double background) {
  if (!(background >= 0.0) || !std::isfinite(background)) {
    throw InvalidArgument("mixture background must be finite and nonnegative");
  }
  for (const auto& h : hotspots) {
    if (!finite(h.center) || !(h.sigma > 0.0) || !(h.amplitude >= 0.0)) {
      throw InvalidArgument("hotspot needs finite center, sigma > 0, amplitude >= 0");
    }
  }
  IntensityField f;
  f.kind_ = Kind::Analytic;
  f.form_ = AnalyticForm::GaussianMixture;
  f.background_ = background;
  f.hotspots_ = std::move(hotspots);
  return f;
}

IntensityField IntensityField::raster(RasterGrid grid) {
  if (grid.nCols <= 0 || grid.nRows <= 0) throw InvalidArgument("raster needs positive dimensions");
  if (!(grid.cellSize > 0.0)) throw InvalidArgument("raster cell size must be positive");
  if (grid.values.size() !=
      static_cast<std::size_t>(grid.nCols) * static_cast<std::size_t>(grid.nRows)) {
    throw InvalidArgument("raster value count does not match dimensions");
  }
  for (double v : grid.values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("raster cells must be finite and nonnegative");
    }
  }
  IntensityField f;
  f.kind_ = Kind::Raster;
  f.raster_ = std::make_shared<const RasterGrid>(std::move(grid));
  return f;
}

double IntensityField::at(Point u) const {
  switch (kind_) {
    case Kind::Raster: {
      const RasterGrid& g = *raster_;
      int col = static_cast<int>(std::floor((u.x - g.origin.x) / g.cellSize));
      int row = static_cast<int>(std::floor((u.y - g.origin.y) / g.cellSize));
      // Points on the east/north extent boundary belong to the last cell.
      col = std::clamp(col, 0, g.nCols - 1);
      row = std::clamp(row, 0, g.nRows - 1);
      return g.at(row, col);
    }
    case Kind::Analytic:
      break;
  }
  if (form_ == AnalyticForm::Homogeneous) return lambda_;
  double v = background_;
  for (const auto& h : hotspots_) {
    const double q = squaredDistance(u, h.center) / (2.0 * h.sigma * h.sigma);
    v += h.amplitude * std::exp(-q);
  }
  return v;
}

double IntensityField::maxOver(const Rectangle& rec) const {
  switch (kind_) {
    case Kind::Raster: {
      const RasterGrid& g = *raster_;
      // Max over cells overlapping rec.
      const int c0 = std::clamp(
          static_cast<int>(std::floor((rec.xMin - g.origin.x) / g.cellSize)), 0, g.nCols - 1);
      const int c1 = std::clamp(
          static_cast<int>(std::floor((rec.xMax - g.origin.x) / g.cellSize)), 0, g.nCols - 1);
      const int r0 = std::clamp(
          static_cast<int>(std::floor((rec.yMin - g.origin.y) / g.cellSize)), 0, g.nRows - 1);
      const int r1 = std::clamp(
          static_cast<int>(std::floor((rec.yMax - g.origin.y) / g.cellSize)), 0, g.nRows - 1);
      double m = 0.0;
      for (int r = r0; r <= r1; ++r) {
        for (int c = c0; c <= c1; ++c) m = std::max(m, g.at(r, c));
      }
      return m;
    }
    case Kind::Analytic:
      break;
  }
  if (form_ == AnalyticForm::Homogeneous) return lambda_;
  double bound = background_;
  for (const auto& h : hotspots_) bound += h.amplitude;
  return bound;
}

double IntensityField::integralOver(const Rectangle& rec) const {
  switch (kind_) {
    case Kind::Raster: {
      const RasterGrid& g = *raster_;
      double sum = 0.0;
      for (int r = 0; r < g.nRows; ++r) {
        const double y0 = g.origin.y + r * g.cellSize;
        const double y1 = y0 + g.cellSize;
        const double hy = std::min(y1, rec.yMax) - std::max(y0, rec.yMin);
        if (hy <= 0.0) continue;
        for (int c = 0; c < g.nCols; ++c) {
          const double x0 = g.origin.x + c * g.cellSize;
          const double x1 = x0 + g.cellSize;
          const double hx = std::min(x1, rec.xMax) - std::max(x0, rec.xMin);
          if (hx <= 0.0) continue;
          sum += g.at(r, c) * hx * hy;
        }
      }
      return sum;
    }
    case Kind::Analytic:
      break;
  }
  if (form_ == AnalyticForm::Homogeneous) return lambda_ * rec.area();
  double sum = background_ * rec.area();
  for (const auto& h : hotspots_) {
    const double mass = h.amplitude * 2.0 * std::numbers::pi * h.sigma * h.sigma;
    sum += mass * gaussianMassFraction(h.center.x, h.sigma, rec.xMin, rec.xMax) *
           gaussianMassFraction(h.center.y, h.sigma, rec.yMin, rec.yMax);
  }
  return sum;
}

double IntensityField::slopeBound(const Rectangle& rec) const {
  switch (kind_) {
    case Kind::Raster: {
      const RasterGrid& g = *raster_;
      double m = 0.0;
      for (int r = 0; r < g.nRows; ++r) {
        for (int c = 0; c < g.nCols; ++c) {
          if (c + 1 < g.nCols) m = std::max(m, std::abs(g.at(r, c + 1) - g.at(r, c)));
          if (r + 1 < g.nRows) m = std::max(m, std::abs(g.at(r + 1, c) - g.at(r, c)));
        }
      }
      return m / g.cellSize;
    }
    case Kind::Analytic:
      break;
  }
  (void)rec;
  if (form_ == AnalyticForm::Homogeneous) return 0.0;
  // |grad| of one Gaussian component peaks at amplitude / (sigma * sqrt(e)).
  double m = 0.0;
  for (const auto& h : hotspots_) m += h.amplitude / (h.sigma * std::sqrt(std::numbers::e));
  return m;
}

LinkProbability LinkProbability::inverseDistance(double kappa, double floorDistance) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw InvalidArgument("inverse-distance scale must be positive");
  }
  if (!(floorDistance >= 0.0) || !std::isfinite(floorDistance)) {
    throw InvalidArgument("inverse-distance floor must be nonnegative");
  }
  LinkProbability y;
  y.kind_ = Kind::InverseDistance;
  y.kappa_ = kappa;
  y.floorDistance_ = floorDistance;
  y.maxValue_ = 1.0;
  return y;
}

LinkProbability LinkProbability::constant(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("constant link probability must be in [0,1]");
  LinkProbability y;
  y.kind_ = Kind::Constant;
  y.p_ = p;
  y.maxValue_ = p;
  return y;
}

LinkProbability LinkProbability::custom(std::function<double(Point, Point)> fn, double maxValue) {
  if (!fn) throw InvalidArgument("custom link probability needs a function");
  if (!(maxValue > 0.0 && maxValue <= 1.0)) {
    throw InvalidArgument("custom link probability bound must be in (0,1]");
  }
  LinkProbability y;
  y.kind_ = Kind::Custom;
  y.fn_ = std::move(fn);
  y.maxValue_ = maxValue;
  return y;
}

double LinkProbability::value(Point u, Point v) const {
  if (kind_ == Kind::Custom) {
    const double p = fn_(u, v);
    if (!(p >= 0.0 && p <= 1.0)) {
      throw InvalidArgument("custom link probability left [0,1]");
    }
    return p;
  }
  return valueAtDistance(distance(u, v));
}

double LinkProbability::valueAtDistance(double dist) const {
  switch (kind_) {
    case Kind::Constant:
      return p_;
    case Kind::InverseDistance: {
      const double d = std::max({dist, floorDistance_, kGeomTol});
      return std::min(1.0, kappa_ / d);
    }
    case Kind::Custom:
      break;
  }
  throw InvalidArgument("custom link probabilities are not distance-indexed");
}

CapacityLaw CapacityLaw::constant(double c0) {
  if (!(c0 > 0.0) || !std::isfinite(c0)) throw InvalidArgument("constant capacity must be positive");
  CapacityLaw law;
  law.kind_ = Kind::Constant;
  law.c0_ = c0;
  law.maxCapacity_ = c0;
  return law;
}

CapacityLaw CapacityLaw::custom(std::function<double(double, double)> density, double maxCapacity) {
  if (!density) throw InvalidArgument("custom capacity law needs a density");
  if (!(maxCapacity > 0.0) || !std::isfinite(maxCapacity)) {
    throw InvalidArgument("maxCapacity must be positive and finite");
  }
  CapacityLaw law;
  law.kind_ = Kind::Custom;
  law.density_ = std::move(density);
  law.maxCapacity_ = maxCapacity;
  return law;
}

double CapacityLaw::integrateFirstMoment(double dist) const {
  const double w = maxCapacity_ / kQuadraturePanels;
  double fm = 0.0;
  for (int k = 0; k < kQuadraturePanels; ++k) {
    const double c = (k + 0.5) * w;
    fm += density_(c, dist) * c;
  }
  return std::clamp(fm * w, 0.0, maxCapacity_);
}

void CapacityLaw::prepare(double maxDistance) {
  if (kind_ != Kind::Custom) return;
  if (!(maxDistance > 0.0)) throw InvalidArgument("prepare needs a positive distance range");
  auto table = std::make_shared<Table>();
  table->maxDistance = maxDistance;
  table->firstMoment.resize(kDistanceBuckets);
  table->densityCeiling.resize(kDistanceBuckets);
  const double w = maxCapacity_ / kQuadraturePanels;
  for (int b = 0; b < kDistanceBuckets; ++b) {
    const double dist = (b + 0.5) * maxDistance / kDistanceBuckets;
    double mass = 0.0, massHalf = 0.0, fm = 0.0, ceiling = 0.0;
    for (int k = 0; k < kQuadraturePanels; ++k) {
      const double c = (k + 0.5) * w;
      const double h = density_(c, dist);
      if (!(h >= 0.0) || !std::isfinite(h)) {
        throw InvalidArgument("capacity density must be finite and nonnegative");
      }
      mass += h;
      if (k % 2 == 0) massHalf += density_(c + 0.5 * w, dist);
      fm += h * c;
      ceiling = std::max(ceiling, h);
    }
    mass *= w;
    massHalf *= 2.0 * w;
    // Normalization check, widened by the observed quadrature resolution.
    const double tol = std::max(1e-9, 2.0 * std::abs(mass - massHalf));
    if (std::abs(mass - 1.0) > tol) {
      throw InvalidArgument("capacity density does not integrate to 1 over [0, maxCapacity]");
    }
    table->firstMoment[b] = std::clamp(fm * w, 0.0, maxCapacity_);
    table->densityCeiling[b] = ceiling;
  }
  table_ = std::move(table);
}

double CapacityLaw::firstMomentAtDistance(double dist) const {
  if (kind_ == Kind::Constant) return c0_;
  if (table_) {
    const int b = std::clamp(
        static_cast<int>(dist / table_->maxDistance * kDistanceBuckets), 0, kDistanceBuckets - 1);
    return table_->firstMoment[b];
  }
  return integrateFirstMoment(dist);
}

double CapacityLaw::maxFirstMoment() const {
  if (kind_ == Kind::Constant) return c0_;
  if (!table_) return maxCapacity_;
  double m = 0.0;
  for (double v : table_->firstMoment) m = std::max(m, v);
  return m;
}

double CapacityLaw::sampleCapacity(CounterRng& rng, double dist) const {
  if (kind_ == Kind::Constant) return c0_;
  double ceiling = maxCapacity_;  // fallback when unprepared: crude but safe bound below
  if (table_) {
    const int b = std::clamp(
        static_cast<int>(dist / table_->maxDistance * kDistanceBuckets), 0, kDistanceBuckets - 1);
    ceiling = 2.0 * table_->densityCeiling[b];
  } else {
    // Probe a coarse ceiling.
    double m = 0.0;
    for (int k = 0; k < kQuadraturePanels; ++k) {
      m = std::max(m, density_((k + 0.5) * maxCapacity_ / kQuadraturePanels, dist));
    }
    ceiling = 2.0 * m;
  }
  if (!(ceiling > 0.0)) throw InvalidArgument("capacity density is identically zero");
  for (int it = 0; it < 100000; ++it) {
    const double c = rng.nextUniform(0.0, maxCapacity_);
    const double h = density_(c, dist);
    if (h > ceiling) {
      throw InvalidArgument("capacity density exceeds its tabulated ceiling; refine the law");
    }
    if (rng.nextDouble() * ceiling < h) return c;
  }
  throw InvalidArgument("capacity rejection sampling failed to accept");
}

StochasticNetworkModel::StochasticNetworkModel(Rectangle rec, IntensityField intensity,
                                               LinkProbability linkProb, CapacityLaw capacity,
                                               std::optional<double> variationBound,
                                               std::optional<double> maxBound)
    : rec_(rec),
      intensity_(std::move(intensity)),
      linkProb_(std::move(linkProb)),
      capacity_(std::move(capacity)) {
  if (intensity_.kind() == IntensityField::Kind::Raster) {
    const Rectangle ext = intensity_.rasterData()->extent();
    if (rec_.xMin < ext.xMin - kGeomTol || rec_.xMax > ext.xMax + kGeomTol ||
        rec_.yMin < ext.yMin - kGeomTol || rec_.yMax > ext.yMax + kGeomTol) {
      throw InvalidArgument("raster does not cover the model rectangle");
    }
  }
  capacity_.prepare(rec_.diagonal());
  buildKernelTable();
  deriveBounds(variationBound, maxBound);
  nodeMass_ = intensity_.integralOver(rec_);
}

double StochasticNetworkModel::intensityAt(Point u) const {
  if (!finite(u) || !rec_.contains(u)) {
    throw OutOfDomain("intensity queried outside the model rectangle");
  }
  return intensity_.at(u);
}

double StochasticNetworkModel::kernelDirectAtDistance(double dist) const {
  return linkProb_.valueAtDistance(dist) * capacity_.firstMomentAtDistance(dist);
}

double StochasticNetworkModel::expectedCapacityKernel(Point u, Point v) const {
  const double d = distance(u, v);
  if (linkProb_.distanceOnly()) return kernelDirectAtDistance(d);
  return linkProb_.value(u, v) * capacity_.firstMomentAtDistance(d);
}

double StochasticNetworkModel::kernelAtDistance(double dist) const {
  if (!linkProb_.distanceOnly()) {
    throw InvalidArgument("kernel is not distance-indexed for custom link probabilities");
  }
  if (kernelTableValid_) return kernelView_(dist);
  return kernelDirectAtDistance(dist);
}

std::optional<DistanceKernel> StochasticNetworkModel::distanceKernel() const {
  if (!kernelTableValid_) return std::nullopt;
  return kernelView_;
}

void StochasticNetworkModel::buildKernelTable() {
  kernelTableValid_ = false;
  // Tabulate only when both kinds are built-in; custom kernels are evaluated
  // directly.
  if (linkProb_.kind() == LinkProbability::Kind::Custom ||
      capacity_.kind() == CapacityLaw::Kind::Custom) {
    return;
  }
  const int n = DistanceKernel::kKnots;
  const double maxDist = rec_.diagonal();
  DistanceKernel view = makeKernelTransform(linkProb_, maxDist);
  auto values = std::make_shared<std::vector<double>>(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    (*values)[static_cast<std::size_t>(i)] =
        kernelDirectAtDistance(view.knotDistance(static_cast<double>(i)));
  }
  view.values = values->data();
  kernelTable_ = values;
  kernelView_ = view;
  kernelTableValid_ = true;

  // Validate interpolation accuracy at knot midpoints against direct
  // evaluation; disable the table if the 1e-4 relative target is missed.
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = view.knotDistance(i + 0.5);
    const double exact = kernelDirectAtDistance(d);
    const double approx = view(d);
    const double denom = std::max(std::abs(exact), 1e-300);
    worst = std::max(worst, std::abs(approx - exact) / denom);
  }
  tableMaxRelError_ = worst;
  if (worst > 1e-4) kernelTableValid_ = false;
}

void StochasticNetworkModel::deriveBounds(std::optional<double> userM,
                                          std::optional<double> userT) {
  maxIntensity_ = intensity_.maxOver(rec_);
  maxKernel_ = linkProb_.maxValue() * capacity_.maxFirstMoment();

  // Kernel slope bound from finite differences on the distance axis. The
  // probe grid reuses the kink-aligned table spacing so clamp corners are
  // sampled exactly.
  double kernelSlope = 0.0;
  if (linkProb_.distanceOnly()) {
    const int n = DistanceKernel::kKnots;
    const DistanceKernel probe = makeKernelTransform(linkProb_, rec_.diagonal());
    double prevD = 0.0;
    double prevG = kernelDirectAtDistance(0.0);
    for (int i = 1; i <= n; ++i) {
      const double d = probe.knotDistance(static_cast<double>(i));
      const double g = kernelDirectAtDistance(d);
      if (d > prevD) kernelSlope = std::max(kernelSlope, std::abs(g - prevG) / (d - prevD));
      prevD = d;
      prevG = g;
    }
  } else {
    // No distance parametrization to probe; fall back to a coarse bound.
    kernelSlope = maxKernel_ / std::max(rec_.diagonal() / DistanceKernel::kKnots, kGeomTol);
  }

  const double slopeF = intensity_.slopeBound(rec_);
  const double productMax = maxIntensity_ * maxIntensity_ * maxKernel_;
  const double productSlope =
      2.0 * maxIntensity_ * maxKernel_ * slopeF + maxIntensity_ * maxIntensity_ * kernelSlope;

  const double derivedT = std::max({maxIntensity_, maxKernel_, productMax});
  const double derivedM = std::max({slopeF, kernelSlope, productSlope});

  if (userT) {
    if (!(*userT >= 0.0) || !std::isfinite(*userT)) {
      throw InvalidArgument("max bound T must be finite and nonnegative");
    }
    if (intensity_.kind() == IntensityField::Kind::Raster &&
        *userT < intensity_.rasterData()->maxValue()) {
      throw InvalidArgument("max bound T is below the raster maximum");
    }
    maxBound_ = *userT;
  } else {
    maxBound_ = derivedT;
  }

  if (userM) {
    if (!(*userM >= 0.0) || !std::isfinite(*userM)) {
      throw InvalidArgument("variation bound M must be finite and nonnegative");
    }
    variationBound_ = *userM;
  } else {
    variationBound_ = derivedM;
  }
}

}  // namespace geocut
