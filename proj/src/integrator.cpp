#include "geocut/integrator.hpp"

#include <algorithm>
#include <cmath>

#include "geocut/parallel.hpp"

namespace geocut {

namespace {

struct BetaGamma {
  double beta = 0.0;
  double gamma = 0.0;
  BetaGamma operator+(const BetaGamma& o) const { return {beta + o.beta, gamma + o.gamma}; }
};

}  // namespace

EdccEngine::EdccEngine(const StochasticNetworkModel& model, IntegrationGrid grid,
                       EdccOptions options)
    : model_(&model), grid_(std::move(grid)), options_(options) {
  const std::size_t n = grid_.pointCount();
  std::vector<double> f(n);
  double maxF = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = model.intensity().at(grid_.point(i));
    maxF = std::max(maxF, f[i]);
  }
  const double floor = options_.intensityFloor * maxF;
  px_.reserve(n);
  py_.reserve(n);
  fw_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (f[i] > floor && f[i] > 0.0) {
      const Point p = grid_.point(i);
      px_.push_back(p.x);
      py_.push_back(p.y);
      fw_.push_back(f[i] * grid_.cellArea(i));
    }
  }
  if (auto table = model.distanceKernel()) {
    useTable_ = true;
    table_ = *table;
  }
}

template <typename KernelFn>
DamageBreakdown EdccEngine::evaluateImpl(const CircularCut& cut, const AccuracyBudget& budgetUsed,
                                         const KernelFn& kernel) const {
  const std::size_t n = px_.size();
  const double rr = cut.radius + kGeomTol;
  const double rr2 = rr * rr;
  const double cx = cut.center.x, cy = cut.center.y;

  std::vector<std::uint32_t> insideIdx, outsideIdx;
  insideIdx.reserve(256);
  outsideIdx.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = px_[i] - cx;
    const double dy = py_[i] - cy;
    ((dx * dx + dy * dy <= rr2) ? insideIdx : outsideIdx).push_back(static_cast<std::uint32_t>(i));
  }

  // Compacted copies keep the inner loops contiguous.
  const std::size_t nIn = insideIdx.size(), nOut = outsideIdx.size();
  std::vector<double> inX(nIn), inY(nIn), inW(nIn);
  for (std::size_t k = 0; k < nIn; ++k) {
    inX[k] = px_[insideIdx[k]];
    inY[k] = py_[insideIdx[k]];
    inW[k] = fw_[insideIdx[k]];
  }
  std::vector<double> outX(nOut), outY(nOut), outW(nOut);
  for (std::size_t k = 0; k < nOut; ++k) {
    outX[k] = px_[outsideIdx[k]];
    outY[k] = py_[outsideIdx[k]];
    outW[k] = fw_[outsideIdx[k]];
  }

  const int threads = options_.threads;

  const double alpha =
      0.5 * chunkedReduce(nIn, threads, 0.0, [&](std::size_t b, std::size_t e) {
        double acc = 0.0;
        for (std::size_t u = b; u < e; ++u) {
          const double ux = inX[u], uy = inY[u];
          double s = 0.0;
          for (std::size_t v = 0; v < nIn; ++v) {
            const double dx = inX[v] - ux;
            const double dy = inY[v] - uy;
            s += inW[v] * kernel(dx * dx + dy * dy, insideIdx[u], insideIdx[v]);
          }
          acc += inW[u] * s;
        }
        return acc;
      });

  const double r2 = cut.radius * cut.radius;
  const BetaGamma bg =
      chunkedReduce(nOut, threads, BetaGamma{}, [&](std::size_t b, std::size_t e) {
        BetaGamma acc;
        for (std::size_t u = b; u < e; ++u) {
          const double ux = outX[u], uy = outY[u];
          const std::uint32_t uIdx = outsideIdx[u];

          double betaSum = 0.0;
          for (std::size_t v = 0; v < nIn; ++v) {
            const double dx = inX[v] - ux;
            const double dy = inY[v] - uy;
            betaSum += inW[v] * kernel(dx * dx + dy * dy, uIdx, insideIdx[v]);
          }
          acc.beta += outW[u] * betaSum;

          // Shadow membership: same two-comparison wedge test as
          // ShadowRegion::containsUnchecked, with the near-boundary band
          // routed to the exact segment test.
          const double wx = cx - ux, wy = cy - uy;
          const double d2 = wx * wx + wy * wy;
          const double chord = d2 - r2;
          double gammaSum = 0.0;
          for (std::size_t v = 0; v < nOut; ++v) {
            const double sx = outX[v] - ux;
            const double sy = outY[v] - uy;
            const double dot = sx * wx + sy * wy;
            const double s2 = sx * sx + sy * sy;
            const double cone = dot * dot - s2 * chord;
            const double far = dot - chord;
            const double bandCone = 1e-9 * s2 * d2;
            const double bandFar = 1e-9 * (s2 + d2);
            bool in;
            if (cone > bandCone && far > bandFar) {
              in = true;
            } else if (cone < -bandCone || far < -bandFar) {
              in = false;
            } else {
              in = segmentIntersectsDisk(Point{ux, uy}, Point{outX[v], outY[v]}, cut);
            }
            if (in) gammaSum += outW[v] * kernel(s2, uIdx, outsideIdx[v]);
          }
          acc.gamma += outW[u] * gammaSum;
        }
        return acc;
      });

  DamageBreakdown out;
  out.alpha = alpha;
  out.beta = bg.beta;
  out.gamma = 0.5 * bg.gamma;
  out.total = out.alpha + out.beta + out.gamma;
  out.delta = grid_.delta();
  out.cut = cut;
  out.budgetUsed = budgetUsed;
  return out;
}

DamageBreakdown EdccEngine::evaluate(const CircularCut& cut, const AccuracyBudget& budgetUsed) const {
  if (useTable_) {
    const DistanceKernel table = table_;
    return evaluateImpl(cut, budgetUsed,
                        [table](double d2, std::uint32_t, std::uint32_t) {
                          return table(std::sqrt(d2));
                        });
  }
  if (model_->kernelDistanceOnly()) {
    const StochasticNetworkModel* m = model_;
    return evaluateImpl(cut, budgetUsed, [m](double d2, std::uint32_t, std::uint32_t) {
      return m->kernelAtDistance(std::sqrt(d2));
    });
  }
  const StochasticNetworkModel* m = model_;
  const std::vector<double>& px = px_;
  const std::vector<double>& py = py_;
  return evaluateImpl(cut, budgetUsed, [&](double, std::uint32_t i, std::uint32_t j) {
    return m->expectedCapacityKernel(Point{px[i], py[i]}, Point{px[j], py[j]});
  });
}

DamageBreakdown edcc(const StochasticNetworkModel& model, const CircularCut& cut,
                     const AccuracyBudget& budget, const EdccOptions& options) {
  const Rectangle admissible = model.rec().inset(cut.radius);
  if (!admissible.contains(cut.center)) {
    throw OutOfDomain("cut center must lie in the admissible region Rec_r");
  }
  IntegrationGrid grid = computeGrid(model.rec(), cut.radius, budget, model, options.pointBudget);
  EdccEngine engine(model, std::move(grid), options);
  return engine.evaluate(cut, budget);
}

double evaluateGamma(const StochasticNetworkModel& model, Point u, const CircularCut& cut,
                     const IntegrationGrid& grid) {
  const ShadowRegion shadow(u, cut, grid.rec());  // throws SourceInsideDisk
  const bool distOnly = model.kernelDistanceOnly();
  double sum = 0.0;
  const std::size_t n = grid.pointCount();
  for (std::size_t i = 0; i < n; ++i) {
    const Point v = grid.point(i);
    if (cut.containsPoint(v)) continue;
    if (!shadow.containsUnchecked(v.x, v.y)) continue;
    const double f = model.intensity().at(v);
    if (f <= 0.0) continue;
    const double g = distOnly ? model.kernelAtDistance(distance(u, v))
                              : model.expectedCapacityKernel(u, v);
    sum += f * g * grid.cellArea(i);
  }
  return sum;
}

}  // namespace geocut
