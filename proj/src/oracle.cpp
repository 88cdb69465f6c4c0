#include "geocut/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "geocut/parallel.hpp"
#include "geocut/rng.hpp"

namespace geocut {

namespace {

constexpr double kLinkProbabilitySkip = 1e-9;

struct ClassTotals {
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
};

ClassTotals destroyedCapacity(const ConcreteNetwork& net, const CircularCut& cut) {
  ClassTotals t;
  for (const auto& link : net.links) {
    switch (classifyLink(net.nodes[link.a], net.nodes[link.b], cut)) {
      case LinkClass::Alpha:
        t.alpha += link.capacity;
        break;
      case LinkClass::Beta:
        t.beta += link.capacity;
        break;
      case LinkClass::Gamma:
        t.gamma += link.capacity;
        break;
      case LinkClass::Untouched:
        break;
    }
  }
  return t;
}

}  // namespace

ConcreteNetwork sampleNetwork(const StochasticNetworkModel& model, std::uint64_t seed,
                              std::size_t nodeBudget) {
  const Rectangle& rec = model.rec();
  const double mass = model.expectedNodeCount();
  if (mass > static_cast<double>(nodeBudget)) {
    throw ExpectedCountOverflow("expected node count " + std::to_string(mass) +
                                " exceeds the sampling budget of " + std::to_string(nodeBudget));
  }

  ConcreteNetwork net;
  net.seed = seed;
  CounterRng rng(seed);

  const IntensityField& f = model.intensity();
  if (f.kind() == IntensityField::Kind::Raster) {
    const RasterGrid& g = *f.rasterData();
    for (int r = 0; r < g.nRows; ++r) {
      const double y0 = std::max(g.origin.y + r * g.cellSize, rec.yMin);
      const double y1 = std::min(g.origin.y + (r + 1) * g.cellSize, rec.yMax);
      if (y1 <= y0) continue;
      for (int c = 0; c < g.nCols; ++c) {
        const double x0 = std::max(g.origin.x + c * g.cellSize, rec.xMin);
        const double x1 = std::min(g.origin.x + (c + 1) * g.cellSize, rec.xMax);
        if (x1 <= x0) continue;
        const double cellMean = g.at(r, c) * (x1 - x0) * (y1 - y0);
        const std::uint64_t count = rng.nextPoisson(cellMean);
        for (std::uint64_t k = 0; k < count; ++k) {
          net.nodes.push_back(Point{rng.nextUniform(x0, x1), rng.nextUniform(y0, y1)});
        }
      }
    }
  } else {
    const double fMax = f.maxOver(rec);
    if (fMax > 0.0) {
      const double candidateMean = fMax * rec.area();
      if (candidateMean > 100.0 * static_cast<double>(nodeBudget)) {
        throw ExpectedCountOverflow("thinning envelope needs " + std::to_string(candidateMean) +
                                    " candidates; intensity too peaked for the sampling budget");
      }
      const std::uint64_t candidates = rng.nextPoisson(candidateMean);
      for (std::uint64_t k = 0; k < candidates; ++k) {
        const Point p{rng.nextUniform(rec.xMin, rec.xMax), rng.nextUniform(rec.yMin, rec.yMax)};
        if (rng.nextDouble() * fMax < f.at(p)) net.nodes.push_back(p);
      }
    }
  }

  const LinkProbability& y = model.linkProb();
  const bool distOnly = y.distanceOnly();
  const std::size_t n = net.nodes.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = distance(net.nodes[i], net.nodes[j]);
      double p;
      if (distOnly) {
        p = y.valueAtDistance(d);
        if (p < kLinkProbabilitySkip) continue;
      } else {
        p = y.value(net.nodes[i], net.nodes[j]);
      }
      if (rng.nextDouble() < p) {
        net.links.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                             model.capacity().sampleCapacity(rng, d)});
      }
    }
  }
  return net;
}

McEstimate empiricalTec(const StochasticNetworkModel& model, const CircularCut& cut,
                        std::size_t nSamples, std::uint64_t seed, int threads) {
  if (nSamples < 2) throw InvalidArgument("empiricalTec needs at least two samples");

  struct Acc {
    double a = 0, b = 0, g = 0, t = 0;
    double a2 = 0, b2 = 0, g2 = 0, t2 = 0;
    Acc operator+(const Acc& o) const {
      return {a + o.a, b + o.b, g + o.g, t + o.t, a2 + o.a2, b2 + o.b2, g2 + o.g2, t2 + o.t2};
    }
  };

  const Acc sum = chunkedReduce(nSamples, threads, Acc{}, [&](std::size_t lo, std::size_t hi) {
    Acc acc;
    for (std::size_t s = lo; s < hi; ++s) {
      const ConcreteNetwork net = sampleNetwork(model, CounterRng::substreamSeed(seed, s));
      const ClassTotals c = destroyedCapacity(net, cut);
      const double total = c.alpha + c.beta + c.gamma;
      acc.a += c.alpha;
      acc.b += c.beta;
      acc.g += c.gamma;
      acc.t += total;
      acc.a2 += c.alpha * c.alpha;
      acc.b2 += c.beta * c.beta;
      acc.g2 += c.gamma * c.gamma;
      acc.t2 += total * total;
    }
    return acc;
  });

  const double n = static_cast<double>(nSamples);
  auto stdErr = [n](double s, double s2) {
    const double var = std::max(0.0, (s2 - s * s / n) / (n - 1.0));
    return std::sqrt(var / n);
  };

  McEstimate est;
  est.nSamples = nSamples;
  est.mean = sum.t / n;
  est.stdError = stdErr(sum.t, sum.t2);
  est.alphaMean = sum.a / n;
  est.betaMean = sum.b / n;
  est.gammaMean = sum.g / n;
  est.alphaStdError = stdErr(sum.a, sum.a2);
  est.betaStdError = stdErr(sum.b, sum.b2);
  est.gammaStdError = stdErr(sum.g, sum.g2);
  return est;
}

PairClassCounts pairClassCounts(const ConcreteNetwork& net, const CircularCut& cut) {
  PairClassCounts counts;
  for (const auto& link : net.links) {
    switch (classifyLink(net.nodes[link.a], net.nodes[link.b], cut)) {
      case LinkClass::Alpha:
        ++counts.alpha;
        break;
      case LinkClass::Beta:
        ++counts.beta;
        break;
      case LinkClass::Gamma:
        ++counts.gamma;
        break;
      case LinkClass::Untouched:
        ++counts.untouched;
        break;
    }
  }
  return counts;
}

}  // namespace geocut
