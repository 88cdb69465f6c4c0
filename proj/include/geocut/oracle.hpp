#pragma once

#include <cstdint>
#include <vector>

#include "geocut/geometry.hpp"
#include "geocut/model.hpp"

namespace geocut {

/// One realization of the stochastic network: concrete node locations and
/// links with drawn capacities.
struct ConcreteNetwork {
  struct Link {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    double capacity = 0.0;
  };

  std::vector<Point> nodes;
  std::vector<Link> links;
  std::uint64_t seed = 0;
};

/// Draws one network: per-cell Poisson counts for rasters (exact for
/// piecewise-constant intensities), thinning against the intensity maximum
/// for analytic fields, then an independent Bernoulli draw per unordered
/// node pair and a capacity draw per link. Deterministic given the seed.
/// Throws ExpectedCountOverflow when the expected node count exceeds
/// nodeBudget. Pair enumeration is quadratic; the oracle targets small
/// instances by design.
ConcreteNetwork sampleNetwork(const StochasticNetworkModel& model, std::uint64_t seed,
                              std::size_t nodeBudget = 1'000'000);

/// Empirical TEC estimate with per-class means and standard errors.
struct McEstimate {
  double mean = 0.0;
  double stdError = 0.0;
  std::size_t nSamples = 0;
  double alphaMean = 0.0;
  double betaMean = 0.0;
  double gammaMean = 0.0;
  double alphaStdError = 0.0;
  double betaStdError = 0.0;
  double gammaStdError = 0.0;
};

/// Means over nSamples independent realizations of the capacity destroyed by
/// the cut, bucketed by link class. Sample i draws from the substream
/// (seed, i), so the estimate is bit-identical for any thread count.
McEstimate empiricalTec(const StochasticNetworkModel& model, const CircularCut& cut,
                        std::size_t nSamples, std::uint64_t seed, int threads = 0);

struct PairClassCounts {
  std::size_t alpha = 0;
  std::size_t beta = 0;
  std::size_t gamma = 0;
  std::size_t untouched = 0;
};

/// Classifies every link of a realization against a cut; counts sum to the
/// link count.
PairClassCounts pairClassCounts(const ConcreteNetwork& net, const CircularCut& cut);

}  // namespace geocut
