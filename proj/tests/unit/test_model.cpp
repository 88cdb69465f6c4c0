#include <cmath>
#include <numbers>

#include <doctest.h>

#include "geocut/model.hpp"
#include "geocut/oracle.hpp"
#include "geocut/rng.hpp"
#include "support.hpp"

using namespace geocut;

TEST_CASE("intensityAt: homogeneous and raster lookup") {
  const Rectangle rec(0, 2, 0, 1);
  const StochasticNetworkModel homog(rec, IntensityField::homogeneous(2.0),
                                     LinkProbability::constant(1.0), CapacityLaw::constant(1.0));
  CHECK(homog.intensityAt({0.3, 0.7}) == 2.0);
  CHECK(homog.intensityAt({1.9, 0.1}) == 2.0);
  CHECK_THROWS_AS(homog.intensityAt({3.0, 0.5}), OutOfDomain);

  RasterGrid single;
  single.nCols = 1;
  single.nRows = 1;
  single.cellSize = 1.0;
  single.values = {5.0};
  const StochasticNetworkModel one(Rectangle(0, 1, 0, 1), IntensityField::raster(single),
                                   LinkProbability::constant(1.0), CapacityLaw::constant(1.0));
  CHECK(one.intensityAt({0.4, 0.6}) == 5.0);

  RasterGrid two;
  two.nCols = 2;
  two.nRows = 1;
  two.cellSize = 1.0;
  two.values = {1.0, 3.0};
  const StochasticNetworkModel pair(Rectangle(0, 2, 0, 1), IntensityField::raster(two),
                                    LinkProbability::constant(1.0), CapacityLaw::constant(1.0));
  CHECK(pair.intensityAt({1.5, 0.5}) == 3.0);
  CHECK(pair.intensityAt({0.5, 0.5}) == 1.0);
}

TEST_CASE("expectedCapacityKernel examples") {
  const Rectangle rec(0, 10, 0, 10);
  const StochasticNetworkModel ones = testsupport::unitKernelModel(rec, 1.0);
  CHECK(ones.expectedCapacityKernel({1, 1}, {4, 5}) == doctest::Approx(1.0));

  StochasticNetworkModel inv(rec, IntensityField::homogeneous(1.0),
                             LinkProbability::inverseDistance(1.0, 1.0),
                             CapacityLaw::constant(1.0));
  CHECK(inv.expectedCapacityKernel({1, 1}, {5, 1}) == doctest::Approx(0.25));
  // dist 0.5 below the floor distance d0 = 1: clamped to 1.
  CHECK(inv.expectedCapacityKernel({1, 1}, {1.5, 1}) == doctest::Approx(1.0));
  // Coincident points: y clamps to 1, kernel is the first moment.
  CHECK(inv.expectedCapacityKernel({2, 2}, {2, 2}) == doctest::Approx(1.0));
}

TEST_CASE("kernel symmetry and bounds") {
  const Rectangle rec(0, 8, 0, 6);
  StochasticNetworkModel model(rec, IntensityField::homogeneous(1.0),
                               LinkProbability::inverseDistance(1.3, 0.2),
                               CapacityLaw::constant(2.5));
  CounterRng rng(42);
  for (int i = 0; i < 3000; ++i) {
    const Point u{rng.nextUniform(0, 8), rng.nextUniform(0, 6)};
    const Point v{rng.nextUniform(0, 8), rng.nextUniform(0, 6)};
    const double g = model.expectedCapacityKernel(u, v);
    CHECK(g == model.expectedCapacityKernel(v, u));
    CHECK(g >= 0.0);
    CHECK(g <= model.linkProb().value(u, v) * model.capacity().maxCapacity() + 1e-12);
    CHECK(g <= model.capacity().maxCapacity() + 1e-12);
  }
}

TEST_CASE("kernel distance table validates against direct evaluation") {
  const Rectangle rec(0, 236, 0, 104);
  StochasticNetworkModel model(rec, IntensityField::homogeneous(0.1),
                               LinkProbability::inverseDistance(1.0),
                               CapacityLaw::constant(1.0));
  REQUIRE(model.distanceKernel().has_value());
  CHECK(model.kernelTableMaxRelError() < 1e-4);
  CounterRng rng(5);
  for (int i = 0; i < 4000; ++i) {
    const double d = rng.nextUniform(0.0, rec.diagonal());
    const double direct = model.linkProb().valueAtDistance(d) * 1.0;
    const double table = model.kernelAtDistance(d);
    CHECK(std::abs(table - direct) <= 1e-4 * std::max(direct, 1e-12));
  }
}

TEST_CASE("custom capacity law: triangular density") {
  // h(c) = 2c / cmax^2 on [0, cmax]; mean 2*cmax/3.
  const double cmax = 3.0;
  CapacityLaw law = CapacityLaw::custom(
      [cmax](double c, double) { return 2.0 * c / (cmax * cmax); }, cmax);
  const Rectangle rec(0, 4, 0, 4);
  StochasticNetworkModel model(rec, IntensityField::homogeneous(1.0),
                               LinkProbability::constant(1.0), law);
  CHECK(model.capacity().firstMomentAtDistance(1.0) == doctest::Approx(2.0 * cmax / 3.0).epsilon(1e-4));

  CounterRng rng(77);
  double sum = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) sum += model.capacity().sampleCapacity(rng, 1.0);
  CHECK(sum / n == doctest::Approx(2.0 * cmax / 3.0).epsilon(0.02));

  CapacityLaw bad = CapacityLaw::custom([](double, double) { return 0.3; }, 2.0);
  CHECK_THROWS_AS(StochasticNetworkModel(rec, IntensityField::homogeneous(1.0),
                                         LinkProbability::constant(1.0), bad),
                  InvalidArgument);
}

TEST_CASE("sampleNetwork: degenerate intensities") {
  const Rectangle rec(0, 4, 0, 4);
  const StochasticNetworkModel empty = testsupport::unitKernelModel(rec, 0.0);
  const ConcreteNetwork net = sampleNetwork(empty, 17);
  CHECK(net.nodes.empty());
  CHECK(net.links.empty());

  StochasticNetworkModel noLinks(rec, IntensityField::homogeneous(2.0),
                                 LinkProbability::constant(0.0), CapacityLaw::constant(1.0));
  const ConcreteNetwork net2 = sampleNetwork(noLinks, 17);
  CHECK(net2.links.empty());
  CHECK_FALSE(net2.nodes.empty());
}

TEST_CASE("sampleNetwork: Poisson count statistics over the unit square") {
  const Rectangle rec(0, 1, 0, 1);
  const double lambda = 5.0;
  const StochasticNetworkModel model(rec, IntensityField::homogeneous(lambda),
                                     LinkProbability::constant(0.0), CapacityLaw::constant(1.0));
  const int n = 10000;
  double sum = 0.0;
  for (int s = 0; s < n; ++s) {
    sum += static_cast<double>(sampleNetwork(model, CounterRng::substreamSeed(900, s)).nodes.size());
  }
  const double mean = sum / n;
  CHECK(std::abs(mean - lambda) <= 4.0 * std::sqrt(lambda / n));
}

TEST_CASE("sampleNetwork: counts in disjoint rectangles are uncorrelated") {
  const Rectangle rec(0, 1, 0, 1);
  const StochasticNetworkModel model(rec, IntensityField::homogeneous(6.0),
                                     LinkProbability::constant(0.0), CapacityLaw::constant(1.0));
  const int n = 10000;
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (int s = 0; s < n; ++s) {
    const ConcreteNetwork net = sampleNetwork(model, CounterRng::substreamSeed(901, s));
    double left = 0, right = 0;
    for (const Point& p : net.nodes) (p.x < 0.5 ? left : right) += 1.0;
    sx += left;
    sy += right;
    sxx += left * left;
    syy += right * right;
    sxy += left * right;
  }
  const double covXY = sxy / n - (sx / n) * (sy / n);
  const double varX = sxx / n - (sx / n) * (sx / n);
  const double varY = syy / n - (sy / n) * (sy / n);
  const double rho = covXY / std::sqrt(varX * varY);
  CHECK(std::abs(rho) < 0.05);
}

TEST_CASE("sampleNetwork: thinning matches analytic hotspot mass") {
  const Rectangle rec(0, 6, 0, 6);
  const StochasticNetworkModel model =
      testsupport::hotspotModel(rec, {{{3.0, 3.0}, 0.5, 8.0}}, 0.0);
  const double mass = model.expectedNodeCount();
  CHECK(mass == doctest::Approx(8.0 * 2.0 * std::numbers::pi * 0.25).epsilon(1e-6));
  const int n = 4000;
  double sum = 0.0;
  for (int s = 0; s < n; ++s) {
    sum += static_cast<double>(sampleNetwork(model, CounterRng::substreamSeed(902, s)).nodes.size());
  }
  CHECK(std::abs(sum / n - mass) <= 4.0 * std::sqrt(mass / n));
}

TEST_CASE("raster mass identity and overflow guard") {
  RasterGrid g;
  g.nCols = 3;
  g.nRows = 2;
  g.cellSize = 0.5;
  g.values = {1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
  const IntensityField field = IntensityField::raster(g);
  CHECK(field.integralOver(field.rasterData()->extent()) ==
        doctest::Approx(0.25 * 21.0).epsilon(1e-14));
  CHECK(field.rasterData()->totalMass() == doctest::Approx(0.25 * 21.0).epsilon(1e-14));

  const Rectangle rec(0, 100, 0, 100);
  const StochasticNetworkModel big = testsupport::unitKernelModel(rec, 200.0);
  CHECK_THROWS_AS(sampleNetwork(big, 1, /*nodeBudget=*/100000), ExpectedCountOverflow);
}

TEST_CASE("model bound validation") {
  RasterGrid g;
  g.nCols = 2;
  g.nRows = 1;
  g.cellSize = 1.0;
  g.values = {1.0, 7.0};
  CHECK_THROWS_AS(StochasticNetworkModel(Rectangle(0, 2, 0, 1), IntensityField::raster(g),
                                         LinkProbability::constant(1.0), CapacityLaw::constant(1.0),
                                         std::nullopt, /*maxBound=*/3.0),
                  InvalidArgument);
  // Raster must cover the rectangle.
  CHECK_THROWS_AS(StochasticNetworkModel(Rectangle(0, 5, 0, 1), IntensityField::raster(g),
                                         LinkProbability::constant(1.0), CapacityLaw::constant(1.0)),
                  InvalidArgument);
}
