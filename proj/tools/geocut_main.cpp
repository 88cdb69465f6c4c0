#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "geocut/config.hpp"
#include "geocut/integrator.hpp"
#include "geocut/io.hpp"
#include "geocut/oracle.hpp"
#include "geocut/planner.hpp"
#include "geocut/rng.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;
constexpr int kExitIo = 4;

struct CommonArgs {
  std::string configPath;
  double radius = 1.0;
  double eps = 0.0;
  double delta = 0.0;
  int threads = 0;
};

geocut::AccuracyBudget makeBudget(const CommonArgs& args) {
  geocut::AccuracyBudget budget;
  budget.additiveEps = args.eps;
  budget.deltaOverride = args.delta;
  return budget;
}

void reportDelta(const geocut::StochasticNetworkModel& model, double radius,
                 const geocut::AccuracyBudget& budget, double delta) {
  const auto k = geocut::resolveConstants(model.rec(), radius, budget, model);
  if (budget.deltaOverride > 0.0) {
    std::fprintf(stderr, "delta override %.6g -> implied additive eps = %.6g\n", delta,
                 geocut::impliedEpsilon(delta, k.c0));
  } else {
    std::fprintf(stderr, "selected delta %.6g for additive eps = %.6g (c0 = %.6g)\n", delta,
                 budget.additiveEps, k.c0);
  }
}

int runEdcc(const CommonArgs& args, double cx, double cy) {
  const geocut::StochasticNetworkModel model =
      geocut::buildModel(geocut::loadModelConfig(args.configPath));
  const geocut::CircularCut cut({cx, cy}, args.radius);
  geocut::EdccOptions options;
  options.threads = args.threads;
  const geocut::DamageBreakdown d = geocut::edcc(model, cut, makeBudget(args), options);
  reportDelta(model, args.radius, makeBudget(args), d.delta);
  std::printf("alpha %.17g\n", d.alpha);
  std::printf("beta %.17g\n", d.beta);
  std::printf("gamma %.17g\n", d.gamma);
  std::printf("total %.17g\n", d.total);
  std::printf("delta %.17g\n", d.delta);
  return kExitOk;
}

int runFsl(const CommonArgs& args, const std::string& outPath, const std::string& format) {
  const geocut::StochasticNetworkModel model =
      geocut::buildModel(geocut::loadModelConfig(args.configPath));
  geocut::FslOptions options;
  options.threads = args.threads;
  const geocut::SensitivityMap map = geocut::fsl(model, args.radius, makeBudget(args), options);
  reportDelta(model, args.radius, makeBudget(args), map.delta);
  geocut::exportMap(map, outPath,
                    format == "rasterAscii" ? geocut::MapFormat::RasterAscii
                                            : geocut::MapFormat::Csv);
  const auto [cut, value] = geocut::worstCut(map);
  std::printf("worst cut center (%.17g, %.17g) radius %.17g\n", cut.center.x, cut.center.y,
              cut.radius);
  std::printf("worst cut tec %.17g\n", value);
  std::printf("map %dx%d delta %.17g -> %s\n", map.nRows, map.nCols, map.delta, outPath.c_str());
  return kExitOk;
}

int runRcce(const CommonArgs& args, const std::string& psiPath, bool normalizeOverRec) {
  const geocut::StochasticNetworkModel model =
      geocut::buildModel(geocut::loadModelConfig(args.configPath));
  geocut::AttackDistribution dist = geocut::AttackDistribution::uniform();
  if (!psiPath.empty()) {
    geocut::IntensityField psi = geocut::loadRaster(psiPath);
    dist = geocut::AttackDistribution::density(std::move(psi),
                                               /*variationBound=*/0.0);
  }
  geocut::RcceOptions options;
  options.threads = args.threads;
  options.normalizeOverRec = normalizeOverRec;
  const double expected = geocut::rcce(model, args.radius, makeBudget(args), dist, options);
  std::printf("expected random-cut tec %.17g\n", expected);
  return kExitOk;
}

int runSample(const CommonArgs& args, double cx, double cy, std::size_t n, std::uint64_t seed,
              const std::string& outPath) {
  const geocut::StochasticNetworkModel model =
      geocut::buildModel(geocut::loadModelConfig(args.configPath));
  const geocut::CircularCut cut({cx, cy}, args.radius);

  std::ofstream out(outPath);
  if (!out) throw geocut::IoError("cannot open for writing: " + outPath);
  out << "sample,alpha,beta,gamma,total,nodes,links\n";
  for (std::size_t s = 0; s < n; ++s) {
    const geocut::ConcreteNetwork net =
        geocut::sampleNetwork(model, geocut::CounterRng::substreamSeed(seed, s));
    double alpha = 0.0, beta = 0.0, gamma = 0.0;
    for (const auto& link : net.links) {
      switch (geocut::classifyLink(net.nodes[link.a], net.nodes[link.b], cut)) {
        case geocut::LinkClass::Alpha: alpha += link.capacity; break;
        case geocut::LinkClass::Beta: beta += link.capacity; break;
        case geocut::LinkClass::Gamma: gamma += link.capacity; break;
        case geocut::LinkClass::Untouched: break;
      }
    }
    char line[256];
    std::snprintf(line, sizeof(line), "%zu,%.17g,%.17g,%.17g,%.17g,%zu,%zu\n", s, alpha, beta,
                  gamma, alpha + beta + gamma, net.nodes.size(), net.links.size());
    out << line;
  }
  if (!out) throw geocut::IoError("write failed: " + outPath);

  const geocut::McEstimate est = geocut::empiricalTec(model, cut, n, seed, args.threads);
  std::printf("mean %.17g\n", est.mean);
  std::printf("stdError %.17g\n", est.stdError);
  std::printf("perType alpha %.17g beta %.17g gamma %.17g\n", est.alphaMean, est.betaMean,
              est.gammaMean);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vulnerability assessment of stochastic spatial networks under circular cuts"};
  app.require_subcommand(1);

  CommonArgs common;

  auto addCommon = [&common](CLI::App* cmd, bool needsEps) {
    cmd->add_option("--config", common.configPath, "model config file")->required();
    cmd->add_option("--radius", common.radius, "cut radius in model units")->required();
    auto* eps = cmd->add_option("--eps", common.eps, "additive accuracy target");
    cmd->add_option("--delta", common.delta, "grid constant override (implied eps reported)");
    cmd->add_option("--threads", common.threads, "worker threads (0 = auto)");
    if (needsEps) eps->required();
  };

  double cx = 0.0, cy = 0.0;
  std::string outPath, format = "csv", psiPath;
  bool normalizeOverRec = false;
  std::size_t nSamples = 1000;
  std::uint64_t seed = 1;

  CLI::App* edccCmd = app.add_subcommand("edcc", "expected damage of one cut");
  addCommon(edccCmd, false);
  edccCmd->add_option("--cx", cx, "cut center x")->required();
  edccCmd->add_option("--cy", cy, "cut center y")->required();

  CLI::App* fslCmd = app.add_subcommand("fsl", "sensitivity map and worst cut");
  addCommon(fslCmd, false);
  fslCmd->add_option("--out", outPath, "output map path")->required();
  fslCmd->add_option("--format", format, "csv | rasterAscii");

  CLI::App* rcceCmd = app.add_subcommand("rcce", "expected damage of a random cut");
  addCommon(rcceCmd, false);
  rcceCmd->add_option("--psi", psiPath, "attack density raster (default: uniform)");
  rcceCmd->add_flag("--normalize-over-rec", normalizeOverRec,
                    "normalize the uniform expectation by |Rec| instead of |Rec_r|");

  CLI::App* sampleCmd = app.add_subcommand("sample", "Monte-Carlo per-sample records");
  addCommon(sampleCmd, false);
  sampleCmd->add_option("--cx", cx, "cut center x")->required();
  sampleCmd->add_option("--cy", cy, "cut center y")->required();
  sampleCmd->add_option("--n", nSamples, "number of samples")->required();
  sampleCmd->add_option("--seed", seed, "base seed");
  sampleCmd->add_option("--out", outPath, "per-sample csv path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (app.got_subcommand(edccCmd)) {
      if (common.eps <= 0.0 && common.delta <= 0.0) {
        std::fprintf(stderr, "error: need --eps or --delta\n");
        return kExitConfig;
      }
      return runEdcc(common, cx, cy);
    }
    if (app.got_subcommand(fslCmd)) {
      if (common.eps <= 0.0 && common.delta <= 0.0) {
        std::fprintf(stderr, "error: need --eps or --delta\n");
        return kExitConfig;
      }
      if (format != "csv" && format != "rasterAscii") {
        std::fprintf(stderr, "error: --format must be csv or rasterAscii\n");
        return kExitConfig;
      }
      return runFsl(common, outPath, format);
    }
    if (app.got_subcommand(rcceCmd)) {
      if (common.eps <= 0.0 && common.delta <= 0.0) {
        std::fprintf(stderr, "error: need --eps or --delta\n");
        return kExitConfig;
      }
      return runRcce(common, psiPath, normalizeOverRec);
    }
    if (app.got_subcommand(sampleCmd)) {
      return runSample(common, cx, cy, nSamples, seed, outPath);
    }
  } catch (const geocut::InfeasibleBudget& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBudget;
  } catch (const geocut::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const geocut::GeocutError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return kExitOk;
}
