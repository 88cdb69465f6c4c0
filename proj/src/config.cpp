#include "geocut/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "geocut/io.hpp"

namespace geocut {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parseNumber(const std::string& path, int lineNo, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (...) {
    pos = 0;
  }
  if (pos != value.size() || value.empty()) {
    throw ParseError(path + ":" + std::to_string(lineNo) + ": expected a number, got '" + value +
                     "'");
  }
  return v;
}

}  // namespace

ModelConfig loadModelConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);

  ModelConfig cfg;
  cfg.baseDir = std::filesystem::path(path).parent_path().string();

  std::string section;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ParseError(path + ":" + std::to_string(lineNo) + ": unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(path + ":" + std::to_string(lineNo) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    auto num = [&] { return parseNumber(path, lineNo, value); };

    if (section == "rec") {
      if (key == "xmin") cfg.recXMin = num();
      else if (key == "xmax") cfg.recXMax = num();
      else if (key == "ymin") cfg.recYMin = num();
      else if (key == "ymax") cfg.recYMax = num();
      else throw ParseError(path + ":" + std::to_string(lineNo) + ": unknown [rec] key '" + key + "'");
    } else if (section == "intensity") {
      if (key == "kind") cfg.intensityKind = value;
      else if (key == "lambda") cfg.lambda = num();
      else if (key == "background") cfg.background = num();
      else if (key == "path") cfg.rasterPath = value;
      else if (key == "downsampleBlock") cfg.downsampleBlock = static_cast<int>(num());
      else if (key == "hotspot") {
        std::istringstream hs(value);
        GaussianHotspot h;
        if (!(hs >> h.center.x >> h.center.y >> h.sigma >> h.amplitude)) {
          throw ParseError(path + ":" + std::to_string(lineNo) +
                           ": hotspot needs 'x y sigma amplitude'");
        }
        cfg.hotspots.push_back(h);
      } else {
        throw ParseError(path + ":" + std::to_string(lineNo) + ": unknown [intensity] key '" + key +
                         "'");
      }
    } else if (section == "link") {
      if (key == "kind") cfg.linkKind = value;
      else if (key == "kappa") cfg.kappa = num();
      else if (key == "d0") cfg.d0 = num();
      else if (key == "p") cfg.linkP = num();
      else throw ParseError(path + ":" + std::to_string(lineNo) + ": unknown [link] key '" + key + "'");
    } else if (section == "capacity") {
      if (key == "kind") cfg.capacityKind = value;
      else if (key == "c0") cfg.c0 = num();
      else if (key == "maxCapacity") cfg.maxCapacity = num();
      else throw ParseError(path + ":" + std::to_string(lineNo) + ": unknown [capacity] key '" + key +
                            "'");
    } else if (section == "bounds") {
      if (key == "M") cfg.variationBound = num();
      else if (key == "T") cfg.maxBound = num();
      else throw ParseError(path + ":" + std::to_string(lineNo) + ": unknown [bounds] key '" + key +
                            "'");
    } else {
      throw ParseError(path + ":" + std::to_string(lineNo) + ": unknown section '" + section + "'");
    }
  }
  if (cfg.intensityKind.empty()) {
    throw ParseError(path + ": [intensity] kind is required");
  }
  return cfg;
}

StochasticNetworkModel buildModel(const ModelConfig& cfg) {
  IntensityField intensity = IntensityField::homogeneous(0.0);
  if (cfg.intensityKind == "homogeneous") {
    intensity = IntensityField::homogeneous(cfg.lambda);
  } else if (cfg.intensityKind == "gaussianMixture") {
    intensity = IntensityField::gaussianMixture(cfg.hotspots, cfg.background);
  } else if (cfg.intensityKind == "raster") {
    if (cfg.rasterPath.empty()) throw ParseError("raster intensity needs a path");
    std::filesystem::path p(cfg.rasterPath);
    if (p.is_relative() && !cfg.baseDir.empty()) p = std::filesystem::path(cfg.baseDir) / p;
    intensity = loadRaster(p.string());
    if (cfg.downsampleBlock > 1) intensity = downsample(intensity, cfg.downsampleBlock);
  } else {
    throw ParseError("unknown intensity kind '" + cfg.intensityKind + "'");
  }

  std::optional<Rectangle> rec;
  if (cfg.recXMin && cfg.recXMax && cfg.recYMin && cfg.recYMax) {
    rec = Rectangle(*cfg.recXMin, *cfg.recXMax, *cfg.recYMin, *cfg.recYMax);
  } else if (cfg.recXMin || cfg.recXMax || cfg.recYMin || cfg.recYMax) {
    throw ParseError("[rec] needs all of xmin, xmax, ymin, ymax");
  } else if (intensity.kind() == IntensityField::Kind::Raster) {
    rec = intensity.rasterData()->extent();
  } else {
    throw ParseError("[rec] bounds are required for analytic intensities");
  }

  LinkProbability link = LinkProbability::constant(1.0);
  if (cfg.linkKind == "inverseDistance") {
    link = LinkProbability::inverseDistance(cfg.kappa, cfg.d0);
  } else if (cfg.linkKind == "constant") {
    link = LinkProbability::constant(cfg.linkP);
  } else {
    throw ParseError("unknown link kind '" + cfg.linkKind + "'");
  }

  if (cfg.capacityKind != "constant") {
    throw ParseError("unknown capacity kind '" + cfg.capacityKind +
                     "' (custom laws are in-process API only)");
  }
  if (cfg.maxCapacity && *cfg.maxCapacity != cfg.c0) {
    throw ParseError("constant capacity requires maxCapacity == c0");
  }
  CapacityLaw capacity = CapacityLaw::constant(cfg.c0);

  return StochasticNetworkModel(*rec, std::move(intensity), std::move(link), std::move(capacity),
                                cfg.variationBound, cfg.maxBound);
}

}  // namespace geocut
