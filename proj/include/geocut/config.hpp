#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geocut/model.hpp"

namespace geocut {

/// Parsed model configuration: a flat key-value file with [section] headers.
/// Sections: [rec] (optional for raster intensities, defaults to the raster
/// extent), [intensity], [link], [capacity], [bounds] (optional M, T).
struct ModelConfig {
  std::optional<double> recXMin, recXMax, recYMin, recYMax;

  std::string intensityKind;  // homogeneous | gaussianMixture | raster
  double lambda = 0.0;
  double background = 0.0;
  std::vector<GaussianHotspot> hotspots;
  std::string rasterPath;
  int downsampleBlock = 1;

  std::string linkKind = "constant";  // inverseDistance | constant
  double kappa = 1.0;
  double d0 = 0.0;
  double linkP = 1.0;

  std::string capacityKind = "constant";
  double c0 = 1.0;
  std::optional<double> maxCapacity;

  std::optional<double> variationBound;  // M
  std::optional<double> maxBound;        // T

  std::string baseDir;  // directory of the config file, for relative paths
};

ModelConfig loadModelConfig(const std::string& path);

/// Resolves raster loads and downsampling and builds the model.
StochasticNetworkModel buildModel(const ModelConfig& config);

}  // namespace geocut
