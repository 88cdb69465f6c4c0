#pragma once

#include <string>
#include <vector>

#include "geocut/model.hpp"
#include "geocut/planner.hpp"

namespace geocut {

/// Six-line ASCII grid header (the de-facto GIS convention): ncols, nrows,
/// xllcorner, yllcorner, cellsize, NODATA_value.
struct RasterFileHeader {
  int nCols = 0;
  int nRows = 0;
  double xllCorner = 0.0;
  double yllCorner = 0.0;
  double cellSize = 1.0;
  double noDataValue = -9999.0;
};

/// Raw parse of an ASCII grid: header plus values in file order (first data
/// row is the northernmost). No intensity semantics applied.
struct RasterFileData {
  RasterFileHeader header;
  std::vector<double> values;
};

RasterFileData loadRasterFile(const std::string& path);

/// Loads an ASCII grid as an intensity field: no-data cells map to zero
/// (warned once on stderr), other negative values are a hard error.
IntensityField loadRaster(const std::string& path);

/// Writes a raster in the same six-line header convention, values with 17
/// significant digits so a reload is bit-exact.
void writeRasterAscii(const RasterGrid& grid, const std::string& path,
                      double noDataValue = -9999.0);

/// Block-mean downsampling: each output cell is the arithmetic mean of its
/// block (partial edge blocks average over the cells present). Output cell
/// size is block times the input cell size. Raster fields only.
IntensityField downsample(const IntensityField& field, int block);

enum class MapFormat { Csv, RasterAscii };

/// csv: header row `x,y,tec`, one row per grid center, 17 significant
/// digits. rasterAscii: six-line grid header with the TEC values.
void exportMap(const SensitivityMap& map, const std::string& path, MapFormat format);

struct MapCsv {
  std::vector<double> x, y, tec;
};

MapCsv loadMapCsv(const std::string& path);

}  // namespace geocut
