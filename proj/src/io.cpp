#include "geocut/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace geocut {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool parseDouble(const std::string& token, double& out) {
  std::size_t pos = 0;
  try {
    out = std::stod(token, &pos);
  } catch (...) {
    return false;
  }
  return pos == token.size();
}

std::string formatG17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

RasterFileData loadRasterFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open raster file: " + path);

  RasterFileData data;
  bool haveCols = false, haveRows = false, haveX = false, haveY = false, haveCell = false;
  bool inHeader = true;
  std::size_t expected = 0;

  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;

    const bool numeric = std::isdigit(static_cast<unsigned char>(first[0])) || first[0] == '-' ||
                         first[0] == '+' || first[0] == '.';
    if (inHeader && !numeric) {
      std::string value;
      if (!(ls >> value)) {
        throw ParseError(path + ":" + std::to_string(lineNo) + ": header key '" + first +
                         "' has no value");
      }
      double num = 0.0;
      if (!parseDouble(value, num)) {
        throw ParseError(path + ":" + std::to_string(lineNo) + ": bad header value '" + value +
                         "'");
      }
      const std::string k = lower(first);
      if (k == "ncols") {
        data.header.nCols = static_cast<int>(num);
        haveCols = true;
      } else if (k == "nrows") {
        data.header.nRows = static_cast<int>(num);
        haveRows = true;
      } else if (k == "xllcorner") {
        data.header.xllCorner = num;
        haveX = true;
      } else if (k == "yllcorner") {
        data.header.yllCorner = num;
        haveY = true;
      } else if (k == "cellsize") {
        data.header.cellSize = num;
        haveCell = true;
      } else if (k == "nodata_value") {
        data.header.noDataValue = num;
      } else {
        throw ParseError(path + ":" + std::to_string(lineNo) + ": unknown header key '" + first +
                         "'");
      }
      continue;
    }

    if (inHeader) {
      if (!(haveCols && haveRows && haveX && haveY && haveCell)) {
        throw ParseError(path + ": incomplete header (need ncols, nrows, xllcorner, yllcorner, "
                                "cellsize)");
      }
      if (data.header.nCols <= 0 || data.header.nRows <= 0 || !(data.header.cellSize > 0.0)) {
        throw ParseError(path + ": header dimensions must be positive");
      }
      expected = static_cast<std::size_t>(data.header.nCols) *
                 static_cast<std::size_t>(data.header.nRows);
      data.values.reserve(expected);
      inHeader = false;
    }

    // Body line: `first` is its leading token.
    int col = 0;
    std::string token = first;
    do {
      ++col;
      double v = 0.0;
      if (!parseDouble(token, v)) {
        throw ParseError(path + ":" + std::to_string(lineNo) + ":" + std::to_string(col) +
                         ": bad value '" + token + "'");
      }
      if (data.values.size() == expected) {
        throw ParseError(path + ":" + std::to_string(lineNo) + ":" + std::to_string(col) +
                         ": more values than ncols*nrows");
      }
      data.values.push_back(v);
    } while (ls >> token);
  }

  if (inHeader) {
    throw ParseError(path + ": no data rows found");
  }
  if (data.values.size() < expected) {
    throw MissingValues(path + ": expected " + std::to_string(expected) + " values, found " +
                        std::to_string(data.values.size()));
  }
  return data;
}

IntensityField loadRaster(const std::string& path) {
  RasterFileData data = loadRasterFile(path);

  RasterGrid grid;
  grid.nCols = data.header.nCols;
  grid.nRows = data.header.nRows;
  grid.cellSize = data.header.cellSize;
  grid.origin = Point{data.header.xllCorner, data.header.yllCorner};
  grid.values.resize(data.values.size());

  std::size_t noDataCount = 0;
  for (int fileRow = 0; fileRow < grid.nRows; ++fileRow) {
    const int row = grid.nRows - 1 - fileRow;  // file rows run north to south
    for (int col = 0; col < grid.nCols; ++col) {
      const double v =
          data.values[static_cast<std::size_t>(fileRow) * grid.nCols + static_cast<std::size_t>(col)];
      double cell = v;
      if (v == data.header.noDataValue) {
        cell = 0.0;
        ++noDataCount;
      } else if (v < 0.0) {
        throw NegativeIntensity(path + ": negative intensity " + formatG17(v) + " at file row " +
                                std::to_string(fileRow) + ", col " + std::to_string(col));
      }
      grid.values[static_cast<std::size_t>(row) * grid.nCols + static_cast<std::size_t>(col)] = cell;
    }
  }
  if (noDataCount > 0) {
    std::cerr << "warning: " << path << ": " << noDataCount
              << " no-data cells loaded as zero intensity\n";
  }
  return IntensityField::raster(std::move(grid));
}

void writeRasterAscii(const RasterGrid& grid, const std::string& path, double noDataValue) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "ncols " << grid.nCols << "\n";
  out << "nrows " << grid.nRows << "\n";
  out << "xllcorner " << formatG17(grid.origin.x) << "\n";
  out << "yllcorner " << formatG17(grid.origin.y) << "\n";
  out << "cellsize " << formatG17(grid.cellSize) << "\n";
  out << "NODATA_value " << formatG17(noDataValue) << "\n";
  for (int fileRow = 0; fileRow < grid.nRows; ++fileRow) {
    const int row = grid.nRows - 1 - fileRow;
    for (int col = 0; col < grid.nCols; ++col) {
      if (col) out << ' ';
      out << formatG17(grid.at(row, col));
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

IntensityField downsample(const IntensityField& field, int block) {
  if (field.kind() != IntensityField::Kind::Raster) {
    throw InvalidArgument("downsample applies to raster fields");
  }
  if (block < 1) throw InvalidArgument("downsample block must be >= 1");
  const RasterGrid& in = *field.rasterData();
  if (block == 1) return field;

  RasterGrid out;
  out.nCols = (in.nCols + block - 1) / block;
  out.nRows = (in.nRows + block - 1) / block;
  out.cellSize = in.cellSize * block;
  out.origin = in.origin;
  out.values.assign(static_cast<std::size_t>(out.nCols) * static_cast<std::size_t>(out.nRows), 0.0);

  for (int R = 0; R < out.nRows; ++R) {
    for (int C = 0; C < out.nCols; ++C) {
      double sum = 0.0;
      int count = 0;
      for (int r = R * block; r < std::min((R + 1) * block, in.nRows); ++r) {
        for (int c = C * block; c < std::min((C + 1) * block, in.nCols); ++c) {
          sum += in.at(r, c);
          ++count;
        }
      }
      out.values[static_cast<std::size_t>(R) * out.nCols + static_cast<std::size_t>(C)] =
          count ? sum / count : 0.0;
    }
  }
  return IntensityField::raster(std::move(out));
}

void exportMap(const SensitivityMap& map, const std::string& path, MapFormat format) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  const IntegrationGrid centers(map.recR, map.delta);
  if (format == MapFormat::Csv) {
    out << "x,y,tec\n";
    for (std::size_t i = 0; i < map.values.size(); ++i) {
      const Point p = centers.point(i);
      out << formatG17(p.x) << ',' << formatG17(p.y) << ',' << formatG17(map.values[i]) << '\n';
    }
  } else {
    out << "ncols " << map.nCols << "\n";
    out << "nrows " << map.nRows << "\n";
    out << "xllcorner " << formatG17(map.recR.xMin) << "\n";
    out << "yllcorner " << formatG17(map.recR.yMin) << "\n";
    out << "cellsize " << formatG17(map.delta) << "\n";
    out << "NODATA_value -9999\n";
    for (int fileRow = 0; fileRow < map.nRows; ++fileRow) {
      const int row = map.nRows - 1 - fileRow;
      for (int col = 0; col < map.nCols; ++col) {
        if (col) out << ' ';
        out << formatG17(map.valueAt(row, col));
      }
      out << '\n';
    }
  }
  if (!out) throw IoError("write failed: " + path);
}

MapCsv loadMapCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open map csv: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "x,y,tec") {
    throw ParseError(path + ":1: expected header 'x,y,tec'");
  }
  MapCsv map;
  int lineNo = 1;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string a, b, c;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c)) {
      throw ParseError(path + ":" + std::to_string(lineNo) + ": expected three comma-separated "
                       "fields");
    }
    double x, y, v;
    if (!parseDouble(a, x) || !parseDouble(b, y) || !parseDouble(c, v)) {
      throw ParseError(path + ":" + std::to_string(lineNo) + ": bad numeric field");
    }
    map.x.push_back(x);
    map.y.push_back(y);
    map.tec.push_back(v);
  }
  return map;
}

}  // namespace geocut
