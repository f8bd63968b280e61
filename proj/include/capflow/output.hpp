#pragma once

#include <fstream>
#include <string>

#include "capflow/integrals.hpp"

namespace capflow {

// Time-series writer.  Schema capflow.timeseries.v1: one header row, then
// one row per record, %.17g doubles, so identical runs produce identical
// bytes.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  void write(const QuermassRecord& record);

  static std::string header();
  static std::string format_row(const QuermassRecord& record);

 private:
  std::ofstream out_;
};

// Wavefront OBJ export of the surface (n = 2 only).  Full 2D grids write
// the grid vertices directly; axisymmetric profiles are revolved with
// `sectors` azimuthal samples.  Quads are split into triangles.
void write_obj(const std::string& path, const Grid& grid,
               const RadialField& field, int sectors);

}  // namespace capflow
