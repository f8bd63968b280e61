#include "capflow/output.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace capflow {

namespace {

void append_double(std::string& row, double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  row += buf;
}

}  // namespace

CsvWriter::CsvWriter(const std::string& path) : out_(path) {
  if (!out_) throw std::runtime_error("cannot open CSV for writing: " + path);
  out_ << header() << "\n";
}

std::string CsvWriter::header() {
  return "t,dt,V1,V2,area,wetted_area,contact_length,total_H,deficit,"
         "deficit_norm,min_ubar,max_H,min_P,gauge_min,gauge_max,sup_G";
}

std::string CsvWriter::format_row(const QuermassRecord& r) {
  std::string row;
  row.reserve(16 * 26);
  const double values[] = {r.t,         r.dt,           r.V1,
                           r.V2,        r.area,         r.wetted_area,
                           r.contact_length, r.total_H, r.deficit,
                           r.deficit_norm,   r.min_ubar, r.max_H,
                           r.min_P,     r.gauge_min,    r.gauge_max,
                           r.sup_G};
  bool first = true;
  for (double v : values) {
    if (!first) row += ',';
    append_double(row, v);
    first = false;
  }
  return row;
}

void CsvWriter::write(const QuermassRecord& record) {
  out_ << format_row(record) << "\n";
  if (!out_) throw std::runtime_error("CSV write failed");
}

void write_obj(const std::string& path, const Grid& grid,
               const RadialField& field, int sectors) {
  if (grid.n() != 2) {
    throw std::invalid_argument("mesh export is defined for n = 2 only");
  }
  require_matching(grid, field);
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (f == nullptr) throw std::runtime_error("cannot open mesh file: " + path);

  const int nb = grid.n_beta();
  const int nxi = grid.axisymmetric() ? sectors : grid.n_xi();
  if (nxi < 3) {
    std::fclose(f);
    throw std::invalid_argument("mesh needs at least 3 azimuthal sectors");
  }
  const double dxi = 2.0 * kPi / nxi;

  for (int i = 0; i < nb; ++i) {
    const double sb = grid.sin_beta(i);
    const double cb = grid.cos_beta(i);
    for (int j = 0; j < nxi; ++j) {
      const double rho =
          grid.axisymmetric()
              ? std::exp(field.phi[i])
              : std::exp(field.phi[grid.index(i, j)]);
      const double xi = j * dxi;
      std::fprintf(f, "v %.9g %.9g %.9g\n", rho * sb * std::cos(xi),
                   rho * sb * std::sin(xi), rho * cb);
    }
  }
  // 1-indexed vertex ids; xi wraps, beta does not.
  for (int i = 0; i + 1 < nb; ++i) {
    for (int j = 0; j < nxi; ++j) {
      const int jn = (j + 1) % nxi;
      const int a = i * nxi + j + 1;
      const int b = (i + 1) * nxi + j + 1;
      const int c = (i + 1) * nxi + jn + 1;
      const int d = i * nxi + jn + 1;
      std::fprintf(f, "f %d %d %d\n", a, b, c);
      std::fprintf(f, "f %d %d %d\n", a, c, d);
    }
  }
  std::fclose(f);
}

}  // namespace capflow
