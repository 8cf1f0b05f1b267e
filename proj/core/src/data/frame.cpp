#include "qadv/data/frame.hpp"

namespace qadv::data {

Matrix select_rows(const Matrix& m, const std::vector<Index>& rows) {
  Matrix out(static_cast<Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Index>(i)) = m.row(rows[i]);
  return out;
}

Vector select_rows(const Vector& v, const std::vector<Index>& rows) {
  Vector out(static_cast<Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) out(static_cast<Index>(i)) = v(rows[i]);
  return out;
}

Dataset select_rows(const Dataset& ds, const std::vector<Index>& rows) {
  Dataset out;
  out.features.column_names = ds.features.column_names;
  out.features.values = select_rows(ds.features.values, rows);
  out.target.values = select_rows(ds.target.values, rows);
  out.target.raw_min = ds.target.raw_min;
  out.target.raw_max = ds.target.raw_max;
  return out;
}

}  // namespace qadv::data
