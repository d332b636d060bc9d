#include "p1nc/sparse_matrix.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "p1nc/common.hpp"

namespace p1nc {

SparseSpdMatrix SparseSpdMatrix::from_rows(std::vector<std::vector<Entry>> rows) {
  SparseSpdMatrix m;
  const int n = static_cast<int>(rows.size());
  m.row_ptr_.assign(1, 0);
  m.row_ptr_.reserve(n + 1);
  for (auto& row : rows) {
    std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (row[k].col < 0 || row[k].col >= n) {
        throw InvalidArgument("column index " + std::to_string(row[k].col) + " out of range");
      }
      if (k > 0 && row[k].col == m.cols_.back() &&
          static_cast<int>(m.cols_.size()) > m.row_ptr_.back()) {
        m.values_.back() += row[k].value;
        continue;
      }
      m.cols_.push_back(row[k].col);
      m.values_.push_back(row[k].value);
    }
    m.row_ptr_.push_back(static_cast<int>(m.cols_.size()));
  }
  return m;
}

double SparseSpdMatrix::operator()(int r, int c) const {
  const auto cols = row_cols(r);
  const auto it = std::lower_bound(cols.begin(), cols.end(), c);
  if (it == cols.end() || *it != c) return 0.0;
  return row_values(r)[static_cast<std::size_t>(it - cols.begin())];
}

void SparseSpdMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  const int n = dim();
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n) {
    throw InvalidArgument("matrix-vector product with mismatched sizes");
  }
  for (int r = 0; r < n; ++r) {
    double sum = 0.0;
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) sum += values_[k] * x[cols_[k]];
    y[r] = sum;
  }
}

std::vector<double> SparseSpdMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(static_cast<std::size_t>(dim()));
  multiply(x, y);
  return y;
}

std::vector<double> SparseSpdMatrix::diagonal() const {
  std::vector<double> d(static_cast<std::size_t>(dim()));
  for (int r = 0; r < dim(); ++r) d[r] = (*this)(r, r);
  return d;
}

bool SparseSpdMatrix::is_symmetric() const {
  for (int r = 0; r < dim(); ++r) {
    const auto cols = row_cols(r);
    const auto vals = row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const auto partner = row_cols(cols[k]);
      if (!std::binary_search(partner.begin(), partner.end(), r)) return false;
      if ((*this)(cols[k], r) != vals[k]) return false;
    }
  }
  return true;
}

void write_matrix(std::ostream& out, const SparseSpdMatrix& matrix) {
  char buffer[96];
  for (int r = 0; r < matrix.dim(); ++r) {
    const auto cols = matrix.row_cols(r);
    const auto vals = matrix.row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      std::snprintf(buffer, sizeof buffer, "%d %d %.17g\n", r, cols[k], vals[k]);
      out << buffer;
    }
  }
}

}  // namespace p1nc
