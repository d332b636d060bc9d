#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace p1nc {

/// Symmetric positive-definite matrix in compressed sparse row form.
/// Column indices within a row are strictly increasing.
class SparseSpdMatrix {
 public:
  struct Entry {
    int col;
    double value;
  };

  SparseSpdMatrix() = default;

  /// Builds from per-row entry lists; entries are sorted and duplicate
  /// columns summed.
  static SparseSpdMatrix from_rows(std::vector<std::vector<Entry>> rows);

  int dim() const noexcept { return static_cast<int>(row_ptr_.size()) - 1; }
  std::size_t nonzeros() const noexcept { return values_.size(); }

  std::span<const int> row_cols(int r) const noexcept {
    return {cols_.data() + row_ptr_[r], static_cast<std::size_t>(row_ptr_[r + 1] - row_ptr_[r])};
  }
  std::span<const double> row_values(int r) const noexcept {
    return {values_.data() + row_ptr_[r],
            static_cast<std::size_t>(row_ptr_[r + 1] - row_ptr_[r])};
  }

  /// Stored value or 0.
  double operator()(int r, int c) const;

  /// y = A x, rows summed in column order.
  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> multiply(std::span<const double> x) const;

  std::vector<double> diagonal() const;

  /// Every stored value equals its transpose partner exactly.
  bool is_symmetric() const;

 private:
  std::vector<int> row_ptr_{0};
  std::vector<int> cols_;
  std::vector<double> values_;
};

/// "row col value" per stored entry, 0-based, row-major.
void write_matrix(std::ostream& out, const SparseSpdMatrix& matrix);

}  // namespace p1nc
