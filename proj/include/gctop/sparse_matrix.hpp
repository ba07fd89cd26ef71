#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace gctop {

struct Triplet {
  int row = 0;
  int col = 0;
  std::int64_t value = 0;
  friend bool operator==(const Triplet&, const Triplet&) = default;
};

/// Integer sparse matrix in coordinate form. Entries are kept sorted by
/// (row, col), unique, and nonzero.
class SparseIntMatrix {
 public:
  SparseIntMatrix() = default;
  SparseIntMatrix(int rows, int cols) : rows_(rows), cols_(cols) {}

  // Validates ranges; sums duplicate coordinates and drops zeros.
  static SparseIntMatrix from_triplets(int rows, int cols,
                                       std::vector<Triplet> entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t nonzeros() const { return entries_.size(); }
  const std::vector<Triplet>& entries() const { return entries_; }

  SparseIntMatrix transposed() const;
  std::vector<std::vector<std::int64_t>> to_dense() const;

  friend bool operator==(const SparseIntMatrix&, const SparseIntMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Triplet> entries_;
};

/// Exact product a * b; throws IntegrityError on 64-bit overflow.
SparseIntMatrix multiply(const SparseIntMatrix& a, const SparseIntMatrix& b);

/// Matrix Market "coordinate integer general" with 1-based indices.
void write_matrix_market(std::ostream& out, const SparseIntMatrix& m);
/// Accepts "coordinate integer general" (and "pattern", read as 1s).
/// Throws ValidationError on malformed input.
SparseIntMatrix read_matrix_market(std::istream& in);

}  // namespace gctop
