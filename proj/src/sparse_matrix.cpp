#include "gctop/sparse_matrix.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>

#include "gctop/errors.hpp"

namespace gctop {

SparseIntMatrix SparseIntMatrix::from_triplets(int rows, int cols,
                                               std::vector<Triplet> entries) {
  if (rows < 0 || cols < 0) throw InvalidArgument("negative matrix dimension");
  for (const auto& t : entries) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
      throw InvalidArgument("matrix entry out of range");
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return std::tie(a.row, a.col) < std::tie(b.row, b.col);
  });
  SparseIntMatrix m(rows, cols);
  for (const auto& t : entries) {
    if (!m.entries_.empty() && m.entries_.back().row == t.row &&
        m.entries_.back().col == t.col) {
      m.entries_.back().value += t.value;
    } else {
      m.entries_.push_back(t);
    }
  }
  std::erase_if(m.entries_, [](const Triplet& t) { return t.value == 0; });
  return m;
}

SparseIntMatrix SparseIntMatrix::transposed() const {
  std::vector<Triplet> t;
  t.reserve(entries_.size());
  for (const auto& e : entries_) t.push_back({e.col, e.row, e.value});
  return from_triplets(cols_, rows_, std::move(t));
}

std::vector<std::vector<std::int64_t>> SparseIntMatrix::to_dense() const {
  std::vector<std::vector<std::int64_t>> d(rows_, std::vector<std::int64_t>(cols_, 0));
  for (const auto& e : entries_) d[e.row][e.col] = e.value;
  return d;
}

SparseIntMatrix multiply(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("dimension mismatch in multiply");
  std::vector<std::vector<const Triplet*>> b_rows(b.rows());
  for (const auto& e : b.entries()) b_rows[e.row].push_back(&e);
  std::map<std::pair<int, int>, std::int64_t> acc;
  for (const auto& x : a.entries()) {
    for (const Triplet* y : b_rows[x.col]) {
      std::int64_t prod = 0;
      auto& slot = acc[{x.row, y->col}];
      if (__builtin_mul_overflow(x.value, y->value, &prod) ||
          __builtin_add_overflow(slot, prod, &slot)) {
        throw IntegrityError("integer overflow in sparse multiply");
      }
    }
  }
  std::vector<Triplet> t;
  for (const auto& [rc, v] : acc) t.push_back({rc.first, rc.second, v});
  return SparseIntMatrix::from_triplets(a.rows(), b.cols(), std::move(t));
}

void write_matrix_market(std::ostream& out, const SparseIntMatrix& m) {
  out << "%%MatrixMarket matrix coordinate integer general\n";
  out << m.rows() << ' ' << m.cols() << ' ' << m.nonzeros() << '\n';
  for (const auto& e : m.entries()) {
    out << e.row + 1 << ' ' << e.col + 1 << ' ' << e.value << '\n';
  }
}

SparseIntMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty Matrix Market input");
  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  auto lower = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
  };
  if (tag != "%%MatrixMarket" || lower(object) != "matrix" ||
      lower(format) != "coordinate") {
    throw ValidationError("expected a Matrix Market coordinate banner");
  }
  field = lower(field);
  if (field != "integer" && field != "pattern") {
    throw ValidationError("unsupported Matrix Market field '" + field + "'");
  }
  if (lower(symmetry) != "general") {
    throw ValidationError("only general symmetry is supported");
  }
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::istringstream size_line(line);
  long rows = -1, cols = -1, nnz = -1;
  if (!(size_line >> rows >> cols >> nnz) || rows < 0 || cols < 0 || nnz < 0) {
    throw ValidationError("bad Matrix Market size line");
  }
  std::vector<Triplet> entries;
  entries.reserve(nnz);
  for (long k = 0; k < nnz; ++k) {
    if (!std::getline(in, line)) throw ValidationError("Matrix Market data truncated");
    if (line.empty() || line[0] == '%') {
      --k;
      continue;
    }
    std::istringstream row(line);
    long i = 0, j = 0;
    std::int64_t v = 1;
    if (!(row >> i >> j) || (field == "integer" && !(row >> v))) {
      throw ValidationError("bad Matrix Market entry line");
    }
    if (i < 1 || i > rows || j < 1 || j > cols) {
      throw ValidationError("Matrix Market entry out of range");
    }
    entries.push_back({static_cast<int>(i - 1), static_cast<int>(j - 1), v});
  }
  return SparseIntMatrix::from_triplets(static_cast<int>(rows),
                                        static_cast<int>(cols), std::move(entries));
}

}  // namespace gctop
