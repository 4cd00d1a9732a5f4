#include "cdc/matrix.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <sstream>

namespace cdc {

namespace {

void require_same_field(const Matrix& a, const Matrix& b) {
  if (!(a.field() == b.field())) throw ParameterError("matrices are over different fields");
}

}  // namespace

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<Repr> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw ParameterError("matrix entry count does not match shape");
  }
  for (Repr v : entries_) {
    if (!field_.contains(v)) throw ParameterError("matrix entry outside field");
  }
}

Matrix Matrix::identity(Field field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = 1;
  return m;
}

void Matrix::set(std::size_t r, std::size_t c, Repr v) {
  if (!field_.contains(v)) throw ParameterError("matrix entry outside field");
  entries_[r * cols_ + c] = v;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.entries_[c * rows_ + r] = entries_[r * cols_ + c];
  }
  return t;
}

Matrix Matrix::block(std::size_t row0, std::size_t col0, std::size_t nrows,
                     std::size_t ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_) throw ParameterError("block out of range");
  Matrix b(field_, nrows, ncols);
  for (std::size_t r = 0; r < nrows; ++r) {
    std::copy_n(entries_.begin() + static_cast<std::ptrdiff_t>((row0 + r) * cols_ + col0), ncols,
                b.entries_.begin() + static_cast<std::ptrdiff_t>(r * ncols));
  }
  return b;
}

bool Matrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](Repr v) { return v == 0; });
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_ &&
         a.field_ == b.field_;
}

bool operator<(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
  if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
  return a.entries_ < b.entries_;
}

RrefResult rref(const Matrix& m) {
  const Field& f = m.field();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<Field::Repr> e(m.entries().begin(), m.entries().end());
  std::vector<std::size_t> pivots;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    std::size_t found = pivot_row;
    while (found < rows && e[found * cols + c] == 0) ++found;
    if (found == rows) continue;
    if (found != pivot_row) {
      std::swap_ranges(e.begin() + static_cast<std::ptrdiff_t>(found * cols),
                       e.begin() + static_cast<std::ptrdiff_t>((found + 1) * cols),
                       e.begin() + static_cast<std::ptrdiff_t>(pivot_row * cols));
    }
    Field::Repr* prow = &e[pivot_row * cols];
    const Field::Repr scale = f.inv(prow[c]);
    if (scale != 1) {
      for (std::size_t j = c; j < cols; ++j) prow[j] = f.mul(prow[j], scale);
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pivot_row) continue;
      Field::Repr* row = &e[r * cols];
      const Field::Repr factor = row[c];
      if (factor == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        if (prow[j] != 0) row[j] = f.sub(row[j], f.mul(factor, prow[j]));
      }
    }
    pivots.push_back(c);
    ++pivot_row;
  }
  const std::size_t r = pivots.size();
  return RrefResult{Matrix(f, rows, cols, std::move(e)), r, std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

Matrix hconcat(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows()) throw ParameterError("hconcat needs equal row counts");
  std::vector<Field::Repr> e;
  e.reserve(a.rows() * (a.cols() + b.cols()));
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto ra = a.row(r);
    auto rb = b.row(r);
    e.insert(e.end(), ra.begin(), ra.end());
    e.insert(e.end(), rb.begin(), rb.end());
  }
  return Matrix(a.field(), a.rows(), a.cols() + b.cols(), std::move(e));
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.cols() != b.cols()) throw ParameterError("vstack needs equal column counts");
  std::vector<Field::Repr> e(a.entries().begin(), a.entries().end());
  e.insert(e.end(), b.entries().begin(), b.entries().end());
  return Matrix(a.field(), a.rows() + b.rows(), a.cols(), std::move(e));
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ParameterError("shape mismatch");
  std::vector<Field::Repr> e(a.entries().size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.field().add(a.entries()[i], b.entries()[i]);
  return Matrix(a.field(), a.rows(), a.cols(), std::move(e));
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ParameterError("shape mismatch");
  std::vector<Field::Repr> e(a.entries().size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.field().sub(a.entries()[i], b.entries()[i]);
  return Matrix(a.field(), a.rows(), a.cols(), std::move(e));
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.cols() != b.rows()) throw ParameterError("matmul shape mismatch");
  const Field& f = a.field();
  std::vector<Field::Repr> e(a.rows() * b.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Field::Repr x = a.at(i, l);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Field::Repr y = b.at(l, j);
        if (y != 0) e[i * b.cols() + j] = f.add(e[i * b.cols() + j], f.mul(x, y));
      }
    }
  }
  return Matrix(f, a.rows(), b.cols(), std::move(e));
}

std::size_t gf2_rank(std::span<std::uint64_t> rows) {
  std::size_t rank = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::uint64_t pivot = rows[i];
    if (pivot == 0) continue;
    ++rank;
    const std::uint64_t low = pivot & (~pivot + 1);
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (rows[j] & low) rows[j] ^= pivot;
    }
  }
  return rank;
}

std::vector<std::uint64_t> gf2_pack(const Matrix& m) {
  if (m.field().order() != 2) throw ParameterError("gf2_pack needs a GF(2) matrix");
  if (m.cols() > 64) throw ParameterError("gf2_pack supports at most 64 columns");
  std::vector<std::uint64_t> out(m.rows(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m.at(r, c)) out[r] |= std::uint64_t{1} << c;
    }
  }
  return out;
}

std::string to_text(const Matrix& m) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += ' ';
      out += std::to_string(m.at(r, c));
    }
    out += '\n';
  }
  return out;
}

Matrix parse_matrix(const Field& field, std::span<const std::string> lines, std::size_t cols) {
  std::vector<Field::Repr> e;
  e.reserve(lines.size() * cols);
  for (std::size_t r = 0; r < lines.size(); ++r) {
    std::istringstream is(lines[r]);
    std::string token;
    std::size_t count = 0;
    while (is >> token) {
      Field::Repr v = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParameterError("row " + std::to_string(r) + ": bad entry '" + token + "'");
      }
      if (!field.contains(v)) {
        throw ParameterError("row " + std::to_string(r) + ": entry " + token + " outside field");
      }
      e.push_back(v);
      ++count;
    }
    if (count != cols) {
      throw ParameterError("row " + std::to_string(r) + ": expected " + std::to_string(cols) +
                           " entries, got " + std::to_string(count));
    }
  }
  return Matrix(field, lines.size(), cols, std::move(e));
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) { return os << to_text(m); }

}  // namespace cdc
