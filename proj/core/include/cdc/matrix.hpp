#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cdc/field.hpp"

namespace cdc {

/// Dense row-major matrix over a finite field. Entries are field reprs.
class Matrix {
 public:
  using Repr = Field::Repr;

  Matrix(Field field, std::size_t rows, std::size_t cols);
  Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<Repr> entries);

  static Matrix identity(Field field, std::size_t n);
  static Matrix zero(Field field, std::size_t rows, std::size_t cols) {
    return Matrix(std::move(field), rows, cols);
  }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::span<const Repr> entries() const { return entries_; }

  Repr at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Repr v);

  std::span<const Repr> row(std::size_t r) const {
    return std::span<const Repr>(entries_).subspan(r * cols_, cols_);
  }

  Matrix transpose() const;
  Matrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
  bool is_zero() const;

  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator<(const Matrix& a, const Matrix& b);

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Repr> entries_;
};

struct RrefResult {
  Matrix reduced;
  std::size_t rank;
  std::vector<std::size_t> pivots;
};

/// Unique reduced row echelon form. Zero rows are kept at the bottom, so the
/// result has the same shape as the input.
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);

Matrix hconcat(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix matmul(const Matrix& a, const Matrix& b);

/// Rank of a GF(2) matrix whose rows are packed little-endian into 64-bit words
/// (column c is bit c). Rows are modified in place.
std::size_t gf2_rank(std::span<std::uint64_t> rows);
/// Packs a GF(2) matrix with at most 64 columns.
std::vector<std::uint64_t> gf2_pack(const Matrix& m);

/// One row per line, entries as decimal reprs separated by single spaces.
std::string to_text(const Matrix& m);
/// Inverse of to_text for a known shape; `lines` holds exactly `rows` lines.
Matrix parse_matrix(const Field& field, std::span<const std::string> lines, std::size_t cols);

std::ostream& operator<<(std::ostream& os, const Matrix& m);

}  // namespace cdc
