#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cdc/field.hpp"
#include "cdc/matrix.hpp"

namespace cdc {

using BigInt = boost::multiprecision::cpp_int;

BigInt big_pow(std::uint64_t base, std::uint64_t exponent);

/// Number of k-dimensional subspaces of F_q^n; zero when k < 0 or k > n.
BigInt gaussian_binomial(std::int64_t n, std::int64_t k, std::uint64_t q);

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 24;

/// Parameters of an MRD code in m x n matrices with minimum rank distance d.
struct MrdCodeSpec {
  std::uint64_t q;
  std::uint32_t m;
  std::uint32_t n;
  std::uint32_t d;

  /// Throws ParameterError unless q is a prime power and 1 <= d <= min(m, n).
  void validate() const;
  /// Same code space with m >= n (transposition preserves rank).
  MrdCodeSpec normalized() const;
  std::uint32_t larger() const { return m >= n ? m : n; }
  std::uint32_t smaller() const { return m >= n ? n : m; }
  /// Base-q logarithm of the code size: max(m,n) * (min(m,n) - d + 1).
  std::uint64_t log_size() const;
};

/// q^(max(m,n)(min(m,n)-d+1)).
BigInt mrd_size(const MrdCodeSpec& spec);

struct RankDistribution {
  MrdCodeSpec spec;  // normalized
  std::map<std::uint32_t, BigInt> counts;  // rank -> codewords; includes rank 0

  const BigInt& count(std::uint32_t r) const;
  BigInt total() const;
};

/// Exact rank distribution of an MRD code (Delsarte). Input is normalized first.
RankDistribution delsarte_rank_distribution(const MrdCodeSpec& spec);

/// A_r of the normalized code for a single rank r in [d, n]; 0 outside.
BigInt delsarte_count(const MrdCodeSpec& spec, std::uint32_t r);

/// An explicit list of matrices with a known minimum rank distance.
struct RankMetricCode {
  Field field;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::uint32_t min_distance = 0;
  /// Every word has rank <= max_rank; equals min(rows, cols) when unrestricted.
  std::uint32_t max_rank = 0;
  std::vector<Matrix> words;

  std::size_t size() const { return words.size(); }
};

/// Gabidulin code: coordinate expansions of q-linearized polynomials
/// f(x) = sum_{i < n-d+1} a_i x^{q^i}, a_i in F_{q^m}, evaluated at the first n
/// polynomial-basis elements 1, alpha, ..., alpha^{n-1} of F_{q^m}.
///
/// Codeword j is the m x n matrix whose column c holds the F_q-coordinates of
/// f(alpha^c), for the message (a_0, ..., a_{k-1}) that is the j-th vector in
/// lexicographic order (a_0 most significant, entries compared by repr).
class GabidulinCode {
 public:
  GabidulinCode(Field base, std::uint32_t m, std::uint32_t n, std::uint32_t d,
                std::uint64_t cap = kDefaultEnumerationCap);

  const Field& base_field() const { return base_; }
  const Field& extension_field() const { return ext_; }
  MrdCodeSpec spec() const { return {base_.order(), m_, n_, d_}; }
  std::uint32_t message_length() const { return n_ - d_ + 1; }
  std::uint64_t size() const { return size_; }

  Matrix codeword(std::uint64_t index) const;
  /// Visits every codeword in index order.
  void for_each(const std::function<void(std::uint64_t, const Matrix&)>& visit) const;
  std::vector<Matrix> codewords() const;

 private:
  Matrix from_message(std::span<const Field::Repr> message) const;

  Field base_;
  Field ext_;
  std::uint32_t m_, n_, d_;
  std::uint64_t size_;
  // powers_[i][c] = (alpha^c)^(q^i)
  std::vector<std::vector<Field::Repr>> powers_;
};

/// All Gabidulin codewords, as `rows x cols` matrices with rank distance d.
/// Enumerates the normalized code and transposes when rows < cols.
RankMetricCode mrd_code(const Field& field, std::size_t rows, std::size_t cols,
                        std::uint32_t d, std::uint64_t cap = kDefaultEnumerationCap);

/// Codewords of rank <= u_max, in enumeration order (the zero word first).
RankMetricCode restricted_subcode(const RankMetricCode& code, std::uint32_t u_max);

/// MRD code of the given shape restricted to rank <= u_max.
RankMetricCode restricted_subcode(const Field& field, std::size_t rows, std::size_t cols,
                                  std::uint32_t d, std::uint32_t u_max,
                                  std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace cdc
