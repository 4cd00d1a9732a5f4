#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "cdc/matrix.hpp"

namespace cdc {

/// A k-dimensional subspace of F_q^n, identified by its reduced row echelon
/// generator. Two subspaces are equal iff their generators are identical.
class Subspace {
 public:
  /// Throws ParameterError when `m` does not have full row rank.
  static Subspace from_matrix(const Matrix& m);

  const Matrix& generator() const { return generator_; }
  const Field& field() const { return generator_.field(); }
  std::size_t ambient_dim() const { return generator_.cols(); }
  std::size_t dim() const { return generator_.rows(); }
  std::span<const std::size_t> pivots() const { return pivots_; }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.generator_ == b.generator_;
  }
  friend bool operator<(const Subspace& a, const Subspace& b) {
    return a.generator_ < b.generator_;
  }

 private:
  Subspace(Matrix generator, std::vector<std::size_t> pivots)
      : generator_(std::move(generator)), pivots_(std::move(pivots)) {}
  Matrix generator_;
  std::vector<std::size_t> pivots_;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const noexcept;
};

/// 2 dim(U + W) - dim U - dim W.
std::size_t subspace_distance(const Subspace& u, const Subspace& w);

/// Set of equal-dimension subspaces in a common ambient space, insertion ordered.
class ConstantDimensionCode {
 public:
  ConstantDimensionCode(Field field, std::size_t n, std::size_t k,
                        std::optional<std::size_t> claimed_distance = std::nullopt);

  const Field& field() const { return field_; }
  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return k_; }
  std::optional<std::size_t> claimed_distance() const { return claimed_; }
  void set_claimed_distance(std::optional<std::size_t> d) { claimed_ = d; }

  /// Adds a codeword; returns false (and leaves the code unchanged) on a duplicate.
  bool insert(Subspace s);
  bool contains(const Subspace& s) const { return index_.contains(s); }

  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  const Subspace& operator[](std::size_t i) const { return words_[i]; }
  std::span<const Subspace> words() const { return words_; }
  auto begin() const { return words_.begin(); }
  auto end() const { return words_.end(); }

  /// Same codeword set, ignoring order and claimed distance.
  bool same_codewords(const ConstantDimensionCode& other) const;

 private:
  Field field_;
  std::size_t n_;
  std::size_t k_;
  std::optional<std::size_t> claimed_;
  std::vector<Subspace> words_;
  std::unordered_set<Subspace, SubspaceHash> index_;
};

struct FullCheck {};
/// Deterministic pseudorandom subset of pairs; can refute, never certify.
struct SampledCheck {
  std::uint64_t pairs;
  std::uint64_t seed;
};
using VerifyMode = std::variant<FullCheck, SampledCheck>;

struct VerifyReport {
  bool ok = true;
  /// Smallest (i, j), i < j, in pair order whose distance is below the target.
  std::optional<std::pair<std::size_t, std::size_t>> violating_pair;
  std::optional<std::size_t> violating_distance;
  /// Absent when no pair was examined.
  std::optional<std::size_t> observed_min_distance;
  std::uint64_t pairs_checked = 0;
  bool certified = false;  // true only for a full check

  friend bool operator==(const VerifyReport&, const VerifyReport&) = default;
};

inline constexpr std::size_t kFullVerifyDefaultLimit = 10'000;

struct VerifyOptions {
  VerifyMode mode = FullCheck{};
  unsigned threads = 1;
  /// Called from worker 0 with the fraction of its share completed.
  std::function<void(double)> progress;
};

/// Checks that every pair of `words` is at subspace distance >= `d`.
VerifyReport verify_cdc(std::span<const Subspace> words, std::size_t d,
                        const VerifyOptions& options = {});
VerifyReport verify_cdc(const ConstantDimensionCode& code, std::size_t d,
                        const VerifyOptions& options = {});

/// All k-dimensional subspaces of F_q^n in increasing pivot-pattern order.
/// Throws CapExceeded above `cap` subspaces.
std::vector<Subspace> all_subspaces(const Field& field, std::size_t n, std::size_t k,
                                    std::uint64_t cap = std::uint64_t{1} << 20);

/// Code file: a header line, then one blank-line separated rref block per codeword.
struct CodeFile {
  Field field;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t d = 0;  // 0 when no distance is claimed
  std::vector<Subspace> words;
};

/// Throws ParameterError naming the 1-based line of the first problem.
CodeFile read_code_file(std::istream& in);
void write_code_file(std::ostream& out, const ConstantDimensionCode& code);
ConstantDimensionCode to_code(const CodeFile& file);

}  // namespace cdc
