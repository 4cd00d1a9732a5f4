#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cdc/rank_metric.hpp"
#include "cdc/subspace.hpp"

namespace cdc {

/// One full-rank k x n generator per codeword of a constant dimension code.
/// The generators are the codewords' rref matrices, so distinct generators
/// always span distinct subspaces.
class ScRepresentation {
 public:
  explicit ScRepresentation(ConstantDimensionCode code);

  const ConstantDimensionCode& code() const { return code_; }
  std::size_t size() const { return code_.size(); }
  std::size_t length() const { return code_.ambient_dim(); }
  std::size_t dim() const { return code_.dim(); }
  const Matrix& matrix(std::size_t i) const { return code_[i].generator(); }
  /// Minimum distance the code is known to have; a code with fewer than two
  /// words qualifies for any distance.
  bool has_distance(std::size_t d) const;

 private:
  ConstantDimensionCode code_;
};

/// Which side of the ambient space hosts the first half's base code.
enum class Orientation { Forward, Mirrored };

/// Parameters of the parallel linkage construction.
///
/// The first half is {Im(U | Q1)} with U over `n1` coordinates and Q1 a k x n2
/// MRD code of rank distance d/2. The second half is {Im(Q2 | V)} with Q2 a
/// k x (n1 + t) code whose words have rank <= k - d/2 and V over n2 - t
/// coordinates. `Mirrored` swaps the two column blocks of every generator.
struct ParallelLinkageParams {
  std::uint64_t q = 2;
  std::size_t k = 0;
  std::size_t d = 0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::size_t t = 0;
  Orientation orientation = Orientation::Forward;

  /// k >= d, d even, n1 >= k, n2 >= k, 0 <= t <= n2 - k.
  void validate() const;
  std::size_t n() const { return n1 + n2; }
};

inline constexpr std::uint64_t kDefaultCodeSizeCap = std::uint64_t{1} << 22;

/// {rowspan(I_k | A) : A in Q_q(k, n-k, d/2)}. For n = k the full space alone;
/// when n - k < d/2 the only rank-metric word is the zero matrix.
ConstantDimensionCode lifted_mrd(const Field& field, std::size_t n, std::size_t k, std::size_t d,
                                 std::uint64_t cap = kDefaultEnumerationCap);

/// {Im(U | Q) : U in base, Q in q}; minimum distance >= min(d1, 2 d2).
ConstantDimensionCode linkage(const ScRepresentation& base, const RankMetricCode& q,
                              std::uint64_t size_cap = kDefaultCodeSizeCap);

struct ParallelLinkageCode {
  ConstantDimensionCode code;
  /// The first `first_half` codewords come from {Im(U | Q1)}, the rest from {Im(Q2 | V)}.
  std::size_t first_half;
};

/// Union of the two linkage halves with t = 0. U is over n1, V over n2, Q1 is
/// k x n2, Q2 is k x n1 with every rank <= k - d/2.
ParallelLinkageCode parallel_linkage(const ParallelLinkageParams& params,
                                     const ScRepresentation& u, const ScRepresentation& v,
                                     const RankMetricCode& q1, const RankMetricCode& q2,
                                     std::uint64_t size_cap = kDefaultCodeSizeCap);

/// Shifted variant: V over n2 - t and Q2 of shape k x (n1 + t).
ParallelLinkageCode generalized_parallel_linkage(const ParallelLinkageParams& params,
                                                 const ScRepresentation& u,
                                                 const ScRepresentation& v,
                                                 const RankMetricCode& q1,
                                                 const RankMetricCode& q2,
                                                 std::uint64_t size_cap = kDefaultCodeSizeCap);

/// Default ingredients for the explicit constructions: U and V are lifted MRD
/// codes of distance d (a single identity when the segment length is k), Q1
/// the full MRD code and Q2 its rank <= k - d/2 subcode.
ParallelLinkageCode build_parallel_linkage(const ParallelLinkageParams& params,
                                           std::uint64_t cap = kDefaultEnumerationCap,
                                           std::uint64_t size_cap = kDefaultCodeSizeCap);

}  // namespace cdc
