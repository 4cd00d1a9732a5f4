#include "cdc/constructions.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace cdc {

ScRepresentation::ScRepresentation(ConstantDimensionCode code) : code_(std::move(code)) {}

bool ScRepresentation::has_distance(std::size_t d) const {
  if (code_.size() < 2) return true;
  return code_.claimed_distance().has_value() && *code_.claimed_distance() >= d;
}

void ParallelLinkageParams::validate() const {
  if (d == 0 || d % 2 != 0) throw ParameterError("subspace distance d must be even and positive");
  if (k < d) throw ParameterError("parallel linkage needs k >= d");
  if (n1 < k || n2 < k) throw ParameterError("parallel linkage needs n1 >= k and n2 >= k");
  if (t > n2 - k) {
    throw ParameterError("shift t=" + std::to_string(t) + " exceeds n2 - k = " +
                         std::to_string(n2 - k));
  }
}

namespace {

constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

std::uint64_t checked_product(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
  if (a != 0 && b > cap / a) {
    throw CapExceeded("code size cap exceeded: " + std::to_string(a) + " x " + std::to_string(b) +
                      " codewords, cap is " + std::to_string(cap));
  }
  return a * b;
}

void insert_new(ConstantDimensionCode& code, Subspace s) {
  // Distinct linkage inputs always give distinct subspaces; a repeat means the
  // inputs were not what they claimed to be.
  if (!code.insert(std::move(s))) {
    throw Error("linkage produced a repeated subspace; base code or rank-metric code is invalid");
  }
}

std::size_t base_distance(const ScRepresentation& base) {
  if (base.size() < 2) return kUnbounded;
  return base.code().claimed_distance().value_or(0);
}

std::size_t rank_code_distance(const RankMetricCode& q) {
  return q.size() < 2 ? kUnbounded : q.min_distance;
}

void check_base(const ScRepresentation& base, const Field& field, std::size_t length,
                std::size_t k, std::size_t d, const char* name) {
  if (!(base.code().field() == field)) throw ParameterError(std::string(name) + " is over a different field");
  if (base.length() != length || base.dim() != k) {
    throw ParameterError(std::string(name) + " must be a code of " + std::to_string(k) +
                         "-subspaces in length " + std::to_string(length));
  }
  if (base.size() == 0) throw ParameterError(std::string(name) + " is empty");
  if (!base.has_distance(d)) {
    throw ParameterError(std::string(name) + " does not have minimum distance " + std::to_string(d));
  }
}

void check_rank_code(const RankMetricCode& q, const Field& field, std::size_t rows,
                     std::size_t cols, std::size_t distance, const char* name) {
  if (!(q.field == field)) throw ParameterError(std::string(name) + " is over a different field");
  if (q.rows != rows || q.cols != cols) {
    throw ParameterError(std::string(name) + " must hold " + std::to_string(rows) + "x" +
                         std::to_string(cols) + " matrices");
  }
  if (q.size() == 0) throw ParameterError(std::string(name) + " is empty");
  if (rank_code_distance(q) < distance) {
    throw ParameterError(std::string(name) + " has rank distance below " + std::to_string(distance));
  }
  for (const Matrix& w : q.words) {
    if (w.rows() != rows || w.cols() != cols) {
      throw ParameterError(std::string(name) + " contains a matrix of the wrong shape");
    }
  }
}

void check_rank_bound(const RankMetricCode& q, std::size_t bound, const char* name) {
  for (std::size_t i = 0; i < q.words.size(); ++i) {
    const std::size_t r = rank(q.words[i]);
    if (r > bound) {
      throw ParameterError(std::string(name) + " word " + std::to_string(i) + " has rank " +
                           std::to_string(r) + " > k - d/2 = " + std::to_string(bound));
    }
  }
}

Matrix join(const Matrix& left, const Matrix& right, Orientation o) {
  return o == Orientation::Forward ? hconcat(left, right) : hconcat(right, left);
}

// W1 = {Im(U | Q1)} then W2 = {Im(Q2 | V)}; the second block of columns of W2
// has width `v_width`.
ParallelLinkageCode assemble(const ParallelLinkageParams& p, const ScRepresentation& u,
                             const ScRepresentation& v, const RankMetricCode& q1,
                             const RankMetricCode& q2, std::size_t q2_width,
                             std::size_t v_width, std::uint64_t size_cap) {
  const Field& field = u.code().field();
  if (field.order() != p.q) throw ParameterError("base code field does not match q");
  check_base(u, field, p.n1, p.k, p.d, "U");
  check_base(v, field, v_width, p.k, p.d, "V");
  check_rank_code(q1, field, p.k, p.n2, p.d / 2, "Q1");
  check_rank_code(q2, field, p.k, q2_width, p.d / 2, "Q2");
  check_rank_bound(q2, p.k - p.d / 2, "Q2");

  const std::uint64_t first = checked_product(u.size(), q1.size(), size_cap);
  const std::uint64_t second = checked_product(q2.size(), v.size(), size_cap);
  if (first + second > size_cap) {
    throw CapExceeded("code size cap exceeded: " + std::to_string(first + second) +
                      " codewords, cap is " + std::to_string(size_cap));
  }

  ConstantDimensionCode code(field, p.n(), p.k, p.d);
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (const Matrix& a : q1.words) insert_new(code, Subspace::from_matrix(join(u.matrix(i), a, p.orientation)));
  }
  const std::size_t first_half = code.size();
  for (const Matrix& b : q2.words) {
    for (std::size_t j = 0; j < v.size(); ++j) insert_new(code, Subspace::from_matrix(join(b, v.matrix(j), p.orientation)));
  }
  return {std::move(code), first_half};
}

}  // namespace

ConstantDimensionCode lifted_mrd(const Field& field, std::size_t n, std::size_t k, std::size_t d,
                                 std::uint64_t cap) {
  if (d == 0 || d % 2 != 0) throw ParameterError("subspace distance d must be even and positive");
  if (k > n) throw ParameterError("need k <= n");
  if (k < d / 2) throw ParameterError("lifted MRD codes need k >= d/2");
  ConstantDimensionCode code(field, n, k, d);
  const Matrix id = Matrix::identity(field, k);
  if (n == k) {
    code.insert(Subspace::from_matrix(id));
    return code;
  }
  if (n - k < d / 2) {
    code.insert(Subspace::from_matrix(hconcat(id, Matrix::zero(field, k, n - k))));
    return code;
  }
  const RankMetricCode q = mrd_code(field, k, n - k, static_cast<std::uint32_t>(d / 2), cap);
  for (const Matrix& a : q.words) insert_new(code, Subspace::from_matrix(hconcat(id, a)));
  return code;
}

ConstantDimensionCode linkage(const ScRepresentation& base, const RankMetricCode& q,
                              std::uint64_t size_cap) {
  const Field& field = base.code().field();
  if (base.size() == 0) throw ParameterError("linkage base code is empty");
  check_rank_code(q, field, base.dim(), q.cols, 0, "Q");
  checked_product(base.size(), q.size(), size_cap);

  const std::size_t d1 = base_distance(base);
  const std::size_t d2 = rank_code_distance(q);
  const std::size_t d = std::min(d1, d2 == kUnbounded ? kUnbounded : 2 * d2);
  ConstantDimensionCode code(field, base.length() + q.cols, base.dim(),
                             d == kUnbounded ? std::nullopt : std::optional<std::size_t>(d));
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (const Matrix& a : q.words) insert_new(code, Subspace::from_matrix(hconcat(base.matrix(i), a)));
  }
  return code;
}

ParallelLinkageCode parallel_linkage(const ParallelLinkageParams& params,
                                     const ScRepresentation& u, const ScRepresentation& v,
                                     const RankMetricCode& q1, const RankMetricCode& q2,
                                     std::uint64_t size_cap) {
  params.validate();
  if (params.t != 0) throw ParameterError("parallel_linkage is the t = 0 case; use the generalized form");
  return assemble(params, u, v, q1, q2, params.n1, params.n2, size_cap);
}

ParallelLinkageCode generalized_parallel_linkage(const ParallelLinkageParams& params,
                                                 const ScRepresentation& u,
                                                 const ScRepresentation& v,
                                                 const RankMetricCode& q1,
                                                 const RankMetricCode& q2,
                                                 std::uint64_t size_cap) {
  params.validate();
  return assemble(params, u, v, q1, q2, params.n1 + params.t, params.n2 - params.t, size_cap);
}

ParallelLinkageCode build_parallel_linkage(const ParallelLinkageParams& params, std::uint64_t cap,
                                           std::uint64_t size_cap) {
  params.validate();
  const Field field = Field::of_order(params.q);
  const auto half = static_cast<std::uint32_t>(params.d / 2);
  ScRepresentation u(lifted_mrd(field, params.n1, params.k, params.d, cap));
  ScRepresentation v(lifted_mrd(field, params.n2 - params.t, params.k, params.d, cap));
  const RankMetricCode q1 = mrd_code(field, params.k, params.n2, half, cap);
  const RankMetricCode q2 = restricted_subcode(field, params.k, params.n1 + params.t, half,
                                               static_cast<std::uint32_t>(params.k) - half, cap);
  if (params.t == 0) return parallel_linkage(params, u, v, q1, q2, size_cap);
  return generalized_parallel_linkage(params, u, v, q1, q2, size_cap);
}

}  // namespace cdc
