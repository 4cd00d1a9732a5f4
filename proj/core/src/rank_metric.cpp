#include "cdc/rank_metric.hpp"

#include <algorithm>

namespace cdc {

BigInt big_pow(std::uint64_t base, std::uint64_t exponent) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exponent));
}

BigInt gaussian_binomial(std::int64_t n, std::int64_t k, std::uint64_t q) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (q < 2) throw ParameterError("q must be at least 2");
  BigInt num = 1;
  BigInt den = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    num *= big_pow(q, static_cast<std::uint64_t>(n - i)) - 1;
    den *= big_pow(q, static_cast<std::uint64_t>(k - i)) - 1;
  }
  return num / den;
}

namespace {

bool is_prime_power(std::uint64_t q) {
  if (q < 2) return false;
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  while (q % p == 0) q /= p;
  return q == 1;
}

}  // namespace

void MrdCodeSpec::validate() const {
  if (!is_prime_power(q)) throw ParameterError(std::to_string(q) + " is not a prime power");
  if (m == 0 || n == 0) throw ParameterError("MRD dimensions must be positive");
  if (d < 1 || d > smaller()) {
    throw ParameterError("rank distance must satisfy 1 <= d <= min(m, n)");
  }
}

MrdCodeSpec MrdCodeSpec::normalized() const { return {q, larger(), smaller(), d}; }

std::uint64_t MrdCodeSpec::log_size() const {
  return std::uint64_t{larger()} * (smaller() - d + 1);
}

BigInt mrd_size(const MrdCodeSpec& spec) {
  spec.validate();
  return big_pow(spec.q, spec.log_size());
}

const BigInt& RankDistribution::count(std::uint32_t r) const {
  static const BigInt zero = 0;
  auto it = counts.find(r);
  return it == counts.end() ? zero : it->second;
}

BigInt RankDistribution::total() const {
  BigInt sum = 0;
  for (const auto& [r, c] : counts) sum += c;
  return sum;
}

BigInt delsarte_count(const MrdCodeSpec& raw, std::uint32_t r) {
  raw.validate();
  const MrdCodeSpec s = raw.normalized();
  if (r == 0) return 1;
  if (r < s.d || r > s.n) return 0;
  // q^{m(n-d+1)} / q^{m(n+i-r)} = q^{m(r-d+1-i)}, an integer power for i <= r-d.
  BigInt sum = 0;
  for (std::uint32_t i = 0; i <= r - s.d; ++i) {
    BigInt term = big_pow(s.q, std::uint64_t{i} * (i - (i > 0 ? 1 : 0)) / 2) *
                  gaussian_binomial(r, i, s.q) *
                  (big_pow(s.q, std::uint64_t{s.m} * (r - s.d + 1 - i)) - 1);
    if (i % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return gaussian_binomial(s.n, r, s.q) * sum;
}

RankDistribution delsarte_rank_distribution(const MrdCodeSpec& raw) {
  raw.validate();
  RankDistribution dist{raw.normalized(), {}};
  dist.counts[0] = 1;
  for (std::uint32_t r = dist.spec.d; r <= dist.spec.n; ++r) {
    dist.counts[r] = delsarte_count(dist.spec, r);
  }
  return dist;
}

GabidulinCode::GabidulinCode(Field base, std::uint32_t m, std::uint32_t n, std::uint32_t d,
                             std::uint64_t cap)
    : base_(std::move(base)), ext_(base_), m_(m), n_(n), d_(d), size_(0) {
  const MrdCodeSpec spec{base_.order(), m, n, d};
  spec.validate();
  if (m < n) throw ParameterError("Gabidulin codes need m >= n; transpose the other orientation");
  const std::uint64_t log_size = spec.log_size();
  // log_q(cap), computed without overflow
  std::uint64_t allowed = 0;
  for (std::uint64_t v = 1; v <= cap / base_.order(); v *= base_.order()) ++allowed;
  if (log_size > allowed) {
    throw CapExceeded("enumeration cap exceeded: code has " + base_.name() + "^" +
                      std::to_string(log_size) + " codewords, cap is " + std::to_string(cap));
  }
  size_ = 1;
  for (std::uint64_t i = 0; i < log_size; ++i) size_ *= base_.order();
  ext_ = base_.extend(m);

  const std::uint32_t k = message_length();
  powers_.assign(k, std::vector<Field::Repr>(n));
  for (std::uint32_t c = 0; c < n; ++c) {
    // alpha^c has the single coordinate 1 at position c
    std::vector<Field::Repr> coords(m, 0);
    coords[c] = 1;
    Field::Repr g = ext_.from_coordinates(coords);
    for (std::uint32_t i = 0; i < k; ++i) {
      powers_[i][c] = g;
      g = ext_.pow(g, base_.order());
    }
  }
}

Matrix GabidulinCode::from_message(std::span<const Field::Repr> message) const {
  std::vector<Field::Repr> entries(std::size_t{m_} * n_, 0);
  const std::uint64_t bq = base_.order();
  for (std::uint32_t c = 0; c < n_; ++c) {
    Field::Repr value = 0;
    for (std::size_t i = 0; i < message.size(); ++i) {
      if (message[i] != 0) value = ext_.add(value, ext_.mul(message[i], powers_[i][c]));
    }
    for (std::uint32_t r = 0; r < m_; ++r) {
      entries[std::size_t{r} * n_ + c] = static_cast<Field::Repr>(value % bq);
      value = static_cast<Field::Repr>(value / bq);
    }
  }
  return Matrix(base_, m_, n_, std::move(entries));
}

Matrix GabidulinCode::codeword(std::uint64_t index) const {
  if (index >= size_) throw ParameterError("codeword index out of range");
  const std::uint32_t k = message_length();
  std::vector<Field::Repr> message(k);
  for (std::uint32_t i = k; i-- > 0;) {
    message[i] = static_cast<Field::Repr>(index % ext_.order());
    index /= ext_.order();
  }
  return from_message(message);
}

void GabidulinCode::for_each(
    const std::function<void(std::uint64_t, const Matrix&)>& visit) const {
  const std::uint32_t k = message_length();
  std::vector<Field::Repr> message(k, 0);
  for (std::uint64_t index = 0; index < size_; ++index) {
    visit(index, from_message(message));
    // increment the message as a base-Q counter, last coefficient least significant
    for (std::uint32_t i = k; i-- > 0;) {
      if (++message[i] < ext_.order()) break;
      message[i] = 0;
    }
  }
}

std::vector<Matrix> GabidulinCode::codewords() const {
  std::vector<Matrix> out;
  out.reserve(size_);
  for_each([&](std::uint64_t, const Matrix& w) { out.push_back(w); });
  return out;
}

RankMetricCode mrd_code(const Field& field, std::size_t rows, std::size_t cols, std::uint32_t d,
                        std::uint64_t cap) {
  const auto big = static_cast<std::uint32_t>(std::max(rows, cols));
  const auto small = static_cast<std::uint32_t>(std::min(rows, cols));
  GabidulinCode code(field, big, small, d, cap);
  RankMetricCode out{field, rows, cols, d, small, {}};
  out.words.reserve(code.size());
  const bool transpose = rows < cols;
  code.for_each([&](std::uint64_t, const Matrix& w) {
    out.words.push_back(transpose ? w.transpose() : w);
  });
  return out;
}

RankMetricCode restricted_subcode(const RankMetricCode& code, std::uint32_t u_max) {
  RankMetricCode out{code.field, code.rows, code.cols, code.min_distance,
                     std::min(u_max, code.max_rank), {}};
  for (const Matrix& w : code.words) {
    if (rank(w) <= u_max) out.words.push_back(w);
  }
  return out;
}

RankMetricCode restricted_subcode(const Field& field, std::size_t rows, std::size_t cols,
                                  std::uint32_t d, std::uint32_t u_max, std::uint64_t cap) {
  const auto big = static_cast<std::uint32_t>(std::max(rows, cols));
  const auto small = static_cast<std::uint32_t>(std::min(rows, cols));
  GabidulinCode code(field, big, small, d, cap);
  RankMetricCode out{field, rows, cols, d, std::min(u_max, small), {}};
  const bool transpose = rows < cols;
  code.for_each([&](std::uint64_t, const Matrix& w) {
    if (rank(w) <= u_max) out.words.push_back(transpose ? w.transpose() : w);
  });
  return out;
}

}  // namespace cdc
