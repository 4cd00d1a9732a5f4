#include "cdc/subspace.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "cdc/rank_metric.hpp"

namespace cdc {

Subspace Subspace::from_matrix(const Matrix& m) {
  RrefResult r = rref(m);
  if (r.rank != m.rows()) {
    throw ParameterError("generator matrix has rank " + std::to_string(r.rank) + " but " +
                         std::to_string(m.rows()) + " rows");
  }
  return Subspace(std::move(r.reduced), std::move(r.pivots));
}

std::size_t SubspaceHash::operator()(const Subspace& s) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Field::Repr v : s.generator().entries()) {
    h ^= v;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h ^ (s.ambient_dim() << 7) ^ s.dim());
}

std::size_t subspace_distance(const Subspace& u, const Subspace& w) {
  if (!(u.field() == w.field()) || u.ambient_dim() != w.ambient_dim()) {
    throw ParameterError("subspaces live in different ambient spaces");
  }
  const std::size_t sum = rank(vstack(u.generator(), w.generator()));
  return 2 * sum - u.dim() - w.dim();
}

ConstantDimensionCode::ConstantDimensionCode(Field field, std::size_t n, std::size_t k,
                                             std::optional<std::size_t> claimed_distance)
    : field_(std::move(field)), n_(n), k_(k), claimed_(claimed_distance) {
  if (k > n) throw ParameterError("subspace dimension exceeds ambient dimension");
}

bool ConstantDimensionCode::insert(Subspace s) {
  if (!(s.field() == field_) || s.ambient_dim() != n_ || s.dim() != k_) {
    throw ParameterError("codeword does not match the code's field, length or dimension");
  }
  if (!index_.insert(s).second) return false;
  words_.push_back(std::move(s));
  return true;
}

bool ConstantDimensionCode::same_codewords(const ConstantDimensionCode& other) const {
  if (!(field_ == other.field_) || n_ != other.n_ || k_ != other.k_) return false;
  if (size() != other.size()) return false;
  return std::all_of(words_.begin(), words_.end(),
                     [&](const Subspace& s) { return other.contains(s); });
}

namespace {

// Flattened generators, so the pair loop does no allocation.
class PairDistance {
 public:
  explicit PairDistance(std::span<const Subspace> words) : words_(words) {
    if (words.empty()) return;
    field_ = words.front().field();
    n_ = words.front().ambient_dim();
    for (const Subspace& s : words) {
      if (!(s.field() == *field_) || s.ambient_dim() != n_) {
        throw ParameterError("codewords live in different ambient spaces");
      }
    }
    packed_ = field_->order() == 2 && n_ <= 64;
    if (packed_) {
      offsets_.reserve(words.size() + 1);
      offsets_.push_back(0);
      for (const Subspace& s : words) {
        auto rows = gf2_pack(s.generator());
        bits_.insert(bits_.end(), rows.begin(), rows.end());
        offsets_.push_back(bits_.size());
      }
    }
  }

  std::size_t operator()(std::size_t i, std::size_t j, std::vector<std::uint64_t>& bit_scratch,
                         std::vector<Field::Repr>& scratch) const {
    const Subspace& u = words_[i];
    const Subspace& w = words_[j];
    std::size_t sum = 0;
    if (packed_) {
      bit_scratch.assign(bits_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
                         bits_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]));
      bit_scratch.insert(bit_scratch.end(),
                         bits_.begin() + static_cast<std::ptrdiff_t>(offsets_[j]),
                         bits_.begin() + static_cast<std::ptrdiff_t>(offsets_[j + 1]));
      sum = gf2_rank(bit_scratch);
    } else {
      sum = stacked_rank(u, w, scratch);
    }
    return 2 * sum - u.dim() - w.dim();
  }

 private:
  std::size_t stacked_rank(const Subspace& u, const Subspace& w,
                           std::vector<Field::Repr>& e) const {
    const Field& f = *field_;
    const std::size_t cols = n_;
    e.assign(u.generator().entries().begin(), u.generator().entries().end());
    e.insert(e.end(), w.generator().entries().begin(), w.generator().entries().end());
    const std::size_t rows = u.dim() + w.dim();
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
      std::size_t found = pivot_row;
      while (found < rows && e[found * cols + c] == 0) ++found;
      if (found == rows) continue;
      if (found != pivot_row) {
        for (std::size_t j = 0; j < cols; ++j) std::swap(e[found * cols + j], e[pivot_row * cols + j]);
      }
      const Field::Repr scale = f.inv(e[pivot_row * cols + c]);
      for (std::size_t r = pivot_row + 1; r < rows; ++r) {
        const Field::Repr x = e[r * cols + c];
        if (x == 0) continue;
        const Field::Repr factor = f.mul(x, scale);
        for (std::size_t j = c; j < cols; ++j) {
          const Field::Repr p = e[pivot_row * cols + j];
          if (p != 0) e[r * cols + j] = f.sub(e[r * cols + j], f.mul(factor, p));
        }
      }
      ++pivot_row;
    }
    return pivot_row;
  }

  std::span<const Subspace> words_;
  std::optional<Field> field_;
  std::size_t n_ = 0;
  bool packed_ = false;
  std::vector<std::uint64_t> bits_;
  std::vector<std::size_t> offsets_;
};

struct PartialReport {
  std::optional<std::size_t> min_distance;
  std::optional<std::pair<std::size_t, std::size_t>> violating;
  std::optional<std::size_t> violating_distance;
  std::uint64_t pairs = 0;

  void record(std::size_t i, std::size_t j, std::size_t dist, std::size_t target) {
    ++pairs;
    if (!min_distance || dist < *min_distance) min_distance = dist;
    if (dist < target) {
      const std::pair<std::size_t, std::size_t> p{i, j};
      if (!violating || p < *violating) {
        violating = p;
        violating_distance = dist;
      }
    }
  }

  void merge(const PartialReport& o) {
    pairs += o.pairs;
    if (o.min_distance && (!min_distance || *o.min_distance < *min_distance)) {
      min_distance = o.min_distance;
    }
    if (o.violating && (!violating || *o.violating < *violating)) {
      violating = o.violating;
      violating_distance = o.violating_distance;
    }
  }
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Pair number `index` of the sampled check: a function of (seed, index) only,
// so any split of the index range across workers sees the same pairs.
std::pair<std::size_t, std::size_t> sampled_pair(std::uint64_t seed, std::uint64_t index,
                                                 std::size_t m) {
  const std::uint64_t a = splitmix64(seed ^ splitmix64(2 * index));
  const std::uint64_t b = splitmix64(seed ^ splitmix64(2 * index + 1));
  std::size_t i = static_cast<std::size_t>(a % m);
  std::size_t j = static_cast<std::size_t>(b % (m - 1));
  if (j >= i) ++j;
  return i < j ? std::pair{i, j} : std::pair{j, i};
}

}  // namespace

VerifyReport verify_cdc(std::span<const Subspace> words, std::size_t d,
                        const VerifyOptions& options) {
  const PairDistance distance(words);
  const std::size_t m = words.size();
  const unsigned workers = std::max(1u, options.threads);
  const bool full = std::holds_alternative<FullCheck>(options.mode);
  std::vector<PartialReport> partial(workers);

  auto run = [&](unsigned worker) {
    std::vector<std::uint64_t> bits;
    std::vector<Field::Repr> scratch;
    PartialReport& out = partial[worker];
    if (full) {
      // rows i = worker, worker + workers, ...
      std::size_t done_rows = 0;
      const std::size_t my_rows = m > worker ? (m - worker + workers - 1) / workers : 0;
      for (std::size_t i = worker; i < m; i += workers) {
        for (std::size_t j = i + 1; j < m; ++j) out.record(i, j, distance(i, j, bits, scratch), d);
        ++done_rows;
        if (worker == 0 && options.progress && (done_rows & 255) == 0) {
          options.progress(static_cast<double>(done_rows) / static_cast<double>(my_rows));
        }
      }
    } else if (m >= 2) {
      const auto& s = std::get<SampledCheck>(options.mode);
      for (std::uint64_t t = worker; t < s.pairs; t += workers) {
        const auto [i, j] = sampled_pair(s.seed, t, m);
        out.record(i, j, distance(i, j, bits, scratch), d);
        if (worker == 0 && options.progress && (t & 0xffff) == 0) {
          options.progress(static_cast<double>(t) / static_cast<double>(s.pairs));
        }
      }
    }
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }

  PartialReport total;
  for (const auto& p : partial) total.merge(p);
  VerifyReport report;
  report.ok = !total.violating.has_value();
  report.violating_pair = total.violating;
  report.violating_distance = total.violating_distance;
  report.observed_min_distance = total.min_distance;
  report.pairs_checked = total.pairs;
  report.certified = full;
  return report;
}

VerifyReport verify_cdc(const ConstantDimensionCode& code, std::size_t d,
                        const VerifyOptions& options) {
  return verify_cdc(code.words(), d, options);
}

std::vector<Subspace> all_subspaces(const Field& field, std::size_t n, std::size_t k,
                                    std::uint64_t cap) {
  if (k > n) return {};
  const BigInt total = gaussian_binomial(static_cast<std::int64_t>(n),
                                         static_cast<std::int64_t>(k), field.order());
  if (total > cap) {
    throw CapExceeded("subspace enumeration cap exceeded: " + total.str() + " subspaces, cap " +
                      std::to_string(cap));
  }
  std::vector<Subspace> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<std::size_t> pivots(k);
  for (std::size_t i = 0; i < k; ++i) pivots[i] = i;
  const std::uint64_t q = field.order();
  while (true) {
    // free positions: right of the row's pivot and not in a pivot column
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = pivots[r] + 1; c < n; ++c) {
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free.emplace_back(r, c);
      }
    }
    std::uint64_t fillings = 1;
    for (std::size_t f = 0; f < free.size(); ++f) fillings *= q;
    for (std::uint64_t code = 0; code < fillings; ++code) {
      Matrix g(field, k, n);
      for (std::size_t r = 0; r < k; ++r) g.set(r, pivots[r], 1);
      std::uint64_t digits = code;
      for (std::size_t f = free.size(); f-- > 0;) {
        g.set(free[f].first, free[f].second, static_cast<Field::Repr>(digits % q));
        digits /= q;
      }
      out.push_back(Subspace::from_matrix(g));
    }
    // next pivot combination in lexicographic order
    std::size_t i = k;
    while (i > 0 && pivots[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++pivots[i - 1];
    for (std::size_t j = i; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
  }
  return out;
}

namespace {

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ParameterError("line " + std::to_string(line) + ": " + what);
}

std::uint64_t header_value(const std::string& token, const std::string& key, std::size_t line) {
  if (token.rfind(key + "=", 0) != 0) fail(line, "expected " + key + "=<value>, got '" + token + "'");
  const std::string value = token.substr(key.size() + 1);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    fail(line, "bad value for " + key + ": '" + value + "'");
  }
  return v;
}

}  // namespace

CodeFile read_code_file(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) fail(1, "empty file, expected 'cdc q=... n=... k=... d=... M=...'");
  ++line_no;
  std::istringstream header(line);
  std::string tag, tq, tn, tk, td, tm, extra;
  if (!(header >> tag >> tq >> tn >> tk >> td >> tm) || tag != "cdc" || (header >> extra)) {
    fail(line_no, "expected header 'cdc q=<q> n=<n> k=<k> d=<d> M=<count>'");
  }
  const std::uint64_t q = header_value(tq, "q", line_no);
  const std::uint64_t n = header_value(tn, "n", line_no);
  const std::uint64_t k = header_value(tk, "k", line_no);
  const std::uint64_t d = header_value(td, "d", line_no);
  const std::uint64_t count = header_value(tm, "M", line_no);
  if (k == 0 || k > n) fail(line_no, "need 1 <= k <= n");
  Field field = [&] {
    try {
      return Field::of_order(q);
    } catch (const Error& e) {
      fail(line_no, e.what());
    }
  }();

  CodeFile file{field, n, k, d, {}};
  std::vector<std::string> block;
  std::size_t block_start = 0;
  auto flush = [&] {
    if (block.empty()) return;
    if (block.size() != k) {
      fail(block_start, "codeword block has " + std::to_string(block.size()) + " rows, expected " +
                            std::to_string(k));
    }
    std::vector<Matrix::Repr> entries;
    entries.reserve(k * n);
    for (std::size_t r = 0; r < block.size(); ++r) {
      try {
        const Matrix row = parse_matrix(field, std::span<const std::string>(&block[r], 1), n);
        entries.insert(entries.end(), row.entries().begin(), row.entries().end());
      } catch (const ParameterError& e) {
        std::string what = e.what();
        if (what.rfind("row 0: ", 0) == 0) what.erase(0, 7);
        fail(block_start + r, what);
      }
    }
    try {
      file.words.push_back(Subspace::from_matrix(Matrix(field, k, n, std::move(entries))));
    } catch (const ParameterError& e) {
      fail(block_start, e.what());
    }
    block.clear();
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line)) {
      flush();
      continue;
    }
    if (block.empty()) block_start = line_no;
    block.push_back(line);
  }
  flush();
  if (file.words.size() != count) {
    fail(line_no, "header declares M=" + std::to_string(count) + " but file has " +
                      std::to_string(file.words.size()) + " codewords");
  }
  return file;
}

void write_code_file(std::ostream& out, const ConstantDimensionCode& code) {
  out << "cdc q=" << code.field().order() << " n=" << code.ambient_dim() << " k=" << code.dim()
      << " d=" << code.claimed_distance().value_or(0) << " M=" << code.size() << '\n';
  for (const Subspace& s : code) out << '\n' << to_text(s.generator());
}

ConstantDimensionCode to_code(const CodeFile& file) {
  ConstantDimensionCode code(file.field, file.n, file.k,
                             file.d ? std::optional<std::size_t>(file.d) : std::nullopt);
  for (const Subspace& s : file.words) {
    if (!code.insert(s)) throw ParameterError("code file contains a duplicate codeword");
  }
  return code;
}

}  // namespace cdc
