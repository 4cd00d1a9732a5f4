// Slow, independent reference implementations used to cross-check the library.
// Everything here works over prime fields with plain integer vectors.
#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Big = boost::multiprecision::cpp_int;
using Row = std::vector<int>;
using Mat = std::vector<Row>;

inline int mod(long long a, int p) {
  long long r = a % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

inline int inverse(int a, int p) {
  for (int x = 1; x < p; ++x) {
    if (a * x % p == 1) return x;
  }
  return 0;
}

// Plain Gaussian elimination.
inline int rank(Mat m, int p) {
  int r = 0;
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i) {
      if (mod(m[i][c], p)) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(m[r], m[piv]);
    const int inv = inverse(mod(m[r][c], p), p);
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      const int f = mod(m[i][c], p) * inv % p;
      if (!f) continue;
      for (int j = 0; j < cols; ++j) m[i][j] = mod(m[i][j] - f * m[r][j], p);
    }
    ++r;
  }
  return r;
}

inline std::uint64_t encode(const Row& v, int p) {
  std::uint64_t code = 0;
  for (auto it = v.rbegin(); it != v.rend(); ++it) code = code * p + mod(*it, p);
  return code;
}

// Every vector of the row space, base-p encoded.
inline std::set<std::uint64_t> span(const Mat& gens, int p) {
  const std::size_t n = gens.empty() ? 0 : gens[0].size();
  std::set<std::uint64_t> out;
  std::uint64_t combos = 1;
  for (std::size_t i = 0; i < gens.size(); ++i) combos *= p;
  for (std::uint64_t c = 0; c < combos; ++c) {
    Row v(n, 0);
    std::uint64_t x = c;
    for (const Row& g : gens) {
      const int a = static_cast<int>(x % p);
      x /= p;
      for (std::size_t j = 0; j < n; ++j) v[j] = (v[j] + a * g[j]) % p;
    }
    out.insert(encode(v, p));
  }
  return out;
}

inline int log_p(std::size_t size, int p) {
  int e = 0;
  while (size > 1) {
    size /= p;
    ++e;
  }
  return e;
}

// dim U + dim W - 2 dim(U cap W), with the intersection found by listing vectors.
inline int subspace_distance(const Mat& u, const Mat& w, int p) {
  const auto su = span(u, p);
  const auto sw = span(w, p);
  std::size_t common = 0;
  for (auto v : su) common += sw.count(v);
  return log_p(su.size(), p) + log_p(sw.size(), p) - 2 * log_p(common, p);
}

inline Row decode(std::uint64_t code, int n, int p) {
  Row v(n);
  for (int j = 0; j < n; ++j) {
    v[j] = static_cast<int>(code % p);
    code /= p;
  }
  return v;
}

// Number of ordered linearly independent k-tuples in F_p^n, by search.
inline std::uint64_t independent_tuples(int n, int k, int p) {
  std::uint64_t vectors = 1;
  for (int i = 0; i < n; ++i) vectors *= p;
  std::uint64_t count = 0;
  Mat current;
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(current.size()) == k) {
      ++count;
      return;
    }
    for (std::uint64_t c = 0; c < vectors; ++c) {
      current.push_back(decode(c, n, p));
      if (rank(current, p) == static_cast<int>(current.size())) self(self);
      current.pop_back();
    }
  };
  rec(rec);
  return count;
}

// Gaussian binomial as (independent k-tuples in F_p^n) / |GL_k(F_p)|.
inline std::uint64_t count_subspaces(int n, int k, int p) {
  return independent_tuples(n, k, p) / independent_tuples(k, k, p);
}

inline Big power(std::uint64_t b, std::uint64_t e) {
  Big r = 1;
  while (e--) r *= b;
  return r;
}

// Gaussian binomial by the recurrence [n,k] = [n-1,k-1] + q^k [n-1,k].
inline Big gauss(int n, int k, std::uint64_t q) {
  if (k < 0 || k > n) return 0;
  std::vector<std::vector<Big>> t(n + 1, std::vector<Big>(n + 1, 0));
  for (int i = 0; i <= n; ++i) {
    t[i][0] = 1;
    for (int j = 1; j <= i; ++j) t[i][j] = t[i - 1][j - 1] + power(q, j) * (j <= i - 1 ? t[i - 1][j] : Big(0));
  }
  return t[n][k];
}

// MRD rank distribution (m >= n after swapping) by inverting the lattice counts.
// For a v-dimensional space V of F_q^n the words whose row space lies in V form
// an MRD code of length v, so there are q^{m(v-d+1)} of them (1 when v < d).
// Summing over all V: [n,v] * that = sum_r A_r [n-r, v-r]; solve for A_r.
inline std::vector<Big> mrd_distribution(std::uint64_t q, int m, int n, int d) {
  if (m < n) std::swap(m, n);
  std::vector<Big> a(n + 1, 0);
  for (int v = 0; v <= n; ++v) {
    Big inside = v >= d ? power(q, static_cast<std::uint64_t>(m) * (v - d + 1)) : Big(1);
    Big rhs = gauss(n, v, q) * inside;
    for (int r = 0; r < v; ++r) rhs -= a[r] * gauss(n - r, v - r, q);
    a[v] = rhs;  // [n-v, 0] = 1
  }
  return a;
}

inline Big mrd_count(std::uint64_t q, int m, int n, int d, int r) {
  const auto a = mrd_distribution(q, m, n, d);
  return r >= 0 && r < static_cast<int>(a.size()) ? a[r] : Big(0);
}

}  // namespace oracle
