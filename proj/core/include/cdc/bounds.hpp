#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cdc/constructions.hpp"
#include "cdc/rank_metric.hpp"

namespace cdc {

/// Parameters of A_q(n, d, k).
struct CdcParams {
  std::uint64_t q = 2;
  std::uint32_t n = 0;
  std::uint32_t d = 0;
  std::uint32_t k = 0;

  /// q a prime power, d even and positive, k <= n.
  void validate() const;
  std::string label() const;  // "A_q(n,d,k)"

  friend auto operator<=>(const CdcParams&, const CdcParams&) = default;
};

enum class Rule {
  Registry,
  LiftedMrd,
  ImprovedLinkage,
  ParallelLinkage,
  RrmcVariant,
  // leaves recording closed-form counts consumed by the rules above
  MrdSize,
  RankCount,
};

std::string rule_name(Rule rule);

/// Replayable record of how a lower bound was obtained.
struct BoundCertificate {
  Rule rule = Rule::Registry;
  std::vector<std::pair<std::string, std::string>> params;
  BigInt value;
  std::vector<BoundCertificate> children;
  /// Symbolic and numeric form of the computation, e.g.
  /// "A_2(8,4,4)*|Q_2(5,4,2)| + ... = 4801*32768 + ... = 157337054".
  std::string expression;

  std::optional<std::string> param(const std::string& key) const;
};

/// Recomputes a certificate's value bottom-up from its parameters and leaves.
/// Registry entries are taken as given; every closed-form leaf is recomputed.
BigInt replay(const BoundCertificate& cert);

std::string render_text(const BoundCertificate& cert);
/// JSON object with keys "rule", "params", "value" (decimal string), "children".
std::string render_structured(const BoundCertificate& cert);

/// Known lower bounds on A_q(n, d, k) plus the always-available rules:
/// A = 1 for k in {0, n} or d > 2 min(k, n-k); A_q(n,d,k) = A_q(n,d,n-k);
/// the lifted MRD size whenever min(k, n-k) >= d/2.
class KnownValueRegistry {
 public:
  struct Entry {
    BigInt value;
    std::string source;
  };

  /// Keeps the larger value when an entry already exists.
  void add(const CdcParams& params, BigInt value, std::string source);
  std::optional<Entry> entry(const CdcParams& params) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<CdcParams, Entry>& entries() const { return entries_; }

  /// Lines "q n d k value source-tag"; '#' starts a comment. Throws
  /// ParameterError naming the line of the first problem.
  static KnownValueRegistry parse(std::istream& in);
  static KnownValueRegistry load(const std::string& path);
  /// Built-in published lower bounds on A_2(8,4,4), A_2(12,4,4) and A_2(12,6,6).
  static KnownValueRegistry shipped();
  static const char* shipped_text();

  void merge(const KnownValueRegistry& other);

 private:
  std::map<CdcParams, Entry> entries_;
};

BoundCertificate registry_lookup(const CdcParams& params, const KnownValueRegistry& reg);

/// q^(max(n-k,k)(min(n-k,k)-d/2+1)), or 1 when min(n-k, k) < d/2.
BoundCertificate bound_lifted_mrd(const CdcParams& params);

/// A(m,d,k) * |Q_q(n-m, k, d/2)| + A(n-m+k-d/2, d, k), for k <= m < n.
BoundCertificate bound_improved_linkage(const CdcParams& params, std::uint32_t m,
                                        const KnownValueRegistry& reg);

/// With b = n1 the segment of the first half's base code and o = n - n1:
///   A(b,d,k) * |Q_q(o,k,d/2)| + A(o-t,d,k) * (1 + sum_{r=d/2}^{k-d/2} A_r(Q_q(b+t,k,d/2))).
/// Needs k >= d, b >= k, o >= k and 0 <= t <= o - k. The orientation only
/// places the blocks and does not change the value.
BoundCertificate bound_parallel(const CdcParams& params, std::uint32_t n1, std::uint32_t t,
                                Orientation orientation, const KnownValueRegistry& reg);

/// Same shape as bound_parallel with the rank-restricted factor Lambda replaced
/// by the size of the MRD subcode of rank <= k - d/2 (1 when k < d). Needs d <= 2k.
BoundCertificate bound_rrmc(const CdcParams& params, std::uint32_t n1, std::uint32_t t,
                            const KnownValueRegistry& reg);

struct BestBoundOptions {
  unsigned threads = 1;
};

/// Maximum over every rule and every legal free parameter. Ties go to the
/// earlier rule (Registry, LiftedMrd, ImprovedLinkage, ParallelLinkage,
/// RrmcVariant), then smaller t, then smaller n1 (or m), then Forward.
BoundCertificate best_bound(const CdcParams& params, const KnownValueRegistry& reg,
                            const BestBoundOptions& options = {});

}  // namespace cdc
