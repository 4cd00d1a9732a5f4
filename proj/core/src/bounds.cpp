#include "cdc/bounds.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace cdc {

namespace {

std::string str(std::uint64_t v) { return std::to_string(v); }

bool is_prime_power(std::uint64_t q) {
  if (q < 2) return false;
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  while (q % p == 0) q /= p;
  return q == 1;
}

std::uint64_t get_u64(const BoundCertificate& c, const std::string& key) {
  auto v = c.param(key);
  if (!v) throw Error("certificate lacks parameter '" + key + "'");
  return std::stoull(*v);
}

// |Q_q(a, b, delta)|, with the size taken as 1 once delta exceeds min(a, b).
BigInt mrd_size_or_one(std::uint64_t q, std::uint64_t a, std::uint64_t b, std::uint64_t delta) {
  const std::uint64_t lo = std::min(a, b);
  const std::uint64_t hi = std::max(a, b);
  if (delta > lo) return 1;
  return big_pow(q, hi * (lo - delta + 1));
}

BigInt lifted_value(std::uint64_t q, std::uint64_t n, std::uint64_t d, std::uint64_t k) {
  return mrd_size_or_one(q, k, n - k, d / 2);
}

BoundCertificate mrd_leaf(std::uint64_t q, std::uint64_t a, std::uint64_t b, std::uint64_t delta) {
  BoundCertificate c;
  c.rule = Rule::MrdSize;
  const std::uint64_t hi = std::max(a, b);
  const std::uint64_t lo = std::min(a, b);
  c.params = {{"q", str(q)}, {"m", str(hi)}, {"n", str(lo)}, {"d", str(delta)}};
  c.value = mrd_size_or_one(q, hi, lo, delta);
  c.expression = "|Q_" + str(q) + "(" + str(hi) + "," + str(lo) + "," + str(delta) + ")|";
  return c;
}

BoundCertificate rank_leaf(std::uint64_t q, std::uint64_t m, std::uint64_t n, std::uint64_t delta,
                           std::uint64_t r) {
  BoundCertificate c;
  c.rule = Rule::RankCount;
  c.params = {{"q", str(q)}, {"m", str(m)}, {"n", str(n)}, {"d", str(delta)}, {"r", str(r)}};
  c.value = delsarte_count(MrdCodeSpec{q, static_cast<std::uint32_t>(m),
                                       static_cast<std::uint32_t>(n),
                                       static_cast<std::uint32_t>(delta)},
                           static_cast<std::uint32_t>(r));
  c.expression = "A_" + str(r) + "[Q_" + str(q) + "(" + str(m) + "," + str(n) + "," + str(delta) + ")]";
  return c;
}

// Registry value for any ambient dimension; no k-subspaces when k > n.
BoundCertificate lookup_any(std::uint64_t q, std::uint64_t n, std::uint64_t d, std::uint64_t k,
                            const KnownValueRegistry& reg) {
  if (k > n) {
    BoundCertificate c;
    c.rule = Rule::Registry;
    c.params = {{"q", str(q)}, {"n", str(n)}, {"d", str(d)}, {"k", str(k)}, {"via", "empty"},
                {"source", "no k-subspaces when k > n"}};
    c.value = 0;
    c.expression = "A_" + str(q) + "(" + str(n) + "," + str(d) + "," + str(k) + ")";
    return c;
  }
  return registry_lookup(CdcParams{q, static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(d),
                                   static_cast<std::uint32_t>(k)},
                         reg);
}

const std::string& label_of(const BoundCertificate& c) { return c.expression; }

std::string leaf_symbol(const BoundCertificate& c) {
  // leaves carry only their symbol as expression
  return label_of(c);
}

void check_split(const CdcParams& p, std::uint32_t n1, std::uint32_t t) {
  if (n1 < p.k || n1 > p.n || p.n - n1 < p.k) {
    throw ParameterError("split needs k <= n1 <= n - k (n1=" + str(n1) + ", n=" + str(p.n) +
                         ", k=" + str(p.k) + ")");
  }
  if (t > p.n - n1 - p.k) {
    throw ParameterError("shift t=" + str(t) + " exceeds (n - n1) - k = " + str(p.n - n1 - p.k));
  }
}

// A(b)*|Q(o,k,d/2)| + A(o-t)*(1 + sum of rank counts); shared by the parallel
// linkage and rank-restricted bounds.
BoundCertificate two_half_bound(const CdcParams& p, std::uint32_t n1, std::uint32_t t,
                                const KnownValueRegistry& reg, Rule rule) {
  const std::uint64_t b = n1;
  const std::uint64_t o = p.n - n1;
  const std::uint64_t half = p.d / 2;
  BoundCertificate c;
  c.rule = rule;
  c.children.push_back(lookup_any(p.q, b, p.d, p.k, reg));
  c.children.push_back(mrd_leaf(p.q, o, p.k, half));
  c.children.push_back(lookup_any(p.q, o - t, p.d, p.k, reg));
  // Q2 words live in k x (b + t); ranks d/2 .. k - d/2
  if (p.k >= half && p.k - half >= half) {
    for (std::uint64_t r = half; r <= p.k - half; ++r) {
      c.children.push_back(rank_leaf(p.q, b + t, p.k, half, r));
    }
  }
  BigInt restricted = 1;
  std::string sym = "1";
  std::string num = "1";
  for (std::size_t i = 3; i < c.children.size(); ++i) {
    restricted += c.children[i].value;
    sym += " + " + leaf_symbol(c.children[i]);
    num += " + " + c.children[i].value.str();
  }
  c.value = c.children[0].value * c.children[1].value + c.children[2].value * restricted;
  c.expression = leaf_symbol(c.children[0]) + "*" + leaf_symbol(c.children[1]) + " + " +
                 leaf_symbol(c.children[2]) + "*(" + sym + ") = " + c.children[0].value.str() +
                 "*" + c.children[1].value.str() + " + " + c.children[2].value.str() + "*(" + num +
                 ") = " + c.value.str();
  return c;
}

}  // namespace

void CdcParams::validate() const {
  if (!is_prime_power(q)) throw ParameterError(str(q) + " is not a prime power");
  if (d == 0 || d % 2 != 0) throw ParameterError("subspace distance d must be even and positive");
  if (k > n) throw ParameterError("need k <= n");
}

std::string CdcParams::label() const {
  return "A_" + str(q) + "(" + str(n) + "," + str(d) + "," + str(k) + ")";
}

std::string rule_name(Rule rule) {
  switch (rule) {
    case Rule::Registry: return "Registry";
    case Rule::LiftedMrd: return "LiftedMRD";
    case Rule::ImprovedLinkage: return "ImprovedLinkage";
    case Rule::ParallelLinkage: return "ParallelLinkage";
    case Rule::RrmcVariant: return "RrmcVariant";
    case Rule::MrdSize: return "MrdSize";
    case Rule::RankCount: return "RankCount";
  }
  return "?";
}

std::optional<std::string> BoundCertificate::param(const std::string& key) const {
  for (const auto& [k, v] : params) {
    if (k == key) return v;
  }
  return std::nullopt;
}

BigInt replay(const BoundCertificate& c) {
  switch (c.rule) {
    case Rule::Registry: {
      const std::string via = c.param("via").value_or("");
      if (via == "trivial") return 1;
      if (via == "empty") return 0;
      if (via == "lifted-mrd") {
        return lifted_value(get_u64(c, "q"), get_u64(c, "n"), get_u64(c, "d"), get_u64(c, "k"));
      }
      return c.value;  // explicit table entry
    }
    case Rule::LiftedMrd:
      return lifted_value(get_u64(c, "q"), get_u64(c, "n"), get_u64(c, "d"), get_u64(c, "k"));
    case Rule::MrdSize:
      return mrd_size_or_one(get_u64(c, "q"), get_u64(c, "m"), get_u64(c, "n"), get_u64(c, "d"));
    case Rule::RankCount:
      return delsarte_count(MrdCodeSpec{get_u64(c, "q"), static_cast<std::uint32_t>(get_u64(c, "m")),
                                        static_cast<std::uint32_t>(get_u64(c, "n")),
                                        static_cast<std::uint32_t>(get_u64(c, "d"))},
                            static_cast<std::uint32_t>(get_u64(c, "r")));
    case Rule::ImprovedLinkage:
      if (c.children.size() != 3) throw Error("malformed ImprovedLinkage certificate");
      return replay(c.children[0]) * replay(c.children[1]) + replay(c.children[2]);
    case Rule::ParallelLinkage:
    case Rule::RrmcVariant: {
      if (c.children.size() < 3) throw Error("malformed two-half certificate");
      BigInt restricted = 1;
      for (std::size_t i = 3; i < c.children.size(); ++i) restricted += replay(c.children[i]);
      return replay(c.children[0]) * replay(c.children[1]) + replay(c.children[2]) * restricted;
    }
  }
  throw Error("unknown certificate rule");
}

namespace {

void render_text_into(const BoundCertificate& c, int depth, std::string& out) {
  const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
  out += indent + c.value.str() + "  " + rule_name(c.rule);
  if (!c.params.empty()) {
    out += " [";
    for (std::size_t i = 0; i < c.params.size(); ++i) {
      if (i) out += ", ";
      out += c.params[i].first + "=" + c.params[i].second;
    }
    out += "]";
  }
  out += '\n';
  if (!c.children.empty() && !c.expression.empty()) out += indent + "  = " + c.expression + '\n';
  for (const auto& child : c.children) render_text_into(child, depth + 1, out);
}

nlohmann::ordered_json to_json(const BoundCertificate& c) {
  nlohmann::ordered_json j;
  j["rule"] = rule_name(c.rule);
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : c.params) params[k] = v;
  j["params"] = params;
  j["value"] = c.value.str();
  j["children"] = nlohmann::ordered_json::array();
  for (const auto& child : c.children) j["children"].push_back(to_json(child));
  return j;
}

}  // namespace

std::string render_text(const BoundCertificate& cert) {
  std::string out;
  render_text_into(cert, 0, out);
  return out;
}

std::string render_structured(const BoundCertificate& cert) { return to_json(cert).dump(2); }

void KnownValueRegistry::add(const CdcParams& params, BigInt value, std::string source) {
  params.validate();
  if (value < 1) throw ParameterError("registry values must be positive");
  auto it = entries_.find(params);
  if (it != entries_.end() && it->second.value >= value) return;
  entries_[params] = Entry{std::move(value), std::move(source)};
}

std::optional<KnownValueRegistry::Entry> KnownValueRegistry::entry(const CdcParams& params) const {
  auto it = entries_.find(params);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

KnownValueRegistry KnownValueRegistry::parse(std::istream& in) {
  KnownValueRegistry reg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream is(line);
    std::string tq, tn, td, tk, tv;
    if (!(is >> tq)) continue;
    auto fail = [&](const std::string& why) -> void {
      throw ParameterError("registry line " + str(line_no) + ": " + why);
    };
    if (!(is >> tn >> td >> tk >> tv)) fail("expected 'q n d k value source-tag'");
    std::string source;
    std::getline(is, source);
    source.erase(0, source.find_first_not_of(" \t"));
    if (!source.empty()) source.erase(source.find_last_not_of(" \t\r") + 1);
    try {
      for (const std::string* t : {&tq, &tn, &td, &tk, &tv}) {
        if (t->find_first_not_of("0123456789") != std::string::npos) fail("non-numeric field '" + *t + "'");
      }
      const CdcParams p{std::stoull(tq), static_cast<std::uint32_t>(std::stoul(tn)),
                        static_cast<std::uint32_t>(std::stoul(td)),
                        static_cast<std::uint32_t>(std::stoul(tk))};
      reg.add(p, BigInt(tv), source.empty() ? "registry file" : source);
    } catch (const ParameterError& e) {
      const std::string what = e.what();
      if (what.rfind("registry line", 0) == 0) throw;
      fail(what);
    } catch (const std::exception& e) {
      fail(std::string("bad number: ") + e.what());
    }
  }
  return reg;
}

KnownValueRegistry KnownValueRegistry::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open registry file '" + path + "'");
  return parse(in);
}

const char* KnownValueRegistry::shipped_text() {
  return "# q n d k value source-tag\n"
         "2 8 4 4 4801 published lower bound\n"
         "2 12 4 4 19676797 published lower bound\n"
         "2 12 6 6 16865630 published lower bound\n";
}

KnownValueRegistry KnownValueRegistry::shipped() {
  std::istringstream in(shipped_text());
  return parse(in);
}

void KnownValueRegistry::merge(const KnownValueRegistry& other) {
  for (const auto& [p, e] : other.entries_) add(p, e.value, e.source);
}

BoundCertificate registry_lookup(const CdcParams& p, const KnownValueRegistry& reg) {
  p.validate();
  struct Candidate {
    BigInt value;
    std::string via;
    std::string source;
  };
  std::vector<Candidate> candidates;
  if (auto e = reg.entry(p)) candidates.push_back({e->value, "entry", e->source});
  if (p.n - p.k != p.k) {
    if (auto e = reg.entry(CdcParams{p.q, p.n, p.d, p.n - p.k})) {
      candidates.push_back({e->value, "dual-entry", e->source + " (orthogonal complement)"});
    }
  }
  const std::uint32_t small = std::min(p.k, p.n - p.k);
  if (p.k == 0 || p.k == p.n || p.d > 2 * small) {
    candidates.push_back({1, "trivial", "single codeword"});
  } else {
    candidates.push_back({lifted_value(p.q, p.n, p.d, p.k), "lifted-mrd", "lifted MRD code"});
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[i].value > candidates[best].value) best = i;
  }
  BoundCertificate c;
  c.rule = Rule::Registry;
  c.params = {{"q", str(p.q)}, {"n", str(p.n)}, {"d", str(p.d)}, {"k", str(p.k)},
              {"via", candidates[best].via}, {"source", candidates[best].source}};
  c.value = candidates[best].value;
  c.expression = p.label();
  return c;
}

BoundCertificate bound_lifted_mrd(const CdcParams& p) {
  p.validate();
  BoundCertificate c;
  c.rule = Rule::LiftedMrd;
  c.params = {{"q", str(p.q)}, {"n", str(p.n)}, {"d", str(p.d)}, {"k", str(p.k)}};
  c.value = lifted_value(p.q, p.n, p.d, p.k);
  const std::uint64_t lo = std::min(p.k, p.n - p.k);
  const std::uint64_t hi = std::max(p.k, p.n - p.k);
  if (lo >= p.d / 2) {
    c.expression = str(p.q) + "^(" + str(hi) + "*(" + str(lo) + "-" + str(p.d / 2) + "+1)) = " +
                   c.value.str();
  } else {
    c.expression = "1";
  }
  return c;
}

BoundCertificate bound_improved_linkage(const CdcParams& p, std::uint32_t m,
                                        const KnownValueRegistry& reg) {
  p.validate();
  if (m < p.k || m >= p.n) {
    throw ParameterError("improved linkage needs k <= m < n (m=" + str(m) + ")");
  }
  const std::uint64_t half = p.d / 2;
  BoundCertificate c;
  c.rule = Rule::ImprovedLinkage;
  c.params = {{"q", str(p.q)}, {"n", str(p.n)}, {"d", str(p.d)}, {"k", str(p.k)}, {"m", str(m)}};
  c.children.push_back(lookup_any(p.q, m, p.d, p.k, reg));
  c.children.push_back(mrd_leaf(p.q, p.n - m, p.k, half));
  // n - m + k - d/2 may drop below k, in which case the second term is empty
  const std::uint64_t tail = std::uint64_t{p.n} - m + p.k >= half ? std::uint64_t{p.n} - m + p.k - half : 0;
  c.children.push_back(lookup_any(p.q, tail, p.d, p.k, reg));
  c.value = c.children[0].value * c.children[1].value + c.children[2].value;
  c.expression = leaf_symbol(c.children[0]) + "*" + leaf_symbol(c.children[1]) + " + " +
                 leaf_symbol(c.children[2]) + " = " + c.children[0].value.str() + "*" +
                 c.children[1].value.str() + " + " + c.children[2].value.str() + " = " +
                 c.value.str();
  return c;
}

BoundCertificate bound_parallel(const CdcParams& p, std::uint32_t n1, std::uint32_t t,
                                Orientation orientation, const KnownValueRegistry& reg) {
  p.validate();
  if (p.k < p.d) throw ParameterError("parallel linkage needs k >= d");
  check_split(p, n1, t);
  BoundCertificate c = two_half_bound(p, n1, t, reg, Rule::ParallelLinkage);
  c.params = {{"q", str(p.q)}, {"n", str(p.n)}, {"d", str(p.d)}, {"k", str(p.k)},
              {"n1", str(n1)}, {"n2", str(p.n - n1)}, {"t", str(t)},
              {"orientation", orientation == Orientation::Forward ? "forward" : "mirrored"}};
  return c;
}

BoundCertificate bound_rrmc(const CdcParams& p, std::uint32_t n1, std::uint32_t t,
                            const KnownValueRegistry& reg) {
  p.validate();
  if (p.d > 2 * p.k) throw ParameterError("rank-restricted variant needs d <= 2k");
  check_split(p, n1, t);
  BoundCertificate c = two_half_bound(p, n1, t, reg, Rule::RrmcVariant);
  c.params = {{"q", str(p.q)}, {"n", str(p.n)}, {"d", str(p.d)}, {"k", str(p.k)},
              {"n1", str(n1)}, {"n2", str(p.n - n1)}, {"t", str(t)},
              {"lambda", "lower bound: MRD subcode of rank <= k-d/2"}};
  return c;
}

BoundCertificate best_bound(const CdcParams& p, const KnownValueRegistry& reg,
                            const BestBoundOptions& options) {
  p.validate();
  struct Candidate {
    Rule rule;
    std::uint32_t split;  // m or n1
    std::uint32_t t;
    Orientation orientation;
  };
  // listed in tie-break order
  std::vector<Candidate> candidates;
  candidates.push_back({Rule::Registry, 0, 0, Orientation::Forward});
  candidates.push_back({Rule::LiftedMrd, 0, 0, Orientation::Forward});
  if (p.d <= 2 * p.k) {
    for (std::uint32_t m = p.k; m < p.n; ++m) {
      candidates.push_back({Rule::ImprovedLinkage, m, 0, Orientation::Forward});
    }
  }
  auto add_splits = [&](Rule rule, bool both_orientations) {
    if (p.n < 2 * p.k) return;
    for (std::uint32_t t = 0; t <= p.n - 2 * p.k; ++t) {
      for (std::uint32_t n1 = p.k; n1 + p.k + t <= p.n; ++n1) {
        candidates.push_back({rule, n1, t, Orientation::Forward});
        if (both_orientations) candidates.push_back({rule, n1, t, Orientation::Mirrored});
      }
    }
  };
  if (p.k >= p.d) add_splits(Rule::ParallelLinkage, true);
  if (p.d <= 2 * p.k) add_splits(Rule::RrmcVariant, false);

  std::vector<std::optional<BoundCertificate>> results(candidates.size());
  auto evaluate = [&](std::size_t i) {
    const Candidate& c = candidates[i];
    switch (c.rule) {
      case Rule::Registry: results[i] = registry_lookup(p, reg); break;
      case Rule::LiftedMrd: results[i] = bound_lifted_mrd(p); break;
      case Rule::ImprovedLinkage: results[i] = bound_improved_linkage(p, c.split, reg); break;
      case Rule::ParallelLinkage: results[i] = bound_parallel(p, c.split, c.t, c.orientation, reg); break;
      case Rule::RrmcVariant: results[i] = bound_rrmc(p, c.split, c.t, reg); break;
      default: break;
    }
  };
  const unsigned workers = std::max(1u, options.threads);
  if (workers == 1) {
    for (std::size_t i = 0; i < candidates.size(); ++i) evaluate(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < candidates.size(); i += workers) evaluate(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i) {
    if (results[i]->value > results[best]->value) best = i;
  }
  return std::move(*results[best]);
}

}  // namespace cdc
