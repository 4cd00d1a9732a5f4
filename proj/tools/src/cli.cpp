#include "cdc_cli/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "cdc/bounds.hpp"
#include "cdc/constructions.hpp"
#include "cdc/subspace.hpp"

namespace cdc::cli {

namespace {

constexpr std::uint64_t kDefaultSamplePairs = 1'000'000;

struct BoundArgs {
  std::uint64_t q = 2;
  std::uint32_t n = 0, d = 0, k = 0;
  std::optional<std::uint32_t> n1, t;
  std::string rule;
  std::string orientation = "forward";
  std::string cert = "text";
  std::string registry;
  unsigned threads = 1;
};

struct ConstructArgs {
  std::string method;
  std::uint64_t q = 2;
  std::optional<std::uint32_t> n, k, d, n1, n2;
  std::uint32_t t = 0;
  std::string orientation = "forward";
  std::vector<std::string> bases;
  std::string out;
  std::uint64_t cap = kDefaultEnumerationCap;
  std::uint64_t size_cap = kDefaultCodeSizeCap;
};

struct VerifyArgs {
  std::string file;
  bool full = false;
  std::optional<std::uint64_t> sample;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool quiet = false;
};

struct RankdistArgs {
  std::uint64_t q = 2;
  std::uint32_t m = 0, n = 0, d = 0;
};

struct TableArgs {
  std::string qs = "2";
  std::string ns;
  std::uint32_t d = 0, k = 0;
  std::string registry;
  std::string format = "csv";
  unsigned threads = 1;
};

Orientation parse_orientation(const std::string& s) {
  return s == "mirrored" ? Orientation::Mirrored : Orientation::Forward;
}

KnownValueRegistry load_registry(const std::string& flag) {
  std::string path = flag;
  if (path.empty()) {
    if (const char* env = std::getenv("CDC_REGISTRY"); env && *env) path = env;
  }
  if (path.empty()) return KnownValueRegistry::shipped();
  std::ifstream in(path);
  if (!in) throw Error("cannot open registry file '" + path + "'");
  return KnownValueRegistry::parse(in);
}

// Best value of one rule over the split flags left unspecified.
BoundCertificate bound_for_rule(const BoundArgs& a, const KnownValueRegistry& reg) {
  const CdcParams p{a.q, a.n, a.d, a.k};
  p.validate();
  if (a.rule == "registry") return registry_lookup(p, reg);
  if (a.rule == "lifted-mrd") return bound_lifted_mrd(p);

  std::optional<BoundCertificate> best;
  auto consider = [&](BoundCertificate c) {
    if (!best || c.value > best->value) best = std::move(c);
  };
  if (a.rule == "improved-linkage") {
    if (a.n1) return bound_improved_linkage(p, *a.n1, reg);
    for (std::uint32_t m = p.k; m < p.n; ++m) consider(bound_improved_linkage(p, m, reg));
  } else {
    const Orientation o = parse_orientation(a.orientation);
    auto eval = [&](std::uint32_t n1, std::uint32_t t) {
      return a.rule == "parallel" ? bound_parallel(p, n1, t, o, reg) : bound_rrmc(p, n1, t, reg);
    };
    if (a.n1 && a.t) return eval(*a.n1, *a.t);
    if (p.n >= 2 * p.k) {
      for (std::uint32_t t = 0; t <= p.n - 2 * p.k; ++t) {
        if (a.t && *a.t != t) continue;
        for (std::uint32_t n1 = p.k; n1 + p.k + t <= p.n; ++n1) {
          if (a.n1 && *a.n1 != n1) continue;
          consider(eval(n1, t));
        }
      }
    }
  }
  if (!best) throw ParameterError("no legal split for rule " + a.rule + " at " + p.label());
  return std::move(*best);
}

int cmd_bound(const BoundArgs& a, std::ostream& out) {
  const KnownValueRegistry reg = load_registry(a.registry);
  const CdcParams p{a.q, a.n, a.d, a.k};
  BoundCertificate cert = a.rule.empty() ? best_bound(p, reg, BestBoundOptions{a.threads})
                                         : bound_for_rule(a, reg);
  out << cert.value.str() << '\n';
  if (a.cert == "structured") {
    out << render_structured(cert) << '\n';
  } else {
    out << render_text(cert);
  }
  return kOk;
}

ConstantDimensionCode read_code(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open code file '" + path + "'");
  try {
    return to_code(read_code_file(in));
  } catch (const ParameterError& e) {
    throw Error(path + ": " + e.what());
  }
}

std::uint32_t need(const std::optional<std::uint32_t>& v, const char* flag, const std::string& method) {
  if (!v) throw ParameterError("method " + method + " needs " + flag);
  return *v;
}

ConstantDimensionCode build(const ConstructArgs& a) {
  const Field field = Field::of_order(a.q);
  if (a.method == "lmrd") {
    return lifted_mrd(field, need(a.n, "--n", a.method), need(a.k, "--k", a.method),
                      need(a.d, "--d", a.method), a.cap);
  }
  if (a.method == "linkage") {
    if (a.bases.size() > 1) throw ParameterError("linkage takes a single --base file");
    std::optional<ConstantDimensionCode> base;
    if (a.bases.empty()) {
      // the one-word code {F_q^k}
      const std::uint32_t k = need(a.k, "--k", a.method);
      ConstantDimensionCode single(field, k, k);
      single.insert(Subspace::from_matrix(Matrix::identity(field, k)));
      base = std::move(single);
    } else {
      base = read_code(a.bases[0]);
      if (!(base->field() == field)) throw ParameterError("base code is not over GF(" + std::to_string(a.q) + ")");
      if (a.k && *a.k != base->dim()) throw ParameterError("--k disagrees with the base code");
    }
    const std::uint32_t n = need(a.n, "--n", a.method);
    std::optional<std::uint32_t> d = a.d;
    if (!d && base->claimed_distance()) d = static_cast<std::uint32_t>(*base->claimed_distance());
    if (!d || *d == 0 || *d % 2) throw ParameterError("linkage needs an even --d");
    if (n <= base->ambient_dim()) throw ParameterError("--n must exceed the base code length");
    const std::size_t extra = n - base->ambient_dim();
    if (std::min<std::size_t>(base->dim(), extra) < *d / 2) {
      throw ParameterError("rank distance d/2 exceeds min(k, n - base length)");
    }
    const RankMetricCode q = mrd_code(field, base->dim(), extra, *d / 2, a.cap);
    ConstantDimensionCode c = linkage(ScRepresentation(std::move(*base)), q, a.size_cap);
    return c;
  }
  if (a.method == "parallel" || a.method == "parallel-t") {
    ParallelLinkageParams p;
    p.q = a.q;
    p.k = need(a.k, "--k", a.method);
    p.d = need(a.d, "--d", a.method);
    p.n1 = need(a.n1, "--n1", a.method);
    p.n2 = need(a.n2, "--n2", a.method);
    p.t = a.t;
    p.orientation = parse_orientation(a.orientation);
    if (a.method == "parallel" && a.t != 0) throw ParameterError("use --method parallel-t for t > 0");
    p.validate();
    if (a.bases.empty()) return build_parallel_linkage(p, a.cap, a.size_cap).code;
    if (a.bases.size() != 2) throw ParameterError("parallel methods take --base U V (two files)");
    ScRepresentation u(read_code(a.bases[0]));
    ScRepresentation v(read_code(a.bases[1]));
    const auto half = static_cast<std::uint32_t>(p.d / 2);
    const RankMetricCode q1 = mrd_code(field, p.k, p.n2, half, a.cap);
    const RankMetricCode q2 = restricted_subcode(field, p.k, p.n1 + p.t, half,
                                                 static_cast<std::uint32_t>(p.k) - half, a.cap);
    if (a.method == "parallel") return parallel_linkage(p, u, v, q1, q2, a.size_cap).code;
    return generalized_parallel_linkage(p, u, v, q1, q2, a.size_cap).code;
  }
  throw ParameterError("unknown method '" + a.method + "'");
}

int cmd_construct(const ConstructArgs& a, std::ostream& out) {
  const ConstantDimensionCode code = build(a);
  std::ofstream file(a.out);
  if (!file) throw Error("cannot write '" + a.out + "'");
  write_code_file(file, code);
  file.close();
  if (!file) throw Error("error writing '" + a.out + "'");
  out << "M=" << code.size() << " d_claimed=";
  if (code.claimed_distance()) {
    out << *code.claimed_distance();
  } else {
    out << "none";
  }
  out << '\n';
  return kOk;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  std::ifstream in(a.file);
  if (!in) throw Error("cannot open code file '" + a.file + "'");
  CodeFile file = [&] {
    try {
      return read_code_file(in);
    } catch (const ParameterError& e) {
      throw Error(a.file + ": " + e.what());
    }
  }();

  VerifyOptions opts;
  opts.threads = a.threads;
  const std::size_t m = file.words.size();
  bool sampled = false;
  if (a.sample) {
    opts.mode = SampledCheck{*a.sample, a.seed};
    sampled = true;
  } else if (!a.full && m > kFullVerifyDefaultLimit) {
    opts.mode = SampledCheck{kDefaultSamplePairs, a.seed};
    sampled = true;
  }
  const std::uint64_t total = sampled ? std::get<SampledCheck>(opts.mode).pairs
                                      : static_cast<std::uint64_t>(m) * (m - (m ? 1 : 0)) / 2;
  int last_decile = -1;
  if (!a.quiet && total >= 5'000'000) {
    opts.progress = [&](double f) {
      const int decile = static_cast<int>(f * 10);
      if (decile > last_decile) {
        last_decile = decile;
        err << "verify: " << decile * 10 << "%\n" << std::flush;
      }
    };
  }
  const VerifyReport r = verify_cdc(std::span<const Subspace>(file.words), file.d, opts);
  if (!r.ok) {
    out << "FAIL pair=" << r.violating_pair->first << ',' << r.violating_pair->second
        << " distance=" << *r.violating_distance << '\n';
    return kVerifyFailed;
  }
  out << "ok min_distance=";
  if (r.observed_min_distance) {
    out << *r.observed_min_distance;
  } else {
    out << "none";
  }
  if (sampled) out << " sampled_pairs=" << r.pairs_checked << " (not certified)";
  out << '\n';
  return kOk;
}

int cmd_rankdist(const RankdistArgs& a, std::ostream& out) {
  const MrdCodeSpec spec{a.q, a.m, a.n, a.d};
  spec.validate();
  const RankDistribution dist = delsarte_rank_distribution(spec);
  for (std::uint32_t r = dist.spec.d; r <= dist.spec.n; ++r) {
    out << "r " << r << ' ' << dist.count(r).str() << '\n';
  }
  out << "total " << dist.total().str() << '\n';
  return kOk;
}

std::vector<std::uint64_t> parse_q_list(const std::string& s) {
  std::vector<std::uint64_t> qs;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw ParameterError("bad --q list '" + s + "'");
    }
    qs.push_back(std::stoull(item));
  }
  if (qs.empty()) throw ParameterError("empty --q list");
  return qs;
}

// "a..b", "a-b" or a single value; b < a is an empty range.
std::pair<std::uint32_t, std::uint32_t> parse_range(const std::string& s) {
  auto number = [&](const std::string& t) -> std::uint32_t {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
      throw ParameterError("bad --n range '" + s + "'");
    }
    return static_cast<std::uint32_t>(std::stoul(t));
  };
  if (auto pos = s.find(".."); pos != std::string::npos) {
    return {number(s.substr(0, pos)), number(s.substr(pos + 2))};
  }
  if (auto pos = s.find('-'); pos != std::string::npos) {
    return {number(s.substr(0, pos)), number(s.substr(pos + 1))};
  }
  const std::uint32_t v = number(s);
  return {v, v};
}

int cmd_table(const TableArgs& a, std::ostream& out) {
  const KnownValueRegistry reg = load_registry(a.registry);
  const auto qs = parse_q_list(a.qs);
  const auto [lo, hi] = parse_range(a.ns);
  const bool md = a.format == "markdown";
  if (md) {
    out << "| q | n | d | k | value | rule |\n|---|---|---|---|---|---|\n";
  } else {
    out << "q,n,d,k,value,rule\n";
  }
  for (std::uint64_t q : qs) {
    for (std::uint32_t n = lo; n <= hi && hi >= lo; ++n) {
      std::string value = "0";
      std::string rule = "none";
      if (a.k <= n) {
        const BoundCertificate c = best_bound(CdcParams{q, n, a.d, a.k}, reg, BestBoundOptions{a.threads});
        value = c.value.str();
        rule = rule_name(c.rule);
      } else {
        CdcParams{q, n, a.d, 0}.validate();
      }
      if (md) {
        out << "| " << q << " | " << n << " | " << a.d << " | " << a.k << " | " << value << " | "
            << rule << " |\n";
      } else {
        out << q << ',' << n << ',' << a.d << ',' << a.k << ',' << value << ',' << rule << '\n';
      }
    }
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounds and explicit constructions for constant dimension subspace codes", "cdcbound"};
  app.require_subcommand(1);

  BoundArgs ba;
  auto* bound = app.add_subcommand("bound", "Lower bound on A_q(n,d,k) with a replayable certificate");
  bound->add_option("--q", ba.q, "Field order")->required();
  bound->add_option("--n", ba.n, "Ambient dimension")->required();
  bound->add_option("--d", ba.d, "Subspace distance (even)")->required();
  bound->add_option("--k", ba.k, "Subspace dimension")->required();
  bound->add_option("--rule", ba.rule, "Evaluate one rule instead of the best of all")
      ->check(CLI::IsMember({"registry", "lifted-mrd", "improved-linkage", "parallel", "rrmc"}));
  bound->add_option("--n1", ba.n1, "Base segment length (m for improved-linkage)");
  bound->add_option("--t", ba.t, "Shift of the second half");
  bound->add_option("--orientation", ba.orientation)->check(CLI::IsMember({"forward", "mirrored"}));
  bound->add_option("--cert", ba.cert, "Certificate format")->check(CLI::IsMember({"text", "structured"}));
  bound->add_option("--registry", ba.registry, "Known values file (default: $CDC_REGISTRY, else built in)");
  bound->add_option("--threads", ba.threads)->check(CLI::PositiveNumber);

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build an explicit code and write it to a code file");
  construct->add_option("--method", ca.method)
      ->required()
      ->check(CLI::IsMember({"lmrd", "linkage", "parallel", "parallel-t"}));
  construct->add_option("--q", ca.q, "Field order");
  construct->add_option("--n", ca.n, "Ambient dimension (lmrd, linkage)");
  construct->add_option("--k", ca.k);
  construct->add_option("--d", ca.d);
  construct->add_option("--n1", ca.n1);
  construct->add_option("--n2", ca.n2);
  construct->add_option("--t", ca.t);
  construct->add_option("--orientation", ca.orientation)->check(CLI::IsMember({"forward", "mirrored"}));
  construct->add_option("--base", ca.bases, "Base code file(s): one for linkage, U and V for parallel");
  construct->add_option("--out", ca.out, "Output code file")->required();
  construct->add_option("--cap", ca.cap, "Rank-metric enumeration cap");
  construct->add_option("--size-cap", ca.size_cap, "Code size cap");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check the claimed minimum distance of a code file");
  verify->add_option("file", va.file)->required();
  auto* full = verify->add_flag("--full", va.full, "Check every pair");
  auto* sample = verify->add_option("--sample", va.sample, "Check N pseudorandom pairs");
  verify->add_option("--seed", va.seed)->needs(sample);
  full->excludes(sample);
  verify->add_option("--threads", va.threads)->check(CLI::PositiveNumber);
  verify->add_flag("--quiet", va.quiet, "No progress output");

  RankdistArgs ra;
  auto* rankdist = app.add_subcommand("rankdist", "Rank distribution of an MRD code");
  rankdist->add_option("--q", ra.q)->required();
  rankdist->add_option("--m", ra.m)->required();
  rankdist->add_option("--n", ra.n)->required();
  rankdist->add_option("--d", ra.d)->required();

  TableArgs ta;
  auto* table = app.add_subcommand("table", "Best bounds over a parameter grid");
  table->add_option("--q", ta.qs, "Comma separated field orders")->required();
  table->add_option("--n", ta.ns, "Range a..b")->required();
  table->add_option("--d", ta.d)->required();
  table->add_option("--k", ta.k)->required();
  table->add_option("--registry", ta.registry);
  table->add_option("--format", ta.format)->check(CLI::IsMember({"csv", "markdown"}));
  table->add_option("--threads", ta.threads)->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (auto* sub : app.get_subcommands()) target = sub;
    out << target->help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    const CLI::App* target = &app;
    for (auto* sub : app.get_subcommands()) target = sub;
    err << target->help();
    return kUsage;
  }

  try {
    if (*bound) return cmd_bound(ba, out);
    if (*construct) return cmd_construct(ca, out);
    if (*verify) return cmd_verify(va, out, err);
    if (*rankdist) return cmd_rankdist(ra, out);
    if (*table) return cmd_table(ta, out);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}

}  // namespace cdc::cli
