#include "cdc/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

namespace cdc {

using Repr = Field::Repr;

struct Field::Impl {
  std::uint32_t p = 0;
  std::uint64_t q = 0;
  std::uint32_t deg = 1;                 // over base
  std::uint32_t prime_digits = 1;        // log_p q
  std::shared_ptr<const Impl> base;      // null for F_p
  std::vector<Repr> modulus;             // over base, lowest first, monic
  std::vector<Repr> exp_table;           // 2(q-1) entries when tabulated
  std::vector<std::uint32_t> log_table;  // q entries when tabulated

  bool is_prime() const { return base == nullptr; }
  bool tabulated() const { return !log_table.empty(); }
};

namespace {

using ImplPtr = std::shared_ptr<const Field::Impl>;

constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 16;

Repr add_impl(const Field::Impl& f, Repr a, Repr b) {
  if (f.p == 2) return a ^ b;
  if (f.is_prime()) {
    std::uint32_t s = a + b;
    return s >= f.p ? s - f.p : s;
  }
  Repr out = 0;
  std::uint64_t scale = 1;
  for (std::uint32_t i = 0; i < f.prime_digits; ++i) {
    std::uint32_t s = a % f.p + b % f.p;
    if (s >= f.p) s -= f.p;
    out += static_cast<Repr>(s * scale);
    a /= f.p;
    b /= f.p;
    scale *= f.p;
  }
  return out;
}

Repr neg_impl(const Field::Impl& f, Repr a) {
  if (f.p == 2) return a;
  if (f.is_prime()) return a == 0 ? 0 : f.p - a;
  Repr out = 0;
  std::uint64_t scale = 1;
  for (std::uint32_t i = 0; i < f.prime_digits; ++i) {
    std::uint32_t d = a % f.p;
    out += static_cast<Repr>((d == 0 ? 0 : f.p - d) * scale);
    a /= f.p;
    scale *= f.p;
  }
  return out;
}

Repr mul_impl(const Field::Impl& f, Repr a, Repr b);

void unpack(const Field::Impl& f, Repr a, std::vector<Repr>& coords) {
  const std::uint64_t bq = f.base->q;
  coords.assign(f.deg, 0);
  for (std::uint32_t i = 0; i < f.deg; ++i) {
    coords[i] = static_cast<Repr>(a % bq);
    a = static_cast<Repr>(a / bq);
  }
}

Repr pack(const Field::Impl& f, std::span<const Repr> coords) {
  const std::uint64_t bq = f.base->q;
  std::uint64_t out = 0;
  for (std::size_t i = coords.size(); i-- > 0;) out = out * bq + coords[i];
  return static_cast<Repr>(out);
}

// Schoolbook product reduced modulo the monic modulus; used to build tables
// and for fields too large to tabulate.
Repr poly_mul(const Field::Impl& f, Repr a, Repr b) {
  const Field::Impl& base = *f.base;
  std::vector<Repr> ca, cb;
  unpack(f, a, ca);
  unpack(f, b, cb);
  std::vector<Repr> prod(2 * f.deg - 1, 0);
  for (std::uint32_t i = 0; i < f.deg; ++i) {
    if (ca[i] == 0) continue;
    for (std::uint32_t j = 0; j < f.deg; ++j) {
      if (cb[j] == 0) continue;
      prod[i + j] = add_impl(base, prod[i + j], mul_impl(base, ca[i], cb[j]));
    }
  }
  for (std::size_t top = prod.size(); top-- > f.deg;) {
    const Repr c = prod[top];
    if (c == 0) continue;
    prod[top] = 0;
    const std::size_t shift = top - f.deg;
    for (std::uint32_t i = 0; i < f.deg; ++i) {
      if (f.modulus[i] == 0) continue;
      prod[shift + i] = add_impl(base, prod[shift + i], neg_impl(base, mul_impl(base, c, f.modulus[i])));
    }
  }
  prod.resize(f.deg);
  return pack(f, prod);
}

Repr mul_impl(const Field::Impl& f, Repr a, Repr b) {
  if (a == 0 || b == 0) return 0;
  if (f.is_prime()) return static_cast<Repr>(std::uint64_t{a} * b % f.p);
  if (f.tabulated()) return f.exp_table[f.log_table[a] + f.log_table[b]];
  return poly_mul(f, a, b);
}

Repr pow_impl(const Field::Impl& f, Repr a, std::uint64_t e) {
  Repr result = 1;
  while (e > 0) {
    if (e & 1) result = mul_impl(f, result, a);
    a = mul_impl(f, a, a);
    e >>= 1;
  }
  return result;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

void build_tables(Field::Impl& f) {
  const std::uint64_t order = f.q - 1;
  const auto factors = prime_factors(order);
  Repr generator = 0;
  for (std::uint64_t g = 1; g < f.q; ++g) {
    bool primitive = true;
    for (std::uint64_t r : factors) {
      if (pow_impl(f, static_cast<Repr>(g), order / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      generator = static_cast<Repr>(g);
      break;
    }
  }
  std::vector<Repr> exp(2 * order);
  std::vector<std::uint32_t> log(f.q, 0);
  Repr x = 1;
  for (std::uint64_t i = 0; i < order; ++i) {
    exp[i] = x;
    log[x] = static_cast<std::uint32_t>(i);
    x = poly_mul(f, x, generator);
  }
  for (std::uint64_t i = order; i < 2 * order; ++i) exp[i] = exp[i - order];
  f.exp_table = std::move(exp);
  f.log_table = std::move(log);
}

// Polynomials over a field impl, lowest coefficient first.
using Poly = std::vector<Repr>;

// Remainder of `a` modulo monic `b`.
Poly poly_rem(const Field::Impl& f, Poly a, const Poly& b) {
  const std::size_t db = b.size() - 1;
  for (std::size_t top = a.size(); top-- > db;) {
    const Repr c = a[top];
    if (c == 0) continue;
    const std::size_t shift = top - db;
    for (std::size_t i = 0; i <= db; ++i) {
      if (b[i] == 0) continue;
      a[shift + i] = add_impl(f, a[shift + i], neg_impl(f, mul_impl(f, c, b[i])));
    }
  }
  a.resize(db);
  return a;
}

bool irreducible_impl(const Field::Impl& base, const Poly& poly) {
  const std::size_t deg = poly.size() - 1;
  if (deg <= 1) return deg == 1;
  for (std::size_t dd = 1; dd <= deg / 2; ++dd) {
    // monic divisors of degree dd, lower coefficients enumerated as base-q digits
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < dd; ++i) count *= base.q;
    Poly divisor(dd + 1, 0);
    divisor[dd] = 1;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::uint64_t c = code;
      for (std::size_t i = 0; i < dd; ++i) {
        divisor[i] = static_cast<Repr>(c % base.q);
        c /= base.q;
      }
      const Poly rem = poly_rem(base, poly, divisor);
      if (std::all_of(rem.begin(), rem.end(), [](Repr r) { return r == 0; })) return false;
    }
  }
  return true;
}

Poly smallest_irreducible(const Field::Impl& base, std::uint32_t deg) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < deg; ++i) count *= base.q;
  Poly poly(deg + 1, 0);
  poly[deg] = 1;
  for (std::uint64_t code = 0; code < count; ++code) {
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < deg; ++i) {
      poly[i] = static_cast<Repr>(c % base.q);
      c /= base.q;
    }
    if (irreducible_impl(base, poly)) return poly;
  }
  throw Error("no irreducible polynomial found");  // unreachable for finite fields
}

ImplPtr make_prime(std::uint32_t p) {
  auto f = std::make_shared<Field::Impl>();
  f->p = p;
  f->q = p;
  f->deg = 1;
  f->prime_digits = 1;
  f->modulus = {0, 1};
  return f;
}

ImplPtr make_extension(const ImplPtr& base, std::uint32_t m) {
  auto f = std::make_shared<Field::Impl>();
  f->p = base->p;
  f->base = base;
  f->deg = m;
  f->q = base->q;
  for (std::uint32_t i = 1; i < m; ++i) f->q *= base->q;
  f->prime_digits = base->prime_digits * m;
  f->modulus = smallest_irreducible(*base, m);
  if (f->q <= kTableLimit && f->q > 2) build_tables(*f);
  return f;
}

std::uint64_t checked_power(std::uint64_t base, std::uint32_t e, std::uint64_t cap,
                            const char* what) {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    if (q > cap / base) {
      throw CapExceeded(std::string(what) + " cap exceeded: order above " + std::to_string(cap));
    }
    q *= base;
  }
  if (q > cap) {
    throw CapExceeded(std::string(what) + " cap exceeded: order above " + std::to_string(cap));
  }
  return q;
}

// Fields are immutable and deterministic, so equal requests share one instance.
std::mutex cache_mutex;
std::map<std::tuple<const Field::Impl*, std::uint32_t, std::uint32_t>, ImplPtr>& cache() {
  static std::map<std::tuple<const Field::Impl*, std::uint32_t, std::uint32_t>, ImplPtr> c;
  return c;
}

ImplPtr cached(const Field::Impl* base, std::uint32_t p, std::uint32_t m,
               const auto& build) {
  const auto key = std::make_tuple(base, p, m);
  {
    std::lock_guard lock(cache_mutex);
    auto it = cache().find(key);
    if (it != cache().end()) return it->second;
  }
  ImplPtr made = build();
  std::lock_guard lock(cache_mutex);
  return cache().emplace(key, made).first->second;
}

bool same_impl(const Field::Impl* a, const Field::Impl* b) {
  if (a == b) return true;
  if (a == nullptr || b == nullptr) return false;
  return a->p == b->p && a->q == b->q && a->deg == b->deg && a->modulus == b->modulus &&
         same_impl(a->base.get(), b->base.get());
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Field Field::create(std::uint32_t p, std::uint32_t e, std::uint64_t cap) {
  if (!is_prime(p)) throw ParameterError(std::to_string(p) + " is not prime");
  if (e == 0) throw ParameterError("field degree must be at least 1");
  checked_power(p, e, std::min(cap, kExtensionFieldCap), "field size");
  ImplPtr prime = cached(nullptr, p, 1, [p] { return make_prime(p); });
  if (e == 1) return Field(prime);
  return Field(cached(prime.get(), p, e, [&] { return make_extension(prime, e); }));
}

Field Field::of_order(std::uint64_t q, std::uint64_t cap) {
  if (q < 2) throw ParameterError("field order must be at least 2");
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  std::uint32_t e = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) throw ParameterError(std::to_string(q) + " is not a prime power");
  if (q > cap) throw CapExceeded("field size cap exceeded: order above " + std::to_string(cap));
  return create(static_cast<std::uint32_t>(p), e, cap);
}

Field Field::extend(std::uint32_t m, std::uint64_t cap) const {
  if (m == 0) throw ParameterError("extension degree must be at least 1");
  checked_power(impl_->q, m, std::min(cap, kExtensionFieldCap), "extension field");
  if (m == 1) return *this;
  return Field(cached(impl_.get(), impl_->p, m, [&] { return make_extension(impl_, m); }));
}

std::uint32_t Field::characteristic() const { return impl_->p; }
std::uint32_t Field::degree() const { return impl_->deg; }
std::uint64_t Field::order() const { return impl_->q; }
bool Field::is_prime_field() const { return impl_->is_prime(); }
Field Field::base() const { return impl_->is_prime() ? *this : Field(impl_->base); }
std::span<const Repr> Field::modulus() const { return impl_->modulus; }

Repr Field::add(Repr a, Repr b) const { return add_impl(*impl_, a, b); }
Repr Field::sub(Repr a, Repr b) const { return add_impl(*impl_, a, neg_impl(*impl_, b)); }
Repr Field::neg(Repr a) const { return neg_impl(*impl_, a); }
Repr Field::mul(Repr a, Repr b) const { return mul_impl(*impl_, a, b); }

Repr Field::inv(Repr a) const {
  if (a == 0) throw ParameterError("inverse of zero");
  if (impl_->tabulated()) {
    return impl_->exp_table[(impl_->q - 1 - impl_->log_table[a]) % (impl_->q - 1)];
  }
  return pow_impl(*impl_, a, impl_->q - 2);
}

Repr Field::pow(Repr a, std::uint64_t exponent) const { return pow_impl(*impl_, a, exponent); }

std::vector<Repr> Field::coordinates(Repr a) const {
  if (impl_->is_prime()) return {a};
  std::vector<Repr> out;
  unpack(*impl_, a, out);
  return out;
}

Repr Field::from_coordinates(std::span<const Repr> coords) const {
  if (coords.size() != impl_->deg) throw ParameterError("coordinate vector has wrong length");
  const std::uint64_t bq = impl_->is_prime() ? impl_->q : impl_->base->q;
  for (Repr c : coords) {
    if (c >= bq) throw ParameterError("coordinate outside base field");
  }
  if (impl_->is_prime()) return coords[0];
  return pack(*impl_, coords);
}

std::string Field::name() const { return "GF(" + std::to_string(impl_->q) + ")"; }

bool operator==(const Field& a, const Field& b) { return same_impl(a.impl_.get(), b.impl_.get()); }

Extension extension_embed(const Field& base, std::uint32_t m, std::uint64_t cap) {
  return Extension{base, base.extend(m, cap), m};
}

bool is_irreducible(const Field& base, std::span<const Repr> poly) {
  if (poly.empty() || poly.back() != 1) throw ParameterError("polynomial must be monic");
  for (Repr c : poly) {
    if (!base.contains(c)) throw ParameterError("coefficient outside field");
  }
  return irreducible_impl(*base.impl_, Poly(poly.begin(), poly.end()));
}

FieldElement::FieldElement(Field field, Field::Repr repr) : field_(std::move(field)), repr_(repr) {
  if (!field_.contains(repr_)) throw ParameterError("element repr outside field");
}

namespace {
void require_same(const FieldElement& a, const FieldElement& b) {
  if (!(a.field() == b.field())) throw ParameterError("field elements belong to different fields");
}
}  // namespace

FieldElement FieldElement::inv() const { return {field_, field_.inv(repr_)}; }

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  return {a.field_, a.field_.add(a.repr_, b.repr_)};
}
FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  return {a.field_, a.field_.sub(a.repr_, b.repr_)};
}
FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  return {a.field_, a.field_.mul(a.repr_, b.repr_)};
}
FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  return {a.field_, a.field_.mul(a.repr_, b.field_.inv(b.repr_))};
}
FieldElement operator-(const FieldElement& a) { return {a.field_, a.field_.neg(a.repr_)}; }
bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.field_ == b.field_ && a.repr_ == b.repr_;
}

}  // namespace cdc
