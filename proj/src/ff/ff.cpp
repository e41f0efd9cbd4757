#include <algorithm>
#include <stdexcept>

#include "gfp.hpp"
#include "lietype/ff.hpp"
#include "tower_impl.hpp"

namespace lietype {

namespace {

void require_valid(const Fq& x) {
  if (!x.valid()) throw FieldError("uninitialized field element");
}

std::vector<u64>& scratch(std::size_t n) {
  thread_local std::vector<u64> buf;
  buf.assign(n, 0);
  return buf;
}

}  // namespace

// ---- Fq ----

Fq::Fq(const Level& level, Coeffs coeffs) : level_(&level), c_(std::move(coeffs)) {
  if (c_.size() != level.degree()) throw FieldError("coefficient vector has wrong length");
  for (Coeff c : c_)
    if (c >= level.p()) throw FieldError("coefficient out of range");
}

bool Fq::is_zero() const {
  require_valid(*this);
  return std::all_of(c_.begin(), c_.end(), [](Coeff c) { return c == 0; });
}

bool Fq::is_one() const {
  require_valid(*this);
  if (c_[0] != 1) return false;
  return std::all_of(c_.begin() + 1, c_.end(), [](Coeff c) { return c == 0; });
}

bool Fq::is_prime_field(Coeff* value) const {
  require_valid(*this);
  // GF(p) sits inside every level as the constants.
  if (!std::all_of(c_.begin() + 1, c_.end(), [](Coeff c) { return c == 0; })) return false;
  if (value) *value = c_[0];
  return true;
}

Fq Fq::operator-() const {
  require_valid(*this);
  Fq r = *this;
  const Coeff p = level_->p();
  for (auto& c : r.c_) c = c ? p - c : 0;
  return r;
}

Fq& Fq::operator+=(const Fq& o) {
  require_valid(*this);
  require_valid(o);
  if (level_ != o.level_) {
    auto [a, b] = level_->tower().coerce(*this, o);
    *this = a;
    return *this += b;
  }
  const Coeff p = level_->p();
  for (std::size_t i = 0; i < c_.size(); ++i) {
    Coeff s = c_[i] + o.c_[i];
    if (s >= p || s < c_[i]) s -= p;
    c_[i] = s;
  }
  return *this;
}

Fq& Fq::operator-=(const Fq& o) { return *this += -o; }

Fq& Fq::operator*=(const Fq& o) {
  require_valid(*this);
  require_valid(o);
  if (level_ != o.level_) {
    auto [a, b] = level_->tower().coerce(*this, o);
    *this = a;
    return *this *= b;
  }
  Coeffs out(c_.size());
  level_->mul_raw(c_.data(), o.c_.data(), out.data());
  c_ = std::move(out);
  return *this;
}

Fq& Fq::operator/=(const Fq& o) { return *this *= o.inverse(); }

bool Fq::operator==(const Fq& o) const {
  require_valid(*this);
  require_valid(o);
  if (level_ != o.level_) {
    auto [a, b] = level_->tower().coerce(*this, o);
    return a.c_ == b.c_;
  }
  return c_ == o.c_;
}

Fq Fq::inverse() const {
  require_valid(*this);
  if (is_zero()) throw FieldError("division by zero");
  return Fq(*level_, level_->inverse_raw(c_.data()));
}

Fq Fq::pow(u128 e) const {
  require_valid(*this);
  Fq result = level_->one();
  Fq base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

bool Fq::less(const Fq& o) const {
  require_valid(*this);
  require_valid(o);
  return std::lexicographical_compare(c_.rbegin(), c_.rend(), o.c_.rbegin(), o.c_.rend());
}

// ---- Level ----

Level::Level(detail::TowerImpl* tower, Coeff p, unsigned e, unsigned r, std::vector<Coeff> modulus)
    : tower_(tower), p_(p), e_(e), r_(r), n_(e * r), modulus_(std::move(modulus)) {
  if (auto s = checked_pow(p_, n_)) size_ = *s;
  for (unsigned j = 0; j < n_; ++j) {
    if (modulus_[j] != 0) neg_modulus_.emplace_back(j, p_ - modulus_[j]);
  }
  build_frobenius();
}

void Level::build_frobenius() {
  const gfp::Vec f(modulus_.begin(), modulus_.end());
  const gfp::Vec xp = gfp::powmod(gfp::Vec{0, 1}, p_, f, p_);
  gfp::Vec cur = gfp::rem(gfp::Vec{1}, f, p_);
  frob_p_.assign(n_, Coeffs(n_, 0));
  for (unsigned j = 0; j < n_; ++j) {
    for (std::size_t i = 0; i < cur.size(); ++i) frob_p_[j][i] = cur[i];
    cur = gfp::mulmod(cur, xp, f, p_);
  }
  frob_q_.assign(n_, Coeffs(n_, 0));
  for (unsigned j = 0; j < n_; ++j) {
    Coeffs v(n_, 0);
    v[j] = 1;
    for (unsigned k = 0; k < e_; ++k) v = apply_matrix(frob_p_, v.data());
    frob_q_[j] = v;
  }
  gfp::Mat m(n_, n_);
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = 0; j < n_; ++j) m.at(i, j) = frob_p_[i][j];
  auto mi = gfp::inverse(m, p_);
  if (!mi) throw std::logic_error("Frobenius matrix is singular");
  frob_p_inv_.assign(n_, Coeffs(n_, 0));
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = 0; j < n_; ++j) frob_p_inv_[i][j] = mi->at(i, j);
}

FieldTower Level::tower() const { return FieldTower(tower_->shared_from_this()); }

std::string Level::spec() const {
  return std::to_string(p_) + "^(" + std::to_string(e_) + "*" + std::to_string(r_) + ")";
}

Fq Level::zero() const { return Fq(*this, Coeffs(n_, 0)); }

Fq Level::one() const { return scalar(1); }

Fq Level::scalar(long long v) const {
  long long m = v % static_cast<long long>(p_);
  if (m < 0) m += p_;
  Coeffs c(n_, 0);
  c[0] = static_cast<Coeff>(m);
  return Fq(*this, c);
}

Fq Level::from_coeffs(std::span<const Coeff> c) const {
  if (c.size() > n_) throw FieldError("too many coefficients for level " + spec());
  Coeffs out(n_, 0);
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i] % p_;
  return Fq(*this, out);
}

Fq Level::generator() const {
  Coeffs c(n_, 0);
  if (n_ == 1) {
    c[0] = modulus_[0] ? p_ - modulus_[0] : 0;
  } else {
    c[1] = 1;
  }
  return Fq(*this, c);
}

Fq Level::random(Rng& rng) const {
  std::uniform_int_distribution<Coeff> dist(0, p_ - 1);
  Coeffs c(n_);
  for (auto& x : c) x = dist(rng);
  return Fq(*this, c);
}

Fq Level::element(u128 index) const {
  if (size_ && index >= *size_) throw FieldError("element index out of range");
  Coeffs c(n_, 0);
  for (unsigned i = 0; i < n_ && index > 0; ++i) {
    c[i] = static_cast<Coeff>(index % p_);
    index /= p_;
  }
  return Fq(*this, c);
}

u128 Level::index_of(const Fq& x) const {
  if (!size_) throw FieldError("level too large to index");
  u128 idx = 0;
  for (unsigned i = n_; i-- > 0;) idx = idx * p_ + x.coeffs()[i];
  return idx;
}

Fq Level::frobenius(const Fq& x, long long i) const {
  require_valid(x);
  if (&x.level() != this) return x.level().frobenius(x, i);
  long long k = i % static_cast<long long>(r_);
  if (k < 0) k += r_;
  Coeffs c = x.c_;
  for (long long j = 0; j < k; ++j) c = apply_matrix(frob_q_, c.data());
  return Fq(*this, c);
}

Fq Level::frobenius_p(const Fq& x) const {
  require_valid(x);
  if (&x.level() != this) return x.level().frobenius_p(x);
  return Fq(*this, apply_matrix(frob_p_, x.c_.data()));
}

Fq Level::frobenius_p_inverse(const Fq& x) const {
  require_valid(x);
  if (&x.level() != this) return x.level().frobenius_p_inverse(x);
  return Fq(*this, apply_matrix(frob_p_inv_, x.c_.data()));
}

void Level::mul_raw(const Coeff* a, const Coeff* b, Coeff* out) const {
  const u64 p = p_;
  if (n_ == 1) {
    out[0] = static_cast<Coeff>(u64{a[0]} * b[0] % p);
    return;
  }
  const std::size_t n = n_;
  auto& t = scratch(2 * n - 1);
  const bool small = p_ < (1u << 16);
  if (small) {
    for (std::size_t i = 0; i < n; ++i) {
      const u64 ai = a[i];
      if (!ai) continue;
      for (std::size_t j = 0; j < n; ++j) t[i + j] += ai * b[j];
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const u64 ai = a[i];
      if (!ai) continue;
      for (std::size_t j = 0; j < n; ++j) t[i + j] = (t[i + j] + ai * b[j] % p) % p;
    }
  }
  for (std::size_t k = 2 * n - 2; k >= n; --k) {
    const u64 c = t[k] % p;
    if (!c) continue;
    const std::size_t base = k - n;
    if (small) {
      for (auto [j, nf] : neg_modulus_) t[base + j] += c * nf;
    } else {
      for (auto [j, nf] : neg_modulus_) t[base + j] = (t[base + j] + c * nf % p) % p;
    }
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<Coeff>(t[i] % p);
}

void Level::sub_mul_raw(Coeff* y, const Coeff* a, const Coeff* b) const {
  Coeffs prod(n_);
  mul_raw(a, b, prod.data());
  for (unsigned i = 0; i < n_; ++i) {
    y[i] = y[i] >= prod[i] ? y[i] - prod[i] : y[i] + (p_ - prod[i]);
  }
}

Coeffs Level::apply_matrix(const std::vector<Coeffs>& rows, const Coeff* x) const {
  const std::size_t m = rows.empty() ? 0 : rows[0].size();
  auto& acc = scratch(m);
  const u64 p = p_;
  for (std::size_t j = 0; j < rows.size(); ++j) {
    const u64 xj = x[j];
    if (!xj) continue;
    for (std::size_t i = 0; i < m; ++i) acc[i] = (acc[i] + xj * rows[j][i]) % p;
  }
  return Coeffs(acc.begin(), acc.end());
}

Coeffs Level::inverse_raw(const Coeff* a) const {
  if (n_ == 1) return Coeffs{gfp::inv(a[0], p_)};
  const Coeff p = p_;
  gfp::Vec r0(modulus_.begin(), modulus_.end()), r1(a, a + n_);
  gfp::trim(r1);
  gfp::Vec s0, s1{1};
  while (!r1.empty()) {
    // r0 = q r1 + rem
    gfp::Vec rem = r0, q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, 0);
    const Coeff linv = gfp::inv(r1.back(), p);
    while (rem.size() >= r1.size()) {
      const Coeff t = static_cast<Coeff>(u64{rem.back()} * linv % p);
      const std::size_t shift = rem.size() - r1.size();
      q[shift] = t;
      for (std::size_t j = 0; j < r1.size(); ++j)
        rem[shift + j] = static_cast<Coeff>((rem[shift + j] + u64{p - t} * r1[j]) % p);
      rem.pop_back();
      gfp::trim(rem);
      if (rem.size() < r1.size()) break;
    }
    // s0 - q s1
    gfp::Vec ns(std::max(s0.size(), q.size() + s1.size()), 0);
    for (std::size_t i = 0; i < s0.size(); ++i) ns[i] = s0[i];
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (!q[i]) continue;
      for (std::size_t j = 0; j < s1.size(); ++j)
        ns[i + j] = static_cast<Coeff>((ns[i + j] + u64{p - q[i]} * s1[j]) % p);
    }
    gfp::trim(ns);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(ns);
  }
  if (r0.size() != 1) throw std::logic_error("element not invertible: modulus not irreducible");
  const Coeff cinv = gfp::inv(r0[0], p);
  Coeffs out(n_, 0);
  for (std::size_t i = 0; i < s0.size(); ++i) out[i] = static_cast<Coeff>(u64{s0[i]} * cinv % p);
  return out;
}

// ---- square roots and quadratic equations ----

bool is_square(const Fq& a) {
  require_valid(a);
  const Level& lv = a.level();
  if (lv.p() == 2 || a.is_zero()) return true;
  // a^((P-1)/2) = prod_i (a^((p-1)/2))^(p^i)
  const Fq y = a.pow((lv.p() - 1) / 2);
  Fq acc = y, z = y;
  for (unsigned i = 1; i < lv.degree(); ++i) {
    z = lv.frobenius_p(z);
    acc *= z;
  }
  return acc.is_one();
}

std::optional<Fq> sqrt(const Fq& a) {
  require_valid(a);
  const Level& lv = a.level();
  if (lv.p() == 2) throw FieldError("square roots need odd characteristic");
  if (a.is_zero()) return a;
  if (!is_square(a)) return std::nullopt;
  if (!lv.size()) throw FieldError("level too large for square roots");
  const u128 order = *lv.size() - 1;
  unsigned s = 0;
  u128 t = order;
  while ((t & 1) == 0) {
    t >>= 1;
    ++s;
  }
  Fq c = fixed_nonsquare(lv).pow(t);
  Fq tt = a.pow(t);
  Fq root = a.pow((t + 1) / 2);
  unsigned m = s;
  while (!tt.is_one()) {
    unsigned i = 0;
    Fq probe = tt;
    while (!probe.is_one()) {
      probe *= probe;
      ++i;
    }
    Fq b = c;
    for (unsigned k = 0; k + i + 1 < m; ++k) b *= b;
    m = i;
    c = b * b;
    tt *= c;
    root *= b;
  }
  Fq other = -root;
  return other.less(root) ? other : root;
}

Fq fixed_nonsquare(const Level& level) {
  if (level.p() == 2) throw FieldError("no nonsquares in characteristic 2");
  for (u128 idx = 2;; ++idx) {
    Fq x = level.element(idx);
    if (!is_square(x)) return x;
  }
}

std::optional<std::pair<Fq, Fq>> solve_diag_quadratic(const Fq& alpha, const Fq& beta, const Fq& gamma, Rng& rng) {
  require_valid(alpha);
  require_valid(beta);
  require_valid(gamma);
  if (alpha.is_zero() || beta.is_zero()) throw FieldError("solve_diag_quadratic: zero coefficient");
  const FieldTower tower = alpha.level().tower();
  const Level* lv = &alpha.level();
  for (const Fq* x : {&beta, &gamma}) {
    if (x->level().degree() > lv->degree()) lv = &x->level();
  }
  const Fq al = tower.embed(alpha, *lv), be = tower.embed(beta, *lv), ga = tower.embed(gamma, *lv);
  auto attempt = [&](const Fq& a) -> std::optional<std::pair<Fq, Fq>> {
    const Fq rhs = (ga - al * a * a) / be;
    auto b = sqrt(rhs);
    if (!b) return std::nullopt;
    if (a.is_zero() && b->is_zero()) return std::nullopt;
    return std::make_pair(a, *b);
  };
  for (int i = 0; i < 64; ++i) {
    if (auto r = attempt(lv->random(rng))) return r;
  }
  if (!lv->size() || *lv->size() > (u128{1} << 24)) throw FieldError("solve_diag_quadratic: level too large to scan");
  for (u128 idx = 0; idx < *lv->size(); ++idx) {
    if (auto r = attempt(lv->element(idx))) return r;
  }
  return std::nullopt;
}

bool is_irreducible_mod_p(std::span<const Coeff> monic, Coeff p) {
  gfp::Vec f(monic.begin(), monic.end());
  gfp::trim(f);
  if (f.empty() || f.back() != 1) throw FieldError("is_irreducible_mod_p: polynomial must be monic");
  const std::size_t n = f.size() - 1;
  if (n == 0) return false;
  if (n == 1) return true;
  if (f[0] == 0) return false;
  // h_k = X^(p^k) mod f, iterated with the p-power matrix.
  const gfp::Vec xp = gfp::powmod(gfp::Vec{0, 1}, p, f, p);
  std::vector<gfp::Vec> rows(n);
  gfp::Vec cur{1};
  for (std::size_t j = 0; j < n; ++j) {
    rows[j] = cur;
    rows[j].resize(n, 0);
    cur = gfp::mulmod(cur, xp, f, p);
  }
  auto step = [&](const gfp::Vec& h) {
    gfp::Vec out(n, 0);
    for (std::size_t j = 0; j < h.size(); ++j) {
      if (!h[j]) continue;
      for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<Coeff>((out[i] + u64{h[j]} * rows[j][i]) % p);
    }
    return out;
  };
  std::vector<gfp::Vec> h(n + 1);
  h[0] = gfp::Vec{0, 1};
  h[0].resize(n, 0);
  auto minus_x_gcd_is_one = [&](gfp::Vec v) {
    v[1] = static_cast<Coeff>((v[1] + p - 1) % p);
    return gfp::gcd(v, f, p) == gfp::Vec{1};
  };
  for (std::size_t k = 1; k <= n; ++k) {
    h[k] = step(h[k - 1]);
    if (k == 1 && !minus_x_gcd_is_one(h[1])) return false;
  }
  gfp::Vec x(n, 0);
  x[1] = 1;
  if (h[n] != x) return false;
  for (auto [l, mult] : factor_integer(n)) {
    (void)mult;
    if (!minus_x_gcd_is_one(h[n / l])) return false;
  }
  return true;
}

}  // namespace lietype
