#include "lietype/poly.hpp"

#include <algorithm>
#include <sstream>

namespace lietype {

Poly::Poly(const Level& level, std::vector<Fq> coeffs) : level_(&level), c_(std::move(coeffs)) {
  for (auto& c : c_) {
    if (&c.level() != level_) c = level.tower().embed(c, level);
  }
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::constant(const Fq& c) { return Poly(c.level(), {c}); }

Poly Poly::x(const Level& level) { return Poly(level, {level.zero(), level.one()}); }

Poly Poly::linear(const Fq& a) { return Poly(a.level(), {-a, a.level().one()}); }

Poly Poly::from_ints(const Level& level, const std::vector<long long>& coeffs) {
  std::vector<Fq> c;
  for (long long v : coeffs) c.push_back(level.scalar(v));
  return Poly(level, std::move(c));
}

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  const Fq inv = c_.back().inverse();
  Poly r = *this;
  for (auto& c : r.c_) c *= inv;
  return r;
}

Fq Poly::eval(const Fq& x) const {
  Fq acc = level_->zero();
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

Poly Poly::derivative() const {
  std::vector<Fq> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * level_->scalar(static_cast<long long>(i % level_->p())));
  return Poly(*level_, std::move(d));
}

Poly Poly::negated_variable() const {
  Poly r = *this;
  for (std::size_t i = 0; i < r.c_.size(); ++i)
    if (i % 2 == 1) r.c_[i] = -r.c_[i];
  if (degree() % 2 == 1)
    for (auto& c : r.c_) c = -c;
  return r;
}

Poly Poly::frobenius_p_coeffs() const {
  Poly r = *this;
  for (auto& c : r.c_) c = level_->frobenius_p(c);
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), level_->zero());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(a.level());
  const Level& lv = a.level();
  std::vector<Fq> out(a.c_.size() + b.c_.size() - 1, lv.zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(lv, std::move(out));
}

Poly operator*(const Poly& a, const Fq& s) {
  Poly r = a;
  for (auto& c : r.c_) c *= s;
  r.trim();
  return r;
}

bool Poly::operator==(const Poly& o) const { return c_ == o.c_; }

std::string Poly::to_string() const {
  if (c_.empty()) return "0";
  auto coeff_str = [](const Fq& c) {
    Coeff v;
    if (c.is_prime_field(&v)) return std::to_string(v);
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < c.coeffs().size(); ++i) os << (i ? "," : "") << c.coeffs()[i];
    os << "]";
    return os.str();
  };
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    const bool unit = c_[i].is_one();
    if (i == 0 || !unit) os << coeff_str(c_[i]);
    if (i > 0) os << (unit ? "" : "*") << "X" << (i > 1 ? "^" + std::to_string(i) : "");
  }
  return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw FieldError("polynomial division by zero");
  const Level& lv = a.level();
  if (a.degree() < b.degree()) return {Poly(lv), a};
  std::vector<Fq> rem = a.coeffs();
  std::vector<Fq> quo(a.degree() - b.degree() + 1, lv.zero());
  const Fq linv = b.lead().inverse();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  for (std::size_t k = rem.size(); k-- > db;) {
    if (rem[k].is_zero()) continue;
    const Fq t = rem[k] * linv;
    quo[k - db] = t;
    for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] -= t * bc[j];
  }
  rem.resize(db);
  return {Poly(lv, std::move(quo)), Poly(lv, std::move(rem))};
}

Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

Poly powmod(const Poly& a, u128 e, const Poly& m) {
  Poly result = Poly::constant(a.level().one()) % m;
  Poly base = a % m;
  while (e) {
    if (e & 1) result = mulmod(result, base, m);
    e >>= 1;
    if (e) base = mulmod(base, base, m);
  }
  return result;
}

PPowerMod::PPowerMod(const Poly& m) : m_(m) {
  const Level& lv = m.level();
  const Poly xp = powmod(Poly::x(lv), lv.p(), m);
  Poly cur = Poly::constant(lv.one()) % m;
  for (int i = 0; i < m.degree(); ++i) {
    xp_.push_back(cur);
    cur = mulmod(cur, xp, m);
  }
}

Poly PPowerMod::apply(const Poly& h) const {
  const Level& lv = m_.level();
  const Poly r = h.degree() >= m_.degree() ? h % m_ : h;
  Poly out(lv);
  for (std::size_t i = 0; i < r.coeffs().size(); ++i) {
    if (r.coeffs()[i].is_zero()) continue;
    out += xp_[i] * lv.frobenius_p(r.coeffs()[i]);
  }
  return out;
}

Poly PPowerMod::apply_n(Poly h, unsigned k) const {
  for (unsigned i = 0; i < k; ++i) h = apply(h);
  return h;
}

namespace {

Poly pth_root(const Poly& f) {
  const Level& lv = f.level();
  const std::size_t p = lv.p();
  std::vector<Fq> r;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) r.push_back(lv.frobenius_p_inverse(f.coeffs()[i]));
  return Poly(lv, std::move(r));
}

void squarefree(const Poly& f, unsigned scale, std::vector<Factor>& out) {
  if (f.degree() <= 0) return;
  const Poly fp = f.derivative();
  if (fp.is_zero()) {
    squarefree(pth_root(f), scale * f.level().p(), out);
    return;
  }
  Poly c = gcd(f, fp);
  Poly w = f / c;
  unsigned i = 1;
  while (w.degree() > 0) {
    Poly y = gcd(w, c);
    Poly z = w / y;
    if (z.degree() > 0) out.push_back({z.monic(), i * scale});
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) squarefree(pth_root(c.monic()), scale * f.level().p(), out);
}

// (factor product, degree of each irreducible piece)
std::vector<std::pair<Poly, unsigned>> distinct_degree(Poly g) {
  const Level& lv = g.level();
  std::vector<std::pair<Poly, unsigned>> out;
  const Poly x = Poly::x(lv);
  PPowerMod pp(g);
  Poly h = x % g;
  for (unsigned i = 1; g.degree() >= 2 * static_cast<int>(i); ++i) {
    h = pp.apply_n(h, lv.degree());
    Poly d = gcd(g, h - x);
    if (d.degree() > 0) {
      out.emplace_back(d, i);
      g = g / d;
      h = h % g;
      pp = PPowerMod(g);
    }
  }
  if (g.degree() > 0) out.emplace_back(g.monic(), static_cast<unsigned>(g.degree()));
  return out;
}

void equal_degree(const Poly& f, unsigned d, Rng& rng, std::vector<Poly>& out) {
  if (f.degree() == static_cast<int>(d)) {
    out.push_back(f.monic());
    return;
  }
  const Level& lv = f.level();
  const PPowerMod pp(f);
  const unsigned steps = lv.degree() * d;
  while (true) {
    std::vector<Fq> rc;
    for (int i = 0; i < f.degree(); ++i) rc.push_back(lv.random(rng));
    const Poly a(lv, rc);
    if (a.degree() <= 0) continue;
    Poly b(lv);
    if (lv.p() == 2) {
      // trace to GF(2)
      Poly t = a;
      b = a;
      for (unsigned i = 1; i < steps; ++i) {
        t = pp.apply(t);
        b += t;
      }
    } else {
      const Poly y = powmod(a, (lv.p() - 1) / 2, f);
      Poly z = y;
      b = y;
      for (unsigned i = 1; i < steps; ++i) {
        z = pp.apply(z);
        b = mulmod(b, z, f);
      }
      b -= Poly::constant(lv.one());
    }
    Poly g = gcd(f, b);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree((f / g).monic(), d, rng, out);
      return;
    }
  }
}

bool poly_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t i = a.coeffs().size(); i-- > 0;) {
    if (a.coeffs()[i] == b.coeffs()[i]) continue;
    return a.coeffs()[i].less(b.coeffs()[i]);
  }
  return false;
}

}  // namespace

std::vector<Factor> factor(const Poly& f, Rng& rng) {
  if (f.is_zero()) throw FieldError("cannot factor the zero polynomial");
  std::vector<Factor> sqf;
  squarefree(f.monic(), 1, sqf);
  std::vector<Factor> out;
  for (const auto& [g, mult] : sqf) {
    for (const auto& [block, d] : distinct_degree(g)) {
      std::vector<Poly> pieces;
      equal_degree(block, d, rng, pieces);
      for (auto& piece : pieces) out.push_back({piece, mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
    if (a.poly == b.poly) return a.multiplicity < b.multiplicity;
    return poly_less(a.poly, b.poly);
  });
  // merge equal factors coming from different squarefree layers
  std::vector<Factor> merged;
  for (auto& fac : out) {
    if (!merged.empty() && merged.back().poly == fac.poly) {
      merged.back().multiplicity += fac.multiplicity;
    } else {
      merged.push_back(fac);
    }
  }
  return merged;
}

std::vector<Fq> roots(const Poly& f, Rng& rng) {
  std::vector<Fq> out;
  if (f.degree() <= 0) return out;
  const Level& lv = f.level();
  // restrict to the product of linear factors first: gcd(f, X^P - X)
  Poly sq = f.monic();
  const Poly x = Poly::x(lv);
  const PPowerMod pp(sq);
  Poly lin = gcd(sq, pp.apply_n(x % sq, lv.degree()) - x);
  if (lin.degree() <= 0) return out;
  std::vector<Poly> pieces;
  equal_degree(lin, 1, rng, pieces);
  for (const auto& piece : pieces) out.push_back(-piece.coeffs()[0]);
  std::sort(out.begin(), out.end(), [](const Fq& a, const Fq& b) { return a.less(b); });
  return out;
}

bool is_irreducible(const Poly& f) {
  const int n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  const Poly g = f.monic();
  const Level& lv = g.level();
  const Poly x = Poly::x(lv);
  const PPowerMod pp(g);
  std::vector<Poly> h{x % g};
  for (int k = 1; k <= n; ++k) h.push_back(pp.apply_n(h.back(), lv.degree()));
  if (!(h[n] == x % g)) return false;
  for (auto [l, mult] : factor_integer(static_cast<u64>(n))) {
    (void)mult;
    if (gcd(g, h[n / l] - x).degree() != 0) return false;
  }
  return true;
}

}  // namespace lietype
