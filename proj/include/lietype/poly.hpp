#pragma once

// Univariate polynomials over a tower level, with factorization.

#include <utility>
#include <vector>

#include "lietype/ff.hpp"

namespace lietype {

class Poly {
 public:
  explicit Poly(const Level& level) : level_(&level) {}
  // Ascending coefficients; trailing zeros are trimmed.
  Poly(const Level& level, std::vector<Fq> coeffs);
  static Poly constant(const Fq& c);
  static Poly x(const Level& level);
  // X - a
  static Poly linear(const Fq& a);
  static Poly from_ints(const Level& level, const std::vector<long long>& coeffs);

  const Level& level() const { return *level_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  const std::vector<Fq>& coeffs() const { return c_; }
  Fq coeff(std::size_t i) const { return i < c_.size() ? c_[i] : level_->zero(); }
  Fq lead() const { return c_.empty() ? level_->zero() : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

  Poly monic() const;
  Fq eval(const Fq& x) const;
  Poly derivative() const;
  // (-1)^deg f(-X)
  Poly negated_variable() const;
  // Applies x -> x^p to every coefficient.
  Poly frobenius_p_coeffs() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Fq& s);
  bool operator==(const Poly& o) const;

  std::string to_string() const;

 private:
  void trim();
  const Level* level_;
  std::vector<Fq> c_;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);  // exact quotient part
Poly gcd(Poly a, Poly b);                       // monic
Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const Poly& a, u128 e, const Poly& m);

// h -> h^p mod m, via precomputed X^(ip) mod m.
class PPowerMod {
 public:
  explicit PPowerMod(const Poly& m);
  Poly apply(const Poly& h) const;
  // h^(p^k) mod m
  Poly apply_n(Poly h, unsigned k) const;

 private:
  Poly m_;
  std::vector<Poly> xp_;
};

struct Factor {
  Poly poly;
  unsigned multiplicity;
};

// Monic irreducible factors with multiplicities; the leading coefficient of
// f is dropped. Sorted by degree then coefficients.
std::vector<Factor> factor(const Poly& f, Rng& rng);
// Distinct roots in the coefficient level.
std::vector<Fq> roots(const Poly& f, Rng& rng);
bool is_irreducible(const Poly& f);

}  // namespace lietype
