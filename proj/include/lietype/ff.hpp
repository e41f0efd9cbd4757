#pragma once

// Finite field towers GF(p) <= k = GF(p^e) <= k_r with coherent embeddings.
// Elements are stored absolutely over GF(p) as little-endian coefficient
// vectors in the root of each level's defining polynomial.

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lietype/intmath.hpp"

namespace lietype {

using Coeff = std::uint32_t;
using Coeffs = boost::container::small_vector<Coeff, 4>;
using Rng = std::mt19937_64;

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Level;
class FieldTower;
namespace detail {
struct TowerImpl;
}

class Fq {
 public:
  Fq() = default;
  Fq(const Level& level, Coeffs coeffs);

  bool valid() const { return level_ != nullptr; }
  const Level& level() const { return *level_; }
  std::span<const Coeff> coeffs() const { return {c_.data(), c_.size()}; }

  bool is_zero() const;
  bool is_one() const;
  // True when the element lies in GF(p); `value` receives it.
  bool is_prime_field(Coeff* value = nullptr) const;

  Fq operator-() const;
  Fq& operator+=(const Fq& o);
  Fq& operator-=(const Fq& o);
  Fq& operator*=(const Fq& o);
  Fq& operator/=(const Fq& o);
  friend Fq operator+(Fq a, const Fq& b) { return a += b; }
  friend Fq operator-(Fq a, const Fq& b) { return a -= b; }
  friend Fq operator*(Fq a, const Fq& b) { return a *= b; }
  friend Fq operator/(Fq a, const Fq& b) { return a /= b; }
  bool operator==(const Fq& o) const;

  Fq inverse() const;
  Fq pow(u128 e) const;
  // Fixed-order comparison by coefficients, most significant first.
  bool less(const Fq& o) const;

 private:
  friend class Level;
  const Level* level_ = nullptr;
  Coeffs c_;
};

class Level {
 public:
  Level(const Level&) = delete;
  Level& operator=(const Level&) = delete;

  Coeff p() const { return p_; }
  unsigned degree() const { return n_; }        // absolute degree over GF(p)
  unsigned rel_degree() const { return r_; }    // degree over the base level k
  unsigned base_degree() const { return e_; }   // e, where q = p^e
  FieldTower tower() const;
  std::span<const Coeff> modulus() const { return modulus_; }
  std::string spec() const;
  std::optional<u128> size() const { return size_; }

  Fq zero() const;
  Fq one() const;
  Fq scalar(long long v) const;
  Fq from_coeffs(std::span<const Coeff> c) const;
  Fq generator() const;  // the root of the defining polynomial
  Fq random(Rng& rng) const;

  // Enumeration order: index digits base p are the coefficients.
  Fq element(u128 index) const;
  u128 index_of(const Fq& x) const;

  // x^(q^i), q = |k|; negative i allowed.
  Fq frobenius(const Fq& x, long long i = 1) const;
  // x^p.
  Fq frobenius_p(const Fq& x) const;
  // x^(p^-1).
  Fq frobenius_p_inverse(const Fq& x) const;

  // Kernels on raw coefficient arrays of length degree().
  void mul_raw(const Coeff* a, const Coeff* b, Coeff* out) const;
  // y -= a*b
  void sub_mul_raw(Coeff* y, const Coeff* a, const Coeff* b) const;
  Coeffs apply_matrix(const std::vector<Coeffs>& rows, const Coeff* x) const;

 private:
  friend class FieldTower;
  friend struct detail::TowerImpl;
  friend class Fq;
  Level(detail::TowerImpl* tower, Coeff p, unsigned e, unsigned r, std::vector<Coeff> modulus);
  void build_frobenius();
  Coeffs inverse_raw(const Coeff* a) const;

  detail::TowerImpl* tower_;
  std::vector<std::pair<unsigned, Coeff>> neg_modulus_;  // sparse -f_j
  Coeff p_;
  unsigned e_, r_, n_;
  std::vector<Coeff> modulus_;
  std::optional<u128> size_;
  std::vector<Coeffs> frob_p_;   // row j = (X^j)^p
  std::vector<Coeffs> frob_q_;   // row j = (X^j)^q
  std::vector<Coeffs> frob_p_inv_;
};

// A shared handle: copies refer to the same tower. Levels and elements keep
// raw pointers into it, so some handle must outlive every element.
class FieldTower {
 public:
  FieldTower(Coeff p, unsigned e);

  Coeff p() const;
  unsigned e() const;
  u64 q() const;
  const Level& base() const;
  // Builds (or returns) the degree-r extension of k, with embeddings to and
  // from every level already present whose degree divides or is divided by r.
  const Level& extend(unsigned r) const;
  const Level* find(unsigned r) const;

  Fq embed(const Fq& x, const Level& to) const;
  // Inverse of embed; nullopt when x does not lie in the image.
  std::optional<Fq> restrict_to(const Fq& x, const Level& to) const;
  // The smaller level is embedded into the larger; throws if unrelated.
  std::pair<Fq, Fq> coerce(const Fq& a, const Fq& b) const;
  // Level of rel. degree lcm(a.rel, b.rel) is used when neither divides.
  const Level& join(const Level& a, const Level& b) const;

  bool operator==(const FieldTower& o) const { return impl_ == o.impl_; }

 private:
  friend class Level;
  explicit FieldTower(std::shared_ptr<detail::TowerImpl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<detail::TowerImpl> impl_;
};

FieldTower make_tower(Coeff p, unsigned e);

// Square roots in odd characteristic. nullopt certifies a nonsquare.
std::optional<Fq> sqrt(const Fq& a);
bool is_square(const Fq& a);
// First nonsquare in enumeration order.
Fq fixed_nonsquare(const Level& level);
// alpha a^2 + beta b^2 = gamma, with (a,b) != (0,0). nullopt only after an
// exhaustive scan found nothing.
std::optional<std::pair<Fq, Fq>> solve_diag_quadratic(const Fq& alpha, const Fq& beta, const Fq& gamma, Rng& rng);

// GF(p)-helpers used by the tower and elsewhere.
bool is_irreducible_mod_p(std::span<const Coeff> monic, Coeff p);

}  // namespace lietype
