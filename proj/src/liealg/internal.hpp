#pragma once

#include <cstddef>
#include <vector>

#include "lietype/liealg.hpp"

namespace lietype::detail {

// Incremental echelon basis: rows are kept in insertion order, each reduced
// against the earlier ones.
class Echelon {
 public:
  Echelon(const Level& level, std::size_t dim) : level_(&level), dim_(dim) {}
  // Adds v if it is independent of the current rows.
  bool add(std::span<const Fq> v);
  Vec reduce(std::span<const Fq> v) const;
  bool contains(std::span<const Fq> v) const { return is_zero_vec(reduce(v)); }
  std::size_t size() const { return rows_.size(); }
  // Original (unreduced) vectors that were accepted.
  const std::vector<Vec>& accepted() const { return accepted_; }
  Matrix matrix() const;

 private:
  const Level* level_;
  std::size_t dim_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<Vec> accepted_;
};

// L/Z with the coordinate section: Z is put in reduced echelon form and its
// non-pivot columns are the coordinates of L/Z.
class Section {
 public:
  Section(const LieAlgebra& l, const Matrix& z);
  const LieAlgebra& quotient() const { return q_; }
  const Matrix& z() const { return z_; }
  std::size_t z_dim() const { return pivots_.size(); }
  Vec project(std::span<const Fq> v) const;
  Vec lift(std::span<const Fq> q) const;
  Matrix project_rows(const Matrix& m) const;  // independent rows of the image
  Matrix lift_rows(const Matrix& m) const;
  // phi(m) + Z
  Matrix preimage(const Matrix& m) const;

 private:
  std::size_t dim_;
  Matrix z_;
  std::vector<std::size_t> pivots_, free_;
  LieAlgebra q_;
};

// Matrix of x -> x a on the span of the rows of w, in those coordinates.
Matrix restricted_action(const Matrix& w, const Matrix& a);
Vec random_in(const Matrix& span, Rng& rng);
// Basis of m whose first rows are a basis of z (z must lie in m).
Matrix basis_extending(const Matrix& z, const Matrix& m);
bool contained_in(const Matrix& small, const Matrix& big);

}  // namespace lietype::detail
