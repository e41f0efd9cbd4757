#pragma once

// Dense matrices over a tower level. Vectors are rows; matrices act on the
// right (v -> v M).

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "lietype/ff.hpp"
#include "lietype/poly.hpp"

namespace lietype {

using Vec = std::vector<Fq>;

class Matrix {
 public:
  Matrix(const Level& level, std::size_t rows, std::size_t cols);
  static Matrix identity(const Level& level, std::size_t n);
  static Matrix from_ints(const Level& level, const std::vector<std::vector<long long>>& rows);
  static Matrix from_rows(const Level& level, const std::vector<Vec>& rows, std::size_t cols);
  static Matrix diagonal(const Vec& d);

  const Level& level() const { return *level_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Fq& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Fq& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  // Embeds x into this matrix's level when needed.
  void set(std::size_t i, std::size_t j, const Fq& x);

  Vec row(std::size_t i) const;
  void set_row(std::size_t i, std::span<const Fq> v);
  std::span<const Fq> row_view(std::size_t i) const { return {a_.data() + i * cols_, cols_}; }
  std::vector<Vec> row_list() const;

  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Fq& s) const;
  Matrix operator-() const;
  bool operator==(const Matrix& o) const;

  bool is_zero() const;
  bool is_identity() const;
  bool is_square() const { return rows_ == cols_; }

  Matrix pow(u128 e) const;
  // Entrywise x -> x^(q^i).
  Matrix frobenius(long long i = 1) const;
  Matrix embed(const Level& to) const;
  // Entrywise restriction; nullopt when some entry lies outside `to`.
  std::optional<Matrix> restrict_to(const Level& to) const;
  Matrix map(const std::function<Fq(const Fq&)>& f) const;

  Matrix rows_range(std::size_t begin, std::size_t end) const;
  static Matrix vstack(const Matrix& top, const Matrix& bottom);

 private:
  const Level* level_;
  std::size_t rows_, cols_;
  std::vector<Fq> a_;
};

// v M for a row vector v.
Vec mul(std::span<const Fq> v, const Matrix& m);
Vec add(std::span<const Fq> a, std::span<const Fq> b);
Vec sub(std::span<const Fq> a, std::span<const Fq> b);
Vec scale(std::span<const Fq> a, const Fq& s);
bool is_zero_vec(std::span<const Fq> v);
// y += s x, in place
void axpy(std::span<Fq> y, const Fq& s, std::span<const Fq> x);

struct Rref {
  Matrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

Rref rref(const Matrix& m);
std::size_t rank(const Matrix& m);
// Basis (as rows) of {x : M x^T = 0}.
Matrix kernel(const Matrix& m);
// Basis (as rows) of {v : v M = 0}.
Matrix left_kernel(const Matrix& m);
// M x = b
std::optional<Vec> solve(const Matrix& m, std::span<const Fq> b);
// x M = b
std::optional<Vec> solve_left(const Matrix& m, std::span<const Fq> b);
Fq det(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);
Poly charpoly(const Matrix& m);
// Evaluates f at a square matrix.
Matrix eval_poly(const Poly& f, const Matrix& m);
// {v : v M = v}, as rows.
Matrix fixed_space(const Matrix& m);
// Reduced basis of the row space (nonzero rows of the rref).
Matrix row_basis(const Matrix& m);
// Row spaces equal?
bool same_row_space(const Matrix& a, const Matrix& b);
// Intersection of two row spaces, as rows.
Matrix intersect_row_spaces(const Matrix& a, const Matrix& b);

class MatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Least t >= 1 with M^t = I. Throws MatrixError for singular input or when
// the fallback power scan passes `cap`.
u128 matrix_order(const Matrix& m, u64 cap = 1000000);

// Repeated solves of y R = v for a fixed R.
class RowSpaceSolver {
 public:
  explicit RowSpaceSolver(const Matrix& r);
  std::optional<Vec> solve(std::span<const Fq> v) const;
  std::size_t rank() const { return pivots_.size(); }

 private:
  Matrix echelon_;
  Matrix transform_;
  std::vector<std::size_t> pivots_;
};

}  // namespace lietype
