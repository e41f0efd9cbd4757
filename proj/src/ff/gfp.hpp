#pragma once

// Dense helpers over the prime field GF(p), used to build the tower.

#include <cstddef>
#include <optional>
#include <vector>

#include "lietype/ff.hpp"

namespace lietype::gfp {

using Vec = std::vector<Coeff>;

Coeff inv(Coeff a, Coeff p);

void trim(Vec& a);
// Remainder of a by b (b nonzero, trimmed).
Vec rem(Vec a, const Vec& b, Coeff p);
Vec mulmod(const Vec& a, const Vec& b, const Vec& f, Coeff p);
Vec powmod(Vec a, u64 e, const Vec& f, Coeff p);
// Monic gcd; zero when both are zero.
Vec gcd(Vec a, Vec b, Coeff p);

// Row-major dense matrix.
struct Mat {
  std::size_t rows = 0, cols = 0;
  Vec a;
  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
  Coeff& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  Coeff at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

std::optional<Mat> inverse(Mat m, Coeff p);

// Solves y * R = x for a matrix R with independent rows.
class RowSolver {
 public:
  RowSolver() = default;
  RowSolver(const Mat& r, Coeff p);
  std::optional<Vec> solve(const Coeff* x) const;

 private:
  Coeff p_ = 0;
  std::size_t m_ = 0, n_ = 0;
  Mat echelon_;      // reduced rows
  Mat transform_;    // echelon_ = transform_ * R
  std::vector<std::size_t> pivots_;
};

}  // namespace lietype::gfp
