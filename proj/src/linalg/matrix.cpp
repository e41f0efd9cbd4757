#include "lietype/matrix.hpp"

#include <algorithm>
#include <map>

namespace lietype {

Matrix::Matrix(const Level& level, std::size_t rows, std::size_t cols)
    : level_(&level), rows_(rows), cols_(cols), a_(rows * cols, level.zero()) {}

Matrix Matrix::identity(const Level& level, std::size_t n) {
  Matrix m(level, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = level.one();
  return m;
}

Matrix Matrix::from_ints(const Level& level, const std::vector<std::vector<long long>>& rows) {
  const std::size_t c = rows.empty() ? 0 : rows[0].size();
  Matrix m(level, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw MatrixError("ragged integer matrix");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = level.scalar(rows[i][j]);
  }
  return m;
}

Matrix Matrix::from_rows(const Level& level, const std::vector<Vec>& rows, std::size_t cols) {
  Matrix m(level, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

Matrix Matrix::diagonal(const Vec& d) {
  if (d.empty()) throw MatrixError("empty diagonal");
  Matrix m(d[0].level(), d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
  return m;
}

void Matrix::set(std::size_t i, std::size_t j, const Fq& x) {
  (*this)(i, j) = &x.level() == level_ ? x : level_->tower().embed(x, *level_);
}

Vec Matrix::row(std::size_t i) const { return Vec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }

void Matrix::set_row(std::size_t i, std::span<const Fq> v) {
  if (v.size() != cols_) throw MatrixError("row length mismatch");
  for (std::size_t j = 0; j < cols_; ++j) set(i, j, v[j]);
}

std::vector<Vec> Matrix::row_list() const {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(*level_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw MatrixError("dimension mismatch in product");
  if (level_ != o.level_) {
    if (o.level_->degree() > level_->degree()) return embed(*o.level_) * o;
    return *this * o.embed(*level_);
  }
  Matrix r(*level_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::span<Fq> out(r.a_.data() + i * o.cols_, o.cols_);
    for (std::size_t k = 0; k < cols_; ++k) {
      const Fq& x = (*this)(i, k);
      if (x.is_zero()) continue;
      axpy(out, x, o.row_view(k));
    }
  }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw MatrixError("dimension mismatch in sum");
  Matrix r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + (-o); }

Matrix Matrix::operator*(const Fq& s) const {
  Matrix r = *this;
  for (auto& x : r.a_) x *= s;
  return r;
}

Matrix Matrix::operator-() const {
  Matrix r = *this;
  for (auto& x : r.a_) x = -x;
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (!(a_[i] == o.a_[i])) return false;
  return true;
}

bool Matrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Fq& x) { return x.is_zero(); });
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const Fq& x = (*this)(i, j);
      if (i == j ? !x.is_one() : !x.is_zero()) return false;
    }
  return true;
}

Matrix Matrix::pow(u128 e) const {
  if (rows_ != cols_) throw MatrixError("power of a non-square matrix");
  Matrix result = identity(*level_, rows_);
  Matrix base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Matrix Matrix::frobenius(long long i) const {
  return map([&](const Fq& x) { return level_->frobenius(x, i); });
}

Matrix Matrix::embed(const Level& to) const {
  if (&to == level_) return *this;
  const FieldTower tw = level_->tower();
  Matrix r(to, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = tw.embed(a_[i], to);
  return r;
}

std::optional<Matrix> Matrix::restrict_to(const Level& to) const {
  if (&to == level_) return *this;
  const FieldTower tw = level_->tower();
  Matrix r(to, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) {
    auto x = tw.restrict_to(a_[i], to);
    if (!x) return std::nullopt;
    r.a_[i] = *x;
  }
  return r;
}

Matrix Matrix::map(const std::function<Fq(const Fq&)>& f) const {
  Matrix r = *this;
  for (auto& x : r.a_) x = f(x);
  return r;
}

Matrix Matrix::rows_range(std::size_t begin, std::size_t end) const {
  Matrix r(*level_, end - begin, cols_);
  std::copy(a_.begin() + begin * cols_, a_.begin() + end * cols_, r.a_.begin());
  return r;
}

Matrix Matrix::vstack(const Matrix& top, const Matrix& bottom) {
  if (top.cols_ != bottom.cols_) throw MatrixError("column mismatch in vstack");
  Matrix r(*top.level_, top.rows_ + bottom.rows_, top.cols_);
  std::copy(top.a_.begin(), top.a_.end(), r.a_.begin());
  const Matrix b = bottom.embed(*top.level_);
  std::copy(b.a_.begin(), b.a_.end(), r.a_.begin() + top.a_.size());
  return r;
}

// ---- vectors ----

Vec mul(std::span<const Fq> v, const Matrix& m) {
  if (v.size() != m.rows()) throw MatrixError("dimension mismatch in vector product");
  Vec out(m.cols(), m.level().zero());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].is_zero()) continue;
    axpy(out, v[k], m.row_view(k));
  }
  return out;
}

Vec add(std::span<const Fq> a, std::span<const Fq> b) {
  Vec r(a.begin(), a.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec sub(std::span<const Fq> a, std::span<const Fq> b) {
  Vec r(a.begin(), a.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec scale(std::span<const Fq> a, const Fq& s) {
  Vec r(a.begin(), a.end());
  for (auto& x : r) x *= s;
  return r;
}

bool is_zero_vec(std::span<const Fq> v) {
  return std::all_of(v.begin(), v.end(), [](const Fq& x) { return x.is_zero(); });
}

void axpy(std::span<Fq> y, const Fq& s, std::span<const Fq> x) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (x[i].is_zero()) continue;
    y[i] += s * x[i];
  }
}

// ---- elimination ----

namespace {

// Row-reduces m in place; returns pivot columns. Applies the same row
// operations to `side` when given.
std::vector<std::size_t> reduce(Matrix& m, Matrix* side) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  const std::size_t rows = m.rows(), cols = m.cols();
  auto row_span = [](Matrix& x, std::size_t i) { return std::span<Fq>(&x(i, 0), x.cols()); };
  for (std::size_t c = 0; c < cols && row < rows; ++c) {
    std::size_t piv = row;
    while (piv < rows && m(piv, c).is_zero()) ++piv;
    if (piv == rows) continue;
    if (piv != row) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(piv, j), m(row, j));
      if (side)
        for (std::size_t j = 0; j < side->cols(); ++j) std::swap((*side)(piv, j), (*side)(row, j));
    }
    const Fq inv = m(row, c).inverse();
    for (auto& x : row_span(m, row)) x *= inv;
    if (side)
      for (auto& x : row_span(*side, row)) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || m(i, c).is_zero()) continue;
      const Fq t = -m(i, c);
      axpy(row_span(m, i), t, m.row_view(row));
      if (side) axpy(row_span(*side, i), t, side->row_view(row));
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

Rref rref(const Matrix& m) {
  Rref r{m, {}, 0};
  r.pivots = reduce(r.reduced, nullptr);
  r.rank = r.pivots.size();
  return r;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

Matrix kernel(const Matrix& m) {
  const Rref r = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : r.pivots) is_pivot[c] = true;
  Matrix k(m.level(), n - r.rank, n);
  std::size_t out = 0;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    k(out, f) = m.level().one();
    for (std::size_t i = 0; i < r.rank; ++i) k(out, r.pivots[i]) = -r.reduced(i, f);
    ++out;
  }
  return k;
}

Matrix left_kernel(const Matrix& m) { return kernel(m.transpose()); }

std::optional<Vec> solve(const Matrix& m, std::span<const Fq> b) {
  if (b.size() != m.rows()) throw MatrixError("dimension mismatch in solve");
  Matrix aug(m.level(), m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug.set(i, m.cols(), b[i]);
  }
  const Rref r = rref(aug);
  Vec x(m.cols(), m.level().zero());
  for (std::size_t i = 0; i < r.rank; ++i) {
    if (r.pivots[i] == m.cols()) return std::nullopt;
    x[r.pivots[i]] = r.reduced(i, m.cols());
  }
  return x;
}

std::optional<Vec> solve_left(const Matrix& m, std::span<const Fq> b) { return solve(m.transpose(), b); }

Fq det(const Matrix& m) {
  if (!m.is_square()) throw MatrixError("determinant of a non-square matrix");
  Matrix a = m;
  const std::size_t n = m.rows();
  Fq d = m.level().one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c).is_zero()) ++piv;
    if (piv == n) return m.level().zero();
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
      d = -d;
    }
    d *= a(c, c);
    const Fq inv = a(c, c).inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c).is_zero()) continue;
      const Fq t = -(a(i, c) * inv);
      axpy(std::span<Fq>(&a(i, 0), n), t, a.row_view(c));
    }
  }
  return d;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (!m.is_square()) throw MatrixError("inverse of a non-square matrix");
  Matrix a = m;
  Matrix side = Matrix::identity(m.level(), m.rows());
  auto piv = reduce(a, &side);
  if (piv.size() != m.rows()) return std::nullopt;
  return side;
}

Poly charpoly(const Matrix& m) {
  if (!m.is_square()) throw MatrixError("characteristic polynomial of a non-square matrix");
  const Level& lv = m.level();
  const std::size_t n = m.rows();
  Matrix h = m;
  // similarity reduction to upper Hessenberg form
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = j + 1;
    while (piv < n && h(piv, j).is_zero()) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h(piv, c), h(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(h(r, piv), h(r, j + 1));
    }
    const Fq inv = h(j + 1, j).inverse();
    for (std::size_t i = j + 2; i < n; ++i) {
      if (h(i, j).is_zero()) continue;
      const Fq u = h(i, j) * inv;
      for (std::size_t c = 0; c < n; ++c) h(i, c) -= u * h(j + 1, c);
      for (std::size_t r = 0; r < n; ++r) h(r, j + 1) += u * h(r, i);
    }
  }
  // p_k = (X - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{i<j<=k} h_{j,j-1}) p_{i-1}
  std::vector<Poly> p{Poly::constant(lv.one())};
  const Poly x = Poly::x(lv);
  for (std::size_t k = 0; k < n; ++k) {
    Poly next = (x - Poly::constant(h(k, k))) * p[k];
    Fq prod = lv.one();
    for (std::size_t i = k; i-- > 0;) {
      prod *= h(i + 1, i);
      if (prod.is_zero()) break;
      next -= p[i] * (h(i, k) * prod);
    }
    p.push_back(next);
  }
  return p[n];
}

Matrix eval_poly(const Poly& f, const Matrix& m) {
  Matrix acc(m.level(), m.rows(), m.cols());
  const Matrix id = Matrix::identity(m.level(), m.rows());
  for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = acc * m + id * f.coeffs()[i];
  return acc;
}

Matrix fixed_space(const Matrix& m) { return left_kernel(m - Matrix::identity(m.level(), m.rows())); }

Matrix row_basis(const Matrix& m) {
  const Rref r = rref(m);
  return r.reduced.rows_range(0, r.rank);
}

bool same_row_space(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) return false;
  const Matrix ra = row_basis(a), rb = row_basis(b.embed(a.level()));
  return ra == rb;
}

Matrix intersect_row_spaces(const Matrix& a, const Matrix& b) {
  // x a = y b  <=>  (x, -y) [a; b] = 0
  const Matrix ba = row_basis(a), bb = row_basis(b);
  if (ba.rows() == 0 || bb.rows() == 0) return Matrix(a.level(), 0, a.cols());
  const Matrix k = left_kernel(Matrix::vstack(ba, bb));
  Matrix out(a.level(), k.rows(), a.cols());
  for (std::size_t i = 0; i < k.rows(); ++i) {
    Vec x(k.row_view(i).begin(), k.row_view(i).begin() + ba.rows());
    out.set_row(i, mul(x, ba));
  }
  return row_basis(out);
}

// ---- order ----

namespace {

// Prime factorization of Q^d - 1 via cyclotomic pieces; nullopt if a piece
// is too large to factor.
std::optional<std::map<u64, unsigned>> factor_power_minus_one(u128 q, unsigned d) {
  std::map<unsigned, u128> cyclo;
  std::map<u64, unsigned> out;
  for (unsigned k : divisors(d)) {
    auto qk = checked_pow(q, k);
    if (!qk) return std::nullopt;
    u128 v = *qk - 1;
    for (unsigned j : divisors(k))
      if (j < k) v /= cyclo.at(j);
    cyclo[k] = v;
    if (v > ~u64{0}) return std::nullopt;
    for (auto [pr, ex] : factor_integer(static_cast<u64>(v))) out[pr] += ex;
  }
  return out;
}

}  // namespace

u128 matrix_order(const Matrix& m, u64 cap) {
  if (!m.is_square()) throw MatrixError("order of a non-square matrix");
  if (det(m).is_zero()) throw MatrixError("order of a singular matrix");
  const Level& lv = m.level();
  const Matrix id = Matrix::identity(lv, m.rows());
  auto scan = [&]() -> u128 {
    Matrix pw = m;
    for (u64 t = 1; t <= cap; ++t) {
      if (pw == id) return t;
      pw = pw * m;
    }
    throw MatrixError("matrix order exceeds cap " + std::to_string(cap));
  };
  if (!lv.size()) return scan();
  Rng rng(0x0bde5);
  const auto fs = factor(charpoly(m), rng);
  std::map<u64, unsigned> bound;
  unsigned max_mult = 1;
  for (const auto& f : fs) {
    max_mult = std::max(max_mult, f.multiplicity);
    auto part = factor_power_minus_one(*lv.size(), static_cast<unsigned>(f.poly.degree()));
    if (!part) return scan();
    for (auto [pr, ex] : *part) bound[pr] = std::max(bound[pr], ex);
  }
  // unipotent part: Jordan blocks have size <= multiplicity
  unsigned c = 0;
  for (u128 pc = 1; pc < max_mult; pc *= lv.p()) ++c;
  if (c) bound[lv.p()] = std::max(bound[lv.p()], c);
  u128 t = 1;
  for (auto [pr, ex] : bound) {
    for (unsigned i = 0; i < ex; ++i) {
      auto nt = checked_mul(t, pr);
      if (!nt) return scan();
      t = *nt;
    }
  }
  if (!m.pow(t).is_identity()) throw std::logic_error("order bound is not a multiple of the order");
  for (auto [pr, ex] : bound) {
    for (unsigned i = 0; i < ex; ++i) {
      if (m.pow(t / pr).is_identity()) {
        t /= pr;
      } else {
        break;
      }
    }
  }
  return t;
}

// ---- row space solver ----

RowSpaceSolver::RowSpaceSolver(const Matrix& r)
    : echelon_(r), transform_(Matrix::identity(r.level(), r.rows())) {
  pivots_ = reduce(echelon_, &transform_);
}

std::optional<Vec> RowSpaceSolver::solve(std::span<const Fq> v) const {
  if (v.size() != echelon_.cols()) throw MatrixError("dimension mismatch in row-space solve");
  Vec rest(v.begin(), v.end());
  Vec y(transform_.cols(), echelon_.level().zero());
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const Fq t = rest[pivots_[i]];
    if (t.is_zero()) continue;
    axpy(rest, -t, echelon_.row_view(i));
    axpy(y, t, transform_.row_view(i));
  }
  if (!is_zero_vec(rest)) return std::nullopt;
  return y;
}

}  // namespace lietype
