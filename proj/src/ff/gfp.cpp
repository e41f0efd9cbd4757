#include "gfp.hpp"

#include <algorithm>
#include <utility>

namespace lietype::gfp {

Coeff inv(Coeff a, Coeff p) {
  if (a % p == 0) throw FieldError("division by zero");
  long long t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    long long qt = r / nr;
    t = std::exchange(nt, t - qt * nt);
    r = std::exchange(nr, r - qt * nr);
  }
  if (t < 0) t += p;
  return static_cast<Coeff>(t);
}

void trim(Vec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Vec rem(Vec a, const Vec& b, Coeff p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const Coeff linv = inv(b.back(), p);
  while (a.size() > db) {
    const Coeff t = static_cast<Coeff>(u64{a.back()} * linv % p);
    const std::size_t shift = a.size() - 1 - db;
    if (t != 0) {
      for (std::size_t j = 0; j <= db; ++j) {
        a[shift + j] = static_cast<Coeff>((a[shift + j] + u64{p - t} * b[j]) % p);
      }
    }
    a.pop_back();
    trim(a);
  }
  return a;
}

Vec mulmod(const Vec& a, const Vec& b, const Vec& f, Coeff p) {
  if (a.empty() || b.empty()) return {};
  Vec out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = static_cast<Coeff>((out[i + j] + u64{a[i]} * b[j]) % p);
    }
  }
  return rem(std::move(out), f, p);
}

Vec powmod(Vec a, u64 e, const Vec& f, Coeff p) {
  Vec r{1};
  r = rem(r, f, p);
  a = rem(std::move(a), f, p);
  while (e) {
    if (e & 1) r = mulmod(r, a, f, p);
    e >>= 1;
    if (e) a = mulmod(a, a, f, p);
  }
  return r;
}

Vec gcd(Vec a, Vec b, Coeff p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Vec r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Coeff linv = inv(a.back(), p);
    for (auto& c : a) c = static_cast<Coeff>(u64{c} * linv % p);
  }
  return a;
}

std::optional<Mat> inverse(Mat m, Coeff p) {
  const std::size_t n = m.rows;
  Mat id(n, n);
  for (std::size_t i = 0; i < n; ++i) id.at(i, i) = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m.at(piv, c) == 0) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m.at(piv, j), m.at(c, j));
        std::swap(id.at(piv, j), id.at(c, j));
      }
    }
    const Coeff s = inv(m.at(c, c), p);
    for (std::size_t j = 0; j < n; ++j) {
      m.at(c, j) = static_cast<Coeff>(u64{m.at(c, j)} * s % p);
      id.at(c, j) = static_cast<Coeff>(u64{id.at(c, j)} * s % p);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m.at(i, c) == 0) continue;
      const u64 t = p - m.at(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        m.at(i, j) = static_cast<Coeff>((m.at(i, j) + t * m.at(c, j)) % p);
        id.at(i, j) = static_cast<Coeff>((id.at(i, j) + t * id.at(c, j)) % p);
      }
    }
  }
  return id;
}

RowSolver::RowSolver(const Mat& r, Coeff p) : p_(p), m_(r.rows), n_(r.cols), echelon_(r), transform_(r.rows, r.rows) {
  for (std::size_t i = 0; i < m_; ++i) transform_.at(i, i) = 1;
  std::size_t row = 0;
  for (std::size_t c = 0; c < n_ && row < m_; ++c) {
    std::size_t piv = row;
    while (piv < m_ && echelon_.at(piv, c) == 0) ++piv;
    if (piv == m_) continue;
    if (piv != row) {
      for (std::size_t j = 0; j < n_; ++j) std::swap(echelon_.at(piv, j), echelon_.at(row, j));
      for (std::size_t j = 0; j < m_; ++j) std::swap(transform_.at(piv, j), transform_.at(row, j));
    }
    const Coeff s = inv(echelon_.at(row, c), p);
    for (std::size_t j = 0; j < n_; ++j) echelon_.at(row, j) = static_cast<Coeff>(u64{echelon_.at(row, j)} * s % p);
    for (std::size_t j = 0; j < m_; ++j) transform_.at(row, j) = static_cast<Coeff>(u64{transform_.at(row, j)} * s % p);
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row || echelon_.at(i, c) == 0) continue;
      const u64 t = p - echelon_.at(i, c);
      for (std::size_t j = 0; j < n_; ++j)
        echelon_.at(i, j) = static_cast<Coeff>((echelon_.at(i, j) + t * echelon_.at(row, j)) % p);
      for (std::size_t j = 0; j < m_; ++j)
        transform_.at(i, j) = static_cast<Coeff>((transform_.at(i, j) + t * transform_.at(row, j)) % p);
    }
    pivots_.push_back(c);
    ++row;
  }
  if (row != m_) throw FieldError("RowSolver: dependent rows");
}

std::optional<Vec> RowSolver::solve(const Coeff* x) const {
  Vec rest(x, x + n_);
  Vec y(m_, 0);
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const Coeff t = rest[pivots_[i]];
    if (t == 0) continue;
    for (std::size_t j = 0; j < n_; ++j)
      rest[j] = static_cast<Coeff>((rest[j] + u64{p_ - t} * echelon_.at(i, j)) % p_);
    for (std::size_t j = 0; j < m_; ++j) y[j] = static_cast<Coeff>((y[j] + u64{t} * transform_.at(i, j)) % p_);
  }
  if (std::any_of(rest.begin(), rest.end(), [](Coeff c) { return c != 0; })) return std::nullopt;
  return y;
}

}  // namespace lietype::gfp
