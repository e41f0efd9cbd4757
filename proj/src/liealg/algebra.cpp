#include <algorithm>
#include <string>

#include "internal.hpp"
#include "lietype/liealg.hpp"

namespace lietype {

namespace {

void accumulate(Vec& out, const Fq& s, const std::vector<StructureEntry>& e) {
  for (const auto& [k, c] : e) out[k] += s * c;
}


std::vector<StructureEntry> to_entries(std::span<const Fq> v) {
  std::vector<StructureEntry> e;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero()) e.push_back({k, v[k]});
  return e;
}

}  // namespace

LieAlgebra::LieAlgebra(FieldTower tower, const Level& level, std::size_t dim,
                       std::vector<std::vector<StructureEntry>> entries)
    : tower_(std::move(tower)), level_(&level), dim_(dim), sc_(std::move(entries)) {
  if (sc_.size() != dim_ * dim_) throw LieError("structure table has the wrong size");
  for (auto& cell : sc_) {
    for (auto& [k, c] : cell) {
      if (k >= dim_) throw LieError("structure constant index out of range");
      if (&c.level() != level_) c = tower_.embed(c, *level_);
    }
    std::erase_if(cell, [](const StructureEntry& e) { return e.c.is_zero(); });
    std::sort(cell.begin(), cell.end(), [](const auto& a, const auto& b) { return a.k < b.k; });
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!sc_[i * dim_ + i].empty()) throw LieError("[b_i, b_i] != 0");
    for (std::size_t j = i + 1; j < dim_; ++j) {
      const auto& a = sc_[i * dim_ + j];
      const auto& b = sc_[j * dim_ + i];
      bool ok = a.size() == b.size();
      for (std::size_t t = 0; ok && t < a.size(); ++t) ok = a[t].k == b[t].k && a[t].c == -b[t].c;
      if (!ok) throw LieError("structure constants are not antisymmetric");
    }
  }
}

LieAlgebra LieAlgebra::from_root_datum(const RootDatum& rd, FieldTower tower, const Level& level) {
  if (level.p() <= 3) throw LieError("characteristic must be greater than 3");
  const std::size_t n = rd.rank(), nr = rd.num_roots(), d = n + nr;
  std::vector<std::vector<StructureEntry>> sc(d * d);
  auto cell = [&](std::size_t i, std::size_t j) -> auto& { return sc[i * d + j]; };
  for (std::size_t r = 0; r < nr; ++r) {
    const std::size_t er = n + r;
    for (std::size_t i = 0; i < n; ++i) {
      const int x = rd.root(r)[i];
      if (x == 0) continue;
      cell(er, i).push_back({er, level.scalar(x)});
      cell(i, er).push_back({er, level.scalar(-x)});
    }
    const std::size_t neg = n + rd.negative(r);
    for (std::size_t i = 0; i < n; ++i)
      if (rd.coroot(r)[i] != 0) cell(neg, er).push_back({i, level.scalar(rd.coroot(r)[i])});
    for (std::size_t s = 0; s < nr; ++s) {
      if (auto t = rd.sum(r, s)) cell(er, n + s).push_back({n + *t, level.scalar(rd.structure_constant(r, s))});
    }
  }
  LieAlgebra l(tower, level, d, std::move(sc));
  l.rd_ = std::make_shared<const RootDatum>(rd);
  Rng rng(0x5eed);
  if (auto bad = l.check_jacobi(rng))
    throw LieError("Jacobi identity fails on basis triple (" + std::to_string((*bad)[0]) + ", " +
                   std::to_string((*bad)[1]) + ", " + std::to_string((*bad)[2]) + ")");
  return l;
}

std::optional<unsigned> LieAlgebra::rank() const {
  if (rd_) return rd_->rank();
  return std::nullopt;
}

Vec LieAlgebra::zero_vector() const { return Vec(dim_, level_->zero()); }

Vec LieAlgebra::basis_vector(std::size_t i) const {
  Vec v = zero_vector();
  v.at(i) = level_->one();
  return v;
}

Vec LieAlgebra::bracket(std::span<const Fq> x, std::span<const Fq> y) const {
  if (x.size() != dim_ || y.size() != dim_) throw LieError("dimension mismatch in bracket");
  Vec out = zero_vector();
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (y[j].is_zero()) continue;
      accumulate(out, x[i] * y[j], entries(i, j));
    }
  }
  return out;
}

Matrix LieAlgebra::ad(std::span<const Fq> x) const {
  if (x.size() != dim_) throw LieError("dimension mismatch in ad");
  Matrix m(*level_, dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    if (x[j].is_zero()) continue;
    for (std::size_t i = 0; i < dim_; ++i)
      for (const auto& [k, c] : entries(i, j)) m(i, k) += x[j] * c;
  }
  return m;
}

Matrix LieAlgebra::ad_basis(std::size_t j) const {
  Matrix m(*level_, dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (const auto& [k, c] : entries(i, j)) m(i, k) = c;
  return m;
}

LieAlgebra LieAlgebra::change_basis(const Matrix& s) const {
  if (s.rows() != dim_ || s.cols() != dim_) throw LieError("change of basis has the wrong shape");
  const auto sinv = inverse(s);
  if (!sinv) throw LieError("change of basis is singular");
  std::vector<std::vector<StructureEntry>> sc(dim_ * dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    const Matrix adj = ad(s.row_view(j));
    const Matrix img = (s * adj) * *sinv;
    for (std::size_t i = 0; i < dim_; ++i) sc[i * dim_ + j] = to_entries(img.row_view(i));
  }
  LieAlgebra out(tower_, *level_, dim_, std::move(sc));
  out.rd_ = rd_;
  return out;
}

LieAlgebra LieAlgebra::restrict_to(const Matrix& basis) const {
  const std::size_t m = basis.rows();
  const RowSpaceSolver solver(basis);
  if (solver.rank() != m) throw LieError("restriction basis is not independent");
  std::vector<std::vector<StructureEntry>> sc(m * m);
  for (std::size_t j = 0; j < m; ++j) {
    const Matrix adj = ad(basis.row_view(j));
    for (std::size_t i = 0; i < m; ++i) {
      const auto c = solver.solve(mul(basis.row_view(i), adj));
      if (!c) throw LieError("span is not closed under the bracket");
      sc[i * m + j] = to_entries(*c);
    }
  }
  return LieAlgebra(tower_, *level_, m, std::move(sc));
}

LieAlgebra LieAlgebra::quotient_leading(std::size_t r) const {
  if (r > dim_) throw LieError("quotient by more than the whole algebra");
  const std::size_t m = dim_ - r;
  std::vector<std::vector<StructureEntry>> sc(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (const auto& [k, c] : entries(r + i, r + j))
        if (k >= r) sc[i * m + j].push_back({k - r, c});
  return LieAlgebra(tower_, *level_, m, std::move(sc));
}

std::optional<std::array<std::size_t, 3>> LieAlgebra::check_jacobi(Rng& rng, std::size_t exhaustive_limit,
                                                                    std::size_t samples) const {
  Vec acc = zero_vector();
  auto fails = [&](std::size_t a, std::size_t b, std::size_t c) {
    std::fill(acc.begin(), acc.end(), level_->zero());
    for (const auto& [k, v] : entries(a, b)) accumulate(acc, v, entries(k, c));
    for (const auto& [k, v] : entries(b, c)) accumulate(acc, v, entries(k, a));
    for (const auto& [k, v] : entries(c, a)) accumulate(acc, v, entries(k, b));
    return !is_zero_vec(acc);
  };
  if (dim_ <= exhaustive_limit) {
    for (std::size_t a = 0; a < dim_; ++a)
      for (std::size_t b = a + 1; b < dim_; ++b)
        for (std::size_t c = b + 1; c < dim_; ++c)
          if (fails(a, b, c)) return std::array{a, b, c};
    return std::nullopt;
  }
  std::uniform_int_distribution<std::size_t> pick(0, dim_ - 1);
  for (std::size_t t = 0; t < samples; ++t) {
    const std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
    if (fails(a, b, c)) return std::array{a, b, c};
  }
  return std::nullopt;
}

// ---- subspaces ----

Matrix empty_subspace(const LieAlgebra& l) { return Matrix(l.level(), 0, l.dim()); }
Matrix full_space(const LieAlgebra& l) { return Matrix::identity(l.level(), l.dim()); }

Matrix span_of(const LieAlgebra& l, const std::vector<Vec>& vectors) {
  if (vectors.empty()) return empty_subspace(l);
  return row_basis(Matrix::from_rows(l.level(), vectors, l.dim()));
}

namespace {

// Columns: [x ad(s_1) | x ad(s_2) | ...] as one wide matrix, for rows s.
Matrix stacked_ad(const LieAlgebra& l, const Matrix& s) {
  const std::size_t d = l.dim();
  Matrix wide(l.level(), d, d * s.rows());
  for (std::size_t r = 0; r < s.rows(); ++r) {
    const Matrix a = l.ad(s.row_view(r));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) wide(i, r * d + k) = a(i, k);
  }
  return wide;
}

}  // namespace

bool is_subalgebra(const LieAlgebra& l, const Matrix& s) {
  const detail::Echelon e = [&] {
    detail::Echelon e(l.level(), l.dim());
    for (std::size_t i = 0; i < s.rows(); ++i) e.add(s.row_view(i));
    return e;
  }();
  for (std::size_t j = 0; j < s.rows(); ++j) {
    const Matrix a = l.ad(s.row_view(j));
    for (std::size_t i = 0; i < j; ++i)
      if (!e.contains(mul(s.row_view(i), a))) return false;
  }
  return true;
}

bool is_abelian(const LieAlgebra& l, const Matrix& s) {
  for (std::size_t j = 0; j < s.rows(); ++j) {
    const Matrix a = l.ad(s.row_view(j));
    for (std::size_t i = 0; i < j; ++i)
      if (!is_zero_vec(mul(s.row_view(i), a))) return false;
  }
  return true;
}

Matrix center(const LieAlgebra& l) { return centralizer(l, full_space(l)); }

Matrix centralizer(const LieAlgebra& l, const Matrix& s) {
  if (s.rows() == 0) return full_space(l);
  return row_basis(left_kernel(stacked_ad(l, s)));
}

Matrix centralizer_in(const LieAlgebra& l, const Matrix& m, const Matrix& s) {
  if (m.rows() == 0) return m;
  if (s.rows() == 0) return row_basis(m);
  const Matrix coeffs = left_kernel(m * stacked_ad(l, s));
  if (coeffs.rows() == 0) return empty_subspace(l);
  return row_basis(coeffs * m);
}

Matrix center_of(const LieAlgebra& l, const Matrix& m) { return centralizer_in(l, m, m); }

Matrix generate_subalgebra(const LieAlgebra& l, const Matrix& gens) {
  detail::Echelon e(l.level(), l.dim());
  std::vector<Matrix> gen_ad;
  for (std::size_t i = 0; i < gens.rows(); ++i)
    if (e.add(gens.row_view(i))) gen_ad.push_back(l.ad(gens.row_view(i)));
  // Left-normed brackets of generators span the generated subalgebra.
  for (std::size_t next = 0; next < e.size(); ++next) {
    const Vec v = e.accepted()[next];
    for (const auto& a : gen_ad) e.add(mul(v, a));
  }
  return e.size() == 0 ? empty_subspace(l) : row_basis(e.matrix());
}

// ---- p-map modulo the centre ----

namespace {

Vec reduce_mod(const Matrix& z_rref, std::span<const Fq> v) {
  Vec out(v.begin(), v.end());
  for (std::size_t r = 0; r < z_rref.rows(); ++r) {
    std::size_t piv = 0;
    while (z_rref(r, piv).is_zero()) ++piv;
    const Fq t = out[piv];
    if (!t.is_zero()) axpy(out, -t, z_rref.row_view(r));
  }
  return out;
}

}  // namespace

Vec p_power_mod_center(const LieAlgebra& l, std::span<const Fq> x) {
  if (!l.has_p_map()) throw LieError("algebra carries no p-map data");
  const std::size_t d = l.dim();
  const Matrix target = l.ad(x).pow(l.level().p());
  // y ad-system: y_j ranges over basis ad-matrices, flattened.
  Matrix sys(l.level(), d, d * d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i)
      for (const auto& [k, c] : l.entries(i, j)) sys(j, i * d + k) = c;
  Vec rhs(d * d, l.level().zero());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) rhs[i * d + k] = target(i, k);
  const auto y = solve_left(sys, rhs);
  if (!y) throw LieError("(ad x)^p is not inner: the algebra is not p-closed here");
  return reduce_mod(center(l), *y);
}

Vec q_power_mod_center(const LieAlgebra& l, std::span<const Fq> x, unsigned t) {
  Vec y(x.begin(), x.end());
  const unsigned steps = l.level().base_degree() * t;
  for (unsigned s = 0; s < steps; ++s) y = p_power_mod_center(l, y);
  if (steps == 0) y = reduce_mod(center(l), y);
  return y;
}

// ---- internal helpers ----

namespace detail {

Vec Echelon::reduce(std::span<const Fq> v) const {
  Vec out(v.begin(), v.end());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Fq t = out[pivots_[r]];
    if (!t.is_zero()) axpy(out, -t, rows_[r]);
  }
  return out;
}

bool Echelon::add(std::span<const Fq> v) {
  if (v.size() != dim_) throw LieError("dimension mismatch in span");
  Vec r = reduce(v);
  std::size_t piv = 0;
  while (piv < dim_ && r[piv].is_zero()) ++piv;
  if (piv == dim_) return false;
  const Fq inv = r[piv].inverse();
  for (auto& x : r) x *= inv;
  rows_.push_back(std::move(r));
  pivots_.push_back(piv);
  accepted_.emplace_back(v.begin(), v.end());
  return true;
}

Matrix Echelon::matrix() const { return Matrix::from_rows(*level_, accepted_, dim_); }

namespace {

LieAlgebra build_quotient(const LieAlgebra& l, const Matrix& z, const std::vector<std::size_t>& pivots,
                          const std::vector<std::size_t>& free) {
  const std::size_t m = free.size();
  std::vector<std::size_t> slot(l.dim(), m);
  for (std::size_t t = 0; t < m; ++t) slot[free[t]] = t;
  std::vector<std::vector<StructureEntry>> sc(m * m);
  Vec v = l.zero_vector();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const auto& e = l.entries(free[a], free[b]);
      if (e.empty()) continue;
      std::fill(v.begin(), v.end(), l.level().zero());
      for (const auto& [k, c] : e) v[k] = c;
      for (std::size_t r = 0; r < pivots.size(); ++r) {
        const Fq t = v[pivots[r]];
        if (!t.is_zero()) axpy(v, -t, z.row_view(r));
      }
      for (std::size_t k = 0; k < l.dim(); ++k)
        if (!v[k].is_zero()) sc[a * m + b].push_back({slot[k], v[k]});
    }
  }
  return LieAlgebra(l.tower(), l.level(), m, std::move(sc));
}

Rref rref_or_empty(const LieAlgebra& l, const Matrix& z) {
  if (z.rows() == 0) return Rref{Matrix(l.level(), 0, l.dim()), {}, 0};
  return rref(z);
}

}  // namespace

Section::Section(const LieAlgebra& l, const Matrix& z)
    : dim_(l.dim()),
      z_([&] {
        const Rref r = rref_or_empty(l, z);
        return r.reduced.rows_range(0, r.rank);
      }()),
      pivots_([&] {
        std::vector<std::size_t> p;
        for (std::size_t r = 0; r < z_.rows(); ++r) {
          std::size_t c = 0;
          while (z_(r, c).is_zero()) ++c;
          p.push_back(c);
        }
        return p;
      }()),
      free_([&] {
        std::vector<std::size_t> f;
        for (std::size_t c = 0; c < dim_; ++c)
          if (std::find(pivots_.begin(), pivots_.end(), c) == pivots_.end()) f.push_back(c);
        return f;
      }()),
      q_(z_.rows() == 0 ? l : build_quotient(l, z_, pivots_, free_)) {}

Vec Section::project(std::span<const Fq> v) const {
  Vec w(v.begin(), v.end());
  for (std::size_t r = 0; r < pivots_.size(); ++r) {
    const Fq t = w[pivots_[r]];
    if (!t.is_zero()) axpy(w, -t, z_.row_view(r));
  }
  Vec out;
  out.reserve(free_.size());
  for (auto c : free_) out.push_back(w[c]);
  return out;
}

Vec Section::lift(std::span<const Fq> q) const {
  Vec out(dim_, z_.level().zero());
  for (std::size_t t = 0; t < free_.size(); ++t) out[free_[t]] = q[t];
  return out;
}

Matrix Section::project_rows(const Matrix& m) const {
  Matrix out(z_.level(), m.rows(), free_.size());
  for (std::size_t i = 0; i < m.rows(); ++i) out.set_row(i, project(m.row_view(i)));
  return out.rows() == 0 ? out : row_basis(out);
}

Matrix Section::lift_rows(const Matrix& m) const {
  Matrix out(z_.level(), m.rows(), dim_);
  for (std::size_t i = 0; i < m.rows(); ++i) out.set_row(i, lift(m.row_view(i)));
  return out;
}

Matrix Section::preimage(const Matrix& m) const { return Matrix::vstack(z_, lift_rows(m)); }

Matrix restricted_action(const Matrix& w, const Matrix& a) {
  const RowSpaceSolver solver(w);
  Matrix out(w.level(), w.rows(), w.rows());
  for (std::size_t i = 0; i < w.rows(); ++i) {
    const auto c = solver.solve(mul(w.row_view(i), a));
    if (!c) throw LieError("subspace is not invariant");
    out.set_row(i, *c);
  }
  return out;
}

Vec random_in(const Matrix& span, Rng& rng) {
  Vec v(span.cols(), span.level().zero());
  for (std::size_t i = 0; i < span.rows(); ++i) axpy(v, span.level().random(rng), span.row_view(i));
  return v;
}

Matrix basis_extending(const Matrix& z, const Matrix& m) {
  Echelon e(m.level(), m.cols());
  for (std::size_t i = 0; i < z.rows(); ++i) e.add(z.row_view(i));
  const std::size_t zr = e.size();
  for (std::size_t i = 0; i < m.rows(); ++i) e.add(m.row_view(i));
  if (zr != z.rows()) throw LieError("central subspace rows are dependent");
  return e.matrix();
}

bool contained_in(const Matrix& small, const Matrix& big) {
  Echelon e(big.level(), big.cols());
  for (std::size_t i = 0; i < big.rows(); ++i) e.add(big.row_view(i));
  for (std::size_t i = 0; i < small.rows(); ++i)
    if (!e.contains(small.row_view(i))) return false;
  return true;
}

}  // namespace detail

}  // namespace lietype
