#include <algorithm>

#include "lietype/lang.hpp"

namespace lietype {

namespace {

bool is_base_level(const Level& lv) { return lv.rel_degree() == 1; }

// Coordinates over k: vectors are rows in k^m, the form is given by g.
class FormSpace {
 public:
  FormSpace(const Matrix& g, FormKind kind, Fq delta, Rng& rng)
      : g_(g), kind_(kind), delta_(std::move(delta)), rng_(rng), k_(g.level()) {}

  Fq pair(const Vec& x, const Vec& y) const {
    Fq s = k_.zero();
    const std::size_t m = g_.rows();
    for (std::size_t i = 0; i < m; ++i) {
      if (x[i].is_zero()) continue;
      Fq t = k_.zero();
      for (std::size_t j = 0; j < m; ++j) {
        if (!y[j].is_zero()) t += g_(i, j) * y[j];
      }
      s += x[i] * t;
    }
    return s;
  }

  // Part of span(u) orthogonal to every vector in s.
  Matrix perp(const Matrix& u, const std::vector<Vec>& s) const {
    if (s.empty() || u.rows() == 0) return u;
    Matrix m(k_, u.rows(), s.size());
    for (std::size_t i = 0; i < u.rows(); ++i) {
      const Vec ui = u.row(i);
      for (std::size_t j = 0; j < s.size(); ++j) m(i, j) = pair(ui, s[j]);
    }
    const Matrix lam = left_kernel(m);
    if (lam.rows() == 0) return Matrix(k_, 0, u.cols());
    return lam * u;
  }

  Vec random_in(const Matrix& u) {
    Vec v(u.cols(), k_.zero());
    for (std::size_t i = 0; i < u.rows(); ++i) axpy(v, k_.random(rng_), u.row_view(i));
    return v;
  }

  Vec anisotropic_in(const Matrix& u) {
    for (int t = 0; t < 256; ++t) {
      Vec v = random_in(u);
      if (!pair(v, v).is_zero()) return v;
    }
    throw LangInputError("normal_basis: no anisotropic vector found; the form is degenerate on a subspace");
  }

  std::vector<Vec> build(const Matrix& u) {
    const std::size_t m = u.rows();
    if (m == 0) return {};
    if (kind_ == FormKind::symplectic) {
      if (m % 2) throw LangInputError("normal_basis: odd-dimensional symplectic space");
      return hyperbolic(u.row(0), u);
    }
    Vec x = anisotropic_in(u);
    const Fq alpha = pair(x, x);
    if (m == 1) {
      if (auto a = sqrt(alpha)) return {scale(x, a->inverse())};
      auto a = sqrt(alpha / delta_);
      if (!a) throw std::logic_error("normal_basis: neither a square nor delta times a square");
      return {scale(x, a->inverse())};
    }
    Vec y = anisotropic_in(perp(u, {x}));
    const Fq beta = pair(y, y);
    if (m == 2) {
      if (is_square(-alpha / (delta_ * beta))) {
        // anisotropic plane: Gram diag(1, -delta)
        auto ab = solve_diag_quadratic(alpha, beta, k_.one(), rng_);
        if (!ab) throw std::logic_error("normal_basis: a alpha^2 + b beta^2 = 1 has no solution");
        const auto& [a, b] = *ab;
        Vec w1 = add(scale(x, a), scale(y, b));
        Vec w2 = sub(scale(x, beta * b), scale(y, alpha * a));
        auto c = sqrt(-delta_ / pair(w2, w2));
        if (!c) throw std::logic_error("normal_basis: anisotropic plane without the expected square class");
        return {w1, scale(w2, *c)};
      }
      auto ab = solve_diag_quadratic(alpha, beta, k_.zero(), rng_);
      if (!ab) throw std::logic_error("normal_basis: isotropic plane without isotropic vector");
      return hyperbolic(add(scale(x, ab->first), scale(y, ab->second)), u);
    }
    Vec z = anisotropic_in(perp(u, {x, y}));
    auto ab = solve_diag_quadratic(alpha, beta, -pair(z, z), rng_);
    if (!ab) throw std::logic_error("normal_basis: ternary form without isotropic vector");
    Vec iso = add(add(scale(x, ab->first), scale(y, ab->second)), z);
    return hyperbolic(iso, u);
  }

  // iso is isotropic and nonzero: pair it with an isotropic partner in u and
  // recurse on the orthogonal complement of the pair.
  std::vector<Vec> hyperbolic(const Vec& iso, const Matrix& u) {
    Vec x;
    for (std::size_t i = 0; i < u.rows() && x.empty(); ++i) {
      Vec cand = u.row(i);
      if (!pair(iso, cand).is_zero()) x = std::move(cand);
    }
    if (x.empty()) throw LangInputError("normal_basis: the form is degenerate");
    const Fq two = k_.scalar(2);
    x = sub(x, scale(iso, pair(x, x) / (two * pair(iso, x))));
    x = scale(x, pair(iso, x).inverse());
    std::vector<Vec> out{iso};
    auto inner = build(perp(u, {iso, x}));
    out.insert(out.end(), inner.begin(), inner.end());
    out.push_back(std::move(x));
    return out;
  }

 private:
  const Matrix& g_;
  FormKind kind_;
  Fq delta_;
  Rng& rng_;
  const Level& k_;
};

}  // namespace

BilinearFormFq::BilinearFormFq(FormKind kind_, Matrix gram_) : kind(kind_), gram(std::move(gram_)) {
  const Level& k = gram.level();
  if (!is_base_level(k)) throw LangInputError("form: Gram matrix must lie over the base field");
  if (k.p() == 2) throw LangInputError("form: characteristic 2 is not supported");
  if (!gram.is_square()) throw LangInputError("form: Gram matrix is not square");
  const std::size_t d = gram.rows();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const bool ok = kind == FormKind::orthogonal ? gram(i, j) == gram(j, i) : gram(i, j) == -gram(j, i);
      if (!ok) throw LangInputError("form: Gram matrix is not " + std::string(kind == FormKind::orthogonal ? "symmetric" : "alternating"));
    }
  }
  if (det(gram).is_zero()) throw LangInputError("form: degenerate Gram matrix");
  delta = fixed_nonsquare(k);
}

Fq BilinearFormFq::operator()(std::span<const Fq> u, std::span<const Fq> v) const {
  const Level& lv = u.empty() ? gram.level() : u[0].level();
  const Matrix g = gram.embed(lv);
  const Vec gv = mul(v, g.transpose());
  Fq s = lv.zero();
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * gv[i];
  return s;
}

Matrix BilinearFormFq::gram_of(const Matrix& b) const { return b * gram.embed(b.level()) * b.transpose(); }

Matrix canonical_gram(FormKind kind, const Level& k, std::size_t d, bool variant) {
  Matrix g(k, d, d);
  if (kind == FormKind::symplectic) {
    if (d % 2) throw LangInputError("symplectic forms need even dimension");
    if (variant) throw LangInputError("symplectic forms have a single normal form");
    for (std::size_t i = 0; i < d; ++i) g(i, d - 1 - i) = k.scalar(i < d / 2 ? 1 : -1);
    return g;
  }
  for (std::size_t i = 0; i < d; ++i) g(i, d - 1 - i) = k.one();
  if (!variant || d == 0) return g;
  const Fq delta = fixed_nonsquare(k);
  const std::size_t l = d / 2;
  if (d % 2) {
    g(l, l) = delta;
  } else {
    g(l - 1, l) = k.zero();
    g(l, l - 1) = k.zero();
    g(l - 1, l - 1) = k.one();
    g(l, l) = -delta;
  }
  return g;
}

BilinearFormFq standard_form(FormKind kind, const Level& k, std::size_t d) {
  return BilinearFormFq(kind, canonical_gram(kind, k, d, false));
}

std::optional<bool> canonical_variant(FormKind kind, const Matrix& g) {
  if (!g.is_square() || !is_base_level(g.level())) return std::nullopt;
  if (kind == FormKind::symplectic) {
    if (g.rows() % 2) return std::nullopt;
    if (g == canonical_gram(kind, g.level(), g.rows(), false)) return false;
    return std::nullopt;
  }
  for (bool v : {false, true}) {
    if (g == canonical_gram(kind, g.level(), g.rows(), v)) return v;
  }
  return std::nullopt;
}

Matrix normal_basis(const Matrix& basis, const BilinearFormFq& form, Rng& rng) {
  const FieldTower tower = form.gram.level().tower();
  const Level& k = form.gram.level();
  const Matrix big = form.gram_of(basis);
  auto g = big.restrict_to(k);
  if (!g) throw LangInputError("normal_basis: the form does not take values in k on this basis");
  if (det(*g).is_zero()) throw LangInputError("normal_basis: the form is degenerate on this space");
  FormSpace space(*g, form.kind, form.delta, rng);
  const auto rows = space.build(Matrix::identity(k, g->rows()));
  const Matrix t = Matrix::from_rows(k, rows, g->rows());
  return t.embed(basis.level()) * basis;
}

Matrix random_isometry(const BilinearFormFq& form, const Level& level, Rng& rng) {
  const std::size_t d = form.gram.rows();
  const Matrix g = form.gram.embed(level);
  Matrix out = Matrix::identity(level, d);
  auto random_vec = [&] {
    Vec v(d);
    for (auto& x : v) x = level.random(rng);
    return v;
  };
  // x -> x + lambda (x, v) v  (transvection)  or  x -> x - 2 (x, v)/(v, v) v  (reflection)
  auto elementary = [&](const Vec& v, const Fq& lambda) {
    const Vec gv = mul(v, g.transpose());
    Matrix m = Matrix::identity(level, d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) m(i, j) += lambda * gv[i] * v[j];
    }
    return m;
  };
  // an even number of reflections keeps the determinant 1
  for (std::size_t t = 0; t < 2 * d + 2; ++t) {
    Vec v = random_vec();
    if (form.kind == FormKind::symplectic) {
      out = out * elementary(v, level.random(rng));
      continue;
    }
    Fq n = form(v, v);
    while (n.is_zero()) {
      v = random_vec();
      n = form(v, v);
    }
    out = out * elementary(v, -level.scalar(2) / n);
  }
  return out;
}

}  // namespace lietype
