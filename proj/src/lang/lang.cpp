#include <algorithm>
#include <numeric>

#include "lietype/lang.hpp"

namespace lietype {

std::string to_string(GroupKind k) {
  switch (k) {
    case GroupKind::GL: return "GL";
    case GroupKind::SL: return "SL";
    case GroupKind::Sp: return "Sp";
    case GroupKind::SO: return "SO";
    case GroupKind::Torus: return "Torus";
  }
  return "?";
}

std::optional<GroupKind> parse_group_kind(const std::string& s) {
  for (GroupKind k : {GroupKind::GL, GroupKind::SL, GroupKind::Sp, GroupKind::SO, GroupKind::Torus}) {
    if (s == to_string(k)) return k;
  }
  if (s == "T" || s == "torus") return GroupKind::Torus;
  return std::nullopt;
}

namespace {

std::vector<unsigned> sorted_divisors(unsigned n) {
  auto d = divisors(n);
  std::sort(d.begin(), d.end());
  return d;
}

FormKind form_kind_of(GroupKind k) { return k == GroupKind::Sp ? FormKind::symplectic : FormKind::orthogonal; }

bool is_diagonal(const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (i != j && !m(i, j).is_zero()) return false;
    }
  }
  return true;
}

std::string entry(std::size_t i, std::size_t j) { return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"; }

std::optional<std::pair<std::size_t, std::size_t>> first_difference(const Matrix& a, const Matrix& b) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!(a(i, j) == b(i, j))) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

// Glasby-Howlett sum a = sum_{i < rs} x^{F^i} c^{F^{i-1}} ... c for a random
// x over level rs, retried until a is invertible.
std::pair<Matrix, unsigned> glasby_howlett(const Matrix& c, unsigned rs, const Level& big, Rng& rng, unsigned max_draws) {
  const std::size_t d = c.rows();
  const Matrix cl = c.embed(big);
  for (unsigned draw = 1; draw <= max_draws; ++draw) {
    Matrix x(big, d, d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) x(i, j) = big.random(rng);
    }
    Matrix a(big, d, d);
    Matrix prod = Matrix::identity(big, d);
    Matrix cf = cl;
    for (unsigned i = 0; i < rs; ++i) {
      a = a + x * prod;
      prod = cf * prod;
      cf = cf.frobenius(1);
      x = x.frobenius(1);
    }
    if (det(a).is_zero()) continue;
    if (!(a.frobenius(1) * cl == a)) throw std::logic_error("Glasby-Howlett sum is not F-twisted: s is not a multiple of the norm order");
    return {a, draw};
  }
  throw LangBudget("no invertible Glasby-Howlett sum after " + std::to_string(max_draws) + " draws");
}

Matrix group_element(GroupKind kind, const std::optional<BilinearFormFq>& form, const Level& lv, std::size_t d, Rng& rng) {
  switch (kind) {
    case GroupKind::GL: return random_gl(lv, d, rng);
    case GroupKind::SL: return random_sl(lv, d, rng);
    case GroupKind::Sp:
    case GroupKind::SO: return random_isometry(*form, lv, rng);
    case GroupKind::Torus: {
      Vec v(d);
      for (auto& x : v) {
        do x = lv.random(rng);
        while (x.is_zero());
      }
      return Matrix::diagonal(v);
    }
  }
  throw std::logic_error("unknown group kind");
}

}  // namespace

unsigned min_field_degree(const FieldTower& tower, const Matrix& g) {
  (void)tower;
  for (unsigned r : sorted_divisors(g.level().rel_degree())) {
    if (g.frobenius(r) == g) return r;
  }
  return g.level().rel_degree();
}

unsigned min_field_degree(const FieldTower& tower, const Fq& x) { return min_field_degree(tower, Matrix::diagonal(Vec{x})); }

std::pair<Matrix, u128> norm_and_order(const FieldTower& tower, const Matrix& c, unsigned r, u64 cap) {
  if (!(c.frobenius(r) == c)) throw LangInputError("c is not fixed by F^" + std::to_string(r));
  Matrix n = c;
  Matrix cf = c;
  for (unsigned i = 1; i < r; ++i) {
    cf = cf.frobenius(1);
    n = cf * n;
  }
  if (!(n.frobenius(r) == n)) throw std::logic_error("norm element is not fixed by F^r");
  if (auto nr = n.restrict_to(tower.extend(r))) n = *nr;
  try {
    return {n, matrix_order(n, cap)};
  } catch (const MatrixError& e) {
    throw LangBudget(std::string("order of the norm element: ") + e.what());
  }
}

LangInstance make_instance(GroupKind kind, FieldTower tower, const Matrix& c, std::optional<BilinearFormFq> form,
                           const InstanceOptions& opt, Rng* rng) {
  if (!(c.level().tower() == tower)) throw LangInputError("c does not lie in the given tower");
  if (!c.is_square() || c.rows() == 0) throw LangInputError("c must be a nonempty square matrix");
  if (det(c).is_zero()) throw LangInputError("c is singular");
  const std::size_t d = c.rows();
  const bool wants_form = kind == GroupKind::Sp || kind == GroupKind::SO;
  if (wants_form && !form) form = standard_form(form_kind_of(kind), tower.base(), d);
  if (!wants_form && form) throw LangInputError("a form is only meaningful for Sp and SO");
  if (form) {
    if (form->kind != form_kind_of(kind)) throw LangInputError("form kind does not match the group");
    if (form->gram.rows() != d) throw LangInputError("form dimension does not match c");
    if (!(form->gram.level().tower() == tower)) throw LangInputError("form does not lie in the given tower");
  }
  if (kind == GroupKind::Torus && !is_diagonal(c)) throw LangInputError("torus elements are diagonal");

  const unsigned r = min_field_degree(tower, c);
  if (opt.r && *opt.r != r) {
    throw LangInputError("c has minimum field degree " + std::to_string(r) + ", not " + std::to_string(*opt.r));
  }
  const Level& lr = tower.extend(r);
  auto cr = c.restrict_to(lr);
  if (!cr) throw std::logic_error("F^r-fixed matrix does not restrict to level r");

  if (kind == GroupKind::SL || kind == GroupKind::SO) {
    const Fq dt = det(*cr);
    if (!dt.is_one()) {
      if (kind == GroupKind::SO && (-dt).is_one()) {
        throw LangInputError("c has determinant -1: it lies in O but not in SO, and Lang's equation need not be solvable");
      }
      throw LangInputError("c does not have determinant 1");
    }
  }
  if (form) {
    if (!(form->gram_of(*cr) == form->gram.embed(lr))) throw LangInputError("c does not preserve the form");
  }

  LangInstance inst{kind, tower, *cr, r, 1, form, std::nullopt};
  if (opt.trust_s && opt.s) {
    if (*opt.s == 0) throw LangInputError("s must be positive");
    Matrix n = *cr, cf = *cr;
    for (unsigned i = 1; i < r; ++i) {
      cf = cf.frobenius(1);
      n = cf * n;
    }
    if (!n.pow(*opt.s).is_identity()) throw LangInputError("the given s is not a multiple of the norm order");
    inst.s = *opt.s;
  } else {
    inst.s = norm_and_order(tower, *cr, r, opt.order_cap).second;
  }
  if (u128{r} * inst.s > opt.max_extension) {
    throw LangBudget("extension degree r*s = " + to_string(u128{r} * inst.s) + " exceeds the cap " + std::to_string(opt.max_extension));
  }

  if (form) {
    const Level& k = tower.base();
    if (canonical_variant(form->kind, form->gram)) {
      inst.form_basis = Matrix::identity(k, d);
    } else {
      Rng local(0x5eed);
      inst.form_basis = normal_basis(Matrix::identity(k, d), *form, rng ? *rng : local);
    }
  }
  return inst;
}

Matrix f_eigenspace_det(const LangInstance& inst) {
  const Level& big = inst.solution_level();
  const std::size_t d = inst.dim();
  const std::size_t n = big.degree();
  const Matrix c = inst.c.embed(big);
  // v -> v^F c is GF(p)-linear on big^d; write it in the basis X^t e_i.
  const FieldTower prime = make_tower(big.p(), 1);
  const Level& fp = prime.base();
  Matrix t(fp, d * n, d * n);
  std::vector<Coeff> unit(n, 0);
  for (std::size_t t0 = 0; t0 < n; ++t0) {
    std::fill(unit.begin(), unit.end(), 0);
    unit[t0] = 1;
    const Fq xf = big.frobenius(big.from_coeffs(unit), 1);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const Fq img = xf * c(i, j);
        const auto co = img.coeffs();
        for (std::size_t u = 0; u < co.size(); ++u) t(i * n + t0, j * n + u) = fp.scalar(co[u]);
      }
    }
  }
  const Matrix fixed = fixed_space(t);
  // The GF(p)-basis of E(k) spans big^d; keep d vectors independent over big.
  Matrix out(big, 0, d);
  for (std::size_t row = 0; row < fixed.rows() && out.rows() < d; ++row) {
    Vec v(d);
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t u = 0; u < n; ++u) {
        Coeff x = 0;
        fixed(row, j * n + u).is_prime_field(&x);
        unit[u] = x;
      }
      v[j] = big.from_coeffs(unit);
    }
    Matrix cand = Matrix::vstack(out, Matrix::from_rows(big, {v}, d));
    if (rank(cand) == cand.rows()) out = std::move(cand);
  }
  if (out.rows() != d) throw std::logic_error("F-eigenspace has the wrong dimension");
  return out;
}

EigenspaceLv f_eigenspace_lv(const LangInstance& inst, Rng& rng, unsigned max_draws) {
  auto [a, draws] = glasby_howlett(inst.c, inst.extension(), inst.solution_level(), rng, max_draws);
  return {a, a, draws};
}

bool same_k_span(const Matrix& a, const Matrix& b, const Level& k) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const FieldTower tower = k.tower();
  const Level& lv = tower.join(a.level(), b.level());
  const Matrix ae = a.embed(lv), be = b.embed(lv);
  if (rank(be) != be.rows()) return false;
  for (std::size_t i = 0; i < ae.rows(); ++i) {
    auto lam = solve_left(be, ae.row_view(i));
    if (!lam) return false;
    for (const auto& x : *lam) {
      if (!tower.restrict_to(x, k)) return false;
    }
  }
  return rank(ae) == ae.rows();
}

Fq volume(const Matrix& b) {
  if (!b.is_square()) throw LangInputError("volume of a non-square row set");
  return det(b);
}

LangCertificate verify(const LangInstance& inst, const Matrix& a) {
  LangCertificate cert{a, a.level().rel_degree(), inst.s, false, false, false, {}};
  const std::size_t d = inst.dim();
  auto fail = [&](std::string msg) {
    if (cert.failure.empty()) cert.failure = std::move(msg);
  };
  if (a.rows() != d || a.cols() != d) {
    fail("a has the wrong shape");
    return cert;
  }
  if (det(a).is_zero()) {
    fail("a is singular");
    return cert;
  }
  if (a.level().rel_degree() % inst.r) {
    fail("a does not lie over an extension of the field of c");
    return cert;
  }
  // a^{-F} a = c  <=>  a^F c = a
  const Matrix lhs = a.frobenius(1) * inst.c.embed(a.level());
  if (auto ij = first_difference(lhs, a)) {
    fail("a^{-F} a != c: entry " + entry(ij->first, ij->second) + " of a^F c differs from a");
  } else {
    cert.equation_ok = true;
  }

  cert.group_ok = true;
  switch (inst.kind) {
    case GroupKind::GL: break;
    case GroupKind::SL:
      if (!det(a).is_one()) {
        cert.group_ok = false;
        fail("det(a) != 1");
      }
      break;
    case GroupKind::Sp:
    case GroupKind::SO: {
      const Matrix g = inst.form->gram.embed(a.level());
      if (auto ij = first_difference(inst.form->gram_of(a), g)) {
        cert.group_ok = false;
        fail("a does not preserve the form: entry " + entry(ij->first, ij->second) + " of a G a^T");
      } else if (inst.kind == GroupKind::SO && !det(a).is_one()) {
        cert.group_ok = false;
        fail("det(a) != 1");
      }
      break;
    }
    case GroupKind::Torus:
      if (!is_diagonal(a)) {
        cert.group_ok = false;
        fail("a is not diagonal");
      }
      break;
  }

  const unsigned m = min_field_degree(inst.tower, a);
  if (m == inst.extension()) {
    cert.degree_ok = true;
  } else {
    fail("minimum field degree of a is " + std::to_string(m) + ", expected r*s = " + std::to_string(inst.extension()));
  }
  return cert;
}

namespace {

LangCertificate checked(const LangInstance& inst, const Matrix& a) {
  LangCertificate cert = verify(inst, a);
  if (!cert.ok()) throw LangError("solver produced an invalid certificate: " + cert.failure);
  return cert;
}

void require_kind(const LangInstance& inst, GroupKind k) {
  if (inst.kind != k) throw LangInputError("instance is " + to_string(inst.kind) + ", solver expects " + to_string(k));
}

// k-rational value of an element known to lie in k.
Fq in_base(const LangInstance& inst, const Fq& x, const char* what) {
  auto v = inst.tower.restrict_to(x, inst.tower.base());
  if (!v) throw std::logic_error(std::string(what) + " does not lie in k");
  return *v;
}

// Transformer from the reference basis to a normal basis of E(k).
Matrix form_transformer(const LangInstance& inst, Rng& rng) {
  const Matrix e = f_eigenspace_lv(inst, rng).basis;
  Matrix nb = normal_basis(e, *inst.form, rng);
  const Level& big = nb.level();
  const Matrix b0 = inst.form_basis->embed(big);
  if (!(inst.form->gram_of(nb) == inst.form->gram_of(b0))) {
    throw std::logic_error("normal bases of V(k) and E(k) have different Gram matrices");
  }
  const Matrix b0inv = *inverse(b0);
  Matrix a = b0inv * nb;
  if (inst.kind != GroupKind::SO) return a;
  const Fq v = in_base(inst, det(a), "volume ratio");
  if (v.is_one()) return a;
  if (!(v * v).is_one()) throw std::logic_error("volume of a normal eigenbasis does not square to 1");
  const std::size_t d = inst.dim();
  const bool antidiagonal = canonical_variant(FormKind::orthogonal, inst.form->gram_of(*inst.form_basis)) == false;
  if (antidiagonal && d > 1) {
    Vec first = nb.row(0);
    nb.set_row(0, nb.row_view(d - 1));
    nb.set_row(d - 1, first);
  } else {
    nb.set_row(d / 2, scale(nb.row_view(d / 2), -big.one()));
  }
  return b0inv * nb;
}

}  // namespace

LangCertificate solve_gl(const LangInstance& inst, Rng& rng) {
  require_kind(inst, GroupKind::GL);
  return checked(inst, f_eigenspace_lv(inst, rng).a);
}

LangCertificate solve_sl(const LangInstance& inst, Rng& rng) {
  require_kind(inst, GroupKind::SL);
  Matrix b = f_eigenspace_lv(inst, rng).basis;
  const Fq vol = in_base(inst, volume(b), "volume of the eigenbasis");
  b.set_row(0, scale(b.row_view(0), inst.tower.embed(vol, b.level()).inverse()));
  return checked(inst, b);
}

LangCertificate solve_sp(const LangInstance& inst, Rng& rng) {
  require_kind(inst, GroupKind::Sp);
  return checked(inst, form_transformer(inst, rng));
}

LangCertificate solve_so(const LangInstance& inst, Rng& rng) {
  require_kind(inst, GroupKind::SO);
  return checked(inst, form_transformer(inst, rng));
}

Vec solve_torus(const FieldTower& tower, const Vec& c, unsigned r, u128 s, Rng& rng) {
  const unsigned rs = static_cast<unsigned>(r * s);
  const Level& big = tower.extend(rs);
  Vec a;
  a.reserve(c.size());
  for (const Fq& ci : c) {
    if (ci.is_zero()) throw LangInputError("torus component is zero");
    const Matrix m = Matrix::diagonal(Vec{ci});
    if (!(m.frobenius(r) == m)) throw LangInputError("torus component is not fixed by F^r");
    a.push_back(glasby_howlett(m, rs, big, rng, 64).first(0, 0));
  }
  return a;
}

LangCertificate solve(const LangInstance& inst, Rng& rng) {
  switch (inst.kind) {
    case GroupKind::GL: return solve_gl(inst, rng);
    case GroupKind::SL: return solve_sl(inst, rng);
    case GroupKind::Sp: return solve_sp(inst, rng);
    case GroupKind::SO: return solve_so(inst, rng);
    case GroupKind::Torus: {
      Vec diag;
      for (std::size_t i = 0; i < inst.dim(); ++i) diag.push_back(inst.c(i, i));
      return checked(inst, Matrix::diagonal(solve_torus(inst.tower, diag, inst.r, inst.s, rng)));
    }
  }
  throw std::logic_error("unknown group kind");
}

Matrix random_gl(const Level& level, std::size_t d, Rng& rng) {
  for (;;) {
    Matrix m(level, d, d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) m(i, j) = level.random(rng);
    }
    if (!det(m).is_zero()) return m;
  }
}

Matrix random_sl(const Level& level, std::size_t d, Rng& rng) {
  Matrix m = random_gl(level, d, rng);
  m.set_row(0, scale(m.row_view(0), det(m).inverse()));
  return m;
}

LangInstance random_instance(GroupKind kind, FieldTower tower, std::size_t d, unsigned r, Rng& rng, const GeneratorOptions& opt) {
  const Level& k = tower.base();
  const Level& lr = tower.extend(r);
  std::optional<BilinearFormFq> form;
  if (kind == GroupKind::Sp || kind == GroupKind::SO) form = standard_form(form_kind_of(kind), k, d);
  for (unsigned tries = 0; tries < opt.max_tries; ++tries) {
    Matrix x = group_element(kind, form, k, d, rng);
    const u128 m = matrix_order(x);
    std::vector<unsigned> small;
    for (unsigned t = 1; t <= opt.max_s; ++t) {
      if (m % t == 0) small.push_back(t);
    }
    const unsigned t = small[std::uniform_int_distribution<std::size_t>(0, small.size() - 1)(rng)];
    x = x.pow(m / t);
    const Matrix b = group_element(kind, form, lr, d, rng);
    const Matrix c = *inverse(b.frobenius(1)) * x.embed(lr) * b;
    if (min_field_degree(tower, c) != r) continue;
    InstanceOptions io;
    io.r = r;
    return make_instance(kind, tower, c, form, io, &rng);
  }
  throw LangBudget("random_instance: no element of minimum field degree " + std::to_string(r) + " found");
}

}  // namespace lietype
