#include <algorithm>
#include <cmath>
#include <numeric>

#include "internal.hpp"
#include "lietype/liealg.hpp"

namespace lietype {

using detail::Section;

namespace {

u128 field_size(const Level& lv) {
  if (!lv.size()) throw LieError("field too large");
  return *lv.size();
}

struct Budgets {
  std::size_t toral;
  std::size_t split;
};

Budgets resolve(const SearchOptions& opt, std::size_t rank) {
  const std::size_t l = std::max<std::size_t>(rank, 1);
  Budgets b{};
  b.toral = opt.toral_budget ? opt.toral_budget : 64 * l;
  b.split = opt.split_budget ? opt.split_budget
                             : static_cast<std::size_t>(std::ceil(opt.split_budget_factor * l * std::log(l + 1.0)));
  return b;
}

std::size_t rank_hint(const LieAlgebra& l) { return l.rank() ? *l.rank() : l.dim(); }

bool semisimple_matrix(const Matrix& a, Rng& rng) {
  const Poly g = charpoly(a);
  Poly rad = Poly::constant(a.level().one());
  for (const auto& f : factor(g, rng)) rad = rad * f.poly;
  return eval_poly(rad, a).is_zero();
}

// Abelian, and (ad b)^q = ad b for every row b.
bool split_toral_in(const LieAlgebra& l, const Matrix& h) {
  if (!is_abelian(l, h)) return false;
  const u128 q = field_size(l.level());
  for (std::size_t i = 0; i < h.rows(); ++i) {
    const Matrix a = l.ad(h.row_view(i));
    if (!(a.pow(q) == a)) return false;
  }
  return true;
}

}  // namespace

bool is_semisimple_element(const LieAlgebra& l, std::span<const Fq> x, Rng& rng) {
  return semisimple_matrix(l.ad(x), rng);
}

bool is_regular_semisimple(const LieAlgebra& l, std::span<const Fq> x, Rng& rng) {
  if (!l.rank()) throw LieError("regularity needs the rank of the algebra");
  const Matrix c = centralizer(l, Matrix::from_rows(l.level(), {Vec(x.begin(), x.end())}, l.dim()));
  if (c.rows() != *l.rank()) return false;
  return is_abelian(l, c) && is_semisimple_element(l, x, rng);
}

bool is_split_toral(const LieAlgebra& l, const Matrix& h) {
  if (l.rank() && h.rows() != *l.rank()) return false;
  return split_toral_in(l, h);
}

// ---- maximal toral subalgebras ----

namespace {

Matrix maximal_toral_impl(const LieAlgebra& l, Rng& rng, std::size_t budget, SearchStats& stats) {
  Matrix m = full_space(l);
  std::size_t draws = 0;
  while (!is_abelian(l, m)) {
    if (draws++ >= budget) throw BudgetExhausted("no maximal toral subalgebra within the draw budget");
    ++stats.toral_draws;
    const Vec x = detail::random_in(m, rng);
    if (!is_semisimple_element(l, x, rng)) continue;
    Matrix c = centralizer_in(l, m, Matrix::from_rows(l.level(), {x}, l.dim()));
    if (c.rows() == m.rows()) continue;  // x is central in M
    m = std::move(c);
  }
  return m;
}

}  // namespace

Matrix maximal_toral_subalgebra(const LieAlgebra& l, Rng& rng, const SearchOptions& opt, SearchStats* stats) {
  SearchStats local;
  return maximal_toral_impl(l, rng, resolve(opt, rank_hint(l)).toral, stats ? *stats : local);
}

// ---- generalized roots ----

std::string GeneralizedRoot::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? ", " : "") + f[i].to_string();
  return s + ")";
}

GeneralizedRoot f_minus(const GeneralizedRoot& g) {
  GeneralizedRoot out;
  for (const auto& p : g.f) out.f.push_back(p.negated_variable());
  return out;
}

unsigned gr_degree(const GeneralizedRoot& g) {
  unsigned d = 1;
  for (const auto& p : g.f) d = std::lcm(d, static_cast<unsigned>(p.degree()));
  return d;
}

namespace {

// Decomposition of the whole algebra with respect to the rows of h (a toral
// subalgebra), including the all-X part.
std::vector<GeneralizedRootSpace> decompose(const LieAlgebra& l, const Matrix& h, Rng& rng) {
  std::vector<GeneralizedRootSpace> parts{{GeneralizedRoot{}, full_space(l)}};
  for (std::size_t i = 0; i < h.rows(); ++i) {
    const Matrix a = l.ad(h.row_view(i));
    std::vector<GeneralizedRootSpace> next;
    for (const auto& [g, w] : parts) {
      const Matrix r = detail::restricted_action(w, a);
      std::size_t covered = 0;
      for (const auto& f : factor(charpoly(r), rng)) {
        const Matrix k = left_kernel(eval_poly(f.poly, r));
        if (k.rows() == 0) continue;
        covered += k.rows();
        GeneralizedRoot g2 = g;
        g2.f.push_back(f.poly);
        next.push_back({std::move(g2), k * w});
      }
      if (covered != w.rows()) throw LieError("toral element does not act semisimply");
    }
    parts = std::move(next);
  }
  return parts;
}

bool all_x(const GeneralizedRoot& g) {
  return std::all_of(g.f.begin(), g.f.end(), [](const Poly& p) { return p.degree() == 1 && p.coeff(0).is_zero(); });
}

}  // namespace

std::vector<GeneralizedRootSpace> generalized_roots(const LieAlgebra& l, const Matrix& h, const Matrix& z, Rng& rng) {
  const Section sec(l, z);
  const Matrix hq = sec.project_rows(h);
  std::vector<GeneralizedRootSpace> out;
  std::size_t total = hq.rows();
  for (auto& part : decompose(sec.quotient(), hq, rng)) {
    if (all_x(part.root)) {
      if (part.space.rows() != hq.rows()) throw LieError("H is not a maximal toral subalgebra");
      continue;
    }
    total += part.space.rows();
    out.push_back({std::move(part.root), sec.lift_rows(part.space)});
  }
  if (total != sec.quotient().dim()) throw LieError("generalized root spaces do not span L/Z");
  return out;
}

// ---- components ----

namespace {

std::vector<Matrix> components_impl(const LieAlgebra& l, const std::optional<Matrix>& h_opt, Rng& rng,
                                    const Budgets& b, SearchStats& stats) {
  const Matrix h = h_opt ? *h_opt : maximal_toral_impl(l, rng, b.toral, stats);
  const auto roots = generalized_roots(l, h, empty_subspace(l), rng);
  std::vector<Matrix> mf;
  for (const auto& g : roots) mf.push_back(generate_subalgebra(l, g.space));
  const std::size_t n = mf.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (find(i) == find(j)) continue;
      // The intersection test alone misses edges when H is split (each M_f is
      // then a line), so non-commuting root spaces are joined as well.
      bool edge = !detail::contained_in(intersect_row_spaces(mf[i], mf[j]), h);
      for (std::size_t a = 0; !edge && a < roots[j].space.rows(); ++a) {
        const Matrix ad = l.ad(roots[j].space.row_view(a));
        for (std::size_t c = 0; !edge && c < roots[i].space.rows(); ++c)
          edge = !is_zero_vec(mul(roots[i].space.row_view(c), ad));
      }
      if (edge) parent[find(i)] = find(j);
    }
  std::vector<Matrix> out;
  for (std::size_t r = 0; r < n; ++r) {
    if (find(r) != r) continue;
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < n; ++i)
      if (find(i) == r)
        for (auto& v : mf[i].row_list()) gens.push_back(std::move(v));
    out.push_back(generate_subalgebra(l, Matrix::from_rows(l.level(), gens, l.dim())));
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      for (std::size_t a = 0; a < out[j].rows(); ++a) {
        const Matrix ad = l.ad(out[j].row_view(a));
        for (std::size_t c = 0; c < out[i].rows(); ++c)
          if (!is_zero_vec(mul(out[i].row_view(c), ad))) throw LieError("components do not commute");
      }
  return out;
}

}  // namespace

std::vector<Matrix> components(const LieAlgebra& l, const std::optional<Matrix>& h, Rng& rng,
                               const SearchOptions& opt, SearchStats* stats) {
  SearchStats local;
  return components_impl(l, h, rng, resolve(opt, rank_hint(l)), stats ? *stats : local);
}

// ---- split maximal toral subalgebras ----

namespace {

Poly embed_poly(const Poly& f, const Level& to) {
  std::vector<Fq> c;
  for (const auto& x : f.coeffs()) c.push_back(to.tower().embed(x, to));
  return Poly(to, std::move(c));
}

// f has degree 2 and f = f_-: pick a root alpha of Phi_f over the quadratic
// extension and return a k-basis of L_alpha + L_-alpha inside q.
Matrix root_pair_over_k2(const LieAlgebra& q, const Matrix& h, const GeneralizedRoot& g, const Matrix& space,
                         Rng& rng) {
  const Level& k = q.level();
  const Level& k2 = q.tower().extend(2 * k.rel_degree());
  Matrix w = space.embed(k2);
  for (std::size_t i = 0; i < h.rows() && w.rows() > 1; ++i) {
    const Matrix a = q.ad(h.row_view(i)).embed(k2);
    const Matrix wa = w * a;
    bool narrowed = false;
    for (const auto& lambda : roots(embed_poly(g.f[i], k2), rng)) {
      const Matrix c = left_kernel(wa - w * lambda);
      if (c.rows() == 0) continue;
      w = c * w;
      narrowed = true;
      break;
    }
    if (!narrowed) throw LieError("no eigenvector for a generalized root over the quadratic extension");
  }
  const Vec v = w.row(0);
  const long long r = k.rel_degree();
  Vec vf;
  for (const auto& x : v) vf.push_back(k2.frobenius(x, r));
  const Fq theta = k2.generator();
  const Fq theta_f = k2.frobenius(theta, r);
  Matrix pair(k2, 2, v.size());
  pair.set_row(0, add(v, vf));
  pair.set_row(1, add(scale(v, theta), scale(vf, theta_f)));
  const auto down = pair.restrict_to(k);
  if (!down) throw LieError("trace vectors are not rational");
  return *down;
}

Matrix split_impl(const LieAlgebra& a, const Matrix& z, Rng& rng, const Budgets& b, SearchStats& stats,
                  unsigned depth);

// Runs the split search on the subalgebra m of a, with central part zm.
Matrix split_in_subalgebra(const LieAlgebra& a, const Matrix& m, const Matrix& zm, Rng& rng, const Budgets& b,
                           SearchStats& stats, unsigned depth) {
  const Matrix zb = zm.rows() ? row_basis(zm) : zm;
  const Matrix basis = detail::basis_extending(zb, m);
  const LieAlgebra sub = a.restrict_to(basis);
  const Matrix zlocal = Matrix::identity(a.level(), sub.dim()).rows_range(0, zb.rows());
  ++stats.recursions;
  const Matrix k = split_impl(sub, zlocal, rng, b, stats, depth + 1);
  return k.rows() ? k * basis : Matrix(a.level(), 0, a.dim());
}

Matrix split_impl(const LieAlgebra& a, const Matrix& z, Rng& rng, const Budgets& b, SearchStats& stats,
                  unsigned depth) {
  if (depth > 64) throw LieError("split search recursion too deep");
  const Section sec(a, z);
  const LieAlgebra& q = sec.quotient();
  std::size_t loops = 0, free_retries = 0;
  Matrix mq(a.level(), 0, q.dim());
  for (;;) {
    if (loops >= b.split) throw BudgetExhausted("no split maximal toral subalgebra within the loop budget");
    ++loops;
    ++stats.split_loops;
    const Matrix hq = maximal_toral_impl(q, rng, b.toral, stats);
    const Matrix h = sec.preimage(hq);
    if (split_toral_in(a, h)) return row_basis(h);
    const auto decomposition = generalized_roots(q, hq, empty_subspace(q), rng);
    bool found = false;
    for (const auto& g : decomposition) {
      if (gr_degree(g.root) != 1) continue;
      const GeneralizedRoot gm = f_minus(g.root);
      for (const auto& g2 : decomposition)
        if (g2.root == gm) {
          mq = generate_subalgebra(q, Matrix::vstack(g.space, g2.space));
          found = true;
          break;
        }
      if (found) break;
    }
    if (!found)
      for (const auto& g : decomposition) {
        if (gr_degree(g.root) != 2 || !(f_minus(g.root) == g.root)) continue;
        mq = generate_subalgebra(q, g.space);
        if (mq.rows() != 3) {
          ++stats.k2_fallbacks;
          mq = generate_subalgebra(q, root_pair_over_k2(q, hq, g.root, g.space, rng));
        }
        found = true;
        break;
      }
    if (!found) continue;
    // M = L is the same problem again; retry without charging the budget.
    if (mq.rows() == q.dim() && free_retries < 64 * b.split) {
      --loops;
      ++free_retries;
      continue;
    }
    break;
  }
  const Matrix m = sec.preimage(mq);
  const Matrix zm = sec.preimage(center_of(q, mq));
  const Matrix hm = split_in_subalgebra(a, m, zm, rng, b, stats, depth);
  const Matrix cq = centralizer(q, sec.project_rows(hm));
  const Matrix c = sec.preimage(cq);
  const Matrix z2 = row_basis(sec.preimage(center_of(q, cq)));
  if (c.rows() == a.dim()) throw LieError("centralizer of a split toral subalgebra is everything");
  // C / Z2 and its direct sum components
  const Matrix cbasis = detail::basis_extending(z2, c);
  const LieAlgebra cz = a.restrict_to(cbasis).quotient_leading(z2.rows());
  Matrix k = z2;
  if (cz.dim() > 0) {
    const Matrix lift = cbasis.rows_range(z2.rows(), cbasis.rows());
    for (const auto& comp : components_impl(cz, std::nullopt, rng, b, stats)) {
      const Matrix mc = Matrix::vstack(z2, comp * lift);
      k = Matrix::vstack(k, split_in_subalgebra(a, mc, z2, rng, b, stats, depth));
    }
  }
  return row_basis(k);
}

}  // namespace

Matrix split_maximal_toral_subalgebra(const LieAlgebra& l, const Matrix& z, Rng& rng, const SearchOptions& opt,
                                      SearchStats* stats) {
  if (l.level().p() <= 3) throw LieError("characteristic must be greater than 3");
  SearchStats local;
  SearchStats& st = stats ? *stats : local;
  const Budgets b = resolve(opt, rank_hint(l));
  const Matrix h = split_impl(l, z.rows() ? row_basis(z) : z, rng, b, st, 0);
  if (!split_toral_in(l, h) || (l.rank() && h.rows() != *l.rank()))
    throw LieError("split search produced a subalgebra that is not split maximal toral");
  return h;
}

Matrix split_maximal_toral_subalgebra(const LieAlgebra& l, Rng& rng, const SearchOptions& opt, SearchStats* stats) {
  return split_maximal_toral_subalgebra(l, center(l), rng, opt, stats);
}

// ---- root decomposition ----

std::vector<RootLine> root_decomposition(const LieAlgebra& l, const Matrix& h, Rng& rng) {
  if (!split_toral_in(l, h)) throw LieError("H is not split toral");
  struct Part {
    Vec weight;
    Matrix space;
  };
  std::vector<Part> parts{{{}, full_space(l)}};
  for (std::size_t i = 0; i < h.rows(); ++i) {
    const Matrix a = l.ad(h.row_view(i));
    std::vector<Part> next;
    for (const auto& [wt, w] : parts) {
      const Matrix r = detail::restricted_action(w, a);
      std::size_t covered = 0;
      for (const auto& lambda : roots(charpoly(r), rng)) {
        const Matrix k = left_kernel(r - Matrix::identity(l.level(), r.rows()) * lambda);
        covered += k.rows();
        Vec wt2 = wt;
        wt2.push_back(lambda);
        next.push_back({std::move(wt2), k * w});
      }
      if (covered != w.rows()) throw LieError("H does not act diagonalizably");
    }
    parts = std::move(next);
  }
  std::vector<RootLine> out;
  for (auto& [wt, w] : parts) {
    if (is_zero_vec(wt)) continue;
    if (w.rows() != 1) throw LieError("root space of dimension other than one");
    out.push_back({std::move(wt), w.row(0)});
  }
  return out;
}

}  // namespace lietype
