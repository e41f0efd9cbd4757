#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "internal.hpp"
#include "lietype/liealg.hpp"

namespace lietype {

namespace {

using Key = std::vector<u128>;

Key key_of(const Vec& w) {
  Key k;
  for (const auto& x : w) k.push_back(x.level().index_of(x));
  return k;
}

std::string basis_name(const RootDatum& rd, std::size_t i) {
  const std::size_t n = rd.rank();
  if (i < n) return "h_" + std::to_string(i + 1);
  return "e_" + rd.root_name(i - n);
}

// Simple roots ordered so that each one after the first of its component is
// joined to an earlier one.
std::vector<std::size_t> connected_order(const RootDatum& rd) {
  const std::size_t l = rd.rank();
  std::vector<std::size_t> order;
  std::vector<bool> seen(l, false);
  for (std::size_t s = 0; s < l; ++s) {
    if (seen[s]) continue;
    seen[s] = true;
    order.push_back(s);
    for (std::size_t head = order.size() - 1; head < order.size(); ++head)
      for (std::size_t j = 0; j < l; ++j)
        if (!seen[j] && rd.cartan(order[head], j) != 0) {
          seen[j] = true;
          order.push_back(j);
        }
  }
  return order;
}

class Builder {
 public:
  Builder(const LieAlgebra& l, const RootDatum& rd, const Matrix& h, std::vector<RootLine> lines, Rng& rng)
      : l_(l), rd_(rd), h_(h), lines_(std::move(lines)), rng_(rng) {
    for (std::size_t i = 0; i < lines_.size(); ++i) index_[key_of(lines_[i].weight)] = i;
  }

  // Tries root identifications until one yields a verified basis.
  std::optional<Matrix> run(std::size_t max_candidates) {
    const std::size_t l = rd_.rank();
    order_ = connected_order(rd_);
    std::vector<std::size_t> position(l);
    for (std::size_t t = 0; t < l; ++t) position[order_[t]] = t;
    checks_.assign(l, {});
    for (std::size_t r = 0; r < rd_.num_roots(); ++r) {
      std::size_t last = 0;
      for (std::size_t i = 0; i < l; ++i)
        if (rd_.coords(r)[i] != 0) last = std::max(last, position[i]);
      checks_[last].push_back(r);
    }
    image_.assign(l, Vec{});
    assign_.assign(rd_.num_roots(), npos);
    used_.assign(lines_.size(), false);
    budget_ = max_candidates;
    result_.reset();
    search(0);
    return result_;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  bool search(std::size_t t) {
    if (t == order_.size()) {
      if (budget_ == 0) return true;
      --budget_;
      result_ = build();
      return result_.has_value();
    }
    const std::size_t s = order_[t];
    for (std::size_t cand = 0; cand < lines_.size(); ++cand) {
      if (used_[cand]) continue;
      image_[s] = lines_[cand].weight;
      std::vector<std::size_t> placed;
      bool ok = true;
      for (std::size_t r : checks_[t]) {
        Vec w(h_.rows(), l_.level().zero());
        for (std::size_t i = 0; i < rd_.rank(); ++i)
          if (rd_.coords(r)[i] != 0) axpy(w, l_.level().scalar(rd_.coords(r)[i]), image_[i]);
        auto it = index_.find(key_of(w));
        if (it == index_.end() || used_[it->second]) {
          ok = false;
          break;
        }
        used_[it->second] = true;
        assign_[r] = it->second;
        placed.push_back(r);
      }
      if (ok && search(t + 1)) return true;
      for (std::size_t r : placed) {
        used_[assign_[r]] = false;
        assign_[r] = npos;
      }
      if (budget_ == 0) return true;
    }
    return false;
  }

  std::optional<Matrix> build() {
    const Level& k = l_.level();
    const std::size_t n = rd_.rank(), nr = rd_.num_roots(), npos_roots = rd_.num_positive(), d = l_.dim();
    std::vector<Vec> e(nr);
    std::vector<Vec> h_alpha(n);
    for (std::size_t j = 0; j < n; ++j) {
      const Vec& ea = lines_[assign_[j]].vector;
      const Vec& fa = lines_[assign_[rd_.negative(j)]].vector;
      const Vec u = l_.bracket(ea, l_.bracket(fa, ea));
      std::size_t piv = 0;
      while (ea[piv].is_zero()) ++piv;
      const Fq two_a = u[piv] / ea[piv];
      if (two_a.is_zero() || !(u == scale(ea, two_a))) return std::nullopt;
      const Fq a = two_a / k.scalar(2);
      e[j] = ea;
      e[rd_.negative(j)] = scale(fa, a.inverse());
      h_alpha[j] = l_.bracket(e[rd_.negative(j)], e[j]);
    }
    // h_i = sum_k C_ik eta_k from: alpha_j(h_i) = <alpha_j, f_i> and
    // h_alpha_j = sum_i <e_i, alpha_j^*> h_i.
    const RowSpaceSolver eta(h_);
    const std::size_t nn = n * n;
    Matrix sys(k, 2 * nn, nn);
    Vec rhs(2 * nn, k.zero());
    std::size_t row = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j, ++row) {
        const Vec& lambda = lines_[assign_[j]].weight;
        for (std::size_t c = 0; c < n; ++c) sys(row, i * n + c) = lambda[c];
        rhs[row] = k.scalar(rd_.root(j)[i]);
      }
    for (std::size_t j = 0; j < n; ++j) {
      const auto g = eta.solve(h_alpha[j]);
      if (!g) return std::nullopt;
      for (std::size_t c = 0; c < n; ++c, ++row) {
        for (std::size_t i = 0; i < n; ++i) sys(row, i * n + c) = k.scalar(rd_.coroot(j)[i]);
        rhs[row] = (*g)[c];
      }
    }
    const auto particular = solve(sys, rhs);
    if (!particular) return std::nullopt;
    const Matrix null = kernel(sys);
    std::optional<Matrix> hbasis;
    for (int attempt = 0; attempt < 16 && !hbasis; ++attempt) {
      Vec u = *particular;
      if (attempt > 0) u = add(u, detail::random_in(null, rng_));
      Matrix c(k, n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < n; ++t) c(i, t) = u[i * n + t];
      if (!det(c).is_zero()) hbasis = c * h_;
      if (null.rows() == 0) break;
    }
    if (!hbasis) return std::nullopt;
    for (std::size_t g = n; g < npos_roots; ++g) {
      const auto [a, b] = rd_.extraspecial_pair(g);
      const std::size_t na = rd_.negative(a), nb = rd_.negative(b);
      e[g] = scale(l_.bracket(e[a], e[b]), k.scalar(rd_.structure_constant(a, b)).inverse());
      e[rd_.negative(g)] = scale(l_.bracket(e[na], e[nb]), k.scalar(rd_.structure_constant(na, nb)).inverse());
    }
    Matrix basis(k, n + nr, d);
    for (std::size_t i = 0; i < n; ++i) basis.set_row(i, hbasis->row_view(i));
    for (std::size_t r = 0; r < nr; ++r) basis.set_row(n + r, e[r]);
    if (!verify_chevalley_basis(l_, rd_, basis).ok) return std::nullopt;
    return basis;
  }

  const LieAlgebra& l_;
  const RootDatum& rd_;
  const Matrix& h_;
  std::vector<RootLine> lines_;
  Rng& rng_;
  std::map<Key, std::size_t> index_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<std::size_t>> checks_;
  std::vector<Vec> image_;
  std::vector<std::size_t> assign_;
  std::vector<bool> used_;
  std::size_t budget_ = 0;
  std::optional<Matrix> result_;
};

}  // namespace

ChevalleyBasis standard_chevalley_basis(const LieAlgebra& l, const RootDatum& rd, Rng& rng, const SearchOptions& opt,
                                        SearchStats* stats) {
  if (l.level().p() <= 3) throw LieError("characteristic must be greater than 3");
  const std::size_t n = rd.rank();
  if (l.dim() != n + rd.num_roots())
    throw LieError("dimension " + std::to_string(l.dim()) + " does not match type " + rd.type());
  SearchOptions o = opt;
  const std::size_t ell = std::max<std::size_t>(n, 1);
  if (!o.toral_budget) o.toral_budget = 64 * ell;
  if (!o.split_budget)
    o.split_budget = static_cast<std::size_t>(std::ceil(o.split_budget_factor * ell * std::log(ell + 1.0)));
  const Matrix h = split_maximal_toral_subalgebra(l, center(l), rng, o, stats);
  if (h.rows() != n) throw LieError("rank of L does not match type " + rd.type());
  auto lines = root_decomposition(l, h, rng);
  if (lines.size() != rd.num_roots()) throw LieError("number of roots of L does not match type " + rd.type());
  Builder builder(l, rd, h, std::move(lines), rng);
  if (auto basis = builder.run(1000)) return {std::move(*basis)};
  throw LieError("root system of L does not match type " + rd.type());
}

ChevalleyVerdict verify_chevalley_basis(const LieAlgebra& l, const RootDatum& rd, const Matrix& basis) {
  const std::size_t n = rd.rank(), nr = rd.num_roots(), dd = n + nr;
  if (l.level().p() <= 3) return {false, "characteristic must be greater than 3"};
  if (basis.rows() != dd || basis.cols() != l.dim() || l.dim() != dd)
    return {false, "basis has the wrong shape for type " + rd.type()};
  if (rank(basis) != dd) return {false, "basis does not span L"};
  const Level& k = l.level();
  auto row = [&](std::size_t i) { return basis.row_view(i); };
  auto e = [&](std::size_t r) { return basis.row_view(n + r); };
  for (std::size_t j = 0; j < n; ++j) {
    Vec want(l.dim(), k.zero());
    for (std::size_t i = 0; i < n; ++i) axpy(want, k.scalar(rd.coroot(j)[i]), row(i));
    if (!(l.bracket(e(rd.negative(j)), e(j)) == want))
      return {false, "[e_" + rd.root_name(rd.negative(j)) + ", e_" + rd.root_name(j) +
                         "] is not sum_i <e_i, alpha^*> h_i for simple root " + rd.root_name(j)};
  }
  for (std::size_t g = n; g < rd.num_positive(); ++g) {
    const auto [a, b] = rd.extraspecial_pair(g);
    for (int sign = 0; sign < 2; ++sign) {
      const std::size_t x = sign ? rd.negative(a) : a, y = sign ? rd.negative(b) : b;
      const std::size_t z = sign ? rd.negative(g) : g;
      const int nxy = rd.structure_constant(x, y);
      if (!(l.bracket(e(x), e(y)) == scale(e(z), k.scalar(nxy))))
        return {false, "extraspecial pair (" + rd.root_name(a) + ", " + rd.root_name(b) + ") of " + rd.root_name(g) +
                           ": [e_" + rd.root_name(x) + ", e_" + rd.root_name(y) + "] != " + std::to_string(nxy) +
                           " e_" + rd.root_name(z)};
    }
  }
  const LieAlgebra std_alg = LieAlgebra::from_root_datum(rd, l.tower(), k);
  for (std::size_t j = 0; j < dd; ++j) {
    const Matrix adj = l.ad(row(j));
    for (std::size_t i = 0; i < dd; ++i) {
      if (i == j) continue;
      Vec want(l.dim(), k.zero());
      for (const auto& [t, c] : std_alg.entries(i, j)) axpy(want, c, row(t));
      if (!(mul(row(i), adj) == want))
        return {false, "[" + basis_name(rd, i) + ", " + basis_name(rd, j) + "] differs from the Chevalley relations"};
    }
  }
  return {true, {}};
}

Matrix exp_ad_root(const LieAlgebra& l, const RootDatum& rd, std::size_t r, const Fq& t) {
  const Level& k = l.level();
  if (k.p() <= 3) throw LieError("truncated exponential needs characteristic greater than 3");
  if (l.dim() != rd.rank() + rd.num_roots()) throw LieError("algebra does not match the root datum");
  const Matrix d = l.ad_basis(rd.rank() + r) * t;
  const Matrix d2 = d * d, d3 = d2 * d;
  if (!(d3 * d).is_zero()) throw LieError("ad e_alpha is not nilpotent of order 4");
  const Matrix id = Matrix::identity(k, l.dim());
  return id + d + d2 * k.scalar(2).inverse() + d3 * k.scalar(6).inverse();
}

Matrix random_inner_automorphism(const LieAlgebra& l, const RootDatum& rd, Rng& rng, std::size_t word_length) {
  Matrix g = Matrix::identity(l.level(), l.dim());
  std::uniform_int_distribution<std::size_t> pick(0, rd.num_roots() - 1);
  for (std::size_t i = 0; i < word_length; ++i) {
    const std::size_t r = pick(rng);
    g = g * exp_ad_root(l, rd, r, l.level().random(rng));
  }
  return g;
}

bool is_automorphism(const LieAlgebra& l, const Matrix& g) {
  for (std::size_t j = 0; j < l.dim(); ++j) {
    const Matrix adj = l.ad(g.row_view(j));
    for (std::size_t i = 0; i < j; ++i) {
      Vec want = l.zero_vector();
      for (const auto& [t, c] : l.entries(i, j)) axpy(want, c, g.row_view(t));
      if (!(mul(g.row_view(i), adj) == want)) return false;
    }
  }
  return true;
}

LieAlgebra scramble(const LieAlgebra& l, const RootDatum& rd, Rng& rng, std::size_t word_length) {
  const Matrix g = random_inner_automorphism(l, rd, rng, word_length);
  for (;;) {
    Matrix p(l.level(), l.dim(), l.dim());
    for (std::size_t i = 0; i < l.dim(); ++i)
      for (std::size_t j = 0; j < l.dim(); ++j) p(i, j) = l.level().random(rng);
    if (!det(p).is_zero()) return l.change_basis(g * p);
  }
}

}  // namespace lietype
