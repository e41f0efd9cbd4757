#include "lietype/weyl.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace lietype {

using Perm = std::vector<std::uint16_t>;
using IntMat = std::vector<std::vector<long long>>;

namespace {

IntMat mat_identity(std::size_t n) {
  IntMat m(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
  const std::size_t n = a.size();
  IntMat c(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

Perm compose_perm(const Perm& a, const Perm& b) {
  Perm c(a.size());
  for (std::size_t r = 0; r < a.size(); ++r) c[r] = b[a[r]];
  return c;
}

Perm simple_reflection_perm(const RootDatum& rd, std::size_t i) {
  auto p = rd.reflection_permutation(i);
  return Perm(p.begin(), p.end());
}

// Coset representatives T_i with W_i = W_{i-1} T_i, W_i = <s_1..s_i>, found
// as the orbit of the i-th fundamental weight under W_i.
std::vector<std::vector<Perm>> coset_chain(const RootDatum& rd) {
  const unsigned n = rd.rank();
  std::vector<Perm> s;
  for (unsigned i = 0; i < n; ++i) s.push_back(simple_reflection_perm(rd, i));
  Perm id(rd.num_roots());
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<Perm>> chain;
  for (unsigned i = 0; i < n; ++i) {
    std::vector<int> start(n, 0);
    start[i] = 1;
    std::map<std::vector<int>, Perm> seen{{start, id}};
    std::deque<std::vector<int>> todo{start};
    std::vector<Perm> reps{id};
    while (!todo.empty()) {
      auto lam = todo.front();
      todo.pop_front();
      for (unsigned j = 0; j <= i; ++j) {
        if (lam[j] == 0) continue;
        auto mu = lam;
        for (unsigned k = 0; k < n; ++k) mu[k] -= lam[j] * rd.cartan(j, k);
        if (seen.count(mu)) continue;
        Perm t = compose_perm(seen.at(lam), s[j]);
        seen.emplace(mu, t);
        reps.push_back(t);
        todo.push_back(mu);
      }
    }
    chain.push_back(std::move(reps));
  }
  return chain;
}

// Ascending rational charpoly coefficients of det(lambda - M), via Hessenberg reduction.
std::vector<Rational> charpoly_rational(const IntMat& mi) {
  const std::size_t n = mi.size();
  std::vector<std::vector<Rational>> h(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h[i][j] = mi[i][j];
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t piv = m;
    while (piv < n && h[piv][m - 1].numerator() == 0) ++piv;
    if (piv == n) continue;
    if (piv != m) {
      std::swap(h[piv], h[m]);
      for (std::size_t i = 0; i < n; ++i) std::swap(h[i][piv], h[i][m]);
    }
    for (std::size_t i = m + 1; i < n; ++i) {
      if (h[i][m - 1].numerator() == 0) continue;
      Rational u = h[i][m - 1] / h[m][m - 1];
      for (std::size_t j = 0; j < n; ++j) h[i][j] -= u * h[m][j];
      for (std::size_t j = 0; j < n; ++j) h[j][m] += u * h[j][i];
    }
  }
  // p_k = charpoly of leading k x k block
  std::vector<std::vector<Rational>> p(n + 1);
  p[0] = {Rational(1)};
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<Rational> cur(k + 1, Rational(0));
    for (std::size_t i = 0; i < k; ++i) cur[i + 1] += p[k - 1][i];
    for (std::size_t i = 0; i < k; ++i) cur[i] -= h[k - 1][k - 1] * p[k - 1][i];
    Rational t = 1;
    for (std::size_t m = 1; m < k; ++m) {
      t *= h[k - m][k - m - 1];
      Rational coef = t * h[k - m - 1][k - 1];
      for (std::size_t i = 0; i < p[k - m - 1].size(); ++i) cur[i] -= coef * p[k - m - 1][i];
    }
    p[k] = std::move(cur);
  }
  return p[n];
}

// Exact division in Z[X]; throws when the remainder is nonzero.
IntPoly poly_divide_exact(IntPoly num, const IntPoly& den) {
  if (den.empty() || den.back() == 0) throw RootDataError("division by zero polynomial");
  if (num.size() < den.size()) {
    if (std::all_of(num.begin(), num.end(), [](long long v) { return v == 0; })) return {};
    throw RootDataError("inexact polynomial division");
  }
  IntPoly q(num.size() - den.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    long long top = num[k + den.size() - 1];
    if (top % den.back() != 0) throw RootDataError("inexact polynomial division");
    q[k] = top / den.back();
    for (std::size_t i = 0; i < den.size(); ++i) num[k + i] -= q[k] * den[i];
  }
  if (!std::all_of(num.begin(), num.end(), [](long long v) { return v == 0; }))
    throw RootDataError("inexact polynomial division");
  while (!q.empty() && q.back() == 0) q.pop_back();
  return q;
}

// Rank over Q of integer rows, by fraction-free elimination into `basis`.
bool independent_of(std::vector<std::vector<Rational>>& basis, std::vector<std::size_t>& pivots,
                    const IntVec& v) {
  std::vector<Rational> r(v.begin(), v.end());
  for (std::size_t b = 0; b < basis.size(); ++b) {
    const std::size_t pc = pivots[b];
    if (r[pc].numerator() == 0) continue;
    Rational f = r[pc] / basis[b][pc];
    for (std::size_t j = 0; j < r.size(); ++j) r[j] -= f * basis[b][j];
  }
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (r[j].numerator() != 0) {
      basis.push_back(r);
      pivots.push_back(j);
      return true;
    }
  }
  return false;
}

}  // namespace

WeylElement weyl_identity(const RootDatum& rd) {
  WeylElement w;
  w.perm.resize(rd.num_roots());
  std::iota(w.perm.begin(), w.perm.end(), 0);
  w.y = mat_identity(rd.rank());
  return w;
}

WeylElement weyl_reflection(const RootDatum& rd, std::size_t root) {
  WeylElement w;
  auto p = rd.reflection_permutation(root);
  w.perm.assign(p.begin(), p.end());
  const unsigned n = rd.rank();
  w.y = mat_identity(n);
  const auto &x = rd.root(root), &c = rd.coroot(root);
  // f_j -> f_j - <alpha, f_j> alpha^*
  for (unsigned j = 0; j < n; ++j)
    for (unsigned k = 0; k < n; ++k) w.y[j][k] -= static_cast<long long>(x[j]) * c[k];
  return w;
}

WeylElement weyl_compose(const WeylElement& a, const WeylElement& b) {
  return {compose_perm(a.perm, b.perm), mat_mul(a.y, b.y)};
}

WeylElement weyl_inverse(const WeylElement& w) {
  WeylElement r = w;
  for (std::size_t i = 0; i < w.perm.size(); ++i) r.perm[w.perm[i]] = static_cast<std::uint16_t>(i);
  // W has finite order: the inverse is w^(k-1).
  unsigned k = weyl_element_order(w);
  IntMat m = mat_identity(w.y.size());
  for (unsigned i = 0; i + 1 < k; ++i) m = mat_mul(m, w.y);
  r.y = m;
  return r;
}

WeylElement weyl_word(const RootDatum& rd, const std::vector<unsigned>& word) {
  WeylElement w = weyl_identity(rd);
  for (unsigned i : word) {
    if (i < 1 || i > rd.rank()) throw RootDataError("simple reflection index out of range");
    w = weyl_compose(w, weyl_reflection(rd, i - 1));
  }
  return w;
}

unsigned weyl_element_order(const WeylElement& w) {
  std::vector<bool> seen(w.perm.size(), false);
  u64 order = 1;
  for (std::size_t i = 0; i < w.perm.size(); ++i) {
    if (seen[i]) continue;
    u64 len = 0;
    for (std::size_t j = i; !seen[j]; j = w.perm[j]) {
      seen[j] = true;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return static_cast<unsigned>(order);
}

bool weyl_element_consistent(const RootDatum& rd, const WeylElement& w) {
  const unsigned n = rd.rank();
  for (std::size_t r = 0; r < rd.num_roots(); ++r) {
    const auto& c = rd.coroot(r);
    for (unsigned k = 0; k < n; ++k) {
      long long v = 0;
      for (unsigned j = 0; j < n; ++j) v += c[j] * w.y[j][k];
      if (v != rd.coroot(w.perm[r])[k]) return false;
    }
  }
  for (std::size_t r = 0; r < rd.num_roots(); ++r)
    for (std::size_t s = 0; s < rd.num_roots(); ++s)
      if (rd.pairing(w.perm[r], w.perm[s]) != rd.pairing(r, s)) return false;
  return true;
}

u64 weyl_group_order(const RootDatum& rd) {
  u64 order = 1;
  for (const auto& t : rd.components())
    for (unsigned d : invariant_degrees(t)) order *= d;
  return order;
}

void for_each_weyl_element(const RootDatum& rd, const std::function<void(const Perm&)>& visit, bool allow_large) {
  if (!allow_large && weyl_group_order(rd) > kDefaultEnumerationLimit)
    throw EnumerationGate("Weyl group of " + rd.type() + " has " + std::to_string(weyl_group_order(rd)) +
                          " elements; enumeration needs the opt-in flag");
  const auto chain = coset_chain(rd);
  const std::size_t n = chain.size();
  Perm id(rd.num_roots());
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::size_t> idx(n, 0);
  std::vector<Perm> prefix(n + 1, id);  // prefix[k] = t_1 ... t_k
  for (std::size_t k = 0; k < n; ++k) prefix[k + 1] = compose_perm(prefix[k], chain[k][0]);
  while (true) {
    visit(prefix[n]);
    std::size_t k = n;
    while (k > 0 && idx[k - 1] + 1 == chain[k - 1].size()) --k;
    if (k == 0) return;
    ++idx[k - 1];
    for (std::size_t j = k; j < n; ++j) idx[j] = 0;
    for (std::size_t j = k - 1; j < n; ++j) prefix[j + 1] = compose_perm(prefix[j], chain[j][idx[j]]);
  }
}

WeylElement coxeter_element(const RootDatum& rd) {
  if (!rd.is_irreducible()) throw RootDataError("Coxeter element needs an irreducible type");
  std::vector<unsigned> word(rd.rank());
  std::iota(word.begin(), word.end(), 1u);
  return weyl_word(rd, word);
}

WeylElement subcoxeter_element(const RootDatum& rd) {
  if (!rd.is_irreducible()) throw RootDataError("subcoxeter element needs an irreducible type");
  const SimpleType t = rd.components().front();
  if (t.family == 'A' && t.rank == 1) return weyl_identity(rd);
  if (t.family == 'D' && t.rank == 4) return weyl_word(rd, {1, 2, 1, 3, 2, 1, 4, 2, 1, 3, 2});
  // beta: short for B and F, long for C, the highest root otherwise.
  const std::size_t np = rd.num_positive();
  long long longest = 0, shortest = 0;
  for (std::size_t r = 0; r < np; ++r) {
    longest = std::max(longest, rd.norm(r));
    shortest = shortest == 0 ? rd.norm(r) : std::min(shortest, rd.norm(r));
  }
  const long long want = (t.family == 'B' || t.family == 'F') ? shortest : longest;
  std::size_t beta = np;
  for (std::size_t r = np; r-- > 0;)
    if (rd.norm(r) == want) {
      beta = r;
      break;
    }
  WeylElement w = weyl_reflection(rd, beta);
  if (t.family == 'G') return w;
  // Simple system of the positive roots orthogonal to beta.
  std::vector<std::size_t> perp;
  for (std::size_t r = 0; r < np; ++r)
    if (rd.pairing(r, beta) == 0) perp.push_back(r);
  std::set<std::size_t> perp_set(perp.begin(), perp.end());
  std::vector<std::size_t> simples;
  for (std::size_t r : perp) {
    bool decomposable = false;
    for (std::size_t a : perp) {
      auto b = rd.sum(r, rd.negative(a));
      if (b && perp_set.count(*b)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) simples.push_back(r);
  }
  // Components of the perpendicular subsystem; keep the one of largest rank.
  std::vector<int> comp(simples.size(), -1);
  int ncomp = 0;
  for (std::size_t i = 0; i < simples.size(); ++i) {
    if (comp[i] >= 0) continue;
    std::deque<std::size_t> todo{i};
    comp[i] = ncomp;
    while (!todo.empty()) {
      auto a = todo.front();
      todo.pop_front();
      for (std::size_t b = 0; b < simples.size(); ++b)
        if (comp[b] < 0 && rd.inner(simples[a], simples[b]) != 0) {
          comp[b] = ncomp;
          todo.push_back(b);
        }
    }
    ++ncomp;
  }
  std::vector<int> size(ncomp, 0);
  for (int c : comp) ++size[c];
  if (ncomp > 0) {
    int best = static_cast<int>(std::max_element(size.begin(), size.end()) - size.begin());
    if (std::count(size.begin(), size.end(), size[best]) > 1)
      throw RootDataError("subcoxeter element is ambiguous for " + rd.type());
    for (std::size_t i = 0; i < simples.size(); ++i)
      if (comp[i] == best) w = weyl_compose(w, weyl_reflection(rd, simples[i]));
  }
  return w;
}

bool is_reflection_derangement(const RootDatum& rd, const Perm& perm) {
  const std::size_t np = rd.num_positive();
  for (std::size_t r = 0; r < np; ++r)
    if (perm[r] == r || perm[r] == r + np) return false;
  return true;
}

DerangementStats reflection_derangement_stats(const RootDatum& rd, bool allow_large) {
  DerangementStats st;
  if (!rd.is_irreducible()) {
    // w deranges exactly when every component of w does.
    st.count = 1;
    st.total = 1;
    for (const auto& t : rd.components()) {
      auto part = reflection_derangement_stats(RootDatum::build(t.name(), rd.lattice()), allow_large);
      st.count *= part.count;
      st.total *= part.total;
    }
    st.proportion = Rational(static_cast<long long>(st.count), static_cast<long long>(st.total));
    return st;
  }
  for_each_weyl_element(
      rd,
      [&](const Perm& p) {
        ++st.total;
        if (is_reflection_derangement(rd, p)) ++st.count;
      },
      allow_large);
  st.proportion = Rational(static_cast<long long>(st.count), static_cast<long long>(st.total));
  return st;
}

IntPoly det_one_minus_wx(const WeylElement& w) {
  auto cp = charpoly_rational(w.y);
  const std::size_t n = w.y.size();
  IntPoly out(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    const Rational& a = cp[n - j];
    if (a.denominator() != 1) throw RootDataError("non-integral characteristic polynomial");
    out[j] = a.numerator();
  }
  return out;
}

long long det_q_minus_w(const WeylElement& w, long long q) {
  auto cp = charpoly_rational(w.y);
  Rational v = 0;
  for (std::size_t k = cp.size(); k-- > 0;) v = v * q + cp[k];
  return v.numerator();
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

IntPoly product_one_minus_powers(const std::vector<unsigned>& exps) {
  IntPoly p{1};
  for (unsigned e : exps) {
    IntPoly f(e + 1, 0);
    f[0] = 1;
    f[e] -= 1;
    p = poly_mul(p, f);
  }
  return p;
}

IntPoly qw_polynomial(const RootDatum& rd, const WeylElement& w) {
  std::vector<unsigned> degs;
  for (const auto& t : rd.components())
    for (unsigned d : invariant_degrees(t)) degs.push_back(d);
  return poly_divide_exact(product_one_minus_powers(degs), det_one_minus_wx(w));
}

std::vector<unsigned> orbit_constants(const RootDatum& rd, const WeylElement& w) {
  std::vector<unsigned> c(rd.rank(), 0);
  std::vector<bool> seen(rd.num_roots(), false);
  for (std::size_t r = 0; r < rd.num_roots(); ++r) {
    if (seen[r]) continue;
    for (std::size_t j = r; !seen[j]; j = w.perm[j]) seen[j] = true;
    std::vector<std::vector<Rational>> basis;
    std::vector<std::size_t> pivots;
    std::size_t cur = r;
    unsigned i = 0;
    while (independent_of(basis, pivots, rd.root(cur))) {
      ++i;
      cur = w.perm[cur];
    }
    ++c[i - 1];
  }
  return c;
}

u64 centralizer_order(const RootDatum& rd, const WeylElement& w, bool allow_large) {
  u64 count = 0;
  for_each_weyl_element(
      rd,
      [&](const Perm& g) {
        for (std::size_t r = 0; r < g.size(); ++r)
          if (w.perm[g[r]] != g[w.perm[r]]) return;
        ++count;
      },
      allow_large);
  return count;
}

std::string poly_to_string(const IntPoly& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    long long c = p[i];
    if (c == 0) continue;
    long long a = c < 0 ? -c : c;
    if (s.empty())
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    if (a != 1 || i == 0) s += std::to_string(a);
    if (i >= 1) s += "X";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

}  // namespace lietype
