#include <algorithm>
#include <numeric>

#include "lietype/ff.hpp"
#include "lietype/poly.hpp"
#include "tower_impl.hpp"

namespace lietype {

namespace detail {

namespace {

// First monic irreducible of degree n, enumerating the low coefficients as
// base-p digits of an increasing index.
std::vector<Coeff> first_irreducible(unsigned n, Coeff p) {
  std::vector<Coeff> f(n + 1, 0);
  f[n] = 1;
  if (n == 1) return f;
  for (u64 idx = 1;; ++idx) {
    u64 v = idx;
    for (unsigned i = 0; i < n; ++i) {
      f[i] = static_cast<Coeff>(v % p);
      v /= p;
    }
    if (v != 0) throw FieldError("no irreducible polynomial found");
    if (f[0] != 0 && is_irreducible_mod_p(f, p)) return f;
  }
}

}  // namespace

TowerImpl::TowerImpl(Coeff p_, unsigned e_) : p(p_), e(e_), rng(0x70e5eedULL) {}

const Level& TowerImpl::extend(unsigned r) {
  if (r == 0) throw FieldError("extension degree must be positive");
  // Keep the set of levels closed under divisors; coherence of the greedy
  // embedding choices relies on it.
  for (unsigned d : divisors(r)) {
    if (!levels.count(d)) build(d);
  }
  return *levels.at(r);
}

const Embedding& TowerImpl::embedding(unsigned from, unsigned to) const {
  auto it = embeddings.find({from, to});
  if (it == embeddings.end()) throw FieldError("no embedding between these levels");
  return it->second;
}

bool TowerImpl::consistent(unsigned from, unsigned to, const Fq& image) const {
  const Level& target = *levels.at(to);
  for (unsigned s : divisors(from)) {
    if (s == from) continue;
    const Level& small = *levels.at(s);
    const Fq gen = small.generator();
    // generator of s written in level `from`, pushed through the candidate
    const Coeffs via = levels.at(from)->apply_matrix(embedding(s, from).rows, gen.coeffs().data());
    Fq acc = target.zero(), pw = target.one();
    for (Coeff c : via) {
      acc += pw * target.scalar(c);
      pw *= image;
    }
    const Fq direct(target, target.apply_matrix(embedding(s, to).rows, gen.coeffs().data()));
    if (!(acc == direct)) return false;
  }
  return true;
}

void TowerImpl::build(unsigned r) {
  std::vector<Coeff> mod = first_irreducible(e * r, p);
  auto level = std::unique_ptr<Level>(new Level(this, p, e, r, std::move(mod)));
  const Level& target = *level;
  levels.emplace(r, std::move(level));
  for (unsigned d : divisors(r)) {
    if (d == r) continue;
    const Level& small = *levels.at(d);
    std::vector<Fq> coeffs;
    for (Coeff c : small.modulus()) coeffs.push_back(target.scalar(c));
    std::vector<Fq> candidates = roots(Poly(target, coeffs), rng);
    if (candidates.size() != small.degree()) throw std::logic_error("defining polynomial does not split");
    std::sort(candidates.begin(), candidates.end(), [](const Fq& a, const Fq& b) { return a.less(b); });
    bool found = false;
    for (const Fq& beta : candidates) {
      if (!consistent(d, r, beta)) continue;
      Embedding emb;
      gfp::Mat m(small.degree(), target.degree());
      Fq pw = target.one();
      for (unsigned j = 0; j < small.degree(); ++j) {
        emb.rows.emplace_back(pw.coeffs().begin(), pw.coeffs().end());
        for (unsigned i = 0; i < target.degree(); ++i) m.at(j, i) = pw.coeffs()[i];
        pw *= beta;
      }
      emb.solver = gfp::RowSolver(m, p);
      embeddings.emplace(std::make_pair(d, r), std::move(emb));
      found = true;
      break;
    }
    if (!found) throw std::logic_error("no coherent embedding found");
  }
}

}  // namespace detail

FieldTower::FieldTower(Coeff p, unsigned e) {
  if (p <= 1 || !is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
  if (e == 0) throw FieldError("base degree must be positive");
  impl_ = std::make_shared<detail::TowerImpl>(p, e);
  impl_->extend(1);
}

Coeff FieldTower::p() const { return impl_->p; }
unsigned FieldTower::e() const { return impl_->e; }

u64 FieldTower::q() const {
  auto q = checked_pow(impl_->p, impl_->e);
  if (!q || *q > ~u64{0}) throw FieldError("q does not fit in 64 bits");
  return static_cast<u64>(*q);
}

const Level& FieldTower::base() const { return *impl_->levels.at(1); }

const Level& FieldTower::extend(unsigned r) const { return impl_->extend(r); }

const Level* FieldTower::find(unsigned r) const {
  auto it = impl_->levels.find(r);
  return it == impl_->levels.end() ? nullptr : it->second.get();
}

Fq FieldTower::embed(const Fq& x, const Level& to) const {
  if (!x.valid()) throw FieldError("uninitialized field element");
  const Level& from = x.level();
  if (&from == &to) return x;
  if (from.tower_ != impl_.get() || to.tower_ != impl_.get()) throw FieldError("levels belong to different towers");
  if (to.rel_degree() % from.rel_degree() != 0) throw FieldError("cannot embed " + from.spec() + " into " + to.spec());
  const auto& emb = impl_->embedding(from.rel_degree(), to.rel_degree());
  return Fq(to, to.apply_matrix(emb.rows, x.coeffs().data()));
}

std::optional<Fq> FieldTower::restrict_to(const Fq& x, const Level& to) const {
  if (!x.valid()) throw FieldError("uninitialized field element");
  const Level& from = x.level();
  if (&from == &to) return x;
  if (from.rel_degree() % to.rel_degree() != 0) throw FieldError("cannot restrict " + from.spec() + " to " + to.spec());
  const auto& emb = impl_->embedding(to.rel_degree(), from.rel_degree());
  auto y = emb.solver.solve(x.coeffs().data());
  if (!y) return std::nullopt;
  return Fq(to, Coeffs(y->begin(), y->end()));
}

std::pair<Fq, Fq> FieldTower::coerce(const Fq& a, const Fq& b) const {
  const unsigned ra = a.level().rel_degree(), rb = b.level().rel_degree();
  if (&a.level() == &b.level()) return {a, b};
  if (rb % ra == 0) return {embed(a, b.level()), b};
  if (ra % rb == 0) return {a, embed(b, a.level())};
  throw FieldError("incompatible levels " + a.level().spec() + " and " + b.level().spec());
}

const Level& FieldTower::join(const Level& a, const Level& b) const {
  return extend(std::lcm(a.rel_degree(), b.rel_degree()));
}

FieldTower make_tower(Coeff p, unsigned e) { return FieldTower(p, e); }

}  // namespace lietype
