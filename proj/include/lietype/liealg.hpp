#pragma once

// Structure-constant Lie algebras over a tower level, and the randomized
// searches for toral subalgebras and Chevalley bases. Characteristic > 3.

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lietype/matrix.hpp"
#include "lietype/poly.hpp"
#include "lietype/rootdata.hpp"

namespace lietype {

class LieError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A randomized search ran out of attempts. Never a wrong answer.
class BudgetExhausted : public LieError {
 public:
  using LieError::LieError;
};

struct StructureEntry {
  std::size_t k;
  Fq c;
};

class LieAlgebra {
 public:
  // entries[i * d + j] lists the nonzero c_ijk of [b_i, b_j]. Antisymmetry is
  // checked; the Jacobi identity is checked by check_jacobi().
  LieAlgebra(FieldTower tower, const Level& level, std::size_t dim, std::vector<std::vector<StructureEntry>> entries);

  // Basis h_1..h_n, then e_r for every root index r.
  static LieAlgebra from_root_datum(const RootDatum& rd, FieldTower tower, const Level& level);

  const FieldTower& tower() const { return tower_; }
  const Level& level() const { return *level_; }
  std::size_t dim() const { return dim_; }
  const std::vector<StructureEntry>& entries(std::size_t i, std::size_t j) const { return sc_[i * dim_ + j]; }

  // Set for algebras from a root datum and kept under change of basis.
  const RootDatum* root_datum() const { return rd_.get(); }
  std::optional<unsigned> rank() const;
  bool has_p_map() const { return rd_ != nullptr; }

  Vec zero_vector() const;
  Vec basis_vector(std::size_t i) const;
  Vec bracket(std::span<const Fq> x, std::span<const Fq> y) const;
  // Row i is [b_i, x], so v ad(x) = [v, x].
  Matrix ad(std::span<const Fq> x) const;
  Matrix ad_basis(std::size_t j) const;

  // The same algebra in the basis given by the rows of an invertible s.
  LieAlgebra change_basis(const Matrix& s) const;
  // The subalgebra spanned by independent rows, in that basis.
  LieAlgebra restrict_to(const Matrix& basis) const;
  // L/I for I spanned by the first r basis vectors (which must be an ideal).
  LieAlgebra quotient_leading(std::size_t r) const;

  // Exhaustive on basis triples when dim <= exhaustive_limit, otherwise
  // `samples` random triples. Returns the first failing triple.
  std::optional<std::array<std::size_t, 3>> check_jacobi(Rng& rng, std::size_t exhaustive_limit = 60,
                                                          std::size_t samples = 100000) const;

 private:
  FieldTower tower_;
  const Level* level_;
  std::size_t dim_;
  std::vector<std::vector<StructureEntry>> sc_;
  std::shared_ptr<const RootDatum> rd_;
};

// Subspaces are row-basis matrices in the coordinates of their algebra.
Matrix empty_subspace(const LieAlgebra& l);
Matrix full_space(const LieAlgebra& l);
Matrix span_of(const LieAlgebra& l, const std::vector<Vec>& vectors);
bool is_subalgebra(const LieAlgebra& l, const Matrix& s);
bool is_abelian(const LieAlgebra& l, const Matrix& s);
Matrix center(const LieAlgebra& l);
// {x in L : [x, s] = 0 for every row s}
Matrix centralizer(const LieAlgebra& l, const Matrix& s);
// {x in M : [x, s] = 0 for every row s}
Matrix centralizer_in(const LieAlgebra& l, const Matrix& m, const Matrix& s);
// Center of the subalgebra M.
Matrix center_of(const LieAlgebra& l, const Matrix& m);
Matrix generate_subalgebra(const LieAlgebra& l, const Matrix& gens);

// y with ad(y) = (ad x)^p, reduced modulo Z(L) to a canonical representative.
Vec p_power_mod_center(const LieAlgebra& l, std::span<const Fq> x);
// The p-map applied e*t times: x^(q^t) + Z(L).
Vec q_power_mod_center(const LieAlgebra& l, std::span<const Fq> x, unsigned t = 1);

// ad x is diagonalizable over the algebraic closure.
bool is_semisimple_element(const LieAlgebra& l, std::span<const Fq> x, Rng& rng);
bool is_regular_semisimple(const LieAlgebra& l, std::span<const Fq> x, Rng& rng);
// Abelian and b^q = b mod Z(L) on a basis; dim = n when the rank is known.
bool is_split_toral(const LieAlgebra& l, const Matrix& h);

struct SearchOptions {
  // Toral draws per maximal_toral_subalgebra call; 0 means 64 * rank.
  std::size_t toral_budget = 0;
  // Outer loops of the split search; 0 means ceil(8 l ln(l + 1)).
  std::size_t split_budget = 0;
  double split_budget_factor = 8.0;
};

struct SearchStats {
  std::size_t toral_draws = 0;
  std::size_t split_loops = 0;
  std::size_t k2_fallbacks = 0;
  std::size_t recursions = 0;
};

Matrix maximal_toral_subalgebra(const LieAlgebra& l, Rng& rng, const SearchOptions& opt = {},
                                SearchStats* stats = nullptr);

struct GeneralizedRoot {
  std::vector<Poly> f;
  bool operator==(const GeneralizedRoot& o) const { return f == o.f; }
  std::string to_string() const;
};

GeneralizedRoot f_minus(const GeneralizedRoot& g);
unsigned gr_degree(const GeneralizedRoot& g);

struct GeneralizedRootSpace {
  GeneralizedRoot root;
  Matrix space;
};

// H is a maximal toral subalgebra containing z, and z lies in Z(L). The
// decomposition is computed in L/z with respect to the given basis of H and
// pulled back along the coordinate section.
std::vector<GeneralizedRootSpace> generalized_roots(const LieAlgebra& l, const Matrix& h, const Matrix& z, Rng& rng);

// Direct sum components of L; computes its own maximal toral subalgebra when
// h is empty.
std::vector<Matrix> components(const LieAlgebra& l, const std::optional<Matrix>& h, Rng& rng,
                               const SearchOptions& opt = {}, SearchStats* stats = nullptr);

Matrix split_maximal_toral_subalgebra(const LieAlgebra& l, const Matrix& z, Rng& rng, const SearchOptions& opt = {},
                                      SearchStats* stats = nullptr);
// With z = Z(L).
Matrix split_maximal_toral_subalgebra(const LieAlgebra& l, Rng& rng, const SearchOptions& opt = {},
                                      SearchStats* stats = nullptr);

struct RootLine {
  Vec weight;  // eigenvalue of ad h_i for each basis row h_i of H
  Vec vector;
};

std::vector<RootLine> root_decomposition(const LieAlgebra& l, const Matrix& h, Rng& rng);

struct ChevalleyBasis {
  Matrix basis;  // rows h_1..h_n, then e_r in root index order
};

ChevalleyBasis standard_chevalley_basis(const LieAlgebra& l, const RootDatum& rd, Rng& rng,
                                        const SearchOptions& opt = {}, SearchStats* stats = nullptr);

struct ChevalleyVerdict {
  bool ok = false;
  std::string witness;
};

ChevalleyVerdict verify_chevalley_basis(const LieAlgebra& l, const RootDatum& rd, const Matrix& basis);

// Matrix of exp(t ad e_r) in the coordinates of from_root_datum(rd).
Matrix exp_ad_root(const LieAlgebra& l, const RootDatum& rd, std::size_t r, const Fq& t);
// Product of word_length random factors exp(t ad e_r).
Matrix random_inner_automorphism(const LieAlgebra& l, const RootDatum& rd, Rng& rng, std::size_t word_length);
// [x g, y g] = [x, y] g on all basis pairs.
bool is_automorphism(const LieAlgebra& l, const Matrix& g);

// The algebra in a random basis: rows of g * P for a random invertible P.
LieAlgebra scramble(const LieAlgebra& l, const RootDatum& rd, Rng& rng, std::size_t word_length = 8);

}  // namespace lietype
