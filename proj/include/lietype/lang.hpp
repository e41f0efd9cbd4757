#pragma once

// Lang's theorem for GL, SL, Sp, SO and split tori: given c in G(k_r), find a
// with a^{-F} a = c, where F raises entries to the q-th power, q = |k|.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lietype/matrix.hpp"

namespace lietype {

class LangError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The instance violates a precondition.
class LangInputError : public LangError {
 public:
  using LangError::LangError;
};

// A Las Vegas loop or a size cap ran out.
class LangBudget : public LangError {
 public:
  using LangError::LangError;
};

enum class GroupKind { GL, SL, Sp, SO, Torus };
std::string to_string(GroupKind k);
std::optional<GroupKind> parse_group_kind(const std::string& s);

enum class FormKind { symplectic, orthogonal };

// (u, v) = u G v^T with G over the base level k. Odd characteristic only.
struct BilinearFormFq {
  FormKind kind;
  Matrix gram;
  Fq delta;  // fixed nonsquare of k

  // Checks symmetry or alternation and nondegeneracy.
  BilinearFormFq(FormKind kind, Matrix gram);
  Fq operator()(std::span<const Fq> u, std::span<const Fq> v) const;
  // Gram matrix of the rows of b (any level containing k).
  Matrix gram_of(const Matrix& b) const;
};

// The reference Gram matrices. `variant` selects the delta form for
// orthogonal spaces and must be false for symplectic ones.
Matrix canonical_gram(FormKind kind, const Level& k, std::size_t d, bool variant);
BilinearFormFq standard_form(FormKind kind, const Level& k, std::size_t d);
// Which canonical Gram matrix g is, if any.
std::optional<bool> canonical_variant(FormKind kind, const Matrix& g);

// Rows of the result span the same space as `basis` and have a canonical Gram
// matrix. The rows may lie over an extension, as long as the Gram matrix of
// `basis` lies in k.
Matrix normal_basis(const Matrix& basis, const BilinearFormFq& form, Rng& rng);

// Least r dividing the level degree of g with g^{F^r} = g.
unsigned min_field_degree(const FieldTower& tower, const Matrix& g);
unsigned min_field_degree(const FieldTower& tower, const Fq& x);

struct InstanceOptions {
  std::optional<unsigned> r;    // checked against the computed value
  std::optional<u128> s;        // used only when trust_s is set
  bool trust_s = false;
  unsigned max_extension = 96;  // cap on r*s
  u64 order_cap = 1000000;
};

struct LangInstance {
  GroupKind kind;
  FieldTower tower;
  Matrix c;  // at level r; diagonal for tori
  unsigned r = 1;
  u128 s = 1;
  std::optional<BilinearFormFq> form;
  // Rows: a basis of V(k) with canonical Gram matrix (identity for the
  // standard forms).
  std::optional<Matrix> form_basis;

  unsigned extension() const { return static_cast<unsigned>(r * s); }
  const Level& solution_level() const { return tower.extend(extension()); }
  std::size_t dim() const { return c.rows(); }
};

// Validates c, restricts it to level r and computes s.
LangInstance make_instance(GroupKind kind, FieldTower tower, const Matrix& c, std::optional<BilinearFormFq> form = std::nullopt,
                           const InstanceOptions& opt = {}, Rng* rng = nullptr);

// N = c^{F^{r-1}} ... c^F c and its order.
std::pair<Matrix, u128> norm_and_order(const FieldTower& tower, const Matrix& c, unsigned r, u64 cap = 1000000);

// F-eigenspace E(k) = {v : v^F c = v} as d rows over level r*s.
Matrix f_eigenspace_det(const LangInstance& inst);

struct EigenspaceLv {
  Matrix basis;  // rows of a, a k-basis of E(k)
  Matrix a;      // a^{-F} a = c
  unsigned draws = 0;
};
EigenspaceLv f_eigenspace_lv(const LangInstance& inst, Rng& rng, unsigned max_draws = 64);

// Do the k-spans of the rows agree? Both must be k-forms of the same space.
bool same_k_span(const Matrix& a, const Matrix& b, const Level& k);

Fq volume(const Matrix& b);

struct LangCertificate {
  Matrix a;
  unsigned level = 0;  // relative degree of the level of a
  u128 s = 1;
  bool equation_ok = false;
  bool group_ok = false;
  bool degree_ok = false;
  std::string failure;  // first failed check, with location
  bool ok() const { return equation_ok && group_ok && degree_ok; }
};

LangCertificate verify(const LangInstance& inst, const Matrix& a);

LangCertificate solve_gl(const LangInstance& inst, Rng& rng);
LangCertificate solve_sl(const LangInstance& inst, Rng& rng);
LangCertificate solve_sp(const LangInstance& inst, Rng& rng);
LangCertificate solve_so(const LangInstance& inst, Rng& rng);
// Componentwise GL_1 solutions over level r*s.
Vec solve_torus(const FieldTower& tower, const Vec& c, unsigned r, u128 s, Rng& rng);
// Dispatches on the group kind. Throws LangError if the result fails
// verification, so a returned certificate is always ok().
LangCertificate solve(const LangInstance& inst, Rng& rng);

struct GeneratorOptions {
  unsigned max_s = 6;
  unsigned max_tries = 1000;
};

// Random c in G(k_r) with minimum field degree exactly r and small s:
// c = b^{-F} x b with b in G(k_r) and x in G(k) of small order.
LangInstance random_instance(GroupKind kind, FieldTower tower, std::size_t d, unsigned r, Rng& rng,
                             const GeneratorOptions& opt = {});

// Random elements of the groups at a given level; forms are over the base.
Matrix random_gl(const Level& level, std::size_t d, Rng& rng);
Matrix random_sl(const Level& level, std::size_t d, Rng& rng);
Matrix random_isometry(const BilinearFormFq& form, const Level& level, Rng& rng);

}  // namespace lietype
