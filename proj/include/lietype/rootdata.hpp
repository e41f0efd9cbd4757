#pragma once

// Root data of split semisimple groups (Bourbaki numbering) with a fixed
// height-compatible order, extraspecial pairs and structure constants.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lietype {

class RootDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Lattice { SimplyConnected, Adjoint };

Lattice parse_lattice(const std::string& s);  // "sc" | "ad"

struct SimpleType {
  char family;  // 'A'..'G'
  unsigned rank;
  std::string name() const { return family + std::to_string(rank); }
  bool operator==(const SimpleType&) const = default;
};

// "A2", "B3xA1", ...
std::vector<SimpleType> parse_cartan_type(const std::string& s);
// A[i][j] = <alpha_i, alpha_j^*>
std::vector<std::vector<int>> cartan_matrix(const SimpleType& t);
std::vector<unsigned> invariant_degrees(const SimpleType& t);

using IntVec = std::vector<int>;

class RootDatum {
 public:
  static RootDatum build(const std::string& type, Lattice lattice = Lattice::SimplyConnected);

  const std::string& type() const { return type_; }
  Lattice lattice() const { return lattice_; }
  const std::vector<SimpleType>& components() const { return components_; }
  bool is_irreducible() const { return components_.size() == 1; }
  unsigned rank() const { return rank_; }              // n
  unsigned semisimple_rank() const { return rank_; }   // l (no central torus)
  int cartan(std::size_t i, std::size_t j) const { return cartan_[i][j]; }

  // Roots are indexed with positives first, in the fixed order; the negative
  // of positive root i is i + num_positive(). Simple root i has index i.
  std::size_t num_roots() const { return coords_.size(); }
  std::size_t num_positive() const { return coords_.size() / 2; }
  bool is_positive(std::size_t r) const { return r < num_positive(); }
  std::size_t negative(std::size_t r) const;
  std::size_t simple(std::size_t i) const { return i; }

  const IntVec& coords(std::size_t r) const { return coords_[r]; }  // in simple roots
  const IntVec& root(std::size_t r) const { return root_x_[r]; }    // in X
  const IntVec& coroot(std::size_t r) const { return coroot_y_[r]; }  // in Y
  int pairing(std::size_t r, std::size_t s) const;  // <alpha_r, alpha_s^*>
  int height(std::size_t r) const;
  // W-invariant form, scaled so the shortest roots of each component have norm 2.
  long long inner(std::size_t r, std::size_t s) const;
  long long norm(std::size_t r) const { return inner(r, r); }
  std::size_t component_of(std::size_t r) const;

  std::optional<std::size_t> find(const IntVec& coords) const;
  // Index of alpha_r + alpha_s when it is a root.
  std::optional<std::size_t> sum(std::size_t r, std::size_t s) const;

  std::pair<std::size_t, std::size_t> extraspecial_pair(std::size_t xi) const;
  // N_{rs}; 0 when r+s is not a root; throws for s = -r.
  int structure_constant(std::size_t r, std::size_t s) const;

  // Image of every root under the reflection in alpha_r.
  std::vector<std::size_t> reflection_permutation(std::size_t r) const;

  std::string root_name(std::size_t r) const;

 private:
  RootDatum() = default;
  void build_roots();
  void build_structure_constants();
  int compute_n(std::size_t a, std::size_t b) const;

  std::string type_;
  Lattice lattice_ = Lattice::SimplyConnected;
  std::vector<SimpleType> components_;
  std::vector<std::size_t> component_start_;
  unsigned rank_ = 0;
  std::vector<std::vector<int>> cartan_;
  std::vector<long long> simple_norm_;
  std::vector<IntVec> coords_, coroot_coords_, root_x_, coroot_y_;
  std::vector<int> sum_;  // num_roots^2, -1 when not a root
  std::vector<int> n_;    // num_roots^2
};

}  // namespace lietype
