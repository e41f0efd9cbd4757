#pragma once

// Weyl groups as permutation groups on roots, with the element-wise
// statistics used in counting regular semisimple classes.

#include <boost/rational.hpp>

#include <cstdint>
#include <functional>
#include <vector>

#include "lietype/intmath.hpp"
#include "lietype/rootdata.hpp"

namespace lietype {

using Rational = boost::rational<long long>;
using IntPoly = std::vector<long long>;  // ascending coefficients

// Raised when a full enumeration is requested for a group above the default
// size limit without opting in.
class EnumerationGate : public RootDataError {
 public:
  using RootDataError::RootDataError;
};

inline constexpr u64 kDefaultEnumerationLimit = 1000000;

// Right action: perm[r] is the index of alpha_r w; row j of `y` is f_j w.
struct WeylElement {
  std::vector<std::uint16_t> perm;
  std::vector<std::vector<long long>> y;
  bool operator==(const WeylElement& o) const { return perm == o.perm; }
};

WeylElement weyl_identity(const RootDatum& rd);
WeylElement weyl_reflection(const RootDatum& rd, std::size_t root);
// a then b
WeylElement weyl_compose(const WeylElement& a, const WeylElement& b);
WeylElement weyl_inverse(const WeylElement& w);
// Product of simple reflections s_{i_1} ... s_{i_k} (1-based indices).
WeylElement weyl_word(const RootDatum& rd, const std::vector<unsigned>& word);
unsigned weyl_element_order(const WeylElement& w);
// Checks that perm and matrix agree on coroots and that the pairing is kept.
bool weyl_element_consistent(const RootDatum& rd, const WeylElement& w);

u64 weyl_group_order(const RootDatum& rd);

// Streams every element of W (as a root permutation). Throws EnumerationGate
// when |W| exceeds the limit and allow_large is false.
void for_each_weyl_element(const RootDatum& rd, const std::function<void(const std::vector<std::uint16_t>&)>& visit,
                           bool allow_large = false);

WeylElement coxeter_element(const RootDatum& rd);
WeylElement subcoxeter_element(const RootDatum& rd);

// No root alpha with alpha w = +-alpha.
bool is_reflection_derangement(const RootDatum& rd, const std::vector<std::uint16_t>& perm);

struct DerangementStats {
  u64 count = 0;
  u64 total = 0;
  Rational proportion;
};

DerangementStats reflection_derangement_stats(const RootDatum& rd, bool allow_large = false);

// det_Y(1 - wX)
IntPoly det_one_minus_wx(const WeylElement& w);
// det_Y(q - w)
long long det_q_minus_w(const WeylElement& w, long long q);
// prod (1 - X^{d_i}) / det_Y(1 - wX)
IntPoly qw_polynomial(const RootDatum& rd, const WeylElement& w);
// c_1..c_l
std::vector<unsigned> orbit_constants(const RootDatum& rd, const WeylElement& w);
u64 centralizer_order(const RootDatum& rd, const WeylElement& w, bool allow_large = false);

// prod_i (1 - X^{e_i})
IntPoly product_one_minus_powers(const std::vector<unsigned>& exps);
IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
std::string poly_to_string(const IntPoly& p);

}  // namespace lietype
