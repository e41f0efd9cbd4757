#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "gfp.hpp"
#include "lietype/ff.hpp"

namespace lietype::detail {

struct Embedding {
  std::vector<Coeffs> rows;  // row j = image of X^j
  gfp::RowSolver solver;
};

struct TowerImpl : std::enable_shared_from_this<TowerImpl> {
  TowerImpl(Coeff p, unsigned e);

  const Level& extend(unsigned r);
  const Embedding& embedding(unsigned from, unsigned to) const;

  Coeff p;
  unsigned e;
  std::map<unsigned, std::unique_ptr<Level>> levels;
  std::map<std::pair<unsigned, unsigned>, Embedding> embeddings;
  Rng rng;

 private:
  void build(unsigned r);
  bool consistent(unsigned from, unsigned to, const Fq& image) const;
};

}  // namespace lietype::detail
