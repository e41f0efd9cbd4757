#include "lietype/rootdata.hpp"

#include <boost/rational.hpp>

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace lietype {

Lattice parse_lattice(const std::string& s) {
  if (s == "sc") return Lattice::SimplyConnected;
  if (s == "ad") return Lattice::Adjoint;
  throw RootDataError("unknown lattice kind '" + s + "' (expected sc or ad)");
}

std::vector<SimpleType> parse_cartan_type(const std::string& s) {
  std::vector<SimpleType> out;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, 'x')) {
    if (part.size() < 2 || !std::isupper(static_cast<unsigned char>(part[0])))
      throw RootDataError("unknown type '" + s + "'");
    char f = part[0];
    unsigned r = 0;
    for (std::size_t i = 1; i < part.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) throw RootDataError("unknown type '" + s + "'");
      r = r * 10 + static_cast<unsigned>(part[i] - '0');
      if (r > 1000) throw RootDataError("unknown type '" + s + "'");
    }
    bool ok = false;
    switch (f) {
      case 'A': ok = r >= 1 && r <= 12; break;
      case 'B':
      case 'C': ok = r >= 2 && r <= 12; break;
      case 'D': ok = r >= 4 && r <= 12; break;
      case 'E': ok = r >= 6 && r <= 8; break;
      case 'F': ok = r == 4; break;
      case 'G': ok = r == 2; break;
      default: break;
    }
    if (!ok) throw RootDataError("unknown or unsupported type '" + part + "'");
    out.push_back({f, r});
  }
  if (out.empty() || s.back() == 'x') throw RootDataError("unknown type '" + s + "'");
  return out;
}

std::vector<std::vector<int>> cartan_matrix(const SimpleType& t) {
  const unsigned l = t.rank;
  std::vector<std::vector<int>> a(l, std::vector<int>(l, 0));
  for (unsigned i = 0; i < l; ++i) a[i][i] = 2;
  auto join = [&](unsigned i, unsigned j) {  // 1-based, simply laced edge
    a[i - 1][j - 1] = -1;
    a[j - 1][i - 1] = -1;
  };
  switch (t.family) {
    case 'A':
      for (unsigned i = 1; i < l; ++i) join(i, i + 1);
      break;
    case 'B':
      for (unsigned i = 1; i < l; ++i) join(i, i + 1);
      a[l - 2][l - 1] = -2;
      break;
    case 'C':
      for (unsigned i = 1; i < l; ++i) join(i, i + 1);
      a[l - 1][l - 2] = -2;
      break;
    case 'D':
      for (unsigned i = 1; i + 1 < l; ++i) join(i, i + 1);
      join(l - 2, l);
      break;
    case 'E':
      join(1, 3);
      join(2, 4);
      for (unsigned i = 3; i < l; ++i) join(i, i + 1);
      break;
    case 'F':
      join(1, 2);
      join(2, 3);
      join(3, 4);
      a[1][2] = -2;
      break;
    case 'G':
      a[0][1] = -1;
      a[1][0] = -3;
      break;
    default: throw RootDataError("unknown type");
  }
  return a;
}

std::vector<unsigned> invariant_degrees(const SimpleType& t) {
  const unsigned l = t.rank;
  std::vector<unsigned> d;
  switch (t.family) {
    case 'A':
      for (unsigned i = 2; i <= l + 1; ++i) d.push_back(i);
      break;
    case 'B':
    case 'C':
      for (unsigned i = 1; i <= l; ++i) d.push_back(2 * i);
      break;
    case 'D':
      for (unsigned i = 1; i < l; ++i) d.push_back(2 * i);
      d.push_back(l);
      std::sort(d.begin(), d.end());
      break;
    case 'E':
      if (l == 6) d = {2, 5, 6, 8, 9, 12};
      if (l == 7) d = {2, 6, 8, 10, 12, 14, 18};
      if (l == 8) d = {2, 8, 12, 14, 18, 20, 24, 30};
      break;
    case 'F': d = {2, 6, 8, 12}; break;
    case 'G': d = {2, 6}; break;
    default: throw RootDataError("unknown type");
  }
  return d;
}

RootDatum RootDatum::build(const std::string& type, Lattice lattice) {
  RootDatum rd;
  rd.type_ = type;
  rd.lattice_ = lattice;
  rd.components_ = parse_cartan_type(type);
  for (const auto& c : rd.components_) {
    rd.component_start_.push_back(rd.rank_);
    rd.rank_ += c.rank;
  }
  const unsigned n = rd.rank_;
  rd.cartan_.assign(n, std::vector<int>(n, 0));
  rd.simple_norm_.assign(n, 0);
  for (std::size_t c = 0; c < rd.components_.size(); ++c) {
    auto a = cartan_matrix(rd.components_[c]);
    const std::size_t off = rd.component_start_[c], l = a.size();
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = 0; j < l; ++j) rd.cartan_[off + i][off + j] = a[i][j];
    // (a_i,a_i)/(a_j,a_j) = A_ij/A_ji along edges; shortest norm 2.
    std::vector<boost::rational<long long>> rel(l);
    rel[0] = 1;
    std::deque<std::size_t> todo{0};
    while (!todo.empty()) {
      auto i = todo.front();
      todo.pop_front();
      for (std::size_t j = 0; j < l; ++j) {
        if (a[i][j] == 0 || i == j || rel[j].numerator() != 0) continue;
        rel[j] = rel[i] * boost::rational<long long>(a[j][i], a[i][j]);
        todo.push_back(j);
      }
    }
    auto shortest = *std::min_element(rel.begin(), rel.end());
    for (std::size_t i = 0; i < l; ++i) {
      auto v = rel[i] / shortest * 2;
      rd.simple_norm_[off + i] = v.numerator();
    }
  }
  rd.build_roots();
  rd.build_structure_constants();
  return rd;
}

void RootDatum::build_roots() {
  const unsigned n = rank_;
  // Orbit of the simple roots (with their coroots) under simple reflections.
  std::map<IntVec, IntVec> found;  // root coords -> coroot coords
  std::deque<IntVec> todo;
  for (unsigned i = 0; i < n; ++i) {
    IntVec e(n, 0);
    e[i] = 1;
    found.emplace(e, e);
    todo.push_back(e);
  }
  while (!todo.empty()) {
    IntVec c = todo.front();
    todo.pop_front();
    const IntVec d = found.at(c);
    for (unsigned i = 0; i < n; ++i) {
      int ci = 0, di = 0;  // <c, a_i^*>, <a_i, d>
      for (unsigned k = 0; k < n; ++k) {
        ci += c[k] * cartan_[k][i];
        di += d[k] * cartan_[i][k];
      }
      IntVec c2 = c, d2 = d;
      c2[i] -= ci;
      d2[i] -= di;
      if (found.emplace(c2, d2).second) todo.push_back(c2);
    }
  }
  std::vector<std::pair<IntVec, IntVec>> pos;
  for (const auto& [c, d] : found) {
    bool positive = std::all_of(c.begin(), c.end(), [](int v) { return v >= 0; });
    if (positive) pos.emplace_back(c, d);
  }
  if (pos.size() * 2 != found.size()) throw RootDataError("root closure failed");
  // Height first, then descending lexicographic, which puts a_1 first.
  std::sort(pos.begin(), pos.end(), [](const auto& x, const auto& y) {
    int hx = std::accumulate(x.first.begin(), x.first.end(), 0);
    int hy = std::accumulate(y.first.begin(), y.first.end(), 0);
    if (hx != hy) return hx < hy;
    return x.first > y.first;
  });
  coords_.clear();
  coroot_coords_.clear();
  for (const auto& [c, d] : pos) {
    coords_.push_back(c);
    coroot_coords_.push_back(d);
  }
  for (const auto& [c, d] : pos) {
    IntVec nc = c, nd = d;
    for (auto& v : nc) v = -v;
    for (auto& v : nd) v = -v;
    coords_.push_back(nc);
    coroot_coords_.push_back(nd);
  }
  const std::size_t m = coords_.size();
  root_x_.assign(m, IntVec(n, 0));
  coroot_y_.assign(m, IntVec(n, 0));
  for (std::size_t r = 0; r < m; ++r) {
    const auto &c = coords_[r], &d = coroot_coords_[r];
    for (unsigned j = 0; j < n; ++j) {
      if (lattice_ == Lattice::SimplyConnected) {
        for (unsigned k = 0; k < n; ++k) root_x_[r][j] += c[k] * cartan_[k][j];
        coroot_y_[r][j] = d[j];
      } else {
        root_x_[r][j] = c[j];
        for (unsigned k = 0; k < n; ++k) coroot_y_[r][j] += d[k] * cartan_[j][k];
      }
    }
  }
  std::map<IntVec, std::size_t> index;
  for (std::size_t r = 0; r < m; ++r) index[coords_[r]] = r;
  sum_.assign(m * m, -1);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t s = 0; s < m; ++s) {
      IntVec c(n);
      for (unsigned k = 0; k < n; ++k) c[k] = coords_[r][k] + coords_[s][k];
      auto it = index.find(c);
      if (it != index.end()) sum_[r * m + s] = static_cast<int>(it->second);
    }
}

std::size_t RootDatum::negative(std::size_t r) const {
  const std::size_t np = num_positive();
  return r < np ? r + np : r - np;
}

int RootDatum::pairing(std::size_t r, std::size_t s) const {
  int v = 0;
  for (unsigned j = 0; j < rank_; ++j) v += root_x_[r][j] * coroot_y_[s][j];
  return v;
}

int RootDatum::height(std::size_t r) const { return std::accumulate(coords_[r].begin(), coords_[r].end(), 0); }

long long RootDatum::inner(std::size_t r, std::size_t s) const {
  // (a_i, a_j) = A_ij (a_j, a_j) / 2
  long long v = 0;
  for (unsigned i = 0; i < rank_; ++i) {
    if (coords_[r][i] == 0) continue;
    for (unsigned j = 0; j < rank_; ++j) {
      if (coords_[s][j] == 0 || cartan_[i][j] == 0) continue;
      v += static_cast<long long>(coords_[r][i]) * coords_[s][j] * cartan_[i][j] * simple_norm_[j] / 2;
    }
  }
  return v;
}

std::size_t RootDatum::component_of(std::size_t r) const {
  for (unsigned i = 0; i < rank_; ++i) {
    if (coords_[r][i] == 0) continue;
    auto it = std::upper_bound(component_start_.begin(), component_start_.end(), i);
    return static_cast<std::size_t>(it - component_start_.begin()) - 1;
  }
  return 0;
}

std::optional<std::size_t> RootDatum::find(const IntVec& c) const {
  for (std::size_t r = 0; r < coords_.size(); ++r)
    if (coords_[r] == c) return r;
  return std::nullopt;
}

std::optional<std::size_t> RootDatum::sum(std::size_t r, std::size_t s) const {
  int v = sum_[r * num_roots() + s];
  if (v < 0) return std::nullopt;
  return static_cast<std::size_t>(v);
}

std::pair<std::size_t, std::size_t> RootDatum::extraspecial_pair(std::size_t xi) const {
  if (xi >= num_roots() || !is_positive(xi)) throw RootDataError("extraspecial pair needs a positive root");
  if (height(xi) == 1) throw RootDataError("extraspecial pair needs a non-simple root");
  const std::size_t nxi = negative(xi);
  for (std::size_t a = 0; a < num_positive(); ++a) {
    // xi - a is a root exactly when (-xi) + a is.
    if (auto b = sum(nxi, a)) return {a, negative(*b)};
  }
  throw RootDataError("no decomposition found");
}

void RootDatum::build_structure_constants() {
  const std::size_t m = num_roots(), np = num_positive();
  n_.assign(m * m, 0);
  auto string_p = [&](std::size_t a, std::size_t b) {
    // largest p with b - p a a root
    int p = 0;
    std::size_t cur = b;
    while (auto nx = sum(cur, negative(a))) {
      ++p;
      cur = *nx;
    }
    return p;
  };
  using Q = boost::rational<long long>;
  auto set_pos = [&](std::size_t a, std::size_t b, int v) {
    n_[a * m + b] = v;
    n_[b * m + a] = -v;
  };
  for (std::size_t xi = 0; xi < np; ++xi) {
    if (height(xi) == 1) continue;
    auto [al, be] = extraspecial_pair(xi);
    const int nab = string_p(al, be) + 1;
    set_pos(al, be, nab);
    for (std::size_t ga = al + 1; ga < np; ++ga) {
      auto d = sum(xi, negative(ga));
      if (!d || !is_positive(*d) || *d <= ga) continue;
      const std::size_t de = *d;
      if (ga == be) continue;
      Q acc = 0;
      const std::size_t nga = negative(ga), nde = negative(de);
      if (auto bg = sum(be, nga)) {
        acc += Q(compute_n(be, nga) * compute_n(al, nde), norm(*bg));
      }
      if (auto ag = sum(al, nga)) {
        acc += Q(compute_n(nga, al) * compute_n(be, nde), norm(*ag));
      }
      Q v = acc * Q(norm(xi), nab);
      if (v.denominator() != 1) throw RootDataError("structure constant recursion is not integral");
      set_pos(ga, de, static_cast<int>(v.numerator()));
    }
  }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (sum(a, b) && !(is_positive(a) && is_positive(b))) n_[a * m + b] = compute_n(a, b);
}

// N_{ab} for a+b a root, from the table of positive pairs already filled.
int RootDatum::compute_n(std::size_t a, std::size_t b) const {
  const std::size_t m = num_roots();
  const bool pa = is_positive(a), pb = is_positive(b);
  if (pa && pb) return n_[a * m + b];
  if (!pa && !pb) return -compute_n(negative(a), negative(b));
  if (!pa) return -compute_n(b, a);
  const std::size_t rho = *sum(a, b);
  long long v;
  long long den;
  if (is_positive(rho)) {
    v = norm(rho) * -compute_n(negative(b), rho);
    den = norm(a);
  } else {
    v = norm(rho) * compute_n(negative(rho), a);
    den = norm(b);
  }
  if (v % den != 0) throw RootDataError("structure constant recursion is not integral");
  return static_cast<int>(v / den);
}

int RootDatum::structure_constant(std::size_t r, std::size_t s) const {
  const std::size_t m = num_roots();
  if (r >= m || s >= m) throw RootDataError("root index out of range");
  if (s == negative(r)) throw RootDataError("N is undefined for opposite roots");
  return n_[r * m + s];
}

std::vector<std::size_t> RootDatum::reflection_permutation(std::size_t r) const {
  const std::size_t m = num_roots();
  std::vector<std::size_t> out(m);
  std::map<IntVec, std::size_t> index;
  for (std::size_t s = 0; s < m; ++s) index[coords_[s]] = s;
  for (std::size_t s = 0; s < m; ++s) {
    const int k = pairing(s, r);
    IntVec c = coords_[s];
    for (unsigned i = 0; i < rank_; ++i) c[i] -= k * coords_[r][i];
    out[s] = index.at(c);
  }
  return out;
}

std::string RootDatum::root_name(std::size_t r) const {
  const IntVec& c = coords_[r];
  std::string s;
  const bool neg = !is_positive(r);
  for (unsigned i = 0; i < rank_; ++i) {
    int v = neg ? -c[i] : c[i];
    if (v == 0) continue;
    if (!s.empty()) s += "+";
    if (v != 1) s += std::to_string(v);
    s += "a" + std::to_string(i + 1);
  }
  return neg ? "-(" + s + ")" : s;
}

}  // namespace lietype
