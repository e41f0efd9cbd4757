#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "lietype/rootdata.hpp"
#include "lietype/weyl.hpp"

using namespace lietype;

namespace {

const std::vector<std::string> kTypes = {"A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4",
                                         "D5", "G2", "F4", "E6", "E7", "E8", "A2xB2", "A1xA1"};

}  // namespace

TEST_CASE("type strings and Cartan matrices") {
  CHECK(parse_cartan_type("B3xA1").size() == 2);
  CHECK(parse_cartan_type("E6").front() == SimpleType{'E', 6});
  for (const char* bad : {"", "Q2", "E9", "A0", "G3", "A2x", "xA2", "B3xx", "a2", "A-1", "D2"})
    CHECK_THROWS_AS(parse_cartan_type(bad), RootDataError);
  auto b2 = cartan_matrix({'B', 2});
  CHECK(b2[0][1] == -2);
  CHECK(b2[1][0] == -1);
  auto g2 = cartan_matrix({'G', 2});
  CHECK(g2[1][0] == -3);
  CHECK(parse_lattice("ad") == Lattice::Adjoint);
  CHECK_THROWS_AS(parse_lattice("xx"), RootDataError);
}

TEST_CASE("root counts") {
  std::map<std::string, std::size_t> expect = {{"A1", 2},  {"A2", 6},   {"A3", 12},  {"B2", 8},   {"B3", 18},
                                               {"C4", 32}, {"D4", 24},  {"D5", 40},  {"G2", 12},  {"F4", 48},
                                               {"E6", 72}, {"E7", 126}, {"E8", 240}, {"A2xB2", 14}};
  for (const auto& [t, n] : expect) {
    CAPTURE(std::string(t));
    auto rd = RootDatum::build(t);
    CHECK(rd.num_roots() == n);
    CHECK(rd.num_positive() * 2 == n);
  }
  auto a1 = RootDatum::build("A1");
  CHECK(a1.num_positive() == 1);
}

TEST_CASE("root datum axioms") {
  for (const auto& t : kTypes)
    for (auto lat : {Lattice::SimplyConnected, Lattice::Adjoint}) {
      CAPTURE(std::string(t));
      auto rd = RootDatum::build(t, lat);
      const std::size_t m = rd.num_roots();
      for (std::size_t r = 0; r < rd.rank(); ++r) CHECK(rd.height(r) == 1);
      for (std::size_t r = 0; r < m; ++r) {
        CHECK(rd.pairing(r, r) == 2);
        CHECK(rd.coords(rd.negative(r)) == [&] {
          auto c = rd.coords(r);
          for (auto& v : c) v = -v;
          return c;
        }());
        for (std::size_t s = 0; s < m; ++s) {
          int k = rd.pairing(r, s);
          CHECK(std::abs(k) <= 3);
          // reflection closure: r - <r, s^*> s is a root
          IntVec c = rd.coords(r);
          for (std::size_t i = 0; i < c.size(); ++i) c[i] -= k * rd.coords(s)[i];
          CHECK(rd.find(c).has_value());
        }
        for (std::size_t i = 0; i < rd.rank(); ++i) CHECK(rd.pairing(i, rd.simple(i)) == 2);
      }
      // Cartan integers on simple roots
      for (std::size_t i = 0; i < rd.rank(); ++i)
        for (std::size_t j = 0; j < rd.rank(); ++j) CHECK(rd.pairing(i, j) == rd.cartan(i, j));
      // height-compatible order
      for (std::size_t r = 1; r < rd.num_positive(); ++r) CHECK(rd.height(r - 1) <= rd.height(r));
    }
}

TEST_CASE("inner product is Weyl invariant and matches the pairing") {
  for (const auto& t : kTypes) {
    CAPTURE(std::string(t));
    auto rd = RootDatum::build(t);
    for (std::size_t r = 0; r < rd.num_roots(); ++r)
      for (std::size_t s = 0; s < rd.num_roots(); ++s)
        CHECK(2 * rd.inner(r, s) == rd.pairing(r, s) * rd.norm(s));
  }
}

TEST_CASE("extraspecial pairs") {
  auto a2 = RootDatum::build("A2");
  auto xi = *a2.find({1, 1});
  CHECK(a2.extraspecial_pair(xi) == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK_THROWS_AS(a2.extraspecial_pair(0), RootDataError);
  CHECK_THROWS_AS(a2.extraspecial_pair(a2.negative(xi)), RootDataError);

  auto b2 = RootDatum::build("B2");
  CHECK(b2.norm(0) > b2.norm(1));  // alpha_1 long
  auto [a, b] = b2.extraspecial_pair(*b2.find({1, 2}));
  CHECK(a == *b2.find({0, 1}));
  CHECK(b == *b2.find({1, 1}));
}

TEST_CASE("structure constants: examples") {
  auto a2 = RootDatum::build("A2");
  CHECK(a2.structure_constant(0, 1) == 1);
  CHECK(a2.structure_constant(1, 0) == -1);
  CHECK(a2.structure_constant(0, 0) == 0);
  CHECK(a2.structure_constant(0, *a2.find({1, 1})) == 0);
  CHECK_THROWS_AS(a2.structure_constant(0, a2.negative(0)), RootDataError);
  auto g2 = RootDatum::build("G2");
  CHECK(g2.num_roots() == 12);
  CHECK(g2.num_positive() == 6);
}

TEST_CASE("structure constants: properties") {
  for (const auto& t : kTypes) {
    CAPTURE(std::string(t));
    auto rd = RootDatum::build(t);
    const std::size_t m = rd.num_roots();
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        if (b == rd.negative(a)) continue;
        int n = rd.structure_constant(a, b);
        CHECK(n == -rd.structure_constant(b, a));
        if (!rd.sum(a, b)) {
          CHECK(n == 0);
          continue;
        }
        // |N| = p + 1 along the b-string through a
        int p = 0;
        std::size_t cur = b;
        while (auto nx = rd.sum(cur, rd.negative(a))) {
          ++p;
          cur = *nx;
        }
        CHECK(std::abs(n) == p + 1);
        CHECK(rd.structure_constant(rd.negative(a), rd.negative(b)) == -n);
      }
    for (std::size_t xi = 0; xi < rd.num_positive(); ++xi) {
      if (rd.height(xi) == 1) continue;
      auto [a, b] = rd.extraspecial_pair(xi);
      int n = rd.structure_constant(a, b);
      CHECK(n > 0);
      CHECK(n <= 3);
    }
  }
}

TEST_CASE("Weyl elements: consistency and group orders") {
  for (const auto& t : {"A3", "B3", "G2", "C3", "A2xB2"}) {
    CAPTURE(std::string(t));
    for (auto lat : {Lattice::SimplyConnected, Lattice::Adjoint}) {
      auto rd = RootDatum::build(t, lat);
      std::mt19937_64 rng(7);
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<unsigned> word;
        for (int k = 0; k < 8; ++k) word.push_back(1 + rng() % rd.rank());
        auto w = weyl_word(rd, word);
        CHECK(weyl_element_consistent(rd, w));
        auto winv = weyl_inverse(w);
        CHECK(weyl_compose(w, winv) == weyl_identity(rd));
        CHECK(weyl_compose(w, winv).y == weyl_identity(rd).y);
      }
    }
    auto rd = RootDatum::build(t);
    std::set<std::vector<std::uint16_t>> seen;
    for_each_weyl_element(rd, [&](const auto& p) { seen.insert(p); });
    CHECK(seen.size() == weyl_group_order(rd));
  }
  CHECK(weyl_group_order(RootDatum::build("E6")) == 51840);
  CHECK(weyl_group_order(RootDatum::build("E8")) == 696729600ULL);
  CHECK_THROWS_AS(for_each_weyl_element(RootDatum::build("E7"), [](const auto&) {}), EnumerationGate);
}

TEST_CASE("Coxeter elements") {
  auto a1 = RootDatum::build("A1");
  CHECK(coxeter_element(a1) == weyl_reflection(a1, 0));
  CHECK(weyl_element_order(coxeter_element(a1)) == 2);
  CHECK(weyl_element_order(coxeter_element(RootDatum::build("A2"))) == 3);
  auto g2 = RootDatum::build("G2");
  auto c = coxeter_element(g2);
  CHECK(weyl_element_order(c) == 6);
  for (std::size_t r = 0; r < g2.num_roots(); ++r) {
    std::size_t len = 1;
    for (std::size_t j = c.perm[r]; j != r; j = c.perm[j]) ++len;
    CHECK(len == 6);
  }
  // order is the Coxeter number |Phi| / l
  for (const auto& t : {"A5", "B4", "C5", "D6", "F4", "E6", "E7", "E8"}) {
    auto rd = RootDatum::build(t);
    CHECK(weyl_element_order(coxeter_element(rd)) == rd.num_roots() / rd.rank());
  }
  CHECK_THROWS_AS(coxeter_element(RootDatum::build("A1xA1")), RootDataError);
}

TEST_CASE("reflection derangements") {
  auto stats = [](const char* t) { return reflection_derangement_stats(RootDatum::build(t)).proportion; };
  CHECK(stats("A2") == Rational(1, 3));
  CHECK(stats("G2") == Rational(1, 3));
  auto a2 = reflection_derangement_stats(RootDatum::build("A2"));
  CHECK(a2.count == 2);
  CHECK(a2.total == 6);
  // Sym_4: eight 3-cycles and six 4-cycles
  CHECK(stats("A3") == Rational(14, 24));
  // Counts from a separate brute force over signed permutations (B, D) and
  // over the reflection closure of the root system (F4, E6).
  CHECK(stats("B3") == Rational(16, 48));
  CHECK(stats("B4") == Rational(108, 384));
  CHECK(stats("D4") == Rational(148, 192));
  CHECK(stats("D5") == Rational(1244, 1920));
  CHECK(stats("F4") == Rational(284, 1152));
  CHECK(stats("E6") == Rational(23660, 51840));
  CHECK(stats("A2xG2") == Rational(1, 9));
  CHECK_THROWS_AS(reflection_derangement_stats(RootDatum::build("E8")), EnumerationGate);
}

TEST_CASE("reflection derangement proportion stays below two thirds") {
  auto stats = [](const char* t) { return reflection_derangement_stats(RootDatum::build(t)).proportion; };
  for (const auto& t : {"A1", "A3", "A4", "A5", "A6", "B2", "B3", "B4", "B5", "C3", "D5", "D6", "G2", "F4", "E6",
                        "A2xB2", "A1xA1"}) {
    CAPTURE(std::string(t));
    CHECK(stats(t) < Rational(2, 3));
  }
  // D4 is a counterexample: 148 of its 192 elements fix no reflection.
  CHECK(stats("D4") > Rational(2, 3));
}

TEST_CASE("Q_w for Coxeter elements") {
  auto a1 = RootDatum::build("A1");
  CHECK(qw_polynomial(a1, coxeter_element(a1)) == IntPoly{1, -1});
  auto one_plus = [](std::initializer_list<std::pair<unsigned, long long>> terms) {
    IntPoly p{1};
    for (auto [e, c] : terms) {
      if (p.size() <= e) p.resize(e + 1, 0);
      p[e] += c;
    }
    return p;
  };
  for (unsigned l = 1; l <= 8; ++l) {
    std::vector<unsigned> a, b, d;
    for (unsigned i = 1; i <= l; ++i) a.push_back(i);
    b.push_back(l);
    for (unsigned i = 1; i < l; ++i) b.push_back(2 * i);
    auto rd = RootDatum::build("A" + std::to_string(l));
    CHECK(qw_polynomial(rd, coxeter_element(rd)) == product_one_minus_powers(a));
    if (l >= 2) {
      for (const char* f : {"B", "C"}) {
        auto rb = RootDatum::build(f + std::to_string(l));
        CHECK(qw_polynomial(rb, coxeter_element(rb)) == product_one_minus_powers(b));
      }
    }
    if (l >= 4) {
      d = {1, l - 1, l};
      for (unsigned i = 2; i <= l - 2; ++i) d.push_back(2 * i);
      auto rdd = RootDatum::build("D" + std::to_string(l));
      CHECK(qw_polynomial(rdd, coxeter_element(rdd)) == product_one_minus_powers(d));
    }
  }
  auto g2 = RootDatum::build("G2");
  CHECK(qw_polynomial(g2, coxeter_element(g2)) == poly_mul(product_one_minus_powers({2, 3}), IntPoly{1, 1}));
  auto f4 = RootDatum::build("F4");
  CHECK(qw_polynomial(f4, coxeter_element(f4)) == product_one_minus_powers({6, 4, 6, 8}));
  auto e6 = RootDatum::build("E6");
  CHECK(qw_polynomial(e6, coxeter_element(e6)) ==
        poly_mul(product_one_minus_powers({6, 1, 4, 5, 6, 8}), one_plus({{3, 1}, {6, 1}})));
  auto e7 = RootDatum::build("E7");
  CHECK(qw_polynomial(e7, coxeter_element(e7)) ==
        poly_mul(product_one_minus_powers({6, 1, 6, 8, 10, 12, 14}), one_plus({{3, 1}, {6, 1}})));
  auto e8 = RootDatum::build("E8");
  CHECK(qw_polynomial(e8, coxeter_element(e8)) ==
        poly_mul(poly_mul(product_one_minus_powers({1, 8, 10, 12, 14, 18, 20, 24}), one_plus({{3, 1}})),
                 one_plus({{5, 1}, {10, 1}})));
}

TEST_CASE("Q_w for subcoxeter elements") {
  auto sub = [](const std::string& t) {
    auto rd = RootDatum::build(t);
    return qw_polynomial(rd, subcoxeter_element(rd));
  };
  auto P = [](std::vector<unsigned> e) { return product_one_minus_powers(e); };
  const IntPoly x2{1, 0, 1}, x4{1, 0, 0, 0, 1}, x36{1, 0, 0, 1, 0, 0, 1};
  CHECK(sub("A2") == P({3}));
  CHECK(sub("A3") == poly_mul(P({1, 3}), x2));
  for (unsigned l = 4; l <= 7; ++l) {
    std::vector<unsigned> e;
    for (unsigned i = 1; i <= l + 1; ++i)
      if (i != 2 && i != l - 1) e.push_back(i);
    CHECK(sub("A" + std::to_string(l)) == P(e));
  }
  for (const char* f : {"B", "C"}) {
    CAPTURE(std::string(f));
    CHECK(sub(std::string(f) + "2") == poly_mul(P({1, 1}), x2));
    CHECK(sub(std::string(f) + "3") == P({1, 2, 6}));
    CHECK(sub(std::string(f) + "4") == P({1, 3, 4, 8}));
  }
  CHECK(sub("G2") == P({6}));
  CHECK(sub("F4") == P({1, 3, 8, 12}));
  CHECK(sub("E6") == P({1, 1, 5, 8, 9, 12}));
  CHECK(sub("E7") == poly_mul(poly_mul(P({1, 1, 5, 6, 12, 14, 18}), x2), x4));
  CHECK(sub("E8") == poly_mul(poly_mul(poly_mul(P({1, 1, 6, 12, 14, 20, 24, 30}), x2), x4), x36));
  // D4: the word s1s2s1s3s2s1s4s2s1s3s2 has eigenvalues -1, -1, -1, 1 on Y.
  auto d4 = RootDatum::build("D4");
  CHECK(det_one_minus_wx(subcoxeter_element(d4)) == poly_mul(poly_mul(IntPoly{1, 1}, IntPoly{1, 1}), IntPoly{1, 0, -1}));
  CHECK(sub("D4") == poly_mul(poly_mul(P({1, 1, 6}), x2), x2));
}

TEST_CASE("Q_w at 1/q against det(q - w)") {
  for (const auto& t : {"A3", "B3", "G2", "D4", "F4", "A2xB2"}) {
    CAPTURE(std::string(t));
    auto rd = RootDatum::build(t);
    std::vector<unsigned> degs;
    for (const auto& c : rd.components())
      for (unsigned d : invariant_degrees(c)) degs.push_back(d);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<unsigned> word;
      for (int k = 0; k < 6; ++k) word.push_back(1 + rng() % rd.rank());
      auto w = weyl_word(rd, word);
      auto qw = qw_polynomial(rd, w);
      for (long long q : {5, 7, 11}) {
        using Big = boost::multiprecision::cpp_rational;
        Big v = 0, rhs = 1, qn = 1;
        for (std::size_t k = qw.size(); k-- > 0;) v = v / q + qw[k];
        for (std::size_t i = 0; i < rd.rank(); ++i) qn *= q;
        for (unsigned d : degs) {
          Big qd = 1;
          for (unsigned i = 0; i < d; ++i) qd /= q;
          rhs *= 1 - qd;
        }
        CHECK(v * det_q_minus_w(w, q) / qn == rhs);
      }
    }
  }
}

TEST_CASE("orbit constants and centralizers of subcoxeter elements") {
  struct Row {
    const char* type;
    u64 c;
    std::vector<unsigned> ci;
  };
  const std::vector<Row> rows = {
      {"A2", 2, {1, 2}},
      {"B2", 8, {4, 0}},
      {"G2", 4, {3, 4}},
      {"A3", 8, {2, 4, 0}},
      {"B3", 8, {1, 2, 2}},
      {"A4", 6, {1, 2, 0, 2}},
      {"B4", 12, {1, 1, 4, 0}},
      {"D4", 16, {5, 8, 0, 0}},
      {"F4", 36, {3, 1, 6, 0}},
      {"A5", 8, {1, 1, 2, 4, 0}},
      {"B5", 16, {1, 0, 0, 4, 2}},
      {"D5", 16, {3, 5, 2, 4, 0}},
      {"A6", 10, {1, 0, 0, 4, 0, 2}},
      {"B6", 20, {1, 0, 0, 2, 5, 0}},
      {"D6", 24, {3, 5, 3, 4, 0, 0}},
      {"E6", 36, {3, 0, 3, 2, 6, 0}},
  };
  for (const auto& row : rows) {
    CAPTURE(std::string(row.type));
    auto rd = RootDatum::build(row.type);
    auto w = subcoxeter_element(rd);
    CHECK(!is_reflection_derangement(rd, w.perm));
    CHECK(orbit_constants(rd, w) == row.ci);
    CHECK(centralizer_order(rd, w) == row.c);
  }
  // E7 and E8 only through the orbit constants (centralizers need the opt-in)
  auto e7 = RootDatum::build("E7");
  CHECK(orbit_constants(e7, subcoxeter_element(e7)) == std::vector<unsigned>{3, 0, 0, 2, 10, 0, 0});
  auto e8 = RootDatum::build("E8");
  CHECK(orbit_constants(e8, subcoxeter_element(e8)) == std::vector<unsigned>{3, 0, 0, 0, 0, 4, 9, 0});
  // A1 uses w = 1: both roots are fixed, so c_1 = 2. The reflection gives c_1 = 1.
  auto a1 = RootDatum::build("A1");
  CHECK(subcoxeter_element(a1) == weyl_identity(a1));
  CHECK(orbit_constants(a1, subcoxeter_element(a1)) == std::vector<unsigned>{2});
  CHECK(centralizer_order(a1, subcoxeter_element(a1)) == 2);
  CHECK(orbit_constants(a1, weyl_reflection(a1, 0)) == std::vector<unsigned>{1});
  CHECK(qw_polynomial(a1, subcoxeter_element(a1)) == IntPoly{1, 1});
  auto g2 = RootDatum::build("G2");
  CHECK(weyl_element_order(subcoxeter_element(g2)) == 2);
}

TEST_CASE("orbit constants: Coxeter elements and sums") {
  for (const auto& t : {"A4", "B4", "C4", "D5", "A6"}) {
    CAPTURE(std::string(t));
    auto rd = RootDatum::build(t);
    auto w = coxeter_element(rd);
    auto c = orbit_constants(rd, w);
    for (std::size_t i = 1; 2 * i < rd.rank(); ++i) CHECK(c[i - 1] == 0);
    unsigned orbits = 0;
    std::vector<bool> seen(rd.num_roots(), false);
    for (std::size_t r = 0; r < rd.num_roots(); ++r) {
      if (seen[r]) continue;
      ++orbits;
      for (std::size_t j = r; !seen[j]; j = w.perm[j]) seen[j] = true;
    }
    unsigned total = 0;
    for (unsigned v : c) total += v;
    CHECK(total == orbits);
  }
  auto a1 = RootDatum::build("A1");
  CHECK(orbit_constants(a1, weyl_reflection(a1, 0)) == std::vector<unsigned>{1});
}
