// lietype: command-line front end for the Lang solvers, Chevalley basis
// recovery and Weyl group tables.
//
// Exit codes: 0 ok, 2 input error, 3 budget exhausted, 4 recognition or
// verification failure, 5 enumeration gate.

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lietype/lang.hpp"
#include "lietype/liealg.hpp"
#include "lietype/weyl.hpp"

using namespace lietype;
using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kInput = 2, kBudget = 3, kRecognition = 4, kGate = 5 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Global {
  u64 seed = 1;
  std::string format = "json";
  bool text() const { return format == "text"; }
};

json read_json_arg(const std::string& arg) {
  std::string src = arg;
  const auto first = arg.find_first_not_of(" \t\n");
  if (first == std::string::npos || (arg[first] != '[' && arg[first] != '{' && !std::isdigit(static_cast<unsigned char>(arg[first])) && arg[first] != '-')) {
    std::ifstream in(arg);
    if (!in) throw InputError("cannot open " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    src = ss.str();
  }
  try {
    return json::parse(src);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

// An entry is an integer (a prime field element) or a list of coefficients
// over GF(p) in the power basis of the level's generator.
Fq parse_entry(const json& j, const Level& lv) {
  if (j.is_number_integer()) {
    const long long v = j.get<long long>();
    return lv.scalar(v);
  }
  if (j.is_array()) {
    std::vector<Coeff> c;
    for (const auto& x : j) {
      if (!x.is_number_integer()) throw InputError("coefficients must be integers");
      const long long v = x.get<long long>();
      const long long p = lv.p();
      c.push_back(static_cast<Coeff>(((v % p) + p) % p));
    }
    if (c.size() > lv.degree()) throw InputError("too many coefficients for level " + lv.spec());
    return lv.from_coeffs(c);
  }
  throw InputError("matrix entries must be integers or coefficient lists");
}

json entry_json(const Fq& x) {
  Coeff v = 0;
  if (x.is_prime_field(&v)) return v;
  json a = json::array();
  for (Coeff c : x.coeffs()) a.push_back(c);
  return a;
}

// [[...], ...] or {"level": t, "entries": [[...], ...]}; level is relative to k.
Matrix parse_matrix(const json& j, const FieldTower& tower) {
  unsigned level = 1;
  const json* rows = &j;
  if (j.is_object()) {
    if (j.contains("level")) level = j.at("level").get<unsigned>();
    if (!j.contains("entries")) throw InputError("matrix object needs \"entries\"");
    rows = &j.at("entries");
  }
  if (!rows->is_array() || rows->empty()) throw InputError("matrix must be a nonempty list of rows");
  if (level == 0 || level > 64) throw InputError("level out of range");
  const Level& lv = tower.extend(level);
  std::vector<Vec> out;
  std::size_t cols = 0;
  for (const auto& row : *rows) {
    if (!row.is_array()) throw InputError("matrix rows must be lists");
    if (out.empty()) cols = row.size();
    if (row.size() != cols || cols == 0) throw InputError("matrix rows have different lengths");
    Vec v;
    for (const auto& e : row) v.push_back(parse_entry(e, lv));
    out.push_back(std::move(v));
  }
  return Matrix::from_rows(lv, out, cols);
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(entry_json(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

json level_json(const Level& lv) {
  json mod = json::array();
  for (Coeff c : lv.modulus()) mod.push_back(c);
  return {{"relative_degree", lv.rel_degree()}, {"field", lv.spec()}, {"modulus", mod}};
}

std::string matrix_text(const Matrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += "  [";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += entry_json(m(i, j)).dump();
    }
    out += "]\n";
  }
  return out;
}

void check_prime(long long p) {
  if (p < 2 || !is_prime(static_cast<u64>(p))) throw InputError("p must be a prime");
}

// ---------------------------------------------------------------- lang

struct LangArgs {
  std::string instance, group, c, form, r = "auto", s = "auto";
  long long p = 0;
  unsigned e = 1;
  unsigned d = 0;  // 0: take it from c
  bool trust_s = false;
  unsigned max_extension = 96;
};

int run_lang(const LangArgs& a, const Global& g) {
  json spec;
  if (!a.instance.empty()) spec = read_json_arg(a.instance);
  auto pick = [&](const char* key, auto fallback) {
    using T = decltype(fallback);
    if (spec.contains(key)) return spec.at(key).get<T>();
    return fallback;
  };
  const std::string group = pick("group", a.group);
  const long long p = pick("p", a.p);
  const unsigned e = pick("e", a.e);
  auto kind = parse_group_kind(group);
  if (!kind) throw InputError("unknown group '" + group + "' (GL, SL, Sp, SO, Torus)");
  check_prime(p);
  if (e == 0 || e > 16) throw InputError("e out of range");
  if ((*kind == GroupKind::Sp || *kind == GroupKind::SO) && p == 2) throw InputError("forms need odd characteristic");
  FieldTower tower(static_cast<Coeff>(p), e);

  json cj;
  if (spec.contains("c")) cj = spec.at("c");
  else if (!a.c.empty()) cj = read_json_arg(a.c);
  else throw InputError("missing c");
  // a flat list is a diagonal torus element
  if (*kind == GroupKind::Torus && cj.is_array() && !cj.empty() && !cj[0].is_array()) {
    json rows = json::array();
    for (std::size_t i = 0; i < cj.size(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < cj.size(); ++j) row.push_back(i == j ? cj[i] : json(0));
      rows.push_back(row);
    }
    cj = rows;
  }
  const Matrix c = parse_matrix(cj, tower);
  unsigned d = a.d;
  if (spec.contains("d")) d = spec.at("d").get<unsigned>();
  if (d && d != c.rows()) throw InputError("--d does not match the size of c");

  std::optional<BilinearFormFq> form;
  json fj;
  if (spec.contains("form")) fj = spec.at("form");
  else if (!a.form.empty()) fj = read_json_arg(a.form);
  if (!fj.is_null()) {
    if (*kind != GroupKind::Sp && *kind != GroupKind::SO) throw InputError("--form is only used for Sp and SO");
    form = BilinearFormFq(*kind == GroupKind::Sp ? FormKind::symplectic : FormKind::orthogonal, parse_matrix(fj, tower));
  }

  InstanceOptions opt;
  opt.max_extension = a.max_extension;
  auto parse_count = [](const json& v, const char* what) -> std::optional<unsigned> {
    if (v.is_string()) {
      const std::string s = v.get<std::string>();
      if (s == "auto") return std::nullopt;
      try {
        std::size_t pos = 0;
        const unsigned long n = std::stoul(s, &pos);
        if (pos == s.size() && n > 0) return static_cast<unsigned>(n);
      } catch (const std::exception&) {
      }
      throw InputError(std::string(what) + " must be a positive integer or auto");
    }
    if (v.is_number_unsigned() && v.get<unsigned>() > 0) return v.get<unsigned>();
    throw InputError(std::string(what) + " must be a positive integer or auto");
  };
  opt.r = parse_count(spec.contains("r") ? spec.at("r") : json(a.r), "r");
  const auto s_given = parse_count(spec.contains("s") ? spec.at("s") : json(a.s), "s");
  if (s_given && a.trust_s) {
    opt.trust_s = true;
    opt.s = *s_given;
  }

  Rng rng(g.seed);
  const LangInstance inst = make_instance(*kind, tower, c, form, opt, &rng);
  if (s_given && !a.trust_s && inst.s != *s_given) {
    throw InputError("given s = " + std::to_string(*s_given) + " but the norm element has order " + to_string(inst.s) +
                     " (pass --trust-s to use the given value)");
  }
  const LangCertificate cert = solve(inst, rng);

  if (g.text()) {
    std::cout << "group " << to_string(inst.kind) << "_" << inst.dim() << " over GF(" << p << "^" << e << ")\n";
    std::cout << "r = " << inst.r << ", s = " << to_string(inst.s) << ", a over " << cert.a.level().spec() << "\n";
    std::cout << "a =\n" << matrix_text(cert.a);
    std::cout << "a^{-F} a = c: " << (cert.equation_ok ? "yes" : "no") << "\n";
    std::cout << "group membership: " << (cert.group_ok ? "yes" : "no") << "\n";
    std::cout << "minimum field degree r*s: " << (cert.degree_ok ? "yes" : "no") << "\n";
  } else {
    json out{{"group", to_string(inst.kind)},
             {"p", p},
             {"e", e},
             {"d", inst.dim()},
             {"r", inst.r},
             {"s", to_string(inst.s)},
             {"level", level_json(cert.a.level())},
             {"a", matrix_json(cert.a)},
             {"checks", {{"equation", cert.equation_ok}, {"group", cert.group_ok}, {"min_field_degree", cert.degree_ok}}},
             {"ok", cert.ok()}};
    std::cout << out.dump() << "\n";
  }
  return cert.ok() ? kOk : kRecognition;
}

// ---------------------------------------------------------------- chevalley

struct ChevalleyArgs {
  std::string type, lattice = "sc", file, emit;
  long long p = 0;
  unsigned e = 1;
  bool lattice_given = false, e_given = false;
  std::size_t scramble = 0;
  std::size_t toral_budget = 0, split_budget = 0;
};

json algebra_json(const LieAlgebra& l, const std::string& type, const std::string& lattice) {
  json br = json::array();
  for (std::size_t i = 0; i < l.dim(); ++i) {
    for (std::size_t j = i + 1; j < l.dim(); ++j) {
      if (l.entries(i, j).empty()) continue;
      json terms = json::array();
      for (const auto& t : l.entries(i, j)) terms.push_back({t.k, entry_json(t.c)});
      br.push_back({{"i", i}, {"j", j}, {"terms", terms}});
    }
  }
  return {{"type", type}, {"lattice", lattice}, {"p", l.level().p()}, {"e", l.level().base_degree()}, {"dim", l.dim()}, {"brackets", br}};
}

LieAlgebra algebra_from_json(const json& j, const FieldTower& tower) {
  const Level& k = tower.base();
  const std::size_t dim = j.at("dim").get<std::size_t>();
  if (dim == 0 || dim > 400) throw InputError("dim out of range");
  std::vector<std::vector<StructureEntry>> entries(dim * dim);
  for (const auto& b : j.at("brackets")) {
    const std::size_t i = b.at("i").get<std::size_t>(), jj = b.at("j").get<std::size_t>();
    if (i >= jj || jj >= dim) throw InputError("brackets must list pairs i < j < dim");
    for (const auto& t : b.at("terms")) {
      const std::size_t kk = t.at(0).get<std::size_t>();
      if (kk >= dim) throw InputError("bracket term index out of range");
      const Fq c = parse_entry(t.at(1), k);
      if (c.is_zero()) continue;
      entries[i * dim + jj].push_back({kk, c});
      entries[jj * dim + i].push_back({kk, -c});
    }
  }
  return LieAlgebra(tower, k, dim, std::move(entries));
}

int run_chevalley(const ChevalleyArgs& a, const Global& g) {
  json file;
  if (!a.file.empty()) file = read_json_arg(a.file);
  // explicit flags take precedence over the file
  const std::string type = !a.type.empty() || !file.contains("type") ? a.type : file.at("type").get<std::string>();
  const std::string lat = a.lattice_given || !file.contains("lattice") ? a.lattice : file.at("lattice").get<std::string>();
  const long long p = a.p || !file.contains("p") ? a.p : file.at("p").get<long long>();
  const unsigned e = a.e_given || !file.contains("e") ? a.e : file.at("e").get<unsigned>();
  if (type.empty()) throw InputError("missing --type");
  check_prime(p);
  if (p <= 3) throw InputError("characteristic must be at least 5");
  if (e == 0 || e > 8) throw InputError("e out of range");
  RootDatum rd = [&] {
    try {
      return RootDatum::build(type, parse_lattice(lat));
    } catch (const RootDataError& err) {
      throw InputError(err.what());
    }
  }();
  FieldTower tower(static_cast<Coeff>(p), e);
  Rng rng(g.seed);

  LieAlgebra l = file.is_null() ? LieAlgebra::from_root_datum(rd, tower, tower.base()) : algebra_from_json(file, tower);
  if (!file.is_null()) {
    if (l.check_jacobi(rng)) throw InputError("structure constants violate the Jacobi identity");
  }
  if (a.scramble > 0) l = scramble(l, rd, rng, a.scramble);
  if (!a.emit.empty()) {
    std::ofstream out(a.emit);
    if (!out) throw InputError("cannot write " + a.emit);
    out << algebra_json(l, type, lat).dump() << "\n";
  }
  const std::size_t expected = rd.rank() + rd.num_roots();
  if (l.dim() != expected) {
    std::cerr << "error: dimension " << l.dim() << " does not match type " << type << " (" << expected << ")\n";
    return kRecognition;
  }

  SearchOptions opt;
  opt.toral_budget = a.toral_budget;
  opt.split_budget = a.split_budget;
  SearchStats stats;
  std::optional<ChevalleyBasis> found;
  const Matrix given = Matrix::identity(l.level(), l.dim());
  const bool already = verify_chevalley_basis(l, rd, given).ok;
  try {
    // an input that is already in standard form is returned as is
    found = already ? ChevalleyBasis{given} : standard_chevalley_basis(l, rd, rng, opt, &stats);
  } catch (const BudgetExhausted&) {
    throw;
  } catch (const LieError& err) {
    std::cerr << "error: recognition failed: " << err.what() << "\n";
    return kRecognition;
  }
  const Matrix& basis = found->basis;
  const ChevalleyVerdict v = verify_chevalley_basis(l, rd, basis);
  if (g.text()) {
    std::cout << "type " << type << " over GF(" << p << "^" << e << "), dim " << l.dim() << "\n";
    std::cout << "verdict: " << (v.ok ? "true" : "false") << "\n";
    if (already) std::cout << "input basis is already a standard Chevalley basis\n";
    if (!v.ok) std::cout << "witness: " << v.witness << "\n";
    std::cout << "basis (rows h_1..h_n, then e_r in root order):\n" << matrix_text(basis);
  } else {
    json out{{"type", type},
             {"lattice", lat},
             {"p", p},
             {"e", e},
             {"dim", l.dim()},
             {"verdict", v.ok},
             {"input_was_standard", already},
             {"basis", matrix_json(basis)},
             {"stats",
              {{"toral_draws", stats.toral_draws}, {"split_loops", stats.split_loops}, {"k2_fallbacks", stats.k2_fallbacks}, {"recursions", stats.recursions}}}};
    if (!v.ok) out["witness"] = v.witness;
    std::cout << out.dump() << "\n";
  }
  return v.ok ? kOk : kRecognition;
}

// ---------------------------------------------------------------- weyl

struct WeylArgs {
  std::string type, what, element = "coxeter", lattice = "sc";
  bool allow_large = false;
};

int run_weyl(const WeylArgs& a, const Global& g) {
  RootDatum rd = [&] {
    try {
      return RootDatum::build(a.type, parse_lattice(a.lattice));
    } catch (const RootDataError& err) {
      throw InputError(err.what());
    }
  }();
  auto element = [&] {
    if (a.element == "coxeter") return coxeter_element(rd);
    if (a.element == "subcox") return subcoxeter_element(rd);
    throw InputError("unknown element '" + a.element + "' (coxeter, subcox)");
  };
  json out{{"type", a.type}};
  std::string text;
  if (a.what == "derangements") {
    const auto st = reflection_derangement_stats(rd, a.allow_large);
    std::ostringstream prop;
    prop << st.proportion;
    out["count"] = st.count;
    out["total"] = st.total;
    out["proportion"] = prop.str();
    text = a.type + "  " + prop.str() + "  (" + std::to_string(st.count) + "/" + std::to_string(st.total) + ")";
  } else if (a.what == "qw") {
    const IntPoly q = qw_polynomial(rd, element());
    out["element"] = a.element;
    out["coefficients"] = q;
    out["polynomial"] = poly_to_string(q);
    text = a.type + "  " + poly_to_string(q);
  } else if (a.what == "cis") {
    const auto w = element();
    const auto ci = orbit_constants(rd, w);
    const u64 c = centralizer_order(rd, w, a.allow_large);
    out["element"] = a.element;
    out["c"] = c;
    out["c_i"] = ci;
    text = a.type + "  " + std::to_string(c) + ";";
    for (std::size_t i = 0; i < ci.size(); ++i) text += (i ? ", " : " ") + std::to_string(ci[i]);
  } else {
    throw InputError("unknown --what '" + a.what + "' (derangements, qw, cis)");
  }
  if (g.text()) std::cout << text << "\n";
  else std::cout << out.dump() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lang's theorem solvers, Chevalley bases and Weyl group tables over finite fields"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  if (const char* env = std::getenv("LIETYPE_SEED")) {
    try {
      g.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: LIETYPE_SEED must be an unsigned integer\n";
      return kInput;
    }
  }
  app.add_option("--seed", g.seed, "random seed (default: $LIETYPE_SEED or 1)");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "text"}));

  LangArgs la;
  auto* lang = app.add_subcommand("lang", "solve a^{-F} a = c");
  lang->add_option("--instance", la.instance, "instance JSON (inline or file)");
  lang->add_option("--group", la.group, "GL, SL, Sp, SO or Torus");
  lang->add_option("--p", la.p, "characteristic");
  lang->add_option("--e", la.e, "k = GF(p^e)");
  lang->add_option("--d", la.d, "dimension (checked against c)");
  lang->add_option("--c", la.c, "matrix c as JSON (inline or file)");
  lang->add_option("--form", la.form, "Gram matrix of the form for Sp/SO (default: standard)");
  lang->add_option("--r", la.r, "minimum field degree of c, or auto");
  lang->add_option("--s", la.s, "order of the norm element, or auto");
  lang->add_flag("--trust-s", la.trust_s, "use the given s without computing the order");
  lang->add_option("--max-extension", la.max_extension, "cap on r*s");

  ChevalleyArgs ca;
  auto* chev = app.add_subcommand("chevalley", "recover a standard Chevalley basis");
  chev->add_option("--type", ca.type, "Cartan type, e.g. A2 or B3xA1");
  auto* chev_lat = chev->add_option("--lattice", ca.lattice, "sc or ad")->check(CLI::IsMember({"sc", "ad"}));
  chev->add_option("--p", ca.p, "characteristic (>= 5)");
  auto* chev_e = chev->add_option("--e", ca.e, "k = GF(p^e)");
  chev->add_option("--scramble", ca.scramble, "apply a random automorphism of this word length and a random basis change");
  chev->add_option("--file", ca.file, "structure constants JSON (inline or file)");
  chev->add_option("--emit-algebra", ca.emit, "write the (scrambled) input algebra to this file");
  chev->add_option("--toral-budget", ca.toral_budget, "draws per toral search (0: default)");
  chev->add_option("--split-budget", ca.split_budget, "outer loops of the split search (0: default)");

  WeylArgs wa;
  auto* weyl = app.add_subcommand("weyl", "Weyl group tables");
  weyl->add_option("--type", wa.type, "Cartan type")->required();
  weyl->add_option("--what", wa.what, "derangements, qw or cis")->required();
  weyl->add_option("--element", wa.element, "coxeter or subcox");
  weyl->add_option("--lattice", wa.lattice, "sc or ad")->check(CLI::IsMember({"sc", "ad"}));
  weyl->add_flag("--allow-large", wa.allow_large, "enumerate groups above the default size gate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (lang->parsed()) return run_lang(la, g);
    if (chev->parsed()) {
      ca.lattice_given = chev_lat->count() > 0;
      ca.e_given = chev_e->count() > 0;
      return run_chevalley(ca, g);
    }
    if (weyl->parsed()) return run_weyl(wa, g);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const LangInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const LangBudget& e) {
    std::cerr << "error: budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const BudgetExhausted& e) {
    std::cerr << "error: budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const EnumerationGate& e) {
    std::cerr << "error: " << e.what() << " (pass --allow-large)\n";
    return kGate;
  } catch (const LangError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRecognition;
  } catch (const FieldError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const RootDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const LieError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
