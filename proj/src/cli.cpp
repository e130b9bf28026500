#include "latclone/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "latclone/algebra.hpp"
#include "latclone/eqsol.hpp"
#include "latclone/error.hpp"
#include "latclone/io.hpp"
#include "latclone/ppqe.hpp"
#include "latclone/sdc.hpp"

namespace latclone::cli {

namespace {

struct Options {
  std::string structure_path;
  std::string mode;
  std::size_t arity = 2;
  std::string equations;
  std::string relation;
  std::string formula;
  std::string file;
  std::string vars;
  std::size_t verify = SdcOptions{}.verify;
  std::uint64_t seed = kDefaultSeed;
  bool pretty = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::bad_spec, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A path when such a file exists, inline text otherwise.
std::string path_or_text(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return read_file(arg);
  return arg;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r\n") - first + 1);
}

class Session {
 public:
  Session(const Options& opt, std::ostream& out, std::ostream& err)
      : opt_(opt), out_(out), err_(err), limits_(Limits::from_env()),
        file_(parse_json(read_file(opt.structure_path))),
        structure_(structure_from_json(file_)) {}

  Mode mode() const {
    if (!opt_.mode.empty()) return parse_mode(opt_.mode);
    return std::holds_alternative<FiniteLattice>(structure_) ? Mode::lattice : Mode::semilattice;
  }

  const FiniteLattice& lattice() const {
    if (const auto* l = std::get_if<FiniteLattice>(&structure_)) return *l;
    throw Error(Errc::bad_spec, "lattice mode needs a lattice file");
  }

  FiniteSemilattice semilattice() const {
    if (const auto* l = std::get_if<FiniteLattice>(&structure_)) return l->meet_reduct();
    return std::get<FiniteSemilattice>(structure_);
  }

  TermAlgebra algebra() const {
    if (mode() == Mode::lattice) return TermAlgebra::lattice(lattice());
    return TermAlgebra::semilattice(semilattice());
  }

  const std::vector<std::string>& names() const {
    return std::visit([](const auto& s) -> const std::vector<std::string>& { return s.names(); },
                      structure_);
  }

  std::optional<std::vector<std::string>> declared_vars() const {
    if (opt_.vars.empty()) return std::nullopt;
    std::vector<std::string> vars;
    std::stringstream ss(opt_.vars);
    std::string v;
    while (std::getline(ss, v, ',')) {
      v = trim(v);
      if (!v.empty()) vars.push_back(v);
    }
    return vars;
  }

  std::string formula_text() const {
    if (!opt_.formula.empty() && !opt_.file.empty()) {
      throw Error(Errc::bad_spec, "give the formula either with -f or with --file, not both");
    }
    if (!opt_.file.empty()) return read_file(opt_.file);
    if (opt_.formula.empty()) throw Error(Errc::bad_spec, "no formula given (-f or --file)");
    return path_or_text(opt_.formula);
  }

  PPFormula formula() const { return parse_formula(trim(formula_text()), mode(), declared_vars()); }

  Relation relation() const {
    if (opt_.relation.empty()) throw Error(Errc::bad_spec, "no relation given (-T)");
    return relation_from_json(parse_json(path_or_text(opt_.relation)), names().size(), names());
  }

  void emit(const Json& j) { out_ << j.dump() << "\n"; }
  void note(const std::string& s) {
    if (opt_.pretty) err_ << s << "\n";
  }

  std::string label(Elem e) const { return names().at(e); }
  Json labels(std::span<const Elem> es) const {
    Json j = Json::array();
    for (auto e : es) j.push_back(label(e));
    return j;
  }

  int check(bool extended);
  int clone();
  int centralizer();
  int solve();
  int eq();
  int galois();
  int eval();
  int qe();
  int sdc();

 private:
  Json lattice_report(const FiniteLattice& L, bool extended) const;
  Json semilattice_report(const FiniteSemilattice& M, bool extended) const;
  Json covers(const std::function<bool(Elem, Elem)>& leq) const;

  const Options& opt_;
  std::ostream& out_;
  std::ostream& err_;
  Limits limits_;
  Json file_;
  Structure structure_;
};

Json Session::covers(const std::function<bool(Elem, Elem)>& leq) const {
  const auto n = names().size();
  Json out = Json::array();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const auto ex = static_cast<Elem>(x), ey = static_cast<Elem>(y);
      if (x == y || !leq(ex, ey)) continue;
      bool cover = true;
      for (std::size_t z = 0; z < n && cover; ++z) {
        const auto ez = static_cast<Elem>(z);
        cover = z == x || z == y || !(leq(ex, ez) && leq(ez, ey));
      }
      if (cover) out.push_back(Json::array({label(ex), label(ey)}));
    }
  }
  return out;
}

Json Session::lattice_report(const FiniteLattice& L, bool extended) const {
  Json j{{"kind", "lattice"}, {"size", L.size()}, {"elements", L.names()},
         {"bottom", label(L.bottom())}, {"top", label(L.top())}};
  const auto d = is_distributive(L);
  j["distributive"] = d.distributive;
  if (d.violation) j["violation"] = labels(*d.violation);
  if (const auto f = forbidden_sublattice(L)) {
    j["forbidden"] = Json{{"kind", f->kind == ForbiddenKind::N5 ? "N5" : "M3"},
                          {"elements", labels(f->elements)}};
  }
  const auto b = is_boolean(L);
  j["boolean"] = b.boolean;
  if (!extended) return j;
  j["covers"] = covers([&](Elem x, Elem y) { return L.leq(x, y); });
  j["joinIrreducibles"] = labels(join_irreducibles(L));
  if (d.distributive) {
    const auto e = birkhoff_embed(L);
    Json image = Json::object();
    for (std::size_t x = 0; x < L.size(); ++x) image[L.names()[x]] = e.image[x];
    j["embedding"] = Json{{"atoms", labels(e.atoms)}, {"image", image}};
  }
  if (b.structure) {
    Json comp = Json::object();
    for (std::size_t x = 0; x < L.size(); ++x) {
      comp[L.names()[x]] = label(b.structure->complement(static_cast<Elem>(x)));
    }
    j["complements"] = comp;
  }
  j["distributiveSemilattice"] = is_distributive_semilattice(L.meet_reduct());
  return j;
}

Json Session::semilattice_report(const FiniteSemilattice& M, bool extended) const {
  Json j{{"kind", "semilattice"}, {"size", M.size()}, {"elements", M.names()},
         {"bottom", label(M.bottom())}};
  j["top"] = M.top() ? Json(label(*M.top())) : Json(nullptr);
  j["distributive"] = is_distributive_semilattice(M);
  if (!extended) return j;
  j["covers"] = covers([&](Elem x, Elem y) { return M.leq(x, y); });
  if (M.top()) j["completion"] = lattice_report(semilattice_to_lattice(M), false);
  return j;
}

int Session::check(bool extended) {
  Json j = std::holds_alternative<FiniteLattice>(structure_)
               ? lattice_report(std::get<FiniteLattice>(structure_), extended)
               : semilattice_report(std::get<FiniteSemilattice>(structure_), extended);
  emit(j);
  note(std::string(j["kind"]) + " of size " + std::to_string(names().size()) +
       (j["distributive"].get<bool>() ? ", distributive" : ", not distributive"));
  return 0;
}

int Session::clone() {
  const auto slice = clone_slice(algebra().generators(), opt_.arity, limits_.clone);
  Json ops = Json::array();
  for (const auto& op : slice) ops.push_back(to_json(op));
  emit(Json{{"mode", to_string(mode())}, {"arity", opt_.arity}, {"count", slice.size()}, {"operations", ops}});
  note(std::to_string(slice.size()) + " term operations of arity " + std::to_string(opt_.arity));
  return 0;
}

int Session::centralizer() {
  const auto slice = centralizer_slice(algebra().generators(), opt_.arity, limits_.centralizer);
  Json ops = Json::array();
  for (const auto& op : slice) ops.push_back(to_json(op));
  emit(Json{{"mode", to_string(mode())}, {"arity", opt_.arity}, {"count", slice.size()}, {"operations", ops}});
  note(std::to_string(slice.size()) + " centralizer operations of arity " + std::to_string(opt_.arity));
  return 0;
}

int Session::solve() {
  if (!opt_.equations.empty() && !opt_.file.empty()) {
    throw Error(Errc::bad_spec, "give the equations either with -e or with --file, not both");
  }
  const auto alg = algebra();
  EquationSystem system;
  std::string text = opt_.file.empty() ? opt_.equations : read_file(opt_.file);
  if (trim(text).empty()) throw Error(Errc::bad_spec, "no equations given (-e or --file)");
  if (trim(text).front() == '{') {
    system = system_from_json(parse_json(text), alg.size());
  } else {
    const auto f = parse_formula(trim(text), mode(), declared_vars());
    if (!f.quantifier_free()) throw Error(Errc::bad_spec, "equations cannot be quantified; use eval");
    if (f.free_vars.empty()) throw Error(Errc::bad_spec, "equations have no variables");
    system.arity = f.free_vars.size();
    for (const auto& a : f.atoms) {
      system.equations.push_back({term_table(a.lhs, alg, system.arity), term_table(a.rhs, alg, system.arity)});
    }
  }
  const auto rel = latclone::solve(system, alg.size());
  emit(to_json(rel));
  note(std::to_string(rel.size()) + " solutions");
  return 0;
}

Json equation_pairs(const EquationSystem& system) {
  Json eqs = Json::array();
  for (const auto& e : system.equations) eqs.push_back(Json::array({e.lhs.provenance(), e.rhs.provenance()}));
  return eqs;
}

int Session::eq() {
  const auto T = relation();
  const auto theory = equations_of(T, algebra().generators(), limits_.clone);
  Json terms = Json::array();
  for (const auto& t : theory.terms) terms.push_back(t.provenance());
  emit(Json{{"arity", theory.arity},
            {"terms", terms},
            {"blocks", theory.blocks},
            {"equations", equation_pairs(theory.spanning_system())}});
  note(std::to_string(theory.blocks.size()) + " classes among " + std::to_string(theory.terms.size()) +
       " term operations");
  return 0;
}

int Session::galois() {
  const auto T = relation();
  const auto v = is_solution_set(T, algebra().generators(), limits_.clone);
  Json j{{"status", to_string(v.status)}};
  if (v.closure) j["closure"] = to_json(*v.closure);
  if (v.gap_tuple) j["gapTuple"] = tuple_json(*v.gap_tuple);
  if (v.gap) j["gap"] = to_json(*v.gap);
  if (v.certificate) j["certificate"] = equation_pairs(*v.certificate);
  emit(j);
  note(std::string("solution set: ") + to_string(v.status));
  return v.status == SolutionSetStatus::unknown ? 2 : 0;
}

int Session::eval() {
  const auto rel = eval_formula(formula(), algebra());
  emit(to_json(rel));
  note(std::to_string(rel.size()) + " tuples");
  return 0;
}

int Session::qe() {
  const auto phi = formula();
  const auto psi = mode() == Mode::lattice ? eliminate_boolean(phi, lattice())
                                           : eliminate_semilattice(phi, semilattice());
  emit(Json{{"mode", to_string(mode())},
            {"input", to_string(phi)},
            {"formula", to_string(psi)},
            {"freeVars", psi.free_vars}});
  note(to_string(psi));
  return 0;
}

int Session::sdc() {
  SdcOptions options;
  options.verify = opt_.verify;
  options.seed = opt_.seed;
  options.limit = limits_.clone;
  const auto v = mode() == Mode::lattice ? decide_sdc(lattice(), Mode::lattice, options)
                                         : decide_sdc(semilattice(), options);
  emit(to_json(v));
  note(std::string("SDC ") + (v.holds ? "holds" : "fails") + " (" + v.route + ")");
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equations over finite lattices and semilattices", "latclone"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--pretty", opt.pretty, "Human-readable summary on stderr");

  const std::vector<std::string> modes{"lattice", "semilattice"};
  auto add = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("structure", opt.structure_path, "Lattice or semilattice JSON file")->required();
    sub->add_option("--mode", opt.mode, "Signature: lattice or semilattice")
        ->check(CLI::IsMember(modes));
    sub->add_flag("--pretty", opt.pretty, "Human-readable summary on stderr");
    return sub;
  };

  add("check", "Validate a structure and report its properties");
  add("props", "Extended property report");
  add("clone", "Clone slice")->add_option("-n", opt.arity, "Arity")->check(CLI::PositiveNumber);
  add("centralizer", "Centralizer slice")->add_option("-k", opt.arity, "Arity")->check(CLI::PositiveNumber);
  {
    auto* s = add("solve", "Solution set of a system of equations");
    s->add_option("-e", opt.equations, "Equations, e.g. \"x /\\ y = x & y <= z\"");
    s->add_option("--file", opt.file, "Equations as DSL text or a JSON system");
    s->add_option("--vars", opt.vars, "Comma-separated variable order");
  }
  add("eq", "Equation theory of a relation")->add_option("-T", opt.relation, "Relation JSON (file or inline)");
  add("galois", "Sol(Eq(T)) and whether T is a solution set")
      ->add_option("-T", opt.relation, "Relation JSON (file or inline)");
  for (const auto* verb : {"eval", "qe"}) {
    auto* s = add(verb, std::string(verb) == "eval" ? "Relation defined by a formula"
                                                     : "Quantifier elimination");
    s->add_option("-f", opt.formula, "Formula text, or a file containing it");
    s->add_option("--file", opt.file, "File containing the formula");
    s->add_option("--vars", opt.vars, "Comma-separated free-variable order");
  }
  {
    auto* s = add("sdc", "Decide Property SDC");
    s->add_option("--verify", opt.verify, "Random formulas for positive verdicts; 0 skips verification");
    s->add_option("--seed", opt.seed, "Seed for the verification formulas");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  const auto* sub = app.get_subcommands().front();
  const auto verb = sub->get_name();
  try {
    Session s(opt, out, err);
    if (verb == "check") return s.check(false);
    if (verb == "props") return s.check(true);
    if (verb == "clone") return s.clone();
    if (verb == "centralizer") return s.centralizer();
    if (verb == "solve") return s.solve();
    if (verb == "eq") return s.eq();
    if (verb == "galois") return s.galois();
    if (verb == "eval") return s.eval();
    if (verb == "qe") return s.qe();
    return s.sdc();
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << (is_refusal(e.code()) ? "refused: " : "error: ") << e.what() << "\n";
    return is_refusal(e.code()) ? 2 : 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error: BadSpec: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace latclone::cli
