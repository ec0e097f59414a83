// Command-line front end. Exit codes: 0 yes/success, 1 no, 2 unknown or out
// of budget, 3 input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "parikh/closures.hpp"
#include "parikh/corpus.hpp"
#include "parikh/decide.hpp"
#include "parikh/epsilon.hpp"
#include "parikh/hd.hpp"
#include "parikh/rbcm.hpp"
#include "parikh/reductions.hpp"
#include "parikh/text_format.hpp"

namespace {

using namespace parikh;

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kUnknown = 2;
constexpr int kInputError = 3;

std::string read_source(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidInput, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Automaton input: a file, '-' for standard input, or corpus:NAME.
struct Loaded {
  AutomatonDocument doc;
  std::optional<Resolver> resolver;  // built-in corpus resolver
};

Loaded load(const std::string& source) {
  if (source.rfind("corpus:", 0) == 0) {
    auto entry = corpus_get(source.substr(7));
    return {AutomatonDocument{entry.automaton, std::nullopt}, entry.resolver};
  }
  return {parse_document(read_source(source)), std::nullopt};
}

/// Epsilon documents are eliminated first.
ParikhAutomaton load_pa(const std::string& source) {
  auto l = load(source);
  if (l.doc.is_epsilon()) return eliminate_epsilon(std::get<EpsilonPA>(l.doc.automaton));
  return l.doc.pa();
}

Resolver resolver_of(const Loaded& l) {
  if (l.resolver) return *l.resolver;
  if (l.doc.resolver) return positional_resolver(l.doc.pa(), *l.doc.resolver);
  return first_choice_resolver(l.doc.pa());
}

MinskyMachine load_minsky(const std::string& source) {
  if (source.rfind("minsky:", 0) == 0) return minsky_suite(source.substr(7));
  return parse_minsky(read_source(source));
}

std::string quoted(const Alphabet& sigma, const Word& w) { return "\"" + sigma.format_word(w) + "\""; }

Word parse_word_arg(const Alphabet& sigma, const std::string& text) { return sigma.parse_word(text); }

struct Output {
  bool json = false;
  void automaton(const ParikhAutomaton& a) const {
    std::cout << (json ? serialize_json(AutomatonDocument{a, std::nullopt}) : serialize(a));
  }
  void epsilon(const EpsilonPA& a) const {
    std::cout << (json ? serialize_json(AutomatonDocument{a, std::nullopt}) : serialize(a));
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parikh automata toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t budget = 1'000'000;
  std::size_t max_len = 8;
  Output out;
  app.add_option("--budget-steps", budget, "solver and search step budget")->capture_default_str();
  app.add_option("--max-len", max_len, "word length bound for enumerations")->capture_default_str();
  app.add_flag("--json", out.json, "emit automata in the JSON variant");

  int code = kYes;
  std::string a_path, b_path, word;

  auto* member_cmd = app.add_subcommand("member", "word membership");
  member_cmd->add_option("automaton", a_path)->required();
  member_cmd->add_option("word", word)->required();
  member_cmd->callback([&] {
    auto a = load_pa(a_path);
    bool yes = member(a, parse_word_arg(a.alphabet(), word));
    std::cout << (yes ? "member" : "non-member") << '\n';
    code = yes ? kYes : kNo;
  });

  auto* empty_cmd = app.add_subcommand("empty", "emptiness");
  empty_cmd->add_option("automaton", a_path)->required();
  empty_cmd->callback([&] {
    auto a = load_pa(a_path);
    auto r = is_empty(a, budget);
    if (r.status == Emptiness::Empty) std::cout << "empty\n";
    if (r.status == Emptiness::Nonempty) std::cout << "nonempty witness " << quoted(a.alphabet(), r.witness) << '\n';
    if (r.status == Emptiness::Unknown) std::cout << "unknown\n";
    code = r.status == Emptiness::Empty ? kYes : r.status == Emptiness::Nonempty ? kNo : kUnknown;
  });

  auto* finite_cmd = app.add_subcommand("finite", "finiteness");
  finite_cmd->add_option("automaton", a_path)->required();
  finite_cmd->callback([&] {
    auto a = load_pa(a_path);
    auto r = is_finite(a, budget);
    if (r.status == Finiteness::Finite) std::cout << "finite\n";
    if (r.status == Finiteness::Infinite)
      std::cout << "infinite pumped " << quoted(a.alphabet(), pumped_word(a, r, 1)) << ' '
                << quoted(a.alphabet(), pumped_word(a, r, 2)) << '\n';
    if (r.status == Finiteness::Unknown) std::cout << "unknown\n";
    code = r.status == Finiteness::Finite ? kYes : r.status == Finiteness::Infinite ? kNo : kUnknown;
  });

  std::string op = "union";
  auto* product_cmd = app.add_subcommand("product", "union or intersection");
  product_cmd->add_option("--op", op)->check(CLI::IsMember({"union", "intersect"}));
  product_cmd->add_option("first", a_path)->required();
  product_cmd->add_option("second", b_path)->required();
  product_cmd->callback([&] {
    auto a = load_pa(a_path);
    auto b = load_pa(b_path);
    out.automaton(op == "union" ? union_pa(a, b).automaton : intersect_pa(a, b).automaton);
  });

  std::vector<std::string> maps;
  auto* invhom_cmd = app.add_subcommand("invhom", "inverse homomorphic image");
  invhom_cmd->add_option("--map", maps, "letter=image, one per source letter")->required();
  invhom_cmd->add_option("automaton", a_path)->required();
  invhom_cmd->callback([&] {
    auto a = load_pa(a_path);
    std::vector<std::string> names;
    std::vector<std::string> images;
    for (const auto& m : maps) {
      auto eq = m.find('=');
      if (eq == std::string::npos || eq == 0) fail(ErrorKind::InvalidInput, "map '" + m + "' is not letter=image");
      names.push_back(m.substr(0, eq));
      images.push_back(m.substr(eq + 1));
    }
    Homomorphism h{Alphabet(names), a.alphabet(), {}};
    for (const auto& img : images) h.images.push_back(a.alphabet().parse_word(img));
    out.automaton(inverse_hom(a, h).automaton);
  });

  auto* comm_cmd = app.add_subcommand("comm-member", "member up to letter order");
  comm_cmd->add_option("automaton", a_path)->required();
  comm_cmd->add_option("word", word)->required();
  comm_cmd->callback([&] {
    auto a = load_pa(a_path);
    auto r = commutative_member(a, parse_word_arg(a.alphabet(), word), budget);
    std::cout << (!r ? "unknown" : *r ? "member" : "non-member") << '\n';
    code = !r ? kUnknown : *r ? kYes : kNo;
  });

  auto* eps_cmd = app.add_subcommand("eps-eliminate", "remove epsilon transitions");
  eps_cmd->add_option("automaton", a_path)->required();
  eps_cmd->callback([&] {
    auto l = load(a_path);
    auto e = l.doc.is_epsilon() ? std::get<EpsilonPA>(l.doc.automaton) : EpsilonPA::from(l.doc.pa());
    out.automaton(eliminate_epsilon(e));
  });

  auto* hd_cmd = app.add_subcommand("hd", "history-determinism tools");
  hd_cmd->require_subcommand(1);
  auto* validate_cmd = hd_cmd->add_subcommand("validate", "check a resolver on all short words");
  validate_cmd->add_option("automaton", a_path)->required();
  validate_cmd->callback([&] {
    auto l = load(a_path);
    const auto& a = l.doc.pa();
    auto v = validate_resolver(a, resolver_of(l), max_len);
    if (v.valid) std::cout << "valid to length " << max_len << '\n';
    else std::cout << "invalid counterexample " << quoted(a.alphabet(), *v.counterexample) << '\n';
    code = v.valid ? kYes : kNo;
  });
  std::size_t horizon = 6;
  auto* game_cmd = hd_cmd->add_subcommand("game", "letter game up to a horizon");
  game_cmd->add_option("--horizon", horizon)->capture_default_str();
  game_cmd->add_option("automaton", a_path)->required();
  game_cmd->callback([&] {
    auto a = load(a_path).doc.pa();
    StepBudget steps(budget);
    for (std::size_t h = 0; h <= horizon; ++h) {
      auto g = letter_game(a, h, steps);
      if (g.outcome == GameOutcome::AdamWins) {
        std::cout << "adam wins at horizon " << h << '\n';
        code = kYes;
        return;
      }
      if (g.outcome == GameOutcome::Unknown) {
        std::cout << "unknown at horizon " << h << '\n';
        code = kUnknown;
        return;
      }
    }
    std::cout << "eve survives to horizon " << horizon << '\n';
    code = kNo;
  });
  std::size_t suffix_len = 4;
  auto* pump_cmd = hd_cmd->add_subcommand("pump", "pumping decomposition of a long word");
  pump_cmd->add_option("--suffix-len", suffix_len, "check all suffixes up to this length")->capture_default_str();
  pump_cmd->add_option("automaton", a_path)->required();
  pump_cmd->add_option("word", word)->required();
  pump_cmd->callback([&] {
    auto l = load(a_path);
    const auto& a = l.doc.pa();
    auto completed = complete(a);
    auto r = complete_resolver(completed, resolver_of(l));
    const auto& sigma = completed.alphabet();
    auto dec = pumping_decompose(completed, r, parse_word_arg(sigma, word));
    std::cout << "states " << dec.states << " cycles " << dec.cycles << " bound " << dec.length_bound << '\n'
              << "u " << quoted(sigma, dec.u) << "\nv " << quoted(sigma, dec.v) << "\nx " << quoted(sigma, dec.x)
              << "\nz " << quoted(sigma, dec.z) << '\n';
    auto violations = pumping_check(completed, dec, words_up_to(sigma.size(), suffix_len));
    for (const auto& v : violations)
      std::cout << "violation suffix " << quoted(sigma, v.suffix) << " rejects " << quoted(sigma, v.pumped) << '\n';
    std::cout << violations.size() << " violations\n";
    code = violations.empty() ? kYes : kNo;
  });

  auto* rbcm_cmd = app.add_subcommand("rbcm", "reversal-bounded counter machines");
  rbcm_cmd->require_subcommand(1);
  auto* run_cmd = rbcm_cmd->add_subcommand("run", "acceptance by configuration search");
  run_cmd->add_option("machine", a_path)->required();
  run_cmd->add_option("word", word)->required();
  run_cmd->callback([&] {
    auto m = parse_machine(read_source(a_path));
    SearchLimits limits;
    limits.steps = budget;
    auto r = cm_accepts(m, m.alphabet().parse_word(word), limits);
    if (r.verdict == MachineVerdict::Accept) {
      std::cout << "accept run";
      for (auto t : r.trace) std::cout << ' ' << t;
      std::cout << '\n';
    }
    if (r.verdict == MachineVerdict::Reject) std::cout << "reject\n";
    if (r.verdict == MachineVerdict::Unknown) std::cout << "unknown" << (r.cap_reached ? " counter cap reached" : "") << '\n';
    code = r.verdict == MachineVerdict::Accept ? kYes : r.verdict == MachineVerdict::Reject ? kNo : kUnknown;
  });
  auto* normalize_cmd = rbcm_cmd->add_subcommand("normalize", "normal form of a one-way machine");
  normalize_cmd->add_option("machine", a_path)->required();
  normalize_cmd->callback([&] { std::cout << serialize_machine(normalize(parse_machine(read_source(a_path)))); });
  bool eliminate = false;
  auto* to_pa_cmd = rbcm_cmd->add_subcommand("to-pa", "epsilon-PA of a normal-form machine");
  to_pa_cmd->add_flag("--eliminate", eliminate, "also remove epsilon transitions");
  to_pa_cmd->add_option("machine", a_path)->required();
  to_pa_cmd->callback([&] {
    auto e = rbcm_to_epsilon_pa(parse_machine(read_source(a_path)));
    if (eliminate) out.automaton(eliminate_epsilon(e));
    else out.epsilon(e);
  });

  auto* pa_cmd = app.add_subcommand("pa", "PA conversions");
  pa_cmd->require_subcommand(1);
  auto* to_rbcm_cmd = pa_cmd->add_subcommand("to-rbcm", "one-way counter machine tracking the run image");
  to_rbcm_cmd->add_option("automaton", a_path)->required();
  to_rbcm_cmd->callback([&] {
    auto a = load_pa(a_path);
    auto pm = pa_to_rbcm(a);
    std::cout << serialize_machine(pm.machine) << "# final counters must lie in\n";
    std::istringstream set_text(serialize_set(a.acceptance()));
    for (std::string line; std::getline(set_text, line);) std::cout << "# " << line << '\n';
  });

  auto* minsky_cmd = app.add_subcommand("minsky", "two-counter machines");
  minsky_cmd->require_subcommand(1);
  std::size_t steps = 10'000;
  auto* mrun_cmd = minsky_cmd->add_subcommand("run", "simulate");
  mrun_cmd->add_option("--steps", steps)->capture_default_str();
  mrun_cmd->add_option("program", a_path)->required();
  mrun_cmd->callback([&] {
    auto m = load_minsky(a_path);
    auto r = minsky_run(m, steps);
    std::cout << (r.terminated ? "terminated" : "running") << " after " << r.configs.size() - 1 << " steps\n";
    auto w = r.projection();
    std::cout << "lines " << quoted(m.line_alphabet(), Word(w.begin(), w.begin() + std::min<std::size_t>(w.size(), 64)))
              << (w.size() > 64 ? " ..." : "") << '\n';
    code = r.terminated ? kYes : kNo;
  });
  std::string target = "safety";
  auto* compile_cmd = minsky_cmd->add_subcommand("compile", "reduction automaton");
  compile_cmd->add_option("--target", target)->check(CLI::IsMember({"safety", "universality", "regularity"}));
  compile_cmd->add_option("program", a_path)->required();
  compile_cmd->callback([&] {
    auto m = guard_decrements(load_minsky(a_path));
    if (target == "safety") out.automaton(build_safety_dpa(m));
    else if (target == "universality") out.automaton(build_universality_hdpa(m).automaton);
    else out.automaton(build_regularity_hdpa(m).automaton);
  });

  auto* collapse_cmd = app.add_subcommand("collapse", "rename every letter to #");
  collapse_cmd->add_option("automaton", a_path)->required();
  collapse_cmd->callback([&] { out.automaton(collapse_alphabet(load_pa(a_path))); });

  auto* pair_cmd = app.add_subcommand("pair", "pairing with the E automaton");
  pair_cmd->add_option("automaton", a_path)->required();
  pair_cmd->callback([&] { out.automaton(build_pairing(load_pa(a_path), corpus_get("E").automaton)); });

  std::string restrict_word;
  auto* restrict_cmd = app.add_subcommand("restrict", "fix the first component to u #*");
  restrict_cmd->add_option("--word", restrict_word, "u, one letter per character or space separated")->required();
  restrict_cmd->add_option("automaton", a_path)->required();
  restrict_cmd->callback([&] {
    std::vector<std::string> u;
    std::istringstream tokens(restrict_word);
    std::vector<std::string> parts;
    for (std::string t; tokens >> t;) parts.push_back(t);
    if (parts.size() == 1) for (char ch : parts[0]) u.emplace_back(1, ch);
    else u = parts;
    out.automaton(restrict_first(load_pa(a_path), u));
  });

  auto* corpus_cmd = app.add_subcommand("corpus", "built-in automata");
  corpus_cmd->require_subcommand(1);
  auto* list_cmd = corpus_cmd->add_subcommand("list", "entry names");
  list_cmd->callback([&] {
    for (const auto& n : corpus_names()) std::cout << n << "  " << corpus_get(n).description << '\n';
  });
  std::string entry_name;
  auto* get_cmd = corpus_cmd->add_subcommand("get", "entry automaton");
  get_cmd->add_option("name", entry_name)->required();
  get_cmd->callback([&] { out.automaton(corpus_get(entry_name).automaton); });

  auto* equiv_cmd = app.add_subcommand("equiv", "bounded equivalence");
  equiv_cmd->add_option("first", a_path)->required();
  equiv_cmd->add_option("second", b_path)->required();
  equiv_cmd->callback([&] {
    auto r = bounded_equiv(load_pa(a_path), load_pa(b_path), max_len);
    if (r.equal) std::cout << "equal to length " << max_len << '\n';
    else std::cout << "counterexample " << quoted(r.alphabet, *r.counterexample) << '\n';
    code = r.equal ? kYes : kNo;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::Budget ? kUnknown : kInputError;
  }
  return code;
}
