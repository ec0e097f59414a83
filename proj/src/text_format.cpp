#include "parikh/text_format.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include <json.hpp>

namespace parikh {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kPaHeader = "parikh-automaton";
constexpr const char* kEpsilonHeader = "epsilon-parikh-automaton";
constexpr const char* kMachineHeader = "counter-machine";
constexpr const char* kEpsilonToken = "@eps";

struct Token {
  std::string text;
  std::size_t column = 1;
};

struct Line {
  std::size_t number = 0;
  std::vector<Token> tokens;
};

[[noreturn]] void fail_at(std::size_t line, std::size_t column, const std::string& what) {
  fail(ErrorKind::InvalidInput, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  for (std::size_t number = 1; std::getline(in, raw); ++number) {
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      if (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r') {
        ++i;
        continue;
      }
      std::size_t start = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '\r') ++i;
      line.tokens.push_back({raw.substr(start, i - start), start + 1});
    }
    if (line.tokens.empty() || line.tokens.front().text.front() == '#') continue;
    lines.push_back(std::move(line));
  }
  return lines;
}

/// Cursor over tokenized lines.
class Reader {
 public:
  explicit Reader(std::vector<Line> lines) : lines_(std::move(lines)) {}

  bool done() const { return pos_ >= lines_.size(); }
  const Line& peek() const {
    if (done()) fail(ErrorKind::InvalidInput, "unexpected end of input");
    return lines_[pos_];
  }
  const Line& next() {
    const Line& l = peek();
    ++pos_;
    return l;
  }
  bool at(const std::string& keyword) const { return !done() && lines_[pos_].tokens[0].text == keyword; }

  /// Next line, which must start with `keyword` and have `min`..`max` tokens
  /// after it.
  const Line& expect(const std::string& keyword, std::size_t min = 0, std::size_t max = SIZE_MAX) {
    if (done()) fail(ErrorKind::InvalidInput, "unexpected end of input, expected '" + keyword + "'");
    const Line& l = next();
    if (l.tokens[0].text != keyword)
      fail_at(l.number, l.tokens[0].column, "expected '" + keyword + "', got '" + l.tokens[0].text + "'");
    std::size_t args = l.tokens.size() - 1;
    if (args < min || args > max) {
      std::size_t col = args < min ? l.tokens.back().column + l.tokens.back().text.size() : l.tokens[max + 1].column;
      fail_at(l.number, col, "wrong number of fields after '" + keyword + "'");
    }
    return l;
  }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

std::int64_t parse_int(const Line& l, const Token& t, std::string_view text) {
  std::int64_t v = 0;
  const char* first = text.data();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    fail_at(l.number, t.column, "expected an integer, got '" + std::string(text) + "'");
  return v;
}

std::size_t parse_count(const Line& l, const Token& t) {
  auto v = parse_int(l, t, t.text);
  if (v < 0) fail_at(l.number, t.column, "expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

Vec parse_vec(const Line& l, const Token& t, std::optional<std::size_t> dim) {
  Vec v;
  if (t.text != "-") {
    std::string_view s = t.text;
    std::size_t start = 0;
    for (;;) {
      auto comma = s.find(',', start);
      v.push_back(parse_int(l, t, s.substr(start, comma == std::string_view::npos ? s.npos : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  if (dim && v.size() != *dim)
    fail_at(l.number, t.column,
            "vector '" + t.text + "' has " + std::to_string(v.size()) + " entries, expected " + std::to_string(*dim));
  return v;
}

std::string vec_text(const Vec& v) { return v.empty() ? "-" : format_vec(v); }

void check_name(const Line& l, const Token& t) {
  if (t.text == kEpsilonToken)
    fail_at(l.number, t.column, "'" + t.text + "' is not a valid name");
}

std::map<std::string, std::size_t> name_index(const Line& l, std::size_t from, const std::string& what) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = from; i < l.tokens.size(); ++i) {
    check_name(l, l.tokens[i]);
    if (!index.emplace(l.tokens[i].text, index.size()).second)
      fail_at(l.number, l.tokens[i].column, "duplicate " + what + " '" + l.tokens[i].text + "'");
  }
  return index;
}

std::size_t lookup(const std::map<std::string, std::size_t>& index, const Line& l, const Token& t,
                   const std::string& what) {
  auto it = index.find(t.text);
  if (it == index.end()) fail_at(l.number, t.column, "unknown " + what + " '" + t.text + "'");
  return it->second;
}

// ---- atoms and sets -------------------------------------------------------

/// Atoms "lin c rel rhs" and "mod c m r" separated by "&", starting at token i.
Conjunction parse_atoms(const Line& l, std::size_t i, std::size_t dim) {
  Conjunction atoms;
  const auto& t = l.tokens;
  while (i < t.size()) {
    if (!atoms.empty()) {
      if (t[i].text != "&") fail_at(l.number, t[i].column, "expected '&'");
      ++i;
    }
    if (i + 3 >= t.size()) {
      std::size_t col = i < t.size() ? t[i].column : t.back().column;
      fail_at(l.number, col, "incomplete atom");
    }
    const auto& kind = t[i];
    if (kind.text == "lin") {
      auto rel = parse_rel(t[i + 2].text);
      if (!rel) fail_at(l.number, t[i + 2].column, "unknown relation '" + t[i + 2].text + "'");
      atoms.push_back(LinearAtom{parse_vec(l, t[i + 1], dim), *rel, parse_int(l, t[i + 3], t[i + 3].text)});
    } else if (kind.text == "mod") {
      auto m = parse_int(l, t[i + 2], t[i + 2].text);
      if (m < 1) fail_at(l.number, t[i + 2].column, "modulus must be positive");
      atoms.push_back(CongruenceAtom{parse_vec(l, t[i + 1], dim), m, parse_int(l, t[i + 3], t[i + 3].text)});
    } else {
      fail_at(l.number, kind.column, "expected 'lin' or 'mod', got '" + kind.text + "'");
    }
    i += 4;
  }
  return atoms;
}

std::string atoms_text(const Conjunction& atoms) {
  std::string out;
  for (const auto& a : atoms) {
    if (!out.empty()) out += " & ";
    if (const auto* lin = std::get_if<LinearAtom>(&a)) {
      out += "lin " + vec_text(lin->coeffs) + " " + rel_token(lin->rel) + " " + std::to_string(lin->rhs);
    } else {
      const auto& m = std::get<CongruenceAtom>(a);
      out += "mod " + vec_text(m.coeffs) + " " + std::to_string(m.modulus) + " " + std::to_string(m.residue);
    }
  }
  return out;
}

SemilinearSet read_set(Reader& in) {
  const Line& head = in.expect("set", 1);
  const auto& kind = head.tokens[1];
  auto dim_arg = [&]() {
    if (head.tokens.size() != 3) fail_at(head.number, kind.column, "set '" + kind.text + "' needs a dimension");
    return parse_count(head, head.tokens[2]);
  };
  auto close = [&]() { in.expect("end", 0, 0); };
  if (kind.text == "explicit") {
    std::size_t dim = dim_arg();
    std::vector<LinearSet> parts;
    while (!in.at("end")) {
      const Line& l = in.expect("linear", 1);
      Vec offset = parse_vec(l, l.tokens[1], dim);
      std::vector<Vec> periods;
      if (l.tokens.size() > 2) {
        if (l.tokens[2].text != ":") fail_at(l.number, l.tokens[2].column, "expected ':'");
        for (std::size_t i = 3; i < l.tokens.size(); ++i) {
          if ((i - 3) % 2 == 1) {
            if (l.tokens[i].text != ";") fail_at(l.number, l.tokens[i].column, "expected ';'");
            continue;
          }
          periods.push_back(parse_vec(l, l.tokens[i], dim));
        }
        if (l.tokens.size() == 3 || (l.tokens.size() - 3) % 2 == 0)
          fail_at(l.number, l.tokens.back().column, "expected a period vector");
      }
      for (auto x : offset)
        if (x < 0) fail_at(l.number, l.tokens[1].column, "offsets must be nonnegative");
      parts.emplace_back(std::move(offset), std::move(periods));
    }
    close();
    return ExplicitSemilinear(dim, std::move(parts));
  }
  if (kind.text == "constraint") {
    std::size_t dim = dim_arg();
    std::vector<Conjunction> dnf;
    while (!in.at("end")) {
      const Line& l = in.expect("clause", 1);
      if (l.tokens[1].text == "true") {
        if (l.tokens.size() > 2) fail_at(l.number, l.tokens[2].column, "unexpected text after 'true'");
        dnf.emplace_back();
      } else {
        dnf.push_back(parse_atoms(l, 1, dim));
      }
    }
    close();
    return ConstraintSet(dim, std::move(dnf));
  }
  if (kind.text == "closure") {
    EpsilonClosureSet k;
    for (std::size_t i = 2; i < head.tokens.size(); ++i) {
      if (head.tokens[i].text == "counts-letters") k.counts_letters = true;
      else if (head.tokens[i].text == "empty-word") k.empty_word = true;
      else fail_at(head.number, head.tokens[i].column, "unknown closure flag '" + head.tokens[i].text + "'");
    }
    while (in.at("cycle")) {
      const Line& l = in.expect("cycle", 1, 1);
      k.cycle_images.push_back(parse_vec(l, l.tokens[1], std::nullopt));
    }
    k.base = std::make_shared<const SemilinearSet>(read_set(in));
    for (const auto& c : k.cycle_images)
      if (c.size() != k.base->dimension())
        fail_at(head.number, head.tokens[1].column, "cycle image dimension differs from the base set");
    close();
    return SemilinearSet(std::move(k));
  }
  if (kind.text == "product") {
    ProductSet p;
    while (!in.at("end")) p.factors.push_back(read_set(in));
    close();
    if (p.factors.empty()) fail_at(head.number, kind.column, "product needs a factor");
    return SemilinearSet(std::move(p));
  }
  if (kind.text == "union") {
    UnionSet u;
    u.dim = dim_arg();
    while (!in.at("end")) {
      std::size_t line = in.peek().number;
      u.members.push_back(read_set(in));
      if (u.members.back().dimension() != u.dim) fail_at(line, 1, "member dimension differs from the union");
    }
    close();
    return SemilinearSet(std::move(u));
  }
  fail_at(head.number, kind.column, "unknown set kind '" + kind.text + "'");
}

void write_set(std::ostream& out, const SemilinearSet& s, const std::string& pad) {
  std::string inner = pad + "  ";
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ExplicitSemilinear>) {
          out << pad << "set explicit " << node.dimension() << '\n';
          for (const auto& part : node.parts()) {
            out << inner << "linear " << vec_text(part.offset());
            for (std::size_t i = 0; i < part.periods().size(); ++i)
              out << (i == 0 ? " : " : " ; ") << vec_text(part.periods()[i]);
            out << '\n';
          }
        } else if constexpr (std::is_same_v<T, ConstraintSet>) {
          out << pad << "set constraint " << node.dimension() << '\n';
          for (const auto& c : node.dnf()) out << inner << "clause " << (c.empty() ? "true" : atoms_text(c)) << '\n';
        } else if constexpr (std::is_same_v<T, EpsilonClosureSet>) {
          out << pad << "set closure" << (node.counts_letters ? " counts-letters" : "")
              << (node.empty_word ? " empty-word" : "") << '\n';
          for (const auto& c : node.cycle_images) out << inner << "cycle " << vec_text(c) << '\n';
          write_set(out, *node.base, inner);
        } else if constexpr (std::is_same_v<T, ProductSet>) {
          out << pad << "set product\n";
          for (const auto& f : node.factors) write_set(out, f, inner);
        } else {
          out << pad << "set union " << node.dim << '\n';
          for (const auto& m : node.members) write_set(out, m, inner);
        }
      },
      s.node());
  out << pad << "end\n";
}

// ---- automata -------------------------------------------------------------

struct Header {
  std::size_t dim = 0;
  std::map<std::string, std::size_t> letters, states;
  std::vector<std::string> letter_names, state_names;
  StateId initial = 0;
  std::vector<bool> accepting;
};

Header read_header(Reader& in) {
  Header h;
  const Line& al = in.expect("alphabet", 1);
  h.letters = name_index(al, 1, "letter");
  for (std::size_t i = 1; i < al.tokens.size(); ++i) h.letter_names.push_back(al.tokens[i].text);
  const Line& dl = in.expect("dimension", 1, 1);
  h.dim = parse_count(dl, dl.tokens[1]);
  if (h.dim == 0) fail_at(dl.number, dl.tokens[1].column, "dimension must be positive");
  const Line& sl = in.expect("states", 1);
  h.states = name_index(sl, 1, "state");
  for (std::size_t i = 1; i < sl.tokens.size(); ++i) h.state_names.push_back(sl.tokens[i].text);
  const Line& il = in.expect("initial", 1, 1);
  h.initial = static_cast<StateId>(lookup(h.states, il, il.tokens[1], "state"));
  const Line& fl = in.expect("accepting");
  h.accepting.assign(h.state_names.size(), false);
  for (std::size_t i = 1; i < fl.tokens.size(); ++i) h.accepting[lookup(h.states, fl, fl.tokens[i], "state")] = true;
  return h;
}

PositionalTable read_resolver(Reader& in, const Header& h, const std::vector<Transition>& ts) {
  const Line& head = in.expect("resolver", 1, 1);
  if (head.tokens[1].text != "positional")
    fail_at(head.number, head.tokens[1].column, "only positional resolvers can be stored");
  PositionalTable table;
  if (in.at("fallback")) {
    const Line& l = in.expect("fallback", 1, 1);
    if (l.tokens[1].text == "first") table.fallback_first = true;
    else if (l.tokens[1].text == "none") table.fallback_first = false;
    else fail_at(l.number, l.tokens[1].column, "expected 'first' or 'none'");
  }
  while (!in.at("end")) {
    const Line& l = in.expect("rule", 3);
    PositionalRule rule;
    rule.state = static_cast<StateId>(lookup(h.states, l, l.tokens[1], "state"));
    rule.letter = static_cast<Letter>(lookup(h.letters, l, l.tokens[2], "letter"));
    rule.transition = parse_count(l, l.tokens[3]);
    if (rule.transition >= ts.size()) fail_at(l.number, l.tokens[3].column, "no transition with this index");
    const auto& t = ts[rule.transition];
    if (t.from != rule.state || t.letter != rule.letter)
      fail_at(l.number, l.tokens[3].column, "transition does not leave this state on this letter");
    if (l.tokens.size() > 4) {
      if (l.tokens[4].text != "when") fail_at(l.number, l.tokens[4].column, "expected 'when'");
      rule.guard = parse_atoms(l, 5, h.dim);
    }
    table.rules.push_back(std::move(rule));
  }
  in.expect("end", 0, 0);
  return table;
}

AutomatonDocument parse_line_document(const std::string& text) {
  Reader in(tokenize(text));
  const Line& first = in.next();
  const auto& kind = first.tokens[0];
  bool epsilon = kind.text == kEpsilonHeader;
  if (!epsilon && kind.text != kPaHeader)
    fail_at(first.number, kind.column, "expected '" + std::string(kPaHeader) + " 1'");
  if (first.tokens.size() != 2 || first.tokens[1].text != "1")
    fail_at(first.number, kind.column + kind.text.size() + 1, "unsupported format version");
  Header h = read_header(in);
  std::vector<Transition> ts;
  while (in.at("transition")) {
    const Line& l = in.expect("transition", 4, 4);
    Transition t;
    t.from = static_cast<StateId>(lookup(h.states, l, l.tokens[1], "state"));
    if (l.tokens[2].text == kEpsilonToken) {
      if (!epsilon) fail_at(l.number, l.tokens[2].column, "epsilon transition in a '" + std::string(kPaHeader) + "' document");
      t.letter = kEpsilon;
    } else {
      t.letter = static_cast<Letter>(lookup(h.letters, l, l.tokens[2], "letter"));
    }
    t.vec = parse_vec(l, l.tokens[3], std::nullopt);
    if (t.vec.size() != h.dim)
      fail_at(l.number, l.tokens[3].column,
              "transition " + std::to_string(ts.size()) + " has a vector of dimension " + std::to_string(t.vec.size()) +
                  ", expected " + std::to_string(h.dim));
    for (auto x : t.vec)
      if (x < 0) fail_at(l.number, l.tokens[3].column, "transition vectors must be nonnegative");
    t.to = static_cast<StateId>(lookup(h.states, l, l.tokens[4], "state"));
    ts.push_back(std::move(t));
  }
  std::size_t set_line = in.done() ? 0 : in.peek().number;
  SemilinearSet c = read_set(in);
  if (c.dimension() != h.dim)
    fail_at(set_line, 1, "acceptance set has dimension " + std::to_string(c.dimension()) + ", expected " + std::to_string(h.dim));
  std::optional<PositionalTable> table;
  if (in.at("resolver")) {
    if (epsilon) fail_at(in.peek().number, 1, "resolvers apply to epsilon-free automata only");
    table = read_resolver(in, h, ts);
  }
  if (!in.done()) fail_at(in.peek().number, 1, "unexpected '" + in.peek().tokens[0].text + "'");
  Alphabet sigma(h.letter_names);
  if (epsilon)
    return {EpsilonPA(sigma, h.dim, h.state_names, h.initial, h.accepting, std::move(ts), std::move(c)), std::nullopt};
  return {ParikhAutomaton(sigma, h.dim, h.state_names, h.initial, h.accepting, std::move(ts), std::move(c)),
          std::move(table)};
}

std::string write_document(const AutomatonBase& a, bool epsilon, const PositionalTable* table) {
  std::ostringstream out;
  out << (epsilon ? kEpsilonHeader : kPaHeader) << " 1\n";
  out << "alphabet";
  for (const auto& n : a.alphabet().names()) out << ' ' << n;
  out << "\ndimension " << a.dimension() << "\nstates";
  for (const auto& n : a.state_names()) out << ' ' << n;
  out << "\ninitial " << a.state_name(a.initial()) << "\naccepting";
  for (StateId q = 0; q < a.num_states(); ++q)
    if (a.is_accepting(q)) out << ' ' << a.state_name(q);
  out << '\n';
  for (const auto& t : a.transitions())
    out << "transition " << a.state_name(t.from) << ' '
        << (t.is_epsilon() ? std::string(kEpsilonToken) : a.alphabet().name(t.letter)) << ' ' << vec_text(t.vec)
        << ' ' << a.state_name(t.to) << '\n';
  write_set(out, a.acceptance(), "");
  if (table) {
    out << "resolver positional\n  fallback " << (table->fallback_first ? "first" : "none") << '\n';
    for (const auto& r : table->rules) {
      out << "  rule " << a.state_name(r.state) << ' ' << a.alphabet().name(r.letter) << ' ' << r.transition;
      if (!r.guard.empty()) out << " when " << atoms_text(r.guard);
      out << '\n';
    }
    out << "end\n";
  }
  return out.str();
}

// ---- JSON -----------------------------------------------------------------

[[noreturn]] void fail_json(const std::string& what) { fail(ErrorKind::InvalidInput, "json: " + what); }

Vec json_vec(const json& j) {
  if (!j.is_array()) fail_json("expected an array of integers");
  Vec v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) fail_json("expected an integer");
    v.push_back(x.get<std::int64_t>());
  }
  return v;
}

json atoms_json(const Conjunction& atoms) {
  json out = json::array();
  for (const auto& a : atoms) {
    if (const auto* lin = std::get_if<LinearAtom>(&a))
      out.push_back({{"lin", lin->coeffs}, {"rel", rel_token(lin->rel)}, {"rhs", lin->rhs}});
    else {
      const auto& m = std::get<CongruenceAtom>(a);
      out.push_back({{"mod", m.coeffs}, {"modulus", m.modulus}, {"residue", m.residue}});
    }
  }
  return out;
}

Conjunction json_atoms(const json& j) {
  if (!j.is_array()) fail_json("expected an array of atoms");
  Conjunction atoms;
  for (const auto& a : j) {
    if (a.contains("lin")) {
      auto rel = parse_rel(a.at("rel").get<std::string>());
      if (!rel) fail_json("unknown relation '" + a.at("rel").get<std::string>() + "'");
      atoms.push_back(LinearAtom{json_vec(a.at("lin")), *rel, a.at("rhs").get<std::int64_t>()});
    } else if (a.contains("mod")) {
      atoms.push_back(CongruenceAtom{json_vec(a.at("mod")), a.at("modulus").get<std::int64_t>(),
                                     a.at("residue").get<std::int64_t>()});
    } else {
      fail_json("atom needs 'lin' or 'mod'");
    }
  }
  return atoms;
}

json set_json(const SemilinearSet& s) {
  return std::visit(
      [](const auto& node) -> json {
        using T = std::decay_t<decltype(node)>;
        json j;
        if constexpr (std::is_same_v<T, ExplicitSemilinear>) {
          j["kind"] = "explicit";
          j["dimension"] = node.dimension();
          j["parts"] = json::array();
          for (const auto& p : node.parts()) j["parts"].push_back({{"offset", p.offset()}, {"periods", p.periods()}});
        } else if constexpr (std::is_same_v<T, ConstraintSet>) {
          j["kind"] = "constraint";
          j["dimension"] = node.dimension();
          j["clauses"] = json::array();
          for (const auto& c : node.dnf()) j["clauses"].push_back(atoms_json(c));
        } else if constexpr (std::is_same_v<T, EpsilonClosureSet>) {
          j["kind"] = "closure";
          j["counts_letters"] = node.counts_letters;
          j["empty_word"] = node.empty_word;
          j["cycles"] = node.cycle_images;
          j["base"] = set_json(*node.base);
        } else if constexpr (std::is_same_v<T, ProductSet>) {
          j["kind"] = "product";
          j["factors"] = json::array();
          for (const auto& f : node.factors) j["factors"].push_back(set_json(f));
        } else {
          j["kind"] = "union";
          j["dimension"] = node.dim;
          j["members"] = json::array();
          for (const auto& m : node.members) j["members"].push_back(set_json(m));
        }
        return j;
      },
      s.node());
}

SemilinearSet json_set(const json& j) {
  auto kind = j.at("kind").get<std::string>();
  if (kind == "explicit") {
    std::vector<LinearSet> parts;
    for (const auto& p : j.at("parts")) {
      std::vector<Vec> periods;
      for (const auto& q : p.at("periods")) periods.push_back(json_vec(q));
      parts.emplace_back(json_vec(p.at("offset")), std::move(periods));
    }
    return ExplicitSemilinear(j.at("dimension").get<std::size_t>(), std::move(parts));
  }
  if (kind == "constraint") {
    std::vector<Conjunction> dnf;
    for (const auto& c : j.at("clauses")) dnf.push_back(json_atoms(c));
    return ConstraintSet(j.at("dimension").get<std::size_t>(), std::move(dnf));
  }
  if (kind == "closure") {
    EpsilonClosureSet k;
    k.counts_letters = j.at("counts_letters").get<bool>();
    k.empty_word = j.at("empty_word").get<bool>();
    for (const auto& c : j.at("cycles")) k.cycle_images.push_back(json_vec(c));
    k.base = std::make_shared<const SemilinearSet>(json_set(j.at("base")));
    return SemilinearSet(std::move(k));
  }
  if (kind == "product") {
    ProductSet p;
    for (const auto& f : j.at("factors")) p.factors.push_back(json_set(f));
    return SemilinearSet(std::move(p));
  }
  if (kind == "union") {
    UnionSet u;
    u.dim = j.at("dimension").get<std::size_t>();
    for (const auto& m : j.at("members")) u.members.push_back(json_set(m));
    return SemilinearSet(std::move(u));
  }
  fail_json("unknown set kind '" + kind + "'");
}

AutomatonDocument parse_json_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail_json(e.what());
  }
  try {
    auto format = j.at("format").get<std::string>();
    bool epsilon = format == kEpsilonHeader;
    if (!epsilon && format != kPaHeader) fail_json("unknown format '" + format + "'");
    if (j.at("version").get<int>() != 1) fail_json("unsupported version");
    auto letters = j.at("alphabet").get<std::vector<std::string>>();
    auto states = j.at("states").get<std::vector<std::string>>();
    Alphabet sigma(letters);
    auto state_of = [&](const json& name) {
      auto s = name.get<std::string>();
      auto it = std::find(states.begin(), states.end(), s);
      if (it == states.end()) fail_json("unknown state '" + s + "'");
      return static_cast<StateId>(it - states.begin());
    };
    std::vector<bool> accepting(states.size(), false);
    for (const auto& q : j.at("accepting")) accepting[state_of(q)] = true;
    std::vector<Transition> ts;
    for (const auto& t : j.at("transitions")) {
      auto letter = t.at("letter").get<std::string>();
      Letter a = letter == kEpsilonToken ? kEpsilon : sigma.at(letter);
      if (a == kEpsilon && !epsilon) fail_json("epsilon transition in a non-epsilon document");
      ts.push_back(Transition{state_of(t.at("from")), a, json_vec(t.at("vector")), state_of(t.at("to"))});
    }
    auto dim = j.at("dimension").get<std::size_t>();
    auto c = json_set(j.at("set"));
    StateId initial = state_of(j.at("initial"));
    if (epsilon) return {EpsilonPA(sigma, dim, states, initial, accepting, std::move(ts), std::move(c)), std::nullopt};
    std::optional<PositionalTable> table;
    if (j.contains("resolver")) {
      PositionalTable tab;
      const auto& r = j.at("resolver");
      tab.fallback_first = r.at("fallback").get<std::string>() == "first";
      for (const auto& rule : r.at("rules"))
        tab.rules.push_back(PositionalRule{state_of(rule.at("state")), sigma.at(rule.at("letter").get<std::string>()),
                                           json_atoms(rule.at("when")), rule.at("transition").get<std::size_t>()});
      table = std::move(tab);
    }
    return {ParikhAutomaton(sigma, dim, states, initial, accepting, std::move(ts), std::move(c)), std::move(table)};
  } catch (const json::exception& e) {
    fail_json(e.what());
  }
}

}  // namespace

const AutomatonBase& AutomatonDocument::base() const {
  return std::visit([](const auto& a) -> const AutomatonBase& { return a; }, automaton);
}

const ParikhAutomaton& AutomatonDocument::pa() const {
  if (is_epsilon()) fail(ErrorKind::InvalidInput, "expected an automaton without epsilon transitions");
  return std::get<ParikhAutomaton>(automaton);
}

AutomatonDocument parse_document(const std::string& text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) fail(ErrorKind::InvalidInput, "empty document");
  if (text[first] == '{') return parse_json_document(text);
  return parse_line_document(text);
}

std::string serialize(const AutomatonDocument& doc) {
  if (doc.is_epsilon()) return serialize(std::get<EpsilonPA>(doc.automaton));
  return serialize(std::get<ParikhAutomaton>(doc.automaton), doc.resolver ? &*doc.resolver : nullptr);
}

std::string serialize(const ParikhAutomaton& a, const PositionalTable* table) { return write_document(a, false, table); }

std::string serialize(const EpsilonPA& a) { return write_document(a, true, nullptr); }

std::string serialize_json(const AutomatonDocument& doc) {
  const auto& a = doc.base();
  json j;
  j["format"] = doc.is_epsilon() ? kEpsilonHeader : kPaHeader;
  j["version"] = 1;
  j["alphabet"] = a.alphabet().names();
  j["dimension"] = a.dimension();
  j["states"] = a.state_names();
  j["initial"] = a.state_name(a.initial());
  j["accepting"] = json::array();
  for (StateId q = 0; q < a.num_states(); ++q)
    if (a.is_accepting(q)) j["accepting"].push_back(a.state_name(q));
  j["transitions"] = json::array();
  for (const auto& t : a.transitions())
    j["transitions"].push_back({{"from", a.state_name(t.from)},
                                {"letter", t.is_epsilon() ? std::string(kEpsilonToken) : a.alphabet().name(t.letter)},
                                {"vector", t.vec},
                                {"to", a.state_name(t.to)}});
  j["set"] = set_json(a.acceptance());
  if (doc.resolver) {
    json rules = json::array();
    for (const auto& r : doc.resolver->rules)
      rules.push_back({{"state", a.state_name(r.state)},
                       {"letter", a.alphabet().name(r.letter)},
                       {"transition", r.transition},
                       {"when", atoms_json(r.guard)}});
    j["resolver"] = {{"fallback", doc.resolver->fallback_first ? "first" : "none"}, {"rules", rules}};
  }
  return j.dump(2) + "\n";
}

SemilinearSet parse_set(const std::string& text) {
  Reader in(tokenize(text));
  auto s = read_set(in);
  if (!in.done()) fail_at(in.peek().number, 1, "unexpected text after the set");
  return s;
}

std::string serialize_set(const SemilinearSet& s) {
  std::ostringstream out;
  write_set(out, s, "");
  return out.str();
}

CounterMachine parse_machine(const std::string& text) {
  Reader in(tokenize(text));
  const Line& first = in.next();
  if (first.tokens[0].text != kMachineHeader || first.tokens.size() != 2 || first.tokens[1].text != "1")
    fail_at(first.number, 1, "expected '" + std::string(kMachineHeader) + " 1'");
  const Line& cl = in.expect("counters", 1, 1);
  std::size_t k = parse_count(cl, cl.tokens[1]);
  const Line& al = in.expect("alphabet", 1);
  auto letters = name_index(al, 1, "letter");
  std::vector<std::string> letter_names;
  for (std::size_t i = 1; i < al.tokens.size(); ++i) {
    if (al.tokens[i].text == "^" || al.tokens[i].text == "$")
      fail_at(al.number, al.tokens[i].column, "endmarkers cannot be letters");
    letter_names.push_back(al.tokens[i].text);
  }
  const Line& sl = in.expect("states", 1);
  auto states = name_index(sl, 1, "state");
  std::vector<std::string> state_names;
  for (std::size_t i = 1; i < sl.tokens.size(); ++i) state_names.push_back(sl.tokens[i].text);
  const Line& il = in.expect("initial", 1, 1);
  auto initial = static_cast<StateId>(lookup(states, il, il.tokens[1], "state"));
  const Line& fl = in.expect("accepting");
  std::vector<bool> accepting(state_names.size(), false);
  for (std::size_t i = 1; i < fl.tokens.size(); ++i) accepting[lookup(states, fl, fl.tokens[i], "state")] = true;
  std::optional<std::size_t> bound;
  if (in.at("reversal-bound")) {
    const Line& l = in.expect("reversal-bound", 1, 1);
    bound = parse_count(l, l.tokens[1]);
  }
  std::vector<MachineTransition> ts;
  while (!in.done()) {
    const Line& l = in.expect("transition", 6, 6);
    MachineTransition t;
    t.from = static_cast<StateId>(lookup(states, l, l.tokens[1], "state"));
    const auto& sym = l.tokens[2];
    t.symbol = sym.text == "^" ? kLeftEnd : sym.text == "$" ? kRightEnd : static_cast<Symbol>(lookup(letters, l, sym, "letter"));
    for (auto g : parse_vec(l, l.tokens[3], k)) {
      if (g != 0 && g != 1) fail_at(l.number, l.tokens[3].column, "guard entries must be 0 or 1");
      t.guard.push_back(static_cast<std::uint8_t>(g));
    }
    t.to = static_cast<StateId>(lookup(states, l, l.tokens[4], "state"));
    auto move = parse_int(l, l.tokens[5], l.tokens[5].text);
    if (move < -1 || move > 1) fail_at(l.number, l.tokens[5].column, "move must be -1, 0 or +1");
    t.move = static_cast<int>(move);
    for (auto u : parse_vec(l, l.tokens[6], k)) {
      if (u < -1 || u > 1) fail_at(l.number, l.tokens[6].column, "updates must be -1, 0 or 1");
      t.update.push_back(static_cast<int>(u));
    }
    ts.push_back(std::move(t));
  }
  try {
    return CounterMachine(k, Alphabet(letter_names), state_names, initial, accepting, std::move(ts), bound);
  } catch (const Error& e) {
    fail(ErrorKind::InvalidInput, std::string("invalid machine: ") + e.what());
  }
}

std::string serialize_machine(const CounterMachine& m) {
  std::ostringstream out;
  out << kMachineHeader << " 1\ncounters " << m.counters() << "\nalphabet";
  for (const auto& n : m.alphabet().names()) out << ' ' << n;
  out << "\nstates";
  for (const auto& n : m.state_names()) out << ' ' << n;
  out << "\ninitial " << m.state_name(m.initial()) << "\naccepting";
  for (StateId q = 0; q < m.num_states(); ++q)
    if (m.is_accepting(q)) out << ' ' << m.state_name(q);
  out << '\n';
  if (m.reversal_bound()) out << "reversal-bound " << *m.reversal_bound() << '\n';
  for (const auto& t : m.transitions()) {
    Vec guard(t.guard.begin(), t.guard.end());
    Vec update(t.update.begin(), t.update.end());
    out << "transition " << m.state_name(t.from) << ' ' << m.symbol_name(t.symbol) << ' ' << vec_text(guard) << ' '
        << m.state_name(t.to) << ' ' << (t.move > 0 ? "+1" : std::to_string(t.move)) << ' ' << vec_text(update) << '\n';
  }
  return out.str();
}

}  // namespace parikh
