#include "parikh/minsky.hpp"

#include <algorithm>
#include <sstream>

namespace parikh {

MinskyMachine::MinskyMachine(std::vector<Instruction> lines) : lines_(std::move(lines)) {
  if (lines_.empty()) fail(ErrorKind::InvalidInput, "program has no lines");
  for (std::size_t l = 0; l < lines_.size(); ++l) {
    const auto& in = lines_[l];
    auto where = "line " + std::to_string(l);
    bool last = l + 1 == lines_.size();
    if ((in.op == Opcode::Stop) != last) fail(ErrorKind::InvalidInput, where + ": STOP must be the last line, exactly once");
    if (in.op == Opcode::Stop) continue;
    if (in.counter != 0 && in.counter != 1) fail(ErrorKind::InvalidInput, where + ": counter must be 0 or 1");
    if (in.op == Opcode::Ite && (in.if_zero >= lines_.size() || in.if_nonzero >= lines_.size()))
      fail(ErrorKind::InvalidInput, where + ": goto target out of range");
  }
}

bool MinskyMachine::guarded() const {
  auto is_guard_of = [&](std::size_t g, std::size_t l) {
    const auto& in = lines_[g];
    return g + 1 == l && in.op == Opcode::Ite && in.counter == lines_[l].counter && in.if_zero == l + 1 &&
           in.if_nonzero == l;
  };
  for (std::size_t l = 0; l < lines_.size(); ++l) {
    if (lines_[l].op != Opcode::Dec) continue;
    if (l == 0 || !is_guard_of(l - 1, l)) return false;
  }
  for (std::size_t g = 0; g < lines_.size(); ++g) {
    const auto& in = lines_[g];
    if (in.op != Opcode::Ite) continue;
    if (lines_[in.if_zero].op == Opcode::Dec) return false;
    if (lines_[in.if_nonzero].op == Opcode::Dec && !is_guard_of(g, in.if_nonzero)) return false;
  }
  return true;
}

Alphabet MinskyMachine::line_alphabet() const {
  std::vector<std::string> names;
  for (std::size_t l = 0; l < lines_.size(); ++l) names.push_back(std::to_string(l));
  return Alphabet(std::move(names));
}

MinskyMachine guard_decrements(const MinskyMachine& m) {
  const auto& in = m.lines();
  std::size_t k = in.size();
  auto has_guard = [&](std::size_t l) {
    return l > 0 && in[l - 1].op == Opcode::Ite && in[l - 1].counter == in[l].counter &&
           in[l - 1].if_zero == l + 1 && in[l - 1].if_nonzero == l;
  };
  // New position of every old line, and of the guard in front of a decrement.
  std::vector<std::size_t> pos(k), guard(k, SIZE_MAX);
  std::vector<bool> insert(k, false);
  std::size_t next = 0;
  for (std::size_t l = 0; l < k; ++l) {
    if (in[l].op == Opcode::Dec && !has_guard(l)) {
      insert[l] = true;
      guard[l] = next++;
    } else if (in[l].op == Opcode::Dec) {
      guard[l] = next - 1;
    }
    pos[l] = next++;
  }
  auto target = [&](std::size_t t, std::size_t from) {
    bool own_guard = in[t].op == Opcode::Dec && !insert[t] && from + 1 == t;
    if (in[t].op == Opcode::Dec && !own_guard) return guard[t];
    return pos[t];
  };
  std::vector<Instruction> out;
  for (std::size_t l = 0; l < k; ++l) {
    if (insert[l]) out.push_back({Opcode::Ite, in[l].counter, pos[l] + 1, pos[l]});
    Instruction copy = in[l];
    if (copy.op == Opcode::Ite) {
      copy.if_zero = target(copy.if_zero, l);
      copy.if_nonzero = target(copy.if_nonzero, l);
    }
    out.push_back(copy);
  }
  return MinskyMachine(std::move(out));
}

Word MinskyRun::projection() const {
  Word w;
  for (const auto& c : configs) w.push_back(static_cast<Letter>(c.line));
  return w;
}

MinskyConfig minsky_step(const MinskyMachine& m, const MinskyConfig& c) {
  const auto& in = m.line(c.line);
  MinskyConfig next = c;
  auto& counter = in.counter == 0 ? next.c0 : next.c1;
  switch (in.op) {
    case Opcode::Inc:
      ++counter;
      ++next.line;
      break;
    case Opcode::Dec:
      counter = std::max<std::int64_t>(counter - 1, 0);
      ++next.line;
      break;
    case Opcode::Ite:
      next.line = counter == 0 ? in.if_zero : in.if_nonzero;
      break;
    case Opcode::Stop:
      fail(ErrorKind::Precondition, "STOP has no successor");
  }
  return next;
}

MinskyRun minsky_run(const MinskyMachine& m, std::size_t max_steps) {
  MinskyRun run;
  run.configs.push_back({});
  for (std::size_t i = 0; i < max_steps && run.configs.back().line != m.stop_line(); ++i)
    run.configs.push_back(minsky_step(m, run.configs.back()));
  run.terminated = run.configs.back().line == m.stop_line();
  return run;
}

bool has_error_at(const MinskyMachine& m, const Word& w, std::size_t n) {
  if (n + 1 >= w.size()) fail(ErrorKind::InvalidInput, "error position out of range");
  for (auto l : w)
    if (l >= m.size()) fail(ErrorKind::InvalidInput, "letter is not a line number");
  if (w[n] == m.stop_line()) return true;
  const auto& in = m.line(w[n]);
  if (in.op == Opcode::Inc || in.op == Opcode::Dec) return w[n + 1] != w[n] + 1;
  std::int64_t incs = 0, decs = 0;
  for (std::size_t j = 0; j <= n; ++j) {
    const auto& x = m.line(w[j]);
    if (x.counter != in.counter) continue;
    if (x.op == Opcode::Inc) ++incs;
    if (x.op == Opcode::Dec) ++decs;
  }
  return w[n + 1] != (incs == decs ? in.if_zero : in.if_nonzero);
}

namespace {

std::size_t parse_number(const std::string& token, std::size_t line_no) {
  if (token.empty() || !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; }))
    fail(ErrorKind::InvalidInput, "line " + std::to_string(line_no) + ": expected a number, got '" + token + "'");
  return std::stoull(token);
}

}  // namespace

MinskyMachine parse_minsky(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::vector<Instruction> lines;
  for (std::size_t line_no = 1; std::getline(in, raw); ++line_no) {
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream tokens(raw);
    std::vector<std::string> t;
    for (std::string s; tokens >> s;) t.push_back(s);
    if (t.empty()) continue;
    auto where = "line " + std::to_string(line_no);
    if (t[0].back() != ':') fail(ErrorKind::InvalidInput, where + ": expected 'label:'");
    std::size_t label = parse_number(t[0].substr(0, t[0].size() - 1), line_no);
    if (label != lines.size())
      fail(ErrorKind::InvalidInput, where + ": expected label " + std::to_string(lines.size()));
    Instruction ins;
    if (t.size() == 2 && t[1] == "STOP") {
      ins.op = Opcode::Stop;
    } else if (t.size() == 3 && (t[1] == "INC" || t[1] == "DEC")) {
      ins.op = t[1] == "INC" ? Opcode::Inc : Opcode::Dec;
      ins.counter = static_cast<int>(parse_number(t[2], line_no));
    } else if (t.size() == 7 && t[1] == "IF" && t[3] == "ZERO" && t[5] == "ELSE") {
      ins.op = Opcode::Ite;
      ins.counter = static_cast<int>(parse_number(t[2], line_no));
      ins.if_zero = parse_number(t[4], line_no);
      ins.if_nonzero = parse_number(t[6], line_no);
    } else {
      fail(ErrorKind::InvalidInput, where + ": unrecognised instruction");
    }
    if (ins.op != Opcode::Stop && ins.counter > 1)
      fail(ErrorKind::InvalidInput, where + ": counter must be 0 or 1");
    lines.push_back(ins);
  }
  return MinskyMachine(std::move(lines));
}

std::string format_minsky(const MinskyMachine& m) {
  std::ostringstream out;
  for (std::size_t l = 0; l < m.size(); ++l) {
    const auto& in = m.line(l);
    out << l << ": ";
    switch (in.op) {
      case Opcode::Inc: out << "INC " << in.counter; break;
      case Opcode::Dec: out << "DEC " << in.counter; break;
      case Opcode::Ite: out << "IF " << in.counter << " ZERO " << in.if_zero << " ELSE " << in.if_nonzero; break;
      case Opcode::Stop: out << "STOP"; break;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace parikh
