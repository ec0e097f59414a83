#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "parikh/automaton.hpp"

namespace parikh {

enum class Opcode { Inc, Dec, Ite, Stop };

struct Instruction {
  Opcode op = Opcode::Stop;
  int counter = 0;
  std::size_t if_zero = 0;   // Ite only
  std::size_t if_nonzero = 0;  // Ite only

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

/// Two-counter program (0: I_0) ... (k-1: STOP). The constructor checks that
/// STOP occurs exactly once, on the last line, and that goto targets and
/// counter indices are in range. Decrements need not be guarded.
class MinskyMachine {
 public:
  explicit MinskyMachine(std::vector<Instruction> lines);

  std::size_t size() const { return lines_.size(); }
  std::size_t stop_line() const { return lines_.size() - 1; }
  const Instruction& line(std::size_t l) const { return lines_.at(l); }
  const std::vector<Instruction>& lines() const { return lines_; }

  /// Every DEC i at line l follows (l-1: IF i ZERO l+1 ELSE l), and no other
  /// goto targets a DEC line.
  bool guarded() const;

  /// Letters "0" .. "k-1".
  Alphabet line_alphabet() const;

  friend bool operator==(const MinskyMachine&, const MinskyMachine&) = default;

 private:
  std::vector<Instruction> lines_;
};

/// Inserts the missing guard before every unguarded decrement and retargets
/// gotos that point at a decrement to its guard.
MinskyMachine guard_decrements(const MinskyMachine& m);

struct MinskyConfig {
  std::size_t line = 0;
  std::int64_t c0 = 0;
  std::int64_t c1 = 0;

  friend bool operator==(const MinskyConfig&, const MinskyConfig&) = default;
};

struct MinskyRun {
  bool terminated = false;
  /// Configurations visited, starting with (0, 0, 0).
  std::vector<MinskyConfig> configs;

  /// Line numbers of the visited configurations.
  Word projection() const;
};

MinskyConfig minsky_step(const MinskyMachine& m, const MinskyConfig& c);
/// Runs for at most max_steps steps.
MinskyRun minsky_run(const MinskyMachine& m, std::size_t max_steps);

/// Error of the line word w at position n (n < |w| - 1), evaluated from the
/// increment and decrement occurrences in w_0 .. w_n.
bool has_error_at(const MinskyMachine& m, const Word& w, std::size_t n);

/// Program text, one `l: INC i`, `l: DEC i`, `l: IF i ZERO l' ELSE l''` or
/// `l: STOP` per line. Blank lines and `#` comments are skipped.
MinskyMachine parse_minsky(const std::string& text);
std::string format_minsky(const MinskyMachine& m);

}  // namespace parikh
