#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "parikh/automaton.hpp"
#include "parikh/resolver.hpp"

namespace parikh {

struct CorpusEntry {
  std::string name;
  std::string description;
  ParikhAutomaton automaton;
  std::optional<Resolver> resolver;
  /// Membership decided by direct arithmetic on the letters.
  std::function<bool(std::string_view)> reference;
};

/// Names: ex1, nonDyck, D, Eprime, Nprime, E. Throws InvalidInput otherwise.
CorpusEntry corpus_get(const std::string& name);
std::vector<std::string> corpus_names();

/// Throws InvalidInput on a letter outside the entry's alphabet.
bool reference_member(const CorpusEntry& entry, const Word& w);

// Reference predicates over the letter characters.
bool ref_ex1(std::string_view w);     // a^n b^n or a^n b^2n
bool ref_non_dyck(std::string_view w);  // some prefix has fewer 0s than 1s
bool ref_d(std::string_view w);       // blocks c^n0 d ... c^nk d, n0 = 1, some n_{j+1} != 2 n_j
bool ref_e_prime(std::string_view w);   // c^m {a,b}^(m-1) b a^n b^n, m, n > 0
bool ref_n_prime(std::string_view w);   // c^n w, |w| >= n, w's first n letters non-Dyck
bool ref_e(std::string_view w);       // {a,b}* a^n b^n, n > 0

}  // namespace parikh
