#include "support/oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

namespace oracle {

using namespace parikh;

bool run_member(const AutomatonBase& a, const Word& w) {
  std::function<bool(StateId, std::size_t, Vec&)> go = [&](StateId q, std::size_t pos, Vec& image) {
    if (pos == w.size()) return a.is_accepting(q) && a.acceptance().contains(image);
    for (const auto& t : a.transitions()) {
      if (t.from != q || t.letter != w[pos]) continue;
      for (std::size_t i = 0; i < image.size(); ++i) image[i] += t.vec[i];
      bool ok = go(t.to, pos + 1, image);
      for (std::size_t i = 0; i < image.size(); ++i) image[i] -= t.vec[i];
      if (ok) return true;
    }
    return false;
  };
  Vec image(a.dimension(), 0);
  return go(a.initial(), 0, image);
}

bool epsilon_member(const EpsilonPA& e, const Word& w, std::int64_t weight) {
  const auto d = static_cast<std::int64_t>(std::max<std::size_t>(e.dimension(), 1));
  const auto limit = static_cast<std::int64_t>(e.num_states()) * (weight * static_cast<std::int64_t>(w.size() + 1) * d + 1);
  // fewest consecutive epsilon steps seen per configuration
  std::map<std::tuple<StateId, std::size_t, Vec>, std::int64_t> seen;
  std::function<bool(StateId, std::size_t, const Vec&, std::int64_t)> go =
      [&](StateId q, std::size_t pos, const Vec& image, std::int64_t eps) {
        auto key = std::make_tuple(q, pos, image);
        auto it = seen.find(key);
        if (it != seen.end() && it->second <= eps) return false;
        seen[key] = eps;
        if (pos == w.size() && e.is_accepting(q) && e.acceptance().contains(image)) return true;
        for (const auto& t : e.transitions()) {
          if (t.from != q) continue;
          if (t.is_epsilon()) {
            if (eps < limit && go(t.to, pos, add(image, t.vec), eps + 1)) return true;
          } else if (pos < w.size() && t.letter == w[pos]) {
            if (go(t.to, pos + 1, add(image, t.vec), 0)) return true;
          }
        }
        return false;
      };
  return go(e.initial(), 0, Vec(e.dimension(), 0), 0);
}

std::vector<bool> length_census(const ParikhAutomaton& a, std::size_t max_len) {
  std::vector<bool> out;
  std::set<std::pair<StateId, Vec>> layer{{a.initial(), Vec(a.dimension(), 0)}};
  for (std::size_t n = 0; n <= max_len; ++n) {
    bool hit = false;
    for (const auto& [q, image] : layer)
      if (a.is_accepting(q) && a.acceptance().contains(image)) {
        hit = true;
        break;
      }
    out.push_back(hit);
    std::set<std::pair<StateId, Vec>> next;
    for (const auto& [q, image] : layer)
      for (const auto& t : a.transitions())
        if (t.from == q) next.emplace(t.to, add(image, t.vec));
    layer = std::move(next);
  }
  return out;
}

std::optional<std::vector<std::int64_t>> solve_by_enumeration(const IntSystem& sys, std::int64_t bound) {
  std::vector<std::int64_t> x(sys.num_vars, 0);
  for (;;) {
    if (sys.satisfied_by(x)) return x;
    std::size_t i = 0;
    while (i < x.size() && x[i] == bound) x[i++] = 0;
    if (i == x.size()) return std::nullopt;
    ++x[i];
  }
}

bool linear_combination_member(const ExplicitSemilinear& s, const Vec& v, std::int64_t coef_bound) {
  for (const auto& part : s.parts()) {
    const auto& periods = part.periods();
    std::vector<std::int64_t> c(periods.size(), 0);
    for (;;) {
      Vec sum = part.offset();
      for (std::size_t i = 0; i < periods.size(); ++i)
        for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += c[i] * periods[i][j];
      if (sum == v) return true;
      std::size_t i = 0;
      while (i < c.size() && c[i] == coef_bound) c[i++] = 0;
      if (i == c.size()) break;
      ++c[i];
    }
  }
  return false;
}

Word word(const Alphabet& sigma, const std::string& text) {
  Word w;
  for (char ch : text) w.push_back(sigma.at(std::string(1, ch)));
  return w;
}

std::string text(const Alphabet& sigma, const Word& w) {
  std::string out;
  for (auto l : w) out += sigma.name(l);
  return out;
}

}  // namespace oracle
