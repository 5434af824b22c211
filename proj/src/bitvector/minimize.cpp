#include "dqmax/bitvector/minimize.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <set>
#include <tuple>

#include "dqmax/error.hpp"

namespace dqmax::bv {
namespace {

constexpr std::size_t kMaxVars = 20;
constexpr std::size_t kPetrickTerms = 200000;

// '0' positive, '1' negative, '2' absent, variable 0 first.
std::string sort_key(const Cube& c, std::size_t h) {
  std::string s(h, '2');
  for (std::size_t j = 0; j < h; ++j)
    if ((c.mask >> j) & 1u) s[j] = ((c.value >> j) & 1u) ? '0' : '1';
  return s;
}

std::vector<Cube> primes_of(std::size_t h, const std::vector<std::uint64_t>& points) {
  const std::uint64_t full = h == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << h) - 1;
  std::set<Cube> level;
  for (auto p : points) level.insert({p, full});
  std::set<Cube> primes;
  while (!level.empty()) {
    std::set<Cube> next;
    std::set<Cube> merged;
    std::map<std::uint64_t, std::vector<Cube>> by_mask;
    for (const Cube& c : level) by_mask[c.mask].push_back(c);
    for (const auto& [mask, cubes] : by_mask) {
      std::set<std::uint64_t> values;
      for (const Cube& c : cubes) values.insert(c.value);
      for (const Cube& c : cubes) {
        for (std::size_t j = 0; j < h; ++j) {
          const std::uint64_t bit = std::uint64_t{1} << j;
          if (!(mask & bit) || (c.value & bit)) continue;
          if (values.count(c.value | bit)) {
            next.insert({c.value, mask & ~bit});
            merged.insert(c);
            merged.insert({c.value | bit, mask});
          }
        }
      }
    }
    for (const Cube& c : level)
      if (!merged.count(c)) primes.insert(c);
    level = std::move(next);
  }
  return {primes.begin(), primes.end()};
}

// Product of sums -> sum of products over prime indices, with absorption.
std::vector<std::vector<int>> petrick(const std::vector<std::vector<int>>& sums) {
  std::vector<std::vector<int>> terms = {{}};
  for (const auto& sum : sums) {
    std::set<std::vector<int>> expanded;
    for (const auto& t : terms) {
      if (std::any_of(sum.begin(), sum.end(),
                      [&](int p) { return std::binary_search(t.begin(), t.end(), p); })) {
        expanded.insert(t);
        continue;
      }
      for (int p : sum) {
        auto u = t;
        u.insert(std::upper_bound(u.begin(), u.end(), p), p);
        expanded.insert(std::move(u));
      }
    }
    std::vector<std::vector<int>> kept;
    std::vector<std::vector<int>> sorted(expanded.begin(), expanded.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    for (const auto& t : sorted) {
      const bool absorbed = std::any_of(kept.begin(), kept.end(), [&](const auto& k) {
        return std::includes(t.begin(), t.end(), k.begin(), k.end());
      });
      if (!absorbed) kept.push_back(t);
    }
    if (kept.size() > kPetrickTerms)
      throw Error(ErrorKind::InstanceTooLarge, "cover selection exceeds the term budget");
    terms = std::move(kept);
  }
  return terms;
}

}  // namespace

std::size_t Cube::literals() const { return static_cast<std::size_t>(std::popcount(mask)); }

std::vector<Cube> minimize(std::size_t h, const std::vector<std::uint64_t>& on,
                           const std::vector<std::uint64_t>& dc) {
  if (h > kMaxVars)
    throw Error(ErrorKind::InstanceTooLarge, "minimization supports at most 20 variables");
  const std::uint64_t limit = std::uint64_t{1} << h;
  for (auto p : on)
    if (p >= limit) throw Error(ErrorKind::PreconditionViolation, "point outside the variable range");
  for (auto p : dc)
    if (p >= limit) throw Error(ErrorKind::PreconditionViolation, "point outside the variable range");
  std::vector<std::uint64_t> on_set(on);
  std::sort(on_set.begin(), on_set.end());
  on_set.erase(std::unique(on_set.begin(), on_set.end()), on_set.end());
  if (on_set.empty()) return {};

  std::vector<std::uint64_t> care(on_set);
  care.insert(care.end(), dc.begin(), dc.end());
  std::sort(care.begin(), care.end());
  care.erase(std::unique(care.begin(), care.end()), care.end());

  std::vector<Cube> primes;
  for (const Cube& c : primes_of(h, care))
    if (std::any_of(on_set.begin(), on_set.end(), [&](auto p) { return c.covers(p); }))
      primes.push_back(c);

  // Essential primes first, Petrick on what they leave uncovered.
  std::vector<int> essential;
  for (auto p : on_set) {
    int only = -1, hits = 0;
    for (std::size_t k = 0; k < primes.size(); ++k)
      if (primes[k].covers(p)) {
        only = static_cast<int>(k);
        ++hits;
      }
    if (hits == 1) essential.push_back(only);
  }
  std::sort(essential.begin(), essential.end());
  essential.erase(std::unique(essential.begin(), essential.end()), essential.end());

  std::vector<std::vector<int>> sums;
  for (auto p : on_set) {
    if (std::any_of(essential.begin(), essential.end(), [&](int k) { return primes[k].covers(p); }))
      continue;
    std::vector<int> sum;
    for (std::size_t k = 0; k < primes.size(); ++k)
      if (primes[k].covers(p)) sum.push_back(static_cast<int>(k));
    sums.push_back(std::move(sum));
  }

  using Rank = std::tuple<std::size_t, std::size_t, std::size_t, std::vector<std::string>>;
  std::optional<Rank> best_rank;
  std::vector<Cube> best;
  for (const auto& term : petrick(sums)) {
    std::vector<int> chosen(essential);
    chosen.insert(chosen.end(), term.begin(), term.end());
    std::vector<Cube> cover;
    std::size_t lits = 0, negs = 0;
    for (int k : chosen) {
      const Cube& c = primes[k];
      cover.push_back(c);
      lits += c.literals();
      negs += static_cast<std::size_t>(std::popcount(c.mask & ~c.value));
    }
    std::sort(cover.begin(), cover.end(),
              [&](const Cube& a, const Cube& b) { return sort_key(a, h) < sort_key(b, h); });
    std::vector<std::string> keys;
    for (const Cube& c : cover) keys.push_back(sort_key(c, h));
    Rank rank{cover.size(), lits, negs, keys};
    if (!best_rank || rank < *best_rank) {
      best_rank = std::move(rank);
      best = std::move(cover);
    }
  }
  return best;
}

bool evaluate(const std::vector<Cube>& sop, std::uint64_t point) {
  return std::any_of(sop.begin(), sop.end(), [&](const Cube& c) { return c.covers(point); });
}

std::string render_sop(const std::vector<Cube>& sop, const std::vector<std::string>& names) {
  if (sop.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < sop.size(); ++k) {
    const Cube& c = sop[k];
    if (c.mask == 0) return "1";
    if (k) out += " | ";
    bool first = true;
    for (std::size_t j = 0; j < names.size(); ++j) {
      if (!((c.mask >> j) & 1u)) continue;
      if (!first) out += " & ";
      first = false;
      if (!((c.value >> j) & 1u)) out += "!";
      out += names[j];
    }
  }
  return out;
}

}  // namespace dqmax::bv
