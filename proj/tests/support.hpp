#pragma once

// Seeded generators and independent oracles shared by the test suites.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "corank/freegroup.hpp"
#include "corank/homology.hpp"

namespace support {

using corank::freegroup::Block;
using corank::freegroup::Word;

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// Raw letter sequence, not reduced, exponents +-1 or small powers.
inline std::vector<Block> random_letters(Rng& rng, int rank, std::size_t max_len, std::int64_t max_exp = 1) {
  const auto len = static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(max_len)));
  std::vector<Block> out;
  for (std::size_t i = 0; i < len; ++i) {
    std::int64_t e = uniform(rng, 1, max_exp);
    if (uniform(rng, 0, 1) == 0) e = -e;
    out.push_back({static_cast<int>(uniform(rng, 0, rank - 1)), e});
  }
  return out;
}

inline Word random_word(Rng& rng, int rank, std::size_t max_len, std::int64_t max_exp = 1) {
  const auto letters = random_letters(rng, rank, max_len, max_exp);
  return Word::reduce(rank, letters);
}

/// Permutations of {0..n-1}; composition p*q means apply q first.
using Perm = std::vector<int>;

inline Perm identity_perm(int n) {
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline Perm random_perm(Rng& rng, int n) {
  Perm p = identity_perm(n);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline Perm perm_mul(const Perm& p, const Perm& q) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[static_cast<std::size_t>(q[i])];
  return r;
}

inline Perm perm_inv(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return r;
}

/// Evaluates a letter sequence, not necessarily reduced, in Sym(n).
inline Perm evaluate(const std::vector<Block>& letters, const std::vector<Perm>& gens) {
  Perm acc = identity_perm(static_cast<int>(gens.front().size()));
  for (const auto& b : letters) {
    const Perm& g = gens[static_cast<std::size_t>(b.generator)];
    const Perm gi = perm_inv(g);
    const std::int64_t reps = b.exponent < 0 ? -b.exponent : b.exponent;
    for (std::int64_t i = 0; i < reps; ++i) acc = perm_mul(acc, b.exponent > 0 ? g : gi);
  }
  return acc;
}

inline Perm evaluate(const Word& w, const std::vector<Perm>& gens) { return evaluate(w.blocks(), gens); }

inline std::vector<int> cycle_type(const Perm& p) {
  std::vector<int> out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Letter-by-letter expansion, used by oracles that must not trust blocks.
inline std::vector<std::pair<int, int>> letters_of(const Word& w) {
  std::vector<std::pair<int, int>> out;
  for (const auto& b : w.blocks()) {
    const int s = b.exponent > 0 ? 1 : -1;
    for (std::int64_t i = 0; i < (b.exponent > 0 ? b.exponent : -b.exponent); ++i) out.emplace_back(b.generator, s);
  }
  return out;
}

/// Naive stack reduction over single letters.
inline std::vector<std::pair<int, int>> naive_reduce(const std::vector<Block>& letters) {
  std::vector<std::pair<int, int>> st;
  for (const auto& b : letters) {
    const int s = b.exponent > 0 ? 1 : -1;
    for (std::int64_t i = 0; i < (b.exponent > 0 ? b.exponent : -b.exponent); ++i) {
      if (!st.empty() && st.back().first == b.generator && st.back().second == -s) {
        st.pop_back();
      } else {
        st.emplace_back(b.generator, s);
      }
    }
  }
  return st;
}

/// Integer symplectic matrix as a product of random elementary transvections.
inline corank::homology::IntegerMatrix random_symplectic(Rng& rng, int genus, int steps) {
  using corank::homology::IntVector;
  auto m = corank::homology::IntegerMatrix::identity(static_cast<std::size_t>(2 * genus));
  for (int s = 0; s < steps; ++s) {
    IntVector v(static_cast<std::size_t>(2 * genus), 0);
    for (auto& x : v) x = uniform(rng, -1, 1);
    m = corank::homology::transvection(v).matrix * m;
  }
  return m;
}

}  // namespace support
