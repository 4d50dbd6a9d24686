#pragma once

// Word algebra in finitely generated free groups.
//
// Words are kept in run-length form: a sequence of (generator, exponent)
// blocks with nonzero exponents and no two adjacent blocks on the same
// generator. The empty block sequence is the identity.

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "corank/errors.hpp"

namespace corank::freegroup {

using corank::ParseError;

struct Block {
  int generator = 0;
  std::int64_t exponent = 0;

  friend bool operator==(const Block&, const Block&) = default;
  friend auto operator<=>(const Block&, const Block&) = default;
};

class Word {
 public:
  Word() = default;
  explicit Word(int rank);

  /// Freely reduces an arbitrary letter sequence. Exponents of zero are
  /// allowed in the input and dropped.
  static Word reduce(int rank, std::span<const Block> letters);
  static Word generator(int rank, int index, std::int64_t exponent = 1);

  int rank() const { return rank_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  bool is_identity() const { return blocks_.empty(); }
  /// Number of letters, i.e. the sum of absolute exponents.
  std::int64_t length() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  int rank_ = 0;
  std::vector<Block> blocks_;
};

Word reduce(int rank, std::span<const Block> letters);
Word multiply(const Word& u, const Word& v);
Word invert(const Word& u);
/// g u g^-1
Word conjugate(const Word& u, const Word& g);
Word power(const Word& u, std::int64_t n);
/// [u, v] = u v u^-1 v^-1
Word commutator(const Word& u, const Word& v);

/// Strips the longest prefix/suffix pair that cancels cyclically.
Word cyclic_reduce(const Word& u);
bool is_cyclically_reduced(const Word& u);

std::vector<std::int64_t> exponent_sums(const Word& w);

// Text syntax: letters a..z name generators 0..25, an uppercase letter is
// the inverse generator, `^n` attaches an integer exponent to the preceding
// letter, whitespace separates blocks. `1` spells the identity.
Word parse_word(std::string_view text, int rank);
/// As above, with single-character generator names looked up in `names`.
Word parse_word(std::string_view text, std::span<const std::string> names);
std::string format_word(const Word& w);
std::string format_word(const Word& w, std::span<const std::string> names);

class GroupHom {
 public:
  GroupHom() = default;
  GroupHom(int domain_rank, int codomain_rank, std::vector<Word> images);

  static GroupHom identity(int rank);

  int domain_rank() const { return domain_rank_; }
  int codomain_rank() const { return codomain_rank_; }
  const std::vector<Word>& images() const { return images_; }
  const Word& image(int generator) const { return images_.at(static_cast<std::size_t>(generator)); }

  friend bool operator==(const GroupHom&, const GroupHom&) = default;

 private:
  int domain_rank_ = 0;
  int codomain_rank_ = 0;
  std::vector<Word> images_;
};

Word apply_hom(const GroupHom& h, const Word& w);
/// h1 after h2.
GroupHom compose(const GroupHom& h1, const GroupHom& h2);
GroupHom hom_power(const GroupHom& h, std::int64_t n);

/// Rank of an index-`index` subgroup of a free group of rank `rank`.
std::int64_t nielsen_schreier_rank(std::int64_t rank, std::int64_t index);

}  // namespace corank::freegroup
