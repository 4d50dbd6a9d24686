#include "corank/freegroup.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace corank::freegroup {

namespace {

void check_generator(int rank, int generator) {
  if (generator < 0 || generator >= rank) {
    throw std::out_of_range("generator index " + std::to_string(generator) +
                            " out of range for rank " + std::to_string(rank));
  }
}

void check_same_rank(const Word& u, const Word& v) {
  if (u.rank() != v.rank()) {
    throw std::invalid_argument("rank mismatch: " + std::to_string(u.rank()) + " vs " +
                                std::to_string(v.rank()));
  }
}

// Appends one block to a reduced block sequence, cancelling at the seam.
void push_block(std::vector<Block>& out, const Block& b) {
  if (b.exponent == 0) return;
  if (!out.empty() && out.back().generator == b.generator) {
    out.back().exponent += b.exponent;
    if (out.back().exponent == 0) out.pop_back();
  } else {
    out.push_back(b);
  }
}

}  // namespace

Word::Word(int rank) : rank_(rank) {
  if (rank < 0) throw std::invalid_argument("negative rank");
}

Word Word::reduce(int rank, std::span<const Block> letters) {
  Word w(rank);
  for (const auto& b : letters) {
    check_generator(rank, b.generator);
    push_block(w.blocks_, b);
  }
  return w;
}

Word Word::generator(int rank, int index, std::int64_t exponent) {
  const Block b{index, exponent};
  return reduce(rank, std::span<const Block>(&b, 1));
}

std::int64_t Word::length() const {
  std::int64_t n = 0;
  for (const auto& b : blocks_) n += b.exponent < 0 ? -b.exponent : b.exponent;
  return n;
}

Word reduce(int rank, std::span<const Block> letters) { return Word::reduce(rank, letters); }

Word multiply(const Word& u, const Word& v) {
  check_same_rank(u, v);
  std::vector<Block> out = u.blocks();
  for (const auto& b : v.blocks()) push_block(out, b);
  return Word::reduce(u.rank(), out);
}

Word invert(const Word& u) {
  std::vector<Block> out;
  out.reserve(u.blocks().size());
  for (auto it = u.blocks().rbegin(); it != u.blocks().rend(); ++it) {
    out.push_back({it->generator, -it->exponent});
  }
  return Word::reduce(u.rank(), out);
}

Word conjugate(const Word& u, const Word& g) { return multiply(multiply(g, u), invert(g)); }

Word power(const Word& u, std::int64_t n) {
  const Word base = n < 0 ? invert(u) : u;
  const std::int64_t count = n < 0 ? -n : n;
  Word result(u.rank());
  for (std::int64_t i = 0; i < count; ++i) result = multiply(result, base);
  return result;
}

Word commutator(const Word& u, const Word& v) {
  return multiply(multiply(u, v), multiply(invert(u), invert(v)));
}

Word cyclic_reduce(const Word& u) {
  std::vector<Block> b = u.blocks();
  std::size_t lo = 0, hi = b.size();
  while (hi - lo >= 2 && b[lo].generator == b[hi - 1].generator) {
    const std::int64_t merged = b[lo].exponent + b[hi - 1].exponent;
    if (merged == 0) {
      ++lo;
      --hi;
      continue;
    }
    // Fold the tail block into the head block: the rotation keeps the
    // conjugacy class.
    b[lo].exponent = merged;
    --hi;
    break;
  }
  std::vector<Block> core(b.begin() + static_cast<std::ptrdiff_t>(lo),
                          b.begin() + static_cast<std::ptrdiff_t>(hi));
  return Word::reduce(u.rank(), core);
}

bool is_cyclically_reduced(const Word& u) {
  const auto& b = u.blocks();
  return b.size() < 2 || b.front().generator != b.back().generator;
}

std::vector<std::int64_t> exponent_sums(const Word& w) {
  std::vector<std::int64_t> sums(static_cast<std::size_t>(w.rank()), 0);
  for (const auto& b : w.blocks()) sums[static_cast<std::size_t>(b.generator)] += b.exponent;
  return sums;
}

namespace {

Word parse_impl(std::string_view text, int rank, std::span<const std::string> names, bool by_name) {
  auto index_of = [&](char c) -> int {
    const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (!by_name) return lower - 'a';
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i].size() == 1 && names[i][0] == lower) return static_cast<int>(i);
    }
    throw ParseError(std::string("unknown generator '") + c + "'");
  };

  std::vector<Block> letters;
  bool saw_identity = false;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '.') {
      ++i;
      continue;
    }
    if (c == '1') {
      saw_identity = true;
      ++i;
      continue;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      throw ParseError(std::string("unexpected character '") + c + "' in word");
    }
    const int gen = index_of(c);
    if (gen < 0 || gen >= rank) {
      throw ParseError(std::string("generator '") + c + "' outside rank " + std::to_string(rank));
    }
    std::int64_t exponent = std::isupper(static_cast<unsigned char>(c)) ? -1 : 1;
    ++i;
    if (i < text.size() && text[i] == '^') {
      ++i;
      std::size_t start = i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      std::string_view digits = text.substr(start, i - start);
      if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
      std::int64_t e = 0;
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), e);
      if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
        throw ParseError("malformed exponent in word: '" + std::string(text) + "'");
      }
      exponent *= e;
    }
    letters.push_back({gen, exponent});
  }
  if (saw_identity && !letters.empty()) {
    throw ParseError("identity symbol '1' mixed with letters");
  }
  return Word::reduce(rank, letters);
}

}  // namespace

Word parse_word(std::string_view text, int rank) {
  if (rank > 26) throw std::invalid_argument("letter syntax supports at most 26 generators");
  return parse_impl(text, rank, {}, false);
}

Word parse_word(std::string_view text, std::span<const std::string> names) {
  return parse_impl(text, static_cast<int>(names.size()), names, true);
}

std::string format_word(const Word& w) {
  if (w.is_identity()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& b : w.blocks()) {
    if (!first) os << ' ';
    first = false;
    os << static_cast<char>('a' + b.generator);
    if (b.exponent != 1) os << '^' << b.exponent;
  }
  return os.str();
}

std::string format_word(const Word& w, std::span<const std::string> names) {
  if (w.is_identity()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& b : w.blocks()) {
    if (!first) os << ' ';
    first = false;
    os << names[static_cast<std::size_t>(b.generator)];
    if (b.exponent != 1) os << '^' << b.exponent;
  }
  return os.str();
}

GroupHom::GroupHom(int domain_rank, int codomain_rank, std::vector<Word> images)
    : domain_rank_(domain_rank), codomain_rank_(codomain_rank), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != domain_rank_) {
    throw std::invalid_argument("homomorphism needs one image per domain generator");
  }
  for (const auto& w : images_) {
    if (w.rank() != codomain_rank_) throw std::invalid_argument("image word has wrong rank");
  }
}

GroupHom GroupHom::identity(int rank) {
  std::vector<Word> images;
  images.reserve(static_cast<std::size_t>(rank));
  for (int i = 0; i < rank; ++i) images.push_back(Word::generator(rank, i));
  return GroupHom(rank, rank, std::move(images));
}

Word apply_hom(const GroupHom& h, const Word& w) {
  if (w.rank() != h.domain_rank()) throw std::invalid_argument("rank mismatch in apply_hom");
  std::vector<Block> out;
  for (const auto& b : w.blocks()) {
    const Word& img = h.image(b.generator);
    const std::int64_t count = b.exponent < 0 ? -b.exponent : b.exponent;
    for (std::int64_t r = 0; r < count; ++r) {
      if (b.exponent > 0) {
        for (const auto& ib : img.blocks()) push_block(out, ib);
      } else {
        for (auto it = img.blocks().rbegin(); it != img.blocks().rend(); ++it) {
          push_block(out, {it->generator, -it->exponent});
        }
      }
    }
  }
  return Word::reduce(h.codomain_rank(), out);
}

GroupHom compose(const GroupHom& h1, const GroupHom& h2) {
  if (h2.codomain_rank() != h1.domain_rank()) throw std::invalid_argument("rank mismatch in compose");
  std::vector<Word> images;
  images.reserve(h2.images().size());
  for (const auto& w : h2.images()) images.push_back(apply_hom(h1, w));
  return GroupHom(h2.domain_rank(), h1.codomain_rank(), std::move(images));
}

GroupHom hom_power(const GroupHom& h, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("hom_power needs n >= 0");
  if (h.domain_rank() != h.codomain_rank()) throw std::invalid_argument("hom_power needs an endomorphism");
  GroupHom result = GroupHom::identity(h.domain_rank());
  for (std::int64_t i = 0; i < n; ++i) result = compose(h, result);
  return result;
}

std::int64_t nielsen_schreier_rank(std::int64_t rank, std::int64_t index) {
  if (rank < 1 || index < 1) throw std::invalid_argument("Nielsen-Schreier rank needs positive rank and index");
  return 1 + index * (rank - 1);
}

}  // namespace corank::freegroup
