#include "corank/surface.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "corank/data.hpp"
#include "corank/errors.hpp"

namespace corank::surface {

using freegroup::apply_hom;
using freegroup::commutator;
using freegroup::compose;
using freegroup::cyclic_reduce;
using freegroup::exponent_sums;
using freegroup::hom_power;
using freegroup::invert;
using freegroup::multiply;
using freegroup::parse_word;

SurfaceGroup standard_surface_group(int genus) {
  if (genus < 1) throw std::invalid_argument("genus must be at least 1");
  if (2 * genus > 26) throw std::invalid_argument("letter names support genus at most 13");
  SurfaceGroup s;
  s.genus = genus;
  for (int i = 0; i < 2 * genus; ++i) s.names.emplace_back(1, static_cast<char>('a' + i));
  s.relator = Word(2 * genus);
  for (int i = 0; i < genus; ++i) {
    s.relator = multiply(s.relator, commutator(Word::generator(2 * genus, 2 * i), Word::generator(2 * genus, 2 * i + 1)));
  }
  return s;
}

CurveSpec CurveSpec::from_word(std::string name, Word word) {
  CurveSpec c;
  c.name = std::move(name);
  c.homology_class = exponent_sums(word);
  c.word = std::move(word);
  return c;
}

homology::HomologyAction homology_action(const GroupHom& h) {
  const auto n = static_cast<std::size_t>(h.domain_rank());
  homology::IntegerMatrix m(static_cast<std::size_t>(h.codomain_rank()), n);
  for (std::size_t c = 0; c < n; ++c) {
    const auto sums = exponent_sums(h.image(static_cast<int>(c)));
    for (std::size_t r = 0; r < sums.size(); ++r) m.at(r, c) = sums[r];
  }
  return {m};
}

bool is_conjugate_in_free(const Word& u, const Word& v) {
  if (u.rank() != v.rank()) throw std::invalid_argument("rank mismatch");
  const Word cu = cyclic_reduce(u);
  const Word cv = cyclic_reduce(v);
  const auto& bu = cu.blocks();
  const auto& bv = cv.blocks();
  if (bu.size() != bv.size()) return false;
  if (bu.empty()) return true;
  std::vector<freegroup::Block> doubled(bu.begin(), bu.end());
  doubled.insert(doubled.end(), bu.begin(), bu.end());
  return std::search(doubled.begin(), doubled.end(), bv.begin(), bv.end()) != doubled.end();
}

void validate_twist(const TwistAutomorphism& t, const SurfaceGroup& s) {
  const int rank = s.rank();
  auto fail = [&](const std::string& what) { throw std::logic_error("twist '" + t.name + "': " + what); };
  if (t.hom.domain_rank() != rank || t.hom.codomain_rank() != rank || t.inverse.domain_rank() != rank ||
      t.inverse.codomain_rank() != rank) {
    fail("hom ranks do not match the surface");
  }
  if (t.direction != 1 && t.direction != -1) fail("direction must be +1 or -1");
  if (t.curve.homology_class != exponent_sums(t.curve.word)) fail("curve class differs from its exponent sums");
  const Word image = apply_hom(t.hom, s.relator);
  if (!is_conjugate_in_free(image, s.relator) && !is_conjugate_in_free(image, invert(s.relator))) {
    fail("relator is not preserved up to conjugacy");
  }
  const GroupHom id = GroupHom::identity(rank);
  if (compose(t.hom, t.inverse) != id || compose(t.inverse, t.hom) != id) fail("inverse does not invert");
  auto expected = homology::transvection(t.curve.homology_class).matrix;
  if (t.direction == -1) {
    // T = I + N with N^2 = 0, so T^-1 = 2I - T.
    auto two = homology::IntegerMatrix::identity(expected.rows());
    for (std::size_t i = 0; i < two.rows(); ++i) two.at(i, i) = 2;
    expected = two - expected;
  }
  if (homology_action(t.hom).matrix != expected) fail("homology action is not the transvection of the curve class");
}

// --- configuration -----------------------------------------------------------

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int generator_index(const SurfaceGroup& s, const std::string& key) {
  for (std::size_t i = 0; i < s.names.size(); ++i)
    if (s.names[i] == key) return static_cast<int>(i);
  throw ParseError("unknown generator '" + key + "' in curve system");
}

struct PendingTwist {
  std::string name;
  std::string curve;
  int direction = 1;
  std::vector<Word> images;
  std::vector<Word> inverse_images;
};

TwistAutomorphism finish(const PendingTwist& p, const SurfaceGroup& s) {
  if (p.curve.empty()) throw ParseError("twist '" + p.name + "' has no curve");
  TwistAutomorphism t;
  t.name = p.name;
  t.curve = CurveSpec::from_word(p.name, parse_word(p.curve, s.names));
  t.direction = p.direction;
  t.hom = GroupHom(s.rank(), s.rank(), p.images);
  t.inverse = GroupHom(s.rank(), s.rank(), p.inverse_images);
  validate_twist(t, s);
  return t;
}

}  // namespace

TwistTable parse_curve_system(std::string_view text, const SurfaceGroup& s) {
  TwistTable out;
  std::optional<PendingTwist> cur;
  auto flush = [&]() {
    if (!cur) return;
    if (out.count(cur->name) != 0) throw ParseError("duplicate twist '" + cur->name + "'");
    out.emplace(cur->name, finish(*cur, s));
    cur.reset();
  };
  for (const auto& line : content_lines(std::string(text))) {
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) throw ParseError("bad section header '" + line + "'");
      flush();
      cur.emplace();
      cur->name = trim(line.substr(1, line.size() - 2));
      for (int i = 0; i < s.rank(); ++i) {
        cur->images.push_back(Word::generator(s.rank(), i));
        cur->inverse_images.push_back(Word::generator(s.rank(), i));
      }
      continue;
    }
    if (!cur) throw ParseError("entry outside a twist section: '" + line + "'");
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value: '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "curve") {
      cur->curve = value;
    } else if (key == "direction") {
      if (value == "1" || value == "+1") {
        cur->direction = 1;
      } else if (value == "-1") {
        cur->direction = -1;
      } else {
        throw ParseError("direction must be 1 or -1");
      }
    } else if (key.rfind("inverse.", 0) == 0) {
      cur->inverse_images[static_cast<std::size_t>(generator_index(s, key.substr(8)))] = parse_word(value, s.names);
    } else {
      cur->images[static_cast<std::size_t>(generator_index(s, key))] = parse_word(value, s.names);
    }
  }
  flush();
  return out;
}

TwistTable load_curve_system(const std::string& path) {
  return parse_curve_system(read_text_file(path), standard_surface_group(2));
}

TwistTable standard_twists_genus2() { return load_curve_system(data_path("curve_system.txt").string()); }

TwistTable chain_twists(int genus) {
  const SurfaceGroup s = standard_surface_group(genus);
  const int r = s.rank();
  auto gen = [r](int i, std::int64_t e = 1) { return Word::generator(r, i, e); };
  TwistTable out;
  auto add = [&](const std::string& name, const Word& curve, std::vector<Word> images, std::vector<Word> inverse) {
    TwistAutomorphism t;
    t.name = name;
    t.curve = CurveSpec::from_word(name, curve);
    t.hom = GroupHom(r, r, std::move(images));
    t.inverse = GroupHom(r, r, std::move(inverse));
    validate_twist(t, s);
    out.emplace(name, std::move(t));
  };
  auto identity_images = [&]() {
    std::vector<Word> v;
    for (int i = 0; i < r; ++i) v.push_back(gen(i));
    return v;
  };
  for (int h = 0; h < genus; ++h) {
    const int a = 2 * h;
    const int b = 2 * h + 1;
    const std::string idx = std::to_string(h + 1);
    {
      auto img = identity_images();
      auto inv = identity_images();
      img[b] = multiply(gen(b), gen(a, -1));
      inv[b] = multiply(gen(b), gen(a));
      add("a" + idx, gen(a), img, inv);
    }
    {
      auto img = identity_images();
      auto inv = identity_images();
      img[a] = multiply(gen(a), gen(b));
      inv[a] = multiply(gen(a), gen(b, -1));
      add("b" + idx, gen(b), img, inv);
    }
    if (h + 1 < genus) {
      const int c = 2 * h + 2;
      const int d = 2 * h + 3;
      // Curve a_h a_{h+1}. The plain twist b -> A C b, d -> C A d maps the
      // pair relator to its conjugate by u = a c; composing with conjugation
      // by u fixes it exactly.
      const Word u = multiply(gen(a), gen(c));
      const Word ui = invert(u);
      const Word ca = multiply(gen(c), gen(a));
      auto img = identity_images();
      auto inv = identity_images();
      img[a] = multiply(multiply(u, gen(a)), ui);
      img[c] = multiply(multiply(u, gen(c)), ui);
      img[b] = multiply(multiply(u, multiply(invert(ca), gen(b))), ui);
      img[d] = multiply(gen(d), ui);
      inv[a] = multiply(multiply(ui, gen(a)), u);
      inv[c] = multiply(multiply(ui, gen(c)), u);
      inv[b] = multiply(multiply(ui, multiply(ca, gen(b))), u);
      inv[d] = multiply(gen(d), u);
      add("c" + idx, u, img, inv);
    }
  }
  return out;
}

// --- twist words -------------------------------------------------------------

namespace {

class TwistWordParser {
 public:
  explicit TwistWordParser(std::string_view text) : text_(text) {}

  TwistWord parse() {
    TwistWord w = parse_sequence();
    skip();
    if (pos_ != text_.size()) fail("unexpected ')'");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("twist word: " + what + " at byte " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  bool at(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  void skip() {
    for (;;) {
      if (pos_ < text_.size() && (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '*')) {
        ++pos_;
      } else if (at("\xE2\x88\x98")) {  // U+2218 ring operator
        pos_ += 3;
      } else {
        return;
      }
    }
  }

  std::int64_t parse_exponent() {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != '^') return 1;
    ++pos_;
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string_view digits = text_.substr(start, pos_ - start);
    if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
    std::int64_t e = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), e);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) fail("malformed exponent");
    return e;
  }

  std::string parse_name() {
    static const std::pair<std::string_view, std::string_view> greek[] = {
        {"\xCE\xB1", "alpha"}, {"\xCE\xB2", "beta"}, {"\xCE\xB3", "gamma"}, {"\xCE\xB4", "delta"}, {"\xCE\xB5", "epsilon"}};
    for (const auto& [utf8, name] : greek) {
      if (at(utf8)) {
        pos_ += utf8.size();
        return std::string(name);
      }
    }
    std::size_t start = pos_;
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    }
    if (start == pos_) fail("expected a twist name");
    return std::string(text_.substr(start, pos_ - start));
  }

  TwistWord parse_sequence() {
    TwistWord out;
    for (;;) {
      skip();
      if (pos_ >= text_.size() || text_[pos_] == ')') return out;
      if (text_[pos_] == '(') {
        ++pos_;
        TwistWord inner = parse_sequence();
        skip();
        if (pos_ >= text_.size() || text_[pos_] != ')') fail("missing ')'");
        ++pos_;
        std::int64_t e = parse_exponent();
        if (e < 0) {
          std::reverse(inner.begin(), inner.end());
          for (auto& f : inner) f.exponent = -f.exponent;
          e = -e;
        }
        for (std::int64_t i = 0; i < e; ++i) out.insert(out.end(), inner.begin(), inner.end());
      } else {
        std::string name = parse_name();
        const std::int64_t e = parse_exponent();
        if (e != 0) out.push_back({std::move(name), e});
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

TwistWord parse_twist_word(std::string_view text) { return TwistWordParser(text).parse(); }

std::string format_twist_word(const TwistWord& tw) {
  std::string s;
  for (const auto& f : tw) {
    if (!s.empty()) s += ' ';
    s += f.name;
    if (f.exponent != 1) s += "^" + std::to_string(f.exponent);
  }
  return s.empty() ? "1" : s;
}

GroupHom twist_word_hom(const TwistWord& tw, const TwistTable& table, int rank) {
  GroupHom acc = GroupHom::identity(rank);
  for (const auto& f : tw) {
    const auto it = table.find(f.name);
    if (it == table.end()) throw std::out_of_range("unknown twist '" + f.name + "'");
    const TwistAutomorphism& t = it->second;
    if (t.hom.domain_rank() != rank) throw std::invalid_argument("twist '" + f.name + "' has the wrong rank");
    const GroupHom& base = f.exponent > 0 ? t.hom : t.inverse;
    acc = compose(acc, hom_power(base, f.exponent > 0 ? f.exponent : -f.exponent));
  }
  return acc;
}

CurveSpec apply_twist_word(const TwistWord& tw, const CurveSpec& c, const TwistTable& table) {
  const GroupHom h = twist_word_hom(tw, table, c.word.rank());
  return CurveSpec::from_word(c.name, apply_hom(h, c.word));
}

CurveSpec curve_C1() {
  return CurveSpec::from_word("C1", commutator(Word::generator(4, 0), Word::generator(4, 1)));
}

Word load_word_file(const std::string& path, int rank) {
  std::string joined;
  for (const auto& line : content_lines(read_text_file(path))) joined += line + " ";
  if (joined.empty()) throw ParseError("word file " + path + " is empty");
  return parse_word(joined, rank);
}

Word bundled_word_w() { return load_word_file(data_path("paper_w.txt").string(), 4); }

}  // namespace corank::surface
