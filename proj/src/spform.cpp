#include "corank/spform.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "corank/data.hpp"
#include "corank/errors.hpp"

namespace corank::spform {

namespace {

void check_genus(int genus) {
  if (genus < 1 || genus > kMaxGenus) {
    throw std::invalid_argument("genus must lie in 1.." + std::to_string(kMaxGenus));
  }
}

void check_same_genus(int g1, int g2) {
  if (g1 != g2) throw std::invalid_argument("genus mismatch: " + std::to_string(g1) + " vs " + std::to_string(g2));
}

}  // namespace

// --- classes -----------------------------------------------------------------

Mod2Class Mod2Class::basis(int genus, int index) {
  check_genus(genus);
  if (index < 0 || index >= 2 * genus) throw std::out_of_range("basis index out of range");
  return {genus, 1U << index};
}

Mod2Class Mod2Class::parse(std::string_view text, int genus) {
  check_genus(genus);
  Mod2Class out{genus, 0};
  std::size_t i = 0;
  bool expect_term = true;
  bool saw_term = false;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '+') {
      if (expect_term) throw ParseError("dangling '+' in class '" + std::string(text) + "'");
      expect_term = true;
      ++i;
      continue;
    }
    if (!expect_term) throw ParseError("missing '+' in class '" + std::string(text) + "'");
    if (c == '0') {
      ++i;
      expect_term = false;
      saw_term = true;
      continue;
    }
    if (c != 'a' && c != 'b') throw ParseError("unexpected character in class '" + std::string(text) + "'");
    ++i;
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) throw ParseError("missing index in class '" + std::string(text) + "'");
    const int idx = std::stoi(std::string(text.substr(start, i - start)));
    if (idx < 1 || idx > genus) throw ParseError("handle index out of range in class '" + std::string(text) + "'");
    out.bits ^= 1U << (2 * (idx - 1) + (c == 'b' ? 1 : 0));
    expect_term = false;
    saw_term = true;
  }
  if (!saw_term || expect_term) throw ParseError("empty or incomplete class '" + std::string(text) + "'");
  return out;
}

Mod2Class Mod2Class::from_bit_string(std::string_view bits) {
  if (bits.empty() || bits.size() % 2 != 0) throw ParseError("class bit string must have even nonzero length");
  Mod2Class out{static_cast<int>(bits.size() / 2), 0};
  check_genus(out.genus);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      out.bits |= 1U << i;
    } else if (bits[i] != '0') {
      throw ParseError("class bit string must contain only 0 and 1");
    }
  }
  return out;
}

std::string Mod2Class::bit_string() const {
  std::string s;
  for (int i = 0; i < 2 * genus; ++i) s.push_back(bit(i) ? '1' : '0');
  return s;
}

std::string Mod2Class::to_string() const {
  if (bits == 0) return "0";
  std::string s;
  for (int i = 0; i < 2 * genus; ++i) {
    if (!bit(i)) continue;
    if (!s.empty()) s += '+';
    s += (i % 2 == 0 ? 'a' : 'b');
    s += std::to_string(i / 2 + 1);
  }
  return s;
}

Mod2Class Mod2Class::operator+(const Mod2Class& o) const {
  check_same_genus(genus, o.genus);
  return {genus, bits ^ o.bits};
}

int dot(const Mod2Class& u, const Mod2Class& v) {
  check_same_genus(u.genus, v.genus);
  constexpr std::uint32_t even = 0x55555555U;
  constexpr std::uint32_t odd = 0xaaaaaaaaU;
  const std::uint32_t swapped = ((v.bits & even) << 1) | ((v.bits & odd) >> 1);
  return std::popcount(u.bits & swapped) & 1;
}

// --- forms -------------------------------------------------------------------

int evaluate_form_in_order(const SpForm& form, const Mod2Class& v, const std::vector<int>& order) {
  check_same_genus(form.genus, v.genus);
  Mod2Class acc{v.genus, 0};
  int value = 0;  // w(0) = 0
  for (int i : order) {
    if (!v.bit(i) || acc.bit(i)) continue;
    const Mod2Class e = Mod2Class::basis(v.genus, i);
    // w(acc + e) = w(acc) + w(e) + acc.e
    value ^= static_cast<int>((form.basis_values >> i) & 1U) ^ dot(acc, e);
    acc = acc + e;
  }
  if (acc != v) throw std::invalid_argument("fold order does not cover the class");
  return value;
}

int evaluate_form(const SpForm& form, const Mod2Class& v) {
  std::vector<int> order;
  for (int i = 0; i < 2 * v.genus; ++i)
    if (v.bit(i)) order.push_back(i);
  return evaluate_form_in_order(form, v, order);
}

int arf(const SpForm& form) {
  int acc = 0;
  for (int i = 0; i < form.genus; ++i) {
    acc ^= static_cast<int>((form.basis_values >> (2 * i)) & (form.basis_values >> (2 * i + 1)) & 1U);
  }
  return acc;
}

PsiTable::PsiTable(int genus) : genus_(genus) {
  check_genus(genus);
  const int n = 2 * genus;
  const std::uint32_t count = 1U << n;
  for (std::uint32_t code = 0; code < count; ++code) {
    // The first basis vector is the most significant character of the label.
    std::uint32_t values = 0;
    for (int i = 0; i < n; ++i)
      if ((code >> (n - 1 - i)) & 1U) values |= 1U << i;
    const SpForm f{genus, values};
    if (arf(f) == 0) forms_.push_back(f);
  }
}

std::string PsiTable::label(std::size_t i) const {
  std::string s;
  for (int k = 0; k < 2 * genus_; ++k) s.push_back(((forms_.at(i).basis_values >> k) & 1U) ? '1' : '0');
  return s;
}

PsiTable enumerate_psi(int genus) { return PsiTable(genus); }

std::size_t expected_psi_size(int genus) {
  check_genus(genus);
  return (std::size_t{1} << (2 * genus - 1)) + (std::size_t{1} << (genus - 1));
}

// --- functions on Psi --------------------------------------------------------

bool BooleanFunction::is_constant(int bit) const {
  return std::all_of(table_.begin(), table_.end(), [bit](std::uint8_t v) { return v == bit; });
}

std::string BooleanFunction::bit_string() const {
  std::string s;
  s.reserve(table_.size());
  for (auto v : table_) s.push_back(v ? '1' : '0');
  return s;
}

BooleanFunction BooleanFunction::from_bit_string(std::string_view bits) {
  std::vector<std::uint8_t> t;
  t.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw ParseError("truth table must contain only 0 and 1");
    t.push_back(c == '1');
  }
  return BooleanFunction(std::move(t));
}

BooleanFunction bar(const Mod2Class& v, const PsiTable& psi) {
  check_same_genus(v.genus, psi.genus());
  std::vector<std::uint8_t> t(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) t[i] = static_cast<std::uint8_t>(evaluate_form(psi[i], v));
  return BooleanFunction(std::move(t));
}

namespace {

template <typename Op>
BooleanFunction pointwise(const BooleanFunction& f, const BooleanFunction& g, Op op) {
  if (f.size() != g.size()) throw std::invalid_argument("truth table length mismatch");
  std::vector<std::uint8_t> t(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) t[i] = static_cast<std::uint8_t>(op(f[i], g[i]));
  return BooleanFunction(std::move(t));
}

}  // namespace

BooleanFunction fn_add(const BooleanFunction& f, const BooleanFunction& g) {
  return pointwise(f, g, [](int x, int y) { return x ^ y; });
}

BooleanFunction fn_mul(const BooleanFunction& f, const BooleanFunction& g) {
  return pointwise(f, g, [](int x, int y) { return x & y; });
}

BooleanFunction fn_const(int bit, const PsiTable& psi) {
  return BooleanFunction(std::vector<std::uint8_t>(psi.size(), static_cast<std::uint8_t>(bit & 1)));
}

// --- sigma -------------------------------------------------------------------

void SeparatingTwistSpec::validate() const {
  check_same_genus(a.genus, b.genus);
  if (dot(a, b) != 1) {
    throw std::invalid_argument("separating twist spec needs a.b = 1, got (" + a.to_string() + ", " + b.to_string() + ")");
  }
}

BooleanFunction sigma_separating(const SeparatingTwistSpec& spec, const PsiTable& psi) {
  spec.validate();
  return fn_mul(bar(spec.a, psi), bar(spec.b, psi));
}

BooleanFunction sigma_twist_word(const SeparatingTwistWord& word, const PsiTable& psi) {
  BooleanFunction acc = fn_const(0, psi);
  for (const auto& f : word) {
    const BooleanFunction s = sigma_separating(f.spec, psi);
    if (f.exponent % 2 != 0) acc = fn_add(acc, s);
  }
  return acc;
}

NonExtensionCertificate certify_non_extension(const SeparatingTwistWord& word, const PsiTable& psi) {
  NonExtensionCertificate cert;
  cert.genus = psi.genus();
  cert.word = word;
  cert.sigma = sigma_twist_word(word, psi);
  cert.verdict = cert.sigma.size() > 0 && cert.sigma.is_constant(1);
  return cert;
}

SeparatingTwistWord word_power(const SeparatingTwistWord& word, std::int64_t n) {
  SeparatingTwistWord base = word;
  if (n < 0) {
    std::reverse(base.begin(), base.end());
    for (auto& f : base) f.exponent = -f.exponent;
    n = -n;
  }
  SeparatingTwistWord out;
  out.reserve(base.size() * static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) out.insert(out.end(), base.begin(), base.end());
  return out;
}

NonExtensionCertificate odd_power_certificate(const NonExtensionCertificate& cert, std::int64_t n) {
  if (n % 2 == 0) throw std::invalid_argument("odd_power_certificate needs an odd exponent");
  if (!cert.verdict) throw std::invalid_argument("odd_power_certificate needs a certificate with verdict true");
  const PsiTable psi(cert.genus);
  NonExtensionCertificate out = certify_non_extension(word_power(cert.word, n), psi);
  if (out.sigma != cert.sigma) throw std::logic_error("odd power changed sigma");
  return out;
}

// --- polynomial parser -------------------------------------------------------

namespace {

class PolynomialParser {
 public:
  PolynomialParser(std::string_view text, const PsiTable& psi) : text_(text), psi_(psi) {}

  BooleanFunction parse() {
    BooleanFunction sum = fn_const(0, psi_);
    bool any = false;
    for (;;) {
      skip_space();
      sum = fn_add(sum, parse_term());
      any = true;
      skip_space();
      if (pos_ == text_.size()) break;
      if (text_[pos_] != '+') fail("expected '+'");
      ++pos_;
    }
    if (!any) fail("empty polynomial");
    return sum;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("sigma polynomial: " + what + " at byte " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  // Combining macron U+0304.
  bool eat_macron() {
    if (at("\xCC\x84")) {
      pos_ += 2;
      return true;
    }
    return false;
  }

  int parse_index() {
    if (pos_ < text_.size() && text_[pos_] == '_') ++pos_;
    std::string digits;
    for (;;) {
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        digits.push_back(text_[pos_++]);
      } else if (pos_ + 2 < text_.size() && at("\xE2\x82") &&
                 static_cast<unsigned char>(text_[pos_ + 2]) >= 0x80 && static_cast<unsigned char>(text_[pos_ + 2]) <= 0x89) {
        // Subscript digits U+2080..U+2089.
        digits.push_back(static_cast<char>('0' + (static_cast<unsigned char>(text_[pos_ + 2]) - 0x80)));
        pos_ += 3;
      } else {
        break;
      }
    }
    if (digits.empty()) fail("missing handle index");
    return std::stoi(digits);
  }

  BooleanFunction parse_factor() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '1') {
      ++pos_;
      return fn_const(1, psi_);
    }
    if (c == '0') {
      ++pos_;
      return fn_const(0, psi_);
    }
    char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (at("\xC4\x81") || at("\xC4\x80")) {
      // Precomposed a-bar, U+0101 or U+0100.
      lower = 'a';
      pos_ += 2;
    } else if (lower == 'a' || lower == 'b') {
      ++pos_;
    } else {
      fail("expected a-bar, b-bar or 1");
    }
    eat_macron();
    const int idx = parse_index();
    eat_macron();
    if (idx < 1 || idx > psi_.genus()) fail("handle index out of range");
    const Mod2Class v = Mod2Class::basis(psi_.genus(), 2 * (idx - 1) + (lower == 'b' ? 1 : 0));
    return bar(v, psi_);
  }

  BooleanFunction parse_term() {
    BooleanFunction prod = parse_factor();
    for (;;) {
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] == '+') return prod;
      if (text_[pos_] == '*' || text_[pos_] == '.') ++pos_;
      prod = fn_mul(prod, parse_factor());
    }
  }

  std::string_view text_;
  const PsiTable& psi_;
  std::size_t pos_ = 0;
};

}  // namespace

BooleanFunction parse_sigma_polynomial(std::string_view text, const PsiTable& psi) {
  return PolynomialParser(text, psi).parse();
}

// --- catalog and word files -------------------------------------------------

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

std::int64_t parse_exponent(const std::string& t) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(t, &used);
  } catch (const std::exception&) {
    throw ParseError("bad exponent '" + t + "'");
  }
  if (used != t.size()) throw ParseError("bad exponent '" + t + "'");
  return v;
}

}  // namespace

std::vector<NamedTwistSpec> parse_gamma_catalog(std::string_view text, int genus) {
  std::vector<NamedTwistSpec> out;
  for (const auto& line : content_lines(std::string(text))) {
    const auto t = tokens(line);
    if (t.size() != 3) throw ParseError("catalog line needs name and two classes: '" + line + "'");
    SeparatingTwistSpec spec{Mod2Class::parse(t[1], genus), Mod2Class::parse(t[2], genus)};
    if (dot(spec.a, spec.b) != 1) throw ParseError("catalog pair has a.b = 0: '" + line + "'");
    out.push_back({t[0], spec});
  }
  return out;
}

std::vector<NamedTwistSpec> gamma_catalog() { return parse_gamma_catalog(read_data_file("gamma_catalog.txt"), 2); }

SeparatingTwistWord parse_separating_word(std::string_view text, int genus, const std::vector<NamedTwistSpec>& catalog) {
  SeparatingTwistWord out;
  for (const auto& line : content_lines(std::string(text))) {
    const auto t = tokens(line);
    const NamedTwistSpec* named = nullptr;
    for (const auto& c : catalog)
      if (!t.empty() && c.name == t[0]) named = &c;
    if (named != nullptr) {
      if (t.size() > 2) throw ParseError("too many fields in '" + line + "'");
      if (named->spec.genus() != genus) throw ParseError("catalog entry has the wrong genus");
      out.push_back({named->spec, t.size() == 2 ? parse_exponent(t[1]) : 1});
      continue;
    }
    if (t.size() < 2 || t.size() > 3) throw ParseError("twist line needs two classes and an optional exponent: '" + line + "'");
    SeparatingTwistSpec spec{Mod2Class::parse(t[0], genus), Mod2Class::parse(t[1], genus)};
    if (dot(spec.a, spec.b) != 1) throw ParseError("twist pair has a.b = 0: '" + line + "'");
    out.push_back({spec, t.size() == 3 ? parse_exponent(t[2]) : 1});
  }
  return out;
}

std::string format_separating_word(const SeparatingTwistWord& word) {
  std::string s;
  for (const auto& f : word) {
    s += f.spec.a.to_string() + " " + f.spec.b.to_string() + " " + std::to_string(f.exponent) + "\n";
  }
  return s;
}

// --- span of separating-twist images ----------------------------------------

SpanResult constant_one_in_product_span(int genus, const std::vector<SeparatingTwistSpec>& preferred) {
  const PsiTable psi(genus);
  const std::size_t n = psi.size();
  const std::size_t words = (n + 63) / 64;
  using Bits = std::vector<std::uint64_t>;

  auto pack = [&](const BooleanFunction& f) {
    Bits b(words, 0);
    for (std::size_t i = 0; i < n; ++i)
      if (f[i]) b[i / 64] |= std::uint64_t{1} << (i % 64);
    return b;
  };
  auto lowest = [&](const Bits& b) -> std::optional<std::size_t> {
    for (std::size_t w = 0; w < words; ++w)
      if (b[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(b[w]));
    return std::nullopt;
  };

  struct Row {
    Bits bits;
    std::size_t pivot;
    std::vector<bool> combo;  // over basis indices
  };
  std::vector<Row> rows;
  SpanResult out;

  auto reduce = [&](Bits& v, std::vector<bool>& combo) {
    for (const auto& r : rows) {
      if ((v[r.pivot / 64] >> (r.pivot % 64)) & 1U) {
        for (std::size_t w = 0; w < words; ++w) v[w] ^= r.bits[w];
        for (std::size_t k = 0; k < r.combo.size(); ++k)
          if (r.combo[k]) combo[k] = !combo[k];
      }
    }
  };

  auto offer = [&](const SeparatingTwistSpec& spec) {
    if (rows.size() == n) return;
    Bits v = pack(sigma_separating(spec, psi));
    std::vector<bool> combo(n, false);
    reduce(v, combo);
    const auto p = lowest(v);
    if (!p) return;
    combo[out.basis.size()] = true;
    out.basis.push_back(spec);
    rows.push_back({std::move(v), *p, std::move(combo)});
  };

  for (const auto& s : preferred) {
    if (s.genus() != genus) throw std::invalid_argument("preferred pair has the wrong genus");
    offer(s);
  }
  const std::uint32_t count = 1U << (2 * genus);
  for (std::uint32_t x = 1; x < count && rows.size() < n; ++x)
    for (std::uint32_t y = 1; y < count && rows.size() < n; ++y) {
      const SeparatingTwistSpec s{{genus, x}, {genus, y}};
      if (dot(s.a, s.b) == 1) offer(s);
    }

  out.dimension = rows.size();
  Bits one = pack(fn_const(1, psi));
  std::vector<bool> combo(n, false);
  reduce(one, combo);
  out.member = !lowest(one).has_value();
  if (out.member) {
    for (std::size_t k = 0; k < out.basis.size(); ++k)
      if (combo[k]) out.witness.push_back(out.basis[k]);
  }
  return out;
}

}  // namespace corank::spform
