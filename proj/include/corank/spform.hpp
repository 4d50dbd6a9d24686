#pragma once

// Symplectic quadratic forms on H1(S_g; Z/2), the Arf invariant, the set Psi
// of Arf-zero forms, Z/2-valued functions on Psi, and the Birman-Craggs
// invariant of words in separating twists.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace corank::spform {

inline constexpr int kMaxGenus = 8;

/// Class in H1(S_g; Z/2). Bit i is the coefficient of basis vector i in the
/// order a1, b1, a2, b2, ...
struct Mod2Class {
  int genus = 0;
  std::uint32_t bits = 0;

  static Mod2Class basis(int genus, int index);
  /// Parses "a1+b1+a2" style sums; "0" is the zero class.
  static Mod2Class parse(std::string_view text, int genus);
  /// Bit string in basis order, e.g. "1010".
  static Mod2Class from_bit_string(std::string_view bits);

  bool is_zero() const { return bits == 0; }
  bool bit(int index) const { return (bits >> index) & 1U; }
  std::string bit_string() const;
  std::string to_string() const;
  Mod2Class operator+(const Mod2Class& o) const;

  friend bool operator==(const Mod2Class&, const Mod2Class&) = default;
};

/// Mod-2 intersection number.
int dot(const Mod2Class& u, const Mod2Class& v);

struct SpForm {
  int genus = 0;
  std::uint32_t basis_values = 0;  // bit i = value on basis vector i

  friend bool operator==(const SpForm&, const SpForm&) = default;
};

int evaluate_form(const SpForm& form, const Mod2Class& v);
/// Same value computed by folding the set bits in the given order.
int evaluate_form_in_order(const SpForm& form, const Mod2Class& v, const std::vector<int>& order);
int arf(const SpForm& form);

class PsiTable {
 public:
  explicit PsiTable(int genus);

  int genus() const { return genus_; }
  std::size_t size() const { return forms_.size(); }
  const std::vector<SpForm>& forms() const { return forms_; }
  const SpForm& operator[](std::size_t i) const { return forms_[i]; }
  /// Value string "w(a1)w(b1)..." that orders the table.
  std::string label(std::size_t i) const;

 private:
  int genus_;
  std::vector<SpForm> forms_;
};

/// Psi ordering tag recorded in certificates.
inline constexpr const char* kPsiOrderingTag = "lex-basis-values-v1";

PsiTable enumerate_psi(int genus);
/// 2^(2g-1) + 2^(g-1)
std::size_t expected_psi_size(int genus);

class BooleanFunction {
 public:
  BooleanFunction() = default;
  explicit BooleanFunction(std::vector<std::uint8_t> table) : table_(std::move(table)) {}

  std::size_t size() const { return table_.size(); }
  int operator[](std::size_t i) const { return table_[i]; }
  const std::vector<std::uint8_t>& table() const { return table_; }
  bool is_constant(int bit) const;
  std::string bit_string() const;
  static BooleanFunction from_bit_string(std::string_view bits);

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

 private:
  std::vector<std::uint8_t> table_;
};

BooleanFunction bar(const Mod2Class& v, const PsiTable& psi);
BooleanFunction fn_add(const BooleanFunction& f, const BooleanFunction& g);
BooleanFunction fn_mul(const BooleanFunction& f, const BooleanFunction& g);
BooleanFunction fn_const(int bit, const PsiTable& psi);

/// Pair (a, b) with a.b = 1 naming the separating curve bounding a
/// neighbourhood of transverse curves representing a and b.
struct SeparatingTwistSpec {
  Mod2Class a;
  Mod2Class b;

  void validate() const;
  int genus() const { return a.genus; }

  friend bool operator==(const SeparatingTwistSpec&, const SeparatingTwistSpec&) = default;
};

struct TwistFactor {
  SeparatingTwistSpec spec;
  std::int64_t exponent = 1;

  friend bool operator==(const TwistFactor&, const TwistFactor&) = default;
};

using SeparatingTwistWord = std::vector<TwistFactor>;

BooleanFunction sigma_separating(const SeparatingTwistSpec& spec, const PsiTable& psi);
BooleanFunction sigma_twist_word(const SeparatingTwistWord& word, const PsiTable& psi);

struct NonExtensionCertificate {
  int genus = 0;
  SeparatingTwistWord word;
  BooleanFunction sigma;
  bool verdict = false;  // sigma is constant 1
};

NonExtensionCertificate certify_non_extension(const SeparatingTwistWord& word, const PsiTable& psi);
/// Certificate for the n-th power of the certified word; n must be odd.
NonExtensionCertificate odd_power_certificate(const NonExtensionCertificate& cert, std::int64_t n);
SeparatingTwistWord word_power(const SeparatingTwistWord& word, std::int64_t n);

/// Catalog lines read "name a-class b-class", e.g. "gamma4 b1 a1+a2".
struct NamedTwistSpec {
  std::string name;
  SeparatingTwistSpec spec;
};
std::vector<NamedTwistSpec> parse_gamma_catalog(std::string_view text, int genus);
/// The ten genus-2 pairs bundled as gamma_catalog.txt.
std::vector<NamedTwistSpec> gamma_catalog();

/// One factor per line: "a-class b-class [exponent]", or a catalog name with
/// an optional exponent ("gamma3 -1") when `catalog` is given.
SeparatingTwistWord parse_separating_word(std::string_view text, int genus,
                                          const std::vector<NamedTwistSpec>& catalog = {});
std::string format_separating_word(const SeparatingTwistWord& word);

/// Parses a polynomial in a-bar_i, b-bar_i, products by juxtaposition, `+`,
/// and the literal 1. Accepts the combining macron form ("ā₁b̄₁ + ā₁ā₂") as
/// well as ASCII "A1B1 + A1A2" where capitals stand for barred classes.
BooleanFunction parse_sigma_polynomial(std::string_view text, const PsiTable& psi);

struct SpanResult {
  bool member = false;
  std::size_t dimension = 0;
  /// Pairs whose products are a basis of the span, in discovery order.
  std::vector<SeparatingTwistSpec> basis;
  /// Subset of the basis summing to the constant 1 when member.
  std::vector<SeparatingTwistSpec> witness;
};

/// Decides whether constant 1 lies in the Z/2 span of {bar(a) bar(b) : a.b = 1}.
/// Pairs in `preferred` are tried first, then all pairs in lexicographic order.
SpanResult constant_one_in_product_span(int genus, const std::vector<SeparatingTwistSpec>& preferred = {});

}  // namespace corank::spform
