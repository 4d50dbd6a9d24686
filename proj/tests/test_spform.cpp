#include <doctest.h>

#include <algorithm>

#include "corank/data.hpp"
#include "corank/errors.hpp"
#include "corank/spform.hpp"
#include "support.hpp"

using namespace corank::spform;

namespace {

// Closed form: w(v) = sum v_i w(e_i) + sum_k v(a_k) v(b_k).
int closed_form(const SpForm& f, const Mod2Class& v) {
  int acc = 0;
  for (int i = 0; i < 2 * v.genus; ++i) acc ^= v.bit(i) & static_cast<int>((f.basis_values >> i) & 1U);
  for (int k = 0; k < v.genus; ++k) acc ^= v.bit(2 * k) & v.bit(2 * k + 1);
  return acc;
}

// Arf zero exactly when the form vanishes on 2^(2g-1) + 2^(g-1) classes.
bool arf_zero_by_count(const SpForm& f) {
  std::size_t zeros = 0;
  for (std::uint32_t v = 0; v < (1U << (2 * f.genus)); ++v) zeros += closed_form(f, {f.genus, v}) == 0;
  return zeros == (std::size_t{1} << (2 * f.genus - 1)) + (std::size_t{1} << (f.genus - 1));
}

Mod2Class cls(const char* s, int g = 2) { return Mod2Class::parse(s, g); }

}  // namespace

TEST_CASE("classes") {
  CHECK(cls("a1+b1+a2").bit_string() == "1110");
  CHECK(cls("a1+b1+a2").to_string() == "a1+b1+a2");
  CHECK(cls("0").is_zero());
  CHECK(cls("a1+a1").is_zero());
  CHECK(Mod2Class::from_bit_string("0101") == cls("b1+b2"));
  CHECK(dot(cls("a1"), cls("b1")) == 1);
  CHECK(dot(cls("a1"), cls("a2")) == 0);
  CHECK(dot(cls("a1+b1"), cls("a1+a2+b2")) == 1);
  CHECK_THROWS_AS(cls("a3"), corank::ParseError);
  CHECK_THROWS_AS(cls("a1+"), corank::ParseError);
  CHECK_THROWS_AS(cls("c1"), corank::ParseError);
  CHECK_THROWS_AS(Mod2Class::from_bit_string("012"), corank::ParseError);
  CHECK_THROWS(dot(cls("a1"), cls("a1", 3)));
}

TEST_CASE("form evaluation") {
  const SpForm f{2, 0b0110};  // w(b1) = w(a2) = 1
  CHECK(evaluate_form(f, cls("0")) == 0);
  CHECK(evaluate_form(f, cls("a1")) == 0);
  CHECK(evaluate_form(f, cls("b1")) == 1);
  CHECK(evaluate_form(f, cls("a1+b1")) == (0 ^ 1 ^ 1));
  CHECK_THROWS(evaluate_form(f, cls("a1", 3)));
}

TEST_CASE("property: evaluation is independent of fold order") {
  support::Rng rng(41);
  for (int iter = 0; iter < 300; ++iter) {
    const int g = static_cast<int>(support::uniform(rng, 1, 3));
    const SpForm f{g, static_cast<std::uint32_t>(support::uniform(rng, 0, (1 << (2 * g)) - 1))};
    const Mod2Class v{g, static_cast<std::uint32_t>(support::uniform(rng, 0, (1 << (2 * g)) - 1))};
    std::vector<int> order;
    for (int i = 0; i < 2 * g; ++i)
      if (v.bit(i)) order.push_back(i);
    const int expected = closed_form(f, v);
    REQUIRE(evaluate_form(f, v) == expected);
    std::sort(order.begin(), order.end());
    do {
      REQUIRE(evaluate_form_in_order(f, v, order) == expected);
    } while (std::next_permutation(order.begin(), order.end()));
  }
}

TEST_CASE("Arf invariant") {
  CHECK(arf(SpForm{2, 0}) == 0);
  CHECK(arf(SpForm{2, 0b0011}) == 1);
  CHECK(arf(SpForm{2, 0b1111}) == 0);
  for (int g = 1; g <= 3; ++g)
    for (std::uint32_t b = 0; b < (1U << (2 * g)); ++b) {
      const SpForm f{g, b};
      REQUIRE((arf(f) == 0) == arf_zero_by_count(f));
    }
}

TEST_CASE("Psi enumeration") {
  for (int g = 1; g <= 4; ++g) {
    std::size_t oracle = 0;
    for (std::uint32_t b = 0; b < (1U << (2 * g)); ++b) oracle += arf_zero_by_count({g, b});
    const PsiTable psi(g);
    CHECK(psi.size() == oracle);
    CHECK(psi.size() == expected_psi_size(g));
    for (std::size_t i = 1; i < psi.size(); ++i) CHECK(psi.label(i - 1) < psi.label(i));
  }
  CHECK(PsiTable(1).size() == 3);
  CHECK(PsiTable(2).size() == 10);
  CHECK(PsiTable(3).size() == 36);
  CHECK(PsiTable(2).label(0) == "0000");
  CHECK(PsiTable(2).label(9) == "1111");
}

TEST_CASE("property: Arf is invariant under symplectic change of basis") {
  support::Rng rng(42);
  for (int iter = 0; iter < 300; ++iter) {
    const int g = static_cast<int>(support::uniform(rng, 1, 3));
    const auto s = corank::homology::mod2(support::random_symplectic(rng, g, 8));
    const SpForm f{g, static_cast<std::uint32_t>(support::uniform(rng, 0, (1 << (2 * g)) - 1))};
    // New basis e'_i = S e_i; the same form written in it.
    std::uint32_t values = 0;
    for (int i = 0; i < 2 * g; ++i) {
      Mod2Class col{g, 0};
      for (int r = 0; r < 2 * g; ++r)
        if (s.at(static_cast<std::size_t>(r), static_cast<std::size_t>(i)) != 0) col.bits |= 1U << r;
      if (evaluate_form(f, col)) values |= 1U << i;
    }
    REQUIRE(arf(SpForm{g, values}) == arf(f));
  }
}

TEST_CASE("bar functions") {
  const PsiTable psi(2);
  CHECK(bar(cls("0"), psi).is_constant(0));
  const auto one = fn_const(1, psi);
  for (std::uint32_t u = 0; u < 16; ++u)
    for (std::uint32_t v = 0; v < 16; ++v) {
      const Mod2Class a{2, u}, b{2, v};
      auto rhs = fn_add(bar(a, psi), bar(b, psi));
      if (dot(a, b)) rhs = fn_add(rhs, one);
      REQUIRE(bar(a + b, psi) == rhs);
      const auto prod = fn_mul(bar(a, psi), bar(b, psi));
      REQUIRE(fn_mul(prod, prod) == prod);
    }
}

TEST_CASE("property: function ring axioms") {
  const PsiTable psi(3);
  support::Rng rng(43);
  auto random_fn = [&]() {
    std::vector<std::uint8_t> t(psi.size());
    for (auto& x : t) x = static_cast<std::uint8_t>(support::uniform(rng, 0, 1));
    return BooleanFunction(t);
  };
  for (int iter = 0; iter < 200; ++iter) {
    const auto f = random_fn(), g = random_fn(), h = random_fn();
    REQUIRE(fn_add(f, f).is_constant(0));
    REQUIRE(fn_mul(f, fn_const(1, psi)) == f);
    REQUIRE(fn_mul(f, fn_add(g, h)) == fn_add(fn_mul(f, g), fn_mul(f, h)));
    REQUIRE(fn_add(f, g) == fn_add(g, f));
    REQUIRE(BooleanFunction::from_bit_string(f.bit_string()) == f);
  }
  CHECK_THROWS(fn_add(fn_const(0, psi), fn_const(0, PsiTable(2))));
}

TEST_CASE("sigma of separating twists") {
  const PsiTable psi(2);
  CHECK(sigma_separating({cls("a1"), cls("b1")}, psi) == parse_sigma_polynomial("ā₁b̄₁", psi));
  CHECK(sigma_separating({cls("a1"), cls("b1+a2")}, psi) == parse_sigma_polynomial("ā₁b̄₁ + ā₁ā₂", psi));
  CHECK(sigma_separating({cls("a1"), cls("b1+a2+b2")}, psi) ==
        parse_sigma_polynomial("ā₁b̄₁ + ā₁ā₂ + ā₁b̄₂ + ā₁", psi));
  CHECK_THROWS_AS(sigma_separating({cls("a1"), cls("a2")}, psi), std::invalid_argument);
}

TEST_CASE("golden sigma table") {
  const PsiTable psi(2);
  const auto catalog = gamma_catalog();
  REQUIRE(catalog.size() == 10);
  CHECK(catalog[3].spec == SeparatingTwistSpec{cls("b1"), cls("a1+a2")});
  CHECK(catalog[9].spec == SeparatingTwistSpec{cls("a1+b1"), cls("a1+a2+b2")});
  const auto lines = corank::content_lines(corank::read_data_file("sigma_table.txt"));
  REQUIRE(lines.size() == 10);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(dot(catalog[i].spec.a, catalog[i].spec.b) == 1);
    const auto poly = lines[i].substr(lines[i].find_first_of(" \t"));
    CHECK(sigma_separating(catalog[i].spec, psi) == parse_sigma_polynomial(poly, psi));
  }
}

TEST_CASE("polynomial parser") {
  const PsiTable psi(2);
  CHECK(parse_sigma_polynomial("1", psi).is_constant(1));
  CHECK(parse_sigma_polynomial("A1B1 + A1A2", psi) == parse_sigma_polynomial("ā₁b̄₁ + ā₁ā₂", psi));
  CHECK(parse_sigma_polynomial("a_1 b_1", psi) == parse_sigma_polynomial("ā₁b̄₁", psi));
  CHECK(parse_sigma_polynomial("A1 + A1", psi).is_constant(0));
  CHECK(parse_sigma_polynomial("A1*B2", psi) == fn_mul(bar(cls("a1"), psi), bar(cls("b2"), psi)));
  CHECK_THROWS_AS(parse_sigma_polynomial("", psi), corank::ParseError);
  CHECK_THROWS_AS(parse_sigma_polynomial("A1 +", psi), corank::ParseError);
  CHECK_THROWS_AS(parse_sigma_polynomial("A3", psi), corank::ParseError);
  CHECK_THROWS_AS(parse_sigma_polynomial("C1", psi), corank::ParseError);
  CHECK_THROWS_AS(parse_sigma_polynomial("A", psi), corank::ParseError);
}

TEST_CASE("non-extension certificates") {
  const PsiTable psi(2);
  SeparatingTwistWord ten;
  for (const auto& c : gamma_catalog()) ten.push_back({c.spec, 1});
  const auto cert = certify_non_extension(ten, psi);
  CHECK(cert.verdict);
  CHECK(cert.sigma.is_constant(1));
  CHECK(!certify_non_extension({}, psi).verdict);
  CHECK(certify_non_extension({}, psi).sigma.is_constant(0));
  CHECK(certify_non_extension(word_power(ten, 2), psi).sigma.is_constant(0));
  CHECK(odd_power_certificate(cert, 3).sigma == cert.sigma);
  CHECK(odd_power_certificate(cert, 3).word.size() == 30);
  CHECK(odd_power_certificate(cert, 1).word == cert.word);
  CHECK(odd_power_certificate(cert, -1).verdict);
  CHECK_THROWS_AS(odd_power_certificate(cert, 2), std::invalid_argument);
  CHECK_THROWS_AS(odd_power_certificate(certify_non_extension({}, psi), 3), std::invalid_argument);
  const TwistFactor g1{gamma_catalog()[0].spec, 2};
  CHECK(sigma_twist_word({g1}, psi).is_constant(0));
  CHECK(sigma_twist_word({{g1.spec, -1}}, psi) == sigma_twist_word({{g1.spec, 1}}, psi));
}

TEST_CASE("property: sigma is a homomorphism on words") {
  const PsiTable psi(2);
  const auto catalog = gamma_catalog();
  support::Rng rng(44);
  auto random_word = [&]() {
    SeparatingTwistWord w;
    const auto len = support::uniform(rng, 0, 8);
    for (std::int64_t i = 0; i < len; ++i) {
      w.push_back({catalog[static_cast<std::size_t>(support::uniform(rng, 0, 9))].spec, support::uniform(rng, -3, 3)});
    }
    return w;
  };
  for (int iter = 0; iter < 300; ++iter) {
    const auto u = random_word(), v = random_word();
    SeparatingTwistWord uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    REQUIRE(sigma_twist_word(uv, psi) == fn_add(sigma_twist_word(u, psi), sigma_twist_word(v, psi)));
  }
}

TEST_CASE("word files") {
  const auto catalog = gamma_catalog();
  const auto w = parse_separating_word("gamma3 -1\na1+b1 a1+b2 3\n# comment\n", 2, catalog);
  REQUIRE(w.size() == 2);
  CHECK(w[0].spec == catalog[2].spec);
  CHECK(w[0].exponent == -1);
  CHECK(w[1].exponent == 3);
  CHECK(parse_separating_word(format_separating_word(w), 2) == w);
  CHECK_THROWS_AS(parse_separating_word("a1 a2", 2), corank::ParseError);
  CHECK_THROWS_AS(parse_separating_word("gamma3 x", 2, catalog), corank::ParseError);
  CHECK_THROWS_AS(parse_separating_word("a1", 2), corank::ParseError);
}

TEST_CASE("span of separating products") {
  std::vector<SeparatingTwistSpec> preferred;
  for (const auto& c : gamma_catalog()) preferred.push_back(c.spec);
  const auto g2 = constant_one_in_product_span(2, preferred);
  CHECK(g2.member);
  CHECK(g2.dimension == 10);
  CHECK(g2.witness == preferred);

  for (int g = 1; g <= 3; ++g) {
    const auto r = constant_one_in_product_span(g);
    const PsiTable psi(g);
    CHECK(r.basis.size() == r.dimension);
    if (r.member) {
      auto sum = fn_const(0, psi);
      for (const auto& s : r.witness) sum = fn_add(sum, sigma_separating(s, psi));
      CHECK(sum.is_constant(1));
    }
  }
  CHECK(constant_one_in_product_span(3).member);
}
