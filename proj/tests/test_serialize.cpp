#include <doctest.h>

#include "corank/data.hpp"
#include "corank/errors.hpp"
#include "corank/serialize.hpp"

using namespace corank::serialize;
namespace sp = corank::spform;

namespace {

sp::NonExtensionCertificate ten_gamma_certificate() {
  const auto word = sp::parse_separating_word(corank::read_data_file("ten_gamma_word.txt"), 2, sp::gamma_catalog());
  return sp::certify_non_extension(word, sp::PsiTable(2));
}

}  // namespace

TEST_CASE("envelope") {
  const Json plain = envelope("x", false);
  CHECK(plain.at("schema_version") == kSchemaVersion);
  CHECK(plain.at("kind") == "x");
  CHECK(!plain.contains("generated_at"));
  const auto stamp = envelope("x", true).at("generated_at").get<std::string>();
  CHECK(stamp.size() == 20);
  CHECK(stamp.back() == 'Z');
}

TEST_CASE("certificate round trip") {
  const auto cert = ten_gamma_certificate();
  const Json j = to_json(cert);
  CHECK(j.at("psi_size") == 10);
  CHECK(j.at("sigma") == "1111111111");
  CHECK(j.at("verdict") == true);
  const auto back = certificate_from_json(Json::parse(j.dump()));
  CHECK(back.word == cert.word);
  CHECK(back.sigma == cert.sigma);
  CHECK(back.verdict);
}

TEST_CASE("tampered certificates are rejected") {
  const Json j = to_json(ten_gamma_certificate());
  Json bad_sigma = j;
  bad_sigma["sigma"] = "1111111110";
  CHECK_THROWS_AS(certificate_from_json(bad_sigma), corank::ParseError);
  Json bad_verdict = j;
  bad_verdict["verdict"] = false;
  CHECK_THROWS_AS(certificate_from_json(bad_verdict), corank::ParseError);
  Json dropped = j;
  dropped["word"].erase(dropped["word"].size() - 1);
  CHECK_THROWS_AS(certificate_from_json(dropped), corank::ParseError);
  Json missing = j;
  missing.erase("genus");
  CHECK_THROWS_AS(certificate_from_json(missing), corank::ParseError);
  Json ordering = j;
  ordering["psi_ordering"] = "other";
  CHECK_THROWS_AS(certificate_from_json(ordering), corank::ParseError);
}

TEST_CASE("reports serialize deterministically") {
  const auto w = corank::surface::bundled_word_w();
  const Json a = to_json(corank::manifold::corank2_obstruction(w, 2));
  const Json b = to_json(corank::manifold::corank2_obstruction(w, 2));
  CHECK(a.dump(2) == b.dump(2));
  CHECK(a.at("conclusion") == "NO_EPIMORPHISM");
  CHECK(a.at("cases").size() == 21);
  CHECK(!a.contains("generated_at"));
  const Json span = to_json(sp::constant_one_in_product_span(2));
  CHECK(span.at("member") == true);
  CHECK(span.at("dimension") == 10);
}
