#include "corank/serialize.hpp"

#include <chrono>
#include <ctime>

#include "corank/errors.hpp"

namespace corank::serialize {

Json envelope(const std::string& kind, bool timestamp) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  if (timestamp) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    j["generated_at"] = buf;
  }
  return j;
}

Json to_json(const spform::SeparatingTwistWord& word) {
  Json arr = Json::array();
  for (const auto& f : word) {
    arr.push_back({{"a", f.spec.a.bit_string()},
                   {"b", f.spec.b.bit_string()},
                   {"a_class", f.spec.a.to_string()},
                   {"b_class", f.spec.b.to_string()},
                   {"exponent", f.exponent}});
  }
  return arr;
}

Json to_json(const spform::NonExtensionCertificate& cert) {
  Json j;
  j["genus"] = cert.genus;
  j["psi_ordering"] = spform::kPsiOrderingTag;
  j["psi_size"] = cert.sigma.size();
  j["word"] = to_json(cert.word);
  j["sigma"] = cert.sigma.bit_string();
  j["verdict"] = cert.verdict;
  return j;
}

Json to_json(const manifold::MappingTorusCertificate& cert) {
  Json j;
  j["genus"] = cert.genus;
  j["torelli"] = cert.torelli;
  j["sigma_certificate"] = to_json(cert.sigma);
  j["betti"] = cert.betti;
  j["presentation"] = {{"generators", cert.presentation_generators}, {"relators", cert.presentation_relators}};
  j["conclusion"] = cert.conclusion;
  return j;
}

namespace {

Json point_json(const freegroup::ParamPoint& p) {
  return {{"m", p[0]}, {"n", p[1]}, {"k", p[2]}, {"j", p[3]}};
}

}  // namespace

Json to_json(const manifold::CorankReport& report) {
  Json j;
  j["word"] = freegroup::format_word(report.word);
  j["bound"] = report.bound;
  j["surjectivity_condition"] = "gcd(m,n) = 1 and gcd(k,j) = 1, gcd(0,0) = 0";
  Json cases = Json::array();
  for (const auto& c : report.cases) {
    Json cj;
    cj["status"] = c.status == freegroup::LeafStatus::success ? "SUCCESS" : "FAILURE";
    cj["constraints"] = freegroup::format_constraints(c.constraints);
    cj["residual"] = freegroup::format_parametric_word(c.residual);
    cj["admissible"] = c.admissible;
    cj["decided"] = c.decided;
    cj["reason"] = c.reason;
    if (c.witness) cj["witness"] = point_json(*c.witness);
    cases.push_back(std::move(cj));
  }
  j["cases"] = std::move(cases);
  j["conclusion"] = manifold::to_string(report.conclusion);
  if (report.witness) j["witness"] = point_json(*report.witness);
  j["undecided"] = report.undecided;
  return j;
}

Json to_json(const spform::SpanResult& span) {
  Json j;
  j["member"] = span.member;
  j["dimension"] = span.dimension;
  Json basis = Json::array();
  for (const auto& s : span.basis) basis.push_back({s.a.to_string(), s.b.to_string()});
  j["basis"] = std::move(basis);
  Json witness = Json::array();
  for (const auto& s : span.witness) witness.push_back({s.a.to_string(), s.b.to_string()});
  j["witness"] = std::move(witness);
  return j;
}

spform::NonExtensionCertificate certificate_from_json(const Json& j) {
  try {
    const int genus = j.at("genus").get<int>();
    if (j.at("psi_ordering").get<std::string>() != spform::kPsiOrderingTag) throw ParseError("unknown psi ordering");
    spform::SeparatingTwistWord word;
    for (const auto& f : j.at("word")) {
      spform::SeparatingTwistSpec spec{spform::Mod2Class::from_bit_string(f.at("a").get<std::string>()),
                                       spform::Mod2Class::from_bit_string(f.at("b").get<std::string>())};
      if (spec.genus() != genus || spec.b.genus != genus) throw ParseError("twist class has the wrong genus");
      word.push_back({spec, f.at("exponent").get<std::int64_t>()});
    }
    const auto cert = spform::certify_non_extension(word, spform::PsiTable(genus));
    if (cert.sigma.bit_string() != j.at("sigma").get<std::string>()) throw ParseError("stored sigma does not match recomputation");
    if (cert.verdict != j.at("verdict").get<bool>()) throw ParseError("stored verdict does not match recomputation");
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid certificate: ") + e.what());
  }
}

}  // namespace corank::serialize
