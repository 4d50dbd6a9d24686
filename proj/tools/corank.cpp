// Command-line driver. Exit codes: 0 success, 1 negative verdict,
// 2 usage or input error, 3 inconclusive (corank2 only), 4 internal error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "corank/data.hpp"
#include "corank/errors.hpp"
#include "corank/manifold.hpp"
#include "corank/serialize.hpp"

namespace {

using namespace corank;
using serialize::Json;

struct Globals {
  std::string format = "text";
  bool no_timestamp = false;
  std::string data_dir;
  bool json() const { return format == "json"; }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

// --- sigma-table -------------------------------------------------------------

struct SigmaTableArgs {
  std::string catalog;
  std::string table;
};

int cmd_sigma_table(const Globals& g, const SigmaTableArgs& a) {
  const auto catalog = spform::parse_gamma_catalog(
      read_text_file(a.catalog.empty() ? data_path("gamma_catalog.txt") : std::filesystem::path(a.catalog)), 2);
  std::vector<std::pair<int, std::string>> rows;
  for (const auto& line : content_lines(
           read_text_file(a.table.empty() ? data_path("sigma_table.txt") : std::filesystem::path(a.table)))) {
    std::istringstream in(line);
    int idx = 0;
    if (!(in >> idx)) throw ParseError("sigma table line needs a row number: '" + line + "'");
    std::string rest;
    std::getline(in, rest);
    rows.emplace_back(idx, rest);
  }
  if (rows.size() != catalog.size()) {
    throw ParseError("sigma table has " + std::to_string(rows.size()) + " rows, catalog has " +
                     std::to_string(catalog.size()));
  }
  const spform::PsiTable psi(2);
  bool all_match = true;
  spform::BooleanFunction sum = spform::fn_const(0, psi);
  Json j = serialize::envelope("sigma-table", !g.no_timestamp);
  j["psi_ordering"] = spform::kPsiOrderingTag;
  Json psi_labels = Json::array();
  for (std::size_t i = 0; i < psi.size(); ++i) psi_labels.push_back(psi.label(i));
  j["psi"] = psi_labels;
  Json jrows = Json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& entry = catalog[i];
    if (rows[i].first != static_cast<int>(i + 1)) throw ParseError("sigma table rows out of order");
    const auto computed = spform::sigma_separating(entry.spec, psi);
    const auto printed = spform::parse_sigma_polynomial(rows[i].second, psi);
    const bool match = computed == printed;
    all_match = all_match && match;
    sum = spform::fn_add(sum, computed);
    if (!g.json()) {
      std::cout << (match ? "MATCH    " : "MISMATCH ") << entry.name << " (" << entry.spec.a.to_string() << ", "
                << entry.spec.b.to_string() << ")  computed " << computed.bit_string() << "  printed "
                << printed.bit_string() << '\n';
    }
    jrows.push_back({{"name", entry.name},
                     {"a", entry.spec.a.to_string()},
                     {"b", entry.spec.b.to_string()},
                     {"polynomial", rows[i].second},
                     {"computed", computed.bit_string()},
                     {"printed", printed.bit_string()},
                     {"match", match}});
  }
  const bool sum_one = sum.is_constant(1);
  if (g.json()) {
    j["rows"] = jrows;
    j["sum"] = sum.bit_string();
    j["sum_is_one"] = sum_one;
    j["ok"] = all_match && sum_one;
    emit(j);
  } else {
    std::cout << "sum " << sum.bit_string() << (sum_one ? "  sum ≡ 1" : "  sum is not constant 1") << '\n';
  }
  return all_match && sum_one ? 0 : 1;
}

// --- certify -----------------------------------------------------------------

struct CertifyArgs {
  std::string word_file;
  std::int64_t power = 1;
  int genus = 2;
  std::string output;
};

int cmd_certify(const Globals& g, const CertifyArgs& a) {
  if (a.power % 2 == 0) throw UsageError("--power must be odd");
  const std::vector<spform::NamedTwistSpec> catalog = a.genus == 2 ? spform::gamma_catalog() : std::vector<spform::NamedTwistSpec>{};
  const auto path = a.word_file.empty() ? data_path("ten_gamma_word.txt") : std::filesystem::path(a.word_file);
  const auto word = spform::parse_separating_word(read_text_file(path), a.genus, catalog);
  const spform::PsiTable psi(a.genus);
  auto cert = spform::certify_non_extension(word, psi);
  if (a.power != 1 && cert.verdict) cert = spform::odd_power_certificate(cert, a.power);
  const auto powered = spform::word_power(word, a.power);

  Json j = serialize::envelope("certificate", !g.no_timestamp);
  j["power"] = a.power;
  j["non_extension"] = serialize::to_json(cert);
  int code = cert.verdict ? 0 : 1;
  std::string failure;
  std::optional<manifold::MappingTorusCertificate> mt;
  if (cert.verdict) {
    try {
      mt = manifold::certify_mapping_torus(powered, a.genus);
      j["mapping_torus"] = serialize::to_json(*mt);
    } catch (const manifold::CertificationFailure& e) {
      failure = e.what();
      j["failure"] = failure;
      code = 1;
    }
  } else {
    failure = "sigma is not constant 1";
    j["failure"] = failure;
  }
  if (!a.output.empty()) {
    std::ofstream out(a.output);
    if (!out) throw UsageError("cannot write " + a.output);
    out << j.dump(2) << '\n';
  }
  if (g.json()) {
    emit(j);
  } else {
    std::cout << "genus " << a.genus << ", " << word.size() << " twists, power " << a.power << '\n';
    std::cout << "sigma " << cert.sigma.bit_string() << "  verdict " << (cert.verdict ? "true" : "false") << '\n';
    if (mt) {
      std::cout << "torelli " << (mt->torelli ? "yes" : "no") << "  b1 " << mt->betti << "  (" << mt->presentation_generators
                << " generators, " << mt->presentation_relators << " relators)\n";
      std::cout << mt->conclusion << '\n';
    } else {
      std::cout << "not certified: " << failure << '\n';
    }
  }
  return code;
}

// --- corank2 -----------------------------------------------------------------

struct Corank2Args {
  bool paper_w = false;
  std::string word_file;
  std::string word;
  std::int64_t bound = 4;
  std::int64_t brute_bound = 0;
};

int cmd_corank2(const Globals& g, const Corank2Args& a) {
  const int sources = (a.paper_w ? 1 : 0) + (a.word_file.empty() ? 0 : 1) + (a.word.empty() ? 0 : 1);
  if (sources != 1) throw UsageError("give exactly one of --paper-w, --word-file, --word");
  freegroup::Word w;
  if (a.paper_w) {
    w = surface::bundled_word_w();
  } else if (!a.word_file.empty()) {
    w = surface::load_word_file(a.word_file, 4);
  } else {
    w = freegroup::parse_word(a.word, 4);
  }
  if (a.bound < 1) throw UsageError("--bound must be at least 1");
  if (a.brute_bound < 0) throw UsageError("--brute-bound must be positive");
  const auto pres = manifold::handle_attachment_presentation(surface::curve_C1().word, w);
  const auto b1 = manifold::betti(pres);
  const auto report = manifold::corank2_obstruction(w, a.bound);
  std::optional<std::vector<freegroup::ParamPoint>> brute;
  if (a.brute_bound > 0) brute = manifold::brute_force_surjection_search(w, a.brute_bound);

  if (g.json()) {
    Json j = serialize::envelope("corank2", !g.no_timestamp);
    j["betti"] = b1;
    j["report"] = serialize::to_json(report);
    if (brute) {
      Json pts = Json::array();
      for (const auto& p : *brute) pts.push_back({p[0], p[1], p[2], p[3]});
      j["brute_force"] = {{"bound", a.brute_bound}, {"points", pts}};
    }
    emit(j);
  } else {
    std::cout << "word " << freegroup::format_word(w) << '\n';
    std::cout << "b1 " << b1 << '\n';
    std::cout << "leaves " << report.cases.size() << '\n';
    for (std::size_t i = 0; i < report.cases.size(); ++i) {
      const auto& c = report.cases[i];
      if (c.status != freegroup::LeafStatus::success) continue;
      std::cout << "  leaf " << i << " SUCCESS " << freegroup::format_constraints(c.constraints) << "  "
                << (c.admissible ? "admissible" : (c.decided ? "excluded" : "undecided")) << ": " << c.reason << '\n';
    }
    std::cout << "conclusion " << manifold::to_string(report.conclusion);
    if (report.witness) {
      const auto& p = *report.witness;
      std::cout << " (m, n, k, j) = (" << p[0] << ", " << p[1] << ", " << p[2] << ", " << p[3] << ")";
    }
    std::cout << '\n';
    if (brute) {
      std::cout << "brute force |coordinate| <= " << a.brute_bound << ": " << brute->size() << " points\n";
      for (const auto& p : *brute) std::cout << "  (" << p[0] << ", " << p[1] << ", " << p[2] << ", " << p[3] << ")\n";
    }
  }
  switch (report.conclusion) {
    case manifold::Conclusion::no_epimorphism:
      return 0;
    case manifold::Conclusion::witness_found:
      return 1;
    case manifold::Conclusion::inconclusive:
      return 3;
  }
  return 3;
}

// --- betti, psi, twist-apply -------------------------------------------------

int cmd_betti(const Globals& g, const std::string& path) {
  const auto p = manifold::load_presentation(path.empty() ? data_path("handle_presentation.txt").string() : path);
  const auto b1 = manifold::betti(p);
  if (g.json()) {
    Json j = serialize::envelope("betti", !g.no_timestamp);
    j["generators"] = p.names.size();
    j["relators"] = p.relators.size();
    j["betti"] = b1;
    emit(j);
  } else {
    std::cout << b1 << '\n';
  }
  return 0;
}

int cmd_psi(const Globals& g, int genus) {
  if (genus < 1 || genus > spform::kMaxGenus) throw UsageError("--genus must lie in 1.." + std::to_string(spform::kMaxGenus));
  const spform::PsiTable psi(genus);
  if (g.json()) {
    Json j = serialize::envelope("psi", !g.no_timestamp);
    j["genus"] = genus;
    j["ordering"] = spform::kPsiOrderingTag;
    j["size"] = psi.size();
    j["expected_size"] = spform::expected_psi_size(genus);
    Json forms = Json::array();
    for (std::size_t i = 0; i < psi.size(); ++i) forms.push_back(psi.label(i));
    j["forms"] = forms;
    emit(j);
  } else {
    std::cout << "|Psi| = " << psi.size() << " (2^" << 2 * genus - 1 << " + 2^" << genus - 1 << " = "
              << spform::expected_psi_size(genus) << ")\n";
    for (std::size_t i = 0; i < psi.size(); ++i) std::cout << "  " << psi.label(i) << '\n';
  }
  return psi.size() == spform::expected_psi_size(genus) ? 0 : 1;
}

struct TwistApplyArgs {
  std::string twists = surface::kC2Formula;
  std::string curve = "a b A B";
  std::string config;
};

int cmd_twist_apply(const Globals& g, const TwistApplyArgs& a) {
  const auto table = a.config.empty() ? surface::standard_twists_genus2() : surface::load_curve_system(a.config);
  const auto tw = surface::parse_twist_word(a.twists);
  const auto c = surface::CurveSpec::from_word("curve", freegroup::parse_word(a.curve, 4));
  const auto image = surface::apply_twist_word(tw, c, table);
  const auto reduced = freegroup::cyclic_reduce(image.word);
  if (g.json()) {
    Json j = serialize::envelope("twist-apply", !g.no_timestamp);
    j["twists"] = surface::format_twist_word(tw);
    j["curve"] = freegroup::format_word(c.word);
    j["image"] = freegroup::format_word(image.word);
    j["image_cyclically_reduced"] = freegroup::format_word(reduced);
    j["length"] = image.word.length();
    j["homology_class"] = image.homology_class;
    emit(j);
  } else {
    std::cout << freegroup::format_word(image.word) << '\n';
    std::cout << "length " << image.word.length() << "  cyclically reduced length " << reduced.length() << '\n';
    std::cout << "class (";
    for (std::size_t i = 0; i < image.homology_class.size(); ++i) std::cout << (i ? ", " : "") << image.homology_class[i];
    std::cout << ")\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Co-rank certificates for surface bundles and handle attachments"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--no-timestamp", g.no_timestamp, "Omit generated_at from JSON output");
  app.add_option("--data-dir", g.data_dir, "Directory holding the bundled data files");

  SigmaTableArgs st;
  auto* sigma = app.add_subcommand("sigma-table", "Compare computed sigma values with the bundled printed table");
  sigma->add_option("--catalog", st.catalog, "Twist catalog file");
  sigma->add_option("--table", st.table, "Printed sigma polynomial table");

  CertifyArgs ca;
  auto* certify = app.add_subcommand("certify", "Certify a separating-twist word and its mapping torus");
  certify->add_option("word-file", ca.word_file, "Twist word file (default: the ten catalog twists)");
  certify->add_option("--power", ca.power, "Odd power of the word");
  certify->add_option("--genus", ca.genus, "Surface genus")->check(CLI::Range(1, spform::kMaxGenus));
  certify->add_option("--output", ca.output, "Also write the JSON certificate here");

  Corank2Args cr;
  auto* corank2 = app.add_subcommand("corank2", "Decide surjections of <a,b,c,d | [a,b],[c,d],w> onto F2");
  corank2->add_flag("--paper-w", cr.paper_w, "Use the bundled word w");
  corank2->add_option("--word-file", cr.word_file, "Read w from a file");
  corank2->add_option("--word", cr.word, "Give w inline");
  corank2->add_option("--bound", cr.bound, "Witness search bound per leaf");
  corank2->add_option("--brute-bound", cr.brute_bound, "Also scan the box |coordinate| <= B");

  std::string betti_path;
  auto* betti = app.add_subcommand("betti", "First Betti number of a presentation file");
  betti->add_option("presentation", betti_path, "Presentation file (default: bundled handle presentation)");

  int psi_genus = 2;
  auto* psi = app.add_subcommand("psi", "List the Arf-zero forms");
  psi->add_option("--genus", psi_genus, "Surface genus");

  TwistApplyArgs ta;
  auto* twist = app.add_subcommand("twist-apply", "Apply a twist word to a curve word");
  twist->add_option("--twists", ta.twists, "Twist word, rightmost factor first");
  twist->add_option("--curve", ta.curve, "Curve word over a, b, c, d");
  twist->add_option("--config", ta.config, "Curve-system configuration file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!g.data_dir.empty()) set_data_dir(g.data_dir);
    if (*sigma) return cmd_sigma_table(g, st);
    if (*certify) return cmd_certify(g, ca);
    if (*corank2) return cmd_corank2(g, cr);
    if (*betti) return cmd_betti(g, betti_path);
    if (*psi) return cmd_psi(g, psi_genus);
    if (*twist) return cmd_twist_apply(g, ta);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const corank::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "rejected input: " << e.what() << '\n';
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }
  return 2;
}
