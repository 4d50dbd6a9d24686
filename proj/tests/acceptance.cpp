// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "corank/data.hpp"
#include "corank/manifold.hpp"
#include "support.hpp"

namespace fg = corank::freegroup;
namespace hm = corank::homology;
namespace sp = corank::spform;
namespace sf = corank::surface;
namespace mf = corank::manifold;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void run(int id, const char* title, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) out.require(false, "took " + std::to_string(secs) + " s");
  if (!out.ok) ++failures;
  std::printf("%s %d %s (%.3f s)%s%s\n", out.ok ? "PASS" : "FAIL", id, title, secs, out.detail.empty() ? "" : ": ",
              out.detail.c_str());
}

sp::SeparatingTwistWord ten_gamma() {
  return sp::parse_separating_word(corank::read_data_file("ten_gamma_word.txt"), 2, sp::gamma_catalog());
}

// Arf zero iff the form vanishes on 2^(2g-1) + 2^(g-1) classes; the form is
// evaluated by its closed expression, not by the library.
std::size_t count_arf_zero_forms(int g) {
  std::size_t count = 0;
  const std::uint32_t n = 1U << (2 * g);
  for (std::uint32_t q = 0; q < n; ++q) {
    std::size_t zeros = 0;
    for (std::uint32_t v = 0; v < n; ++v) {
      unsigned val = static_cast<unsigned>(__builtin_popcount(v & q)) & 1U;
      for (int k = 0; k < g; ++k) val ^= ((v >> (2 * k)) & (v >> (2 * k + 1))) & 1U;
      zeros += val == 0;
    }
    count += zeros == (std::size_t{1} << (2 * g - 1)) + (std::size_t{1} << (g - 1));
  }
  return count;
}

}  // namespace

int main() {
  run(1, "sigma golden table", 1.0, [](Outcome& o) {
    const sp::PsiTable psi(2);
    const auto catalog = sp::gamma_catalog();
    const auto rows = corank::content_lines(corank::read_data_file("sigma_table.txt"));
    o.require(catalog.size() == 10 && rows.size() == 10, "expected 10 catalog entries and 10 table rows");
    int matched = 0;
    for (std::size_t i = 0; i < rows.size() && i < catalog.size(); ++i) {
      const auto poly = sp::parse_sigma_polynomial(rows[i].substr(rows[i].find_first_of(" \t")), psi);
      matched += sp::sigma_separating(catalog[i].spec, psi) == poly;
    }
    o.require(matched == 10, std::to_string(matched) + "/10 rows match");
  });

  run(2, "odd-exponent certificate", 0, [](Outcome& o) {
    const sp::PsiTable psi(2);
    const auto w = ten_gamma();
    o.require(sp::sigma_twist_word(w, psi).is_constant(1), "sigma of the ten-twist word is not constant 1");
    o.require(sp::sigma_twist_word(sp::word_power(w, 2), psi).is_constant(0), "square is not constant 0");
    o.require(sp::sigma_twist_word(sp::word_power(w, 3), psi).is_constant(1), "cube is not constant 1");
  });

  run(3, "Psi cardinalities", 1.0, [](Outcome& o) {
    const std::size_t expect[] = {3, 10, 36};
    for (int g = 1; g <= 3; ++g) {
      const std::size_t oracle = count_arf_zero_forms(g);
      const std::size_t closed = (std::size_t{1} << (2 * g - 1)) + (std::size_t{1} << (g - 1));
      const std::size_t got = sp::PsiTable(g).size();
      o.require(got == oracle && got == closed && got == expect[g - 1], "genus " + std::to_string(g) + ": " + std::to_string(got));
    }
  });

  run(4, "Betti numbers", 1.0, [](Outcome& o) {
    const auto cert = mf::certify_corank_one_mapping_torus(ten_gamma());
    o.require(cert.betti == 5, "genus 2 mapping torus b1 = " + std::to_string(cert.betti));
    const auto g3 = mf::genus3_pipeline();
    o.require(g3.available && g3.certificate && g3.certificate->betti == 7, "genus 3 mapping torus b1 != 7");
    const auto handle = mf::handle_attachment_presentation(sf::curve_C1().word, sf::bundled_word_w());
    const auto b = mf::betti(handle);
    o.require(b == 4, "handle attachment b1 = " + std::to_string(b));
  });

  run(5, "transcribed word sanity", 0, [](Outcome& o) {
    const auto w = sf::bundled_word_w();
    o.require(fg::exponent_sums(w) == std::vector<std::int64_t>{0, 0, 0, 0}, "exponent sums are not zero");
    o.require(!w.is_identity(), "word reduces to the identity");
  });

  run(6, "co-rank obstruction", 10.0, [](Outcome& o) {
    const auto w = sf::bundled_word_w();
    const auto report = mf::corank2_obstruction(w, 4);
    bool ok = report.conclusion == mf::Conclusion::no_epimorphism;
    if (report.conclusion == mf::Conclusion::inconclusive) {
      ok = !report.witness;
      for (const auto i : report.undecided) ok = ok && !report.cases[i].witness;
    }
    o.require(ok, "conclusion " + mf::to_string(report.conclusion));
    const auto pts = mf::brute_force_surjection_search(w, 4);
    o.require(pts.empty(), std::to_string(pts.size()) + " surjective points at B = 4");
    o.detail = o.ok ? mf::to_string(report.conclusion) + ", " + std::to_string(report.cases.size()) + " leaves" : o.detail;
  });

  run(7, "oracle equivalence fuzz", 60.0, [](Outcome& o) {
    support::Rng rng(7001);
    std::size_t sampled = 0;
    for (int iter = 0; iter < 200 && o.ok; ++iter) {
      const auto w = support::random_word(rng, 4, 12);
      const auto pw = fg::substitute_powers(w);
      for (const auto& leaf : fg::parametric_reduce(pw)) {
        if (leaf.status != fg::LeafStatus::success) continue;
        const auto lattice = mf::leaf_lattice(leaf.constraints);
        if (!lattice) continue;
        for (int s = 0; s < 4; ++s) {
          fg::ParamPoint p{};
          for (std::size_t i = 0; i < p.size(); ++i) p[i] = lattice->particular[i];
          for (const auto& k : lattice->kernel_basis) {
            const auto t = support::uniform(rng, -3, 3);
            for (std::size_t i = 0; i < p.size(); ++i) p[i] += t * k[i];
          }
          if (!leaf.constraints.satisfied_by(p)) continue;
          ++sampled;
          o.require(fg::numeric_substitute(pw, p).is_identity(), "success-leaf point is not trivial for " + fg::format_word(w));
        }
      }
      const auto report = mf::corank2_obstruction(w, 3);
      const bool brute = !mf::brute_force_surjection_search(w, 3).empty();
      o.require((report.conclusion == mf::Conclusion::witness_found) == brute,
                "witness/brute-force disagreement on " + fg::format_word(w));
    }
    if (o.ok) o.detail = std::to_string(sampled) + " sampled points";
  });

  run(8, "structural property suites", 0, [](Outcome& o) {
    support::Rng rng(8001);
    for (int i = 0; i < 1000; ++i) {
      const auto u = support::random_word(rng, 4, 10), v = support::random_word(rng, 4, 10), x = support::random_word(rng, 4, 10);
      o.require(fg::multiply(fg::multiply(u, v), x) == fg::multiply(u, fg::multiply(v, x)), "associativity");
      o.require(fg::multiply(u, fg::invert(u)).is_identity(), "inverse");
      o.require(support::letters_of(u) == support::naive_reduce(u.blocks()), "reduced form");
      std::vector<fg::Word> i1, i2;
      for (int g = 0; g < 4; ++g) {
        i1.push_back(support::random_word(rng, 4, 4));
        i2.push_back(support::random_word(rng, 4, 4));
      }
      const fg::GroupHom h1(4, 4, i1), h2(4, 4, i2);
      o.require(fg::apply_hom(fg::compose(h1, h2), u) == fg::apply_hom(h1, fg::apply_hom(h2, u)), "hom composition");
    }
    for (int i = 0; i < 1000; ++i) {
      const int g = static_cast<int>(support::uniform(rng, 1, 3));
      hm::IntVector v(static_cast<std::size_t>(2 * g)), x(v.size()), y(v.size());
      for (std::size_t k = 0; k < v.size(); ++k) {
        v[k] = support::uniform(rng, -4, 4);
        x[k] = support::uniform(rng, -9, 9);
        y[k] = support::uniform(rng, -9, 9);
      }
      const auto t = hm::transvection(v).matrix;
      o.require(hm::pairing(t.apply(x), t.apply(y)) == hm::pairing(x, y), "transvection pairing");
    }
    const auto check_table = [&](const sf::TwistTable& table, int genus) {
      const auto s = sf::standard_surface_group(genus);
      for (const auto& [name, tw] : table)
        o.require(sf::is_conjugate_in_free(fg::apply_hom(tw.hom, s.relator), s.relator), "twist " + name + " breaks the relator");
    };
    check_table(sf::standard_twists_genus2(), 2);
    for (int g = 1; g <= 3; ++g) check_table(sf::chain_twists(g), g);
    for (int i = 0; i < 500; ++i) {
      const int g = static_cast<int>(support::uniform(rng, 1, 3));
      const auto s = support::random_symplectic(rng, g, 6);
      std::vector<hm::IntVector> set;
      const auto count = support::uniform(rng, 1, 2 * g + 1);
      for (std::int64_t k = 0; k < count; ++k) {
        hm::IntVector v(static_cast<std::size_t>(2 * g), 0);
        for (int c = 0; c < g; ++c) v[static_cast<std::size_t>(2 * c)] = support::uniform(rng, -3, 3);
        set.push_back(s.apply(v));
      }
      const auto c = hm::isotropic_rank_check(set);
      o.require(c.isotropic && c.rank <= static_cast<std::size_t>(g), "isotropic rank exceeds g");
    }
    const sp::PsiTable psi(2);
    const auto one = sp::fn_const(1, psi);
    for (std::uint32_t a = 0; a < 16; ++a)
      for (std::uint32_t b = 0; b < 16; ++b) {
        const sp::Mod2Class u{2, a}, v{2, b};
        auto rhs = sp::fn_add(sp::bar(u, psi), sp::bar(v, psi));
        if (sp::dot(u, v)) rhs = sp::fn_add(rhs, one);
        o.require(sp::bar(u + v, psi) == rhs, "bar relation");
        const auto phi = sp::fn_mul(sp::bar(u, psi), sp::bar(v, psi));
        o.require(sp::fn_mul(phi, phi) == phi, "phi^2 = phi");
      }
  });

  std::printf("%s: %d failing criteria\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
