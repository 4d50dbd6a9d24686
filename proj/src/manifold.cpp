#include "corank/manifold.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "corank/data.hpp"
#include "corank/errors.hpp"

namespace corank::manifold {

using freegroup::apply_hom;
using freegroup::commutator;
using freegroup::compose;
using freegroup::exponent_sums;
using freegroup::invert;
using freegroup::multiply;

namespace {

Word lift(const Word& w, int rank) { return Word::reduce(rank, w.blocks()); }

Word parse_tokens(const std::string& line, const std::vector<std::string>& names) {
  std::istringstream in(line);
  std::vector<freegroup::Block> letters;
  bool identity = false;
  for (std::string tok; in >> tok;) {
    if (tok == "1") {
      identity = true;
      continue;
    }
    std::string name = tok;
    std::int64_t e = 1;
    if (const auto caret = tok.find('^'); caret != std::string::npos) {
      name = tok.substr(0, caret);
      std::string_view digits(tok);
      digits.remove_prefix(caret + 1);
      if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), e);
      if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
        throw ParseError("malformed exponent in '" + tok + "'");
      }
    }
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw ParseError("unknown generator '" + name + "'");
    letters.push_back({static_cast<int>(it - names.begin()), e});
  }
  if (identity && !letters.empty()) throw ParseError("identity symbol '1' mixed with letters");
  return Word::reduce(static_cast<int>(names.size()), letters);
}

}  // namespace

Presentation parse_presentation(std::string_view text) {
  const auto lines = content_lines(std::string(text));
  if (lines.empty()) throw ParseError("presentation has no generator line");
  Presentation p;
  {
    std::istringstream in(lines.front());
    for (std::string n; in >> n;) {
      if (std::find(p.names.begin(), p.names.end(), n) != p.names.end()) throw ParseError("duplicate generator '" + n + "'");
      if (n == "1" || n.find('^') != std::string::npos) throw ParseError("bad generator name '" + n + "'");
      p.names.push_back(n);
    }
  }
  const bool letters = std::all_of(p.names.begin(), p.names.end(), [](const std::string& n) {
    return n.size() == 1 && n[0] >= 'a' && n[0] <= 'z';
  });
  for (std::size_t i = 1; i < lines.size(); ++i) {
    p.relators.push_back(letters ? freegroup::parse_word(lines[i], p.names) : parse_tokens(lines[i], p.names));
  }
  return p;
}

Presentation load_presentation(const std::string& path) { return parse_presentation(read_text_file(path)); }

std::string format_presentation(const Presentation& p) {
  std::string out;
  for (std::size_t i = 0; i < p.names.size(); ++i) out += (i ? " " : "") + p.names[i];
  out += '\n';
  for (const auto& r : p.relators) out += freegroup::format_word(r, p.names) + '\n';
  return out;
}

homology::IntegerMatrix relation_matrix(const Presentation& p) {
  homology::IntegerMatrix m(p.relators.size(), p.names.size());
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    if (p.relators[r].rank() != p.generator_count()) throw std::invalid_argument("relator rank mismatch");
    const auto sums = exponent_sums(p.relators[r]);
    for (std::size_t c = 0; c < sums.size(); ++c) m.at(r, c) = sums[c];
  }
  return m;
}

std::int64_t betti(const Presentation& p) {
  if (p.relators.empty()) return p.generator_count();
  return p.generator_count() - static_cast<std::int64_t>(homology::rank(relation_matrix(p)));
}

namespace {

void require_preserved(const GroupHom& phi, const surface::SurfaceGroup& base) {
  if (phi.domain_rank() != base.rank() || phi.codomain_rank() != base.rank()) {
    throw std::invalid_argument("monodromy rank does not match the surface");
  }
  const Word image = apply_hom(phi, base.relator);
  if (!surface::is_conjugate_in_free(image, base.relator) &&
      !surface::is_conjugate_in_free(image, invert(base.relator))) {
    throw std::invalid_argument("monodromy does not preserve the surface relator");
  }
}

}  // namespace

Presentation mapping_torus_presentation(const GroupHom& phi, const surface::SurfaceGroup& base) {
  return factored_mapping_torus_presentation({phi}, base);
}

Presentation factored_mapping_torus_presentation(const std::vector<GroupHom>& factors, const surface::SurfaceGroup& base) {
  for (const auto& f : factors) require_preserved(f, base);
  const int r = base.rank();
  // A single factor needs no auxiliary generators.
  const bool direct = factors.size() == 1;
  const int aux = direct ? 0 : static_cast<int>(factors.size());
  const int total = r + 1 + aux * r;
  const int t = r;
  auto q = [&](int k, int i) { return k == 0 ? i : r + 1 + (k - 1) * r + i; };

  Presentation p;
  p.names = base.names;
  p.names.push_back("t");
  for (int k = 1; k <= aux; ++k)
    for (int i = 0; i < r; ++i) p.names.push_back("q" + std::to_string(k) + base.names[static_cast<std::size_t>(i)]);
  p.relators.push_back(lift(base.relator, total));

  auto substitution = [&](int k) {
    std::vector<Word> images;
    for (int i = 0; i < r; ++i) images.push_back(Word::generator(total, q(k, i)));
    return GroupHom(r, total, std::move(images));
  };
  std::vector<Word> top(static_cast<std::size_t>(r));
  if (direct) {
    for (int i = 0; i < r; ++i) top[static_cast<std::size_t>(i)] = lift(factors.front().image(i), total);
  } else {
    for (int k = 1; k <= aux; ++k) {
      const GroupHom sub = substitution(k - 1);
      for (int i = 0; i < r; ++i) {
        const Word rhs = apply_hom(sub, factors[static_cast<std::size_t>(k - 1)].image(i));
        p.relators.push_back(multiply(Word::generator(total, q(k, i), -1), rhs));
      }
    }
    for (int i = 0; i < r; ++i) top[static_cast<std::size_t>(i)] = Word::generator(total, q(aux, i));
  }
  for (int i = 0; i < r; ++i) {
    const Word g = Word::generator(total, i);
    const Word tt = Word::generator(total, t);
    p.relators.push_back(multiply(multiply(multiply(tt, g), invert(tt)), invert(top[static_cast<std::size_t>(i)])));
  }
  return p;
}

Presentation handle_attachment_presentation(const Word& c1, const Word& c2) {
  if (c1.rank() != 4 || c2.rank() != 4) throw std::invalid_argument("handle curves must be words over a, b, c, d");
  const surface::SurfaceGroup s = surface::standard_surface_group(2);
  Presentation p;
  p.names = s.names;
  const Word ab = commutator(Word::generator(4, 0), Word::generator(4, 1));
  const Word cd = commutator(Word::generator(4, 2), Word::generator(4, 3));
  if (c1 == ab) {
    p.relators = {ab, cd, c2};
  } else {
    p.relators = {s.relator, c1, c2};
  }
  return p;
}

// --- separating twists -------------------------------------------------------

surface::TwistAutomorphism commutator_curve_twist(int genus) {
  const surface::SurfaceGroup s = surface::standard_surface_group(genus);
  const int r = s.rank();
  const Word a = Word::generator(r, 0);
  const Word b = Word::generator(r, 1);
  const Word c1 = commutator(a, b);
  std::vector<Word> img, inv;
  for (int i = 0; i < r; ++i) {
    const Word g = Word::generator(r, i);
    img.push_back(i < 2 ? freegroup::conjugate(g, c1) : g);
    inv.push_back(i < 2 ? freegroup::conjugate(g, invert(c1)) : g);
  }
  surface::TwistAutomorphism t;
  t.name = "C1";
  t.curve = surface::CurveSpec::from_word("C1", c1);
  t.hom = GroupHom(r, r, std::move(img));
  t.inverse = GroupHom(r, r, std::move(inv));
  surface::validate_twist(t, s);
  return t;
}

RealizedSeparatingTwist realize_separating_twist(const spform::SeparatingTwistSpec& spec) {
  spec.validate();
  const int genus = spec.genus();
  const int r = 2 * genus;
  const surface::TwistTable table = surface::chain_twists(genus);

  std::vector<std::pair<std::string, spform::Mod2Class>> moves;
  for (const auto& [name, tw] : table) {
    spform::Mod2Class v{genus, 0};
    for (int i = 0; i < r; ++i)
      if (tw.curve.homology_class[static_cast<std::size_t>(i)] % 2 != 0) v.bits |= 1U << i;
    moves.emplace_back(name, v);
  }
  auto transvect = [](const spform::Mod2Class& x, const spform::Mod2Class& v) {
    return spform::dot(x, v) ? x + v : x;
  };
  using Key = std::uint64_t;
  auto key = [](const spform::Mod2Class& x, const spform::Mod2Class& y) {
    return static_cast<Key>(x.bits) | (static_cast<Key>(y.bits) << 32);
  };
  struct Parent {
    Key from;
    std::size_t move;
  };
  const spform::Mod2Class a1 = spform::Mod2Class::basis(genus, 0);
  const spform::Mod2Class b1 = spform::Mod2Class::basis(genus, 1);
  const Key start = key(a1, b1);
  const Key goal = key(spec.a, spec.b);
  std::map<Key, Parent> parent;
  parent.emplace(start, Parent{start, moves.size()});
  std::deque<std::pair<spform::Mod2Class, spform::Mod2Class>> queue{{a1, b1}};
  while (!queue.empty() && parent.count(goal) == 0) {
    const auto [x, y] = queue.front();
    queue.pop_front();
    for (std::size_t m = 0; m < moves.size(); ++m) {
      const auto nx = transvect(x, moves[m].second);
      const auto ny = transvect(y, moves[m].second);
      if (parent.emplace(key(nx, ny), Parent{key(x, y), m}).second) queue.emplace_back(nx, ny);
    }
  }
  if (parent.count(goal) == 0) throw std::logic_error("symplectic pair not reached: " + spec.a.to_string() + ", " + spec.b.to_string());

  // Moves were applied first to last; the carrier lists them last to first.
  RealizedSeparatingTwist out;
  out.spec = spec;
  for (Key k = goal; k != start; k = parent.at(k).from) out.carrier.push_back({moves[parent.at(k).move].first, 1});
  surface::TwistWord carrier_inverse(out.carrier.rbegin(), out.carrier.rend());
  for (auto& f : carrier_inverse) f.exponent = -1;
  const GroupHom h = surface::twist_word_hom(out.carrier, table, r);
  const GroupHom hi = surface::twist_word_hom(carrier_inverse, table, r);
  const surface::TwistAutomorphism tc = commutator_curve_twist(genus);
  out.hom = compose(h, compose(tc.hom, hi));
  out.inverse = compose(h, compose(tc.inverse, hi));

  const auto act = surface::homology_action(h).matrix;
  for (int col = 0; col < 2; ++col) {
    const auto v = act.column(static_cast<std::size_t>(col));
    const auto bits = homology::mod2(v);
    spform::Mod2Class c{genus, 0};
    for (int i = 0; i < r; ++i)
      if (bits[static_cast<std::size_t>(i)]) c.bits |= 1U << i;
    if (c != (col == 0 ? spec.a : spec.b)) throw std::logic_error("carrier does not realize the symplectic pair");
  }
  return out;
}

// --- certificates ------------------------------------------------------------

MappingTorusCertificate certify_mapping_torus(const spform::SeparatingTwistWord& word, int genus) {
  const surface::SurfaceGroup base = surface::standard_surface_group(genus);
  std::vector<GroupHom> factors;
  homology::HomologyAction action{homology::IntegerMatrix::identity(static_cast<std::size_t>(2 * genus))};
  for (const auto& f : word) {
    if (f.spec.genus() != genus) throw CertificationFailure("twist factor has genus " + std::to_string(f.spec.genus()));
    if (spform::dot(f.spec.a, f.spec.b) != 1) {
      throw CertificationFailure("pair " + f.spec.a.to_string() + ", " + f.spec.b.to_string() + " has a.b = 0");
    }
    const RealizedSeparatingTwist t = realize_separating_twist(f.spec);
    const std::int64_t reps = f.exponent < 0 ? -f.exponent : f.exponent;
    for (std::int64_t i = 0; i < reps; ++i) {
      factors.push_back(f.exponent > 0 ? t.hom : t.inverse);
      action = homology::compose(action, surface::homology_action(factors.back()));
    }
  }

  MappingTorusCertificate cert;
  cert.genus = genus;
  cert.word = word;
  cert.torelli = homology::is_torelli(action);
  if (!cert.torelli) throw CertificationFailure("composite does not act trivially on H1");
  cert.sigma = spform::certify_non_extension(word, spform::PsiTable(genus));
  if (!cert.sigma.verdict) throw CertificationFailure("sigma is not constant 1: " + cert.sigma.sigma.bit_string());
  const Presentation p = factors.empty() ? mapping_torus_presentation(GroupHom::identity(2 * genus), base)
                                         : factored_mapping_torus_presentation(factors, base);
  cert.presentation_generators = p.names.size();
  cert.presentation_relators = p.relators.size();
  cert.betti = betti(p);
  if (cert.betti != 2 * genus + 1) {
    throw CertificationFailure("b1 of the mapping torus is " + std::to_string(cert.betti) + ", expected " +
                               std::to_string(2 * genus + 1));
  }
  if (genus == 2) {
    cert.conclusion =
        "c1 = 1: sigma is constant 1, so the monodromy extends over no handlebody. An epimorphism onto F2 would map "
        "the fiber group onto a finitely generated normal, hence finite index, subgroup; the Nielsen-Schreier rank "
        "count and the Hopfian property would then make the monodromy extend over a handlebody.";
  } else {
    cert.conclusion = "c1 <= " + std::to_string(genus - 1) +
                      ": sigma is constant 1, so the monodromy extends over no handlebody, and an epimorphism onto F" +
                      std::to_string(genus) + " would force the fiber group to surject and the monodromy to extend.";
  }
  return cert;
}

MappingTorusCertificate certify_corank_one_mapping_torus(const spform::SeparatingTwistWord& word) {
  return certify_mapping_torus(word, 2);
}

Genus3Outcome genus3_pipeline(const std::optional<spform::SeparatingTwistWord>& word) {
  Genus3Outcome out;
  if (word) {
    out.available = true;
    out.certificate = certify_mapping_torus(*word, 3);
    return out;
  }
  out.span = spform::constant_one_in_product_span(3);
  if (!out.span.member) return out;
  spform::SeparatingTwistWord w;
  for (const auto& s : out.span.witness) w.push_back({s, 1});
  out.available = true;
  out.certificate = certify_mapping_torus(w, 3);
  return out;
}

// --- co-rank two -------------------------------------------------------------

std::string to_string(Conclusion c) {
  switch (c) {
    case Conclusion::no_epimorphism:
      return "NO_EPIMORPHISM";
    case Conclusion::witness_found:
      return "WITNESS_FOUND";
    case Conclusion::inconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

std::int64_t gcd0(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

bool surjective_parameters(const ParamPoint& p) { return gcd0(p[0], p[1]) == 1 && gcd0(p[2], p[3]) == 1; }

std::optional<homology::AffineLattice> leaf_lattice(const freegroup::ConstraintSet& c) {
  const auto& eqs = c.equalities();
  if (eqs.empty()) {
    homology::AffineLattice all;
    all.particular.assign(freegroup::kParamCount, 0);
    for (std::size_t i = 0; i < freegroup::kParamCount; ++i) {
      homology::IntVector e(freegroup::kParamCount, 0);
      e[i] = 1;
      all.kernel_basis.push_back(e);
    }
    return all;
  }
  std::vector<homology::IntVector> rows;
  homology::IntVector rhs;
  for (const auto& f : eqs) {
    rows.emplace_back(f.coefficients.begin(), f.coefficients.end());
    rhs.push_back(-f.constant);
  }
  return homology::solve_integer_system(homology::IntegerMatrix::from_rows(rows, freegroup::kParamCount), rhs);
}

namespace {

template <typename Fn>
void for_each_point(std::int64_t bound, std::int64_t first, Fn&& fn) {
  ParamPoint p{first, 0, 0, 0};
  for (p[1] = -bound; p[1] <= bound; ++p[1])
    for (p[2] = -bound; p[2] <= bound; ++p[2])
      for (p[3] = -bound; p[3] <= bound; ++p[3])
        if (!fn(p)) return;
}

void decide_success_leaf(CorankCase& c, const freegroup::ParametricWord& pw, std::int64_t bound) {
  const auto lattice = leaf_lattice(c.constraints);
  if (!lattice) {
    c.reason = "equalities have no integer solution";
    return;
  }
  static const char* pair_names[2] = {"(m, n)", "(k, j)"};
  for (std::size_t pair = 0; pair < 2; ++pair) {
    std::int64_t content = 0;
    for (std::size_t i = 2 * pair; i < 2 * pair + 2; ++i) {
      content = std::gcd(content, lattice->particular[i]);
      for (const auto& v : lattice->kernel_basis) content = std::gcd(content, v[i]);
    }
    if (content == 0) {
      c.reason = std::string("equalities force ") + pair_names[pair] + " = (0, 0)";
      return;
    }
    if (content > 1) {
      c.reason = std::string("equalities force ") + std::to_string(content) + " to divide gcd" + pair_names[pair];
      return;
    }
  }
  for (std::int64_t m = -bound; m <= bound && !c.witness; ++m) {
    for_each_point(bound, m, [&](const ParamPoint& p) {
      if (!c.constraints.satisfied_by(p) || !surjective_parameters(p)) return true;
      if (!freegroup::numeric_substitute(pw, p).is_identity()) {
        throw std::logic_error("success leaf point does not substitute to the identity");
      }
      c.witness = p;
      return false;
    });
  }
  if (c.witness) {
    c.admissible = true;
    c.reason = "witness in the search box";
  } else {
    c.decided = false;
    c.reason = "no witness with |coordinate| <= " + std::to_string(bound);
  }
}

}  // namespace

CorankReport corank2_obstruction(const Word& w, std::int64_t bound) {
  if (bound < 1) throw std::invalid_argument("bound must be at least 1");
  CorankReport report;
  report.word = w;
  report.bound = bound;
  const freegroup::ParametricWord pw = freegroup::substitute_powers(w);
  for (auto& leaf : freegroup::parametric_reduce(pw)) {
    CorankCase c;
    c.status = leaf.status;
    c.constraints = std::move(leaf.constraints);
    c.residual = std::move(leaf.residual);
    if (c.status == freegroup::LeafStatus::failure) {
      c.reason = "residual word is nontrivial";
    } else {
      decide_success_leaf(c, pw, bound);
    }
    report.cases.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < report.cases.size(); ++i) {
    const auto& c = report.cases[i];
    if (c.witness && !report.witness) report.witness = c.witness;
    if (!c.decided) report.undecided.push_back(i);
  }
  if (report.witness) {
    report.conclusion = Conclusion::witness_found;
  } else if (!report.undecided.empty()) {
    report.conclusion = Conclusion::inconclusive;
  } else {
    report.conclusion = Conclusion::no_epimorphism;
  }
  return report;
}

std::vector<ParamPoint> brute_force_surjection_search(const Word& w, std::int64_t bound, unsigned threads) {
  if (bound < 1) throw std::invalid_argument("bound must be at least 1");
  const freegroup::ParametricWord pw = freegroup::substitute_powers(w);
  const auto slices = static_cast<std::size_t>(2 * bound + 1);
  std::vector<std::vector<ParamPoint>> found(slices);
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, slices));
  auto work = [&](unsigned id) {
    for (std::size_t s = id; s < slices; s += threads) {
      for_each_point(bound, static_cast<std::int64_t>(s) - bound, [&](const ParamPoint& p) {
        if (surjective_parameters(p) && freegroup::numeric_substitute(pw, p).is_identity()) found[s].push_back(p);
        return true;
      });
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(work, i);
  work(0);
  for (auto& t : pool) t.join();
  std::vector<ParamPoint> out;
  for (auto& f : found) out.insert(out.end(), f.begin(), f.end());
  return out;
}

}  // namespace corank::manifold
