#pragma once

// Presentations of mapping tori and two-handle attachments, their first Betti
// numbers, and the two co-rank pipelines: the sigma certificate for mapping
// tori of separating-twist words and the power-substitution obstruction for
// surjections of the two-commutator presentation onto F2.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "corank/freegroup.hpp"
#include "corank/homology.hpp"
#include "corank/parametric.hpp"
#include "corank/spform.hpp"
#include "corank/surface.hpp"

namespace corank::manifold {

using freegroup::GroupHom;
using freegroup::ParamPoint;
using freegroup::Word;

struct Presentation {
  std::vector<std::string> names;
  std::vector<Word> relators;

  int generator_count() const { return static_cast<int>(names.size()); }
};

/// First line: generator names. Each further line: one relator. Names may be
/// longer than one character; with single-character names the letter syntax
/// (capitals for inverses, `^n`) applies, otherwise tokens are `name` or
/// `name^n` separated by whitespace.
Presentation parse_presentation(std::string_view text);
Presentation load_presentation(const std::string& path);
std::string format_presentation(const Presentation& p);

/// Rows are relators, columns generators, entries exponent sums.
homology::IntegerMatrix relation_matrix(const Presentation& p);
std::int64_t betti(const Presentation& p);

/// Generators: base generators then t. Relators: the base relator, then
/// t g_i t^-1 phi(g_i)^-1. Throws std::invalid_argument if phi does not
/// preserve the relator up to conjugacy.
Presentation mapping_torus_presentation(const GroupHom& phi, const surface::SurfaceGroup& base);

/// Same group for phi = f_1 o f_2 o ... o f_r without expanding the composite:
/// auxiliary generators q_{k,i} stand for (f_1 o ... o f_k)(g_i), related by
/// q_{k,i} = f_k(g_i)[g_j := q_{k-1,j}] with q_{0,i} = g_i, and the HNN
/// relators read t g_i t^-1 q_{r,i}^-1.
Presentation factored_mapping_torus_presentation(const std::vector<GroupHom>& factors,
                                                 const surface::SurfaceGroup& base);

/// Genus-2 handle attachment along C1 and C2. When C1 is the commutator of
/// the first handle the surface relator splits and the relators are
/// [a,b], [c,d], C2; otherwise [a,b][c,d], C1, C2.
Presentation handle_attachment_presentation(const Word& c1, const Word& c2);

// --- separating twists as automorphisms ------------------------------------

struct RealizedSeparatingTwist {
  spform::SeparatingTwistSpec spec;
  /// Chain-twist word h with h_*(a1) = a and h_*(b1) = b mod 2.
  surface::TwistWord carrier;
  GroupHom hom;      // h o T_[a1,b1] o h^-1
  GroupHom inverse;
};

/// Twist about [a1,b1]: conjugates a1 and b1 by [a1,b1] and fixes the rest.
surface::TwistAutomorphism commutator_curve_twist(int genus);

/// Breadth-first search over symplectic pairs mod 2 driven by the chain
/// twists of the spec's genus; deterministic.
RealizedSeparatingTwist realize_separating_twist(const spform::SeparatingTwistSpec& spec);

// --- mapping torus certificates --------------------------------------------

class CertificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MappingTorusCertificate {
  int genus = 0;
  spform::SeparatingTwistWord word;
  bool torelli = false;
  spform::NonExtensionCertificate sigma;
  std::int64_t betti = 0;
  std::size_t presentation_generators = 0;
  std::size_t presentation_relators = 0;
  std::string conclusion;
};

/// Realizes every factor, checks the composite acts trivially on H1, that
/// sigma is constant 1, and that b1 of the mapping torus is 2g + 1. Throws
/// CertificationFailure with the reason otherwise.
MappingTorusCertificate certify_mapping_torus(const spform::SeparatingTwistWord& word, int genus);
MappingTorusCertificate certify_corank_one_mapping_torus(const spform::SeparatingTwistWord& word);

struct Genus3Outcome {
  bool available = false;
  spform::SpanResult span;
  std::optional<MappingTorusCertificate> certificate;
};

/// With no word, searches the span of separating-twist sigma values for the
/// constant 1 and certifies the witness word. Not available when 1 is not in
/// that span; the span basis is returned either way.
Genus3Outcome genus3_pipeline(const std::optional<spform::SeparatingTwistWord>& word = std::nullopt);

// --- co-rank two obstruction -----------------------------------------------

enum class Conclusion { no_epimorphism, witness_found, inconclusive };
std::string to_string(Conclusion c);

struct CorankCase {
  freegroup::LeafStatus status = freegroup::LeafStatus::failure;
  freegroup::ConstraintSet constraints;
  freegroup::ParametricWord residual;
  bool admissible = false;
  bool decided = true;
  std::string reason;
  std::optional<ParamPoint> witness;
};

struct CorankReport {
  Word word;
  std::int64_t bound = 0;
  std::vector<CorankCase> cases;
  Conclusion conclusion = Conclusion::inconclusive;
  std::optional<ParamPoint> witness;
  std::vector<std::size_t> undecided;  // indices into cases
};

/// gcd with gcd(0, 0) = 0.
std::int64_t gcd0(std::int64_t a, std::int64_t b);
/// gcd(m, n) = 1 and gcd(k, j) = 1.
bool surjective_parameters(const ParamPoint& p);

/// Integer points of the equalities of c, or nullopt when there are none.
std::optional<homology::AffineLattice> leaf_lattice(const freegroup::ConstraintSet& c);

CorankReport corank2_obstruction(const Word& w, std::int64_t bound);

/// All (m, n, k, j) in the box |coordinate| <= bound with the gcd conditions
/// and trivial substituted word, in lexicographic order. `threads` = 0 picks
/// the hardware concurrency.
std::vector<ParamPoint> brute_force_surjection_search(const Word& w, std::int64_t bound, unsigned threads = 0);

}  // namespace corank::manifold
