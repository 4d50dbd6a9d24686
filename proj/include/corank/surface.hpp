#pragma once

// Closed surface groups, Dehn twist automorphisms given by generator images,
// and twist words acting on curves.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "corank/freegroup.hpp"
#include "corank/homology.hpp"

namespace corank::surface {

using freegroup::GroupHom;
using freegroup::Word;

struct SurfaceGroup {
  int genus = 0;
  std::vector<std::string> names;
  Word relator;

  int rank() const { return 2 * genus; }
};

/// Names a, b, c, d, ... in the order a1, b1, a2, b2, ...; relator prod [ai, bi].
SurfaceGroup standard_surface_group(int genus);

struct CurveSpec {
  std::string name;
  Word word;
  homology::IntVector homology_class;

  static CurveSpec from_word(std::string name, Word word);
};

/// Abelianized action: column i is the exponent sum vector of h(g_i).
homology::HomologyAction homology_action(const GroupHom& h);

/// True when the cyclic reductions of u and v are rotations of each other.
bool is_conjugate_in_free(const Word& u, const Word& v);

struct TwistAutomorphism {
  std::string name;
  CurveSpec curve;
  GroupHom hom;
  GroupHom inverse;
  int direction = 1;
};

/// Throws std::logic_error naming the first invariant that fails: the relator
/// must map to a conjugate of itself or its inverse, the homology action must
/// be the transvection by the curve class (inverse transvection when direction
/// is -1), and hom, inverse must be mutually inverse.
void validate_twist(const TwistAutomorphism& t, const SurfaceGroup& s);

using TwistTable = std::map<std::string, TwistAutomorphism>;

/// Parses the curve-system format; see data/curve_system.txt. Every twist is
/// validated before return.
TwistTable parse_curve_system(std::string_view text, const SurfaceGroup& s);
TwistTable load_curve_system(const std::string& path);
/// alpha, beta, gamma, delta, epsilon from the bundled curve_system.txt.
TwistTable standard_twists_genus2();

/// Twists about a_i, b_i and about the curves joining handles i and i+1,
/// named a1, b1, ..., ag, bg, c1, ..., c(g-1). They preserve the relator
/// exactly, not just up to conjugacy.
TwistTable chain_twists(int genus);

struct TwistFactor {
  std::string name;
  std::int64_t exponent = 1;

  friend bool operator==(const TwistFactor&, const TwistFactor&) = default;
};
/// Written left to right as in function composition: the rightmost factor
/// acts first.
using TwistWord = std::vector<TwistFactor>;

/// Grammar: factor := name ['^' int] | '(' word ')' ['^' int]. Greek letters
/// alpha..epsilon are accepted as aliases of their spelled names.
TwistWord parse_twist_word(std::string_view text);
std::string format_twist_word(const TwistWord& tw);

/// Hom of the composite; throws std::out_of_range on an unknown name.
GroupHom twist_word_hom(const TwistWord& tw, const TwistTable& table, int rank);
CurveSpec apply_twist_word(const TwistWord& tw, const CurveSpec& c, const TwistTable& table);

CurveSpec curve_C1();
/// The bundled word paper_w.txt over a, b, c, d.
Word bundled_word_w();
Word load_word_file(const std::string& path, int rank);

/// The construction of the second curve from the first, in the bundled twist names.
inline constexpr const char* kC2Formula = "alpha^-1 (alpha epsilon gamma^2 beta^-1 delta^-1)^3";

}  // namespace corank::surface
