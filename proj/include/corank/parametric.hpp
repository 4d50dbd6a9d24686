#pragma once

// Power substitution a -> x^m, b -> x^n, c -> y^k, d -> y^j and the case
// analysis deciding for which integer (m, n, k, j) the substituted word is
// trivial in the free group F(x, y).

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "corank/freegroup.hpp"

namespace corank::freegroup {

inline constexpr std::size_t kParamCount = 4;
/// Parameter order is fixed: m, n, k, j.
inline constexpr std::array<char, kParamCount> kParamNames = {'m', 'n', 'k', 'j'};

using ParamPoint = std::array<std::int64_t, kParamCount>;

/// Integer affine form c_m m + c_n n + c_k k + c_j j + constant.
struct LinearForm {
  std::array<std::int64_t, kParamCount> coefficients{};
  std::int64_t constant = 0;

  static LinearForm parameter(std::size_t index, std::int64_t coefficient = 1);

  bool is_zero() const;
  std::int64_t evaluate(const ParamPoint& p) const;
  LinearForm operator+(const LinearForm& o) const;
  LinearForm operator-() const;
  LinearForm scaled(std::int64_t s) const;

  friend bool operator==(const LinearForm&, const LinearForm&) = default;
  friend auto operator<=>(const LinearForm&, const LinearForm&) = default;
};

std::string format_form(const LinearForm& f);

/// Target generators of the rank-2 free group.
inline constexpr int kTargetX = 0;
inline constexpr int kTargetY = 1;

struct ParametricBlock {
  int target = kTargetX;
  LinearForm exponent;

  friend bool operator==(const ParametricBlock&, const ParametricBlock&) = default;
};

class ParametricWord {
 public:
  ParametricWord() = default;
  /// Merges adjacent same-target blocks and drops identically zero forms,
  /// cascading until neither applies.
  static ParametricWord from_blocks(const std::vector<ParametricBlock>& blocks);

  const std::vector<ParametricBlock>& blocks() const { return blocks_; }
  bool empty() const { return blocks_.empty(); }

  friend bool operator==(const ParametricWord&, const ParametricWord&) = default;

 private:
  std::vector<ParametricBlock> blocks_;
};

std::string format_parametric_word(const ParametricWord& pw);

/// Equalities (form = 0) and inequalities (form != 0) on the parameters.
///
/// Reasoning is linear over the rationals: a form is forced zero when it lies
/// in the span of the equalities, and forced nonzero when modulo that span it
/// reduces to a nonzero constant or to a nonzero multiple of an inequality.
class ConstraintSet {
 public:
  ConstraintSet() = default;

  const std::vector<LinearForm>& equalities() const { return equalities_; }
  const std::vector<LinearForm>& inequalities() const { return inequalities_; }

  ConstraintSet with_equality(const LinearForm& f) const;
  ConstraintSet with_inequality(const LinearForm& f) const;

  /// False when the equalities imply 1 = 0 or force an inequality to zero.
  bool consistent() const { return consistent_; }
  bool forced_zero(const LinearForm& f) const;
  bool forced_nonzero(const LinearForm& f) const;
  bool satisfied_by(const ParamPoint& p) const;
  /// Number of independent equalities.
  std::size_t equality_rank() const { return basis_.size(); }

 private:
  using Row = std::array<std::int64_t, kParamCount + 1>;
  Row remainder(const LinearForm& f) const;
  void absorb_equality(const LinearForm& f);
  void recheck();

  std::vector<LinearForm> equalities_;
  std::vector<LinearForm> inequalities_;
  std::vector<Row> basis_;  // reduced echelon rows over the equalities
  bool consistent_ = true;
};

std::string format_constraints(const ConstraintSet& c);

enum class LeafStatus { success, failure };

struct CaseLeaf {
  LeafStatus status = LeafStatus::failure;
  ConstraintSet constraints;
  /// The word left at the leaf: empty on success, all blocks forced nonzero
  /// on failure.
  ParametricWord residual;
};

/// Rank-4 word over a, b, c, d to its power-substituted image.
ParametricWord substitute_powers(const Word& w);

/// Leaves of the case tree in depth-first order, zero branch first.
std::vector<CaseLeaf> parametric_reduce(const ParametricWord& pw, const ConstraintSet& ctx = {});

Word numeric_substitute(const ParametricWord& pw, const ParamPoint& params);

}  // namespace corank::freegroup
