#include "corank/parametric.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace corank::freegroup {

namespace {

std::int64_t checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("linear form coefficient overflow");
  return static_cast<std::int64_t>(v);
}

std::int64_t abs64(std::int64_t v) { return v < 0 ? -v : v; }

}  // namespace

LinearForm LinearForm::parameter(std::size_t index, std::int64_t coefficient) {
  LinearForm f;
  f.coefficients.at(index) = coefficient;
  return f;
}

bool LinearForm::is_zero() const {
  return constant == 0 &&
         std::all_of(coefficients.begin(), coefficients.end(), [](std::int64_t c) { return c == 0; });
}

std::int64_t LinearForm::evaluate(const ParamPoint& p) const {
  __int128 acc = constant;
  for (std::size_t i = 0; i < kParamCount; ++i) acc += static_cast<__int128>(coefficients[i]) * p[i];
  return checked(acc);
}

LinearForm LinearForm::operator+(const LinearForm& o) const {
  LinearForm r;
  for (std::size_t i = 0; i < kParamCount; ++i) {
    r.coefficients[i] = checked(static_cast<__int128>(coefficients[i]) + o.coefficients[i]);
  }
  r.constant = checked(static_cast<__int128>(constant) + o.constant);
  return r;
}

LinearForm LinearForm::operator-() const { return scaled(-1); }

LinearForm LinearForm::scaled(std::int64_t s) const {
  LinearForm r;
  for (std::size_t i = 0; i < kParamCount; ++i) r.coefficients[i] = checked(static_cast<__int128>(coefficients[i]) * s);
  r.constant = checked(static_cast<__int128>(constant) * s);
  return r;
}

std::string format_form(const LinearForm& f) {
  std::ostringstream os;
  bool first = true;
  auto term = [&](std::int64_t c, const std::string& sym) {
    if (c == 0) return;
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    const std::int64_t a = abs64(c);
    if (a != 1 || sym.empty()) os << a;
    os << sym;
    first = false;
  };
  for (std::size_t i = 0; i < kParamCount; ++i) term(f.coefficients[i], std::string(1, kParamNames[i]));
  term(f.constant, "");
  if (first) return "0";
  return os.str();
}

ParametricWord ParametricWord::from_blocks(const std::vector<ParametricBlock>& blocks) {
  ParametricWord pw;
  auto& out = pw.blocks_;
  for (const auto& b : blocks) {
    if (b.exponent.is_zero()) continue;
    if (!out.empty() && out.back().target == b.target) {
      out.back().exponent = out.back().exponent + b.exponent;
      if (out.back().exponent.is_zero()) out.pop_back();
    } else {
      out.push_back(b);
    }
  }
  return pw;
}

std::string format_parametric_word(const ParametricWord& pw) {
  if (pw.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& b : pw.blocks()) {
    if (!first) os << ' ';
    first = false;
    os << (b.target == kTargetX ? 'x' : 'y') << "^(" << format_form(b.exponent) << ')';
  }
  return os.str();
}

// --- ConstraintSet ---------------------------------------------------------

namespace {

using Row = std::array<std::int64_t, kParamCount + 1>;

Row to_row(const LinearForm& f) {
  Row r{};
  for (std::size_t i = 0; i < kParamCount; ++i) r[i] = f.coefficients[i];
  r[kParamCount] = f.constant;
  return r;
}

bool row_zero(const Row& r) {
  return std::all_of(r.begin(), r.end(), [](std::int64_t v) { return v == 0; });
}

std::optional<std::size_t> pivot_of(const Row& r) {
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] != 0) return i;
  }
  return std::nullopt;
}

// Divides out the content and makes the leading entry positive.
void normalize(Row& r) {
  std::int64_t g = 0;
  for (auto v : r) g = std::gcd(g, abs64(v));
  if (g == 0) return;
  const auto p = pivot_of(r);
  const std::int64_t s = r[*p] < 0 ? -g : g;
  for (auto& v : r) v /= s;
}

// r <- scale_r * r - scale_b * b
Row combine(const Row& r, std::int64_t scale_r, const Row& b, std::int64_t scale_b) {
  Row out{};
  for (std::size_t i = 0; i < r.size(); ++i) {
    out[i] = checked(static_cast<__int128>(scale_r) * r[i] - static_cast<__int128>(scale_b) * b[i]);
  }
  normalize(out);
  return out;
}

}  // namespace

ConstraintSet::Row ConstraintSet::remainder(const LinearForm& f) const {
  Row r = to_row(f);
  for (const auto& b : basis_) {
    const std::size_t p = *pivot_of(b);
    if (r[p] != 0) r = combine(r, b[p], b, r[p]);
  }
  normalize(r);
  return r;
}

void ConstraintSet::absorb_equality(const LinearForm& f) {
  Row r = remainder(f);
  if (row_zero(r)) return;
  const std::size_t p = *pivot_of(r);
  if (p == kParamCount) {
    consistent_ = false;  // 1 = 0
    return;
  }
  for (auto& b : basis_) {
    if (b[p] != 0) b = combine(b, r[p], r, b[p]);
  }
  basis_.push_back(r);
  std::sort(basis_.begin(), basis_.end(), [](const Row& x, const Row& y) { return *pivot_of(x) < *pivot_of(y); });
}

void ConstraintSet::recheck() {
  if (!consistent_) return;
  for (const auto& g : inequalities_) {
    if (row_zero(remainder(g))) {
      consistent_ = false;
      return;
    }
  }
}

ConstraintSet ConstraintSet::with_equality(const LinearForm& f) const {
  ConstraintSet c = *this;
  if (std::find(c.equalities_.begin(), c.equalities_.end(), f) == c.equalities_.end()) c.equalities_.push_back(f);
  c.absorb_equality(f);
  c.recheck();
  return c;
}

ConstraintSet ConstraintSet::with_inequality(const LinearForm& f) const {
  ConstraintSet c = *this;
  if (std::find(c.inequalities_.begin(), c.inequalities_.end(), f) == c.inequalities_.end()) c.inequalities_.push_back(f);
  c.recheck();
  return c;
}

bool ConstraintSet::forced_zero(const LinearForm& f) const {
  if (!consistent_) return true;
  return row_zero(remainder(f));
}

bool ConstraintSet::forced_nonzero(const LinearForm& f) const {
  if (!consistent_) return true;
  const Row r = remainder(f);
  if (row_zero(r)) return false;
  if (*pivot_of(r) == kParamCount) return true;  // nonzero constant
  for (const auto& g : inequalities_) {
    if (remainder(g) == r) return true;
  }
  return false;
}

bool ConstraintSet::satisfied_by(const ParamPoint& p) const {
  for (const auto& f : equalities_) {
    if (f.evaluate(p) != 0) return false;
  }
  for (const auto& f : inequalities_) {
    if (f.evaluate(p) == 0) return false;
  }
  return true;
}

namespace {

// Sign flips leave "= 0" and "!= 0" unchanged; show a positive leading term.
LinearForm display_sign(const LinearForm& f) {
  for (auto v : f.coefficients) {
    if (v != 0) return v < 0 ? -f : f;
  }
  return f.constant < 0 ? -f : f;
}

}  // namespace

std::string format_constraints(const ConstraintSet& c) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& f : c.equalities()) {
    os << (first ? "" : ", ") << format_form(display_sign(f)) << " = 0";
    first = false;
  }
  for (const auto& f : c.inequalities()) {
    os << (first ? "" : ", ") << format_form(display_sign(f)) << " != 0";
    first = false;
  }
  os << '}';
  return os.str();
}

// --- substitution and case analysis ---------------------------------------

ParametricWord substitute_powers(const Word& w) {
  if (w.rank() != 4) throw std::invalid_argument("substitute_powers needs a word over a, b, c, d");
  std::vector<ParametricBlock> blocks;
  blocks.reserve(w.blocks().size());
  for (const auto& b : w.blocks()) {
    const int target = b.generator < 2 ? kTargetX : kTargetY;
    blocks.push_back({target, LinearForm::parameter(static_cast<std::size_t>(b.generator), b.exponent)});
  }
  return ParametricWord::from_blocks(blocks);
}

namespace {

// Deletes blocks whose forms vanish under ctx, re-merging neighbours.
ParametricWord drop_forced_zero(ParametricWord pw, const ConstraintSet& ctx) {
  for (;;) {
    const auto& b = pw.blocks();
    auto it = std::find_if(b.begin(), b.end(), [&](const ParametricBlock& x) { return ctx.forced_zero(x.exponent); });
    if (it == b.end()) return pw;
    std::vector<ParametricBlock> rest(b.begin(), it);
    rest.insert(rest.end(), it + 1, b.end());
    pw = ParametricWord::from_blocks(rest);
  }
}

void explore(const ParametricWord& input, const ConstraintSet& ctx, std::vector<CaseLeaf>& out) {
  const ParametricWord pw = drop_forced_zero(input, ctx);
  const auto& b = pw.blocks();
  auto it = std::find_if(b.begin(), b.end(), [&](const ParametricBlock& x) { return !ctx.forced_nonzero(x.exponent); });
  if (it == b.end()) {
    out.push_back({pw.empty() ? LeafStatus::success : LeafStatus::failure, ctx, pw});
    return;
  }
  const LinearForm f = it->exponent;
  if (auto zero = ctx.with_equality(f); zero.consistent()) explore(pw, zero, out);
  if (auto nonzero = ctx.with_inequality(f); nonzero.consistent()) explore(pw, nonzero, out);
}

}  // namespace

std::vector<CaseLeaf> parametric_reduce(const ParametricWord& pw, const ConstraintSet& ctx) {
  if (!ctx.consistent()) throw std::invalid_argument("parametric_reduce needs a consistent context");
  std::vector<CaseLeaf> leaves;
  explore(pw, ctx, leaves);
  return leaves;
}

Word numeric_substitute(const ParametricWord& pw, const ParamPoint& params) {
  std::vector<Block> letters;
  letters.reserve(pw.blocks().size());
  for (const auto& b : pw.blocks()) letters.push_back({b.target, b.exponent.evaluate(params)});
  return Word::reduce(2, letters);
}

}  // namespace corank::freegroup
