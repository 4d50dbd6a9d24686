#pragma once

// Exact integer linear algebra for first homology of closed surfaces and for
// presentation relation matrices. No floating point anywhere.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace corank::homology {

using Integer = boost::multiprecision::cpp_int;
using IntVector = std::vector<std::int64_t>;

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols);
  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntegerMatrix transpose() const;
  IntVector column(std::size_t c) const;
  IntVector apply(std::span<const std::int64_t> v) const;
  bool is_identity() const;
  bool is_zero() const;

  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
IntegerMatrix operator-(const IntegerMatrix& a, const IntegerMatrix& b);
std::string format_matrix(const IntegerMatrix& m);

/// Rank over the rationals (fraction-free elimination).
std::size_t rank(const IntegerMatrix& m);
Integer determinant(const IntegerMatrix& m);

/// Block-diagonal J with [[0,1],[-1,0]] blocks on a1, b1, ..., ag, bg.
IntegerMatrix symplectic_matrix(int genus);

/// u^T J v.
std::int64_t pairing(std::span<const std::int64_t> u, std::span<const std::int64_t> v);

/// Action of a mapping class on H1 of the genus-g surface, acting on columns.
struct HomologyAction {
  IntegerMatrix matrix;

  int genus() const { return static_cast<int>(matrix.rows() / 2); }
  bool preserves_pairing() const;
};

/// x -> x + pairing(x, v) v.
HomologyAction transvection(std::span<const std::int64_t> v);
HomologyAction compose(const HomologyAction& outer, const HomologyAction& inner);
bool is_torelli(const HomologyAction& act);
/// Rank of the fixed subgroup, i.e. of ker(M - I).
std::size_t fixed_rank(const HomologyAction& act);

struct SmithForm {
  std::vector<Integer> diagonal;  // min(rows, cols) entries, d1 | d2 | ...
  std::size_t rank = 0;
  IntegerMatrix left;   // U, unimodular
  IntegerMatrix right;  // V, unimodular; U * A * V = diag
};

/// Pivot is the smallest nonzero absolute value, ties broken row-major.
SmithForm smith_normal_form(const IntegerMatrix& a);

struct IsotropicCheck {
  bool isotropic = false;
  std::size_t rank = 0;
};

IsotropicCheck isotropic_rank_check(const std::vector<IntVector>& classes);

std::vector<std::uint8_t> mod2(std::span<const std::int64_t> v);
IntegerMatrix mod2(const IntegerMatrix& m);

/// Integer solutions of A x = b as x0 + kernel * t, or nullopt when none.
struct AffineLattice {
  IntVector particular;
  std::vector<IntVector> kernel_basis;
};
std::optional<AffineLattice> solve_integer_system(const IntegerMatrix& a, std::span<const std::int64_t> b);

}  // namespace corank::homology
