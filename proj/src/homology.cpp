#include "corank/homology.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace corank::homology {

namespace {

std::int64_t to_int64(const Integer& v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("integer does not fit in 64 bits");
  return static_cast<std::int64_t>(v);
}

Integer abs_of(const Integer& v) { return v < 0 ? Integer(-v) : v; }

}  // namespace

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntegerMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

IntVector IntegerMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = to_int64(at(r, c));
  return v;
}

IntVector IntegerMatrix::apply(std::span<const std::int64_t> v) const {
  if (v.size() != cols_) throw std::invalid_argument("vector length does not match matrix");
  IntVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Integer acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc += at(r, c) * v[c];
    out[r] = to_int64(acc);
  }
  return out;
}

bool IntegerMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (at(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

bool IntegerMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  IntegerMatrix p(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) p.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return p;
}

IntegerMatrix operator-(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix difference shape mismatch");
  IntegerMatrix d(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) d.at(r, c) = a.at(r, c) - b.at(r, c);
  return d;
}

std::string format_matrix(const IntegerMatrix& m) {
  std::ostringstream os;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m.at(r, c);
    os << '\n';
  }
  return os.str();
}

namespace {

// Bareiss elimination in place; returns the rank and the sign of the row
// permutation used.
std::pair<std::size_t, int> bareiss(IntegerMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m.at(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t k = 0; k < cols; ++k) std::swap(m.at(p, k), m.at(r, k));
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        m.at(i, k) = (m.at(r, c) * m.at(i, k) - m.at(i, c) * m.at(r, k)) / prev;
      }
      m.at(i, c) = 0;
    }
    prev = m.at(r, c);
    ++r;
  }
  return {r, sign};
}

}  // namespace

std::size_t rank(const IntegerMatrix& m) {
  IntegerMatrix work = m;
  return bareiss(work).first;
}

Integer determinant(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  IntegerMatrix work = m;
  auto [r, sign] = bareiss(work);
  if (r < m.rows()) return 0;
  return sign * work.at(m.rows() - 1, m.cols() - 1);
}

IntegerMatrix symplectic_matrix(int genus) {
  if (genus < 0) throw std::invalid_argument("negative genus");
  const auto n = static_cast<std::size_t>(2 * genus);
  IntegerMatrix j(n, n);
  for (std::size_t i = 0; i < n; i += 2) {
    j.at(i, i + 1) = 1;
    j.at(i + 1, i) = -1;
  }
  return j;
}

std::int64_t pairing(std::span<const std::int64_t> u, std::span<const std::int64_t> v) {
  if (u.size() != v.size() || u.size() % 2 != 0) throw std::invalid_argument("pairing needs two vectors of equal even length");
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < u.size(); i += 2) acc += u[i] * v[i + 1] - u[i + 1] * v[i];
  return acc;
}

bool HomologyAction::preserves_pairing() const {
  const IntegerMatrix j = symplectic_matrix(genus());
  return matrix.transpose() * j * matrix == j;
}

HomologyAction transvection(std::span<const std::int64_t> v) {
  if (v.size() % 2 != 0) throw std::invalid_argument("transvection needs an even-length class");
  const std::size_t n = v.size();
  IntegerMatrix m = IntegerMatrix::identity(n);
  // M = I + v (J v)^T
  std::vector<std::int64_t> jv(n);
  for (std::size_t i = 0; i < n; i += 2) {
    jv[i] = v[i + 1];
    jv[i + 1] = -v[i];
  }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m.at(r, c) += Integer(v[r]) * jv[c];
  return {m};
}

HomologyAction compose(const HomologyAction& outer, const HomologyAction& inner) {
  return {outer.matrix * inner.matrix};
}

bool is_torelli(const HomologyAction& act) { return act.matrix.is_identity(); }

std::size_t fixed_rank(const HomologyAction& act) {
  const auto n = act.matrix.rows();
  return n - rank(act.matrix - IntegerMatrix::identity(n));
}

SmithForm smith_normal_form(const IntegerMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  IntegerMatrix d = a;
  IntegerMatrix u = IntegerMatrix::identity(m);
  IntegerMatrix v = IntegerMatrix::identity(n);

  auto swap_rows = [&](std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t c = 0; c < n; ++c) std::swap(d.at(i, c), d.at(k, c));
    for (std::size_t c = 0; c < m; ++c) std::swap(u.at(i, c), u.at(k, c));
  };
  auto swap_cols = [&](std::size_t j, std::size_t k) {
    if (j == k) return;
    for (std::size_t r = 0; r < m; ++r) std::swap(d.at(r, j), d.at(r, k));
    for (std::size_t r = 0; r < n; ++r) std::swap(v.at(r, j), v.at(r, k));
  };
  // row_i += q * row_k
  auto add_row = [&](std::size_t i, std::size_t k, const Integer& q) {
    for (std::size_t c = 0; c < n; ++c) d.at(i, c) += q * d.at(k, c);
    for (std::size_t c = 0; c < m; ++c) u.at(i, c) += q * u.at(k, c);
  };
  // col_j += q * col_k
  auto add_col = [&](std::size_t j, std::size_t k, const Integer& q) {
    for (std::size_t r = 0; r < m; ++r) d.at(r, j) += q * d.at(r, k);
    for (std::size_t r = 0; r < n; ++r) v.at(r, j) += q * v.at(r, k);
  };

  std::size_t t = 0;
  const std::size_t limit = std::min(m, n);
  while (t < limit) {
    // Smallest nonzero |entry| in the trailing block, first in row-major order.
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (d.at(i, j) != 0 && (!best || abs_of(d.at(i, j)) < abs_of(d.at(best->first, best->second)))) best = {{i, j}};
    if (!best) break;
    swap_rows(t, best->first);
    swap_cols(t, best->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d.at(i, t) == 0) continue;
        add_row(i, t, Integer(-(d.at(i, t) / d.at(t, t))));
        if (d.at(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d.at(t, j) == 0) continue;
        add_col(j, t, Integer(-(d.at(t, j) / d.at(t, t))));
        if (d.at(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder is now smaller than the pivot; promote the smallest.
        std::pair<std::size_t, std::size_t> pick{t, t};
        for (std::size_t i = t + 1; i < m; ++i)
          if (d.at(i, t) != 0 && abs_of(d.at(i, t)) < abs_of(d.at(pick.first, pick.second))) pick = {i, t};
        for (std::size_t j = t + 1; j < n; ++j)
          if (d.at(t, j) != 0 && abs_of(d.at(t, j)) < abs_of(d.at(pick.first, pick.second))) pick = {t, j};
        swap_rows(t, pick.first);
        swap_cols(t, pick.second);
        continue;
      }
      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < m && !offender; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            offender = i;
            break;
          }
      if (!offender) break;
      add_row(t, *offender, Integer(1));
    }
    if (d.at(t, t) < 0) add_row(t, t, Integer(-2));
    ++t;
  }

  SmithForm out;
  out.rank = t;
  out.diagonal.reserve(limit);
  for (std::size_t i = 0; i < limit; ++i) out.diagonal.push_back(d.at(i, i));
  out.left = std::move(u);
  out.right = std::move(v);
  return out;
}

IsotropicCheck isotropic_rank_check(const std::vector<IntVector>& classes) {
  IsotropicCheck out;
  if (classes.empty()) {
    out.isotropic = true;
    return out;
  }
  const std::size_t n = classes.front().size();
  out.isotropic = true;
  for (std::size_t i = 0; i < classes.size() && out.isotropic; ++i)
    for (std::size_t k = i + 1; k < classes.size(); ++k)
      if (pairing(classes[i], classes[k]) != 0) {
        out.isotropic = false;
        break;
      }
  out.rank = rank(IntegerMatrix::from_rows(classes, n));
  if (out.isotropic && out.rank > n / 2) {
    throw std::logic_error("isotropic span exceeds half the dimension");
  }
  return out;
}

std::vector<std::uint8_t> mod2(std::span<const std::int64_t> v) {
  std::vector<std::uint8_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<std::uint8_t>(((v[i] % 2) + 2) % 2);
  return out;
}

IntegerMatrix mod2(const IntegerMatrix& m) {
  IntegerMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      Integer x = m.at(r, c) % 2;
      if (x < 0) x += 2;
      out.at(r, c) = x;
    }
  return out;
}

std::optional<AffineLattice> solve_integer_system(const IntegerMatrix& a, std::span<const std::int64_t> b) {
  if (b.size() != a.rows()) throw std::invalid_argument("right-hand side length mismatch");
  const SmithForm s = smith_normal_form(a);
  const std::size_t m = a.rows(), n = a.cols();
  // D y = U b, x = V y
  std::vector<Integer> ub(m, Integer(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) ub[i] += s.left.at(i, k) * b[k];
  std::vector<Integer> y(n, Integer(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (i < s.rank) {
      if (ub[i] % s.diagonal[i] != 0) return std::nullopt;
      y[i] = ub[i] / s.diagonal[i];
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  AffineLattice out;
  out.particular.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    Integer acc = 0;
    for (std::size_t c = 0; c < n; ++c) acc += s.right.at(r, c) * y[c];
    out.particular[r] = to_int64(acc);
  }
  for (std::size_t c = s.rank; c < n; ++c) out.kernel_basis.push_back(s.right.column(c));
  return out;
}

}  // namespace corank::homology
