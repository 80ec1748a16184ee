#include "commlab/lattice.hpp"

#include <numeric>
#include <sstream>
#include <utility>

#include "commlab/error.hpp"

namespace commlab {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, BigInt(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(Errc::MalformedInput, "ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(Errc::MalformedInput, "row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const BigInt& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const BigInt& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

bool IntMatrix::is_zero() const {
  for (const auto& v : data_)
    if (v != 0) return false;
  return true;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  if (cols_ != other.rows_) throw Error(Errc::MalformedInput, "dimension mismatch");
  IntMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const BigInt& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
    }
  return out;
}

bool IntMatrix::operator==(const IntMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

IntMatrix IntMatrix::stack(const IntMatrix& top, const IntMatrix& bottom) {
  if (top.rows_ && bottom.rows_ && top.cols_ != bottom.cols_) {
    throw Error(Errc::MalformedInput, "column mismatch in stack");
  }
  const std::size_t cols = top.rows_ ? top.cols_ : bottom.cols_;
  IntMatrix out(top.rows_ + bottom.rows_, std::max(cols, std::max(top.cols_, bottom.cols_)));
  for (std::size_t i = 0; i < top.rows_; ++i)
    for (std::size_t j = 0; j < top.cols_; ++j) out(i, j) = top(i, j);
  for (std::size_t i = 0; i < bottom.rows_; ++i)
    for (std::size_t j = 0; j < bottom.cols_; ++j) out(top.rows_ + i, j) = bottom(i, j);
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

IntVector SnfResult::invariant_factors() const {
  IntVector out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(D(i, i));
  return out;
}

namespace {

// Smallest nonzero |entry| in the lower-right block starting at (t, t),
// first in row-major order on ties.
std::optional<std::pair<std::size_t, std::size_t>> find_pivot(const IntMatrix& d,
                                                              std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  BigInt best_abs;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      if (d(i, j) == 0) continue;
      BigInt a = abs(d(i, j));
      if (!best || a < best_abs) {
        best = {i, j};
        best_abs = a;
      }
    }
  return best;
}

BigInt trunc_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& m) {
  SnfResult r{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()), 0};
  IntMatrix& d = r.D;
  const std::size_t limit = std::min(d.rows(), d.cols());

  for (std::size_t t = 0; t < limit; ++t) {
    bool have_pivot = false;
    while (true) {
      auto pivot = find_pivot(d, t);
      if (!pivot) break;
      have_pivot = true;
      d.swap_rows(t, pivot->first);
      r.U.swap_rows(t, pivot->first);
      d.swap_cols(t, pivot->second);
      r.V.swap_cols(t, pivot->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < d.rows(); ++i) {
        if (d(i, t) == 0) continue;
        BigInt q = -trunc_div(d(i, t), d(t, t));
        d.add_row_multiple(i, t, q);
        r.U.add_row_multiple(i, t, q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < d.cols(); ++j) {
        if (d(t, j) == 0) continue;
        BigInt q = -trunc_div(d(t, j), d(t, t));
        d.add_col_multiple(j, t, q);
        r.V.add_col_multiple(j, t, q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Row and column t are clear; enforce divisibility on the rest.
      bool divisible = true;
      for (std::size_t i = t + 1; i < d.rows() && divisible; ++i)
        for (std::size_t j = t + 1; j < d.cols(); ++j) {
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            d.add_row_multiple(t, i, 1);
            r.U.add_row_multiple(t, i, 1);
            divisible = false;
            break;
          }
        }
      if (divisible) break;
    }
    if (!have_pivot) break;
    if (d(t, t) < 0) {
      d.negate_row(t);
      r.U.negate_row(t);
    }
    r.rank = t + 1;
  }
  return r;
}

BigInt determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(Errc::MalformedInput, "determinant of non-square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      a.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

HermiteLattice::HermiteLattice(const IntMatrix& generators)
    : HermiteLattice(generators, [&] {
        std::vector<std::size_t> order(generators.cols());
        std::iota(order.begin(), order.end(), 0);
        return order;
      }()) {}

HermiteLattice::HermiteLattice(const IntMatrix& generators,
                               std::vector<std::size_t> column_order)
    : dimension_(generators.cols()) {
  if (column_order.size() != dimension_) {
    throw Error(Errc::MalformedInput, "column order size mismatch");
  }
  IntMatrix a = generators;
  std::size_t r = 0;
  for (std::size_t col : column_order) {
    if (r == a.rows()) break;
    while (true) {
      std::optional<std::size_t> best;
      for (std::size_t i = r; i < a.rows(); ++i) {
        if (a(i, col) == 0) continue;
        if (!best || abs(a(i, col)) < abs(a(*best, col))) best = i;
      }
      if (!best) break;
      a.swap_rows(r, *best);
      bool clean = true;
      for (std::size_t i = r + 1; i < a.rows(); ++i) {
        if (a(i, col) == 0) continue;
        a.add_row_multiple(i, r, -trunc_div(a(i, col), a(r, col)));
        if (a(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (r == a.rows() || a(r, col) == 0) continue;
    if (a(r, col) < 0) a.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      a.add_row_multiple(i, r, -floor_div(a(i, col), a(r, col)));
    }
    pivots_.push_back(col);
    ++r;
  }
  for (std::size_t i = 0; i < r; ++i) basis_.push_back(a.row(i));
}

IntVector HermiteLattice::reduce(IntVector v) const {
  if (v.size() != dimension_) throw Error(Errc::MalformedInput, "vector dimension mismatch");
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const std::size_t col = pivots_[i];
    BigInt q = floor_div(v[col], basis_[i][col]);
    if (q == 0) continue;
    for (std::size_t j = 0; j < dimension_; ++j) v[j] -= q * basis_[i][j];
  }
  return v;
}

bool HermiteLattice::contains(const IntVector& v) const {
  for (const auto& x : reduce(v))
    if (x != 0) return false;
  return true;
}

std::optional<IntVector> solve_left(const IntMatrix& m, const IntVector& target) {
  if (target.size() != m.cols()) throw Error(Errc::MalformedInput, "target dimension mismatch");
  const SnfResult snf = smith_normal_form(m);
  // c M = target  <=>  (c U^-1) D = target V
  IntVector y(m.cols(), BigInt(0));
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t k = 0; k < m.cols(); ++k) y[j] += target[k] * snf.V(k, j);
  IntVector z(m.rows(), BigInt(0));
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (j < snf.rank) {
      if (!mpz_divisible_p(y[j].get_mpz_t(), snf.D(j, j).get_mpz_t())) return std::nullopt;
      z[j] = y[j] / snf.D(j, j);
    } else if (y[j] != 0) {
      return std::nullopt;
    }
  }
  IntVector c(m.rows(), BigInt(0));
  for (std::size_t j = 0; j < m.rows(); ++j)
    for (std::size_t k = 0; k < m.rows(); ++k) c[j] += z[k] * snf.U(k, j);
  return c;
}

QuotientInvariants quotient_invariants(const IntMatrix& ambient_relations,
                                       const IntMatrix& subgroup_gens) {
  const IntMatrix all = IntMatrix::stack(ambient_relations, subgroup_gens);
  const SnfResult snf = smith_normal_form(all);
  QuotientInvariants q;
  q.free_rank = all.cols() - snf.rank;
  for (const auto& d : snf.invariant_factors())
    if (d >= 2) q.torsion.push_back(d);
  return q;
}

std::optional<BigInt> subgroup_index(const IntMatrix& ambient_relations,
                                     const IntMatrix& subgroup_gens) {
  const QuotientInvariants q = quotient_invariants(ambient_relations, subgroup_gens);
  if (q.free_rank > 0) return std::nullopt;
  BigInt index = 1;
  for (const auto& d : q.torsion) index *= d;
  return index;
}

IntMatrix ladder_relations(std::size_t n) {
  IntMatrix m(n, n + 1);
  for (std::size_t k = 1; k <= n; ++k) {
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, k);
    m(k - 1, 0) = p;
    m(k - 1, k) = -2;
  }
  return m;
}

}  // namespace commlab
