#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace commlab {

using BigInt = mpz_class;
using IntVector = std::vector<BigInt>;

/// Dense integer matrix with arbitrary-precision entries, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  IntVector row(std::size_t i) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const BigInt& factor);
  void add_col_multiple(std::size_t dst, std::size_t src, const BigInt& factor);
  void negate_row(std::size_t i);

  bool is_zero() const;
  IntMatrix operator*(const IntMatrix& other) const;
  bool operator==(const IntMatrix& other) const;

  /// Rows of `top` followed by rows of `bottom`; column counts must agree.
  static IntMatrix stack(const IntMatrix& top, const IntMatrix& bottom);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// U * M * V = D with D diagonal, d_1 | d_2 | ..., all d_i >= 0, and U, V
/// unimodular.
struct SnfResult {
  IntMatrix D;
  IntMatrix U;
  IntMatrix V;
  std::size_t rank = 0;

  /// The nonzero invariant factors d_1..d_rank.
  IntVector invariant_factors() const;
};

SnfResult smith_normal_form(const IntMatrix& m);

/// Exact determinant by fraction-free elimination; square matrices only.
BigInt determinant(const IntMatrix& m);

/// Row-echelon Hermite basis of the lattice spanned by the rows of a
/// matrix. Pivots are positive and entries above each pivot lie in
/// [0, pivot). `column_order` fixes which column is scanned first.
class HermiteLattice {
 public:
  HermiteLattice() = default;
  HermiteLattice(const IntMatrix& generators, std::vector<std::size_t> column_order);
  explicit HermiteLattice(const IntMatrix& generators);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t rank() const noexcept { return basis_.size(); }
  const std::vector<IntVector>& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivot_columns() const noexcept { return pivots_; }

  /// Canonical representative of v + L; two vectors are congruent modulo
  /// the lattice iff their reductions agree.
  IntVector reduce(IntVector v) const;
  bool contains(const IntVector& v) const;

 private:
  std::size_t dimension_ = 0;
  std::vector<IntVector> basis_;
  std::vector<std::size_t> pivots_;
};

/// Integer row vector c with c * m = target, if one exists.
std::optional<IntVector> solve_left(const IntMatrix& m, const IntVector& target);

/// Index of <subgroup_gens> (plus the relations) in Z^n / <relations>;
/// nullopt when the index is infinite.
std::optional<BigInt> subgroup_index(const IntMatrix& ambient_relations,
                                     const IntMatrix& subgroup_gens);

struct QuotientInvariants {
  std::size_t free_rank = 0;
  IntVector torsion;  // invariant factors >= 2, in divisibility order

  bool operator==(const QuotientInvariants&) const = default;
};

QuotientInvariants quotient_invariants(const IntMatrix& ambient_relations,
                                       const IntMatrix& subgroup_gens);

/// Relation rows 2^k e_0 - 2 e_k, 1 <= k <= n, of the ladder group H_n.
IntMatrix ladder_relations(std::size_t n);

}  // namespace commlab
