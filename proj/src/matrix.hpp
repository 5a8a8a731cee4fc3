#ifndef BRNR_MATRIX_HPP
#define BRNR_MATRIX_HPP

#include <optional>
#include <vector>

#include "common.hpp"

namespace brnr {

// Dense integer matrix, row-major.
struct Mat {
  int r = 0, c = 0;
  std::vector<i64> a;

  Mat() = default;
  Mat(int rows, int cols) : r(rows), c(cols), a(size_t(rows) * cols, 0) {}
  i64& at(int i, int j) { return a[size_t(i) * c + j]; }
  i64 at(int i, int j) const { return a[size_t(i) * c + j]; }
  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; i++) m.at(i, i) = 1;
    return m;
  }
  bool operator==(const Mat& o) const { return r == o.r && c == o.c && a == o.a; }
};

Mat mat_mul(const Mat& A, const Mat& B);

// U*A*V = S with U, V unimodular and S diagonal, diag entries >= 0 forming a
// divisibility chain d1 | d2 | ...  Exact arithmetic; throws Err::Overflow if
// intermediate entries leave the 64-bit range.
struct SnfResult {
  Mat U, S, V;
};
SnfResult smith_normal_form(const Mat& A);

// Invariant factors and row transform for the column lattice of `cols` plus
// nstar*Z^rows.  Entries stay bounded by nstar throughout.  U is the row
// transform: invariant factor i belongs to the coordinate row Uinv column i.
// U and Uinv are stored reduced mod nstar (U*Uinv == I mod nstar), which is
// exact for every consumer since all factors divide nstar.
struct LatticeSnf {
  std::vector<i64> factors;  // length = rows, divisibility chain
  Mat U, Uinv;
};
LatticeSnf snf_lattice(const Mat& cols, i64 nstar);

// Canonical basis of the sublattice of Z^L spanned by `cols` together with
// diag(moduli).  Lower triangular L x L, positive pivots, entries below a
// pivot reduced into [0, pivot).
Mat lattice_hnf(const std::vector<std::vector<i64>>& cols, const std::vector<i64>& moduli);

// Solve B*x == v modulo nstar*Z^L for lower-triangular canonical B whose
// column lattice contains nstar*Z^L; nullopt if v is not in the lattice.
// Exactness modulo nstar is enough everywhere the solution is consumed: the
// lattices in play always contain nstar*Z^L, so an nstar-multiple discrepancy
// stays inside them.
std::optional<std::vector<i64>> lattice_solve(const Mat& B, const std::vector<i64>& v,
                                              i64 nstar);

// Generators of {x : B*x == 0 mod nstar}, i.e. of B^{-1}(nstar Z^L).  Used to
// repair lattices expressed through the modular lattice_solve: solutions are
// only determined modulo this sublattice, which always sits inside the lattice
// being expressed.
std::vector<std::vector<i64>> nstar_preimage_gens(const Mat& b, i64 nstar);

// Incremental row reduction of a homogeneous system over Z/n.  Rows are
// normalized so that every pivot divides n.
class EchelonModN {
 public:
  EchelonModN(int cols, i64 n) : cols_(cols), n_(n), pivot_row_(cols, -1) {}
  void add_row(std::vector<i64> row);
  int rank() const { return int(rows_.size()); }
  const std::vector<std::vector<i64>>& rows() const { return rows_; }
  i64 modulus() const { return n_; }
  int cols() const { return cols_; }

 private:
  int cols_;
  i64 n_;
  std::vector<std::vector<i64>> rows_;  // each has a pivot; kept in insertion form
  std::vector<int> pivot_row_;          // column -> index into rows_, or -1
};

// Kernel of the system {row . x == 0 mod n} as a sublattice of Z^L containing
// diag(src_moduli); requires every row to define a homomorphism out of
// (+) Z/src_moduli[j], i.e. row[j]*src_moduli[j] == 0 mod n.
Mat kernel_mod(const std::vector<std::vector<i64>>& rows, i64 n,
               const std::vector<i64>& src_moduli);

// Particular solution of {row_i . x == rhs_i mod n}, x taken modulo
// src_moduli; nullopt if the system is inconsistent.
std::optional<std::vector<i64>> solve_mod(const std::vector<std::vector<i64>>& rows,
                                          const std::vector<i64>& rhs, i64 n,
                                          const std::vector<i64>& src_moduli);

// Subgroup of a finite abelian group (+)_i Z/moduli[i], kept as the canonical
// HNF basis of the corresponding lattice.
class SubgroupLat {
 public:
  SubgroupLat() = default;
  SubgroupLat(std::vector<i64> moduli, const std::vector<std::vector<i64>>& gens)
      : moduli_(std::move(moduli)), basis_(lattice_hnf(gens, moduli_)) {}

  static SubgroupLat zero(std::vector<i64> moduli) {
    return SubgroupLat(std::move(moduli), {});
  }
  static SubgroupLat full(std::vector<i64> moduli) {
    int n = int(moduli.size());
    std::vector<std::vector<i64>> id;
    for (int i = 0; i < n; i++) {
      std::vector<i64> e(n, 0);
      e[i] = 1;
      id.push_back(e);
    }
    return SubgroupLat(std::move(moduli), id);
  }

  const std::vector<i64>& moduli() const { return moduli_; }
  const Mat& basis() const { return basis_; }
  int ambient_rank() const { return int(moduli_.size()); }

  bool contains(const std::vector<i64>& v) const;
  bool is_zero() const;
  // semantic equality: the same subgroup of the same ambient group
  bool operator==(const SubgroupLat& o) const;

  SubgroupLat intersect(const SubgroupLat& other) const;
  bool contains_subgroup(const SubgroupLat& other) const;

  // order, invariant factors (without 1s) and matching generators.
  struct Structure {
    i64 order = 1;
    std::vector<i64> factors;
    std::vector<std::vector<i64>> gens;  // ambient coordinates, reduced
  };
  Structure structure() const;

 private:
  std::vector<i64> moduli_;
  Mat basis_;  // canonical, lower triangular
};

}  // namespace brnr

#endif
