#include "matrix.hpp"

#include <algorithm>
#include <cstdlib>

namespace brnr {

Mat mat_mul(const Mat& A, const Mat& B) {
  if (A.c != B.r) fail(Err::Internal, "mat_mul shape");
  Mat R(A.r, B.c);
  for (int i = 0; i < A.r; i++)
    for (int k = 0; k < A.c; k++) {
      i64 v = A.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < B.c; j++) R.at(i, j) = ck_add(R.at(i, j), ck_mul(v, B.at(k, j)));
    }
  return R;
}

namespace {

void row_op(Mat& M, int dst, int src, i64 q) {  // row dst -= q*row src
  for (int j = 0; j < M.c; j++) M.at(dst, j) = ck_sub(M.at(dst, j), ck_mul(q, M.at(src, j)));
}
void col_op(Mat& M, int dst, int src, i64 q) {
  for (int i = 0; i < M.r; i++) M.at(i, dst) = ck_sub(M.at(i, dst), ck_mul(q, M.at(i, src)));
}
void swap_rows(Mat& M, int a, int b) {
  for (int j = 0; j < M.c; j++) std::swap(M.at(a, j), M.at(b, j));
}
void swap_cols(Mat& M, int a, int b) {
  for (int i = 0; i < M.r; i++) std::swap(M.at(i, a), M.at(i, b));
}

}  // namespace

SnfResult smith_normal_form(const Mat& A) {
  SnfResult res;
  res.S = A;
  res.U = Mat::identity(A.r);
  res.V = Mat::identity(A.c);
  Mat& S = res.S;
  int n = std::min(A.r, A.c);
  for (int t = 0; t < n; t++) {
    int pi = -1, pj = -1;
    i64 best = 0;
    for (int i = t; i < S.r; i++)
      for (int j = t; j < S.c; j++) {
        i64 v = S.at(i, j) < 0 ? -S.at(i, j) : S.at(i, j);
        if (v != 0 && (pi < 0 || v < best)) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;  // rest is zero
    swap_rows(S, t, pi);
    swap_rows(res.U, t, pi);
    swap_cols(S, t, pj);
    swap_cols(res.V, t, pj);
    if (S.at(t, t) < 0) {
      for (int j = 0; j < S.c; j++) S.at(t, j) = -S.at(t, j);
      for (int j = 0; j < res.U.c; j++) res.U.at(t, j) = -res.U.at(t, j);
    }
    for (;;) {
      bool clean = true;
      for (int i = t + 1; i < S.r; i++) {
        if (S.at(i, t) == 0) continue;
        i64 q = floor_div(S.at(i, t), S.at(t, t));
        row_op(S, i, t, q);
        row_op(res.U, i, t, q);
        if (S.at(i, t) != 0) {  // remainder beats the pivot: promote it
          swap_rows(S, t, i);
          swap_rows(res.U, t, i);
          clean = false;
        }
      }
      if (!clean) continue;
      for (int j = t + 1; j < S.c; j++) {
        if (S.at(t, j) == 0) continue;
        i64 q = floor_div(S.at(t, j), S.at(t, t));
        col_op(S, j, t, q);
        col_op(res.V, j, t, q);
        if (S.at(t, j) != 0) {
          swap_cols(S, t, j);
          swap_cols(res.V, t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      int bi = -1;
      for (int i = t + 1; i < S.r && bi < 0; i++)
        for (int j = t + 1; j < S.c; j++)
          if (S.at(i, j) % S.at(t, t) != 0) {
            bi = i;
            break;
          }
      if (bi < 0) break;
      row_op(S, t, bi, -1);
      row_op(res.U, t, bi, -1);
    }
  }
  return res;
}

LatticeSnf snf_lattice(const Mat& cols, i64 nstar) {
  if (nstar <= 0) fail(Err::Internal, "snf_lattice modulus");
  int L = cols.r;
  // All column operations below preserve the column lattice modulo nstar*Z^L,
  // which is the lattice we are diagonalizing; entries stay in [0, nstar).
  Mat W(L, std::max(cols.c, 1));
  for (int i = 0; i < L; i++)
    for (int j = 0; j < cols.c; j++) W.at(i, j) = mod_floor(cols.at(i, j), nstar);
  LatticeSnf out;
  out.U = Mat::identity(L);
  out.Uinv = Mat::identity(L);
  out.factors.assign(L, nstar);
  // U and Uinv are only ever consumed modulo divisors of nstar, so they are
  // kept reduced mod nstar to bound the entries
  auto urow_op = [&](int dst, int src, i64 q) {
    i64 qm = mod_floor(q, nstar);
    for (int j = 0; j < W.c; j++) W.at(dst, j) = mod_floor(W.at(dst, j) - q * W.at(src, j), nstar);
    for (int j = 0; j < L; j++)
      out.U.at(dst, j) = mod_floor(out.U.at(dst, j) - qm * out.U.at(src, j), nstar);
    for (int i = 0; i < L; i++)
      out.Uinv.at(i, src) = mod_floor(out.Uinv.at(i, src) + qm * out.Uinv.at(i, dst), nstar);
  };
  auto uswap = [&](int a, int b) {
    swap_rows(W, a, b);
    swap_rows(out.U, a, b);
    swap_cols(out.Uinv, a, b);
  };
  for (int t = 0; t < L; t++) {
    for (;;) {
      int pi = -1, pj = -1;
      i64 best = 0;
      for (int i = t; i < L; i++)
        for (int j = t; j < W.c; j++) {
          i64 v = W.at(i, j);
          if (v != 0 && (pi < 0 || v < best)) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) break;  // remaining block is 0 mod nstar: factors stay nstar
      if (pi != t) uswap(t, pi);
      if (pj != t) swap_cols(W, t, pj);
      bool clean = true;
      for (int i = t + 1; i < L; i++) {
        if (W.at(i, t) == 0) continue;
        urow_op(i, t, floor_div(W.at(i, t), W.at(t, t)));
        if (W.at(i, t) != 0) clean = false;
      }
      if (!clean) continue;
      for (int j = t + 1; j < W.c; j++) {
        if (W.at(t, j) == 0) continue;
        i64 q = floor_div(W.at(t, j), W.at(t, t));
        for (int i = t; i < L; i++) W.at(i, j) = mod_floor(W.at(i, j) - q * W.at(i, t), nstar);
        if (W.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // fold nstar into the pivot (the helper lattice nstar*e_t)
      i64 g = gcd_i64(W.at(t, t), nstar);
      W.at(t, t) = g;
      // divisibility chain repair against the remaining block
      int bi = -1;
      for (int i = t + 1; i < L && bi < 0; i++)
        for (int j = t + 1; j < W.c; j++)
          if (W.at(i, j) % g != 0) {
            bi = i;
            break;
          }
      if (bi < 0) {
        out.factors[t] = g;
        break;
      }
      urow_op(t, bi, -1);
    }
    if (W.at(t, t) == 0) out.factors[t] = nstar;
  }
  return out;
}

Mat lattice_hnf(const std::vector<std::vector<i64>>& gens, const std::vector<i64>& moduli) {
  int L = int(moduli.size());
  std::vector<std::vector<i64>> cols;
  cols.reserve(gens.size() + L);
  for (auto& g : gens) {
    if (int(g.size()) != L) fail(Err::Internal, "lattice_hnf gen size");
    std::vector<i64> c(L);
    for (int i = 0; i < L; i++) c[i] = mod_floor(g[i], moduli[i]);
    cols.push_back(std::move(c));
  }
  for (int i = 0; i < L; i++) {
    std::vector<i64> c(L, 0);
    c[i] = moduli[i];
    cols.push_back(std::move(c));
  }
  std::vector<char> active(cols.size(), 1);
  std::vector<int> pivot_col(L, -1);
  for (int r = 0; r < L; r++) {
    int piv = -1;
    for (size_t j = 0; j < cols.size(); j++) {
      if (!active[j] || cols[j][r] == 0) continue;
      if (piv < 0) {
        piv = int(j);
        continue;
      }
      auto& a = cols[piv];
      auto& b = cols[j];
      i64 x, y;
      i64 g = egcd(a[r], b[r], x, y);
      i64 ar = a[r] / g, br = b[r] / g;
      for (int i = r; i < L; i++) {
        i64 na = x * a[i] + y * b[i];
        i64 nb = ar * b[i] - br * a[i];
        a[i] = na;
        b[i] = nb;
      }
      // tails reduced against the still-pristine diag columns
      for (int i = r + 1; i < L; i++) {
        a[i] = mod_floor(a[i], moduli[i]);
        b[i] = mod_floor(b[i], moduli[i]);
      }
      a[r] = g;
      b[r] = 0;
    }
    if (piv < 0) fail(Err::Internal, "lattice_hnf rank");
    active[piv] = 0;
    pivot_col[r] = piv;
  }
  // below-pivot entries are already reduced modulo the coordinate moduli by
  // the elimination; the result is deterministic and triangular, which is all
  // the solvers need (equality of subgroups is tested semantically)
  Mat B(L, L);
  for (int k = 0; k < L; k++) {
    auto& c = cols[pivot_col[k]];
    for (int i = 0; i < L; i++) B.at(i, k) = c[i];
  }
  return B;
}

std::optional<std::vector<i64>> lattice_solve(const Mat& B, const std::vector<i64>& v,
                                              i64 nstar) {
  int L = B.r;
  if (nstar <= 0) fail(Err::Internal, "lattice_solve modulus");
  std::vector<i64> x(L, 0), rem(v);
  for (auto& r : rem) r = mod_floor(r, nstar);
  for (int j = 0; j < L; j++) {
    i64 piv = B.at(j, j);
    if (nstar % piv != 0) fail(Err::Internal, "lattice pivot does not divide the modulus");
    i64 val = mod_floor(rem[j], nstar);
    if (val % piv != 0) return std::nullopt;
    x[j] = val / piv;
    if (x[j] != 0)
      for (int i = j; i < L; i++) rem[i] = mod_floor(rem[i] - x[j] * B.at(i, j), nstar);
  }
  return x;
}

namespace {
// unit w mod n with c*w == gcd(c, n) (mod n)
i64 unit_scale(i64 c, i64 n) {
  c = mod_floor(c, n);
  i64 g = gcd_i64(c, n);
  if (g == 0 || g == n) return 1;
  i64 cp = c / g, np = n / g;
  i64 x, y;
  egcd(mod_floor(cp, np), np, x, y);
  i64 w0 = mod_floor(x, np);
  for (i64 t = 0;; t++) {
    i64 w = mod_floor(w0 + t * np, n);
    if (gcd_i64(w, n) == 1) return w;
  }
}
}  // namespace

void EchelonModN::add_row(std::vector<i64> row) {
  if (int(row.size()) != cols_) fail(Err::Internal, "echelon row size");
  for (auto& v : row) v = mod_floor(v, n_);
  for (int j = 0; j < cols_; j++) {
    if (row[j] == 0) continue;
    int pi = pivot_row_[j];
    if (pi < 0) {
      i64 w = unit_scale(row[j], n_);
      if (w != 1)
        for (auto& v : row) v = mod_floor(v * w, n_);
      rows_.push_back(std::move(row));
      pivot_row_[j] = int(rows_.size()) - 1;
      return;
    }
    auto& prow = rows_[pi];
    i64 p = prow[j];
    if (row[j] % p == 0) {
      i64 q = row[j] / p;
      for (int k = j; k < cols_; k++) row[k] = mod_floor(row[k] - q * prow[k], n_);
    } else {
      i64 x, y;
      i64 g = egcd(p, row[j], x, y);
      i64 pq = p / g, rq = row[j] / g;
      std::vector<i64> npiv(cols_, 0);
      for (int k = j; k < cols_; k++) {
        npiv[k] = mod_floor(x * prow[k] + y * row[k], n_);
        i64 nr = pq * row[k] - rq * prow[k];
        row[k] = mod_floor(nr, n_);
      }
      i64 w = unit_scale(npiv[j], n_);
      if (w != 1)
        for (auto& v : npiv) v = mod_floor(v * w, n_);
      prow = std::move(npiv);
    }
  }
}

Mat kernel_mod(const std::vector<std::vector<i64>>& in_rows, i64 n,
               const std::vector<i64>& src_moduli) {
  int L = int(src_moduli.size());
  EchelonModN ech(L, n);
  for (auto& r : in_rows) ech.add_row(r);
  const auto& rows = ech.rows();
  int K = int(rows.size());
  for (auto& r : rows)
    for (int j = 0; j < L; j++)
      if (mod_floor(r[j] * src_moduli[j], n) != 0)
        fail(Err::Internal, "kernel_mod: system not defined on the source moduli");

  struct Col {
    std::vector<i64> top, bot;
  };
  std::vector<Col> cols(L);
  for (int j = 0; j < L; j++) {
    cols[j].top.assign(K, 0);
    for (int i = 0; i < K; i++) cols[j].top[i] = rows[i][j];
    cols[j].bot.assign(L, 0);
    cols[j].bot[j] = 1;
  }
  for (int i = 0; i < K; i++) {
    int piv = -1;
    for (int j = 0; j < L; j++) {
      if (mod_floor(cols[j].top[i], n) == 0) {
        cols[j].top[i] = 0;
        continue;
      }
      if (piv < 0) {
        piv = j;
        continue;
      }
      auto& a = cols[piv];
      auto& b = cols[j];
      i64 x, y;
      i64 g = egcd(a.top[i], b.top[i], x, y);
      i64 aq = a.top[i] / g, bq = b.top[i] / g;
      for (int k = i; k < K; k++) {
        i64 na = x * a.top[k] + y * b.top[k];
        i64 nb = aq * b.top[k] - bq * a.top[k];
        a.top[k] = mod_floor(na, n);
        b.top[k] = mod_floor(nb, n);
      }
      for (int k = 0; k < L; k++) {
        i64 na = x * a.bot[k] + y * b.bot[k];
        i64 nb = aq * b.bot[k] - bq * a.bot[k];
        a.bot[k] = mod_floor(na, src_moduli[k]);
        b.bot[k] = mod_floor(nb, src_moduli[k]);
      }
      a.top[i] = mod_floor(g, n);
      b.top[i] = 0;
      if (a.top[i] == 0) piv = -1;
    }
    if (piv >= 0) {
      auto& a = cols[piv];
      i64 s = n / gcd_i64(a.top[i], n);
      if (s != 1) {
        for (int k = i; k < K; k++) a.top[k] = mod_floor(a.top[k] * s, n);
        for (int k = 0; k < L; k++) a.bot[k] = mod_floor(a.bot[k] * s, src_moduli[k]);
      }
      a.top[i] = 0;
    }
  }
  std::vector<std::vector<i64>> gens;
  gens.reserve(L);
  for (auto& c : cols) gens.push_back(c.bot);
  return lattice_hnf(gens, src_moduli);
}

std::vector<std::vector<i64>> nstar_preimage_gens(const Mat& b, i64 nstar) {
  int L = b.r;
  std::vector<std::vector<i64>> rows(L, std::vector<i64>(L));
  for (int i = 0; i < L; i++)
    for (int j = 0; j < L; j++) rows[i][j] = mod_floor(b.at(i, j), nstar);
  Mat K = kernel_mod(rows, nstar, std::vector<i64>(L, nstar));
  std::vector<std::vector<i64>> gens;
  for (int j = 0; j < K.c; j++) {
    std::vector<i64> g(L);
    for (int i = 0; i < L; i++) g[i] = K.at(i, j);
    gens.push_back(std::move(g));
  }
  return gens;
}

std::optional<std::vector<i64>> solve_mod(const std::vector<std::vector<i64>>& rows,
                                          const std::vector<i64>& rhs, i64 n,
                                          const std::vector<i64>& src_moduli) {
  int L = int(src_moduli.size());
  std::vector<std::vector<i64>> aug;
  aug.reserve(rows.size());
  for (size_t i = 0; i < rows.size(); i++) {
    std::vector<i64> r = rows[i];
    r.push_back(mod_floor(-rhs[i], n));
    aug.push_back(std::move(r));
  }
  std::vector<i64> srcm = src_moduli;
  srcm.push_back(n);
  Mat B = kernel_mod(aug, n, srcm);
  // a solution is a lattice vector whose last coordinate is 1 mod n
  i64 g = 0;
  std::vector<i64> take(L + 1, 0);
  for (int j = 0; j <= L; j++) {
    i64 c = mod_floor(B.at(L, j), n);
    if (c == 0) continue;
    if (g == 0) {
      g = c;
      take.assign(L + 1, 0);
      take[j] = 1;
    } else {
      i64 x, y;
      i64 ng = egcd(g, c, x, y);
      for (auto& t : take) t = mod_floor(t * x, n);
      take[j] = mod_floor(take[j] + y, n);
      g = ng;
    }
  }
  if (g == 0 || gcd_i64(g, n) != 1) return std::nullopt;
  i64 x, y;
  egcd(mod_floor(g, n), n, x, y);
  i64 u = mod_floor(x, n);
  std::vector<i64> sol(L, 0);
  for (int j = 0; j <= L; j++) {
    i64 yj = mod_floor(take[j] * u, n);
    if (yj == 0) continue;
    for (int i = 0; i < L; i++) sol[i] = mod_floor(sol[i] + yj * B.at(i, j), src_moduli[i]);
  }
  return sol;
}

namespace {
i64 lcm_moduli(const std::vector<i64>& m) {
  i64 n = 1;
  for (i64 v : m) n = lcm_i64(n, v);
  return n == 0 ? 1 : n;
}
}  // namespace

bool SubgroupLat::contains(const std::vector<i64>& v) const {
  return lattice_solve(basis_, v, lcm_moduli(moduli_)).has_value();
}

bool SubgroupLat::is_zero() const {
  for (int i = 0; i < basis_.r; i++)
    for (int j = 0; j < basis_.c; j++)
      if (basis_.at(i, j) != (i == j ? moduli_[i] : 0)) return false;
  return true;
}

bool SubgroupLat::operator==(const SubgroupLat& o) const {
  return moduli_ == o.moduli_ && contains_subgroup(o) && o.contains_subgroup(*this);
}

bool SubgroupLat::contains_subgroup(const SubgroupLat& other) const {
  for (int j = 0; j < other.basis_.c; j++) {
    std::vector<i64> v(basis_.r);
    for (int i = 0; i < basis_.r; i++) v[i] = other.basis_.at(i, j);
    if (!contains(v)) return false;
  }
  return true;
}

SubgroupLat SubgroupLat::intersect(const SubgroupLat& other) const {
  if (moduli_ != other.moduli_) fail(Err::Internal, "intersect moduli mismatch");
  int L = ambient_rank();
  i64 nstar = 1;
  for (i64 m : moduli_) nstar = lcm_i64(nstar, m);
  if (nstar == 0) nstar = 1;
  std::vector<std::vector<i64>> rows;
  for (const SubgroupLat* s : {this, &other}) {
    LatticeSnf q = snf_lattice(s->basis_, nstar);
    for (int i = 0; i < L; i++) {
      if (q.factors[i] == 1) continue;
      i64 lift = nstar / q.factors[i];
      std::vector<i64> r(L);
      for (int j = 0; j < L; j++) r[j] = mod_floor(q.U.at(i, j) * lift, nstar);
      rows.push_back(std::move(r));
    }
  }
  SubgroupLat out;
  out.moduli_ = moduli_;
  out.basis_ = kernel_mod(rows, nstar, moduli_);
  return out;
}

SubgroupLat::Structure SubgroupLat::structure() const {
  int L = ambient_rank();
  Structure st;
  if (L == 0) return st;
  i64 nstar = 1;
  for (i64 m : moduli_) nstar = lcm_i64(nstar, m);
  if (nstar == 0) nstar = 1;
  auto extra = nstar_preimage_gens(basis_, nstar);
  Mat X(L, L + int(extra.size()));
  for (int j = 0; j < L; j++) {
    std::vector<i64> v(L, 0);
    v[j] = moduli_[j];
    auto x = lattice_solve(basis_, v, nstar);
    if (!x) fail(Err::Internal, "subgroup basis does not span moduli");
    for (int i = 0; i < L; i++) X.at(i, j) = (*x)[i];
  }
  for (size_t j = 0; j < extra.size(); j++)
    for (int i = 0; i < L; i++) X.at(i, L + int(j)) = extra[j][i];
  LatticeSnf q = snf_lattice(X, nstar);
  for (int i = 0; i < L; i++) {
    if (q.factors[i] == 1) continue;
    st.order = ck_mul(st.order, q.factors[i]);
    st.factors.push_back(q.factors[i]);
    std::vector<i64> g(L);
    for (int k = 0; k < L; k++) {
      i64 acc = 0;
      for (int t = 0; t < L; t++) acc = ck_add(acc, ck_mul(basis_.at(k, t), q.Uinv.at(t, i)));
      g[k] = mod_floor(acc, moduli_[k]);
    }
    st.gens.push_back(std::move(g));
  }
  return st;
}

}  // namespace brnr
