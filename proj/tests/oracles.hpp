#ifndef BRNR_TEST_ORACLES_HPP
#define BRNR_TEST_ORACLES_HPP

// Independent oracles used by the test suites. These deliberately avoid the
// library's cochain/solver machinery: cocycle conditions and coboundaries are
// evaluated from scratch on dense value tables.

#include <map>
#include <set>
#include <vector>

#include "gmodule.hpp"

namespace brnr_oracle {

using brnr::Elt;
using brnr::GModule;
using brnr::GroupPtr;
using brnr::i64;

// order-dividing census of (+) Z/f_i: number of elements x with k*x = 0
inline i64 census(const std::vector<i64>& factors, i64 k) {
  i64 c = 1;
  for (i64 f : factors) c *= brnr::gcd_i64(f, k);
  return c;
}

// Exhaustive enumeration of H^i(G, M) for tiny inputs. Returns the order of
// H^i and the order-dividing census for every divisor k of the exponent.
struct ExhaustiveResult {
  i64 order = 1;
  std::map<i64, i64> order_census;  // k -> #elements of H with k*x = 0
};

inline ExhaustiveResult exhaustive_cohomology(const GroupPtr& G, const GModule& M, int degree,
                                              double max_space = double(1 << 20)) {
  int n = G->order();
  int r = M.rank();
  const auto& f = M.factors();
  int slots_i = degree == 0 ? 1 : (degree == 1 ? n - 1 : (n - 1) * (n - 1));
  int slots_lo = degree <= 1 ? 0 : (degree == 1 ? 1 : n - 1);
  if (degree == 1) slots_lo = 1;
  // cochain spaces as flat vectors of length slots*r
  double space = 1;
  for (int s = 0; s < slots_i; s++)
    for (int j = 0; j < r; j++) space *= double(f[j]);
  if (space > max_space) throw std::runtime_error("oracle space too large");

  auto idx2 = [&](Elt g, Elt h) { return ((g - 1) * (n - 1) + (h - 1)) * r; };
  auto val = [&](const std::vector<i64>& c, int degree_c, Elt g, Elt h) {
    std::vector<i64> out(r, 0);
    if (degree_c == 1) {
      if (g == 0) return out;
      for (int j = 0; j < r; j++) out[j] = c[(g - 1) * r + j];
      return out;
    }
    if (g == 0 || h == 0) return out;
    for (int j = 0; j < r; j++) out[j] = c[idx2(g, h) + j];
    return out;
  };
  auto is_cocycle = [&](const std::vector<i64>& c) {
    if (degree == 0) {
      for (Elt g = 0; g < n; g++) {
        auto t = M.apply(g, c);
        for (int j = 0; j < r; j++)
          if (brnr::mod_floor(t[j] - c[j], f[j]) != 0) return false;
      }
      return true;
    }
    if (degree == 1) {
      for (Elt g = 0; g < n; g++)
        for (Elt h = 0; h < n; h++) {
          auto t = M.apply(g, val(c, 1, h, 0));
          auto vg = val(c, 1, g, 0), vgh = val(c, 1, G->mult(g, h), 0);
          for (int j = 0; j < r; j++)
            if (brnr::mod_floor(t[j] - vgh[j] + vg[j], f[j]) != 0) return false;
        }
      return true;
    }
    for (Elt g = 0; g < n; g++)
      for (Elt h = 0; h < n; h++)
        for (Elt k = 0; k < n; k++) {
          auto t = M.apply(g, val(c, 2, h, k));
          auto a = val(c, 2, G->mult(g, h), k);
          auto b = val(c, 2, g, G->mult(h, k));
          auto d = val(c, 2, g, h);
          for (int j = 0; j < r; j++)
            if (brnr::mod_floor(t[j] - a[j] + b[j] - d[j], f[j]) != 0) return false;
        }
    return true;
  };
  // enumerate coboundaries
  std::set<std::vector<i64>> bset;
  {
    int lo_len = degree == 0 ? 0 : (degree == 1 ? r : (n - 1) * r);
    std::vector<i64> u(lo_len, 0);
    auto lo_mod = [&](int pos) { return f[pos % r]; };
    for (;;) {
      std::vector<i64> img(slots_i * r, 0);
      if (degree == 1) {
        for (Elt g = 1; g < n; g++) {
          auto t = M.apply(g, u);
          for (int j = 0; j < r; j++)
            img[(g - 1) * r + j] = brnr::mod_floor(t[j] - u[j], f[j]);
        }
      } else if (degree == 2) {
        for (Elt g = 1; g < n; g++)
          for (Elt h = 1; h < n; h++) {
            auto t = M.apply(g, val(u, 1, h, 0));
            auto vg = val(u, 1, g, 0), vgh = val(u, 1, G->mult(g, h), 0);
            for (int j = 0; j < r; j++)
              img[idx2(g, h) + j] = brnr::mod_floor(t[j] - vgh[j] + vg[j], f[j]);
          }
      }
      bset.insert(img);
      if (lo_len == 0) break;
      int c = 0;
      while (c < lo_len) {
        if (++u[c] < lo_mod(c)) break;
        u[c] = 0;
        c++;
      }
      if (c == lo_len) break;
    }
  }
  // enumerate cocycles and group them
  std::vector<std::vector<i64>> zlist;
  {
    std::vector<i64> c(slots_i * r, 0);
    auto cmod = [&](int pos) { return f[pos % r]; };
    for (;;) {
      if (is_cocycle(c)) zlist.push_back(c);
      int t = 0;
      while (t < int(c.size())) {
        if (++c[t] < cmod(t)) break;
        c[t] = 0;
        t++;
      }
      if (t == int(c.size())) break;
      if (c.empty()) break;
    }
    if (slots_i * r == 0) zlist.push_back({});
  }
  ExhaustiveResult res;
  res.order = i64(zlist.size()) / i64(bset.size());
  i64 expo = M.exponent();
  for (i64 k = 1; k <= expo; k++) {
    if (expo % k) continue;
    i64 cnt = 0;
    for (auto& z : zlist) {
      std::vector<i64> kz(z.size());
      for (size_t i = 0; i < z.size(); i++) kz[i] = brnr::mod_floor(k * z[i], f[i % r]);
      if (bset.count(kz)) cnt++;
    }
    res.order_census[k] = cnt / i64(bset.size());
  }
  return res;
}

// Periodic-resolution oracle for cyclic groups: H^2 = ker(A - 1)/im(N),
// H^1 = ker(N)/im(A - 1), H^0 = ker(A - 1), with N the norm.
// Returns invariant factors (no 1s).
std::vector<i64> cyclic_cohomology(const GroupPtr& G, const GModule& M, int degree);

inline std::vector<i64> cyclic_cohomology(const GroupPtr& G, const GModule& M, int degree) {
  using namespace brnr;
  int m = G->order();
  int r = M.rank();
  if (r == 0) return {};
  // find a generator of the cyclic group
  Elt gen = 0;
  for (Elt a = 0; a < m; a++)
    if (G->element_order(a) == m) {
      gen = a;
      break;
    }
  Mat A(r, r), N(r, r);
  {
    const Mat& ag = M.act(gen);
    A = ag;
    Elt p = 0;
    for (int i = 0; i < m; i++) {
      const Mat& ap = M.act(p);
      for (int x = 0; x < r; x++)
        for (int y = 0; y < r; y++)
          N.at(x, y) = mod_floor(N.at(x, y) + ap.at(x, y), M.factors()[x]);
      p = G->mult(p, gen);
    }
  }
  Mat Am(r, r);
  for (int i = 0; i < r; i++)
    for (int j = 0; j < r; j++)
      Am.at(i, j) = mod_floor(A.at(i, j) - (i == j ? 1 : 0), M.factors()[i]);
  i64 nstar = M.exponent();
  auto lift_rows = [&](const Mat& X) {
    std::vector<std::vector<i64>> rows;
    for (int i = 0; i < r; i++) {
      std::vector<i64> row(r);
      for (int j = 0; j < r; j++)
        row[j] = mod_floor(X.at(i, j) * (nstar / M.factors()[i]), nstar);
      rows.push_back(std::move(row));
    }
    return rows;
  };
  const Mat* kermat = degree == 1 ? &N : &Am;
  const Mat* immat = degree == 1 ? &Am : &N;
  Mat K = kernel_mod(lift_rows(*kermat), nstar, M.factors());
  if (degree == 0) {
    std::vector<std::vector<i64>> gens;
    for (int j = 0; j < K.c; j++) {
      std::vector<i64> g(r);
      for (int i = 0; i < r; i++) g[i] = K.at(i, j);
      gens.push_back(g);
    }
    auto st = SubgroupLat(M.factors(), gens).structure();
    return st.factors;
  }
  // quotient ker/im
  auto extra = nstar_preimage_gens(K, nstar);
  Mat X(r, 2 * r + int(extra.size()));
  for (size_t j = 0; j < extra.size(); j++)
    for (int i = 0; i < r; i++) X.at(i, 2 * r + int(j)) = extra[j][i];
  for (int j = 0; j < r; j++) {
    std::vector<i64> col(r);
    for (int i = 0; i < r; i++) col[i] = immat->at(i, j);
    auto w = lattice_solve(K, col, nstar);
    if (!w) throw std::runtime_error("cyclic oracle: image not in kernel");
    for (int i = 0; i < r; i++) X.at(i, j) = (*w)[i];
    std::vector<i64> dcol(r, 0);
    dcol[j] = M.factors()[j];
    auto wd = lattice_solve(K, dcol, nstar);
    if (!wd) throw std::runtime_error("cyclic oracle: moduli not in kernel");
    for (int i = 0; i < r; i++) X.at(i, r + j) = (*wd)[i];
  }
  auto q = snf_lattice(X, nstar);
  std::vector<i64> out;
  for (i64 f : q.factors)
    if (f > 1) out.push_back(f);
  return out;
}

}  // namespace brnr_oracle

#endif
