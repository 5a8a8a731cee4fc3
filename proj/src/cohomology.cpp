#include "cohomology.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <shared_mutex>

namespace brnr {

Cochain Cochain::zero(const GroupPtr& g, int rank, int degree) {
  Cochain c;
  c.degree = degree;
  c.group = g;
  c.rank = rank;
  size_t n1 = size_t(g->order() - 1);
  size_t slots = degree == 0 ? 1 : (degree == 1 ? n1 : n1 * n1);
  c.v.assign(slots * rank, 0);
  return c;
}

std::vector<i64> Cochain::value1(Elt g) const {
  if (g == 0) return std::vector<i64>(rank, 0);
  return std::vector<i64>(at1(g), at1(g) + rank);
}

std::vector<i64> Cochain::value2(Elt g, Elt h) const {
  if (g == 0 || h == 0) return std::vector<i64>(rank, 0);
  return std::vector<i64>(at2(g, h), at2(g, h) + rank);
}

Cochain cochain_add(const GModule& m, const Cochain& a, const Cochain& b) {
  Cochain c = a;
  int r = m.rank();
  for (size_t i = 0; i < c.v.size(); i++)
    c.v[i] = mod_floor(a.v[i] + b.v[i], m.factors()[i % r]);
  return c;
}

Cochain cochain_sub(const GModule& m, const Cochain& a, const Cochain& b) {
  Cochain c = a;
  int r = m.rank();
  for (size_t i = 0; i < c.v.size(); i++)
    c.v[i] = mod_floor(a.v[i] - b.v[i], m.factors()[i % r]);
  return c;
}

Cochain cochain_scale(const GModule& m, const Cochain& a, i64 k) {
  Cochain c = a;
  int r = m.rank();
  for (size_t i = 0; i < c.v.size(); i++) c.v[i] = mod_floor(a.v[i] * k, m.factors()[i % r]);
  return c;
}

Cochain coboundary(const GModule& m, const Cochain& c) {
  const GroupPtr& G = c.group;
  int n = G->order(), r = m.rank();
  if (c.degree == 0) {
    Cochain d = Cochain::zero(G, r, 1);
    std::vector<i64> base(c.v);
    for (Elt g = 1; g < n; g++) {
      auto gm = m.apply(g, base);
      for (int i = 0; i < r; i++) d.at1(g)[i] = mod_floor(gm[i] - base[i], m.factors()[i]);
    }
    return d;
  }
  if (c.degree == 1) {
    Cochain d = Cochain::zero(G, r, 2);
    for (Elt g = 1; g < n; g++)
      for (Elt h = 1; h < n; h++) {
        auto t = m.apply(g, c.value1(h));
        Elt gh = G->mult(g, h);
        auto vgh = c.value1(gh);
        for (int i = 0; i < r; i++)
          d.at2(g, h)[i] =
              mod_floor(t[i] - vgh[i] + c.at1(g)[i], m.factors()[i]);
      }
    return d;
  }
  fail(Err::Internal, "coboundary only for degrees 0 and 1");
}

std::vector<i64> delta2_at(const GModule& m, const Cochain& c, Elt g, Elt h, Elt k) {
  const GroupPtr& G = c.group;
  auto t = m.apply(g, c.value2(h, k));
  auto a = c.value2(G->mult(g, h), k);
  auto b = c.value2(g, G->mult(h, k));
  auto d = c.value2(g, h);
  std::vector<i64> out(m.rank());
  for (int i = 0; i < m.rank(); i++)
    out[i] = mod_floor(t[i] - a[i] + b[i] - d[i], m.factors()[i]);
  return out;
}

bool CohomologyClass::is_zero() const {
  for (size_t i = 0; i < coords.size(); i++)
    if (mod_floor(coords[i], parent->factors[i]) != 0) return false;
  return true;
}

i64 CohomologyGroup::order() const {
  i64 o = 1;
  for (i64 f : factors) o = ck_mul(o, f);
  return o;
}

bool CohomologyGroup::is_cocycle(const Cochain& c) const {
  const auto& S = group->generators();
  int n = group->order();
  if (c.degree == 0) {
    std::vector<i64> base(c.v);
    for (Elt s : S)
      if (!module.is_zero(module.sub(module.apply(s, base), base))) return false;
    return true;
  }
  if (c.degree == 1) {
    for (Elt s : S)
      for (Elt x = 1; x < n; x++) {
        auto t = module.apply(s, c.value1(x));
        auto v = module.add(module.sub(t, c.value1(group->mult(s, x))), c.value1(s));
        if (!module.is_zero(v)) return false;
      }
    return true;
  }
  for (Elt s : S)
    for (Elt h = 1; h < n; h++)
      for (Elt x = 1; x < n; x++)
        if (!module.is_zero(delta2_at(module, c, s, h, x))) return false;
  return true;
}

std::vector<i64> CohomologyGroup::reduce_vector(const Cochain& c) const {
  const auto& S = group->generators();
  int n = group->order(), r = module.rank();
  std::vector<i64> z(red.moduli.size(), 0);
  if (degree == 0) {
    for (int j = 0; j < r; j++) z[j] = c.v[j];
  } else if (degree == 1) {
    for (Elt x = 1; x < n; x++)
      for (int j = 0; j < r; j++) z[size_t(x - 1) * r + j] = c.at1(x)[j];
  } else {
    for (int si = 0; si < int(S.size()); si++)
      for (Elt x = 1; x < n; x++)
        for (int j = 0; j < r; j++)
          z[(size_t(si) * (n - 1) + (x - 1)) * r + j] = c.at2(S[si], x)[j];
  }
  return z;
}

Cochain CohomologyGroup::expand_vector(const std::vector<i64>& z) const {
  const auto& S = group->generators();
  int n = group->order(), r = module.rank();
  Cochain c = Cochain::zero(group, r, degree);
  if (degree == 0) {
    for (int j = 0; j < r; j++) c.v[j] = mod_floor(z[j], module.factors()[j]);
    return c;
  }
  if (degree == 1) {
    for (Elt x = 1; x < n; x++)
      for (int j = 0; j < r; j++)
        c.at1(x)[j] = mod_floor(z[size_t(x - 1) * r + j], module.factors()[j]);
    return c;
  }
  // degree 2: generator rows from z, the rest by the cocycle recursion
  for (int si = 0; si < int(S.size()); si++)
    for (Elt x = 1; x < n; x++)
      for (int j = 0; j < r; j++)
        c.at2(S[si], x)[j] =
            mod_floor(z[(size_t(si) * (n - 1) + (x - 1)) * r + j], module.factors()[j]);
  const auto& T = group->bfs_tree();
  // BFS order so parents are filled first
  std::vector<Elt> order;
  {
    std::vector<char> seen(n, 0);
    seen[0] = 1;
    std::vector<Elt> queue{0};
    for (size_t head = 0; head < queue.size(); head++) {
      Elt w = queue[head];
      for (Elt s : S) {
        Elt g = group->mult(s, w);
        if (!seen[g]) {
          seen[g] = 1;
          queue.push_back(g);
        }
      }
    }
    order = queue;
  }
  std::vector<char> is_gen(n, 0);
  for (Elt s : S) is_gen[s] = 1;
  for (Elt g : order) {
    if (g == 0 || is_gen[g]) continue;
    Elt s = S[T.parent_gen[g]];
    Elt w = T.parent_elt[g];
    for (Elt x = 1; x < n; x++) {
      auto val = module.apply(s, c.value2(w, x));
      Elt wx = group->mult(w, x);
      auto b = c.value2(s, wx);
      auto d = c.value2(s, w);
      for (int i = 0; i < r; i++)
        c.at2(g, x)[i] = mod_floor(val[i] + b[i] - d[i], module.factors()[i]);
    }
  }
  return c;
}

std::vector<i64> CohomologyGroup::class_coords(const Cochain& c) const {
  if (!is_cocycle(c)) fail(Err::NotACocycle, "class of a non-cocycle");
  auto z = reduce_vector(c);
  auto w = lattice_solve(red.klat, z, module.exponent());
  if (!w) fail(Err::Internal, "cocycle not in the computed cocycle lattice");
  std::vector<i64> out;
  out.reserve(red.positions.size());
  for (int p : red.positions) {
    i64 acc = 0;
    for (int t = 0; t < red.u.c; t++) acc = ck_add(acc, ck_mul(red.u.at(p, t), (*w)[t]));
    out.push_back(mod_floor(acc, red.all_factors[p]));
  }
  return out;
}

Cochain CohomologyGroup::representative(const std::vector<i64>& coords) const {
  if (coords.size() != factors.size()) fail(Err::Internal, "coordinate size");
  Cochain acc = Cochain::zero(group, module.rank(), degree);
  for (size_t i = 0; i < coords.size(); i++)
    if (mod_floor(coords[i], factors[i]) != 0)
      acc = cochain_add(module, acc, cochain_scale(module, basis[i], coords[i]));
  return acc;
}

CohomologyClass CohomologyGroup::cls(const std::vector<i64>& coords) const {
  CohomologyClass c;
  c.parent = shared_from_this();
  c.coords = coords;
  for (size_t i = 0; i < coords.size(); i++) c.coords[i] = mod_floor(coords[i], factors[i]);
  c.rep = representative(c.coords);
  return c;
}

CohomologyClass CohomologyGroup::cls_of(const Cochain& cocycle) const {
  CohomologyClass c;
  c.parent = shared_from_this();
  c.coords = class_coords(cocycle);
  c.rep = cocycle;
  return c;
}

CohomologyClass CohomologyGroup::zero_class() const {
  return cls(std::vector<i64>(factors.size(), 0));
}

std::optional<Cochain> CohomologyGroup::coboundary_witness(const Cochain& c) const {
  if (!is_cocycle(c)) fail(Err::NotACocycle, "witness of a non-cocycle");
  const auto& S = group->generators();
  int n = group->order(), r = module.rank();
  i64 nstar = module.exponent();
  if (degree == 0) fail(Err::Internal, "no witness below degree 0");
  if (degree == 1) {
    // solve (act(s) - 1) m = c(s) over the generators
    std::vector<std::vector<i64>> rows;
    std::vector<i64> rhs;
    for (Elt s : S) {
      const Mat& a = module.act(s);
      for (int i = 0; i < r; i++) {
        std::vector<i64> row(r);
        for (int j = 0; j < r; j++)
          row[j] = mod_floor((a.at(i, j) - (i == j ? 1 : 0)) * (nstar / module.factors()[i]),
                             nstar);
        rows.push_back(std::move(row));
        rhs.push_back(mod_floor(c.at1(s)[i] * (nstar / module.factors()[i]), nstar));
      }
    }
    auto sol = solve_mod(rows, rhs, nstar, module.factors());
    if (!sol) return std::nullopt;
    Cochain w = Cochain::zero(group, r, 0);
    w.v = *sol;
    return w;
  }
  // degree 2: delegate to the callback-based solver
  return trivialize_values(group, module,
                           [&c](Elt g, Elt h) { return c.value2(g, h); });
}

std::optional<Cochain> trivialize_values(
    const GroupPtr& group, const GModule& module,
    const std::function<std::vector<i64>(Elt, Elt)>& cval) {
  const auto& S = group->generators();
  int n = group->order(), r = module.rank();
  i64 nstar = module.exponent();
  // affine elimination over the generator values of u
  int k = int(S.size());
  int Lw = k * r;
  std::vector<int> gen_index(n, -1);
  for (int i = 0; i < k; i++) gen_index[S[i]] = i;
  // affine data per element: u(g) = A_g * y + b_g
  std::vector<std::vector<i64>> A(n), B(n);
  A[0].assign(size_t(r) * Lw, 0);
  B[0].assign(r, 0);
  const auto& T = group->bfs_tree();
  std::vector<Elt> order;
  {
    std::vector<char> seen(n, 0);
    seen[0] = 1;
    std::vector<Elt> queue{0};
    for (size_t head = 0; head < queue.size(); head++) {
      Elt w = queue[head];
      for (Elt s : S) {
        Elt g = group->mult(s, w);
        if (!seen[g]) {
          seen[g] = 1;
          queue.push_back(g);
        }
      }
    }
    order = queue;
  }
  for (Elt g : order) {
    if (g == 0) continue;
    if (gen_index[g] >= 0) {
      A[g].assign(size_t(r) * Lw, 0);
      B[g].assign(r, 0);
      for (int i = 0; i < r; i++) A[g][size_t(i) * Lw + gen_index[g] * r + i] = 1;
      continue;
    }
    Elt s = S[T.parent_gen[g]];
    Elt w = T.parent_elt[g];
    A[g].assign(size_t(r) * Lw, 0);
    B[g].assign(r, 0);
    const Mat& a = module.act(s);
    int sidx = gen_index[s];
    auto csw = cval(s, w);
    for (int i = 0; i < r; i++) {
      for (int j = 0; j < r; j++) {
        i64 f = a.at(i, j);
        if (f == 0) continue;
        for (int col = 0; col < Lw; col++)
          A[g][size_t(i) * Lw + col] += f * A[w][size_t(j) * Lw + col];
        B[g][i] += f * B[w][j];
      }
      A[g][size_t(i) * Lw + sidx * r + i] += 1;
      B[g][i] -= csw[i];
      B[g][i] = mod_floor(B[g][i], module.factors()[i]);
      for (int col = 0; col < Lw; col++)
        A[g][size_t(i) * Lw + col] = mod_floor(A[g][size_t(i) * Lw + col], module.factors()[i]);
    }
  }
  // remaining equations act(s) u(h) - u(sh) + u(s) = c(s, h)
  std::vector<std::vector<i64>> rows;
  std::vector<i64> rhs;
  std::vector<i64> umod;
  for (int i = 0; i < k; i++)
    for (int j = 0; j < r; j++) umod.push_back(module.factors()[j]);
  for (int si = 0; si < k; si++) {
    Elt s = S[si];
    for (Elt h = 1; h < n; h++) {
      Elt sh = group->mult(s, h);
      if (sh != 0 && gen_index[sh] < 0 && T.parent_gen[sh] == si && T.parent_elt[sh] == h)
        continue;  // identically satisfied by the elimination
      const Mat& a = module.act(s);
      auto csh = cval(s, h);
      for (int i = 0; i < r; i++) {
        std::vector<i64> row(Lw, 0);
        i64 cst = 0;
        for (int j = 0; j < r; j++) {
          i64 f = a.at(i, j);
          if (f == 0) continue;
          for (int col = 0; col < Lw; col++) row[col] += f * A[h][size_t(j) * Lw + col];
          cst += f * B[h][j];
        }
        if (sh != 0) {
          for (int col = 0; col < Lw; col++) row[col] -= A[sh][size_t(i) * Lw + col];
          cst -= B[sh][i];
        }
        row[si * r + i] += 1;
        i64 lift = nstar / module.factors()[i];
        for (auto& x : row) x = mod_floor(x * lift, nstar);
        rows.push_back(std::move(row));
        rhs.push_back(mod_floor((csh[i] - cst) * lift, nstar));
      }
    }
  }
  auto sol = solve_mod(rows, rhs, nstar, umod);
  if (!sol) return std::nullopt;
  Cochain w = Cochain::zero(group, r, 1);
  for (Elt g = 1; g < n; g++)
    for (int i = 0; i < r; i++) {
      i64 acc = B[g][i];
      for (int col = 0; col < Lw; col++) acc += A[g][size_t(i) * Lw + col] * (*sol)[col];
      w.at1(g)[i] = mod_floor(acc, module.factors()[i]);
    }
  return w;
}

namespace {

// shared quotient step: factors, transform and basis vectors for klat/B
void finish_quotient(CohomologyGroup& H, const std::vector<std::vector<i64>>& bcols) {
  auto& red = H.red;
  int L = int(red.moduli.size());
  i64 nstar = H.module.exponent();
  if (L == 0) {
    red.klat = Mat(0, 0);
    red.u = Mat(0, 0);
    return;
  }
  auto extra = nstar_preimage_gens(red.klat, nstar);
  Mat X(L, int(bcols.size()) + L + int(extra.size()));
  for (size_t j = 0; j < bcols.size(); j++) {
    auto w = lattice_solve(red.klat, bcols[j], nstar);
    if (!w) fail(Err::Internal, "coboundary outside the cocycle lattice");
    for (int i = 0; i < L; i++) X.at(i, int(j)) = (*w)[i];
  }
  for (int d = 0; d < L; d++) {
    std::vector<i64> v(L, 0);
    v[d] = red.moduli[d];
    auto w = lattice_solve(red.klat, v, nstar);
    if (!w) fail(Err::Internal, "moduli outside the cocycle lattice");
    for (int i = 0; i < L; i++) X.at(i, int(bcols.size()) + d) = (*w)[i];
  }
  for (size_t j = 0; j < extra.size(); j++)
    for (int i = 0; i < L; i++) X.at(i, int(bcols.size()) + L + int(j)) = extra[j][i];
  LatticeSnf q = snf_lattice(X, nstar);
  red.u = q.U;
  red.all_factors = q.factors;
  for (int i = 0; i < L; i++)
    if (q.factors[i] > 1) red.positions.push_back(i);
  for (int p : red.positions) {
    H.factors.push_back(q.factors[p]);
    std::vector<i64> z(L);
    for (int i = 0; i < L; i++) {
      i64 acc = 0;
      for (int t = 0; t < L; t++) acc = ck_add(acc, ck_mul(red.klat.at(i, t), q.Uinv.at(t, p)));
      z[i] = mod_floor(acc, red.moduli[i]);
    }
    H.basis.push_back(H.expand_vector(z));
  }
}

std::shared_ptr<CohomologyGroup> build_cohomology(const GroupPtr& g, const GModule& m,
                                                  int degree, const Config& cfg) {
  if (degree < 0 || degree > 2) fail(Err::SchemaViolation, "degree must be 0, 1 or 2");
  int n = g->order(), r = m.rank();
  {
    i64 size = r;
    for (int i = 0; i <= degree; i++) size = ck_mul(size, n);
    if (size > cfg.cochain_cap)
      fail(Err::SizeLimitExceeded, "cochain space larger than the configured cap");
  }
  auto H = std::make_shared<CohomologyGroup>();
  H->group = g;
  H->module = m;
  H->degree = degree;
  i64 nstar = m.exponent();
  const auto& S = g->generators();
  int k = int(S.size());

  if (degree == 0) {
    H->red.moduli = m.factors();
    std::vector<std::vector<i64>> rows;
    for (Elt s : S) {
      const Mat& a = m.act(s);
      for (int i = 0; i < r; i++) {
        std::vector<i64> row(r);
        for (int j = 0; j < r; j++)
          row[j] = mod_floor((a.at(i, j) - (i == j ? 1 : 0)) * (nstar / m.factors()[i]), nstar);
        rows.push_back(std::move(row));
      }
    }
    H->red.klat = r == 0 ? Mat(0, 0) : kernel_mod(rows, nstar, H->red.moduli);
    finish_quotient(*H, {});
    return H;
  }

  if (degree == 1) {
    int L = (n - 1) * r;
    H->red.moduli.resize(L);
    for (Elt x = 1; x < n; x++)
      for (int j = 0; j < r; j++) H->red.moduli[size_t(x - 1) * r + j] = m.factors()[j];
    auto idx = [&](Elt x, int j) { return (x - 1) * r + j; };
    EchelonModN ech(L, nstar);
    for (Elt s : S) {
      const Mat& a = m.act(s);
      for (Elt x = 1; x < n; x++) {
        Elt sx = g->mult(s, x);
        for (int i = 0; i < r; i++) {
          std::vector<i64> row(L, 0);
          for (int j = 0; j < r; j++) row[idx(x, j)] += a.at(i, j);
          if (sx != 0) row[idx(sx, i)] -= 1;
          row[idx(s, i)] += 1;
          i64 lift = nstar / m.factors()[i];
          for (auto& v : row) v = mod_floor(v * lift, nstar);
          ech.add_row(std::move(row));
        }
      }
    }
    H->red.klat = L == 0 ? Mat(0, 0) : kernel_mod(ech.rows(), nstar, H->red.moduli);
    std::vector<std::vector<i64>> bcols;
    for (int j = 0; j < r; j++) {
      std::vector<i64> col(L, 0);
      for (Elt x = 1; x < n; x++) {
        const Mat& ax = m.act(x);
        for (int i = 0; i < r; i++)
          col[idx(x, i)] = mod_floor(ax.at(i, j) - (i == j ? 1 : 0), m.factors()[i]);
      }
      bcols.push_back(std::move(col));
    }
    finish_quotient(*H, bcols);
    return H;
  }

  // degree 2
  int n1 = n - 1;
  int L = k * n1 * r;
  H->red.moduli.resize(L);
  auto idx = [&](int si, Elt x, int j) { return (size_t(si) * n1 + (x - 1)) * r + j; };
  for (int si = 0; si < k; si++)
    for (Elt x = 1; x < n; x++)
      for (int j = 0; j < r; j++) H->red.moduli[idx(si, x, j)] = m.factors()[j];
  if (L == 0) {
    H->red.klat = Mat(0, 0);
    finish_quotient(*H, {});
    return H;
  }
  std::vector<int> gen_index(n, -1);
  for (int i = 0; i < k; i++) gen_index[S[i]] = i;
  // symbolic values T[g][x] as integer rows over the reduced unknowns
  const auto& Tr = g->bfs_tree();
  std::vector<Elt> order;
  {
    std::vector<char> seen(n, 0);
    seen[0] = 1;
    std::vector<Elt> queue{0};
    for (size_t head = 0; head < queue.size(); head++) {
      Elt w = queue[head];
      for (Elt s : S) {
        Elt e = g->mult(s, w);
        if (!seen[e]) {
          seen[e] = 1;
          queue.push_back(e);
        }
      }
    }
    order = queue;
  }
  std::vector<std::vector<int32_t>> T(n);  // per element: (n-1)*r rows of length L
  auto trow = [&](std::vector<int32_t>& tg, Elt x, int i) {
    return tg.data() + (size_t(x - 1) * r + i) * L;
  };
  for (Elt e : order) {
    if (e == 0) continue;
    T[e].assign(size_t(n1) * r * L, 0);
    if (gen_index[e] >= 0) {
      int si = gen_index[e];
      for (Elt x = 1; x < n; x++)
        for (int i = 0; i < r; i++) trow(T[e], x, i)[idx(si, x, i)] = 1;
      continue;
    }
    int si = Tr.parent_gen[e];
    Elt s = S[si];
    Elt w = Tr.parent_elt[e];
    const Mat& a = m.act(s);
    for (Elt x = 1; x < n; x++) {
      Elt wx = g->mult(w, x);
      for (int i = 0; i < r; i++) {
        int32_t* dst = trow(T[e], x, i);
        for (int j = 0; j < r; j++) {
          i64 f = a.at(i, j);
          if (f == 0) continue;
          const int32_t* src = trow(T[w], x, j);
          for (int col = 0; col < L; col++) dst[col] += int32_t(f * src[col]);
        }
        if (wx != 0) dst[idx(si, wx, i)] += 1;
        dst[idx(si, w, i)] -= 1;
        i64 di = m.factors()[i];
        for (int col = 0; col < L; col++) dst[col] = int32_t(mod_floor(dst[col], di));
      }
    }
  }
  // equations delta c (s, h, x) = 0
  EchelonModN ech(L, nstar);
  std::vector<i64> row(L);
  for (int si = 0; si < k; si++) {
    Elt s = S[si];
    const Mat& a = m.act(s);
    for (Elt h = 1; h < n; h++) {
      Elt sh = g->mult(s, h);
      bool tree_edge = sh != 0 && gen_index[sh] < 0 && Tr.parent_gen[sh] == si &&
                       Tr.parent_elt[sh] == h;
      if (tree_edge) continue;
      for (Elt x = 1; x < n; x++) {
        Elt hx = g->mult(h, x);
        for (int i = 0; i < r; i++) {
          std::fill(row.begin(), row.end(), 0);
          for (int j = 0; j < r; j++) {
            i64 f = a.at(i, j);
            if (f == 0) continue;
            const int32_t* src = trow(T[h], x, j);
            for (int col = 0; col < L; col++) row[col] += f * src[col];
          }
          if (sh != 0) {
            const int32_t* src = trow(T[sh], x, i);
            for (int col = 0; col < L; col++) row[col] -= src[col];
          }
          if (hx != 0) row[idx(si, hx, i)] += 1;
          row[idx(si, h, i)] -= 1;
          bool nz = false;
          i64 lift = nstar / m.factors()[i];
          for (auto& vv : row) {
            vv = mod_floor(vv * lift, nstar);
            nz = nz || vv != 0;
          }
          if (nz) ech.add_row(row);
        }
      }
    }
  }
  T.clear();
  H->red.klat = kernel_mod(ech.rows(), nstar, H->red.moduli);
  // coboundary columns
  std::vector<std::vector<i64>> bcols;
  for (Elt x = 1; x < n; x++)
    for (int j = 0; j < r; j++) {
      std::vector<i64> col(L, 0);
      for (int si = 0; si < k; si++) {
        Elt s = S[si];
        const Mat& a = m.act(s);
        for (int i = 0; i < r; i++) col[idx(si, x, i)] += a.at(i, j);
        for (Elt y = 1; y < n; y++) {
          if (g->mult(s, y) == x) col[idx(si, y, j)] -= 1;
          if (s == x) col[idx(si, y, j)] += 1;
        }
      }
      for (int si = 0; si < k; si++)
        for (Elt y = 1; y < n; y++)
          for (int i = 0; i < r; i++)
            col[idx(si, y, i)] = mod_floor(col[idx(si, y, i)], m.factors()[i]);
      bcols.push_back(std::move(col));
    }
  finish_quotient(*H, bcols);
  return H;
}

std::shared_mutex g_cache_mutex;
std::map<std::tuple<uint64_t, uint64_t, int>, CohomologyPtr> g_cache;

}  // namespace

CohomologyPtr cohomology_group(const GroupPtr& g, const GModule& m, int degree,
                               const Config& cfg) {
  auto key = std::make_tuple(g->hash(), m.hash(), degree);
  {
    std::shared_lock lk(g_cache_mutex);
    auto it = g_cache.find(key);
    if (it != g_cache.end()) return it->second;
  }
  CohomologyPtr built = build_cohomology(g, m, degree, cfg);
  std::unique_lock lk(g_cache_mutex);
  auto [it, inserted] = g_cache.emplace(key, built);
  return it->second;
}

void clear_cohomology_cache() {
  std::unique_lock lk(g_cache_mutex);
  g_cache.clear();
}

BarMatrix coboundary_matrix(const GroupPtr& g, const GModule& m, int degree, const Config& cfg) {
  if (degree < 0 || degree > 2) fail(Err::SchemaViolation, "degree must be 0, 1 or 2");
  int n = g->order(), r = m.rank();
  i64 size = r;
  for (int i = 0; i <= degree; i++) size = ck_mul(size, n);
  if (size > cfg.cochain_cap)
    fail(Err::SizeLimitExceeded, "bar matrix larger than the configured cap");
  int n1 = n - 1;
  auto tuples = [&](int deg) {
    i64 t = 1;
    for (int i = 0; i < deg; i++) t *= n1;
    return int(t);
  };
  int sc = tuples(degree) * r, tr = tuples(degree + 1) * r;
  BarMatrix out;
  out.mat = Mat(tr, sc);
  out.col_moduli.resize(sc);
  out.row_moduli.resize(tr);
  for (int t = 0; t < tuples(degree); t++)
    for (int j = 0; j < r; j++) out.col_moduli[size_t(t) * r + j] = m.factors()[j];
  for (int t = 0; t < tuples(degree + 1); t++)
    for (int j = 0; j < r; j++) out.row_moduli[size_t(t) * r + j] = m.factors()[j];
  auto add = [&](int trow, int scol, i64 v) {
    out.mat.at(trow, scol) = mod_floor(out.mat.at(trow, scol) + v, out.row_moduli[trow]);
  };
  if (degree == 0) {
    for (Elt x = 1; x < n; x++) {
      const Mat& a = m.act(x);
      for (int i = 0; i < r; i++)
        for (int j = 0; j < r; j++)
          add((x - 1) * r + i, j, a.at(i, j) - (i == j ? 1 : 0));
    }
  } else if (degree == 1) {
    for (Elt x = 1; x < n; x++)
      for (Elt y = 1; y < n; y++) {
        int row0 = ((x - 1) * n1 + (y - 1)) * r;
        const Mat& a = m.act(x);
        for (int i = 0; i < r; i++) {
          for (int j = 0; j < r; j++) add(row0 + i, (y - 1) * r + j, a.at(i, j));
          Elt xy = g->mult(x, y);
          if (xy != 0) add(row0 + i, (xy - 1) * r + i, -1);
          add(row0 + i, (x - 1) * r + i, 1);
        }
      }
  } else {
    for (Elt x = 1; x < n; x++)
      for (Elt y = 1; y < n; y++)
        for (Elt z = 1; z < n; z++) {
          int row0 = (((x - 1) * n1 + (y - 1)) * n1 + (z - 1)) * r;
          const Mat& a = m.act(x);
          for (int i = 0; i < r; i++) {
            for (int j = 0; j < r; j++)
              add(row0 + i, ((y - 1) * n1 + (z - 1)) * r + j, a.at(i, j));
            Elt xy = g->mult(x, y), yz = g->mult(y, z);
            if (xy != 0) add(row0 + i, ((xy - 1) * n1 + (z - 1)) * r + i, -1);
            if (yz != 0) add(row0 + i, ((x - 1) * n1 + (yz - 1)) * r + i, 1);
            add(row0 + i, ((x - 1) * n1 + (y - 1)) * r + i, -1);
          }
        }
  }
  return out;
}

DenseCohomology cohomology_group_dense(const GroupPtr& g, const GModule& m, int degree,
                                       const Config& cfg) {
  DenseCohomology out;
  int r = m.rank();
  if (r == 0) return out;
  i64 nstar = m.exponent();
  BarMatrix up = coboundary_matrix(g, m, degree, cfg);
  std::vector<std::vector<i64>> rows;
  for (int i = 0; i < up.mat.r; i++) {
    std::vector<i64> row(up.mat.c);
    i64 lift = nstar / up.row_moduli[i];
    bool nz = false;
    for (int j = 0; j < up.mat.c; j++) {
      row[j] = mod_floor(up.mat.at(i, j) * lift, nstar);
      nz = nz || row[j] != 0;
    }
    if (nz) rows.push_back(std::move(row));
  }
  Mat klat = up.mat.c == 0 ? Mat(0, 0) : kernel_mod(rows, nstar, up.col_moduli);
  int L = up.mat.c;
  if (L == 0) return out;
  std::vector<std::vector<i64>> bcols;
  if (degree > 0) {
    BarMatrix dn = coboundary_matrix(g, m, degree - 1, cfg);
    for (int j = 0; j < dn.mat.c; j++) {
      std::vector<i64> col(dn.mat.r);
      for (int i = 0; i < dn.mat.r; i++) col[i] = dn.mat.at(i, j);
      bcols.push_back(std::move(col));
    }
  }
  auto extra = nstar_preimage_gens(klat, nstar);
  Mat X(L, int(bcols.size()) + L + int(extra.size()));
  for (size_t j = 0; j < bcols.size(); j++) {
    auto w = lattice_solve(klat, bcols[j], nstar);
    if (!w) fail(Err::Internal, "dense coboundary outside cocycles");
    for (int i = 0; i < L; i++) X.at(i, int(j)) = (*w)[i];
  }
  for (int d = 0; d < L; d++) {
    std::vector<i64> v(L, 0);
    v[d] = up.col_moduli[d];
    auto w = lattice_solve(klat, v, nstar);
    if (!w) fail(Err::Internal, "dense moduli outside cocycles");
    for (int i = 0; i < L; i++) X.at(i, int(bcols.size()) + d) = (*w)[i];
  }
  for (size_t j = 0; j < extra.size(); j++)
    for (int i = 0; i < L; i++) X.at(i, int(bcols.size()) + L + int(j)) = extra[j][i];
  LatticeSnf q = snf_lattice(X, nstar);
  for (i64 f : q.factors)
    if (f > 1) out.factors.push_back(f);
  return out;
}

Cochain restrict_cochain(const Cochain& c, const SubgroupGroup& h) {
  if (h.embed.target->hash() != c.group->hash())
    fail(Err::TargetMismatch, "restrict_cochain: subgroup of a different group");
  int m = h.group->order();
  Cochain out = Cochain::zero(h.group, c.rank, c.degree);
  if (c.degree == 0) {
    out.v = c.v;
    return out;
  }
  if (c.degree == 1) {
    for (Elt x = 1; x < m; x++) {
      auto val = c.value1(h.embed(x));
      std::copy(val.begin(), val.end(), out.at1(x));
    }
    return out;
  }
  for (Elt x = 1; x < m; x++)
    for (Elt y = 1; y < m; y++) {
      auto val = c.value2(h.embed(x), h.embed(y));
      std::copy(val.begin(), val.end(), out.at2(x, y));
    }
  return out;
}

Cochain pullback_cochain(const Cochain& c, const GroupHom& f) {
  if (f.target->hash() != c.group->hash())
    fail(Err::TargetMismatch, "pullback_cochain: hom target mismatch");
  int m = f.source->order();
  Cochain out = Cochain::zero(f.source, c.rank, c.degree);
  if (c.degree == 0) {
    out.v = c.v;
    return out;
  }
  if (c.degree == 1) {
    for (Elt x = 1; x < m; x++) {
      auto val = c.value1(f(x));
      std::copy(val.begin(), val.end(), out.at1(x));
    }
    return out;
  }
  for (Elt x = 1; x < m; x++)
    for (Elt y = 1; y < m; y++) {
      auto val = c.value2(f(x), f(y));
      std::copy(val.begin(), val.end(), out.at2(x, y));
    }
  return out;
}

Cochain inflate_cochain(const Cochain& c, const GroupHom& p) { return pullback_cochain(c, p); }

Cochain corestrict_cochain(const GModule& big, const Cochain& c_on_h, const SubgroupGroup& h) {
  const GroupPtr& G = h.embed.target;
  if (big.group()->hash() != G->hash())
    fail(Err::TargetMismatch, "corestrict_cochain: module not over the big group");
  int n = G->order();
  int hn = h.group->order();
  std::vector<int> h_index(n, -1);
  for (Elt x = 0; x < hn; x++) h_index[h.embed(x)] = x;
  // right cosets H\G with minimal representatives
  std::vector<int> coset_of(n, -1);
  std::vector<Elt> reps;
  for (Elt g = 0; g < n; g++) {
    if (coset_of[g] >= 0) continue;
    int id = int(reps.size());
    reps.push_back(g);
    for (Elt x = 0; x < hn; x++) coset_of[G->mult(h.embed(x), g)] = id;
  }
  auto hpart = [&](Elt g) {  // g * rep(g)^{-1} in H-coordinates
    Elt x = reps[coset_of[g]];
    int hi = h_index[G->mult(g, G->inv(x))];
    if (hi < 0) fail(Err::Internal, "coset decomposition failed");
    return hi;
  };
  Cochain out = Cochain::zero(G, c_on_h.rank, c_on_h.degree);
  int r = c_on_h.rank;
  if (c_on_h.degree == 0) {
    std::vector<i64> acc(r, 0);
    for (Elt x : reps) {
      auto val = big.apply(G->inv(x), std::vector<i64>(c_on_h.v.begin(), c_on_h.v.end()));
      for (int i = 0; i < r; i++) acc[i] += val[i];
    }
    out.v = big.reduce(acc);
    return out;
  }
  if (c_on_h.degree == 1) {
    for (Elt g1 = 1; g1 < n; g1++) {
      std::vector<i64> acc(r, 0);
      for (Elt x : reps) {
        Elt e1 = G->mult(x, g1);
        auto val = big.apply(G->inv(x), c_on_h.value1(hpart(e1)));
        for (int i = 0; i < r; i++) acc[i] += val[i];
      }
      auto red = big.reduce(acc);
      std::copy(red.begin(), red.end(), out.at1(g1));
    }
    return out;
  }
  for (Elt g1 = 1; g1 < n; g1++)
    for (Elt g2 = 1; g2 < n; g2++) {
      std::vector<i64> acc(r, 0);
      for (Elt x : reps) {
        Elt e1 = G->mult(x, g1);
        Elt xp = reps[coset_of[e1]];
        Elt e2 = G->mult(xp, g2);
        auto val = big.apply(G->inv(x), c_on_h.value2(hpart(e1), hpart(e2)));
        for (int i = 0; i < r; i++) acc[i] += val[i];
      }
      auto red = big.reduce(acc);
      std::copy(red.begin(), red.end(), out.at2(g1, g2));
    }
  return out;
}

CohomologyClass restrict_class(const CohomologyClass& a, const SubgroupGroup& h,
                               const CohomologyPtr& target) {
  Cochain c = restrict_cochain(a.rep, h);
  return target->cls_of(c);
}

CohomologyClass inflate_class(const CohomologyClass& a, const GroupHom& p,
                              const CohomologyPtr& target) {
  if (!p.is_surjective()) fail(Err::NotSurjective, "inflation along a non-surjection");
  if (pull_back_module(a.parent->module, p).hash() != target->module.hash())
    fail(Err::ModuleMismatch, "inflation module is not the pulled-back module");
  Cochain c = inflate_cochain(a.rep, p);
  return target->cls_of(c);
}

CohomologyClass corestrict_class(const CohomologyClass& a_on_h, const SubgroupGroup& h,
                                 const CohomologyPtr& target) {
  Cochain c = corestrict_cochain(target->module, a_on_h.rep, h);
  return target->cls_of(c);
}

}  // namespace brnr
