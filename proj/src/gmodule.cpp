#include "gmodule.hpp"

#include <algorithm>
#include <random>

namespace brnr {

GModule::GModule(GroupPtr group, std::vector<i64> factors, std::vector<Mat> action)
    : group_(std::move(group)), factors_(std::move(factors)), action_(std::move(action)) {
  int r = rank();
  for (size_t i = 1; i < factors_.size(); i++)
    if (factors_[i] % factors_[i - 1] != 0)
      fail(Err::SchemaViolation, "module factors must form a divisibility chain");
  for (i64 d : factors_)
    if (d < 2) fail(Err::SchemaViolation, "module factors must be >= 2");
  if (int(action_.size()) != group_->order()) fail(Err::SchemaViolation, "action table size");
  for (auto& m : action_) {
    if (m.r != r || m.c != r) fail(Err::SchemaViolation, "action matrix shape");
    for (int i = 0; i < r; i++)
      for (int j = 0; j < r; j++) m.at(i, j) = mod_floor(m.at(i, j), factors_[i]);
  }
  Fnv f;
  f.u64(group_->hash());
  f.vec(factors_);
  for (auto& m : action_) f.vec(m.a);
  hash_ = f.h;
  validate();
}

std::vector<i64> GModule::reduce(std::vector<i64> v) const {
  for (int i = 0; i < rank(); i++) v[i] = mod_floor(v[i], factors_[i]);
  return v;
}

std::vector<i64> GModule::add(const std::vector<i64>& a, const std::vector<i64>& b) const {
  std::vector<i64> r(rank());
  for (int i = 0; i < rank(); i++) r[i] = mod_floor(a[i] + b[i], factors_[i]);
  return r;
}

std::vector<i64> GModule::sub(const std::vector<i64>& a, const std::vector<i64>& b) const {
  std::vector<i64> r(rank());
  for (int i = 0; i < rank(); i++) r[i] = mod_floor(a[i] - b[i], factors_[i]);
  return r;
}

std::vector<i64> GModule::neg(const std::vector<i64>& a) const {
  std::vector<i64> r(rank());
  for (int i = 0; i < rank(); i++) r[i] = mod_floor(-a[i], factors_[i]);
  return r;
}

std::vector<i64> GModule::apply(Elt g, const std::vector<i64>& v) const {
  const Mat& m = action_[g];
  std::vector<i64> r(rank(), 0);
  for (int i = 0; i < rank(); i++) {
    i64 acc = 0;
    for (int j = 0; j < rank(); j++) acc += m.at(i, j) * v[j];
    r[i] = mod_floor(acc, factors_[i]);
  }
  return r;
}

bool GModule::is_zero(const std::vector<i64>& v) const {
  for (int i = 0; i < rank(); i++)
    if (mod_floor(v[i], factors_[i]) != 0) return false;
  return true;
}

void GModule::validate() const {
  int r = rank();
  int n = group_->order();
  // identity acts as identity
  for (int i = 0; i < r; i++)
    for (int j = 0; j < r; j++)
      if (action_[0].at(i, j) != (i == j ? 1 % factors_[i] : 0))
        fail(Err::SchemaViolation, "identity does not act trivially");
  auto check_pair = [&](Elt g, Elt h) {
    const Mat& ag = action_[g];
    const Mat& ah = action_[h];
    const Mat& agh = action_[group_->mult(g, h)];
    for (int i = 0; i < r; i++)
      for (int j = 0; j < r; j++) {
        i64 acc = 0;
        for (int k = 0; k < r; k++) acc += ag.at(i, k) * ah.at(k, j);
        if (mod_floor(acc, factors_[i]) != agh.at(i, j))
          fail(Err::SchemaViolation, "action is not a homomorphism at pair (" +
                                          std::to_string(g) + "," + std::to_string(h) + ")");
      }
  };
  if (n <= 64) {
    for (Elt g = 0; g < n; g++)
      for (Elt h = 0; h < n; h++) check_pair(g, h);
  } else {
    std::mt19937 rng(0x6d0dULL);
    for (int t = 0; t < 4096; t++) check_pair(Elt(rng() % n), Elt(rng() % n));
  }
  // invertibility: the matrix of each generator has trivial kernel mod factors
  if (r > 0) {
    i64 nstar = exponent();
    for (Elt g : group_->generators()) {
      std::vector<std::vector<i64>> rows;
      for (int i = 0; i < r; i++) {
        std::vector<i64> row(r);
        for (int j = 0; j < r; j++) row[j] = mod_floor(action_[g].at(i, j) * (nstar / factors_[i]), nstar);
        rows.push_back(std::move(row));
      }
      Mat K = kernel_mod(rows, nstar, factors_);
      std::vector<std::vector<i64>> gens;
      for (int j = 0; j < K.c; j++) {
        std::vector<i64> col(K.r);
        for (int i = 0; i < K.r; i++) col[i] = K.at(i, j);
        gens.push_back(col);
      }
      SubgroupLat s(factors_, gens);
      if (s.structure().order != 1)
        fail(Err::SchemaViolation, "action of element " + std::to_string(g) + " is not invertible");
    }
  }
}

GModule trivial_module(const GroupPtr& g, const std::vector<i64>& factors) {
  int r = int(factors.size());
  std::vector<Mat> act(g->order(), Mat::identity(r));
  return GModule(g, factors, std::move(act));
}

GModule mu_module(i64 n, const GroupPtr& gamma, const std::vector<i64>& character) {
  if (n < 2) fail(Err::SchemaViolation, "mu_module needs n >= 2");
  if (int(character.size()) != gamma->order())
    fail(Err::SchemaViolation, "character value count != |Gamma|");
  for (i64 v : character)
    if (gcd_i64(mod_floor(v, n), n) != 1)
      fail(Err::NonUnitValue, "character value " + std::to_string(v) + " is not a unit mod " +
                                  std::to_string(n));
  if (mod_floor(character[0], n) != 1 % n)
    fail(Err::CharacterNotMultiplicative, "character of the identity is not 1");
  for (Elt a = 0; a < gamma->order(); a++)
    for (Elt b = 0; b < gamma->order(); b++)
      if (mod_floor(character[a] * character[b], n) !=
          mod_floor(character[gamma->mult(a, b)], n))
        fail(Err::CharacterNotMultiplicative,
             "character fails at pair (" + std::to_string(a) + "," + std::to_string(b) + ")");
  std::vector<Mat> act(gamma->order(), Mat(1, 1));
  for (Elt a = 0; a < gamma->order(); a++) act[a].at(0, 0) = mod_floor(character[a], n);
  return GModule(gamma, {n}, std::move(act));
}

GModule pull_back_module(const GModule& m, const GroupHom& f) {
  if (f.target->hash() != m.group()->hash())
    fail(Err::TargetMismatch, "pull_back_module: hom target is not the module group");
  std::vector<Mat> act(f.source->order());
  for (Elt e = 0; e < f.source->order(); e++) act[e] = m.act(f(e));
  return GModule(f.source, m.factors(), std::move(act));
}

GModule restrict_module(const GModule& m, const SubgroupGroup& h) {
  if (h.embed.target->hash() != m.group()->hash())
    fail(Err::TargetMismatch, "restrict_module: subgroup of a different group");
  std::vector<Mat> act(h.group->order());
  for (Elt e = 0; e < h.group->order(); e++) act[e] = m.act(h.embed(e));
  return GModule(h.group, m.factors(), std::move(act));
}

GModule induced_module(const GModule& m_over_h, const GroupHom& embed) {
  const GroupPtr& G = embed.target;
  const GroupPtr& H = embed.source;
  if (m_over_h.group()->hash() != H->hash())
    fail(Err::TargetMismatch, "induced_module: module not over the embedded subgroup");
  int n = G->order();
  std::vector<int> h_index(n, -1);
  for (Elt x = 0; x < H->order(); x++) h_index[embed(x)] = x;
  // minimal left transversal: G = union t_i * H
  std::vector<Elt> trans;
  std::vector<int> coset_of(n, -1);
  for (Elt g = 0; g < n; g++) {
    if (coset_of[g] >= 0) continue;
    int id = int(trans.size());
    trans.push_back(g);
    for (Elt x = 0; x < H->order(); x++) coset_of[G->mult(g, embed(x))] = id;
  }
  int t = int(trans.size());
  int r = m_over_h.rank();
  std::vector<i64> factors;
  for (int i = 0; i < t; i++)
    for (i64 d : m_over_h.factors()) factors.push_back(d);
  // coordinate (coset i, module coordinate k) sits at position k*t + i, so
  // the factor list stays a divisibility chain
  auto pos = [&](int coset, int k) { return k * t + coset; };
  std::vector<i64> sorted_factors(size_t(t) * r);
  for (int k = 0; k < r; k++)
    for (int i = 0; i < t; i++) sorted_factors[pos(i, k)] = m_over_h.factors()[k];
  std::vector<Mat> act(n, Mat(t * r, t * r));
  for (Elt g = 0; g < n; g++) {
    for (int i = 0; i < t; i++) {
      Elt gti = G->mult(g, trans[i]);
      int j = coset_of[gti];
      Elt hrep = G->mult(G->inv(trans[j]), gti);
      int hx = h_index[hrep];
      if (hx < 0) fail(Err::Internal, "induced transversal decomposition");
      const Mat& a = m_over_h.act(hx);
      for (int u = 0; u < r; u++)
        for (int v = 0; v < r; v++) act[g].at(pos(j, u), pos(i, v)) = a.at(u, v);
    }
  }
  return GModule(G, sorted_factors, std::move(act));
}

GModule coordinate_module(const GroupPtr& a, const GroupPtr& gamma,
                          const std::vector<std::vector<Elt>>& action_on_a) {
  auto st = abelian_structure(a);
  int r = int(st.factors.size());
  std::vector<Mat> act(gamma->order(), Mat(r, r));
  for (Elt c = 0; c < gamma->order(); c++) {
    for (int j = 0; j < r; j++) {
      Elt img = action_on_a[c][st.gens[j]];
      for (int i = 0; i < r; i++) act[c].at(i, j) = st.coords[img][i];
    }
  }
  return GModule(gamma, st.factors, std::move(act));
}

GModule dual_module(const GroupPtr& a, i64 n, const GroupPtr& gamma,
                    const std::vector<std::vector<Elt>>& action_on_a,
                    const std::vector<i64>& character) {
  if (!a->is_abelian()) fail(Err::NotAbelian, "dual_module of a nonabelian group");
  if (a->exponent() > 1 && n % a->exponent() != 0)
    fail(Err::ExponentMismatch, "exponent of A must divide n");
  if (int(action_on_a.size()) != gamma->order())
    fail(Err::SchemaViolation, "action size != |Gamma|");
  auto st = abelian_structure(a);
  int r = int(st.factors.size());
  std::vector<Mat> act(gamma->order(), Mat(r, r));
  for (Elt c = 0; c < gamma->order(); c++) {
    Elt cinv = gamma->inv(c);
    i64 chi = mod_floor(character[c], n);
    for (int i = 0; i < r; i++) {
      Elt pre = action_on_a[cinv][st.gens[i]];
      for (int j = 0; j < r; j++) {
        i64 num = st.coords[pre][j] * st.factors[i];
        if (num % st.factors[j] != 0) fail(Err::Internal, "dual action not integral");
        act[c].at(i, j) = mod_floor(chi * (num / st.factors[j]), st.factors[i]);
      }
    }
  }
  return GModule(gamma, st.factors, std::move(act));
}

}  // namespace brnr
