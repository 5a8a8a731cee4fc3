#ifndef BRNR_SECTIONS_HPP
#define BRNR_SECTIONS_HPP

#include "sha.hpp"

namespace brnr {

// F-conjugacy class of sections; models a class in the pointed set H^1(k, F)
struct SectionClass {
  std::vector<GroupHom> orbit;
  int representative = 0;  // index into orbit (lexicographically smallest images)
};

std::vector<SectionClass> h1_orbits(const Gerb& g, const std::vector<GroupHom>& sections);

// Brauer-Manin evaluation: restriction of alpha along the section
CohomologyClass evaluate_class(const Gerb& g, const GerbCoeff& coeff,
                               const CohomologyClass& alpha, const GroupHom& s,
                               const Config& cfg = Config());

struct LocalGaloisModel {
  enum class Kind { Real, Tame };
  Kind kind = Kind::Real;
  GroupPtr gamma;
  Elt sigma = 0;  // Frobenius model (real: complex conjugation)
  Elt tau = 0;    // tame inertia model (real: identity)
  i64 p = 0, q = 0, a = 1, b = 1, n = 2;
  std::vector<i64> character;  // on gamma, into (Z/n)^*
};

// Gamma = <sigma, tau | sigma tau sigma^-1 = tau^q, sigma^a, tau^b>, b | q^a - 1,
// q a power of the residue characteristic p, gcd(n, p) = 1, sigma acts on mu_n
// by q and tau trivially (so q^a = 1 mod n is required)
LocalGaloisModel tame_local_model(i64 p, i64 q, i64 a, i64 b, i64 n);
LocalGaloisModel real_model(i64 n);

struct EvaluationReport {
  std::vector<std::vector<i64>> classes;  // ambient coordinates of tested classes
  // values[class][section class] = coordinates in H2(Gamma, M)
  std::vector<std::vector<std::vector<i64>>> values;
  int section_classes = 0;
  bool constant = true;
  bool all_zero = true;
};

// evaluates every generator class of S at every section; validates the tame
// hypotheses (|F| prime to p, action through <sigma>) unless bypassed
EvaluationReport constancy_check(const Gerb& g, const GerbCoeff& coeff,
                                 const LocalGaloisModel& model, const SubgroupLat& s,
                                 const Config& cfg = Config(), bool bypass_hypotheses = false);

// Shapiro: H2(E, Ind_{s(Gamma)}^E M) vs H2(Gamma, M), with the comparison
// realized by restriction to the section image followed by evaluation at the
// identity coset; also checks that the diagonal route recovers the section
// evaluation map
bool shapiro_check(const Gerb& g, const GerbCoeff& coeff, const Config& cfg = Config());

}  // namespace brnr

#endif
