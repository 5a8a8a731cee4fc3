#ifndef BRNR_COMMON_HPP
#define BRNR_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace brnr {

using i64 = long long;

// Error codes mirror the failure modes named in the public interface.
enum class Err {
  NotAssociative,
  NoIdentity,
  NoInverse,
  NotAPermutation,
  OrderLimitExceeded,
  SizeLimitExceeded,
  ActionNotHomomorphic,
  NotNormal,
  CharacterNotMultiplicative,
  NonUnitValue,
  TargetMismatch,
  ExponentMismatch,
  ModuleMismatch,
  NotSurjective,
  NotACocycle,
  NotExact,
  NotAbelian,
  NoSection,
  EssentiallyRealUnsupported,
  InconsistentParameters,
  HypothesesViolated,
  Overflow,
  UnknownCommand,
  SchemaViolation,
  FileNotFound,
  CacheCorrupt,
  Internal,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& detail)
      : std::runtime_error(std::string(err_name(code)) + ": " + detail), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& detail) { throw Error(code, detail); }

// Checked 64-bit arithmetic. Exact linear algebra must not silently wrap.
inline i64 ck_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) fail(Err::Overflow, "integer add");
  return r;
}
inline i64 ck_sub(i64 a, i64 b) {
  i64 r;
  if (__builtin_sub_overflow(a, b, &r)) fail(Err::Overflow, "integer sub");
  return r;
}
inline i64 ck_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) fail(Err::Overflow, "integer mul");
  return r;
}

inline i64 floor_div(i64 a, i64 b) {
  i64 q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}
inline i64 mod_floor(i64 a, i64 b) {
  i64 r = a % b;
  return r < 0 ? r + (b < 0 ? -b : b) : r;
}

inline i64 gcd_i64(i64 a, i64 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}
inline i64 lcm_i64(i64 a, i64 b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_i64(a, b) * b;
}

// g = ax + by
inline i64 egcd(i64 a, i64 b, i64& x, i64& y) {
  if (b == 0) {
    x = (a < 0) ? -1 : 1;
    y = 0;
    return a < 0 ? -a : a;
  }
  i64 x1, y1;
  i64 g = egcd(b, a % b, x1, y1);
  x = y1;
  y = ck_sub(x1, ck_mul(a / b, y1));
  return g;
}

inline i64 mod_pow(i64 base, i64 exp, i64 mod) {
  base = mod_floor(base, mod);
  i64 acc = 1 % mod;
  while (exp > 0) {
    if (exp & 1) acc = acc * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return acc;
}

// FNV-1a, used for content hashes of canonicalized objects.
struct Fnv {
  uint64_t h = 1469598103934665603ULL;
  void bytes(const void* p, size_t n) {
    const unsigned char* b = static_cast<const unsigned char*>(p);
    for (size_t i = 0; i < n; i++) {
      h ^= b[i];
      h *= 1099511628211ULL;
    }
  }
  void u64(uint64_t v) { bytes(&v, 8); }
  void i(i64 v) { bytes(&v, 8); }
  template <class T>
  void vec(const std::vector<T>& v) {
    u64(v.size());
    if (!v.empty()) bytes(v.data(), v.size() * sizeof(T));
  }
};

std::string hex_u64(uint64_t v);

struct Config {
  int group_order_cap = 512;     // subgroup enumeration / table construction
  int perm_closure_cap = 20000;  // closure enumeration for permutation groups
  i64 cochain_cap = i64(1) << 27;  // |G|^(i+1) * rank bound for bar matrices
  int jobs = 1;
  std::string cache_dir;  // empty = no persistent cache
};

}  // namespace brnr

#endif
