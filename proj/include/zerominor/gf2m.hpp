#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "zerominor/rng.hpp"

#if defined(__PCLMUL__)
#include <wmmintrin.h>
#endif

// Arithmetic in GF(2^m), 2 <= m <= 64, polynomial basis modulo a configured
// irreducible polynomial.  Elements are bitmasks of polynomials of degree < m
// stored in a single machine word; this covers every field size the attack
// pipeline uses while keeping multiplication a handful of instructions.

namespace zm {

using fe = u64;  // field element; bits at positions >= m are zero

// Carry-less 64x64 -> 128 polynomial product.
inline u128 clmul64(u64 a, u64 b) {
#if defined(__PCLMUL__)
  __m128i r = _mm_clmulepi64_si128(_mm_set_epi64x(0, (long long)a),
                                   _mm_set_epi64x(0, (long long)b), 0x00);
  u64 lo = (u64)_mm_cvtsi128_si64(r);
  u64 hi = (u64)_mm_cvtsi128_si64(_mm_srli_si128(r, 8));
  return ((u128)hi << 64) | lo;
#else
  u128 acc = 0, aa = a;
  while (b) {
    if (b & 1) acc ^= aa;
    aa <<= 1;
    b >>= 1;
  }
  return acc;
#endif
}

inline int poly_degree(u128 p) {
  u64 hi = (u64)(p >> 64);
  if (hi) return 127 - __builtin_clzll(hi);
  u64 lo = (u64)p;
  if (lo) return 63 - __builtin_clzll(lo);
  return -1;  // zero polynomial
}

// a*b mod f over GF(2)[x], schoolbook.  Slow path used for validation and
// for the m = 64 case where the reduction polynomial needs 65 bits.
inline u64 polymulmod(u64 a, u64 b, u128 f, unsigned m) {
  u128 prod = clmul64(a, b);
  for (int i = 2 * (int)m - 2; i >= (int)m; --i)
    if ((prod >> i) & 1) prod ^= f << (i - m);
  return (u64)prod;
}

inline u128 polygcd(u128 a, u128 b) {
  while (b != 0) {
    int da = poly_degree(a), db = poly_degree(b);
    if (da < db) {
      std::swap(a, b);
      std::swap(da, db);
    }
    while (da >= db && a != 0) {
      a ^= b << (da - db);
      da = poly_degree(a);
    }
    std::swap(a, b);
  }
  return a;
}

// f of degree m is irreducible over GF(2) iff gcd(x^(2^k) + x, f) = 1 for
// every k <= m/2 (any nontrivial factorization has a factor of degree
// at most m/2, and x^(2^k) + x is the product of all irreducibles of
// degree dividing k).
inline bool is_irreducible_gf2(u128 f, unsigned m) {
  if (poly_degree(f) != (int)m || m < 2) return false;
  u64 r = 0b10;  // the polynomial x
  for (unsigned k = 1; k <= m / 2; ++k) {
    r = polymulmod(r, r, f, m);  // r = x^(2^k) mod f
    if (polygcd((u128)(r ^ 0b10), f) != 1) return false;
  }
  return true;
}

// Lowest-weight irreducible polynomial of the given degree: the trinomial
// x^m + x^a + 1 with smallest a when one exists, else the lexicographically
// smallest pentanomial.  Computed rather than tabulated, so every degree in
// [2, 64] is covered without transcription risk.
inline u128 default_reduction_poly_full(unsigned m) {
  if (m < 2 || m > 64) throw std::invalid_argument("field degree out of range [2, 64]");
  const u128 top = (u128)1 << m;
  for (unsigned a = 1; a < m; ++a) {
    u128 f = top | ((u128)1 << a) | 1;
    if (is_irreducible_gf2(f, m)) return f;
  }
  for (unsigned c = 3; c < m; ++c)
    for (unsigned b = 2; b < c; ++b)
      for (unsigned a = 1; a < b; ++a) {
        u128 f = top | ((u128)1 << c) | ((u128)1 << b) | ((u128)1 << a) | 1;
        if (is_irreducible_gf2(f, m)) return f;
      }
  throw std::logic_error("no low-weight irreducible found");  // unreachable
}

// Full reduction polynomial truncated to 64 bits; for m = 64 the x^64 term
// is implicit.  This is the form config files use.
inline u64 default_reduction_poly(unsigned m) {
  return (u64)default_reduction_poly_full(m);
}

struct FieldParams {
  unsigned degree = 0;
  u64 reduction_poly = 0;  // includes the x^degree bit except when degree = 64
};

class Gf2m {
 public:
  explicit Gf2m(unsigned degree) : Gf2m(degree, default_reduction_poly(degree)) {}

  Gf2m(unsigned degree, u64 reduction_poly) : m_(degree), poly_(reduction_poly) {
    if (degree < 2 || degree > 64)
      throw std::invalid_argument("field degree out of range [2, 64]");
    full_poly_ = (degree == 64) ? (((u128)1 << 64) | reduction_poly)
                                : (u128)reduction_poly;
    if (poly_degree(full_poly_) != (int)degree)
      throw std::invalid_argument("reduction polynomial does not have the field degree");
    if (!is_irreducible_gf2(full_poly_, degree))
      throw std::invalid_argument("reduction polynomial is reducible");
    mask_ = (degree == 64) ? ~0ull : (((u64)1 << degree) - 1);
    fast_ = degree <= 63;
    if (fast_) barrett_ = compute_barrett();
    trace_mask_ = compute_trace_mask();
    theta_ = find_trace_one_element();
  }

  unsigned degree() const { return m_; }
  u64 reduction_poly() const { return poly_; }
  u64 element_mask() const { return mask_; }
  FieldParams params() const { return {m_, poly_}; }
  bool is_valid(fe a) const { return (a & ~mask_) == 0; }

  static fe add(fe a, fe b) { return a ^ b; }

  fe mul(fe a, fe b) const { return reduce(clmul64(a, b)); }
  fe sqr(fe a) const { return reduce(clmul64(a, a)); }

  fe pow(fe a, u64 e) const {
    fe result = 1, base = a;
    while (e) {
      if (e & 1) result = mul(result, base);
      base = sqr(base);
      e >>= 1;
    }
    return result;
  }

  // Extended Euclid on polynomials.
  fe inv(fe a) const {
    if (a == 0) throw std::domain_error("inverse of zero in GF(2^m)");
    u128 r0 = full_poly_, r1 = a;
    u128 t0 = 0, t1 = 1;
    while (r1 != 0) {
      int d0 = poly_degree(r0), d1 = poly_degree(r1);
      if (d0 < d1) {
        std::swap(r0, r1);
        std::swap(t0, t1);
        std::swap(d0, d1);
      }
      r0 ^= r1 << (d0 - d1);
      t0 ^= t1 << (d0 - d1);
      if (r0 == 0) {
        std::swap(r0, r1);
        std::swap(t0, t1);
        break;
      }
    }
    assert(r0 == 1);  // gcd(f, a) = 1 since f is irreducible and a != 0
    // t0 may still have degree >= m; fold it down.
    while (poly_degree(t0) >= (int)m_) {
      int d = poly_degree(t0);
      t0 ^= full_poly_ << (d - m_);
    }
    return (fe)t0;
  }

  // Montgomery batch inversion: inverts every nonzero entry in place,
  // leaving zero entries untouched.  One field inversion total.
  void batch_inv(std::span<fe> xs) const {
    thread_local std::vector<fe> prefixes;
    prefixes.clear();
    fe acc = 1;
    for (fe x : xs) {
      if (x == 0) continue;
      prefixes.push_back(acc);
      acc = mul(acc, x);
    }
    if (prefixes.empty()) return;
    fe inv_acc = inv(acc);
    for (std::size_t i = xs.size(); i-- > 0;) {
      if (xs[i] == 0) continue;
      fe prefix = prefixes.back();
      prefixes.pop_back();
      fe x = xs[i];
      xs[i] = mul(inv_acc, prefix);
      inv_acc = mul(inv_acc, x);
    }
  }

  // Tr(a) = sum of a^(2^i); GF(2)-linear, so it reduces to a parity of
  // masked bits once the trace of each basis monomial is known.
  unsigned trace(fe a) const { return __builtin_popcountll(a & trace_mask_) & 1u; }

  // Square root: squaring is a bijection in characteristic 2.
  fe sqrt(fe a) const {
    fe r = a;
    for (unsigned i = 0; i + 1 < m_; ++i) r = sqr(r);
    return r;
  }

  // Roots of z^2 + z = c.  Solvable iff Tr(c) = 0, and then the two roots
  // differ by 1.  Odd m uses the half-trace; even m uses the standard
  // theta-weighted sum with a fixed trace-one element theta.
  std::optional<std::pair<fe, fe>> solve_quadratic(fe c) const {
    if (trace(c) != 0) return std::nullopt;
    fe z;
    if (m_ & 1) {
      z = half_trace(c);
    } else {
      // z = sum_{i=0}^{m-2} S_i * theta^(2^i) with S_i = sum_{j>i} c^(2^j)
      fe cj = c;  // c^(2^j) running value, j from 1
      std::vector<fe> suffix(m_);
      suffix[m_ - 1] = 0;
      std::vector<fe> cpow(m_);
      cpow[0] = c;
      for (unsigned j = 1; j < m_; ++j) {
        cj = sqr(cj);
        cpow[j] = cj;
      }
      for (unsigned i = m_ - 1; i-- > 0;) suffix[i] = add(suffix[i + 1], cpow[i + 1]);
      fe theta_pow = theta_;
      z = 0;
      for (unsigned i = 0; i + 1 < m_; ++i) {
        z = add(z, mul(suffix[i], theta_pow));
        theta_pow = sqr(theta_pow);
      }
    }
    assert(add(sqr(z), z) == c);
    return std::make_pair(z, z ^ 1);
  }

  fe half_trace(fe c) const {
    fe z = c;
    fe t = c;
    for (unsigned i = 1; i <= (m_ - 1) / 2; ++i) {
      t = sqr(sqr(t));
      z = add(z, t);
    }
    return z;
  }

  bool operator==(const Gf2m& other) const {
    return m_ == other.m_ && poly_ == other.poly_;
  }

 private:
  fe reduce(u128 prod) const {
    if (fast_) {
      // Barrett reduction for binary polynomials: exact for products of two
      // elements of degree < m when u = floor(x^(2m) / f).
      u64 c1 = (u64)(prod >> m_);
      u64 q = (u64)(clmul64(c1, barrett_) >> m_);
      u64 r = (u64)(prod ^ clmul64(q, (u64)full_poly_));
      assert((r & ~mask_) == 0);
      return r;
    }
    for (int i = 2 * (int)m_ - 2; i >= (int)m_; --i)
      if ((prod >> i) & 1) prod ^= full_poly_ << (i - m_);
    return (fe)prod;
  }

  u64 compute_barrett() const {
    // Long division of x^(2m) by f; quotient has degree exactly m.
    u128 rem = (u128)1 << (2 * m_);
    u128 q = 0;
    for (int d = poly_degree(rem); d >= (int)m_; d = poly_degree(rem)) {
      q |= (u128)1 << (d - m_);
      rem ^= full_poly_ << (d - m_);
    }
    return (u64)q;
  }

  u64 compute_trace_mask() const {
    u64 mask = 0;
    for (unsigned i = 0; i < m_; ++i) {
      fe a = (u64)1 << i;
      fe t = a, acc = a;
      for (unsigned k = 1; k < m_; ++k) {
        t = sqr(t);
        acc = add(acc, t);
      }
      assert(acc <= 1);  // trace lands in the prime subfield
      if (acc) mask |= (u64)1 << i;
    }
    return mask;
  }

  fe find_trace_one_element() const {
    for (unsigned i = 0; i < m_; ++i)
      if (trace_mask_ & ((u64)1 << i)) return (u64)1 << i;
    throw std::logic_error("trace identically zero");  // impossible
  }

  unsigned m_;
  u64 poly_;
  u128 full_poly_;
  u64 mask_ = 0;
  u64 barrett_ = 0;
  u64 trace_mask_ = 0;
  fe theta_ = 0;
  bool fast_ = false;
};

}  // namespace zm
