#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "zerominor/rng.hpp"

// Integer arithmetic modulo the prime group order p.  Double-width
// intermediates cover every p below 2^62, which is the whole range the
// experiment harness targets.

namespace zm {

inline u64 add_mod(u64 a, u64 b, u64 p) {
  u64 s = a + b;
  return (s >= p || s < a) ? s - p : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + (p - b); }

inline u64 mul_mod(u64 a, u64 b, u64 p) { return (u64)((u128)a * b % p); }

inline u64 pow_mod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

inline u64 inv_mod(u64 a, u64 p) {
  a %= p;
  if (a == 0) throw std::domain_error("inverse of zero modulo p");
  // extended Euclid; p need not be prime as long as gcd(a, p) = 1
  long long t0 = 0, t1 = 1;
  u64 r0 = p, r1 = a;
  while (r1 != 0) {
    u64 q = r0 / r1;
    long long t2 = t0 - (long long)q * t1;
    t0 = t1;
    t1 = t2;
    u64 r2 = r0 % r1;
    r0 = r1;
    r1 = r2;
  }
  if (r0 != 1) throw std::domain_error("element not invertible modulo p");
  return t0 >= 0 ? (u64)t0 : p - (u64)(-t0);
}

// Deterministic Miller-Rabin; the fixed witness set decides primality for
// every 64-bit integer.
inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

inline u64 pollard_brent(u64 n, Rng& rng) {
  if ((n & 1) == 0) return 2;
  while (true) {
    u64 y = rng.below(n - 2) + 1, c = rng.below(n - 2) + 1, m = 128;
    u64 g = 1, r = 1, q = 1, x = 0, ys = 0;
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = add_mod(mul_mod(y, y, n), c, n);
      for (u64 k = 0; k < r && g == 1; k += m) {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = add_mod(mul_mod(y, y, n), c, n);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
      r <<= 1;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = add_mod(mul_mod(ys, ys, n), c, n);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      }
    }
    if (g != n) return g;
  }
}

}  // namespace detail

// Prime factorization with multiplicities, ascending by prime.
inline std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
  std::vector<u64> primes;
  for (u64 d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
    while (n % d == 0) {
      primes.push_back(d);
      n /= d;
    }
  std::vector<u64> stack;
  if (n > 1) stack.push_back(n);
  Rng rng(0x5EEDF00Dull);
  while (!stack.empty()) {
    u64 v = stack.back();
    stack.pop_back();
    if (v == 1) continue;
    if (is_prime_u64(v)) {
      primes.push_back(v);
      continue;
    }
    u64 f = detail::pollard_brent(v, rng);
    stack.push_back(f);
    stack.push_back(v / f);
  }
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 q : primes) {
    if (!out.empty() && out.back().first == q)
      ++out.back().second;
    else
      out.push_back({q, 1});
  }
  return out;
}

inline u64 largest_prime_factor(u64 n) {
  auto f = factorize(n);
  if (f.empty()) throw std::invalid_argument("no prime factor of " + std::to_string(n));
  return f.back().first;
}

}  // namespace zm
