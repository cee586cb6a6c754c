#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "zerominor/gf2m.hpp"
#include "zerominor/modp.hpp"
#include "zerominor/rng.hpp"

// Group arithmetic on the ordinary binary Weierstrass curve
//   y^2 + xy = x^3 + a x^2 + b,   b != 0,
// over GF(2^m), plus brute-force order computation for small fields and
// prime-order subgroup setup.  Affine coordinates throughout; point
// generation is a negligible fraction of the attack's runtime.

namespace zm {

struct CurveParams {
  Gf2m field;
  fe a = 0;
  fe b = 0;

  CurveParams(Gf2m f, fe a_, fe b_) : field(std::move(f)), a(a_), b(b_) {
    if (b == 0) throw std::invalid_argument("singular curve: b must be nonzero");
    if (!field.is_valid(a) || !field.is_valid(b))
      throw std::invalid_argument("curve coefficient outside the field");
  }
};

struct Point {
  fe x = 0, y = 0;
  bool inf = true;

  static Point infinity() { return {}; }
  static Point affine(fe x, fe y) { return {x, y, false}; }

  bool operator==(const Point&) const = default;
};

inline bool on_curve(const CurveParams& C, const Point& P) {
  if (P.inf) return true;
  const Gf2m& F = C.field;
  fe lhs = F.add(F.sqr(P.y), F.mul(P.x, P.y));
  fe rhs = F.add(F.mul(F.sqr(P.x), F.add(P.x, C.a)), C.b);
  return lhs == rhs;
}

inline Point ec_neg(const CurveParams& C, const Point& P) {
  if (P.inf) return P;
  return Point::affine(P.x, C.field.add(P.x, P.y));
}

inline Point ec_add(const CurveParams& C, const Point& P, const Point& Q) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  const Gf2m& F = C.field;
  if (P.x == Q.x) {
    if (P.y != Q.y) return Point::infinity();  // Q = -P
    if (P.x == 0) return Point::infinity();    // the 2-torsion point (0, sqrt(b))
    fe lam = F.add(P.x, F.mul(P.y, F.inv(P.x)));
    fe x3 = F.add(F.add(F.sqr(lam), lam), C.a);
    fe y3 = F.add(F.sqr(P.x), F.mul(F.add(lam, 1), x3));
    return Point::affine(x3, y3);
  }
  fe lam = F.mul(F.add(P.y, Q.y), F.inv(F.add(P.x, Q.x)));
  fe x3 = F.add(F.add(F.add(F.add(F.sqr(lam), lam), P.x), Q.x), C.a);
  fe y3 = F.add(F.add(F.mul(lam, F.add(P.x, x3)), x3), P.y);
  return Point::affine(x3, y3);
}

inline Point ec_scalar_mul(const CurveParams& C, u64 k, const Point& P) {
  Point acc = Point::infinity();
  Point base = P;
  while (k) {
    if (k & 1) acc = ec_add(C, acc, base);
    base = ec_add(C, base, base);
    k >>= 1;
  }
  return acc;
}

constexpr unsigned kEnumerateDegreeBudget = 28;

// Number of rational points, identity included.  For x != 0 the substitution
// y = xz turns the curve equation into z^2 + z = x + a + b/x^2, solvable iff
// the trace of the right side vanishes; x = 0 contributes the single point
// (0, sqrt(b)).
inline u64 ec_order(const CurveParams& C) {
  const Gf2m& F = C.field;
  if (F.degree() > kEnumerateDegreeBudget)
    throw std::invalid_argument("enumeration budget: field degree above " +
                                std::to_string(kEnumerateDegreeBudget));
  u64 count = 2;  // identity and (0, sqrt(b))
  for (fe x = 1; x <= F.element_mask(); ++x) {
    fe c = F.add(F.add(x, C.a), F.mul(C.b, F.inv(F.sqr(x))));
    if (F.trace(c) == 0) count += 2;
    if (x == F.element_mask()) break;  // avoid wrap at m = 64
  }
  return count;
}

inline std::vector<Point> ec_enumerate_points(const CurveParams& C) {
  const Gf2m& F = C.field;
  if (F.degree() > kEnumerateDegreeBudget)
    throw std::invalid_argument("enumeration budget: field degree above " +
                                std::to_string(kEnumerateDegreeBudget));
  std::vector<Point> pts;
  pts.push_back(Point::infinity());
  pts.push_back(Point::affine(0, F.sqrt(C.b)));
  for (fe x = 1; x <= F.element_mask(); ++x) {
    fe c = F.add(F.add(x, C.a), F.mul(C.b, F.inv(F.sqr(x))));
    if (auto roots = F.solve_quadratic(c)) {
      pts.push_back(Point::affine(x, F.mul(x, roots->first)));
      pts.push_back(Point::affine(x, F.mul(x, roots->second)));
    }
    if (x == F.element_mask()) break;
  }
  return pts;
}

inline Point random_point(const CurveParams& C, Rng& rng) {
  const Gf2m& F = C.field;
  while (true) {
    fe x = rng.next() & F.element_mask();
    if (x == 0) return Point::affine(0, F.sqrt(C.b));
    fe c = F.add(F.add(x, C.a), F.mul(C.b, F.inv(F.sqr(x))));
    auto roots = F.solve_quadratic(c);
    if (!roots) continue;
    fe z = rng.coin() ? roots->first : roots->second;
    return Point::affine(x, F.mul(x, z));
  }
}

// Prime-order subgroup with a DLP challenge: generator P of prime order p
// and challenge Q = secret * P.  The planted secret never lives here; it is
// returned separately so the attack path cannot see it by construction.
struct SubgroupCtx {
  CurveParams curve;
  u64 p = 0;          // prime order of the subgroup
  Point generator;    // P
  Point challenge;    // Q = secret * P

  void validate() const {
    if (!is_prime_u64(p)) throw std::invalid_argument("subgroup order is not prime");
    if (generator.inf) throw std::invalid_argument("generator is the identity");
    if (!on_curve(curve, generator) || !on_curve(curve, challenge))
      throw std::invalid_argument("subgroup point not on the curve");
    if (!ec_scalar_mul(curve, p, generator).inf)
      throw std::invalid_argument("generator order does not divide p");
    if (!ec_scalar_mul(curve, p, challenge).inf)
      throw std::invalid_argument("challenge not in the prime-order subgroup");
  }
};

struct SubgroupSetup {
  SubgroupCtx ctx;
  u64 secret = 0;  // ground truth for verification; the attack never reads it
};

// From a curve of known order N, picks the largest prime factor p at or above
// min_prime, cofactor-multiplies random points until a generator appears, and
// plants the challenge.  nullopt when no prime factor reaches min_prime.
inline std::optional<SubgroupSetup> find_prime_subgroup(const CurveParams& C, u64 order,
                                                        std::optional<u64> secret, u64 min_prime,
                                                        Rng& rng) {
  u64 p = largest_prime_factor(order);
  if (p < min_prime) return std::nullopt;
  u64 cofactor = order / p;
  Point P = Point::infinity();
  while (P.inf) P = ec_scalar_mul(C, cofactor, random_point(C, rng));
  u64 m;
  if (secret) {
    m = *secret;
    if (m == 0 || m >= p) throw std::invalid_argument("secret exponent outside [1, p-1]");
  } else {
    m = p > 3 ? 2 + rng.below(p - 3) : 1;  // 1 < m < p whenever the group allows it
  }
  SubgroupSetup out{SubgroupCtx{C, p, P, ec_scalar_mul(C, m, P)}, m};
  out.ctx.validate();
  return out;
}

}  // namespace zm
