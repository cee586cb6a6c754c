#pragma once

#include <array>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "zerominor/curve.hpp"
#include "zerominor/linalg.hpp"
#include "zerominor/matrix.hpp"
#include "zerominor/rng.hpp"

// Builds one randomized attack instance: sample l-1 multiples of the
// generator and l+1 negated multiples of the challenge, evaluate every
// degree-n' monomial at each point, take the left kernel of that 2l-row
// matrix, and reduce the kernel basis to [dense | reverse-identity] form.
// The dense part is where the zero-minor search happens.

namespace zm {

struct MonomialBasis {
  unsigned degree = 0;
  // exponent triples (a, b, c) with a + b + c = degree, descending
  // lexicographic; the order is fixed for the process lifetime
  std::vector<std::array<unsigned, 3>> exponents;

  std::size_t size() const { return exponents.size(); }
};

inline MonomialBasis enumerate_monomials(unsigned nprime) {
  if (nprime < 1) throw std::invalid_argument("monomial degree must be at least 1");
  MonomialBasis basis;
  basis.degree = nprime;
  for (unsigned a = nprime + 1; a-- > 0;)
    for (unsigned b = nprime - a + 1; b-- > 0;) basis.exponents.push_back({a, b, nprime - a - b});
  // size is C(nprime + 2, 2) by stars and bars
  return basis;
}

struct InstanceDims {
  unsigned nprime = 0;
  std::size_t d = 0;          // 3 * nprime, the Bezout intersection bound
  std::size_t l = 0;          // kernel dimension target; d = l throughout
  std::size_t monomials = 0;  // C(nprime + 2, 2)
};

inline InstanceDims instance_dims(unsigned field_degree, unsigned nprime_multiplier) {
  if (nprime_multiplier < 1) throw std::invalid_argument("nprime multiplier must be >= 1");
  InstanceDims dims;
  dims.nprime = nprime_multiplier * field_degree;
  dims.d = 3 * (std::size_t)dims.nprime;
  dims.l = dims.d;
  dims.monomials = (std::size_t)(dims.nprime + 2) * (dims.nprime + 1) / 2;
  return dims;
}

struct ResampleExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PointSample {
  std::vector<u64> p_mults;    // l-1 distinct n_i; point i is n_i * P
  std::vector<u64> q_mults;    // l+1 distinct n_j; point is (-n_j mod p) * Q
  std::vector<Point> points;   // 2l points, P-block first then Q-block
};

namespace detail {

struct PointKey {
  std::size_t operator()(const Point& pt) const {
    u64 h = pt.inf ? 0x9E3779B97F4A7C15ull : pt.x;
    h ^= pt.y + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    return (std::size_t)h;
  }
};

}  // namespace detail

// Draws multipliers until all 2l points are affine and pairwise distinct.
// A duplicate draw (including the planted collision n_i * P = -n_j * Q, which
// happens exactly when n_i + m n_j = 0 mod p) is retried slot by slot.
template <typename RNG>
PointSample sample_points(const SubgroupCtx& ctx, std::size_t l, RNG& rng,
                          std::size_t retry_budget = 1024) {
  if (2 * l >= ctx.p)
    throw std::invalid_argument("group too small: need 2l < p for distinct multipliers");
  PointSample out;
  out.points.reserve(2 * l);
  std::unordered_set<Point, detail::PointKey> seen;
  std::unordered_set<u64> used_p, used_q;
  std::size_t retries = 0;
  auto draw = [&](std::vector<u64>& mults, std::unordered_set<u64>& used, bool q_block) {
    while (true) {
      if (retries > retry_budget)
        throw ResampleExhausted("point sampling exhausted its retry budget");
      u64 n = 1 + rng.below(ctx.p - 1);
      if (!used.insert(n).second) {
        ++retries;
        continue;
      }
      Point pt = q_block ? ec_scalar_mul(ctx.curve, ctx.p - n, ctx.challenge)
                         : ec_scalar_mul(ctx.curve, n, ctx.generator);
      if (pt.inf || !seen.insert(pt).second) {
        used.erase(n);
        ++retries;
        continue;
      }
      mults.push_back(n);
      out.points.push_back(pt);
      return;
    }
  };
  for (std::size_t i = 0; i + 1 < l; ++i) draw(out.p_mults, used_p, false);
  for (std::size_t j = 0; j < l + 1; ++j) draw(out.q_mults, used_q, true);
  return out;
}

// Monomial evaluation matrix: row i holds x_i^a * y_i^b over the basis
// order, with points embedded affinely as (x, y, 1).
inline Mat build_point_matrix(const Gf2m& F, const std::vector<Point>& points,
                              const MonomialBasis& basis) {
  if (points.empty()) throw std::invalid_argument("no points to evaluate");
  Mat M(points.size(), basis.size());
  std::vector<fe> xp(basis.degree + 1), yp(basis.degree + 1);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point& pt = points[i];
    if (pt.inf) throw std::invalid_argument("identity point has no affine chart");
    xp[0] = yp[0] = 1;
    for (unsigned k = 1; k <= basis.degree; ++k) {
      xp[k] = F.mul(xp[k - 1], pt.x);
      yp[k] = F.mul(yp[k - 1], pt.y);
    }
    for (std::size_t j = 0; j < basis.size(); ++j)
      M(i, j) = F.mul(xp[basis.exponents[j][0]], yp[basis.exponents[j][1]]);
  }
  return M;
}

struct Instance {
  SubgroupCtx ctx;
  unsigned nprime = 0;
  std::size_t l = 0;
  PointSample sample;
  Mat monomial_matrix;  // 2l x C(n'+2, 2)
  Mat kernel;           // l x 2l, [dense | reverse-identity]; columns indexed by points
  Mat dense;            // left l x l block of the kernel basis
  u64 seed = 0;
  std::size_t reduction_failures = 0;  // kernels burned on a singular right block

  const Gf2m& field() const { return ctx.curve.field; }

  // Multiplier for kernel column c under the P-block-then-Q-block layout.
  bool is_q_column(std::size_t c) const { return c >= l - 1; }
  u64 column_multiplier(std::size_t c) const {
    return is_q_column(c) ? sample.q_mults[c - (l - 1)] : sample.p_mults[c];
  }
};

struct BuildOptions {
  std::size_t sample_retry_budget = 1024;
  std::size_t reduction_retry_budget = 64;
};

inline Instance build_instance(const SubgroupCtx& ctx, unsigned nprime, u64 seed,
                               const BuildOptions& opts = {}) {
  std::size_t l = 3 * (std::size_t)nprime;
  MonomialBasis basis = enumerate_monomials(nprime);
  for (std::size_t attempt = 0; attempt <= opts.reduction_retry_budget; ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    PointSample sample = sample_points(ctx, l, rng, opts.sample_retry_budget);
    Mat M = build_point_matrix(ctx.curve.field, sample.points, basis);
    Mat K0 = left_kernel(ctx.curve.field, M);
    if (K0.rows() != l)
      throw std::logic_error("kernel dimension is not l; duplicate points slipped through");
    auto dense = reduce_to_reverse_identity(ctx.curve.field, K0);
    if (!dense) continue;  // singular right block: burn this kernel and resample
    Instance inst{ctx,       nprime, l, std::move(sample), std::move(M),
                  hcat(*dense, Mat::reverse_identity(l)), std::move(*dense), seed, attempt};
    return inst;
  }
  throw ResampleExhausted("reverse-identity reduction kept failing; degenerate group?");
}

// Entrywise check that the kernel rows annihilate the monomial matrix.
// Test and debugging hook; construction guarantees it.
inline bool verify_instance(const Instance& inst) {
  const Gf2m& F = inst.field();
  if (inst.kernel.rows() != inst.l || inst.kernel.cols() != 2 * inst.l) return false;
  Mat prod = mat_mul(F, inst.kernel, inst.monomial_matrix);
  for (std::size_t r = 0; r < prod.rows(); ++r)
    for (std::size_t c = 0; c < prod.cols(); ++c)
      if (prod(r, c) != 0) return false;
  for (std::size_t i = 0; i < inst.l; ++i)
    for (std::size_t j = 0; j < inst.l; ++j)
      if (inst.kernel(i, inst.l + j) != (fe)(j == inst.l - 1 - i ? 1 : 0)) return false;
  return true;
}

// Instance fixture: header plus the three matrices in the debug dump format.
inline void dump_instance(std::ostream& os, const Instance& inst) {
  os << "# instance fixture v1\n";
  os << "seed " << std::hex << inst.seed << std::dec << '\n';
  os << "field_degree " << inst.field().degree() << '\n';
  os << "reduction_poly " << std::hex << inst.field().reduction_poly() << std::dec << '\n';
  os << "nprime " << inst.nprime << '\n';
  os << "subgroup_prime " << inst.ctx.p << '\n';
  os << "p_multipliers";
  for (u64 n : inst.sample.p_mults) os << ' ' << n;
  os << '\n';
  os << "q_multipliers";
  for (u64 n : inst.sample.q_mults) os << ' ' << n;
  os << '\n';
  os << "matrix M " << inst.monomial_matrix.rows() << ' ' << inst.monomial_matrix.cols() << '\n';
  dump_matrix(os, inst.monomial_matrix);
  os << "matrix K " << inst.kernel.rows() << ' ' << inst.kernel.cols() << '\n';
  dump_matrix(os, inst.kernel);
  os << "matrix A " << inst.dense.rows() << ' ' << inst.dense.cols() << '\n';
  dump_matrix(os, inst.dense);
}

}  // namespace zm
