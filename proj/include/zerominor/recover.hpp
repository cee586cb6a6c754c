#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "zerominor/kernelgen.hpp"
#include "zerominor/linalg.hpp"
#include "zerominor/modp.hpp"

// From a zero minor of the dense part to the secret exponent.
//
// A zero minor of A at rows alpha, cols beta lifts to a maximal zero minor of
// the kernel basis K = [A | reverse-identity]: combine the alpha rows of K by
// a left-null vector of A[alpha|beta] and the result v vanishes on beta and,
// through the sparse part, on one column per row outside alpha.  With the one
// of sparse column l + j sitting in row l - 1 - j (0-based), those extra zero
// columns are {2l - 1 - a : a outside alpha}.  v then has exactly l zeros,
// its support names l points whose sum is the identity, and the multiplier
// sums give the secret as sum_P * inv(sum_Q) mod p.

namespace zm {

enum class RecoverFailure {
  none,
  all_q_support,        // support drew no generator-block point
  zero_multiplier_sum,  // sum of challenge-block multipliers is 0 mod p
  zero_count_mismatch,  // solution vector did not have exactly l zeros
};

inline const char* recover_failure_name(RecoverFailure f) {
  switch (f) {
    case RecoverFailure::none: return "none";
    case RecoverFailure::all_q_support: return "all-q-support";
    case RecoverFailure::zero_multiplier_sum: return "zero-q-sum";
    case RecoverFailure::zero_count_mismatch: return "zero-count-mismatch";
  }
  return "?";
}

struct RecoverOutcome {
  std::optional<u64> secret;
  RecoverFailure failure = RecoverFailure::none;
  std::size_t support_p = 0;  // support columns in the generator block
  std::size_t support_q = 0;  // support columns in the challenge block
};

// Solves sum_p - m * sum_q = 0 mod p for m.
inline u64 congruence_solve(u64 sum_p, u64 sum_q, u64 p) {
  return mul_mod(sum_p % p, inv_mod(sum_q, p), p);
}

// Maximal zero-minor column set in K induced by a zero minor of A (0-based).
inline std::vector<std::size_t> lifted_column_set(const MinorIndex& zm, std::size_t l) {
  std::vector<std::size_t> cols(zm.cols);
  auto alpha_comp = complement_indices(zm.rows, l);
  for (std::size_t a : alpha_comp) cols.push_back(2 * l - 1 - a);
  std::sort(cols.begin(), cols.end());
  return cols;
}

inline RecoverOutcome recover_secret(const Instance& inst, const MinorIndex& zm) {
  const Gf2m& F = inst.field();
  const std::size_t l = inst.l;
  zm.validate(l, l);
  if (minor_det(F, inst.dense, zm) != 0)
    throw std::invalid_argument("recover_secret called with a nonzero minor");

  // nonzero left-null combination of the minor's rows
  Mat sub = inst.dense.extract(zm.rows, zm.cols);
  Mat null_basis = left_kernel(F, sub);
  const fe* w = null_basis.row_ptr(0);  // at least one row since the minor is zero

  // v = (w embedded at alpha) * K
  std::vector<fe> v(2 * l, 0);
  for (std::size_t i = 0; i < zm.size(); ++i) {
    fe wi = w[i];
    if (wi == 0) continue;
    const fe* krow = inst.kernel.row_ptr(zm.rows[i]);
    for (std::size_t c = 0; c < 2 * l; ++c) v[c] ^= F.mul(wi, krow[c]);
  }

  RecoverOutcome out;
  std::size_t zeros = 0;
  u64 sum_p = 0, sum_q = 0;
  for (std::size_t c = 0; c < 2 * l; ++c) {
    if (v[c] == 0) {
      ++zeros;
      continue;
    }
    if (inst.is_q_column(c)) {
      ++out.support_q;
      sum_q = add_mod(sum_q, inst.column_multiplier(c), inst.ctx.p);
    } else {
      ++out.support_p;
      sum_p = add_mod(sum_p, inst.column_multiplier(c), inst.ctx.p);
    }
  }
  if (zeros != l) {
    out.failure = RecoverFailure::zero_count_mismatch;
    return out;
  }
  if (out.support_p == 0) {
    out.failure = RecoverFailure::all_q_support;
    return out;
  }
  if (sum_q == 0) {
    out.failure = RecoverFailure::zero_multiplier_sum;
    return out;
  }
  out.secret = congruence_solve(sum_p, sum_q, inst.ctx.p);
  return out;
}

}  // namespace zm
