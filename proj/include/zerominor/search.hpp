#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <vector>

#include "zerominor/gf2m.hpp"
#include "zerominor/linalg.hpp"
#include "zerominor/matrix.hpp"

// Zero-minor search strategies over the dense part of a kernel basis.
//
//   all2  scans every entry and every 2x2 minor of A directly.
//   gesc  takes the Schur complement of the leading principal block and
//         scans that for a zero entry or zero 2x2 minor; a hit augments the
//         block indices into a larger zero minor of A.
//   apm   slides a small contiguous principal block across the diagonal and,
//         per position, searches the block's Schur complement for a zero
//         n-minor ("n deviations"); deviation counts are tried in schedule
//         order across all positions before escalating.
//
// A zero n-minor of the Schur complement S of a nonsingular block B is
// exactly a zero (|B|+n)-minor of A on the augmented indices, by
// det A[B+R | B+C] = det(B) * det(S[R|C]); characteristic 2 has no signs, so
// the identity holds verbatim for every index combination.
//
// minors_tested counts candidate minors covered in the deterministic
// lexicographic scan order, up to and including the hit.  The ratio-class
// scan below accelerates the 2-deviation case without changing either the
// witness or that count.

namespace zm {

struct ApmSchedule {
  std::size_t principal_size = 2;
  std::vector<std::size_t> deviations{2, 3};
  // optional inclusive window of 0-based principal start positions
  std::optional<std::pair<std::size_t, std::size_t>> window;

  void validate() const {
    if (principal_size < 1) throw std::invalid_argument("principal size must be >= 1");
    if (deviations.empty()) throw std::invalid_argument("deviation schedule is empty");
    for (std::size_t d : deviations)
      if (d < 1) throw std::invalid_argument("deviation count must be >= 1");
    if (window && window->first > window->second)
      throw std::invalid_argument("empty position window");
  }
};

struct SearchOutcome {
  std::optional<MinorIndex> found;
  u64 minors_tested = 0;
  std::chrono::nanoseconds elapsed{0};
};

inline u64 binom(u64 n, u64 k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 r = 1;
  for (u64 i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return (u64)r;
}

namespace detail {

inline Mat entry_inverses(const Gf2m& F, const Mat& S) {
  Mat out = S;
  F.batch_inv(out.data());
  return out;
}

// Lexicographically first combination after idx, over {0..n-1}; false when done.
inline bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] != i + n - k) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

struct PairHit {
  std::size_t c1, c2;
};

// Lex-minimal zero-2-minor column pair for the fixed row pair (i, j).
// Column c maps to the projective point (S(i,c) : S(j,c)); two columns give a
// zero 2-minor iff they share a class or either column is (0, 0).  The
// lex-minimal pair is always (first, second occurrence) of some class, or the
// smallest pair involving a (0, 0) column, so one pass suffices.
inline std::optional<PairHit> scan_row_pair(const Gf2m& F, const Mat& S, const Mat& Sinv,
                                            std::size_t i, std::size_t j,
                                            std::unordered_map<u64, std::size_t>& classes) {
  classes.clear();
  const std::size_t n = S.cols();
  std::size_t first_inf = SIZE_MAX;
  std::size_t first_zero = SIZE_MAX;
  std::pair<std::size_t, std::size_t> best{SIZE_MAX, SIZE_MAX};
  for (std::size_t c = 0; c < n; ++c) {
    fe u = S(i, c), v = S(j, c);
    if (v == 0) {
      if (u == 0) {
        if (first_zero == SIZE_MAX) first_zero = c;
        continue;
      }
      if (first_inf == SIZE_MAX)
        first_inf = c;
      else
        best = std::min(best, {first_inf, c});
    } else {
      u64 key = F.mul(u, Sinv(j, c));
      auto [it, inserted] = classes.try_emplace(key, c);
      if (!inserted) best = std::min(best, {it->second, c});
    }
  }
  if (first_zero != SIZE_MAX && n >= 2) {
    std::pair<std::size_t, std::size_t> zc =
        first_zero == 0 ? std::make_pair<std::size_t, std::size_t>(0, 1)
                        : std::make_pair<std::size_t, std::size_t>(0, (std::size_t)first_zero);
    best = std::min(best, zc);
  }
  if (best.first == SIZE_MAX) return std::nullopt;
  return PairHit{best.first, best.second};
}

// Candidates visited by a lex scan of column pairs up to and including (k, l).
inline u64 pairs_covered(std::size_t k, std::size_t l, std::size_t n) {
  return (u64)k * (n - 1) - (u64)k * (k - 1) / 2 + (l - k);
}

struct SubHit {
  std::vector<std::size_t> rows, cols;
};

template <typename Abort>
std::optional<SubHit> find_zero_two_minor(const Gf2m& F, const Mat& S, const Mat& Sinv,
                                          u64& tested, Abort&& abort) {
  const std::size_t rows = S.rows(), n = S.cols();
  if (rows < 2 || n < 2) return std::nullopt;
  const u64 per_row_pair = binom(n, 2);
  std::unordered_map<u64, std::size_t> classes;
  classes.reserve(n);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = i + 1; j < rows; ++j) {
      if (abort()) return std::nullopt;
      if (auto hit = scan_row_pair(F, S, Sinv, i, j, classes)) {
        tested += pairs_covered(hit->c1, hit->c2, n);
        return SubHit{{i, j}, {hit->c1, hit->c2}};
      }
      tested += per_row_pair;
    }
  return std::nullopt;
}

template <typename Abort>
std::optional<SubHit> find_zero_three_minor(const Gf2m& F, const Mat& S, u64& tested,
                                            Abort&& abort) {
  const std::size_t rows = S.rows(), n = S.cols();
  if (rows < 3 || n < 3) return std::nullopt;
  for (std::size_t r0 = 0; r0 < rows; ++r0)
    for (std::size_t r1 = r0 + 1; r1 < rows; ++r1)
      for (std::size_t r2 = r1 + 1; r2 < rows; ++r2) {
        if (abort()) return std::nullopt;
        const fe* a = S.row_ptr(r0);
        const fe* b = S.row_ptr(r1);
        const fe* d = S.row_ptr(r2);
        for (std::size_t c1 = 0; c1 + 2 < n; ++c1)
          for (std::size_t c2 = c1 + 1; c2 + 1 < n; ++c2) {
            // 2x2 cofactors of columns (c1, c2); expansion along column c3
            fe m12 = F.add(F.mul(b[c1], d[c2]), F.mul(b[c2], d[c1]));
            fe m02 = F.add(F.mul(a[c1], d[c2]), F.mul(a[c2], d[c1]));
            fe m01 = F.add(F.mul(a[c1], b[c2]), F.mul(a[c2], b[c1]));
            for (std::size_t c3 = c2 + 1; c3 < n; ++c3) {
              ++tested;
              fe det = F.add(F.add(F.mul(a[c3], m12), F.mul(b[c3], m02)), F.mul(d[c3], m01));
              if (det == 0) return SubHit{{r0, r1, r2}, {c1, c2, c3}};
            }
          }
      }
  return std::nullopt;
}

template <typename Abort>
std::optional<SubHit> find_zero_n_minor_generic(const Gf2m& F, const Mat& S, std::size_t k,
                                                u64& tested, Abort&& abort) {
  const std::size_t rows = S.rows(), n = S.cols();
  if (rows < k || n < k) return std::nullopt;
  std::vector<std::size_t> rsel(k), csel(k);
  for (std::size_t i = 0; i < k; ++i) rsel[i] = i;
  do {
    if (abort()) return std::nullopt;
    for (std::size_t i = 0; i < k; ++i) csel[i] = i;
    do {
      ++tested;
      if (determinant(F, S.extract(rsel, csel)) == 0) return SubHit{rsel, csel};
    } while (next_combination(csel, n));
  } while (next_combination(rsel, rows));
  return std::nullopt;
}

template <typename Abort>
std::optional<SubHit> find_zero_minor(const Gf2m& F, const Mat& S, const Mat& Sinv, std::size_t k,
                                      u64& tested, Abort&& abort) {
  if (k == 1) {
    for (std::size_t r = 0; r < S.rows(); ++r)
      for (std::size_t c = 0; c < S.cols(); ++c) {
        ++tested;
        if (S(r, c) == 0) return SubHit{{r}, {c}};
      }
    return std::nullopt;
  }
  if (k == 2) return find_zero_two_minor(F, S, Sinv, tested, abort);
  if (k == 3) return find_zero_three_minor(F, S, tested, abort);
  return find_zero_n_minor_generic(F, S, k, tested, abort);
}

// Sorted union of a contiguous block with deviation indices taken from the
// complement (expressed as positions into comp).
inline std::vector<std::size_t> augment_block(std::size_t start, std::size_t size,
                                              const std::vector<std::size_t>& comp,
                                              const std::vector<std::size_t>& sel) {
  std::vector<std::size_t> out;
  out.reserve(size + sel.size());
  for (std::size_t i = 0; i < size; ++i) out.push_back(start + i);
  for (std::size_t s : sel) out.push_back(comp[s]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Scans every 1-minor (entry) then every 2-minor of A in lexicographic
// order, returning the first zero.  The paper-scale baseline.
inline SearchOutcome all_two_minor_search(const Gf2m& F, const Mat& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("search expects a square matrix");
  auto t0 = std::chrono::steady_clock::now();
  SearchOutcome out;
  const std::size_t n = A.rows();
  auto finish = [&](std::optional<MinorIndex> found) {
    out.found = std::move(found);
    out.elapsed = std::chrono::steady_clock::now() - t0;
    return out;
  };
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      ++out.minors_tested;
      if (A(r, c) == 0)
        return finish(MinorIndex{{r}, {c}, MinorMeta{Strategy::all_two_minor, SIZE_MAX, 0, 0}});
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
          ++out.minors_tested;
          fe det = F.add(F.mul(A(i, k), A(j, l)), F.mul(A(i, l), A(j, k)));
          if (det == 0)
            return finish(
                MinorIndex{{i, j}, {k, l}, MinorMeta{Strategy::all_two_minor, SIZE_MAX, 0, 0}});
        }
  return finish(std::nullopt);
}

// Schur complement of the leading principal block, then a zero-entry /
// zero-2-minor scan of it.  A singular block is itself a zero minor and is
// returned immediately.  block_size = 0 degenerates to all_two_minor_search.
inline SearchOutcome gesc_search(const Gf2m& F, const Mat& A, std::size_t block_size) {
  if (A.rows() != A.cols()) throw std::invalid_argument("search expects a square matrix");
  if (block_size >= A.rows() && !(block_size == 0 && A.rows() == 0))
    throw std::invalid_argument("gesc block size must be smaller than the matrix");
  auto t0 = std::chrono::steady_clock::now();
  SearchOutcome out;
  auto finish = [&](std::optional<MinorIndex> found) {
    out.found = std::move(found);
    out.elapsed = std::chrono::steady_clock::now() - t0;
    return out;
  };
  std::vector<std::size_t> block(block_size);
  for (std::size_t i = 0; i < block_size; ++i) block[i] = i;
  MinorIndex block_idx{block, block, MinorMeta{Strategy::gesc, 0, block_size, 0}};
  if (block_size > 0 && minor_det(F, A, block_idx) == 0) return finish(block_idx);
  auto comp = complement_indices(block, A.rows());
  Mat S = block_size == 0 ? A : *schur_complement(F, A, block_idx);
  auto map_hit = [&](const detail::SubHit& hit, std::size_t devs) {
    return MinorIndex{detail::augment_block(0, block_size, comp, hit.rows),
                      detail::augment_block(0, block_size, comp, hit.cols),
                      MinorMeta{Strategy::gesc, 0, block_size, devs}};
  };
  for (std::size_t r = 0; r < S.rows(); ++r)
    for (std::size_t c = 0; c < S.cols(); ++c) {
      ++out.minors_tested;
      if (S(r, c) == 0) return finish(map_hit(detail::SubHit{{r}, {c}}, 1));
    }
  Mat Sinv = detail::entry_inverses(F, S);
  auto never = [] { return false; };
  if (auto hit = detail::find_zero_two_minor(F, S, Sinv, out.minors_tested, never))
    return finish(map_hit(*hit, 2));
  return finish(std::nullopt);
}

namespace detail {

struct PositionScan {
  std::optional<MinorIndex> found;
  u64 tested = 0;
};

template <typename Abort>
PositionScan scan_position(const Gf2m& F, const Mat& A, std::size_t start, std::size_t psize,
                           std::size_t dev, Abort&& abort) {
  PositionScan out;
  std::vector<std::size_t> block(psize);
  for (std::size_t i = 0; i < psize; ++i) block[i] = start + i;
  MinorIndex block_idx{block, block, MinorMeta{Strategy::apm, start, psize, 0}};
  if (minor_det(F, A, block_idx) == 0) {
    out.found = block_idx;
    return out;
  }
  auto S = schur_complement(F, A, block_idx);
  Mat Sinv = dev <= 2 ? entry_inverses(F, *S) : Mat();
  auto comp = complement_indices(block, A.rows());
  if (auto hit = find_zero_minor(F, *S, Sinv, dev, out.tested, abort))
    out.found = MinorIndex{augment_block(start, psize, comp, hit->rows),
                           augment_block(start, psize, comp, hit->cols),
                           MinorMeta{Strategy::apm, start, psize, dev}};
  return out;
}

inline std::vector<std::size_t> apm_positions(std::size_t l, const ApmSchedule& sched) {
  if (sched.principal_size > l) return {};
  std::size_t lo = 0, hi = l - sched.principal_size;
  if (sched.window) {
    lo = std::max(lo, sched.window->first);
    hi = std::min(hi, sched.window->second);
    if (lo > hi) return {};
  }
  std::vector<std::size_t> out;
  for (std::size_t s = lo; s <= hi; ++s) out.push_back(s);
  return out;
}

// One deviation round over all positions.  Positions are independent work
// units; in parallel mode the lowest found position wins, which reproduces
// the sequential witness and the sequential minors_tested exactly.
inline std::optional<MinorIndex> run_round(const Gf2m& F, const Mat& A,
                                           const std::vector<std::size_t>& positions,
                                           std::size_t psize, std::size_t dev, unsigned threads,
                                           u64& tested) {
  if (threads <= 1 || positions.size() <= 1) {
    for (std::size_t p : positions) {
      auto scan = scan_position(F, A, p, psize, dev, [] { return false; });
      tested += scan.tested;
      if (scan.found) return scan.found;
    }
    return std::nullopt;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{SIZE_MAX};
  std::vector<PositionScan> results(positions.size());
  auto worker = [&] {
    while (true) {
      std::size_t idx = next.fetch_add(1);
      if (idx >= positions.size()) return;
      if (idx > best.load(std::memory_order_relaxed)) continue;
      auto scan = scan_position(F, A, positions[idx], psize, dev, [&, idx] {
        return best.load(std::memory_order_relaxed) < idx;
      });
      if (scan.found) {
        std::size_t cur = best.load();
        while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
        }
      }
      results[idx] = std::move(scan);
    }
  };
  std::vector<std::thread> pool;
  unsigned count = std::min<unsigned>(threads, (unsigned)positions.size());
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  std::size_t winner = best.load();
  if (winner == SIZE_MAX) {
    for (const auto& r : results) tested += r.tested;
    return std::nullopt;
  }
  for (std::size_t idx = 0; idx < winner; ++idx) tested += results[idx].tested;
  tested += results[winner].tested;
  return results[winner].found;
}

}  // namespace detail

// Almost-principal-minor search: deviation counts in schedule order, principal
// start positions ascending, Schur-complement indices lexicographic.
inline SearchOutcome apm_search(const Gf2m& F, const Mat& A, const ApmSchedule& sched,
                                unsigned threads = 1) {
  if (A.rows() != A.cols()) throw std::invalid_argument("search expects a square matrix");
  sched.validate();
  auto t0 = std::chrono::steady_clock::now();
  SearchOutcome out;
  auto positions = detail::apm_positions(A.rows(), sched);
  for (std::size_t dev : sched.deviations) {
    out.found = detail::run_round(F, A, positions, sched.principal_size, dev, threads,
                                  out.minors_tested);
    if (out.found) break;
  }
  out.elapsed = std::chrono::steady_clock::now() - t0;
  return out;
}

// Zero-minor census: counts ALL zero almost-principal minors per position and
// deviation count, not just the first.  Budget is in candidate minors; cells
// are planned position-major so a truncated run still reports whole cells.
struct CensusRow {
  std::size_t position = 0;  // 0-based principal start
  std::size_t deviations = 0;
  u64 zero_minors = 0;
};

struct CensusStats {
  std::size_t deviations = 0;
  u64 total = 0;
  double mean = 0.0;
  double stddev = 0.0;  // population, across counted positions
  std::size_t positions = 0;
};

struct CensusResult {
  std::vector<CensusRow> rows;
  std::vector<CensusStats> per_deviation;
  bool complete = true;
  u64 candidates = 0;
};

namespace detail {

// All zero k-minors of S, counted exactly.
inline u64 count_zero_minors(const Gf2m& F, const Mat& S, const Mat& Sinv, std::size_t k) {
  const std::size_t rows = S.rows(), n = S.cols();
  if (rows < k || n < k) return 0;
  u64 count = 0;
  if (k == 1) {
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (S(r, c) == 0) ++count;
    return count;
  }
  if (k == 2) {
    // per row pair: two columns give a zero 2-minor iff they share a
    // projective class or either is (0, 0); count pairs as columns arrive
    std::unordered_map<u64, std::size_t> class_sizes;
    class_sizes.reserve(n);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = i + 1; j < rows; ++j) {
        class_sizes.clear();
        std::size_t zeros = 0, infs = 0;
        for (std::size_t c = 0; c < n; ++c) {
          fe u = S(i, c), v = S(j, c);
          if (v == 0) {
            if (u == 0) {
              count += c - zeros;  // pairs with every earlier non-(0,0) column
              count += zeros;      // and with earlier (0,0) columns
              ++zeros;
            } else {
              count += infs++;
              count += zeros;
            }
          } else {
            count += class_sizes[F.mul(u, Sinv(j, c))]++;
            count += zeros;
          }
        }
      }
    return count;
  }
  if (k == 3) {
    for (std::size_t r0 = 0; r0 < rows; ++r0)
      for (std::size_t r1 = r0 + 1; r1 < rows; ++r1)
        for (std::size_t r2 = r1 + 1; r2 < rows; ++r2) {
          const fe* a = S.row_ptr(r0);
          const fe* b = S.row_ptr(r1);
          const fe* d = S.row_ptr(r2);
          for (std::size_t c1 = 0; c1 + 2 < n; ++c1)
            for (std::size_t c2 = c1 + 1; c2 + 1 < n; ++c2) {
              fe m12 = F.add(F.mul(b[c1], d[c2]), F.mul(b[c2], d[c1]));
              fe m02 = F.add(F.mul(a[c1], d[c2]), F.mul(a[c2], d[c1]));
              fe m01 = F.add(F.mul(a[c1], b[c2]), F.mul(a[c2], b[c1]));
              for (std::size_t c3 = c2 + 1; c3 < n; ++c3)
                if (F.add(F.add(F.mul(a[c3], m12), F.mul(b[c3], m02)), F.mul(d[c3], m01)) == 0)
                  ++count;
            }
        }
    return count;
  }
  std::vector<std::size_t> rsel(k), csel(k);
  for (std::size_t i = 0; i < k; ++i) rsel[i] = i;
  do {
    for (std::size_t i = 0; i < k; ++i) csel[i] = i;
    do {
      if (determinant(F, S.extract(rsel, csel)) == 0) ++count;
    } while (next_combination(csel, n));
  } while (next_combination(rsel, rows));
  return count;
}

// Fallback when the principal block is singular and the Schur route is
// unavailable: evaluate every almost-principal minor at this position
// directly.
inline u64 count_zero_apm_direct(const Gf2m& F, const Mat& A, std::size_t start,
                                 std::size_t psize, std::size_t dev) {
  std::vector<std::size_t> block(psize);
  for (std::size_t i = 0; i < psize; ++i) block[i] = start + i;
  auto comp = complement_indices(block, A.rows());
  const std::size_t n = comp.size();
  if (n < dev) return 0;
  u64 count = 0;
  std::vector<std::size_t> rsel(dev), csel(dev);
  for (std::size_t i = 0; i < dev; ++i) rsel[i] = i;
  do {
    auto alpha = augment_block(start, psize, comp, rsel);
    for (std::size_t i = 0; i < dev; ++i) csel[i] = i;
    do {
      auto beta = augment_block(start, psize, comp, csel);
      if (minor_det(F, A, MinorIndex{alpha, beta, std::nullopt}) == 0) ++count;
    } while (next_combination(csel, n));
  } while (next_combination(rsel, n));
  return count;
}

}  // namespace detail

inline CensusResult zero_minor_census(const Gf2m& F, const Mat& A, const ApmSchedule& sched,
                                      u64 budget, unsigned threads = 1) {
  if (A.rows() != A.cols()) throw std::invalid_argument("census expects a square matrix");
  sched.validate();
  CensusResult out;
  auto positions = detail::apm_positions(A.rows(), sched);
  const std::size_t comp_size = A.rows() - sched.principal_size;

  struct Cell {
    std::size_t position, dev;
    u64 candidates;
  };
  std::vector<Cell> cells;
  u128 planned = 0;
  for (std::size_t p : positions) {
    for (std::size_t dev : sched.deviations) {
      u64 cand = binom(comp_size, dev);
      u128 cost = (u128)cand * cand;
      if (planned + cost > budget) {
        out.complete = false;
        goto planned_done;
      }
      planned += cost;
      cells.push_back({p, dev, (u64)cost});
    }
  }
planned_done:
  out.candidates = (u64)planned;
  out.rows.resize(cells.size());

  auto count_cell = [&](const Cell& cell) -> u64 {
    std::vector<std::size_t> block(sched.principal_size);
    for (std::size_t i = 0; i < sched.principal_size; ++i) block[i] = cell.position + i;
    MinorIndex block_idx{block, block, std::nullopt};
    auto S = schur_complement(F, A, block_idx);
    if (!S) return detail::count_zero_apm_direct(F, A, cell.position, sched.principal_size,
                                                 cell.dev);
    Mat Sinv = cell.dev == 2 ? detail::entry_inverses(F, *S) : Mat();
    return detail::count_zero_minors(F, *S, Sinv, cell.dev);
  };

  if (threads <= 1 || cells.size() <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      out.rows[i] = {cells[i].position, cells[i].dev, count_cell(cells[i])};
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= cells.size()) return;
        out.rows[i] = {cells[i].position, cells[i].dev, count_cell(cells[i])};
      }
    };
    std::vector<std::thread> pool;
    unsigned count = std::min<unsigned>(threads, (unsigned)cells.size());
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (std::size_t dev : sched.deviations) {
    CensusStats st;
    st.deviations = dev;
    std::vector<u64> counts;
    for (const auto& row : out.rows)
      if (row.deviations == dev) counts.push_back(row.zero_minors);
    if (counts.empty()) continue;
    st.positions = counts.size();
    for (u64 c : counts) st.total += c;
    st.mean = (double)st.total / (double)counts.size();
    double var = 0;
    for (u64 c : counts) {
      double d = (double)c - st.mean;
      var += d * d;
    }
    st.stddev = std::sqrt(var / (double)counts.size());
    out.per_deviation.push_back(st);
  }
  return out;
}

}  // namespace zm
