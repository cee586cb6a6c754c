#pragma once

#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "zerominor/gf2m.hpp"

namespace zm {

// Dense row-major matrix over GF(2^m).  The matrix does not carry its field;
// every operation takes the field explicitly.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), d_(rows * cols, 0) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Mat reverse_identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, n - 1 - i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  fe& operator()(std::size_t r, std::size_t c) { return d_[r * cols_ + c]; }
  fe operator()(std::size_t r, std::size_t c) const { return d_[r * cols_ + c]; }

  fe* row_ptr(std::size_t r) { return d_.data() + r * cols_; }
  const fe* row_ptr(std::size_t r) const { return d_.data() + r * cols_; }

  std::vector<fe>& data() { return d_; }
  const std::vector<fe>& data() const { return d_; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    fe* ra = row_ptr(a);
    fe* rb = row_ptr(b);
    for (std::size_t c = 0; c < cols_; ++c) std::swap(ra[c], rb[c]);
  }

  Mat extract(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
    Mat out(rs.size(), cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) out(i, j) = (*this)(rs[i], cs[j]);
    return out;
  }

  bool operator==(const Mat& other) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<fe> d_;
};

inline Mat hcat(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hcat: row mismatch");
  Mat out(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
  }
  return out;
}

inline Mat vcat(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vcat: column mismatch");
  Mat out(a.rows() + b.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) out(a.rows() + r, c) = b(r, c);
  return out;
}

inline Mat mat_mul(const Gf2m& F, const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: shape mismatch");
  Mat out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      fe aik = a(i, k);
      if (aik == 0) continue;
      const fe* brow = b.row_ptr(k);
      fe* orow = out.row_ptr(i);
      for (std::size_t j = 0; j < b.cols(); ++j) orow[j] ^= F.mul(aik, brow[j]);
    }
  return out;
}

// Identifies a square sub-matrix by strictly increasing row and column index
// sets (0-based).  meta carries search provenance when the index came out of
// a strategy.
enum class Strategy { all_two_minor, gesc, apm };

inline const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::all_two_minor: return "all2";
    case Strategy::gesc: return "gesc";
    case Strategy::apm: return "apm";
  }
  return "?";
}

struct MinorMeta {
  Strategy strategy = Strategy::all_two_minor;
  std::size_t principal_pos = SIZE_MAX;   // start of the contiguous block, SIZE_MAX if none
  std::size_t principal_size = 0;
  std::size_t deviations = 0;             // indices outside the block (0 = the block itself)
};

struct MinorIndex {
  std::vector<std::size_t> rows;  // strictly increasing
  std::vector<std::size_t> cols;  // strictly increasing, same size as rows
  std::optional<MinorMeta> meta;

  std::size_t size() const { return rows.size(); }

  void validate(std::size_t host_rows, std::size_t host_cols) const {
    if (rows.size() != cols.size())
      throw std::invalid_argument("minor index: row/column count mismatch");
    auto check = [](const std::vector<std::size_t>& v, std::size_t bound) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] >= bound) throw std::out_of_range("minor index out of bounds");
        if (i > 0 && v[i] <= v[i - 1])
          throw std::invalid_argument("minor index not strictly increasing");
      }
    };
    check(rows, host_rows);
    check(cols, host_cols);
  }
};

// Debug dump format: one row per line, hex field elements space-separated.
inline void dump_matrix(std::ostream& os, const Mat& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) os << ' ';
      os << std::hex << m(r, c);
    }
    os << '\n';
  }
  os << std::dec;
}

inline Mat parse_matrix(std::istream& is, std::size_t rows, std::size_t cols) {
  Mat m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("matrix dump truncated");
    std::istringstream ls(line);
    for (std::size_t c = 0; c < cols; ++c)
      if (!(ls >> std::hex >> m(r, c))) throw std::runtime_error("matrix dump malformed");
  }
  return m;
}

}  // namespace zm
