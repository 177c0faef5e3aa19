#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wavest {

/// Row-compressed sparse matrix. Column indices are sorted within each row.
struct CsrMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> row_ptr;
  std::vector<int> col;
  std::vector<double> val;

  std::size_t nnz() const { return val.size(); }
  /// Entry (i, j), 0 if not stored.
  double at(std::size_t i, std::size_t j) const;
  /// Position of (i, j) in `val`, or npos.
  std::size_t find(std::size_t i, std::size_t j) const;
  std::vector<double> diagonal() const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

struct Triplet {
  int row;
  int col;
  double value;
};

/// Duplicates are summed in input order, so the result is deterministic.
CsrMatrix csr_from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);

/// Sub-matrix on the given row and column index sets; `col_map[j]` is the new
/// column of old column j, or -1 to drop it.
CsrMatrix csr_extract(const CsrMatrix& a, std::span<const int> row_ids, std::span<const int> col_map,
                      std::size_t new_cols);

/// y = A + s B for matrices sharing a sparsity pattern.
CsrMatrix csr_add_scaled(const CsrMatrix& a, const CsrMatrix& b, double s);

/// max |a_ij - a_ji| / max |a_ij|.
double symmetry_defect(const CsrMatrix& a);

enum class Exec { serial, parallel };

// Vector kernels. Reductions sum fixed-size blocks and then add the block
// partials in order, so both paths give bitwise-identical results for any
// thread count.
namespace kernels {

inline constexpr std::size_t reduction_block = 2048;

void spmv(const CsrMatrix& a, std::span<const double> x, std::span<double> y, Exec exec);
double dot(std::span<const double> x, std::span<const double> y, Exec exec);
/// y = alpha x + beta y
void axpby(double alpha, std::span<const double> x, double beta, std::span<double> y, Exec exec);
double norm2(std::span<const double> x, Exec exec);

}  // namespace kernels

}  // namespace wavest
