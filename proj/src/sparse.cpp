#include "wavest/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wavest {

std::size_t CsrMatrix::find(std::size_t i, std::size_t j) const {
  const auto first = col.begin() + static_cast<std::ptrdiff_t>(row_ptr[i]);
  const auto last = col.begin() + static_cast<std::ptrdiff_t>(row_ptr[i + 1]);
  const auto it = std::lower_bound(first, last, static_cast<int>(j));
  if (it == last || *it != static_cast<int>(j)) return npos;
  return static_cast<std::size_t>(it - col.begin());
}

double CsrMatrix::at(std::size_t i, std::size_t j) const {
  const std::size_t p = find(i, j);
  return p == npos ? 0.0 : val[p];
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(std::min(rows, cols), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = at(i, i);
  return d;
}

CsrMatrix csr_from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries) {
  for (const auto& e : entries)
    if (e.row < 0 || e.col < 0 || static_cast<std::size_t>(e.row) >= rows ||
        static_cast<std::size_t>(e.col) >= cols)
      throw std::out_of_range("triplet index out of range");
  std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  CsrMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.row_ptr.assign(rows + 1, 0);
  for (std::size_t i = 0; i < entries.size();) {
    std::size_t j = i;
    double s = 0.0;
    while (j < entries.size() && entries[j].row == entries[i].row && entries[j].col == entries[i].col)
      s += entries[j++].value;
    m.col.push_back(entries[i].col);
    m.val.push_back(s);
    ++m.row_ptr[static_cast<std::size_t>(entries[i].row) + 1];
    i = j;
  }
  for (std::size_t r = 0; r < rows; ++r) m.row_ptr[r + 1] += m.row_ptr[r];
  return m;
}

CsrMatrix csr_extract(const CsrMatrix& a, std::span<const int> row_ids, std::span<const int> col_map,
                      std::size_t new_cols) {
  if (col_map.size() != a.cols) throw std::invalid_argument("column map size mismatch");
  CsrMatrix m;
  m.rows = row_ids.size();
  m.cols = new_cols;
  m.row_ptr.reserve(m.rows + 1);
  m.row_ptr.push_back(0);
  for (int r : row_ids) {
    const auto ri = static_cast<std::size_t>(r);
    // Column order is preserved because col_map is monotone on kept columns.
    for (std::size_t p = a.row_ptr[ri]; p < a.row_ptr[ri + 1]; ++p) {
      const int c = col_map[static_cast<std::size_t>(a.col[p])];
      if (c < 0) continue;
      m.col.push_back(c);
      m.val.push_back(a.val[p]);
    }
    m.row_ptr.push_back(m.col.size());
  }
  return m;
}

CsrMatrix csr_add_scaled(const CsrMatrix& a, const CsrMatrix& b, double s) {
  if (a.rows != b.rows || a.cols != b.cols || a.row_ptr != b.row_ptr || a.col != b.col)
    throw std::invalid_argument("csr_add_scaled needs identical sparsity patterns");
  CsrMatrix m = a;
  for (std::size_t p = 0; p < m.val.size(); ++p) m.val[p] = a.val[p] + s * b.val[p];
  return m;
}

double symmetry_defect(const CsrMatrix& a) {
  double amax = 0.0, d = 0.0;
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
      amax = std::max(amax, std::abs(a.val[p]));
      d = std::max(d, std::abs(a.val[p] - a.at(static_cast<std::size_t>(a.col[p]), i)));
    }
  return amax > 0.0 ? d / amax : 0.0;
}

namespace kernels {

namespace {

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("vector length mismatch");
}

double row_dot(const CsrMatrix& a, std::span<const double> x, std::size_t i) {
  double s = 0.0;
  for (std::size_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p)
    s += a.val[p] * x[static_cast<std::size_t>(a.col[p])];
  return s;
}

template <class BlockFn>
double blocked_sum(std::size_t n, Exec exec, BlockFn block) {
  const std::size_t nb = (n + reduction_block - 1) / reduction_block;
  std::vector<double> partial(nb, 0.0);
  const auto nbi = static_cast<std::ptrdiff_t>(nb);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < nbi; ++b) partial[static_cast<std::size_t>(b)] = block(static_cast<std::size_t>(b));
  } else {
    for (std::ptrdiff_t b = 0; b < nbi; ++b) partial[static_cast<std::size_t>(b)] = block(static_cast<std::size_t>(b));
  }
  double s = 0.0;
  for (double p : partial) s += p;
  return s;
}

}  // namespace

void spmv(const CsrMatrix& a, std::span<const double> x, std::span<double> y, Exec exec) {
  check_sizes(x.size(), a.cols);
  check_sizes(y.size(), a.rows);
  const auto n = static_cast<std::ptrdiff_t>(a.rows);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = row_dot(a, x, static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = row_dot(a, x, static_cast<std::size_t>(i));
  }
}

double dot(std::span<const double> x, std::span<const double> y, Exec exec) {
  check_sizes(x.size(), y.size());
  return blocked_sum(x.size(), exec, [&](std::size_t b) {
    const std::size_t lo = b * reduction_block;
    const std::size_t hi = std::min(x.size(), lo + reduction_block);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += x[i] * y[i];
    return s;
  });
}

void axpby(double alpha, std::span<const double> x, double beta, std::span<double> y, Exec exec) {
  check_sizes(x.size(), y.size());
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      y[k] = alpha * x[k] + beta * y[k];
    }
  } else {
    for (std::size_t k = 0; k < x.size(); ++k) y[k] = alpha * x[k] + beta * y[k];
  }
}

double norm2(std::span<const double> x, Exec exec) { return std::sqrt(dot(x, x, exec)); }

}  // namespace kernels

}  // namespace wavest
