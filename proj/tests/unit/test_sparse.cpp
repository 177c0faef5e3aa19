#include <random>
#include <stdexcept>

#include "doctest.h"
#include "wavest/fem.hpp"
#include "wavest/mesh.hpp"
#include "wavest/sparse.hpp"

using namespace wavest;

TEST_CASE("triplets sum duplicates and sort columns") {
  const auto a = csr_from_triplets(3, 3, {{2, 0, 1.0}, {0, 1, 2.0}, {0, 1, 3.0}, {1, 1, 4.0}, {0, 0, -1.0}});
  CHECK(a.nnz() == 4);
  CHECK(a.at(0, 1) == 5.0);
  CHECK(a.at(0, 0) == -1.0);
  CHECK(a.at(1, 2) == 0.0);
  CHECK(a.find(1, 2) == CsrMatrix::npos);
  CHECK(a.diagonal() == std::vector<double>{-1.0, 4.0, 0.0});
  CHECK_THROWS(csr_from_triplets(2, 2, {{2, 0, 1.0}}));
}

TEST_CASE("extract and add_scaled") {
  const auto a = csr_from_triplets(3, 3, {{0, 0, 2}, {0, 2, 1}, {1, 1, 3}, {2, 0, 1}, {2, 2, 4}});
  const std::vector<int> rows{0, 2}, cmap{0, -1, 1};
  const auto b = csr_extract(a, rows, cmap, 2);
  CHECK(b.rows == 2);
  CHECK(b.at(0, 0) == 2);
  CHECK(b.at(0, 1) == 1);
  CHECK(b.at(1, 1) == 4);
  const auto c = csr_add_scaled(a, a, 0.5);
  CHECK(c.at(2, 2) == 6.0);
  CHECK(symmetry_defect(a) == 0.0);
}

TEST_CASE("serial and parallel kernels agree bitwise") {
  const auto m = generate_structured(60, StructuredPattern::crisscross);
  const auto k = assemble_stiffness(m, Exec::serial);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-1, 1);
  std::vector<double> x(k.rows), y1(k.rows), y2(k.rows);
  for (auto& v : x) v = U(rng);
  kernels::spmv(k, x, y1, Exec::serial);
  kernels::spmv(k, x, y2, Exec::parallel);
  CHECK(y1 == y2);
  CHECK(kernels::dot(x, y1, Exec::serial) == kernels::dot(x, y1, Exec::parallel));
  CHECK(kernels::norm2(x, Exec::serial) == kernels::norm2(x, Exec::parallel));
  auto z1 = y1, z2 = y1;
  kernels::axpby(0.3, x, -1.7, z1, Exec::serial);
  kernels::axpby(0.3, x, -1.7, z2, Exec::parallel);
  CHECK(z1 == z2);
}
