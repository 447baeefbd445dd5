// Copyright 2026 The ghz-clifford Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include "ghz_clifford/pauli.hpp"
#include "ghz_clifford/rng.hpp"
#include "test_util.hpp"

namespace ghz {
namespace {

TEST(PauliString, ParseAndPrint) {
  const PauliString p = PauliString::parse("-iXZ_Y");
  EXPECT_EQ(p.n_qubits(), 4u);
  EXPECT_EQ(p.phase(), 3u);
  EXPECT_EQ(p.symbol(0), 'X');
  EXPECT_EQ(p.symbol(1), 'Z');
  EXPECT_EQ(p.symbol(2), 'I');
  EXPECT_EQ(p.symbol(3), 'Y');
  EXPECT_EQ(p.to_string(), "-iXZIY");
  EXPECT_EQ(PauliString::parse(p.to_string()), p);
  EXPECT_FALSE(p.is_hermitian());
  EXPECT_THROW(PauliString::parse("XQ"), std::invalid_argument);
}

TEST(PauliString, SingleQubitTable) {
  EXPECT_EQ(PauliString::parse("X") * PauliString::parse("Z"), PauliString::parse("-iY"));
  EXPECT_EQ(PauliString::parse("Z") * PauliString::parse("X"), PauliString::parse("+iY"));
  EXPECT_EQ(PauliString::parse("Y") * PauliString::parse("Y"), PauliString::parse("I"));
  EXPECT_EQ(PauliString::parse("X") * PauliString::parse("Y"), PauliString::parse("+iZ"));
  EXPECT_EQ(PauliString::parse("Y") * PauliString::parse("Z"), PauliString::parse("+iX"));
}

TEST(PauliString, ProductMatchesDenseMatrices) {
  Rng rng(77);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + rng.below(4);
    const PauliString a = testing::random_pauli(n, rng), b = testing::random_pauli(n, rng);
    const Eigen::MatrixXcd expected = testing::pauli_dense(a) * testing::pauli_dense(b);
    EXPECT_LT((testing::pauli_dense(a * b) - expected).norm(), 1e-12) << a.to_string() << " * " << b.to_string();
    const bool commute = (testing::pauli_dense(a) * testing::pauli_dense(b) -
                          testing::pauli_dense(b) * testing::pauli_dense(a)).norm() < 1e-12;
    EXPECT_EQ(a.commutes_with(b), commute);
  }
}

TEST(PauliString, WideProductMatchesPerQubitProduct) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 60 + rng.below(150);
    const PauliString a = testing::random_pauli(n, rng), b = testing::random_pauli(n, rng);
    // Reference: multiply qubit by qubit with single-qubit dense matrices.
    const std::complex<double> kPow[4] = {1.0, {0, 1}, -1.0, {0, -1}};
    std::complex<double> scalar = kPow[a.phase()] * kPow[b.phase()];
    PauliString expected(n);
    for (std::size_t q = 0; q < n; ++q) {
      PauliString pa(1), pb(1);
      pa.set(0, a.x(q), a.z(q));
      pb.set(0, b.x(q), b.z(q));
      const Eigen::MatrixXcd prod = testing::pauli_dense(pa) * testing::pauli_dense(pb);
      PauliString r(1);
      r.set(0, a.x(q) != b.x(q), a.z(q) != b.z(q));
      const Eigen::MatrixXcd base = testing::pauli_dense(r);
      // prod = c * base for a unit c in {1, i, -1, -i}.
      const Eigen::Index k = std::abs(base(0, 0)) > 0.5 ? 0 : 1;
      scalar *= prod(k, 0) / base(k, 0);
      expected.set(q, r.x(0), r.z(0));
    }
    const PauliString got = a * b;
    for (std::size_t q = 0; q < n; ++q) ASSERT_EQ(got.symbol(q), expected.symbol(q));
    EXPECT_LT(std::abs(kPow[got.phase()] - scalar), 1e-9);
  }
}

TEST(PauliString, SizeMismatchThrows) {
  EXPECT_THROW(PauliString::parse("XX") * PauliString::parse("X"), std::invalid_argument);
}

}  // namespace
}  // namespace ghz
