#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "pairalg/generators.hpp"
#include "pairalg/irreps.hpp"
#include "pairalg/quasispin.hpp"

using namespace pairalg;

namespace {

SystemSpec two(Statistics stat, int n1, int n2, int N) { return make_system_from_degeneracies(stat, {n1, n2}, N); }

// Nearby valid degeneracy: odd for bosons, even for fermions.
int deg(Statistics stat, int n) { return stat == Statistics::boson ? n | 1 : n & ~1; }

// <S+ S-> from the Fock oracle on the single-level state S+^(pairs) |v = 0>.
double oracle_pair_expectation(Statistics stat, int n, int pairs) {
  const auto space = make_space(make_system_from_degeneracies(stat, {n}, 0), 2 * pairs);
  const auto q = build_quasispin(space, 0);
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
  for (int p = 0; p < pairs; ++p) v = dense_block(q.plus, 2 * p) * v;
  v /= v.norm();
  const Eigen::MatrixXcd ss = dense_block(q.plus * q.minus, 2 * pairs);
  return (v.adjoint() * ss * v)(0, 0).real();
}

std::vector<double> block_values(const SystemSpec& sys, int v1, int v2, int N, const PairingParams& p) {
  return diagonalize_block(enumerate_block(sys, v1, v2, N), p, false).values;
}

}  // namespace

TEST(BlockBasis, CountsAtHalfFilling) {
  const auto b = enumerate_block(two(Statistics::boson, 5, 5, 50), 0, 0, 50);
  ASSERT_EQ(b.size(), 26);
  for (int i = 0; i < b.size(); ++i) EXPECT_EQ(b.state(i).N[0], 2 * i);
  EXPECT_EQ(enumerate_block(two(Statistics::fermion, 50, 50, 50), 0, 0, 50).size(), 26);
}

TEST(BlockBasis, RespectsFermionCapacity) {
  const auto sys = two(Statistics::fermion, 4, 4, 6);
  const auto b = enumerate_block(sys, 1, 1, 6);
  for (const auto& s : b.states()) {
    EXPECT_EQ(s.total(), 6);
    for (int k = 0; k < 2; ++k) EXPECT_LE(s.N[k], 4 - s.v[k]);
  }
  EXPECT_EQ(b.size(), 1);
}

TEST(BlockBasis, RejectsBadLabels) {
  EXPECT_THROW(enumerate_block(two(Statistics::fermion, 4, 4, 4), 3, 0, 4), InvalidArgument);
  EXPECT_THROW(enumerate_block(two(Statistics::boson, 1, 5, 4), 2, 0, 4), InvalidArgument);
  EXPECT_TRUE(enumerate_block(two(Statistics::boson, 3, 3, 4), 3, 0, 4).empty());
}

TEST(BlockBasis, SizesSumToFockDimension) {
  // Sum over blocks of size x dim[v1] dim[v2] counts every Fock state once.
  for (auto stat : {Statistics::boson, Statistics::fermion})
    for (int N = 0; N <= 6; ++N) {
      const int n1 = deg(stat, 4), n2 = deg(stat, 6);
      const auto sys = two(stat, n1, n2, N);
      long long total = 0;
      for (int v1 = 0; v1 <= N; ++v1)
        for (int v2 = 0; v1 + v2 <= N; ++v2) {
          if (!level_label_admissible(stat, sys.levels[0], v1) || !level_label_admissible(stat, sys.levels[1], v2))
            continue;
          total += enumerate_block(sys, v1, v2, N).size() * level_irrep_dimension(stat, n1, v1) *
                   level_irrep_dimension(stat, n2, v2);
        }
      EXPECT_EQ(total, fock_sector_size(stat, n1 + n2, N)) << to_string(stat) << " N=" << N;
    }
}

TEST(MatrixElements, DiagonalValues) {
  EXPECT_DOUBLE_EQ(diag_pairing_me(Statistics::fermion, 8, 2, 0), 4.0);
  EXPECT_DOUBLE_EQ(diag_pairing_me(Statistics::boson, 5, 2, 0), 2.5);
  for (auto stat : {Statistics::boson, Statistics::fermion})
    for (int v = 0; v <= 3; ++v) EXPECT_EQ(diag_pairing_me(stat, 8, v, v), 0.0);
}

TEST(MatrixElements, DiagonalMatchesOracle) {
  for (int pairs = 1; pairs <= 3; ++pairs) {
    EXPECT_NEAR(diag_pairing_me(Statistics::fermion, 8, 2 * pairs, 0),
                oracle_pair_expectation(Statistics::fermion, 8, pairs), 1e-12);
    EXPECT_NEAR(diag_pairing_me(Statistics::boson, 5, 2 * pairs, 0),
                oracle_pair_expectation(Statistics::boson, 5, pairs), 1e-12);
  }
}

TEST(MatrixElements, OffDiagonalValues) {
  EXPECT_DOUBLE_EQ(offdiag_pairing_me(Statistics::fermion, 4, 2, 0, 4, 2, 0), 2.0);
  EXPECT_DOUBLE_EQ(offdiag_pairing_me(Statistics::boson, 1, 0, 0, 1, 2, 0), 0.5);
  EXPECT_EQ(offdiag_pairing_me(Statistics::boson, 5, 0, 0, 5, 2, 2), 0.0);
  EXPECT_EQ(offdiag_pairing_me(Statistics::fermion, 4, 4, 0, 4, 2, 0), 0.0);
}

TEST(MatrixElements, OffDiagonalMatchesOracle) {
  // <N1+2, N2-2| S1+ S2- |N1, N2> between normalized paired states.
  for (auto stat : {Statistics::boson, Statistics::fermion}) {
    const int n1 = deg(stat, 4), n2 = deg(stat, 4);
    const auto sys = two(stat, n1, n2, 0);
    const auto space = make_space(sys, 6);
    const auto q1 = build_quasispin(space, 0), q2 = build_quasispin(space, 1);
    auto paired = [&](int p1, int p2) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
      int at = 0;
      for (int i = 0; i < p1; ++i, at += 2) v = dense_block(q1.plus, at) * v;
      for (int i = 0; i < p2; ++i, at += 2) v = dense_block(q2.plus, at) * v;
      return Eigen::VectorXcd(v / v.norm());
    };
    const Eigen::MatrixXcd hop = dense_block(q1.plus * q2.minus, 6);
    for (int p1 = 0; p1 <= 2; ++p1) {
      const int p2 = 3 - p1;
      if (stat == Statistics::fermion && (2 * p2 > n2 || 2 * (p1 + 1) > n1)) continue;
      const double oracle = std::abs((paired(p1 + 1, p2 - 1).adjoint() * hop * paired(p1, p2))(0, 0));
      EXPECT_NEAR(offdiag_pairing_me(stat, n1, 2 * p1, 0, n2, 2 * p2, 0), oracle, 1e-12)
          << to_string(stat) << " p1=" << p1;
    }
  }
}

TEST(MatrixElements, HermitianUnderReverseTransfer) {
  for (auto stat : {Statistics::boson, Statistics::fermion})
    for (int v1 = 0; v1 <= 2; ++v1)
      for (int v2 = 0; v2 <= 2; ++v2)
        for (int N1 = v1; N1 <= 10; N1 += 2)
          for (int N2 = v2 + 2; N2 <= 10; N2 += 2) {
            const int n1 = deg(stat, 6), n2 = deg(stat, 8);
            if (!level_state_valid(stat, n1, N1 + 2, v1) || !level_state_valid(stat, n2, N2, v2)) continue;
            const double forward = offdiag_pairing_me(stat, n1, N1, v1, n2, N2, v2);
            const double reverse = offdiag_pairing_me(stat, n2, N2 - 2, v2, n1, N1 + 2, v1);
            EXPECT_DOUBLE_EQ(forward, reverse);
          }
}

TEST(Hamiltonian, WeakCouplingIsDiagonal) {
  const auto sys = two(Statistics::boson, 3, 5, 8);
  const auto block = enumerate_block(sys, 1, 1, 8);
  const auto t = build_tridiagonal(block, uniform_two_level(0.3, 1.1, 0.0));
  for (double x : t.offdiag) EXPECT_EQ(x, 0.0);
  for (int i = 0; i < block.size(); ++i)
    EXPECT_DOUBLE_EQ(t.diag[i], 0.3 * block.state(i).N[0] + 1.1 * block.state(i).N[1]);
}

TEST(Hamiltonian, DenseAgreesWithTridiagonal) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto stat : {Statistics::boson, Statistics::fermion}) {
    const auto sys = two(stat, deg(stat, 6), deg(stat, 8), 6);
    const double g12 = u(rng);
    const PairingParams p{{u(rng), u(rng)}, {{u(rng), g12}, {g12, u(rng)}}, 1};
    const auto block = enumerate_block(sys, 0, 2, 6);
    const auto t = build_tridiagonal(block, p);
    const auto d = build_dense(block, p);
    EXPECT_EQ((d - d.transpose()).cwiseAbs().maxCoeff(), 0.0);
    for (int i = 0; i < block.size(); ++i) {
      EXPECT_DOUBLE_EQ(d(i, i), t.diag[i]);
      if (i + 1 < block.size()) {
        EXPECT_DOUBLE_EQ(d(i + 1, i), t.offdiag[i]);
      }
    }
  }
}

TEST(Hamiltonian, StrongCouplingDependsOnlyOnSeniority) {
  // eps = 0 with uniform G: each block eigenvalue is G/4 times the 4 S+S- value
  // of one total seniority v that branches to (v1, v2).
  const double G = 0.7;
  for (auto stat : {Statistics::boson, Statistics::fermion})
    for (int N : {4, 5, 6}) {
      const auto sys = two(stat, deg(stat, 4), deg(stat, 6), N);
      const int n = sys.total_degeneracy();
      for (int v1 = 0; v1 <= 3; ++v1)
        for (int v2 = 0; v2 <= 3; ++v2) {
          if (!level_label_admissible(stat, sys.levels[0], v1) || !level_label_admissible(stat, sys.levels[1], v2))
            continue;
          const auto block = enumerate_block(sys, v1, v2, N);
          if (block.empty()) continue;
          std::vector<double> expected;
          for (int v : branch_u_to_pair(N, stat, n)) {
            const auto labels = branch_pair_to_levels(v, sys);
            if (std::any_of(labels.begin(), labels.end(), [&](const auto& l) { return l.v1 == v1 && l.v2 == v2; })) {
              const int th = theta(stat);
              expected.push_back(G * 0.25 * th * (double(N) * (N + th * n - 2) - double(v) * (v + th * n - 2)));
            }
          }
          std::sort(expected.begin(), expected.end());
          const auto got = block_values(sys, v1, v2, N, uniform_two_level(0.0, 0.0, G));
          ASSERT_EQ(got.size(), expected.size()) << to_string(stat) << " N=" << N << " (" << v1 << "," << v2 << ")";
          for (size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], expected[i], 1e-12);
        }
    }
}

TEST(Hamiltonian, FermionParticleHoleSymmetry) {
  // With eps = 0 and no diagonal pairing the spectra at N and n - N coincide.
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n1 = 6, n2 = 8;
  for (int trial = 0; trial < 5; ++trial) {
    const double g12 = u(rng);
    const PairingParams p{{0.0, 0.0}, {{0.0, g12}, {g12, 0.0}}, 1};
    for (int N = 0; N <= n1 + n2; ++N) {
      const auto a = two(Statistics::fermion, n1, n2, N), b = two(Statistics::fermion, n1, n2, n1 + n2 - N);
      for (int v1 = 0; v1 <= n1 / 2; ++v1)
        for (int v2 = 0; v2 <= n2 / 2; ++v2) {
          const auto ba = enumerate_block(a, v1, v2, N), bb = enumerate_block(b, v1, v2, n1 + n2 - N);
          ASSERT_EQ(ba.size(), bb.size());
          if (ba.empty()) continue;
          const auto ea = diagonalize_block(ba, p, false).values, eb = diagonalize_block(bb, p, false).values;
          for (size_t i = 0; i < ea.size(); ++i) EXPECT_NEAR(ea[i], eb[i], 1e-12);
        }
    }
  }
}

TEST(Hamiltonian, ParticleHoleWithDiagonalPairing) {
  // Diagonal pairing picks up S-S+ = S+S- - 2 S0 under particle-hole
  // conjugation, a one-body term eps_k = -G_kk plus G_kk Omega_k.
  const int n1 = 6, n2 = 8;
  const PairingParams p{{0.0, 0.0}, {{0.4, -0.3}, {-0.3, 0.9}}, 1};
  const PairingParams shifted{{-0.4, -0.9}, p.G, 1};
  const double constant = 0.4 * n1 / 2.0 + 0.9 * n2 / 2.0;
  for (int N = 0; N <= n1 + n2; ++N) {
    const auto a = two(Statistics::fermion, n1, n2, N), b = two(Statistics::fermion, n1, n2, n1 + n2 - N);
    for (int v1 = 0; v1 <= n1 / 2; ++v1)
      for (int v2 = 0; v2 <= n2 / 2; ++v2) {
        const auto ba = enumerate_block(a, v1, v2, N), bb = enumerate_block(b, v1, v2, n1 + n2 - N);
        if (ba.empty()) continue;
        const auto ea = diagonalize_block(ba, shifted, false).values, eb = diagonalize_block(bb, p, false).values;
        for (size_t i = 0; i < ea.size(); ++i) EXPECT_NEAR(ea[i] + constant, eb[i], 1e-12) << "N=" << N;
      }
  }
}

TEST(Hamiltonian, ThreeLevelBlockMatchesOracle) {
  // Multi-level blocks against the oracle: multiset of block eigenvalues
  // weighted by level irrep dimensions.
  const auto sys = make_system_from_degeneracies(Statistics::fermion, {2, 4, 2}, 4);
  const PairingParams p{{0.0, 0.5, 1.2}, {{0.3, 0.2, -0.4}, {0.2, 0.6, 0.1}, {-0.4, 0.1, 0.2}}, 1};
  std::vector<double> engine;
  for (int v1 = 0; v1 <= 1; ++v1)
    for (int v2 = 0; v2 <= 2; ++v2)
      for (int v3 = 0; v3 <= 1; ++v3) {
        const BlockBasis block(sys, {v1, v2, v3}, 4);
        if (block.empty()) continue;
        const long long mult = level_irrep_dimension(Statistics::fermion, 2, v1) *
                               level_irrep_dimension(Statistics::fermion, 4, v2) *
                               level_irrep_dimension(Statistics::fermion, 2, v3);
        for (double x : diagonalize_block(block, p, false).values)
          for (long long m = 0; m < mult; ++m) engine.push_back(x);
      }
  std::sort(engine.begin(), engine.end());
  const auto space = make_space(sys, 4);
  const auto oracle = eig_hermitian(dense_block(pairing_hamiltonian_fock(space, p.eps, p.G), 4), false).values;
  ASSERT_EQ(engine.size(), oracle.size());
  for (size_t i = 0; i < engine.size(); ++i) EXPECT_NEAR(engine[i], oracle[i], 1e-10);
}

TEST(CasimirForm, UniformPairingCancelsSingleLevelTerms) {
  const auto sys = two(Statistics::boson, 3, 5, 0);
  for (int sigma : {1, -1}) {
    const auto c = casimir_form_params(uniform_two_level(0.0, 0.0, 0.8, sigma), sys);
    EXPECT_EQ(c.c2_u1, 0.0);
    EXPECT_EQ(c.c2_u2, 0.0);
    EXPECT_EQ(c.c2_pair1, 0.0);
    EXPECT_EQ(c.c2_pair2, 0.0);
    EXPECT_DOUBLE_EQ(c.c2_u12, 0.2);
    EXPECT_DOUBLE_EQ(c.c2_pair12, -0.1);
  }
}

TEST(CasimirForm, ZeroPairingIsOneBody) {
  const auto c = casimir_form_params(uniform_two_level(0.25, -1.5, 0.0), two(Statistics::fermion, 4, 4, 0));
  EXPECT_EQ(c.n1, 0.25);
  EXPECT_EQ(c.n2, -1.5);
  EXPECT_EQ(c.c2_u1, 0.0);
  EXPECT_EQ(c.c2_u12, 0.0);
  EXPECT_EQ(c.c2_pair12, 0.0);
}

TEST(CasimirForm, SignRule) {
  // sigma0 / sigma = -theta (-1)^(ja + jb)
  EXPECT_EQ(sigma0_for(make_system(Statistics::boson, {HalfInt(1), HalfInt(1)}, 0), 1), -1);
  EXPECT_EQ(sigma0_for(make_system(Statistics::boson, {HalfInt(0), HalfInt(2)}, 0), -1), 1);
  EXPECT_EQ(sigma0_for(make_system(Statistics::boson, {HalfInt(1), HalfInt(2)}, 0), 1), 1);
  EXPECT_EQ(sigma0_for(make_system(Statistics::fermion, {half(3), half(3)}, 0), 1), -1);
  EXPECT_EQ(sigma0_for(make_system(Statistics::fermion, {half(1), half(3)}, 0), 1), 1);
}

TEST(Validation, RejectsMalformedParams) {
  EXPECT_THROW((PairingParams{{0.0}, {{0.0}}, 1}.validate(2)), InvalidArgument);
  EXPECT_THROW((PairingParams{{0.0, 0.0}, {{0.0, 1.0}, {0.5, 0.0}}, 1}.validate(2)), InvalidArgument);
  EXPECT_THROW((PairingParams{{0.0, 0.0}, {{0.0, 0.0}, {0.0, 0.0}}, 2}.validate(2)), InvalidArgument);
}
