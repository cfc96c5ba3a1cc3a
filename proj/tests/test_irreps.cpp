#include <algorithm>
#include <set>
#include <tuple>
#include <vector>

#include <gtest/gtest.h>

#include "pairalg/irreps.hpp"

using namespace pairalg;

namespace {

std::vector<std::pair<int, int>> pairs_of(const std::vector<SeniorityLabels>& labels) {
  std::vector<std::pair<int, int>> out;
  for (const auto& l : labels) out.emplace_back(l.v1, l.v2);
  return out;
}

using P = std::vector<std::pair<int, int>>;

// Brute-force count of states of a single fermionic level with a given
// seniority: antisymmetric N-particle states minus those carried by lower
// seniorities, i.e. dim{v} recovered from the U(n) dimensions by
// dim_U(N) = sum over v = N, N-2, ... of dim{v}.
long long sp_dim_by_peeling(int n, int v) {
  std::vector<long long> dims(v + 1, 0);
  for (int s = 0; s <= v; ++s) {
    long long rest = detail::binomial(n, s);
    for (int t = s - 2; t >= 0; t -= 2) rest -= dims[t];
    dims[s] = rest;
  }
  return dims[v];
}

// Same peeling against symmetric powers for SO(n).
long long so_dim_by_peeling(int n, int v) {
  std::vector<long long> dims(v + 1, 0);
  for (int s = 0; s <= v; ++s) {
    long long rest = detail::binomial(s + n - 1, s);
    for (int t = s - 2; t >= 0; t -= 2) rest -= dims[t];
    dims[s] = rest;
  }
  return dims[v];
}

}  // namespace

TEST(Irreps, UnitaryToPairBranching) {
  EXPECT_EQ(branch_u_to_pair(4, Statistics::boson, 6), (std::vector<int>{0, 2, 4}));
  EXPECT_EQ(branch_u_to_pair(10, Statistics::fermion, 20), (std::vector<int>{0, 2, 4, 6, 8, 10}));
  EXPECT_EQ(branch_u_to_pair(0, Statistics::boson, 3), (std::vector<int>{0}));
  EXPECT_EQ(branch_u_to_pair(0, Statistics::fermion, 4), (std::vector<int>{0}));
  EXPECT_THROW(branch_u_to_pair(5, Statistics::fermion, 4), InvalidArgument);
}

TEST(Irreps, FermionBranchingSymmetricUnderParticleHole) {
  for (int n = 2; n <= 20; n += 2)
    for (int N = 0; N <= n; ++N)
      EXPECT_EQ(branch_u_to_pair(N, Statistics::fermion, n), branch_u_to_pair(n - N, Statistics::fermion, n));
}

TEST(Irreps, BosonPartitionsOfTwo) {
  const auto sys = make_system_from_degeneracies(Statistics::boson, {3, 3}, 2);
  const auto labels = branch_pair_to_levels(2, sys);
  EXPECT_EQ(pairs_of(labels), (P{{2, 0}, {1, 1}, {0, 2}, {0, 0}}));
  EXPECT_EQ(labels.back().nv, 1);
}

TEST(Irreps, FermionBranchingTables) {
  const auto big = make_system_from_degeneracies(Statistics::fermion, {10, 10}, 10);
  EXPECT_EQ(pairs_of(branch_pair_to_levels(10, big)), (P{{5, 5}, {4, 4}, {3, 3}, {2, 2}, {1, 1}, {0, 0}}));
  EXPECT_EQ(pairs_of(branch_pair_to_levels(6, big)),
            (P{{5, 1}, {4, 2}, {3, 3}, {2, 4}, {1, 5}, {4, 0}, {3, 1}, {2, 2}, {1, 3}, {0, 4}, {2, 0}, {1, 1},
               {0, 2}, {0, 0}}));
  const auto small = make_system_from_degeneracies(Statistics::fermion, {2, 2}, 2);
  EXPECT_EQ(pairs_of(branch_pair_to_levels(2, small)), (P{{1, 1}, {0, 0}}));
  EXPECT_EQ(pairs_of(branch_pair_to_levels(1, small)), (P{{1, 0}, {0, 1}}));
  EXPECT_THROW(branch_pair_to_levels(3, small), InvalidArgument);
}

TEST(Irreps, LabelsRespectInvariants) {
  for (auto stat : {Statistics::boson, Statistics::fermion}) {
    for (int n1 = 1; n1 <= 10; ++n1)
      for (int n2 = 1; n2 <= 10; ++n2) {
        if ((stat == Statistics::boson) != (n1 % 2 == 1) || (stat == Statistics::boson) != (n2 % 2 == 1)) continue;
        const auto sys = make_system_from_degeneracies(stat, {n1, n2}, 0);
        const int vmax = stat == Statistics::fermion ? (n1 + n2) / 2 : 6;
        for (int v = 0; v <= vmax; ++v)
          for (const auto& l : branch_pair_to_levels(v, sys)) {
            EXPECT_EQ(l.v, l.v1 + l.v2 + 2 * l.nv);
            EXPECT_GE(l.nv, 0);
            if (stat == Statistics::fermion) {
              EXPECT_LE(2 * l.v1, n1);
              EXPECT_LE(2 * l.v2, n2);
            }
          }
      }
  }
}

TEST(Irreps, FrozenDimensions) {
  EXPECT_EQ(irrep_dimension(PairAlgebra::so_symmetric, 6, 2), 20);
  EXPECT_EQ(irrep_dimension(PairAlgebra::sp_antisymmetric, 10, 3), 110);
  for (int v = 0; v <= 12; ++v) EXPECT_EQ(irrep_dimension(PairAlgebra::so_symmetric, 3, v), 2 * v + 1);
  EXPECT_THROW(irrep_dimension(PairAlgebra::sp_antisymmetric, 4, 3), InvalidArgument);
  EXPECT_THROW(irrep_dimension(PairAlgebra::sp_antisymmetric, 5, 1), InvalidArgument);
}

TEST(Irreps, DimensionsMatchPeelingOracle) {
  for (int n = 3; n <= 15; n += 2)
    for (int v = 0; v <= 8; ++v) EXPECT_EQ(irrep_dimension(PairAlgebra::so_symmetric, n, v), so_dim_by_peeling(n, v));
  for (int n = 2; n <= 20; n += 2)
    for (int v = 0; 2 * v <= n; ++v)
      EXPECT_EQ(irrep_dimension(PairAlgebra::sp_antisymmetric, n, v), sp_dim_by_peeling(n, v));
}

TEST(Irreps, DimensionConsistency) {
  const auto sd = make_system_from_degeneracies(Statistics::boson, {3, 3}, 0);
  EXPECT_TRUE(dimension_consistency(2, sd));
  for (auto stat : {Statistics::boson, Statistics::fermion})
    for (int n1 = 1; n1 <= 10; ++n1)
      for (int n2 = 1; n2 <= 10; ++n2) {
        if ((stat == Statistics::boson) != (n1 % 2 == 1) || (stat == Statistics::boson) != (n2 % 2 == 1)) continue;
        const auto sys = make_system_from_degeneracies(stat, {n1, n2}, 0);
        const int vmax = stat == Statistics::fermion ? std::min(6, (n1 + n2) / 2) : 6;
        for (int v = 0; v <= vmax; ++v) EXPECT_TRUE(dimension_consistency(v, sys)) << n1 << "," << n2 << " v=" << v;
      }
}

TEST(Irreps, UnitaryDimensionDecomposesIntoSeniorities) {
  for (int n = 2; n <= 12; n += 2)
    for (int N = 0; N <= n; ++N) {
      long long sum = 0;
      for (int v : branch_u_to_pair(N, Statistics::fermion, n))
        sum += irrep_dimension(PairAlgebra::sp_antisymmetric, n, v);
      EXPECT_EQ(sum, u_irrep_dimension(Statistics::fermion, n, N));
    }
}

TEST(Irreps, DualityMap) {
  const auto f = duality_map(2, 4, 8, Statistics::fermion);
  EXPECT_EQ(f.S, QuarterInt::from_four(4));
  EXPECT_EQ(f.M, QuarterInt::from_four(0));
  for (int N = 0; N <= 7; ++N) {
    const auto q = duality_map(N % 2, N, 1, Statistics::boson);
    EXPECT_EQ(q.S.str(), N % 2 == 0 ? "1/4" : "3/4");
  }
  const auto b = duality_map(0, 2, 5, Statistics::boson);
  EXPECT_EQ(b.S.str(), "5/4");
  EXPECT_EQ(b.M.str(), "9/4");
}

TEST(Irreps, DualityRoundTrip) {
  for (auto stat : {Statistics::boson, Statistics::fermion})
    for (int tw = 1; tw <= 20; ++tw)
      for (int N = 0; N <= 12; ++N)
        for (int v = N % 2; v <= N; v += 2) {
          const auto q = duality_map(v, N, tw, stat);
          EXPECT_EQ(inverse_duality_map(q, tw, stat), (SeniorityOccupation{v, N}));
        }
}

TEST(Irreps, QuasispinCoupling) {
  const auto one = QuarterInt::from_four(4);
  std::vector<std::string> got;
  for (auto s : quasispin_couple(one, one, Statistics::fermion)) got.push_back(s.str());
  EXPECT_EQ(got, (std::vector<std::string>{"0", "1", "2"}));

  const auto s1 = QuarterInt::from_four(5);
  got.clear();
  for (auto s : quasispin_couple(s1, s1, Statistics::boson, boson_quasispin_cutoff(10, 4))) got.push_back(s.str());
  EXPECT_EQ(got, (std::vector<std::string>{"5/2", "7/2", "9/2"}));

  EXPECT_THROW(quasispin_couple(s1, s1, Statistics::boson), InvalidArgument);
  const auto zero = QuarterInt::from_four(0);
  EXPECT_EQ(quasispin_couple(one, zero, Statistics::fermion), (std::vector<QuarterInt>{one}));
}

TEST(Irreps, CouplingEquivalentToBranching) {
  for (auto stat : {Statistics::boson, Statistics::fermion})
    for (int n1 = 1; n1 <= 10; ++n1)
      for (int n2 = 1; n2 <= 10; ++n2) {
        if ((stat == Statistics::boson) != (n1 % 2 == 1) || (stat == Statistics::boson) != (n2 % 2 == 1)) continue;
        const auto sys = make_system_from_degeneracies(stat, {n1, n2}, 0);
        const int vmax = stat == Statistics::fermion ? (n1 + n2) / 2 : 8;
        for (int v = 0; v <= vmax; ++v) {
          auto a = branch_pair_to_levels(v, sys);
          auto b = branch_via_quasispin(v, sys);
          EXPECT_EQ(pairs_of(a), pairs_of(b)) << to_string(stat) << " " << n1 << "," << n2 << " v=" << v;
        }
      }
}

TEST(Irreps, CasimirEigenvalues) {
  EXPECT_EQ(casimir_pair_eigenvalue(Statistics::boson, 6, 2), 24);
  EXPECT_EQ(casimir_pair_eigenvalue(Statistics::fermion, 10, 0), 0);
  EXPECT_EQ(casimir_pair_eigenvalue(Statistics::fermion, 10, 3), 2 * 3 * (-3 + 10 + 2));
  EXPECT_EQ(casimir_u_eigenvalue(Statistics::boson, 6, 4), 4 * (4 + 6 - 1));
  EXPECT_EQ(casimir_u_eigenvalue(Statistics::fermion, 6, 4), 4 * (-4 + 6 + 1));
}

TEST(Irreps, SystemValidation) {
  EXPECT_THROW(make_system_from_degeneracies(Statistics::boson, {2, 3}, 1), InvalidArgument);
  EXPECT_THROW(make_system_from_degeneracies(Statistics::fermion, {3, 2}, 1), InvalidArgument);
  EXPECT_THROW(make_system_from_degeneracies(Statistics::fermion, {2, 2}, 5), InvalidArgument);
  EXPECT_NO_THROW(make_system_from_degeneracies(Statistics::boson, {1, 5}, 40));
}
