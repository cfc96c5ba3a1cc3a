#ifndef PAIRALG_IRREPS_HPP
#define PAIRALG_IRREPS_HPP

// Irrep labels and branching rules for the two-level unitary chains, and the
// seniority <-> quasispin label duality.

#include <algorithm>
#include <climits>
#include <optional>
#include <string>
#include <vector>

#include "pairalg/half_int.hpp"
#include "pairalg/system.hpp"

namespace pairalg {

/// Two-level seniority labels with v = v1 + v2 + 2 nv.
struct SeniorityLabels {
  int v = 0;
  int v1 = 0;
  int v2 = 0;
  int nv = 0;
  friend bool operator==(const SeniorityLabels&, const SeniorityLabels&) = default;
};

struct QuasispinLabels {
  QuarterInt S;
  QuarterInt M;
  friend bool operator==(const QuasispinLabels&, const QuasispinLabels&) = default;
};

enum class PairAlgebra { so_symmetric, sp_antisymmetric };

inline PairAlgebra pair_algebra(Statistics stat) {
  return stat == Statistics::boson ? PairAlgebra::so_symmetric : PairAlgebra::sp_antisymmetric;
}

/// Seniorities v in the U(n) -> SO(n) or Sp(n) branching of the irrep with N
/// particles, ascending.
inline std::vector<int> branch_u_to_pair(int N, Statistics stat, int n) {
  if (N < 0) throw InvalidArgument("negative particle number");
  int top = N;
  if (stat == Statistics::fermion) {
    if (N > n) throw InvalidArgument("fermion number exceeds degeneracy");
    top = std::min(N, n - N);
  }
  std::vector<int> vs;
  for (int v = top % 2; v <= top; v += 2) vs.push_back(v);
  return vs;
}

/// All partitions v = v1 + v2 + 2 nv, ordered by nv then descending v1. This
/// is the degeneracy-independent rule, valid as is for bosonic levels with
/// n_k >= 3.
inline std::vector<SeniorityLabels> branch_partitions(int v) {
  if (v < 0) throw InvalidArgument("negative seniority");
  std::vector<SeniorityLabels> out;
  for (int nv = 0; 2 * nv <= v; ++nv) {
    const int rest = v - 2 * nv;
    for (int v1 = rest; v1 >= 0; --v1) out.push_back({v, v1, rest - v1, nv});
  }
  return out;
}

inline void require_two_levels(const SystemSpec& sys) {
  if (sys.num_levels() != 2) throw InvalidArgument("operation requires a two-level system");
}

/// Largest seniority label carried by a single level, or nullopt when the
/// level imposes no bound (bosonic n_k >= 3).
inline std::optional<int> level_seniority_cap(Statistics stat, const LevelSpec& level) {
  if (stat == Statistics::fermion) return level.degeneracy() / 2;
  if (level.is_singlet()) return 1;
  return std::nullopt;
}

inline bool seniority_admissible(int v, const SystemSpec& sys) {
  if (v < 0) return false;
  if (sys.stat == Statistics::fermion) return 2 * v <= sys.total_degeneracy();
  return true;
}

/// SO(n1+n2) -> SO(n1) x SO(n2) or Sp(n1+n2) -> Sp(n1) x Sp(n2) branching.
inline std::vector<SeniorityLabels> branch_pair_to_levels(int v, const SystemSpec& sys) {
  require_two_levels(sys);
  if (!seniority_admissible(v, sys))
    throw InvalidArgument("seniority " + std::to_string(v) + " is not admissible for this system");

  const int n1 = sys.levels[0].degeneracy();
  const int n2 = sys.levels[1].degeneracy();
  const auto cap1 = level_seniority_cap(sys.stat, sys.levels[0]);
  const auto cap2 = level_seniority_cap(sys.stat, sys.levels[1]);

  std::vector<SeniorityLabels> out;
  for (const auto& p : branch_partitions(v)) {
    if (cap1 && p.v1 > *cap1) continue;
    if (cap2 && p.v2 > *cap2) continue;
    if (sys.stat == Statistics::fermion) {
      // |(v1-v2) - (n1-n2)/2| <= (n1+n2)/2 - v, doubled to stay integral.
      const int lhs = std::abs(2 * (p.v1 - p.v2) - (n1 - n2));
      const int rhs = (n1 + n2) - 2 * v;
      if (lhs > rhs) continue;
    }
    out.push_back(p);
  }
  return out;
}

namespace detail {

inline long long binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __int128 r = 1;
  for (long long i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > static_cast<__int128>(LLONG_MAX)) throw InvalidArgument("binomial coefficient overflow");
  }
  return static_cast<long long>(r);
}

}  // namespace detail

/// Dimension of the symmetric SO(n) irrep [v] or antisymmetric Sp(n) irrep {v}.
inline long long irrep_dimension(PairAlgebra algebra, int n, int v) {
  if (v < 0) throw InvalidArgument("negative seniority");
  if (algebra == PairAlgebra::so_symmetric) {
    if (n < 2) throw InvalidArgument("SO(n) requires n >= 2");
    return detail::binomial(v + n - 1, v) - detail::binomial(v + n - 3, v - 2);
  }
  if (n < 2 || n % 2 != 0) throw InvalidArgument("Sp(n) requires even n >= 2");
  if (2 * v > n) throw InvalidArgument("Sp(n) antisymmetric irrep requires v <= n/2");
  return detail::binomial(n, v) - detail::binomial(n, v - 2);
}

/// Number of states of seniority v_k in a single level; the bosonic singlet
/// carries one state for each v_k in {0,1}.
inline long long level_irrep_dimension(Statistics stat, int n_k, int v_k) {
  if (stat == Statistics::boson && n_k == 1) return (v_k == 0 || v_k == 1) ? 1 : 0;
  return irrep_dimension(pair_algebra(stat), n_k, v_k);
}

/// Dimension of the U(n) irrep with N particles.
inline long long u_irrep_dimension(Statistics stat, int n, int N) {
  if (stat == Statistics::boson) return detail::binomial(N + n - 1, N);
  return detail::binomial(n, N);
}

/// Checks dim[v] = sum over branch_pair_to_levels of dim[v1] dim[v2].
inline bool dimension_consistency(int v, const SystemSpec& sys) {
  require_two_levels(sys);
  const int n1 = sys.levels[0].degeneracy();
  const int n2 = sys.levels[1].degeneracy();
  const long long total = irrep_dimension(pair_algebra(sys.stat), n1 + n2, v);
  long long sum = 0;
  for (const auto& p : branch_pair_to_levels(v, sys))
    sum += level_irrep_dimension(sys.stat, n1, p.v1) * level_irrep_dimension(sys.stat, n2, p.v2);
  return total == sum;
}

/// S = (Omega + theta v)/2, M = (N + theta Omega)/2.
inline QuasispinLabels duality_map(int v, int N, int twice_omega, Statistics stat) {
  const int th = theta(stat);
  return {QuarterInt::from_four(twice_omega + 2 * th * v),
          QuarterInt::from_four(2 * N + th * twice_omega)};
}

struct SeniorityOccupation {
  int v = 0;
  int N = 0;
  friend bool operator==(const SeniorityOccupation&, const SeniorityOccupation&) = default;
};

inline SeniorityOccupation inverse_duality_map(QuasispinLabels q, int twice_omega, Statistics stat) {
  const int th = theta(stat);
  const int two_v = th * (q.S.four() - twice_omega);
  const int two_N = q.M.four() - th * twice_omega;
  if (two_v % 2 != 0 || two_N % 2 != 0) throw InvalidArgument("quasispin labels do not map to integral (v, N)");
  return {two_v / 2, two_N / 2};
}

/// Largest total quasispin reachable with N bosons, S = (Omega + N)/2.
inline QuarterInt boson_quasispin_cutoff(int twice_omega, int N) {
  return QuarterInt::from_four(twice_omega + 2 * N);
}

/// Quasispin coupling S1 x S2. SU(1,1): S1+S2, S1+S2+1, ... up to s_max
/// (required). SU(2): |S1-S2| ... S1+S2.
inline std::vector<QuarterInt> quasispin_couple(QuarterInt S1, QuarterInt S2, Statistics stat,
                                                std::optional<QuarterInt> s_max = std::nullopt) {
  std::vector<QuarterInt> out;
  if (stat == Statistics::boson) {
    if (!s_max) throw InvalidArgument("SU(1,1) coupling needs an explicit upper cutoff");
    for (int s = S1.four() + S2.four(); s <= s_max->four(); s += 4) out.push_back(QuarterInt::from_four(s));
  } else {
    for (int s = std::abs(S1.four() - S2.four()); s <= S1.four() + S2.four(); s += 4)
      out.push_back(QuarterInt::from_four(s));
  }
  return out;
}

/// The (v1, v2) content of seniority v obtained by coupling level quasispins,
/// ordered like branch_pair_to_levels.
inline std::vector<SeniorityLabels> branch_via_quasispin(int v, const SystemSpec& sys) {
  require_two_levels(sys);
  const int tw1 = sys.levels[0].twice_omega();
  const int tw2 = sys.levels[1].twice_omega();
  const int tw = tw1 + tw2;
  const auto target = duality_map(v, 0, tw, sys.stat).S;
  auto cap = [&](int k) {
    auto c = level_seniority_cap(sys.stat, sys.levels[k]);
    return c ? std::min(*c, v) : v;
  };
  std::vector<SeniorityLabels> out;
  for (int v1 = cap(0); v1 >= 0; --v1) {
    for (int v2 = cap(1); v2 >= 0; --v2) {
      const auto S1 = duality_map(v1, 0, tw1, sys.stat).S;
      const auto S2 = duality_map(v2, 0, tw2, sys.stat).S;
      const auto couplings = quasispin_couple(S1, S2, sys.stat, target);
      if (std::find(couplings.begin(), couplings.end(), target) != couplings.end()) {
        const int rest = v - v1 - v2;
        out.push_back({v, v1, v2, rest / 2});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const SeniorityLabels& a, const SeniorityLabels& b) {
    if (a.nv != b.nv) return a.nv < b.nv;
    return a.v1 > b.v1;
  });
  return out;
}

/// Quadratic Casimir eigenvalue of SO(n) [v] or Sp(n) {v}: 2v(theta v + n - 2 theta).
inline long long casimir_pair_eigenvalue(Statistics stat, int n, int v) {
  const int th = theta(stat);
  return 2LL * v * (th * v + n - 2 * th);
}

/// Quadratic Casimir eigenvalue of U(n) on N particles: N(theta N + n - theta).
inline long long casimir_u_eigenvalue(Statistics stat, int n, int N) {
  const int th = theta(stat);
  return static_cast<long long>(N) * (th * N + n - th);
}

}  // namespace pairalg

#endif
