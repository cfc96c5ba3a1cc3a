#ifndef PAIRALG_QUASISPIN_HPP
#define PAIRALG_QUASISPIN_HPP

// Pairing Hamiltonian in the weak-coupling basis |N1 v1 N2 v2 ...> built from
// the closed-form quasispin matrix elements.

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pairalg/eigensolve.hpp"
#include "pairalg/irreps.hpp"
#include "pairalg/system.hpp"

namespace pairalg {

struct SeniorityBlockState {
  std::vector<int> N;
  std::vector<int> v;

  int total() const {
    int s = 0;
    for (int x : N) s += x;
    return s;
  }
  friend bool operator==(const SeniorityBlockState&, const SeniorityBlockState&) = default;
};

/// Occupation and seniority of one level are compatible.
inline bool level_state_valid(Statistics stat, int n_k, int N_k, int v_k) {
  if (v_k < 0 || N_k < v_k || (N_k - v_k) % 2 != 0) return false;
  if (stat == Statistics::fermion) return 2 * v_k <= n_k && N_k <= n_k - v_k;
  if (n_k == 1) return v_k <= 1;
  return true;
}

/// Seniority label admissible for a level at all.
inline bool level_label_admissible(Statistics stat, const LevelSpec& level, int v_k) {
  if (v_k < 0) return false;
  const auto cap = level_seniority_cap(stat, level);
  return !cap || v_k <= *cap;
}

/// States of fixed seniorities and total N, lexicographic in (N1, N2, ...).
class BlockBasis {
 public:
  BlockBasis(SystemSpec sys, std::vector<int> v, int N) : sys_(std::move(sys)), v_(std::move(v)), N_(N) {
    if (static_cast<int>(v_.size()) != sys_.num_levels())
      throw InvalidArgument("one seniority label per level is required");
    if (N_ < 0) throw InvalidArgument("particle number must be non-negative");
    for (int k = 0; k < sys_.num_levels(); ++k)
      if (!level_label_admissible(sys_.stat, sys_.levels[k], v_[k]))
        throw InvalidArgument("seniority " + std::to_string(v_[k]) + " is not admissible on level " +
                              std::to_string(k + 1));
    std::vector<int> occ(v_.size(), 0);
    fill(0, N_, occ);
    for (int i = 0; i < size(); ++i) index_[states_[i].N] = i;
  }

  const SystemSpec& system() const { return sys_; }
  const std::vector<int>& seniorities() const { return v_; }
  int particle_number() const { return N_; }
  int size() const { return static_cast<int>(states_.size()); }
  bool empty() const { return states_.empty(); }
  const SeniorityBlockState& state(int i) const { return states_.at(i); }
  const std::vector<SeniorityBlockState>& states() const { return states_; }

  /// Index of the state with the given occupations, or -1.
  int find(const std::vector<int>& occ) const {
    const auto it = index_.find(occ);
    return it == index_.end() ? -1 : it->second;
  }

 private:
  void fill(int k, int remaining, std::vector<int>& occ) {
    const int L = sys_.num_levels();
    const int n_k = sys_.levels[k].degeneracy();
    if (k == L - 1) {
      if (level_state_valid(sys_.stat, n_k, remaining, v_[k])) {
        occ[k] = remaining;
        states_.push_back({occ, v_});
      }
      return;
    }
    for (int Nk = v_[k]; Nk <= remaining; Nk += 2) {
      if (!level_state_valid(sys_.stat, n_k, Nk, v_[k])) continue;
      occ[k] = Nk;
      fill(k + 1, remaining - Nk, occ);
    }
  }

  SystemSpec sys_;
  std::vector<int> v_;
  int N_;
  std::vector<SeniorityBlockState> states_;
  std::map<std::vector<int>, int> index_;
};

inline BlockBasis enumerate_block(const SystemSpec& sys, const std::vector<int>& v, int N) { return {sys, v, N}; }

inline BlockBasis enumerate_block(const SystemSpec& sys, int v1, int v2, int N) {
  require_two_levels(sys);
  return {sys, {v1, v2}, N};
}

struct PairingParams {
  std::vector<double> eps;
  std::vector<std::vector<double>> G;
  int sigma = 1;

  void validate(int num_levels) const {
    if (static_cast<int>(eps.size()) != num_levels || static_cast<int>(G.size()) != num_levels)
      throw InvalidArgument("pairing parameters do not match the number of levels");
    for (const auto& row : G)
      if (static_cast<int>(row.size()) != num_levels) throw InvalidArgument("pairing matrix must be square");
    for (int a = 0; a < num_levels; ++a)
      for (int b = 0; b < a; ++b)
        if (G[a][b] != G[b][a]) throw InvalidArgument("pairing matrix must be symmetric");
    if (sigma != 1 && sigma != -1) throw InvalidArgument("sigma must be +1 or -1");
  }
};

/// Two-level parameters with a uniform coupling G11 = G22 = sigma G12 = g.
inline PairingParams uniform_two_level(double eps1, double eps2, double g, int sigma = 1) {
  return {{eps1, eps2}, {{g, sigma * g}, {sigma * g, g}}, sigma};
}

/// <S+ S-> on one level: theta/4 [N(N + theta n - 2) - v(v + theta n - 2)] with n = 2 Omega.
inline double diag_pairing_me(Statistics stat, int n_k, int N_k, int v_k) {
  const int th = theta(stat);
  const long long num = static_cast<long long>(N_k) * (N_k + th * n_k - 2) -
                        static_cast<long long>(v_k) * (v_k + th * n_k - 2);
  return 0.25 * th * static_cast<double>(num);
}

/// <(N_to+2), (N_from-2)| S_{to+} S_{from-} |N_to, N_from> at fixed seniorities.
inline double offdiag_pairing_me(Statistics stat, int n_to, int N_to, int v_to, int n_from, int N_from, int v_from) {
  if (!level_state_valid(stat, n_from, N_from - 2, v_from) || !level_state_valid(stat, n_to, N_to + 2, v_to))
    return 0.0;
  const int th = theta(stat);
  const double arg = static_cast<double>(N_to - v_to + 2) * (N_to + v_to + th * n_to) *
                     static_cast<double>(N_from - v_from) * (N_from + v_from + th * n_from - 2);
  if (arg < -1e-12) throw std::logic_error("negative argument in off-diagonal quasispin matrix element");
  return 0.25 * std::sqrt(std::max(arg, 0.0));
}

namespace detail {

inline double diagonal_entry(const BlockBasis& block, const SeniorityBlockState& s, const PairingParams& p) {
  const auto& sys = block.system();
  double d = 0.0;
  for (int k = 0; k < sys.num_levels(); ++k)
    d += p.eps[k] * s.N[k] + p.G[k][k] * diag_pairing_me(sys.stat, sys.levels[k].degeneracy(), s.N[k], s.v[k]);
  return d;
}

}  // namespace detail

/// Two-level block as a symmetric tridiagonal matrix in ascending N1.
inline SymTridiag build_tridiagonal(const BlockBasis& block, const PairingParams& p) {
  const auto& sys = block.system();
  require_two_levels(sys);
  p.validate(2);
  if (block.empty()) throw InvalidArgument("empty block has no Hamiltonian");
  const int n1 = sys.levels[0].degeneracy(), n2 = sys.levels[1].degeneracy();
  SymTridiag t;
  for (const auto& s : block.states()) t.diag.push_back(detail::diagonal_entry(block, s, p));
  for (int i = 0; i + 1 < block.size(); ++i) {
    const auto& s = block.state(i);
    t.offdiag.push_back(p.G[0][1] * offdiag_pairing_me(sys.stat, n1, s.N[0], s.v[0], n2, s.N[1], s.v[1]));
  }
  return t;
}

/// Block Hamiltonian for any number of levels, H[target][source].
inline Eigen::MatrixXd build_dense(const BlockBasis& block, const PairingParams& p) {
  const auto& sys = block.system();
  const int L = sys.num_levels();
  p.validate(L);
  if (block.empty()) throw InvalidArgument("empty block has no Hamiltonian");
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(block.size(), block.size());
  for (int i = 0; i < block.size(); ++i) {
    const auto& s = block.state(i);
    h(i, i) = detail::diagonal_entry(block, s, p);
    for (int to = 0; to < L; ++to)
      for (int from = 0; from < L; ++from) {
        if (to == from || p.G[to][from] == 0.0) continue;
        auto occ = s.N;
        occ[to] += 2;
        occ[from] -= 2;
        const int j = block.find(occ);
        if (j < 0) continue;
        h(j, i) += p.G[to][from] * offdiag_pairing_me(sys.stat, sys.levels[to].degeneracy(), s.N[to], s.v[to],
                                                      sys.levels[from].degeneracy(), s.N[from], s.v[from]);
      }
  }
  return h;
}

/// Spectrum of one block; tridiagonal QL for two levels, Jacobi otherwise.
inline EigenResult diagonalize_block(const BlockBasis& block, const PairingParams& p, bool want_vectors) {
  if (block.system().num_levels() == 2) return eig_tridiag(build_tridiagonal(block, p), want_vectors);
  return eig_dense_sym(build_dense(block, p), want_vectors);
}

/// Coefficients of the two-level Hamiltonian written through Casimir operators
/// of both subalgebra chains. sigma0 fixes the SO/Sp(n1+n2) generators.
struct CasimirCoefficients {
  double n1 = 0, n2 = 0;
  double c2_u1 = 0, c2_u2 = 0, c2_u12 = 0;
  double c2_pair1 = 0, c2_pair2 = 0, c2_pair12 = 0;
  int sigma0 = 1;
};

/// sigma0 / sigma = -theta (-1)^(ja + jb).
inline int sigma0_for(const SystemSpec& sys, int sigma) {
  require_two_levels(sys);
  return -sys.theta() * sigma * phase(sys.levels[0].j + sys.levels[1].j);
}

inline CasimirCoefficients casimir_form_params(const PairingParams& p, const SystemSpec& sys) {
  require_two_levels(sys);
  p.validate(2);
  const double th = sys.theta();
  const double s = p.sigma;
  CasimirCoefficients c;
  c.n1 = p.eps[0] - 0.25 * th * p.G[0][0];
  c.n2 = p.eps[1] - 0.25 * th * p.G[1][1];
  c.c2_u1 = 0.25 * (p.G[0][0] - s * p.G[0][1]);
  c.c2_u2 = 0.25 * (p.G[1][1] - s * p.G[0][1]);
  c.c2_pair1 = -0.5 * c.c2_u1;
  c.c2_pair2 = -0.5 * c.c2_u2;
  c.c2_u12 = 0.25 * s * p.G[0][1];
  c.c2_pair12 = -0.125 * s * p.G[0][1];
  c.sigma0 = sigma0_for(sys, p.sigma);
  return c;
}

}  // namespace pairalg

#endif
