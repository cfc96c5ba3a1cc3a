#ifndef PAIRALG_GENERATORS_HPP
#define PAIRALG_GENERATORS_HPP

// Algebra generators, quasispin operators and Casimir operators realized on
// a Fock space.

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "pairalg/fock.hpp"
#include "pairalg/tensor_operator.hpp"
#include "pairalg/wigner.hpp"

namespace pairalg {

/// a-dagger of level k as a rank-j_k tensor.
inline TensorOperator creation_tensor(const FockSpacePtr& space, int level) {
  const HalfInt j = space->system().levels.at(level).j;
  std::vector<OperatorMatrix> c;
  for (int tm = -j.twice(); tm <= j.twice(); tm += 2)
    c.push_back(word_op(space, {{space->mode_index(level, HalfInt::from_twice(tm)), true}}));
  return {j, std::move(c)};
}

/// Annihilation tensor a~_m = (-1)^(j-m) a_{-m} of level k.
inline TensorOperator annihilation_tensor(const FockSpacePtr& space, int level) {
  const HalfInt j = space->system().levels.at(level).j;
  std::vector<OperatorMatrix> c;
  for (int tm = -j.twice(); tm <= j.twice(); tm += 2) {
    const HalfInt m = HalfInt::from_twice(tm);
    c.push_back(word_op(space, {{space->mode_index(level, -m), false}}, static_cast<double>(phase(j - m))));
  }
  return {j, std::move(c)};
}

/// Builds (a-dagger_{k'} x a~_k)^g directly from ladder words.
inline TensorOperator build_G(const FockSpacePtr& space, int k_out, int k_in, HalfInt g) {
  const HalfInt j1 = space->system().levels.at(k_out).j;
  const HalfInt j2 = space->system().levels.at(k_in).j;
  if (!triangle(j1, j2, g)) throw InvalidArgument("G^(" + g.str() + ") violates the triangle rule");
  std::vector<OperatorMatrix> comps;
  for (int tg = -g.twice(); tg <= g.twice(); tg += 2) {
    const HalfInt gamma = HalfInt::from_twice(tg);
    OperatorMatrix sum = OperatorMatrix::zero(space, 0);
    for (int ta = -j1.twice(); ta <= j1.twice(); ta += 2) {
      const HalfInt alpha = HalfInt::from_twice(ta);
      const HalfInt beta = gamma - alpha;
      if (!valid_projection(j2, beta)) continue;
      const double w = cg(j1, alpha, j2, beta, g, gamma);
      if (w == 0.0) continue;
      const double ph = phase(j2 - beta);
      sum = sum + word_op(space,
                          {{space->mode_index(k_out, alpha), true}, {space->mode_index(k_in, -beta), false}},
                          w * ph);
    }
    comps.push_back(std::move(sum));
  }
  return {g, std::move(comps)};
}

/// Phase of F^(g): 1 when j_a + j_b + s is even, i otherwise,
/// with sigma0 = (-1)^s.
inline cplx f_eta(HalfInt ja, HalfInt jb, int sigma0) {
  const int s = sigma0 > 0 ? 0 : 1;
  const HalfInt sum = ja + jb + HalfInt(s);
  if (!sum.is_integer()) throw InvalidArgument("j_a + j_b must be integral");
  return phase(sum) > 0 ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
}

/// F^(g) = eta [ (a-dagger x b~)^g + sigma0 (-1)^g (b-dagger x a~)^g ].
inline TensorOperator build_F(const FockSpacePtr& space, HalfInt g, int sigma0) {
  require_two_levels(space->system());
  if (sigma0 != 1 && sigma0 != -1) throw InvalidArgument("sigma0 must be +1 or -1");
  const HalfInt ja = space->system().levels[0].j;
  const HalfInt jb = space->system().levels[1].j;
  const TensorOperator ab = build_G(space, 0, 1, g);
  const TensorOperator ba = build_G(space, 1, 0, g);
  return f_eta(ja, jb, sigma0) * (ab + static_cast<double>(sigma0 * phase(g)) * ba);
}

struct Quasispin {
  OperatorMatrix plus;
  OperatorMatrix minus;
  OperatorMatrix zero;
};

/// S+ = 1/2 sum_m (-1)^(j-m) a-dagger_m a-dagger_{-m}, S- = S+^dagger,
/// S0 = (N_k + theta Omega_k)/2 for one level.
inline Quasispin build_quasispin(const FockSpacePtr& space, int level) {
  const auto& lev = space->system().levels.at(level);
  const HalfInt j = lev.j;
  OperatorMatrix plus = OperatorMatrix::zero(space, 2);
  for (int tm = -j.twice(); tm <= j.twice(); tm += 2) {
    const HalfInt m = HalfInt::from_twice(tm);
    plus = plus + word_op(space, {{space->mode_index(level, m), true}, {space->mode_index(level, -m), true}},
                          0.5 * phase(j - m));
  }
  OperatorMatrix minus = plus.adjoint();
  const double th = theta(space->stat());
  OperatorMatrix zero = 0.5 * level_number_op(space, level) +
                        (0.25 * th * lev.twice_omega()) * OperatorMatrix::identity(space);
  return {std::move(plus), std::move(minus), std::move(zero)};
}

/// Two-level sum quasispin S = S_1 + sigma S_2 (S0 is the plain sum).
inline Quasispin build_quasispin_sum(const FockSpacePtr& space, int sigma) {
  require_two_levels(space->system());
  const auto q1 = build_quasispin(space, 0);
  const auto q2 = build_quasispin(space, 1);
  return {q1.plus + static_cast<double>(sigma) * q2.plus, q1.minus + static_cast<double>(sigma) * q2.minus,
          q1.zero + q2.zero};
}

/// Physical angular momentum L = theta sum_k [j(j+1)(2j+1)/3]^(1/2) G_kk^(1).
inline TensorOperator build_angular_momentum(const FockSpacePtr& space) {
  const double th = theta(space->stat());
  TensorOperator total = TensorOperator::zero(space, HalfInt(1), 0);
  for (int k = 0; k < space->system().num_levels(); ++k) {
    const HalfInt j = space->system().levels[k].j;
    if (j.twice() == 0) continue;
    const double jv = j.value();
    total = total + (th * std::sqrt(jv * (jv + 1) * (2 * jv + 1) / 3.0)) * build_G(space, k, k, HalfInt(1));
  }
  return total;
}

/// J^2 = sum_lambda (-1)^lambda L_lambda L_{-lambda}.
inline OperatorMatrix build_j_squared(const FockSpacePtr& space) {
  const auto L = build_angular_momentum(space);
  OperatorMatrix sum = OperatorMatrix::zero(space, 0);
  for (int lam = -1; lam <= 1; ++lam)
    sum = sum + static_cast<double>(phase(lam)) * (L[HalfInt(lam)] * L[HalfInt(-lam)]);
  return sum;
}

/// ghat [T x T]^(0)_0 for a single tensor.
inline OperatorMatrix scalar_square(const TensorOperator& t) {
  return hat(t.rank()) * coupled_product(t, t, HalfInt(0))[HalfInt(0)];
}

/// G o G = - sum over odd g of ghat [G^g x G^g]^0 for level k.
inline OperatorMatrix g_circ_g(const FockSpacePtr& space, int level) {
  const HalfInt j = space->system().levels.at(level).j;
  OperatorMatrix sum = OperatorMatrix::zero(space, 0);
  for (int g = 1; g <= j.twice(); g += 2) sum = sum - scalar_square(build_G(space, level, level, HalfInt(g)));
  return sum;
}

/// F o F = sum over g of ghat [F^g x F^g]^0.
inline OperatorMatrix f_circ_f(const FockSpacePtr& space, int sigma0) {
  const HalfInt ja = space->system().levels[0].j;
  const HalfInt jb = space->system().levels[1].j;
  OperatorMatrix sum = OperatorMatrix::zero(space, 0);
  const HalfInt lo = ja > jb ? ja - jb : jb - ja;
  for (HalfInt g = lo; g <= ja + jb; g += HalfInt(1)) sum = sum + scalar_square(build_F(space, g, sigma0));
  return sum;
}

/// C2[U(n_k)] = sum_g ghat (-1)^g [G^g x G^g]^0.
inline OperatorMatrix casimir_u_level(const FockSpacePtr& space, int level) {
  const HalfInt j = space->system().levels.at(level).j;
  OperatorMatrix sum = OperatorMatrix::zero(space, 0);
  for (int g = 0; g <= j.twice(); ++g)
    sum = sum + static_cast<double>(phase(g)) * scalar_square(build_G(space, level, level, HalfInt(g)));
  return sum;
}

/// Named Casimir operators of both chains of a two-level system.
struct CasimirSet {
  OperatorMatrix n1, n2;
  OperatorMatrix c2_u1, c2_u2, c2_u12;
  OperatorMatrix c2_pair1, c2_pair2, c2_pair12;  // SO or Sp
  OperatorMatrix f_circ_f;
};

inline CasimirSet build_casimirs(const FockSpacePtr& space, int sigma0) {
  require_two_levels(space->system());
  const double th = theta(space->stat());
  const double n1 = space->system().levels[0].degeneracy();
  const double n2 = space->system().levels[1].degeneracy();
  CasimirSet c;
  c.n1 = level_number_op(space, 0);
  c.n2 = level_number_op(space, 1);
  c.c2_u1 = casimir_u_level(space, 0);
  c.c2_u2 = casimir_u_level(space, 1);
  c.c2_u12 = (2.0 * th) * (c.n1 * c.n2) + n2 * c.n1 + n1 * c.n2 + c.c2_u1 + c.c2_u2;
  const auto gg1 = g_circ_g(space, 0);
  const auto gg2 = g_circ_g(space, 1);
  c.c2_pair1 = 4.0 * gg1;
  c.c2_pair2 = 4.0 * gg2;
  c.f_circ_f = f_circ_f(space, sigma0);
  c.c2_pair12 = (2.0 * th) * c.f_circ_f + 4.0 * gg1 + 4.0 * gg2;
  return c;
}

/// Single-level C2[SO(n)] or C2[Sp(n)] = 4 G o G.
inline OperatorMatrix casimir_pair_level(const FockSpacePtr& space, int level) {
  return 4.0 * g_circ_g(space, level);
}

/// sum_k eps_k N_k + sum_{k'k} G_{k'k} S_{k'+} S_{k-} on any number of levels.
inline OperatorMatrix pairing_hamiltonian_fock(const FockSpacePtr& space, const std::vector<double>& eps,
                                               const std::vector<std::vector<double>>& G) {
  const int L = space->system().num_levels();
  if (static_cast<int>(eps.size()) != L || static_cast<int>(G.size()) != L)
    throw InvalidArgument("pairing parameters do not match the number of levels");
  std::vector<Quasispin> q;
  for (int k = 0; k < L; ++k) q.push_back(build_quasispin(space, k));
  OperatorMatrix h = OperatorMatrix::zero(space, 0);
  for (int k = 0; k < L; ++k) {
    h = h + eps[k] * level_number_op(space, k);
    for (int kp = 0; kp < L; ++kp)
      if (G[kp][k] != 0.0) h = h + G[kp][k] * (q[kp].plus * q[k].minus);
  }
  return h;
}

}  // namespace pairalg

#endif
