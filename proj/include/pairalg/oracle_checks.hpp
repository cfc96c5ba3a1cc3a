#ifndef PAIRALG_ORACLE_CHECKS_HPP
#define PAIRALG_ORACLE_CHECKS_HPP

// Identity checks run on the Fock-space oracle: commutator tables, Casimir
// spectra, duality relations, coupled-commutator product rules and the
// quasispin engine cross-checks.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "pairalg/eigensolve.hpp"
#include "pairalg/generators.hpp"
#include "pairalg/quasispin.hpp"
#include "pairalg/spectra.hpp"

namespace pairalg {

inline constexpr double kIdentityTolerance = 1e-9;

struct IdentityReport {
  std::string identity;
  std::map<std::string, std::string> parameters;
  double max_deviation = 0.0;
  bool pass = false;
};

inline bool all_pass(const std::vector<IdentityReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const IdentityReport& r) { return r.pass; });
}

inline double worst_deviation(const std::vector<IdentityReport>& reports) {
  double w = 0.0;
  for (const auto& r : reports) w = std::max(w, r.max_deviation);
  return w;
}

inline std::string system_label(const SystemSpec& sys) {
  std::ostringstream os;
  os << to_string(sys.stat) << "(";
  for (int k = 0; k < sys.num_levels(); ++k) os << (k ? "," : "") << sys.levels[k].j.str();
  os << ")";
  return os.str();
}

namespace detail {

/// An identity passes when the relative deviation is small on at least one
/// compared sector.
inline IdentityReport identity_report(std::string name, std::map<std::string, std::string> params, const Deviation& d) {
  return {std::move(name), std::move(params), d.relative, d.sectors > 0 && d.relative < kIdentityTolerance};
}

inline std::vector<HalfInt> coupled_ranks(HalfInt j1, HalfInt j2) {
  std::vector<HalfInt> out;
  for (int t = std::abs(j1.twice() - j2.twice()); t <= j1.twice() + j2.twice(); t += 2) out.push_back(half(t));
  return out;
}

}  // namespace detail

/// Generators of a two-level system built once per space.
class GeneratorCache {
 public:
  explicit GeneratorCache(FockSpacePtr space) : space_(std::move(space)) {}

  const FockSpacePtr& space() const { return space_; }
  HalfInt j(int k) const { return space_->system().levels.at(k).j; }

  const TensorOperator& G(int k_out, int k_in, HalfInt g) {
    const auto key = std::make_tuple(k_out, k_in, g.twice());
    auto it = g_.find(key);
    if (it == g_.end()) it = g_.emplace(key, build_G(space_, k_out, k_in, g)).first;
    return it->second;
  }

  const TensorOperator& F(HalfInt g, int sigma0) {
    const auto key = std::make_pair(g.twice(), sigma0);
    auto it = f_.find(key);
    if (it == f_.end()) it = f_.emplace(key, build_F(space_, g, sigma0)).first;
    return it->second;
  }

  /// Ranks allowed for G_{k'k}.
  std::vector<HalfInt> ranks(int k_out, int k_in) const { return detail::coupled_ranks(j(k_out), j(k_in)); }

 private:
  FockSpacePtr space_;
  std::map<std::tuple<int, int, int>, TensorOperator> g_;
  std::map<std::pair<int, int>, TensorOperator> f_;
};

namespace detail {

inline std::string level_name(int k) { return k == 0 ? "a" : "b"; }

/// Accumulates coefficient * generator into a rank-g tensor, skipping zero terms.
inline void add_term(TensorOperator& sum, double coeff, const std::function<const TensorOperator&()>& op) {
  if (std::abs(coeff) < 1e-15) return;
  sum = sum + coeff * op();
}

}  // namespace detail

/// Every row of the U(n1+n2) and SO/Sp(n1+n2) coupled commutator tables, the
/// bilinear commutator formula and the commutator symmetry relation.
inline std::vector<IdentityReport> verify_commutator_tables(const SystemSpec& sys, int n_max) {
  require_two_levels(sys);
  GeneratorCache cache(make_space(sys, n_max));
  const FockSpacePtr& space = cache.space();
  const HalfInt ja = cache.j(0), jb = cache.j(1);
  const double th = sys.theta();
  const std::string label = system_label(sys);
  std::vector<IdentityReport> out;

  auto params = [&](const std::string& E, HalfInt e, const std::string& F, HalfInt f, HalfInt g) {
    return std::map<std::string, std::string>{{"system", label}, {"n_max", std::to_string(n_max)}, {"E", E},
                                              {"e", e.str()},     {"F", F},         {"f", f.str()},
                                              {"g", g.str()}};
  };
  auto ehat = [](HalfInt e, HalfInt f) { return hat(e) * hat(f); };

  // Bilinear formula for all level quadruples, which also covers the U(n1+n2) rows.
  for (int A = 0; A < 2; ++A)
    for (int B = 0; B < 2; ++B)
      for (int C = 0; C < 2; ++C)
        for (int D = 0; D < 2; ++D)
          for (HalfInt e : cache.ranks(A, B))
            for (HalfInt f : cache.ranks(C, D))
              for (HalfInt g : detail::coupled_ranks(e, f)) {
                const HalfInt a = cache.j(A), b = cache.j(B), c = cache.j(C), d = cache.j(D);
                const auto lhs = coupled_commutator(cache.G(A, B, e), cache.G(C, D, f), g);
                TensorOperator rhs = TensorOperator::zero(space, g, 0);
                if (B == C && triangle(a, d, g))
                  detail::add_term(rhs, phase(b + b) * phase(a + d + g) * ehat(e, f) * sixj(e, f, g, d, a, b),
                                   [&]() -> const TensorOperator& { return cache.G(A, D, g); });
                if (A == D && triangle(c, b, g))
                  detail::add_term(rhs, -th * phase(b + c + e + f) * ehat(e, f) * sixj(e, f, g, c, b, a),
                                   [&]() -> const TensorOperator& { return cache.G(C, B, g); });
                const std::string E = detail::level_name(A) + detail::level_name(B);
                const std::string F = detail::level_name(C) + detail::level_name(D);
                out.push_back(detail::identity_report("bilinear_commutator", params(E, e, F, f, g), deviation(lhs, rhs)));
              }

  // Table of U(n1+n2) commutators, row by row.
  struct Row {
    int ea, eb, fa, fb;
    std::function<TensorOperator(HalfInt, HalfInt, HalfInt)> rhs;
  };
  auto zero = [&](HalfInt, HalfInt, HalfInt g) { return TensorOperator::zero(space, g, 0); };
  auto single = [&](int k_out, int k_in, auto coeff) {
    return [&, k_out, k_in, coeff](HalfInt e, HalfInt f, HalfInt g) {
      TensorOperator t = TensorOperator::zero(space, g, 0);
      if (triangle(cache.j(k_out), cache.j(k_in), g))
        detail::add_term(t, coeff(e, f, g), [&]() -> const TensorOperator& { return cache.G(k_out, k_in, g); });
      return t;
    };
  };
  auto same_level = [&](HalfInt j) {
    return [&, j](HalfInt e, HalfInt f, HalfInt g) {
      return phase(g) * (1.0 - phase(e + f + g)) * ehat(e, f) * sixj(e, f, g, j, j, j);
    };
  };
  const std::vector<Row> table_u = {
      {0, 0, 0, 0, single(0, 0, same_level(ja))},
      {1, 1, 1, 1, single(1, 1, same_level(jb))},
      {0, 1, 0, 1, zero},
      {1, 0, 1, 0, zero},
      {0, 0, 1, 1, zero},
      {1, 0, 0, 1,
       [&](HalfInt e, HalfInt f, HalfInt g) {
         TensorOperator t = single(0, 0, [&](HalfInt e_, HalfInt f_, HalfInt g_) {
           return -phase(e_ + f_) * ehat(e_, f_) * sixj(e_, f_, g_, ja, ja, jb);
         })(e, f, g);
         return t + single(1, 1, [&](HalfInt e_, HalfInt f_, HalfInt g_) {
                  return phase(g_) * ehat(e_, f_) * sixj(e_, f_, g_, jb, jb, ja);
                })(e, f, g);
       }},
      {0, 0, 0, 1, single(0, 1, [&](HalfInt e, HalfInt f, HalfInt g) {
         return th * phase(ja + jb + g) * ehat(e, f) * sixj(e, f, g, jb, ja, ja);
       })},
      {0, 0, 1, 0, single(1, 0, [&](HalfInt e, HalfInt f, HalfInt g) {
         return -th * phase(ja + jb + e + f) * ehat(e, f) * sixj(e, f, g, jb, ja, ja);
       })},
      {1, 1, 0, 1, single(0, 1, [&](HalfInt e, HalfInt f, HalfInt g) {
         return -th * phase(ja + jb + e + f) * ehat(e, f) * sixj(e, f, g, ja, jb, jb);
       })},
      {1, 1, 1, 0, single(1, 0, [&](HalfInt e, HalfInt f, HalfInt g) {
         return th * phase(ja + jb + g) * ehat(e, f) * sixj(e, f, g, ja, jb, jb);
       })},
  };
  for (const auto& row : table_u)
    for (HalfInt e : cache.ranks(row.ea, row.eb))
      for (HalfInt f : cache.ranks(row.fa, row.fb))
        for (HalfInt g : detail::coupled_ranks(e, f)) {
          const auto lhs = coupled_commutator(cache.G(row.ea, row.eb, e), cache.G(row.fa, row.fb, f), g);
          const std::string E = detail::level_name(row.ea) + detail::level_name(row.eb);
          const std::string F = detail::level_name(row.fa) + detail::level_name(row.fb);
          out.push_back(detail::identity_report("table_u_commutator", params(E, e, F, f, g),
                                                deviation(lhs, row.rhs(e, f, g))));
          // [B, A]^g = -(-1)^(g-e-f) [A, B]^g for integer ranks.
          const auto swapped = coupled_commutator(cache.G(row.fa, row.fb, f), cache.G(row.ea, row.eb, e), g);
          out.push_back(detail::identity_report("commutator_symmetry", params(E, e, F, f, g),
                                                deviation(swapped, -phase(g - e - f) * lhs)));
        }

  // Table of SO/Sp(n1+n2) commutators. The single-level generators of the
  // subalgebra are the odd-rank G_kk; the F x F row closes on odd g, and the
  // even-g coupled commutators vanish.
  auto odd = [](HalfInt r) { return r.is_integer() && r.as_int() % 2 == 1; };
  for (int s0 : {1, -1}) {
    auto p = [&](const std::string& E, HalfInt e, const std::string& F, HalfInt f, HalfInt g) {
      auto m = params(E, e, F, f, g);
      m["sigma0"] = s0 > 0 ? "+" : "-";
      return m;
    };
    for (int k = 0; k < 2; ++k) {
      const HalfInt j = cache.j(k);
      const std::string name = detail::level_name(k) + detail::level_name(k);
      for (HalfInt e : cache.ranks(k, k))
        for (HalfInt f : cache.ranks(k, k)) {
          if (!odd(e) || !odd(f)) continue;
          for (HalfInt g : detail::coupled_ranks(e, f)) {
            const auto lhs = coupled_commutator(cache.G(k, k, e), cache.G(k, k, f), g);
            TensorOperator rhs = TensorOperator::zero(space, g, 0);
            if (odd(g))
              detail::add_term(rhs, 2.0 * phase(g) * ehat(e, f) * sixj(e, f, g, j, j, j),
                               [&]() -> const TensorOperator& { return cache.G(k, k, g); });
            out.push_back(detail::identity_report("table_pair_commutator", p(name, e, name, f, g), deviation(lhs, rhs)));
          }
        }
    }
    for (HalfInt e : cache.ranks(0, 0))
      for (HalfInt f : cache.ranks(1, 1)) {
        if (!odd(e) || !odd(f)) continue;
        for (HalfInt g : detail::coupled_ranks(e, f))
          out.push_back(detail::identity_report("table_pair_commutator", p("aa", e, "bb", f, g),
                                                deviation(coupled_commutator(cache.G(0, 0, e), cache.G(1, 1, f), g),
                                                          TensorOperator::zero(space, g, 0))));
      }
    for (HalfInt e : cache.ranks(0, 1))
      for (HalfInt f : cache.ranks(0, 1))
        for (HalfInt g : detail::coupled_ranks(e, f)) {
          const auto lhs = coupled_commutator(cache.F(e, s0), cache.F(f, s0), g);
          TensorOperator rhs = TensorOperator::zero(space, g, 0);
          if (odd(g)) {
            if (triangle(ja, ja, g))
              detail::add_term(rhs, -2.0 * phase(ja + jb + f) * ehat(e, f) * sixj(e, f, g, ja, ja, jb),
                               [&]() -> const TensorOperator& { return cache.G(0, 0, g); });
            if (triangle(jb, jb, g))
              detail::add_term(rhs, -2.0 * phase(ja + jb + e) * ehat(e, f) * sixj(e, f, g, jb, jb, ja),
                               [&]() -> const TensorOperator& { return cache.G(1, 1, g); });
          }
          out.push_back(detail::identity_report("table_pair_commutator", p("F", e, "F", f, g), deviation(lhs, rhs)));
        }
    for (int k = 0; k < 2; ++k) {
      const std::string name = detail::level_name(k) + detail::level_name(k);
      for (HalfInt e : cache.ranks(k, k)) {
        if (!odd(e)) continue;
        for (HalfInt f : cache.ranks(0, 1))
          for (HalfInt g : detail::coupled_ranks(e, f)) {
            const auto lhs = coupled_commutator(cache.G(k, k, e), cache.F(f, s0), g);
            TensorOperator rhs = TensorOperator::zero(space, g, 0);
            if (triangle(ja, jb, g)) {
              const double coeff = k == 0 ? th * phase(ja + jb + g) * ehat(e, f) * sixj(e, f, g, jb, ja, ja)
                                          : th * phase(ja + jb + f) * ehat(e, f) * sixj(e, f, g, ja, jb, jb);
              detail::add_term(rhs, coeff, [&]() -> const TensorOperator& { return cache.F(g, s0); });
            }
            out.push_back(detail::identity_report("table_pair_commutator", p(name, e, "F", f, g), deviation(lhs, rhs)));
          }
      }
    }
  }
  return out;
}

namespace detail {

/// Hermitian part of a dense block after checking it is Hermitian.
inline Eigen::MatrixXcd hermitian_block(const OperatorMatrix& op, int N) {
  Eigen::MatrixXcd m = dense_block(op, N);
  const double scale = std::max(1.0, m.size() ? m.cwiseAbs().maxCoeff() : 0.0);
  if (m.size() && (m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::logic_error("oracle operator is not Hermitian");
  return 0.5 * (m + m.adjoint());
}

/// Integer label x >= 0 with eigen(x) = value, or -1 when absent or ambiguous.
inline int infer_label(double value, int x_max, const std::function<double(int)>& eigen) {
  int found = -1;
  for (int x = 0; x <= x_max; ++x)
    if (std::abs(eigen(x) - value) < 1e-6 * std::max(1.0, std::abs(value))) {
      if (found >= 0) return -1;
      found = x;
    }
  return found;
}

/// Expectation value and eigen-residual of a Hermitian matrix on a unit vector.
inline std::pair<double, double> expectation(const Eigen::MatrixXcd& op, const Eigen::VectorXcd& x) {
  const Eigen::VectorXcd y = op * x;
  const double mean = x.dot(y).real();
  return {mean, (y - mean * x).norm()};
}

/// Generic combination of mutually commuting Hermitian blocks.
inline HermitianEigenResult joint_eigenbasis(const std::vector<std::pair<double, Eigen::MatrixXcd>>& terms) {
  Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(terms.front().second.rows(), terms.front().second.cols());
  for (const auto& [c, m] : terms) k += c * m;
  return eig_hermitian(k, true);
}

}  // namespace detail

/// Casimir operators commute with their algebras and their spectra carry
/// consistent seniority labels in both subalgebra chains.
inline std::vector<IdentityReport> verify_casimirs(const SystemSpec& sys, int n_max, int sigma0) {
  require_two_levels(sys);
  GeneratorCache cache(make_space(sys, n_max));
  const FockSpacePtr& space = cache.space();
  const auto cas = build_casimirs(space, sigma0);
  const int sigma = -sys.theta() * sigma0 * phase(cache.j(0) + cache.j(1));
  const auto q = build_quasispin_sum(space, sigma);
  const OperatorMatrix four_ss = 4.0 * (q.plus * q.minus);
  const std::string label = system_label(sys);
  const std::string s0 = sigma0 > 0 ? "+" : "-";
  std::vector<IdentityReport> out;

  auto commutes = [&](const std::string& name, const OperatorMatrix& c, const TensorOperator& t) {
    double worst = 0.0;
    int sectors = 0;
    for (const auto& comp : t.components()) {
      const auto d = deviation(c * comp, comp * c);
      worst = std::max(worst, d.relative);
      sectors = std::max(sectors, d.sectors);
    }
    out.push_back({"casimir_commutes",
                   {{"system", label}, {"casimir", name}, {"generator_rank", t.rank().str()}, {"sigma0", s0}},
                   worst,
                   sectors > 0 && worst < kIdentityTolerance});
  };
  auto odd = [](HalfInt r) { return r.as_int() % 2 == 1; };
  for (int k = 0; k < 2; ++k)
    for (HalfInt g : cache.ranks(k, k)) {
      const auto& G = cache.G(k, k, g);
      commutes(k == 0 ? "C2_U1" : "C2_U2", k == 0 ? cas.c2_u1 : cas.c2_u2, G);
      commutes("C2_U12", cas.c2_u12, G);
      if (odd(g)) {
        commutes(k == 0 ? "C2_pair1" : "C2_pair2", k == 0 ? cas.c2_pair1 : cas.c2_pair2, G);
        commutes("C2_pair12", cas.c2_pair12, G);
      }
    }
  for (HalfInt g : cache.ranks(0, 1)) {
    commutes("C2_U12", cas.c2_u12, cache.G(0, 1, g));
    commutes("C2_U12", cas.c2_u12, cache.G(1, 0, g));
    commutes("C2_pair12", cas.c2_pair12, cache.F(g, sigma0));
  }

  const Statistics stat = sys.stat;
  const int n1 = sys.levels[0].degeneracy(), n2 = sys.levels[1].degeneracy(), n = n1 + n2;
  const bool single1 = sys.levels[0].is_singlet(), single2 = sys.levels[1].is_singlet();
  auto pair_eigen = [&](int nk) { return [&, nk](int v) { return double(casimir_pair_eigenvalue(stat, nk, v)); }; };
  const double alpha = 0.3183098861837907, beta = 0.1414213562373095;
  auto cap = [&](int nk, int N) { return stat == Statistics::fermion ? std::min(N, nk / 2) : N; };

  for (int N = 0; N <= n_max; ++N) {
    if (space->empty_sector(N)) continue;
    const auto c12 = detail::hermitian_block(cas.c2_pair12, N);
    const auto c1 = detail::hermitian_block(cas.c2_pair1, N);
    const auto c2 = detail::hermitian_block(cas.c2_pair2, N);
    const auto u12 = detail::hermitian_block(cas.c2_u12, N);
    const auto u1 = detail::hermitian_block(cas.c2_u1, N);
    const auto u2 = detail::hermitian_block(cas.c2_u2, N);
    const auto nn1 = detail::hermitian_block(cas.n1, N);
    const auto ss = detail::hermitian_block(four_ss, N);
    const int dim = static_cast<int>(c12.rows());

    // SO/Sp(n1+n2) chain: labels (v, v1, v2); a singlet level's label is -1.
    {
      const auto basis = detail::joint_eigenbasis({{1.0, c12}, {alpha, c1}, {beta, c2}});
      std::map<std::tuple<int, int, int>, long long> seen, expected;
      double worst = 0.0;
      bool labels_ok = true;
      for (int i = 0; i < dim; ++i) {
        const Eigen::VectorXcd x = basis.vectors.col(i);
        const auto [e12, r12] = detail::expectation(c12, x);
        const auto [e1, r1] = detail::expectation(c1, x);
        const auto [e2, r2] = detail::expectation(c2, x);
        const auto [eu, ru] = detail::expectation(u12, x);
        const auto [es, rs] = detail::expectation(ss, x);
        const int v = detail::infer_label(e12, cap(n, N), pair_eigen(n));
        const int v1 = single1 ? -1 : detail::infer_label(e1, cap(n1, N), pair_eigen(n1));
        const int v2 = single2 ? -1 : detail::infer_label(e2, cap(n2, N), pair_eigen(n2));
        if (v < 0 || (!single1 && v1 < 0) || (!single2 && v2 < 0)) {
          labels_ok = false;
          continue;
        }
        for (double r : {r12, r1, r2, ru, rs}) worst = std::max(worst, r);
        worst = std::max(worst, std::abs(eu - double(casimir_u_eigenvalue(stat, n, N))));
        worst = std::max(worst, std::abs(es - double(four_ss_eigenvalue(stat, n, N, v))));
        ++seen[{v, v1, v2}];
      }
      for (int v : branch_u_to_pair(N, stat, n))
        for (const auto& l : branch_pair_to_levels(v, sys))
          expected[{v, single1 ? -1 : l.v1, single2 ? -1 : l.v2}] +=
              level_irrep_dimension(stat, n1, l.v1) * level_irrep_dimension(stat, n2, l.v2);
      const bool ok = labels_ok && seen == expected && worst < 1e-8;
      out.push_back({"casimir_spectrum_pair_chain",
                     {{"system", label}, {"N", std::to_string(N)}, {"sigma0", s0}},
                     labels_ok ? worst : 1.0,
                     ok});
    }

    // U(n1) x U(n2) chain: labels (N1, v1, v2).
    {
      const auto basis = detail::joint_eigenbasis({{1.0, nn1}, {alpha, c1}, {beta, c2}});
      std::map<std::tuple<int, int, int>, long long> seen, expected;
      double worst = 0.0;
      bool labels_ok = true;
      for (int i = 0; i < dim; ++i) {
        const Eigen::VectorXcd x = basis.vectors.col(i);
        const auto [eN, rN] = detail::expectation(nn1, x);
        const auto [e1, r1] = detail::expectation(c1, x);
        const auto [e2, r2] = detail::expectation(c2, x);
        const auto [ea, ra] = detail::expectation(u1, x);
        const auto [eb, rb] = detail::expectation(u2, x);
        const int N1 = static_cast<int>(std::lround(eN));
        const int v1 = single1 ? -1 : detail::infer_label(e1, cap(n1, N), pair_eigen(n1));
        const int v2 = single2 ? -1 : detail::infer_label(e2, cap(n2, N), pair_eigen(n2));
        if (std::abs(eN - N1) > 1e-8 || (!single1 && v1 < 0) || (!single2 && v2 < 0)) {
          labels_ok = false;
          continue;
        }
        for (double r : {rN, r1, r2, ra, rb}) worst = std::max(worst, r);
        worst = std::max(worst, std::abs(ea - double(casimir_u_eigenvalue(stat, n1, N1))));
        worst = std::max(worst, std::abs(eb - double(casimir_u_eigenvalue(stat, n2, N - N1))));
        ++seen[{N1, v1, v2}];
      }
      for (int N1 = 0; N1 <= N; ++N1) {
        const int N2 = N - N1;
        if (stat == Statistics::fermion && (N1 > n1 || N2 > n2)) continue;
        for (int v1 : branch_u_to_pair(N1, stat, n1))
          for (int v2 : branch_u_to_pair(N2, stat, n2)) {
            if (single1 && v1 != N1 % 2) continue;
            if (single2 && v2 != N2 % 2) continue;
            expected[{N1, single1 ? -1 : v1, single2 ? -1 : v2}] +=
                level_irrep_dimension(stat, n1, v1) * level_irrep_dimension(stat, n2, v2);
          }
      }
      const bool ok = labels_ok && seen == expected && worst < 1e-8;
      out.push_back({"casimir_spectrum_unitary_chain",
                     {{"system", label}, {"N", std::to_string(N)}, {"sigma0", s0}},
                     labels_ok ? worst : 1.0,
                     ok});
    }
  }
  return out;
}

/// 4 S+ S- = -theta N + C2[U] - C2[SO/Sp]/2 for each level and for the two-level
/// sum. With the sign rule violated the two-level identity must fail by > 0.1.
inline std::vector<IdentityReport> verify_duality(const SystemSpec& sys, int n_max, int sigma, int sigma0) {
  require_two_levels(sys);
  const auto space = make_space(sys, n_max);
  const double th = sys.theta();
  const std::string label = system_label(sys);
  std::vector<IdentityReport> out;
  for (int k = 0; k < 2; ++k) {
    const auto q = build_quasispin(space, k);
    const auto rhs = -th * level_number_op(space, k) + casimir_u_level(space, k) - 0.5 * casimir_pair_level(space, k);
    out.push_back(detail::identity_report("duality_single_level",
                                          {{"system", label}, {"level", std::to_string(k + 1)}},
                                          deviation(4.0 * (q.plus * q.minus), rhs)));
  }
  const auto cas = build_casimirs(space, sigma0);
  const auto q = build_quasispin_sum(space, sigma);
  const auto d = deviation(4.0 * (q.plus * q.minus), -th * number_op(space) + cas.c2_u12 - 0.5 * cas.c2_pair12);
  const bool rule = sigma0 == sigma0_for(sys, sigma);
  IdentityReport r{"duality_two_level",
                   {{"system", label},
                    {"n_max", std::to_string(n_max)},
                    {"sigma", sigma > 0 ? "+" : "-"},
                    {"sigma0", sigma0 > 0 ? "+" : "-"},
                    {"sign_rule", rule ? "satisfied" : "violated"}},
                   d.relative,
                   false};
  r.pass = d.sectors > 0 && (rule ? d.relative < kIdentityTolerance : d.max_abs > 0.1);
  out.push_back(r);
  return out;
}

struct JLabel {
  double energy = 0.0;
  HalfInt J;
  bool resolved = false;
};

/// Angular momentum of each eigenvector, re-diagonalizing J^2 inside every
/// cluster of degenerate energies.
inline std::vector<JLabel> jsqr_labels(const FockSpacePtr& space, int N, const std::vector<double>& energies,
                                       const Eigen::MatrixXcd& vectors, double tol = 1e-8) {
  const Eigen::MatrixXcd j2 = dense_block(build_j_squared(space), N);
  std::vector<JLabel> out;
  const int n = static_cast<int>(energies.size());
  int start = 0;
  while (start < n) {
    int stop = start + 1;
    while (stop < n && std::abs(energies[stop] - energies[stop - 1]) <= tol * std::max(1.0, std::abs(energies[start])))
      ++stop;
    const Eigen::MatrixXcd v = vectors.middleCols(start, stop - start);
    Eigen::MatrixXcd sub = v.adjoint() * j2 * v;
    sub = 0.5 * (sub + sub.adjoint());
    const auto eig = eig_hermitian(sub, false);
    for (double lam : eig.values) {
      const double J = 0.5 * (-1.0 + std::sqrt(std::max(0.0, 1.0 + 4.0 * lam)));
      const int twice = static_cast<int>(std::lround(2.0 * J));
      const HalfInt h = HalfInt::from_twice(twice);
      const bool ok = std::abs(h.value() * (h.value() + 1.0) - lam) < 1e-6;
      out.push_back({energies[start], h, ok});
    }
    start = stop;
  }
  return out;
}

/// One-body and pair tensors of a single level used to exercise the coupled
/// commutator product rules.
inline std::vector<TensorOperator> single_level_tensor_pool(const FockSpacePtr& space) {
  const HalfInt j = space->system().levels.at(0).j;
  std::vector<TensorOperator> pool;
  const auto cr = creation_tensor(space, 0);
  const auto an = annihilation_tensor(space, 0);
  pool.push_back(cr);
  pool.push_back(an);
  for (int g = 0; g <= j.twice(); ++g) pool.push_back(build_G(space, 0, 0, HalfInt(g)));
  for (int g = 0; g <= j.twice(); g += 2) {
    pool.push_back(coupled_product(cr, cr, HalfInt(g)));
    pool.push_back(coupled_product(an, an, HalfInt(g)));
  }
  return pool;
}

/// [(A x B)^e, C]^d against the product rule.
inline Deviation product_rule_deviation(const TensorOperator& A, const TensorOperator& B, const TensorOperator& C,
                                        HalfInt e, HalfInt d) {
  const HalfInt a = A.rank(), b = B.rank(), c = C.rank();
  const auto lhs = coupled_commutator(coupled_product(A, B, e), C, d);
  TensorOperator rhs = TensorOperator::zero(A.space(), d, A.shift() + B.shift() + C.shift());
  const double th_bc = grading(B, C);
  for (int tf = 0; tf <= 2 * (a + b + c).twice(); ++tf) {
    const HalfInt f = half(tf);
    const double w = hat(e) * hat(f);
    if (triangle(b, c, f) && triangle(a, f, d)) {
      const double s = sixj(a, b, e, c, d, f);
      if (s != 0.0) rhs = rhs + (w * phase(a + b + c + d) * s) * coupled_product(A, coupled_commutator(B, C, f), d);
    }
    if (triangle(a, c, f) && triangle(f, b, d)) {
      const double s = sixj(a, b, e, d, c, f);
      if (s != 0.0)
        rhs = rhs + (w * th_bc * phase(b + c + e + f) * s) * coupled_product(coupled_commutator(A, C, f), B, d);
    }
  }
  return deviation(lhs, rhs);
}

/// [(A x B)^e, (C x D)^f]^g against the double product rule.
inline Deviation double_product_rule_deviation(const TensorOperator& A, const TensorOperator& B,
                                               const TensorOperator& C, const TensorOperator& D, HalfInt e,
                                               HalfInt f, HalfInt g) {
  const HalfInt a = A.rank(), b = B.rank(), c = C.rank(), d = D.rank();
  const auto lhs = coupled_commutator(coupled_product(A, B, e), coupled_product(C, D, f), g);
  TensorOperator rhs = TensorOperator::zero(A.space(), g, A.shift() + B.shift() + C.shift() + D.shift());
  const double th_bc = grading(B, C), th_bd = grading(B, D), th_ec = grading(e, c);
  const int top = 2 * (a + b + c + d).twice();
  for (int th2 = 0; th2 <= top; ++th2)
    for (int tk = 0; tk <= top; ++tk) {
      const HalfInt h = half(th2), k = half(tk);
      const double w = hat(e) * hat(f) * hat(h) * hat(k);
      if (triangle(b, c, k) && triangle(a, k, h) && triangle(h, d, g)) {
        const double s = sixj(c, d, f, g, e, h) * sixj(a, b, e, c, h, k);
        if (s != 0.0)
          rhs = rhs + (w * phase(e + c + d + g) * phase(a + b + c + h) * s) *
                          coupled_product(coupled_product(A, coupled_commutator(B, C, k), h), D, g);
      }
      if (triangle(a, c, k) && triangle(k, b, h) && triangle(h, d, g)) {
        const double s = sixj(c, d, f, g, e, h) * sixj(a, b, e, h, c, k);
        if (s != 0.0)
          rhs = rhs + (w * th_bc * phase(e + c + d + g) * phase(b + c + e + k) * s) *
                          coupled_product(coupled_product(coupled_commutator(A, C, k), B, h), D, g);
      }
      if (triangle(b, d, k) && triangle(a, k, h) && triangle(c, h, g)) {
        const double s = sixj(c, d, f, e, g, h) * sixj(a, b, e, d, h, k);
        if (s != 0.0)
          rhs = rhs + (w * th_ec * phase(e + c + f + h) * phase(a + b + d + h) * s) *
                          coupled_product(C, coupled_product(A, coupled_commutator(B, D, k), h), g);
      }
      if (triangle(a, d, k) && triangle(k, b, h) && triangle(c, h, g)) {
        const double s = sixj(c, d, f, e, g, h) * sixj(a, b, e, h, d, k);
        if (s != 0.0)
          rhs = rhs + (w * th_ec * th_bd * phase(e + c + f + h) * phase(b + d + e + k) * s) *
                          coupled_product(C, coupled_product(coupled_commutator(A, D, k), B, h), g);
      }
    }
  return deviation(lhs, rhs);
}

namespace detail {

inline HalfInt random_rank(std::mt19937& rng, HalfInt x, HalfInt y) {
  const auto rs = coupled_ranks(x, y);
  return rs[std::uniform_int_distribution<size_t>(0, rs.size() - 1)(rng)];
}

inline TensorOperator random_scaled(std::mt19937& rng, const std::vector<TensorOperator>& pool) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto& t = pool[std::uniform_int_distribution<size_t>(0, pool.size() - 1)(rng)];
  return cplx(u(rng), u(rng)) * t;
}

}  // namespace detail

/// Randomized product and double product rule checks on one single-level system.
inline std::vector<IdentityReport> verify_product_rules(const SystemSpec& sys, int n_max, int trials, unsigned seed) {
  const auto space = make_space(sys, n_max);
  const auto pool = single_level_tensor_pool(space);
  std::mt19937 rng(seed);
  const std::string label = system_label(sys);
  std::vector<IdentityReport> out;
  // Draws whose left side vanishes on every available sector are redrawn so
  // that each trial tests a nontrivial identity.
  auto nontrivial = [](const TensorOperator& t) {
    for (const auto& c : t.components())
      if (c.max_abs() > 1e-8) return true;
    return false;
  };
  for (int t = 0; t < trials;) {
    const auto A = detail::random_scaled(rng, pool), B = detail::random_scaled(rng, pool),
               C = detail::random_scaled(rng, pool);
    const HalfInt e = detail::random_rank(rng, A.rank(), B.rank());
    const HalfInt d = detail::random_rank(rng, e, C.rank());
    if (!nontrivial(coupled_commutator(coupled_product(A, B, e), C, d))) continue;
    out.push_back(detail::identity_report(
        "product_rule",
        {{"system", label}, {"trial", std::to_string(t)}, {"e", e.str()}, {"d", d.str()}},
        product_rule_deviation(A, B, C, e, d)));
    ++t;
  }
  for (int t = 0; t < trials;) {
    const auto A = detail::random_scaled(rng, pool), B = detail::random_scaled(rng, pool),
               C = detail::random_scaled(rng, pool), D = detail::random_scaled(rng, pool);
    const HalfInt e = detail::random_rank(rng, A.rank(), B.rank());
    const HalfInt f = detail::random_rank(rng, C.rank(), D.rank());
    const HalfInt g = detail::random_rank(rng, e, f);
    if (!nontrivial(coupled_commutator(coupled_product(A, B, e), coupled_product(C, D, f), g))) continue;
    out.push_back(detail::identity_report(
        "double_product_rule",
        {{"system", label}, {"trial", std::to_string(t)}, {"e", e.str()}, {"f", f.str()}, {"g", g.str()}},
        double_product_rule_deviation(A, B, C, D, e, f, g)));
    ++t;
  }
  return out;
}

/// Multiset of oracle energies predicted by the engine: each block eigenvalue
/// repeated dim[v1] dim[v2] times.
inline std::vector<double> engine_spectrum_with_multiplicity(const SystemSpec& sys, const PairingParams& p, int N) {
  SystemSpec s = sys;
  s.N = N;
  std::vector<double> out;
  const int n1 = s.levels[0].degeneracy(), n2 = s.levels[1].degeneracy();
  for (auto [v1, v2] : admissible_blocks(s)) {
    const auto eig = diagonalize_block(enumerate_block(s, v1, v2, N), p, false);
    const long long mult = level_irrep_dimension(s.stat, n1, v1) * level_irrep_dimension(s.stat, n2, v2);
    for (double x : eig.values)
      for (long long m = 0; m < mult; ++m) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Engine block spectra against the oracle pairing Hamiltonian on sector N.
inline IdentityReport engine_vs_oracle(const SystemSpec& sys, const PairingParams& p, int N) {
  require_two_levels(sys);
  const auto space = make_space(sys, N);
  const auto h = pairing_hamiltonian_fock(space, p.eps, p.G);
  const auto oracle = eig_hermitian(detail::hermitian_block(h, N), false).values;
  const auto engine = engine_spectrum_with_multiplicity(sys, p, N);
  double worst = 0.0;
  const bool sizes = oracle.size() == engine.size();
  if (sizes)
    for (size_t i = 0; i < oracle.size(); ++i) worst = std::max(worst, std::abs(oracle[i] - engine[i]));
  return {"engine_vs_oracle",
          {{"system", system_label(sys)},
           {"N", std::to_string(N)},
           {"oracle_dim", std::to_string(oracle.size())},
           {"engine_dim", std::to_string(engine.size())}},
          sizes ? worst : 1.0,
          sizes && worst < 1e-8};
}

/// The pairing Hamiltonian equals its Casimir-operator form on the oracle.
inline IdentityReport casimir_form_roundtrip(const SystemSpec& sys, const PairingParams& p, int n_max) {
  const auto space = make_space(sys, n_max);
  const auto c = casimir_form_params(p, sys);
  const auto cas = build_casimirs(space, c.sigma0);
  const auto lhs = pairing_hamiltonian_fock(space, p.eps, p.G);
  const auto rhs = c.n1 * cas.n1 + c.n2 * cas.n2 + c.c2_u1 * cas.c2_u1 + c.c2_u2 * cas.c2_u2 +
                   c.c2_u12 * cas.c2_u12 + c.c2_pair1 * cas.c2_pair1 + c.c2_pair2 * cas.c2_pair2 +
                   c.c2_pair12 * cas.c2_pair12;
  return detail::identity_report("casimir_form_roundtrip",
                                 {{"system", system_label(sys)}, {"n_max", std::to_string(n_max)}},
                                 deviation(lhs, rhs));
}

/// Multipole form (1-xi)/N N2 - theta xi/N^2 F o F on the (v1 v2) = (0 0)
/// states S1+^p1 S2+^p2 |0>, against the engine spectrum of H+.
inline IdentityReport multipole_vs_plus(const SystemSpec& sys, int sigma0, const std::vector<double>& xis) {
  require_two_levels(sys);
  const int N = sys.N;
  if (N <= 0 || N % 2) throw InvalidArgument("the (0 0) comparison needs even N > 0");
  const auto space = make_space(sys, N);
  const auto q1 = build_quasispin(space, 0), q2 = build_quasispin(space, 1);
  const Eigen::MatrixXcd ff = detail::hermitian_block(f_circ_f(space, sigma0), N);
  const Eigen::MatrixXcd n2 = detail::hermitian_block(level_number_op(space, 1), N);

  std::vector<Eigen::VectorXcd> states;
  for (int p1 = 0; 2 * p1 <= N; ++p1) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
    int at = 0;
    for (int i = 0; i < p1; ++i, at += 2) v = dense_block(q1.plus, at) * v;
    for (int i = 0; i < N / 2 - p1; ++i, at += 2) v = dense_block(q2.plus, at) * v;
    if (v.norm() < 1e-12) continue;
    states.push_back(v / v.norm());
  }
  const int m = static_cast<int>(states.size());
  Eigen::MatrixXcd basis(ff.rows(), m);
  for (int i = 0; i < m; ++i) basis.col(i) = states[i];

  const double th = sys.theta();
  double worst = 0.0;
  HamiltonianForm plus;
  plus.kind = FormKind::plus;
  const auto block = enumerate_block(sys, 0, 0, N);
  for (double xi : xis) {
    const Eigen::MatrixXcd h = ((1.0 - xi) / N) * n2 - (th * xi / (double(N) * N)) * ff;
    const Eigen::MatrixXcd hb = h * basis;
    Eigen::MatrixXcd proj = basis.adjoint() * hb;
    // The (0 0) span must be invariant.
    worst = std::max(worst, (hb - basis * proj).cwiseAbs().maxCoeff());
    proj = 0.5 * (proj + proj.adjoint());
    const auto oracle = eig_hermitian(proj, false).values;
    const auto r = to_pairing_params(plus, sys, xi);
    const auto eig = diagonalize_block(block, r.params, false);
    if (static_cast<int>(eig.values.size()) != m) return {"multipole_vs_plus", {{"system", system_label(sys)}}, 1.0, false};
    for (int i = 0; i < m; ++i) worst = std::max(worst, std::abs(oracle[i] - (eig.values[i] + r.offset)));
  }
  return {"multipole_vs_plus",
          {{"system", system_label(sys)}, {"N", std::to_string(N)}, {"sigma0", sigma0 > 0 ? "+" : "-"}},
          worst,
          worst < 1e-10};
}

}  // namespace pairalg

#endif
