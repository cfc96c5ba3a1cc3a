#ifndef PAIRALG_SPECTRA_HPP
#define PAIRALG_SPECTRA_HPP

// Transitional Hamiltonians, dynamical-symmetry energies, xi scans and the
// observables derived from them.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pairalg/irreps.hpp"
#include "pairalg/quasispin.hpp"

namespace pairalg {

enum class FormKind { pair, plus, minus, multipole, quadrupole, raw, casimir };

inline std::string to_string(FormKind k) {
  switch (k) {
    case FormKind::pair: return "pair";
    case FormKind::plus: return "plus";
    case FormKind::minus: return "minus";
    case FormKind::multipole: return "multipole";
    case FormKind::quadrupole: return "quadrupole";
    case FormKind::raw: return "raw";
    case FormKind::casimir: return "casimir";
  }
  return "?";
}

inline FormKind parse_form(const std::string& s) {
  for (auto k : {FormKind::pair, FormKind::plus, FormKind::minus, FormKind::multipole, FormKind::quadrupole,
                 FormKind::raw, FormKind::casimir})
    if (to_string(k) == s) return k;
  throw InvalidArgument("unknown Hamiltonian form '" + s + "'");
}

/// H = a N + b1 N1 + b2 N2 + b C2[SO/Sp(n1+n2)] + c1 C2[SO/Sp(n1)] + c2 C2[SO/Sp(n2)].
struct CasimirFormCoefficients {
  double a = 0, b1 = 0, b2 = 0, b = 0, c1 = 0, c2 = 0;
};

struct HamiltonianForm {
  FormKind kind = FormKind::plus;
  PairingParams raw;  // used by FormKind::raw
  CasimirFormCoefficients casimir;  // used by FormKind::casimir
  int sigma = 1;
};

/// Engine parameters plus the c-number pieces: a global offset and
/// coefficients multiplying the single-level Casimir eigenvalues.
struct ResolvedHamiltonian {
  PairingParams params;
  double offset = 0.0;
  std::vector<double> seniority_coeff;

  double block_offset(const SystemSpec& sys, const std::vector<int>& v) const {
    double e = offset;
    for (size_t k = 0; k < seniority_coeff.size(); ++k)
      if (seniority_coeff[k] != 0.0)
        e += seniority_coeff[k] *
             static_cast<double>(casimir_pair_eigenvalue(sys.stat, sys.levels[k].degeneracy(), v[k]));
    return e;
  }
};

/// C2[U(n1+n2)] - theta N on N particles: N(theta N + n - 2 theta).
inline long long u_casimir_offset(Statistics stat, int n, int N) {
  const int th = theta(stat);
  return static_cast<long long>(N) * (th * N + n - 2 * th);
}

inline ResolvedHamiltonian to_pairing_params(const HamiltonianForm& form, const SystemSpec& sys, double xi) {
  require_two_levels(sys);
  ResolvedHamiltonian r;
  r.seniority_coeff = {0.0, 0.0};
  const int N = sys.N;
  const int th = sys.theta();
  const double shift = static_cast<double>(u_casimir_offset(sys.stat, sys.total_degeneracy(), N));
  auto transitional = [&](double g) {
    if (N <= 0) throw InvalidArgument("transitional Hamiltonians need N > 0");
    if (!(xi >= 0.0 && xi <= 1.0)) throw InvalidArgument("xi must lie in [0, 1]");
    const double NN = static_cast<double>(N);
    return uniform_two_level(0.0, (1.0 - xi) / NN, g * xi / (NN * NN), form.sigma);
  };
  switch (form.kind) {
    case FormKind::pair:
      r.params = transitional(4.0 * th);
      break;
    case FormKind::minus:
      r.params = transitional(-4.0);
      break;
    case FormKind::quadrupole:
      if (sys.stat != Statistics::boson || sys.levels[0].j.twice() != 0 || sys.levels[1].j.twice() != 4)
        throw InvalidArgument("the quadrupole form requires the s-d boson system");
      [[fallthrough]];
    case FormKind::multipole:
    case FormKind::plus: {
      r.params = transitional(4.0);
      const double NN = static_cast<double>(N);
      r.offset = -xi * shift / (NN * NN);
      if (form.kind != FormKind::plus) r.seniority_coeff = {0.5 * xi / (NN * NN), 0.5 * xi / (NN * NN)};
      break;
    }
    case FormKind::raw:
      form.raw.validate(2);
      r.params = form.raw;
      break;
    case FormKind::casimir: {
      const auto& c = form.casimir;
      // C2[SO/Sp(n1+n2)] = 2 (C2[U] - theta N) - 8 S+ S-.
      r.params = uniform_two_level(c.a + c.b1, c.a + c.b2, -8.0 * c.b, form.sigma);
      r.offset = 2.0 * c.b * shift;
      r.seniority_coeff = {c.c1, c.c2};
      break;
    }
  }
  return r;
}

/// Labels of a dynamical-symmetry eigenstate. Unused labels may stay empty.
struct DynamicalLabels {
  int N = 0;
  std::optional<int> N1, N2, v, v1, v2;
  std::optional<HalfInt> J1, J2, J;
};

struct DynamicalCoefficients {
  double a = 0, b1 = 0, b2 = 0, b = 0, c1 = 0, c2 = 0, d1 = 0, d2 = 0, e = 0;
};

/// Closed-form energy in the U(n1) x U(n2) chain (b = 0) or the SO/Sp(n1+n2)
/// chain (b1 = b2).
inline double dynamical_symmetry_energy(const SystemSpec& sys, const DynamicalLabels& l,
                                        const DynamicalCoefficients& c) {
  require_two_levels(sys);
  auto need = [](const auto& opt, const char* name) {
    if (!opt) throw InvalidArgument(std::string("missing label ") + name);
    return *opt;
  };
  const int n1 = sys.levels[0].degeneracy(), n2 = sys.levels[1].degeneracy();
  double E = c.a * l.N;
  if (c.b != 0.0) {
    if (c.b1 != c.b2) throw InvalidArgument("b and unequal b1, b2 do not form a dynamical symmetry");
    E += c.b1 * l.N;
    E += c.b * static_cast<double>(casimir_pair_eigenvalue(sys.stat, n1 + n2, need(l.v, "v")));
  } else {
    if (c.b1 != 0.0) E += c.b1 * need(l.N1, "N1");
    if (c.b2 != 0.0) E += c.b2 * need(l.N2, "N2");
  }
  if (c.c1 != 0.0) E += c.c1 * static_cast<double>(casimir_pair_eigenvalue(sys.stat, n1, need(l.v1, "v1")));
  if (c.c2 != 0.0) E += c.c2 * static_cast<double>(casimir_pair_eigenvalue(sys.stat, n2, need(l.v2, "v2")));
  auto jj = [](HalfInt j) { return j.value() * (j.value() + 1.0); };
  if (c.d1 != 0.0) E += c.d1 * jj(need(l.J1, "J1"));
  if (c.d2 != 0.0) E += c.d2 * jj(need(l.J2, "J2"));
  if (c.e != 0.0) E += c.e * jj(need(l.J, "J"));
  return E;
}

struct SubspaceFilter {
  std::optional<int> max_v12;
  std::vector<std::pair<int, int>> labels;  // explicit list wins when nonempty

  bool accepts(int v1, int v2) const {
    if (!labels.empty()) return std::find(labels.begin(), labels.end(), std::make_pair(v1, v2)) != labels.end();
    return !max_v12 || v1 + v2 <= *max_v12;
  }
};

struct ScanConfig {
  SystemSpec sys;
  HamiltonianForm form;
  double xi_start = 0.0, xi_stop = 1.0, xi_step = 0.01;
  SubspaceFilter filter;
  bool excited_order_param = false;

  std::vector<double> grid() const {
    if (!(xi_step > 0.0)) throw InvalidArgument("xi step must be positive");
    if (xi_start < 0.0 || xi_stop > 1.0 || xi_start > xi_stop) throw InvalidArgument("xi range must lie in [0, 1]");
    const int count = static_cast<int>(std::floor((xi_stop - xi_start) / xi_step + 1e-9)) + 1;
    std::vector<double> xs;
    for (int i = 0; i < count; ++i) xs.push_back(std::min(xi_stop, xi_start + i * xi_step));
    return xs;
  }
};

struct SpectrumRecord {
  double xi = 0.0;
  int v1 = 0, v2 = 0, idx = 0;
  double energy = 0.0;
  std::optional<double> order_param;  // <N2 - N1>
};

/// Seniority pairs with a nonempty block at the system's N.
inline std::vector<std::pair<int, int>> admissible_blocks(const SystemSpec& sys) {
  require_two_levels(sys);
  std::vector<std::pair<int, int>> out;
  auto top = [&](const LevelSpec& l) { return level_seniority_cap(sys.stat, l).value_or(sys.N); };
  const int t1 = std::min(top(sys.levels[0]), sys.N), t2 = std::min(top(sys.levels[1]), sys.N);
  for (int v1 = 0; v1 <= t1; ++v1)
    for (int v2 = 0; v2 <= t2; ++v2)
      if (!enumerate_block(sys, v1, v2, sys.N).empty()) out.emplace_back(v1, v2);
  return out;
}

inline std::vector<SpectrumRecord> scan(const ScanConfig& cfg) {
  std::vector<SpectrumRecord> out;
  const auto xs = cfg.grid();
  std::vector<BlockBasis> blocks;
  for (auto [v1, v2] : admissible_blocks(cfg.sys))
    if (cfg.filter.accepts(v1, v2)) blocks.push_back(enumerate_block(cfg.sys, v1, v2, cfg.sys.N));
  const double N = cfg.sys.N;
  for (double xi : xs) {
    const auto h = to_pairing_params(cfg.form, cfg.sys, xi);
    for (const auto& block : blocks) {
      const auto eig = diagonalize_block(block, h.params, true);
      const double off = h.block_offset(cfg.sys, block.seniorities());
      for (int i = 0; i < block.size(); ++i) {
        SpectrumRecord r{xi, block.seniorities()[0], block.seniorities()[1], i, eig.values[i] + off, std::nullopt};
        if (i == 0 || cfg.excited_order_param) {
          double m = 0.0;
          for (int s = 0; s < block.size(); ++s) m += eig.vectors(s, i) * eig.vectors(s, i) * (N - 2.0 * block.state(s).N[0]);
          r.order_param = m;
        }
        out.push_back(r);
      }
    }
  }
  return out;
}

struct GapPoint {
  double xi;
  int v1, v2;
  double gap;
};

struct GapProfile {
  std::vector<GapPoint> points;
  /// Per block: xi at which the gap is smallest (first occurrence).
  std::map<std::pair<int, int>, double> argmin;
};

/// Gap between the two lowest states of each (xi, v1, v2) block.
inline GapProfile gap_and_level_density(const std::vector<SpectrumRecord>& records) {
  std::map<std::tuple<double, int, int>, std::vector<double>> groups;
  for (const auto& r : records) groups[{r.xi, r.v1, r.v2}].push_back(r.energy);
  GapProfile p;
  std::map<std::pair<int, int>, double> best;
  for (auto& [key, es] : groups) {
    if (es.size() < 2) continue;
    std::sort(es.begin(), es.end());
    const auto [xi, v1, v2] = key;
    const double gap = es[1] - es[0];
    p.points.push_back({xi, v1, v2, gap});
    const auto label = std::make_pair(v1, v2);
    if (!best.count(label) || gap < best[label]) {
      best[label] = gap;
      p.argmin[label] = xi;
    }
  }
  return p;
}

/// Adjacent level spacings of each (xi, v1, v2) block in ascending energy.
inline std::map<std::tuple<double, int, int>, std::vector<double>> level_spacings(
    const std::vector<SpectrumRecord>& records) {
  std::map<std::tuple<double, int, int>, std::vector<double>> groups, out;
  for (const auto& r : records) groups[{r.xi, r.v1, r.v2}].push_back(r.energy);
  for (auto& [key, es] : groups) {
    std::sort(es.begin(), es.end());
    auto& d = out[key];
    for (size_t i = 1; i < es.size(); ++i) d.push_back(es[i] - es[i - 1]);
  }
  return out;
}

struct FillingPoint {
  int N;
  long long min4ss, max4ss;
};

/// 4<S+S-> = theta [N(N + theta n - 2) - v(v + theta n - 2)] for n = 2 Omega.
inline long long four_ss_eigenvalue(Statistics stat, int n, int N, int v) {
  const int th = theta(stat);
  return th * (static_cast<long long>(N) * (N + th * n - 2) - static_cast<long long>(v) * (v + th * n - 2));
}

/// Range of 4 S+ S- eigenvalues over the allowed seniorities at each N.
inline std::vector<FillingPoint> filling_curve(Statistics stat, int twice_omega, int N_max, int step = 1) {
  if (twice_omega < 1) throw InvalidArgument("Omega must be positive");
  if (step < 1) throw InvalidArgument("N step must be positive");
  if (stat == Statistics::fermion && N_max > twice_omega) throw InvalidArgument("fermion filling exceeds 2 Omega");
  std::vector<FillingPoint> out;
  for (int N = 0; N <= N_max; N += step) {
    const auto vs = branch_u_to_pair(N, stat, twice_omega);
    long long lo = std::numeric_limits<long long>::max(), hi = std::numeric_limits<long long>::min();
    for (int v : vs) {
      const long long x = four_ss_eigenvalue(stat, twice_omega, N, v);
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    out.push_back({N, lo, hi});
  }
  return out;
}

}  // namespace pairalg

#endif
