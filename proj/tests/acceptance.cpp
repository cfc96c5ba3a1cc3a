// One PASS/FAIL line per acceptance criterion; exit status 1 if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "pairalg/cli.hpp"
#include "pairalg/oracle_checks.hpp"

using namespace pairalg;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::vector<std::string> column(const cli::Table& t, size_t c) {
  std::vector<std::string> out;
  for (const auto& r : t.rows) out.push_back(r.at(c));
  return out;
}

SystemSpec two(Statistics s, int n1, int n2, int N) { return make_system_from_degeneracies(s, {n1, n2}, N); }

Outcome branching_tables() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::string> table1{
      "(0,0)",
      "(1,0), (0,1)",
      "(2,0), (1,1), (0,2)",
      "(0,0)",
      "(3,0), (2,1), (1,2), (0,3)",
      "(1,0), (0,1)",
      "(4,0), (3,1), (2,2), (1,3), (0,4)",
      "(2,0), (1,1), (0,2)",
      "(0,0)",
      "(5,0), (4,1), (3,2), (2,3), (1,4), (0,5)",
      "(3,0), (2,1), (1,2), (0,3)",
      "(1,0), (0,1)",
      "(6,0), (5,1), (4,2), (3,3), (2,4), (1,5), (0,6)",
      "(4,0), (3,1), (2,2), (1,3), (0,4)",
      "(2,0), (1,1), (0,2)",
      "(0,0)"};
  const std::vector<std::string> table2_N{"0", "1", "2", "", "3", "4"}, table2_v{"0", "1", "0", "2", "1", "0"};
  const std::vector<std::string> table2{"(0,0)", "(1,0), (0,1)", "(0,0)", "(1,1), (0,0)", "(1,0), (0,1)", "(0,0)"};
  const std::vector<std::string> table3_v{"0", "2", "4", "6", "8", "10"};
  const std::vector<std::string> table3{
      "(0,0)",
      "(2,0), (1,1), (0,2), (0,0)",
      "(4,0), (3,1), (2,2), (1,3), (0,4), (2,0), (1,1), (0,2), (0,0)",
      "(5,1), (4,2), (3,3), (2,4), (1,5), (4,0), (3,1), (2,2), (1,3), (0,4), (2,0), (1,1), (0,2), (0,0)",
      "(5,3), (4,4), (3,5), (4,2), (3,3), (2,4), (3,1), (2,2), (1,3), (2,0), (1,1), (0,2), (0,0)",
      "(5,5), (4,4), (3,3), (2,2), (1,1), (0,0)"};

  const auto t1 = cli::partition_table(6);
  const auto t2 = cli::filling_branching_table(two(Statistics::fermion, 2, 2, 0), 4);
  const auto t3 = cli::fixed_n_table(two(Statistics::fermion, 10, 10, 10));
  const bool ok1 = column(t1, 2) == table1;
  const bool ok2 = column(t2, 0) == table2_N && column(t2, 1) == table2_v && column(t2, 3) == table2;
  const bool ok3 = column(t3, 0) == table3_v && column(t3, 2) == table3;
  const double dt = seconds_since(t0);
  return {ok1 && ok2 && ok3 && dt < 1.0, std::string("table1=") + (ok1 ? "ok" : "mismatch") +
                                             " table2=" + (ok2 ? "ok" : "mismatch") +
                                             " table3=" + (ok3 ? "ok" : "mismatch") + " time=" + fmt("%.3fs", dt)};
}

Outcome dimension_identities() {
  const auto t0 = std::chrono::steady_clock::now();
  int checked = 0, failed = 0;
  const std::vector<std::pair<Statistics, std::pair<int, int>>> systems{
      {Statistics::boson, {3, 3}},   {Statistics::boson, {3, 5}},   {Statistics::boson, {5, 5}},
      {Statistics::fermion, {2, 2}}, {Statistics::fermion, {4, 4}}, {Statistics::fermion, {10, 10}}};
  for (const auto& [stat, ns] : systems) {
    const auto sys = two(stat, ns.first, ns.second, 0);
    const int vmax = stat == Statistics::fermion ? (ns.first + ns.second) / 2 : 12;
    for (int v = 0; v <= vmax; ++v) {
      if (!seniority_admissible(v, sys)) continue;
      ++checked;
      if (!dimension_consistency(v, sys)) ++failed;
    }
  }
  // SO(6) v=2 from two d-like boson levels: 20 = 5 + 9 + 5 + 1.
  const auto so6 = two(Statistics::boson, 3, 3, 0);
  std::vector<long long> parts;
  for (const auto& l : branch_pair_to_levels(2, so6))
    parts.push_back(level_irrep_dimension(Statistics::boson, 3, l.v1) *
                    level_irrep_dimension(Statistics::boson, 3, l.v2));
  const bool printed = irrep_dimension(PairAlgebra::so_symmetric, 6, 2) == 20 &&
                       parts == std::vector<long long>{5, 9, 5, 1};
  const double dt = seconds_since(t0);
  return {failed == 0 && checked > 0 && printed && dt < 1.0,
          std::to_string(checked) + " labels, " + std::to_string(failed) + " failures, SO(6) v=2 " +
              (printed ? "20=5+9+5+1" : "mismatch") + " time=" + fmt("%.3fs", dt)};
}

std::vector<SystemSpec> oracle_systems() {
  return {make_system(Statistics::boson, {HalfInt(1), HalfInt(1)}, 0),
          make_system(Statistics::boson, {HalfInt(1), HalfInt(2)}, 0),
          make_system(Statistics::fermion, {half(3), half(3)}, 0),
          make_system(Statistics::fermion, {half(1), half(3)}, 0)};
}

Outcome commutator_tables() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<IdentityReport> all;
  for (const auto& sys : oracle_systems()) {
    auto r = verify_commutator_tables(sys, 3);
    all.insert(all.end(), r.begin(), r.end());
  }
  const double dt = seconds_since(t0);
  return {all_pass(all) && !all.empty() && dt < 60.0,
          std::to_string(all.size()) + " identities, worst " + fmt("%.2e", worst_deviation(all)) +
              " time=" + fmt("%.1fs", dt)};
}

Outcome casimir_spectra() {
  std::vector<IdentityReport> all;
  for (const auto& sys : oracle_systems())
    for (int sigma0 : {1, -1}) {
      auto r = verify_casimirs(sys, 3, sigma0);
      all.insert(all.end(), r.begin(), r.end());
    }
  return {all_pass(all) && !all.empty(),
          std::to_string(all.size()) + " checks, worst " + fmt("%.2e", worst_deviation(all))};
}

Outcome duality() {
  double worst = 0.0, weakest_violation = 1e300;
  bool ok = true;
  for (const auto& sys : oracle_systems())
    for (int sigma : {1, -1}) {
      const auto good = verify_duality(sys, 4, sigma, sigma0_for(sys, sigma));
      ok = ok && all_pass(good) && good.back().parameters.at("sign_rule") == "satisfied";
      worst = std::max(worst, worst_deviation(good));
      const auto bad = verify_duality(sys, 4, sigma, -sigma0_for(sys, sigma));
      weakest_violation = std::min(weakest_violation, bad.back().max_deviation);
    }
  return {ok && worst < kIdentityTolerance && weakest_violation > 0.1,
          "rule satisfied worst " + fmt("%.2e", worst) + ", rule violated smallest deviation " +
              fmt("%.3f", weakest_violation)};
}

Outcome engine_vs_oracle_draws() {
  std::mt19937 rng(20100);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int draws = 0, failed = 0;
  double worst = 0.0;
  for (const auto& sys : {make_system(Statistics::boson, {HalfInt(1), HalfInt(1)}, 4),
                          make_system(Statistics::fermion, {half(3), half(3)}, 4)})
    for (int t = 0; t < 20; ++t) {
      const double g12 = u(rng);
      PairingParams p{{u(rng), u(rng)}, {{u(rng), g12}, {g12, u(rng)}}, t % 2 == 0 ? 1 : -1};
      const auto r = engine_vs_oracle(sys, p, 4);
      ++draws;
      if (!r.pass || r.parameters.at("oracle_dim") != r.parameters.at("engine_dim")) ++failed;
      worst = std::max(worst, r.max_deviation);
    }
  return {failed == 0, std::to_string(draws) + " draws, " + std::to_string(failed) + " failures, worst " +
                           fmt("%.2e", worst)};
}

struct ScanSummary {
  double ground0 = NAN, ground1 = NAN, highest1 = NAN, argmin = NAN, seconds = 0;
};

ScanSummary scan_block00(const SystemSpec& sys, FormKind kind) {
  const auto t0 = std::chrono::steady_clock::now();
  ScanConfig c;
  c.sys = sys;
  c.form.kind = kind;
  c.filter.labels = {{0, 0}};
  const auto rec = scan(c);
  ScanSummary s;
  s.highest1 = -1e300;
  for (const auto& r : rec) {
    if (r.xi == 0.0 && r.idx == 0) s.ground0 = r.energy;
    if (r.xi == 1.0) {
      if (r.idx == 0) s.ground1 = r.energy;
      s.highest1 = std::max(s.highest1, r.energy);
    }
  }
  s.argmin = gap_and_level_density(rec).argmin.at({0, 0});
  s.seconds = seconds_since(t0);
  return s;
}

Outcome critical_precursors() {
  const auto b = scan_block00(two(Statistics::boson, 5, 5, 50), FormKind::plus);
  const auto f = scan_block00(two(Statistics::fermion, 50, 50, 50), FormKind::minus);
  const bool ok_b = b.ground0 == 0.0 && std::abs(b.ground1 + 1.16) < 1e-12 && std::abs(b.highest1) < 1e-12 &&
                    b.argmin >= 0.15 && b.argmin <= 0.30 && b.seconds < 30.0;
  const bool ok_f = std::abs(f.ground1 + 1.04) < 1e-12 && f.argmin >= 0.15 && f.argmin <= 0.30 && f.seconds < 30.0;
  return {ok_b && ok_f, "boson E0(0)=" + fmt("%.3g", b.ground0) + " E0(1)=" + fmt("%.15g", b.ground1) +
                            " Emax(1)=" + fmt("%.2e", b.highest1) + " argmin=" + fmt("%.2f", b.argmin) +
                            " time=" + fmt("%.2fs", b.seconds) + "; fermion E0(1)=" + fmt("%.15g", f.ground1) +
                            " argmin=" + fmt("%.2f", f.argmin) + " time=" + fmt("%.2fs", f.seconds)};
}

Outcome filling() {
  int points = 0, failed = 0;
  bool switch_seen = false;
  for (int omega = 1; omega <= 30; ++omega) {
    const long long n = 2LL * omega;
    for (const auto& p : filling_curve(Statistics::fermion, 2 * omega, 2 * omega)) {
      const long long N = p.N;
      const long long lo = N <= omega ? 0 : 4 * (N - omega);
      const long long hi = N * (n - N + 2) - (N % 2 ? n + 1 : 0);
      ++points;
      if (p.min4ss != lo || p.max4ss != hi) ++failed;
      if (N == omega + 1 && p.min4ss == 4) switch_seen = true;
    }
    for (const auto& p : filling_curve(Statistics::boson, 2 * omega, 60)) {
      const long long N = p.N;
      const long long hi = N * (N + n - 2) - (N % 2 ? n - 1 : 0);
      ++points;
      if (p.min4ss != 0 || p.max4ss != hi) ++failed;
      if (N % 2 == 0 && p.max4ss != N * (N + 2LL * omega - 2)) ++failed;
    }
  }
  return {failed == 0 && switch_seen,
          std::to_string(points) + " points, " + std::to_string(failed) + " mismatches, fermion branch switch at N=Omega " +
              (switch_seen ? "seen" : "missing")};
}

Outcome multipole_equivalence() {
  std::vector<double> xis;
  for (int i = 0; i <= 10; ++i) xis.push_back(i / 10.0);
  std::vector<IdentityReport> all;
  for (auto ns : {std::pair{1, 5}, std::pair{3, 3}})
    for (int sigma0 : {1, -1}) all.push_back(multipole_vs_plus(two(Statistics::boson, ns.first, ns.second, 10), sigma0, xis));
  const double worst = worst_deviation(all);
  return {all_pass(all) && worst < 1e-10, std::to_string(all.size()) + " runs of 11 xi, worst " + fmt("%.2e", worst)};
}

Outcome product_rules() {
  std::vector<IdentityReport> all;
  for (auto r : {verify_product_rules(make_system(Statistics::boson, {HalfInt(1)}, 0), 5, 50, 20100),
                 verify_product_rules(make_system(Statistics::fermion, {half(3)}, 0), 4, 50, 20100)})
    all.insert(all.end(), r.begin(), r.end());
  return {all_pass(all) && all.size() == 200u,
          std::to_string(all.size()) + " identities, worst " + fmt("%.2e", worst_deviation(all))};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"branching tables", branching_tables},
      {"dimension identities", dimension_identities},
      {"commutator tables", commutator_tables},
      {"casimir spectra", casimir_spectra},
      {"duality identity", duality},
      {"engine vs oracle", engine_vs_oracle_draws},
      {"critical precursors", critical_precursors},
      {"filling ranges", filling},
      {"multipole vs plus", multipole_equivalence},
      {"product rules", product_rules}};
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
