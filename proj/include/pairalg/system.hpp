#ifndef PAIRALG_SYSTEM_HPP
#define PAIRALG_SYSTEM_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "pairalg/half_int.hpp"

namespace pairalg {

/// Raised for inputs that violate a documented precondition.
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Particle statistics; theta = +1 for bosons, -1 for fermions.
enum class Statistics { boson, fermion };

inline constexpr int theta(Statistics s) { return s == Statistics::boson ? 1 : -1; }

inline std::string to_string(Statistics s) { return s == Statistics::boson ? "boson" : "fermion"; }

inline Statistics parse_statistics(const std::string& text) {
  if (text == "boson" || text == "bose" || text == "b") return Statistics::boson;
  if (text == "fermion" || text == "fermi" || text == "f") return Statistics::fermion;
  throw InvalidArgument("unknown statistics '" + text + "'");
}

/// A single j-shell. Degeneracy n = 2j+1, pair degeneracy Omega = n/2.
struct LevelSpec {
  HalfInt j;

  int degeneracy() const { return j.twice() + 1; }
  /// 2*Omega, which equals the degeneracy and is always integral.
  int twice_omega() const { return degeneracy(); }
  double omega() const { return 0.5 * degeneracy(); }
  /// The j=0 boson singlet has no orthogonal algebra.
  bool is_singlet() const { return j.twice() == 0; }
};

inline LevelSpec level_from_degeneracy(Statistics stat, int n) {
  if (n < 1) throw InvalidArgument("level degeneracy must be positive, got " + std::to_string(n));
  if (stat == Statistics::boson && n % 2 == 0)
    throw InvalidArgument("bosonic level degeneracy must be odd (integer j), got " + std::to_string(n));
  if (stat == Statistics::fermion && n % 2 != 0)
    throw InvalidArgument("fermionic level degeneracy must be even (half-odd j), got " + std::to_string(n));
  return LevelSpec{HalfInt::from_twice(n - 1)};
}

struct SystemSpec {
  Statistics stat = Statistics::boson;
  std::vector<LevelSpec> levels;
  int N = 0;

  int theta() const { return pairalg::theta(stat); }
  int total_degeneracy() const {
    int n = 0;
    for (const auto& l : levels) n += l.degeneracy();
    return n;
  }
  int twice_omega() const { return total_degeneracy(); }
  int num_levels() const { return static_cast<int>(levels.size()); }

  /// Throws InvalidArgument when the statistics/level/N combination is inconsistent.
  void validate() const {
    if (levels.empty()) throw InvalidArgument("system needs at least one level");
    for (const auto& l : levels) {
      if (l.j.twice() < 0) throw InvalidArgument("negative level angular momentum");
      if (stat == Statistics::boson && !l.j.is_integer())
        throw InvalidArgument("bosonic level must have integer j, got " + l.j.str());
      if (stat == Statistics::fermion && l.j.is_integer())
        throw InvalidArgument("fermionic level must have half-odd j, got " + l.j.str());
    }
    if (N < 0) throw InvalidArgument("particle number must be non-negative");
    if (stat == Statistics::fermion && N > total_degeneracy())
      throw InvalidArgument("fermion number " + std::to_string(N) + " exceeds total degeneracy " +
                            std::to_string(total_degeneracy()));
  }
};

inline SystemSpec make_system(Statistics stat, const std::vector<HalfInt>& js, int N) {
  SystemSpec sys;
  sys.stat = stat;
  for (auto j : js) sys.levels.push_back(LevelSpec{j});
  sys.N = N;
  sys.validate();
  return sys;
}

inline SystemSpec make_system_from_degeneracies(Statistics stat, const std::vector<int>& ns, int N) {
  SystemSpec sys;
  sys.stat = stat;
  for (int n : ns) sys.levels.push_back(level_from_degeneracy(stat, n));
  sys.N = N;
  sys.validate();
  return sys;
}

}  // namespace pairalg

#endif
