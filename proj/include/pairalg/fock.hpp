#ifndef PAIRALG_FOCK_HPP
#define PAIRALG_FOCK_HPP

// Brute-force second quantization. States of each particle-number sector are
// enumerated explicitly and operators are stored as sparse complex blocks
// between sectors. Boson spaces are truncated at a maximum particle number;
// a block is only ever computed when every intermediate sector it needs is
// present, so every stored block is exact.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "pairalg/half_int.hpp"
#include "pairalg/irreps.hpp"
#include "pairalg/system.hpp"

namespace pairalg {

using cplx = std::complex<double>;
using SpMat = Eigen::SparseMatrix<cplx>;

inline constexpr std::size_t kFockBasisGuard = 200000;

/// Single-particle mode; modes are ordered level-major, then m ascending.
struct Mode {
  int level = 0;
  HalfInt m;
};

inline std::vector<Mode> enumerate_modes(const SystemSpec& sys) {
  std::vector<Mode> modes;
  for (int k = 0; k < sys.num_levels(); ++k) {
    const int tj = sys.levels[k].j.twice();
    for (int tm = -tj; tm <= tj; tm += 2) modes.push_back({k, HalfInt::from_twice(tm)});
  }
  return modes;
}

using Occupation = std::vector<int>;

/// All occupation vectors with N particles, in ascending lexicographic order.
class FockBasis {
public:
  FockBasis(Statistics stat, int num_modes, int N) : stat_(stat), num_modes_(num_modes), N_(N) {
    if (N < 0) return;
    Occupation occ(num_modes, 0);
    fill(occ, 0, N);
    for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i], static_cast<int>(i));
  }

  int N() const { return N_; }
  int size() const { return static_cast<int>(states_.size()); }
  const Occupation& state(int i) const { return states_[i]; }
  const std::vector<Occupation>& states() const { return states_; }

  /// Position of an occupation vector, or -1.
  int find(const Occupation& occ) const {
    auto it = index_.find(occ);
    return it == index_.end() ? -1 : it->second;
  }

private:
  void fill(Occupation& occ, int mode, int remaining) {
    if (mode == num_modes_ - 1) {
      if (stat_ == Statistics::fermion && remaining > 1) return;
      occ[mode] = remaining;
      states_.push_back(occ);
      occ[mode] = 0;
      return;
    }
    const int top = stat_ == Statistics::fermion ? std::min(1, remaining) : remaining;
    for (int x = 0; x <= top; ++x) {
      occ[mode] = x;
      fill(occ, mode + 1, remaining - x);
    }
    occ[mode] = 0;
  }

  Statistics stat_;
  int num_modes_;
  int N_;
  std::vector<Occupation> states_;
  std::map<Occupation, int> index_;
};

inline long long fock_sector_size(Statistics stat, int num_modes, int N) {
  if (N < 0) return 0;
  if (stat == Statistics::boson) return detail::binomial(N + num_modes - 1, N);
  return detail::binomial(num_modes, N);
}

inline FockBasis build_basis(const SystemSpec& sys, int N) {
  sys.validate();
  const int modes = sys.total_degeneracy();
  const long long count = fock_sector_size(sys.stat, modes, N);
  if (count > static_cast<long long>(kFockBasisGuard))
    throw InvalidArgument("Fock basis of " + std::to_string(count) + " states exceeds the guard of " +
                          std::to_string(kFockBasisGuard));
  return FockBasis(sys.stat, modes, N);
}

/// The sectors 0..n_max of a system's Fock space. Fermion spaces are always
/// complete; n_max is clamped to the total degeneracy.
class FockSpace {
public:
  FockSpace(const SystemSpec& sys, int n_max) : sys_(sys), modes_(enumerate_modes(sys)) {
    sys_.validate();
    if (n_max < 0) throw InvalidArgument("negative sector cap");
    n_max_ = sys.stat == Statistics::fermion ? std::min(n_max, sys.total_degeneracy()) : n_max;
    for (int N = 0; N <= n_max_; ++N)
      if (fock_sector_size(sys.stat, num_modes(), N) > static_cast<long long>(kFockBasisGuard))
        throw InvalidArgument("Fock sector " + std::to_string(N) + " exceeds the basis guard");
    sectors_.resize(n_max_ + 1);
  }

  const SystemSpec& system() const { return sys_; }
  Statistics stat() const { return sys_.stat; }
  int n_max() const { return n_max_; }
  int num_modes() const { return static_cast<int>(modes_.size()); }
  const std::vector<Mode>& modes() const { return modes_; }

  int mode_index(int level, HalfInt m) const {
    if (level < 0 || level >= sys_.num_levels()) throw InvalidArgument("level index out of range");
    const HalfInt j = sys_.levels[level].j;
    if (!valid_projection(j, m)) throw InvalidArgument("projection " + m.str() + " invalid for j=" + j.str());
    int offset = 0;
    for (int k = 0; k < level; ++k) offset += sys_.levels[k].degeneracy();
    return offset + (m.twice() + j.twice()) / 2;
  }

  /// True when N lies outside the physical range, so its sector is empty.
  bool empty_sector(int N) const {
    return N < 0 || (sys_.stat == Statistics::fermion && N > sys_.total_degeneracy());
  }

  /// True when the sector exists in this truncated space (possibly empty).
  bool available(int N) const { return empty_sector(N) || N <= n_max_; }

  int dim(int N) const {
    if (empty_sector(N)) return 0;
    return sector(N).size();
  }

  const FockBasis& sector(int N) const {
    if (N < 0 || N > n_max_) throw InvalidArgument("sector " + std::to_string(N) + " not in this space");
    std::lock_guard<std::mutex> lock(mutex_);
    auto& slot = sectors_[N];
    if (!slot) slot = std::make_shared<const FockBasis>(sys_.stat, num_modes(), N);
    return *slot;
  }

private:
  SystemSpec sys_;
  std::vector<Mode> modes_;
  int n_max_ = 0;
  mutable std::mutex mutex_;
  mutable std::vector<std::shared_ptr<const FockBasis>> sectors_;
};

using FockSpacePtr = std::shared_ptr<const FockSpace>;

inline FockSpacePtr make_space(const SystemSpec& sys, int n_max) {
  return std::make_shared<const FockSpace>(sys, n_max);
}

/// Operator changing particle number by `shift`, stored as one sparse block
/// per source sector. A source sector is in the domain when its block is
/// stored or when the source or target sector is empty (the block is then a
/// trivially known zero-size map).
class OperatorMatrix {
public:
  OperatorMatrix() = default;
  OperatorMatrix(FockSpacePtr space, int shift) : space_(std::move(space)), shift_(shift) {}

  /// Zero operator on every source sector whose target is available.
  static OperatorMatrix zero(FockSpacePtr space, int shift) {
    OperatorMatrix op(space, shift);
    for (int N = 0; N <= space->n_max(); ++N)
      if (space->available(N + shift) && !space->empty_sector(N + shift))
        op.blocks_[N] = SpMat(space->dim(N + shift), space->dim(N));
    return op;
  }

  static OperatorMatrix identity(FockSpacePtr space) {
    OperatorMatrix op(space, 0);
    for (int N = 0; N <= space->n_max(); ++N) {
      SpMat id(space->dim(N), space->dim(N));
      id.setIdentity();
      op.blocks_[N] = std::move(id);
    }
    return op;
  }

  const FockSpacePtr& space() const { return space_; }
  int shift() const { return shift_; }
  const std::map<int, SpMat>& blocks() const { return blocks_; }

  bool defined(int N) const {
    if (space_->empty_sector(N) || space_->empty_sector(N + shift_)) return true;
    return blocks_.count(N) > 0;
  }

  SpMat block(int N) const {
    auto it = blocks_.find(N);
    if (it != blocks_.end()) return it->second;
    if (space_->empty_sector(N) || space_->empty_sector(N + shift_))
      return SpMat(space_->empty_sector(N + shift_) ? 0 : space_->dim(N + shift_),
                   space_->empty_sector(N) ? 0 : space_->dim(N));
    throw InvalidArgument("operator block for sector " + std::to_string(N) + " is outside the truncated domain");
  }

  void set_block(int N, SpMat m) { blocks_[N] = std::move(m); }

  /// Source sectors with a nonempty stored block.
  std::vector<int> domain() const {
    std::vector<int> out;
    for (const auto& [N, b] : blocks_)
      if (b.rows() > 0 && b.cols() > 0) out.push_back(N);
    return out;
  }

  OperatorMatrix adjoint() const {
    OperatorMatrix out(space_, -shift_);
    for (const auto& [N, b] : blocks_) out.blocks_[N + shift_] = SpMat(b.adjoint());
    return out;
  }

  OperatorMatrix& operator*=(cplx s) {
    for (auto& [N, b] : blocks_) b *= s;
    return *this;
  }

  friend OperatorMatrix operator*(cplx s, OperatorMatrix a) { return a *= s; }
  friend OperatorMatrix operator*(double s, OperatorMatrix a) { return a *= cplx(s, 0.0); }

  /// Sum on the common domain.
  friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) { return combine(a, b, 1.0); }
  friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) { return combine(a, b, -1.0); }

  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
    check_same_space(a, b);
    OperatorMatrix out(a.space_, a.shift_ + b.shift_);
    const auto& sp = *a.space_;
    for (int N = 0; N <= sp.n_max(); ++N) {
      const int mid = N + b.shift_;
      const int top = mid + a.shift_;
      if (sp.empty_sector(N) || sp.empty_sector(top) || !sp.available(top)) continue;
      if (!b.defined(N) || !a.defined(mid)) continue;
      if (sp.empty_sector(mid)) {
        out.blocks_[N] = SpMat(sp.dim(top), sp.dim(N));
      } else {
        out.blocks_[N] = (a.block(mid) * b.block(N)).pruned();
      }
    }
    return out;
  }

  /// Largest entry modulus over the stored blocks.
  double max_abs() const {
    double m = 0.0;
    for (const auto& [N, b] : blocks_)
      for (int k = 0; k < b.outerSize(); ++k)
        for (SpMat::InnerIterator it(b, k); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
  }

private:
  static void check_same_space(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.space_ != b.space_) throw InvalidArgument("operators live on different Fock spaces");
  }

  static OperatorMatrix combine(const OperatorMatrix& a, const OperatorMatrix& b, double sign) {
    check_same_space(a, b);
    if (a.shift_ != b.shift_) throw InvalidArgument("cannot add operators with different particle-number shifts");
    OperatorMatrix out(a.space_, a.shift_);
    const auto& sp = *a.space_;
    for (int N = 0; N <= sp.n_max(); ++N) {
      if (sp.empty_sector(N) || sp.empty_sector(N + a.shift_) || !sp.available(N + a.shift_)) continue;
      if (!a.defined(N) || !b.defined(N)) continue;
      out.blocks_[N] = a.block(N) + sign * b.block(N);
    }
    return out;
  }

  FockSpacePtr space_;
  int shift_ = 0;
  std::map<int, SpMat> blocks_;
};

/// Commutator AB - BA, or the anticommutator AB + BA when `anti`.
inline OperatorMatrix graded_commutator(const OperatorMatrix& a, const OperatorMatrix& b, bool anti) {
  return anti ? a * b + b * a : a * b - b * a;
}

struct Deviation {
  double max_abs = 0.0;
  double relative = 0.0;
  int sectors = 0;
};

/// max|A-B| over the common nonempty domain, and the same divided by
/// max(1, max|A|, max|B|).
inline Deviation deviation(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.shift() != b.shift()) throw InvalidArgument("cannot compare operators with different shifts");
  Deviation d;
  double scale = 1.0;
  const auto& sp = *a.space();
  for (int N = 0; N <= sp.n_max(); ++N) {
    if (sp.empty_sector(N) || sp.empty_sector(N + a.shift()) || !sp.available(N + a.shift())) continue;
    if (!a.defined(N) || !b.defined(N)) continue;
    const SpMat A = a.block(N), B = b.block(N);
    const SpMat D = A - B;
    for (const SpMat* m : {&A, &B, &D}) {
      double mx = 0.0;
      for (int k = 0; k < m->outerSize(); ++k)
        for (SpMat::InnerIterator it(*m, k); it; ++it) mx = std::max(mx, std::abs(it.value()));
      if (m == &D) d.max_abs = std::max(d.max_abs, mx);
      else scale = std::max(scale, mx);
    }
    ++d.sectors;
  }
  d.relative = d.max_abs / scale;
  return d;
}

/// Dense copy of the block acting on sector N.
inline Eigen::MatrixXcd dense_block(const OperatorMatrix& op, int N) { return Eigen::MatrixXcd(op.block(N)); }

/// A ladder operator acting on one mode.
struct Ladder {
  int mode = 0;
  bool dagger = false;
};

namespace detail {

// Applies one ladder operator in place; returns the amplitude (0 when the
// state is annihilated). Fermion signs count occupied modes before `mode`.
inline double apply_ladder(Statistics stat, Occupation& occ, const Ladder& op) {
  int& n = occ[op.mode];
  if (stat == Statistics::boson) {
    if (op.dagger) return std::sqrt(static_cast<double>(++n));
    if (n == 0) return 0.0;
    return std::sqrt(static_cast<double>(n--));
  }
  if (op.dagger == (n == 1)) return 0.0;
  int before = 0;
  for (int k = 0; k < op.mode; ++k) before += occ[k];
  n = op.dagger ? 1 : 0;
  return (before % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace detail

/// Product of ladder operators; the last element of `word` acts first.
inline OperatorMatrix word_op(const FockSpacePtr& space, const std::vector<Ladder>& word, cplx coeff = 1.0) {
  int shift = 0;
  for (const auto& l : word) {
    if (l.mode < 0 || l.mode >= space->num_modes()) throw InvalidArgument("mode index out of range");
    shift += l.dagger ? 1 : -1;
  }
  // Acting on occupation vectors directly is exact, so only the target
  // sector has to exist in the truncated space.
  OperatorMatrix op(space, shift);
  const auto& sp = *space;
  for (int N = 0; N <= sp.n_max(); ++N) {
    if (sp.empty_sector(N) || sp.empty_sector(N + shift) || !sp.available(N + shift)) continue;
    const auto& src = sp.sector(N);
    const auto& dst = sp.sector(N + shift);
    std::vector<Eigen::Triplet<cplx>> trip;
    for (int i = 0; i < src.size(); ++i) {
      Occupation occ = src.state(i);
      double amp = 1.0;
      for (auto it = word.rbegin(); it != word.rend() && amp != 0.0; ++it)
        amp *= detail::apply_ladder(sp.stat(), occ, *it);
      if (amp == 0.0) continue;
      const int r = dst.find(occ);
      if (r < 0) throw std::logic_error("ladder word produced a state outside the target basis");
      trip.emplace_back(r, i, coeff * amp);
    }
    SpMat m(dst.size(), src.size());
    m.setFromTriplets(trip.begin(), trip.end());
    op.set_block(N, std::move(m));
  }
  return op;
}

/// Creation and annihilation operators of one mode.
inline std::pair<OperatorMatrix, OperatorMatrix> mode_ops(const FockSpacePtr& space, int level, HalfInt m) {
  const int idx = space->mode_index(level, m);
  return {word_op(space, {{idx, true}}), word_op(space, {{idx, false}})};
}

/// Total number operator.
inline OperatorMatrix number_op(const FockSpacePtr& space) {
  OperatorMatrix op(space, 0);
  const auto& sp = *space;
  for (int N = 0; N <= sp.n_max(); ++N) {
    SpMat id(sp.dim(N), sp.dim(N));
    id.setIdentity();
    op.set_block(N, cplx(N, 0.0) * id);
  }
  return op;
}

/// Number operator of one level.
inline OperatorMatrix level_number_op(const FockSpacePtr& space, int level) {
  OperatorMatrix op(space, 0);
  const auto& sp = *space;
  int first = 0;
  for (int k = 0; k < level; ++k) first += sp.system().levels[k].degeneracy();
  const int last = first + sp.system().levels[level].degeneracy();
  for (int N = 0; N <= sp.n_max(); ++N) {
    const auto& b = sp.sector(N);
    std::vector<Eigen::Triplet<cplx>> trip;
    for (int i = 0; i < b.size(); ++i) {
      int c = 0;
      for (int k = first; k < last; ++k) c += b.state(i)[k];
      if (c) trip.emplace_back(i, i, cplx(c, 0.0));
    }
    SpMat m(b.size(), b.size());
    m.setFromTriplets(trip.begin(), trip.end());
    op.set_block(N, std::move(m));
  }
  return op;
}

}  // namespace pairalg

#endif
