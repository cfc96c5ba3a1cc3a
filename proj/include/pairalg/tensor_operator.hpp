#ifndef PAIRALG_TENSOR_OPERATOR_HPP
#define PAIRALG_TENSOR_OPERATOR_HPP

// Spherical tensor operators on a Fock space and their coupled products and
// graded coupled commutators.

#include <string>
#include <vector>

#include "pairalg/fock.hpp"
#include "pairalg/half_int.hpp"
#include "pairalg/wigner.hpp"

namespace pairalg {

/// Components T_gamma for gamma = -g..g. Operators of half-integral rank are
/// fermionic (odd), the rest bosonic.
class TensorOperator {
public:
  TensorOperator() = default;
  TensorOperator(HalfInt rank, std::vector<OperatorMatrix> components)
      : rank_(rank), comps_(std::move(components)) {
    if (rank.twice() < 0) throw InvalidArgument("negative tensor rank");
    if (static_cast<int>(comps_.size()) != multiplicity(rank))
      throw InvalidArgument("tensor of rank " + rank.str() + " needs " + std::to_string(multiplicity(rank)) +
                            " components");
  }

  HalfInt rank() const { return rank_; }
  bool odd() const { return !rank_.is_integer(); }
  int shift() const { return comps_.front().shift(); }
  const FockSpacePtr& space() const { return comps_.front().space(); }

  const OperatorMatrix& operator[](HalfInt gamma) const { return comps_.at(index(gamma)); }
  OperatorMatrix& operator[](HalfInt gamma) { return comps_.at(index(gamma)); }
  const std::vector<OperatorMatrix>& components() const { return comps_; }

  TensorOperator& operator*=(cplx s) {
    for (auto& c : comps_) c *= s;
    return *this;
  }
  friend TensorOperator operator*(cplx s, TensorOperator t) { return t *= s; }
  friend TensorOperator operator*(double s, TensorOperator t) { return t *= cplx(s, 0.0); }

  friend TensorOperator operator+(const TensorOperator& a, const TensorOperator& b) {
    check_rank(a, b);
    std::vector<OperatorMatrix> c;
    for (std::size_t i = 0; i < a.comps_.size(); ++i) c.push_back(a.comps_[i] + b.comps_[i]);
    return {a.rank_, std::move(c)};
  }
  friend TensorOperator operator-(const TensorOperator& a, const TensorOperator& b) {
    check_rank(a, b);
    std::vector<OperatorMatrix> c;
    for (std::size_t i = 0; i < a.comps_.size(); ++i) c.push_back(a.comps_[i] - b.comps_[i]);
    return {a.rank_, std::move(c)};
  }

  static TensorOperator zero(const FockSpacePtr& space, HalfInt rank, int shift) {
    std::vector<OperatorMatrix> c(multiplicity(rank), OperatorMatrix::zero(space, shift));
    return {rank, std::move(c)};
  }

private:
  int index(HalfInt gamma) const {
    if (!valid_projection(rank_, gamma)) throw InvalidArgument("component " + gamma.str() + " invalid for rank " + rank_.str());
    return (gamma.twice() + rank_.twice()) / 2;
  }
  static void check_rank(const TensorOperator& a, const TensorOperator& b) {
    if (a.rank_ != b.rank_) throw InvalidArgument("tensor ranks differ");
  }

  HalfInt rank_;
  std::vector<OperatorMatrix> comps_;
};

/// -1 when both operators are fermionic (anticommutator), +1 otherwise.
inline int grading(const TensorOperator& a, const TensorOperator& b) { return (a.odd() && b.odd()) ? -1 : 1; }

inline int grading(HalfInt a, HalfInt b) { return (!a.is_integer() && !b.is_integer()) ? -1 : 1; }

/// Time-reversed tensor ~T_gamma = (-1)^(g-gamma) T_{-gamma}.
inline TensorOperator tilde(const TensorOperator& t) {
  const HalfInt g = t.rank();
  std::vector<OperatorMatrix> c;
  for (int tw = -g.twice(); tw <= g.twice(); tw += 2) {
    const HalfInt gamma = HalfInt::from_twice(tw);
    c.push_back(static_cast<double>(phase(g - gamma)) * t[-gamma]);
  }
  return {g, std::move(c)};
}

namespace detail {

template <class Pair>
TensorOperator couple(const TensorOperator& a, const TensorOperator& b, HalfInt c, Pair pair) {
  if (!triangle(a.rank(), b.rank(), c))
    throw InvalidArgument("ranks " + a.rank().str() + ", " + b.rank().str() + " cannot couple to " + c.str());
  std::vector<OperatorMatrix> comps;
  for (int tg = -c.twice(); tg <= c.twice(); tg += 2) {
    const HalfInt gamma = HalfInt::from_twice(tg);
    OperatorMatrix sum = OperatorMatrix::zero(a.space(), a.shift() + b.shift());
    for (int ta = -a.rank().twice(); ta <= a.rank().twice(); ta += 2) {
      const HalfInt alpha = HalfInt::from_twice(ta);
      const HalfInt beta = gamma - alpha;
      if (!valid_projection(b.rank(), beta)) continue;
      const double w = cg(a.rank(), alpha, b.rank(), beta, c, gamma);
      if (w == 0.0) continue;
      sum = sum + w * pair(a[alpha], b[beta]);
    }
    comps.push_back(std::move(sum));
  }
  return {c, std::move(comps)};
}

}  // namespace detail

/// (A x B)^c_gamma = sum <a alpha b beta | c gamma> A_alpha B_beta.
inline TensorOperator coupled_product(const TensorOperator& a, const TensorOperator& b, HalfInt c) {
  return detail::couple(a, b, c, [](const OperatorMatrix& x, const OperatorMatrix& y) { return x * y; });
}

/// [A, B]^c_gamma = sum <a alpha b beta | c gamma> [A_alpha, B_beta], graded.
inline TensorOperator coupled_commutator(const TensorOperator& a, const TensorOperator& b, HalfInt c) {
  const bool anti = grading(a, b) < 0;
  return detail::couple(a, b, c, [anti](const OperatorMatrix& x, const OperatorMatrix& y) {
    return graded_commutator(x, y, anti);
  });
}

/// Worst relative deviation over components.
inline Deviation deviation(const TensorOperator& a, const TensorOperator& b) {
  if (a.rank() != b.rank()) throw InvalidArgument("tensor ranks differ");
  Deviation worst;
  worst.sectors = -1;
  for (std::size_t i = 0; i < a.components().size(); ++i) {
    const auto d = deviation(a.components()[i], b.components()[i]);
    worst.max_abs = std::max(worst.max_abs, d.max_abs);
    worst.relative = std::max(worst.relative, d.relative);
    worst.sectors = worst.sectors < 0 ? d.sectors : std::min(worst.sectors, d.sectors);
  }
  return worst;
}

}  // namespace pairalg

#endif
