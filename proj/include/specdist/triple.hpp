#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "specdist/fock.hpp"
#include "specdist/matrix.hpp"

namespace specdist {

// One product a (x) diag(c1, c2). An absent factor acts as the identity.
struct ElementTerm {
  std::optional<ComplexMatrix> moyal;
  std::optional<std::array<cplx, 2>> internal;
};

// Element of A_M, C^2 or A_M (x) C^2, given as a sum of products and
// optionally compressed by a projector on the Hilbert space after
// representation (P pi(a) P).
class AlgebraElement {
 public:
  static AlgebraElement moyal(ComplexMatrix a);
  static AlgebraElement internal(cplx c1, cplx c2);
  static AlgebraElement product(ComplexMatrix a, cplx c1, cplx c2);
  static AlgebraElement sum(std::vector<ElementTerm> terms);

  AlgebraElement projected(ComplexMatrix proj) const;

  const std::vector<ElementTerm>& terms() const { return terms_; }
  const std::optional<ComplexMatrix>& projector() const { return projector_; }

 private:
  std::vector<ElementTerm> terms_;
  std::optional<ComplexMatrix> projector_;
};

// Which factors the algebra has: moyal_dim = 0 means no Moyal factor.
struct AlgebraShape {
  std::size_t moyal_dim = 0;
  bool internal = false;

  std::size_t dim() const { return (moyal_dim ? moyal_dim : 1) * (internal ? 2 : 1); }
};

struct SpectralTriple {
  AlgebraShape shape;
  ComplexMatrix dirac;
  ComplexMatrix grading;
  // algebra-space matrix -> operator on the Hilbert space
  std::function<ComplexMatrix(const ComplexMatrix&)> rep;
  // 1/2 when the algebra acts twice (spinor doubling), 1 otherwise
  double state_weight = 1.0;
  std::string name;

  std::size_t hilbert_dim() const { return dirac.rows(); }

  // algebra-space matrix of a sum-of-products element
  ComplexMatrix algebra_matrix(const AlgebraElement& a) const;
  // P pi(a) P
  ComplexMatrix represent(const AlgebraElement& a) const;

  // Hermitian Dirac, gamma^2 = 1, {gamma, D} = 0, pi(a) even; throws InvalidArgument
  void validate() const;
};

enum class Method { analytic, oracle, restricted };
std::string to_string(Method m);

struct DistanceReport {
  double value = 0.0;  // +inf when the supremum is unbounded
  std::optional<AlgebraElement> optimal_element;
  std::optional<ComplexMatrix> optimal_operator;  // represented, on the Hilbert space
  double ball_norm = 0.0;
  int truncation_order = 0;
  Method method = Method::analytic;
  std::vector<std::string> warnings;
  // same quantity through an independent route, when one exists
  std::optional<double> cross_check;

  bool is_infinite() const { return std::isinf(value); }
};

inline constexpr double infinite_distance = std::numeric_limits<double>::infinity();
inline constexpr double ball_tol = 1e-8;
inline constexpr double commute_tol = 1e-10;

// ||[D, X]|| for an operator X on the Hilbert space
double ball_norm_of(const SpectralTriple& t, const ComplexMatrix& x);
double ball_norm(const SpectralTriple& t, const AlgebraElement& a);

// weight * Re Tr(pi(rho) X)
double eval_state(const SpectralTriple& t, const StateFunctional& rho, const ComplexMatrix& x);

// rho1(a) - rho2(a), after checking that a sits in the unit ball
DistanceReport distance_from_element(const SpectralTriple& t, const StateFunctional& rho1,
                                     const StateFunctional& rho2, const AlgebraElement& a);

// ||[D, P]||, cheap Frobenius bound first
double commutator_norm(const ComplexMatrix& d, const ComplexMatrix& p);

// Compress to the range of an orthogonal projector commuting with D.
// The restricted algebra is C^2 when the range is 2-dimensional and
// graded, otherwise the compression of the parent representation.
SpectralTriple restrict_triple(const SpectralTriple& t, const ComplexMatrix& proj);

// isometry onto the range of an orthogonal projector
ComplexMatrix range_isometry(const ComplexMatrix& proj);

// conjugate the Dirac operator by 1 (x) diag(e^{-i phi/2}, e^{i phi/2})
SpectralTriple gauge_rotate(const SpectralTriple& t, double phi);

}  // namespace specdist
