#pragma once

#include <string>
#include <vector>

#include "specdist/matrix.hpp"

namespace specdist {

inline constexpr double tail_tol = 1e-12;

// Truncated oscillator space spanned by |0>..|n_max>.
struct FockSpace {
  int n_max;
  double theta;

  FockSpace(int n_max, double theta);
  std::size_t dim() const { return static_cast<std::size_t>(n_max) + 1; }
};

// Density matrix on some algebra space together with provenance notes.
struct StateFunctional {
  ComplexMatrix rho;
  std::string label;
  std::vector<std::string> warnings;

  // Hermitian, unit trace, positive; throws InvalidArgument otherwise
  void validate() const;
  cplx evaluate(const ComplexMatrix& a) const;  // Tr(rho a)
};

ComplexMatrix lowering(const FockSpace& space);  // b
ComplexMatrix raising(const FockSpace& space);   // b^dagger
ComplexMatrix number_op(const FockSpace& space);
ComplexMatrix projector_P(const FockSpace& space, int n);  // sum_{k<=n} |k><k|, n = -1 gives 0

struct CoherentVector {
  ComplexMatrix vec;    // renormalised after truncation
  double tail_weight;  // probability mass beyond n_max before renormalising
};

CoherentVector coherent_vector(const FockSpace& space, cplx z);
StateFunctional coherent_state(const FockSpace& space, cplx z);

// exp(-conj(z) b + z b^dagger)
ComplexMatrix displacement(const FockSpace& space, cplx z);

// normalised (b^dagger - conj(z))^k |z>
ComplexMatrix translated_basis(const FockSpace& space, cplx z, int k);

// Unitary whose k-th column is |k~> (Gram-Schmidt of the translated basis).
// Conjugating by it moves the frame anchored at z back to the origin.
ComplexMatrix translation_frame(const FockSpace& space, cplx z);

}  // namespace specdist
