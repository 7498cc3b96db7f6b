#pragma once

// Dense kernels in two flavours. The serial ones are the reference the
// OpenMP ones are tested and benchmarked against. Both accumulate every
// output entry in the same order, so results agree to the last bit.

#include "specdist/matrix.hpp"

namespace specdist {

namespace serial {
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint_matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
}  // namespace serial

namespace parallel {
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint_matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

// below this many multiply-adds the pragma stays single-threaded
inline constexpr std::size_t min_parallel_work = 1u << 15;
}  // namespace parallel

}  // namespace specdist
