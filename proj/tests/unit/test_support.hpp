#pragma once

#include <random>

#include "nonfloquet/operator_core.hpp"

namespace nonfloquet::testing {

inline ComplexMatrix random_matrix(Eigen::Index n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  ComplexMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  return a;
}

inline ComplexMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng, double scale = 1.0) {
  const ComplexMatrix a = random_matrix(n, rng, scale);
  return 0.5 * (a + a.adjoint());
}

inline ComplexMatrix pauli_x() {
  ComplexMatrix s(2, 2);
  s << 0.0, 1.0, 1.0, 0.0;
  return s;
}

inline ComplexMatrix pauli_y() {
  ComplexMatrix s(2, 2);
  s << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return s;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix s(2, 2);
  s << 1.0, 0.0, 0.0, -1.0;
  return s;
}

}  // namespace nonfloquet::testing
