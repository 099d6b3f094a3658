#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qrpl {

typedef std::complex<double> cxd;
typedef Eigen::Matrix<cxd, Eigen::Dynamic, 1> CVec;
typedef Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic> CMat;

// Default tolerances. Orthonormality and unitarity are checked against
// kEpsUnitary; state comparisons default to kEpsState unless the caller
// passes an explicit tolerance.
inline constexpr double kEpsUnitary = 1e-9;
inline constexpr double kEpsState = 1e-9;

// Hard ceiling on the number of amplitudes a program may declare.
inline constexpr long long kDefaultAmplitudeCap = 1LL << 20;

}  // namespace qrpl
