#pragma once

#include "imc/side_info.hpp"

namespace imc {

/// Singular value thresholding: soft-threshold the singular values of Z by
/// tau >= 0.  Returns U max(S - tau, 0) V^T.
Matrix svt(const Matrix& Z, double tau);

}  // namespace imc
