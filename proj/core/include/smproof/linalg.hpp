#pragma once

// Floating-point linear algebra used on the approximation side of the proofs
// (approximate inverses, eigen decompositions) plus Eigen <-> interval matrix
// conversions. No rigor is claimed here; rigor enters only through the Y and
// Z bounds.

#include <Eigen/Dense>

#include "smproof/operator.hpp"

namespace smproof {

/// LU-based numerical inverse; throws on singularity to working precision.
Eigen::MatrixXd approx_inverse(const Eigen::MatrixXd& m);
Eigen::MatrixXcd approx_inverse(const Eigen::MatrixXcd& m);

Mat<Interval> to_interval_mat(const Eigen::MatrixXd& m);
Mat<ComplexInterval> to_interval_mat(const Eigen::MatrixXcd& m);
Eigen::MatrixXd mid_mat(const Mat<Interval>& m);
Eigen::MatrixXcd mid_mat(const Mat<ComplexInterval>& m);

} // namespace smproof
