#pragma once

// Hearing matrix and its second eigenvalue.

#include <Eigen/Dense>

#include "opnet/model.hpp"

namespace opnet {

// W = (1-f) I + f D, D the row-normalised adjacency; agents without peers get
// D_ii = 1 so W stays row-stochastic.
Eigen::MatrixXd hearing_matrix(const PeerGraph& graph, double f);

// |lambda_2| of a row-stochastic matrix: the largest eigenvalue modulus once
// one copy of the Perron root 1 is removed. Dense eigendecomposition; throws
// ToleranceFailure when the eigenpairs' residuals exceed 1e-8.
double second_eigenvalue_modulus(const Eigen::MatrixXd& W);

// ceil(log eps / log |lambda_2|), at least 1; |lambda_2| = 0 gives 1.
// Throws NoBound for |lambda_2| >= 1 and std::invalid_argument for eps outside (0,1).
int consensus_time_upper_bound(double lambda2_modulus, double epsilon);
int consensus_time_upper_bound(const Eigen::MatrixXd& W, double epsilon);

}  // namespace opnet
