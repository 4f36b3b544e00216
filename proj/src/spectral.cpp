#include "opnet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "opnet/errors.hpp"

namespace opnet {

namespace {
constexpr double kCertify = 1e-8;
}

Eigen::MatrixXd hearing_matrix(const PeerGraph& graph, double f) {
    if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("f must lie in [0,1]");
    const auto n = static_cast<Eigen::Index>(graph.size());
    Eigen::MatrixXd W = Eigen::MatrixXd::Identity(n, n) * (1.0 - f);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = graph.row(static_cast<std::size_t>(i));
        if (row.empty()) {
            W(i, i) += f;
            continue;
        }
        const double w = f / static_cast<double>(row.size());
        for (int j : row) W(i, j) += w;
    }
    return W;
}

double second_eigenvalue_modulus(const Eigen::MatrixXd& W) {
    const auto n = W.rows();
    if (n != W.cols()) throw std::invalid_argument("hearing matrix must be square");
    if (n == 0) throw std::invalid_argument("hearing matrix is empty");
    if (n == 1) return 0.0;

    Eigen::EigenSolver<Eigen::MatrixXd> es(W, true);
    if (es.info() != Eigen::Success) throw ToleranceFailure("eigensolver did not converge");
    const auto& vals = es.eigenvalues();
    const auto& vecs = es.eigenvectors();

    const double scale = std::max(1.0, W.cwiseAbs().rowwise().sum().maxCoeff());
    const Eigen::MatrixXcd Wc = W.cast<std::complex<double>>();
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::VectorXcd v = vecs.col(k);
        const double r = (Wc * v - vals[k] * v).norm() / std::max(v.norm(), 1e-300);
        if (r > kCertify * scale) {
            throw ToleranceFailure("eigenpair residual " + std::to_string(r) + " exceeds 1e-8");
        }
    }

    // drop the eigenvalue nearest to 1 once, keep the largest remaining modulus
    Eigen::Index perron = 0;
    double best = std::abs(vals[0] - 1.0);
    for (Eigen::Index k = 1; k < n; ++k) {
        const double d = std::abs(vals[k] - 1.0);
        if (d < best) {
            best = d;
            perron = k;
        }
    }
    double out = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        if (k != perron) out = std::max(out, std::abs(vals[k]));
    }
    // a stochastic matrix has spectral radius 1; anything above is round-off
    return std::min(out, 1.0);
}

int consensus_time_upper_bound(double lambda2_modulus, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0,1)");
    if (!(lambda2_modulus >= 0.0)) throw std::invalid_argument("eigenvalue modulus must be nonnegative");
    if (lambda2_modulus >= 1.0) throw NoBound("|lambda_2| >= 1, no consensus-time bound");
    if (lambda2_modulus == 0.0) return 1;
    const double t = std::ceil(std::log(epsilon) / std::log(lambda2_modulus));
    return std::max(1, static_cast<int>(t));
}

int consensus_time_upper_bound(const Eigen::MatrixXd& W, double epsilon) {
    return consensus_time_upper_bound(second_eigenvalue_modulus(W), epsilon);
}

}  // namespace opnet
