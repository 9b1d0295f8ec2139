#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "cheblab/common.hpp"

namespace cheblab {

// Discretely orthonormal polynomial basis on a node set, built by the Arnoldi
// recurrence z*b_k = sum_i H(i,k) b_i with modified Gram-Schmidt and one
// reorthogonalization pass. Columns stay O(1) at every degree, so monic
// normalization factors are carried in log space and never overflow. The
// Hessenberg matrix is real for conjugate-symmetric node sets (the only kind
// in scope); off-node evaluation replays the stored recurrence.
class ArnoldiBasis {
public:
    ArnoldiBasis(const Eigen::VectorXcd& nodes, int n) : z_(nodes), n_(n) {
        const Eigen::Index J = nodes.size();
        if (J <= n)
            fail("chebyshev", "arnoldi_basis",
                 "need more nodes than the requested degree");
        B_.resize(J, n + 1);
        H_ = Eigen::MatrixXd::Zero(n + 2, n + 1);
        log_lead_.resize(n + 1);
        const double inv_sqrtJ = 1.0 / std::sqrt(static_cast<double>(J));
        B_.col(0).setConstant(cplx(inv_sqrtJ, 0.0));
        log_lead_(0) = std::log(inv_sqrtJ);
        for (int k = 0; k < n; ++k) {
            Eigen::VectorXcd w = z_.cwiseProduct(B_.col(k));
            for (int pass = 0; pass < 2; ++pass) {
                for (int i = 0; i <= k; ++i) {
                    double s = B_.col(i).dot(w).real();
                    H_(i, k) += s;
                    w -= s * B_.col(i);
                }
            }
            double nrm = w.norm();
            if (!(nrm > 0.0))
                fail("chebyshev", "arnoldi_basis",
                     "basis breakdown at degree " + std::to_string(k + 1) +
                         " (degenerate node set)");
            H_(k + 1, k) = nrm;
            B_.col(k + 1) = w / nrm;
            log_lead_(k + 1) = log_lead_(k) - std::log(nrm);
        }
    }

    int degree() const { return n_; }
    const Eigen::MatrixXcd& columns() const { return B_; }
    const Eigen::VectorXcd& nodes() const { return z_; }

    // log of the factor turning b_n + sum_k y_k b_k into a monic polynomial
    double log_gamma() const { return -log_lead_(n_); }

    // basis values at arbitrary points via the stored recurrence
    Eigen::MatrixXcd eval(const Eigen::VectorXcd& pts) const {
        const Eigen::Index P = pts.size();
        Eigen::MatrixXcd V(P, n_ + 1);
        V.col(0).setConstant(cplx(1.0 / std::sqrt(static_cast<double>(z_.size())), 0.0));
        for (int k = 0; k < n_; ++k) {
            Eigen::VectorXcd w = pts.cwiseProduct(V.col(k));
            for (int i = 0; i <= k; ++i) w -= H_(i, k) * V.col(i);
            V.col(k + 1) = w / H_(k + 1, k);
        }
        return V;
    }

private:
    Eigen::VectorXcd z_;
    int n_;
    Eigen::MatrixXcd B_;
    Eigen::MatrixXd H_;
    Eigen::VectorXd log_lead_;
};

} // namespace cheblab
