#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace robstat {

struct OlsFit {
    Eigen::VectorXd coef;
    Eigen::VectorXd residuals;
    double ssr = 0.0;
};

/// Least squares via column-pivoted Householder QR with a rank check.
/// Throws on (numerically) rank-deficient designs.
inline OlsFit profile_ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    if (X.rows() != y.size()) throw std::invalid_argument("profile_ols: row count mismatch");
    if (X.rows() <= X.cols()) throw std::invalid_argument("profile_ols: need more rows than columns");
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(1e-10);
    if (qr.rank() < X.cols()) throw std::runtime_error("profile_ols: rank-deficient design");
    OlsFit fit;
    fit.coef = qr.solve(y);
    fit.residuals = y - X * fit.coef;
    fit.ssr = fit.residuals.squaredNorm();
    return fit;
}

namespace detail {

/// Residual-space view of a regression with a fixed block: the fixed columns
/// are removed once, and candidate columns are evaluated in the projected
/// space.  Used by the grid search to avoid refactoring the polynomial block
/// for every candidate.
class ProjectedSolver {
  public:
    ProjectedSolver(const Eigen::MatrixXd& fixed, const Eigen::VectorXd& y) : fixed_(fixed) {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(fixed);
        q_ = qr.householderQ() * Eigen::MatrixXd::Identity(fixed.rows(), fixed.cols());
        set_response(y);
    }

    void set_response(const Eigen::VectorXd& y) {
        y_proj_ = y - q_ * (q_.transpose() * y);
        base_ssr_ = y_proj_.squaredNorm();
    }

    Eigen::VectorXd project(const Eigen::VectorXd& col) const {
        return col - q_ * (q_.transpose() * col);
    }

    double base_ssr() const { return base_ssr_; }
    const Eigen::VectorXd& projected_response() const { return y_proj_; }

    /// SSR after adding the (already projected) candidate columns.  Returns a
    /// negative value when the candidate block is numerically singular.
    double candidate_ssr(const Eigen::MatrixXd& proj_cols) const {
        const int k = static_cast<int>(proj_cols.cols());
        Eigen::MatrixXd gram = proj_cols.transpose() * proj_cols;
        Eigen::VectorXd rhs = proj_cols.transpose() * y_proj_;
        Eigen::LLT<Eigen::MatrixXd> llt(gram);
        if (llt.info() != Eigen::Success) return -1.0;
        // Reject near-singular blocks that Cholesky happens to survive.
        double max_diag = 0.0;
        for (int i = 0; i < k; ++i) max_diag = std::max(max_diag, gram(i, i));
        for (int i = 0; i < k; ++i)
            if (llt.matrixL()(i, i) * llt.matrixL()(i, i) < 1e-10 * std::max(max_diag, 1e-300))
                return -1.0;
        const Eigen::VectorXd b = llt.solve(rhs);
        double ssr = base_ssr_ - rhs.dot(b);
        return ssr < 0.0 ? 0.0 : ssr;
    }

  private:
    Eigen::MatrixXd fixed_;
    Eigen::MatrixXd q_;  // orthonormal basis of the fixed block
    Eigen::VectorXd y_proj_;
    double base_ssr_ = 0.0;
};

}  // namespace detail

}  // namespace robstat
