#include "pinnet/coupling_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pinnet {

CouplingMatrix CouplingMatrix::from_weighted_adjacency(const Eigen::MatrixXd& W) {
    if (W.rows() != W.cols())
        throw std::invalid_argument("coupling matrix input must be square, got " +
                                    std::to_string(W.rows()) + "x" +
                                    std::to_string(W.cols()));
    if (W.rows() < 1) throw std::invalid_argument("coupling matrix needs m >= 1");

    CouplingMatrix A;
    A.m_ = static_cast<int>(W.rows());
    A.rows_.resize(A.m_);
    for (int i = 0; i < A.m_; ++i) {
        for (int j = 0; j < A.m_; ++j) {
            if (i == j) continue;
            const double w = W(i, j);
            if (w < 0)
                throw std::invalid_argument("negative off-diagonal weight at (" +
                                            std::to_string(i) + "," +
                                            std::to_string(j) + ")");
            if (w != 0) A.rows_[i].push_back({j, w});
        }
    }
    A.finalize_diagonal();
    return A;
}

CouplingMatrix CouplingMatrix::from_triplets(
    int m, const std::vector<std::tuple<int, int, double>>& triplets) {
    if (m < 1) throw std::invalid_argument("coupling matrix needs m >= 1");
    CouplingMatrix A;
    A.m_ = m;
    A.rows_.resize(m);
    for (const auto& [i, j, w] : triplets) {
        if (i < 0 || i >= m || j < 0 || j >= m)
            throw std::invalid_argument("triplet index out of range: (" +
                                        std::to_string(i) + "," + std::to_string(j) +
                                        ")");
        if (i == j) continue;
        if (w < 0)
            throw std::invalid_argument("negative off-diagonal weight at (" +
                                        std::to_string(i) + "," + std::to_string(j) +
                                        ")");
        if (w != 0) A.rows_[i].push_back({j, w});
    }
    for (auto& row : A.rows_)
        std::sort(row.begin(), row.end(),
                  [](const Entry& a, const Entry& b) { return a.col < b.col; });
    A.finalize_diagonal();
    return A;
}

void CouplingMatrix::finalize_diagonal() {
    diag_ = Eigen::VectorXd::Zero(m_);
    for (int i = 0; i < m_; ++i) {
        double sum = 0;
        for (const Entry& e : rows_[i]) sum += e.weight;
        diag_[i] = -sum;
    }
}

double CouplingMatrix::entry(int i, int j) const {
    if (i == j) return diag_[i];
    const auto& row = rows_[i];
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const Entry& e, int col) { return e.col < col; });
    if (it != row.end() && it->col == j) return it->weight;
    return 0.0;
}

int CouplingMatrix::nonzero_count() const {
    int nnz = 0;
    for (const auto& row : rows_) nnz += static_cast<int>(row.size());
    return nnz;
}

Eigen::MatrixXd CouplingMatrix::dense() const {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m_, m_);
    for (int i = 0; i < m_; ++i) {
        M(i, i) = diag_[i];
        for (const Entry& e : rows_[i]) M(i, e.col) = e.weight;
    }
    return M;
}

bool CouplingMatrix::is_symmetric(double rel_tol) const {
    const double scale = std::max(max_abs_entry(), 1e-300);
    for (int i = 0; i < m_; ++i)
        for (const Entry& e : rows_[i])
            if (std::abs(e.weight - entry(e.col, i)) > rel_tol * scale) return false;
    return true;
}

double CouplingMatrix::max_abs_diagonal() const {
    return diag_.cwiseAbs().maxCoeff();
}

double CouplingMatrix::max_abs_entry() const {
    double mx = diag_.cwiseAbs().maxCoeff();
    for (const auto& row : rows_)
        for (const Entry& e : row) mx = std::max(mx, std::abs(e.weight));
    return mx;
}

CouplingMatrix CouplingMatrix::permuted(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != m_)
        throw std::invalid_argument("permutation size mismatch");
    std::vector<int> inv(m_, -1);
    for (int i = 0; i < m_; ++i) {
        if (perm[i] < 0 || perm[i] >= m_ || inv[perm[i]] != -1)
            throw std::invalid_argument("not a permutation");
        inv[perm[i]] = i;
    }
    std::vector<std::tuple<int, int, double>> triplets;
    triplets.reserve(nonzero_count());
    for (int i = 0; i < m_; ++i)
        for (const Entry& e : rows_[i])
            triplets.emplace_back(inv[i], inv[e.col], e.weight);
    return from_triplets(m_, triplets);
}

}  // namespace pinnet
