#pragma once

#include <Eigen/Dense>
#include <vector>

namespace pinnet {

/// Zero-row-sum coupling matrix with nonnegative off-diagonal weights.
///
/// Entry a_ij (i != j) is the weight of the directed influence of node j on
/// node i, i.e. a_ij > 0 means there is an edge j -> i. The diagonal is always
/// recomputed as the negative off-diagonal row sum, never taken from input.
/// Off-diagonal entries are stored per row, so iterating the in-neighbours of
/// a node is cheap on sparse networks.
class CouplingMatrix {
public:
    struct Entry {
        int col;
        double weight;
    };

    /// Builds the coupling matrix from a nonnegative weighted adjacency
    /// matrix. The diagonal of W is ignored and replaced by the negative
    /// off-diagonal row sums.
    static CouplingMatrix from_weighted_adjacency(const Eigen::MatrixXd& W);

    /// Builds from off-diagonal triplets (i, j, w), w >= 0, 0-based indices.
    static CouplingMatrix from_triplets(
        int m, const std::vector<std::tuple<int, int, double>>& triplets);

    int size() const { return m_; }

    /// Off-diagonal entries of row i, sorted by column.
    const std::vector<Entry>& row(int i) const { return rows_[i]; }

    double diagonal(int i) const { return diag_[i]; }

    /// Entry lookup, O(log deg) off the diagonal.
    double entry(int i, int j) const;

    int nonzero_count() const;

    Eigen::MatrixXd dense() const;

    bool is_symmetric(double rel_tol = 1e-9) const;

    double max_abs_diagonal() const;

    double max_abs_entry() const;

    /// Relabels nodes: node i of the result is node perm[i] of this matrix.
    CouplingMatrix permuted(const std::vector<int>& perm) const;

private:
    CouplingMatrix() = default;
    void finalize_diagonal();

    int m_ = 0;
    std::vector<std::vector<Entry>> rows_;
    Eigen::VectorXd diag_;
};

}  // namespace pinnet
