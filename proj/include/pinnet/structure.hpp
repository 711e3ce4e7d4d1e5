#pragma once

#include <utility>
#include <vector>

#include "pinnet/coupling_matrix.hpp"

namespace pinnet {

/// Strong-connectivity decomposition of the influence graph of a coupling
/// matrix. The directed edge j -> i exists iff a_ij > 0 (node j influences
/// node i); spanning-tree root detection depends on this convention.
struct NetworkStructure {
    /// Node-index sets, one per strongly connected component, listed in a
    /// topological order of the condensation (components with no incoming
    /// edge first).
    std::vector<std::vector<int>> scc_partition;
    /// Edges (from_component, to_component) of the condensation, deduplicated.
    std::vector<std::pair<int, int>> condensation_edges;
    /// Components with no incoming condensation edge.
    std::vector<int> root_components;
    /// Exactly one component.
    bool irreducible = false;
    /// Exactly one root component; equivalently some node reaches all others.
    bool has_spanning_tree = false;
    /// Node ordering putting the matrix into block lower-triangular
    /// (Frobenius) form: node i of the permuted matrix is node
    /// frobenius_permutation[i] of the original.
    std::vector<int> frobenius_permutation;

    int component_of(int node) const;
};

NetworkStructure analyze_structure(const CouplingMatrix& A);

/// Adds a master node (index 0) holding the target trajectory and an edge of
/// weight eps from it to `pinned` (0-based index into A); all original nodes
/// shift up by one. The result has a spanning tree rooted at node 0 whenever
/// `pinned` reaches every node of A.
CouplingMatrix augment_master_slave(const CouplingMatrix& A, double eps, int pinned);

}  // namespace pinnet
