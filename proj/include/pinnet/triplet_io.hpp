#pragma once

#include <iosfwd>
#include <string>

#include "pinnet/coupling_matrix.hpp"

namespace pinnet {

/// Plain-text sparse triplet format: header line "m nnz", then one
/// "i j weight" line per off-diagonal nonzero (0-based indices). The diagonal
/// is reconstructed on load.
void save_triplets(const CouplingMatrix& A, std::ostream& out);
void save_triplets(const CouplingMatrix& A, const std::string& path);

CouplingMatrix load_triplets(std::istream& in);
CouplingMatrix load_triplets(const std::string& path);

}  // namespace pinnet
