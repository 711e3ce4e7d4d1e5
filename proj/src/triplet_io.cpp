#include "pinnet/triplet_io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pinnet {

void save_triplets(const CouplingMatrix& A, std::ostream& out) {
    out << A.size() << ' ' << A.nonzero_count() << '\n';
    out << std::setprecision(17);
    for (int i = 0; i < A.size(); ++i)
        for (const auto& e : A.row(i)) out << i << ' ' << e.col << ' ' << e.weight << '\n';
}

void save_triplets(const CouplingMatrix& A, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    save_triplets(A, f);
    if (!f) throw std::runtime_error("write failed: " + path);
}

CouplingMatrix load_triplets(std::istream& in) {
    int m = 0, nnz = 0;
    if (!(in >> m >> nnz)) throw std::runtime_error("triplet file: bad header");
    std::vector<std::tuple<int, int, double>> triplets;
    triplets.reserve(nnz);
    for (int k = 0; k < nnz; ++k) {
        int i, j;
        double w;
        if (!(in >> i >> j >> w))
            throw std::runtime_error("triplet file: truncated at entry " +
                                     std::to_string(k));
        triplets.emplace_back(i, j, w);
    }
    return CouplingMatrix::from_triplets(m, triplets);
}

CouplingMatrix load_triplets(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open: " + path);
    return load_triplets(f);
}

}  // namespace pinnet
