#include "pinnet/generator.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "pinnet/rng.hpp"

namespace pinnet {

void GeneratorConfig::validate() const {
    if (m < 1) throw std::invalid_argument("generator: m must be >= 1");
    if (weight_low < 0) throw std::invalid_argument("generator: weight_low must be >= 0");
    if (!(weight_low < weight_high))
        throw std::invalid_argument("generator: weight_low must be < weight_high");
    if (kind == Kind::SmallWorld) {
        if (k < 1 || 2 * k >= m)
            throw std::invalid_argument("generator: small-world needs 1 <= k < m/2");
        if (p_rewire < 0 || p_rewire > 1)
            throw std::invalid_argument("generator: p_rewire must be in [0,1]");
    } else if (kind == Kind::RandomSparse) {
        if (!(density > 0 && density <= 1))
            throw std::invalid_argument("generator: density must be in (0,1]");
    } else {
        throw std::invalid_argument("generator: explicit kind has no generator; load a matrix file");
    }
}

namespace {

CouplingMatrix generate_small_world(const GeneratorConfig& cfg, Rng& rng) {
    const int m = cfg.m;
    std::set<std::pair<int, int>> edges;  // unordered, stored as (min,max)
    auto key = [](int a, int b) {
        return std::make_pair(std::min(a, b), std::max(a, b));
    };
    for (int i = 0; i < m; ++i)
        for (int d = 1; d <= cfg.k; ++d) edges.insert(key(i, (i + d) % m));

    // Rewire in a fixed scan order so the result is a pure function of seed.
    for (int i = 0; i < m; ++i) {
        for (int d = 1; d <= cfg.k; ++d) {
            const int j = (i + d) % m;
            if (rng.uniform() >= cfg.p_rewire) continue;
            if (edges.count(key(i, j)) == 0) continue;  // already rewired away
            int target = -1;
            for (int attempt = 0; attempt < 16 * m; ++attempt) {
                const int t = static_cast<int>(rng.below(m));
                if (t != i && edges.count(key(i, t)) == 0) {
                    target = t;
                    break;
                }
            }
            if (target < 0) continue;  // node saturated, keep the lattice edge
            edges.erase(key(i, j));
            edges.insert(key(i, target));
        }
    }

    std::vector<std::tuple<int, int, double>> triplets;
    triplets.reserve(2 * edges.size());
    for (const auto& [a, b] : edges) {
        const double w = rng.uniform(cfg.weight_low, cfg.weight_high);
        triplets.emplace_back(a, b, w);
        triplets.emplace_back(b, a, w);
    }
    return CouplingMatrix::from_triplets(m, triplets);
}

CouplingMatrix generate_random_sparse(const GeneratorConfig& cfg, Rng& rng) {
    const int m = cfg.m;
    std::vector<std::tuple<int, int, double>> triplets;
    if (cfg.symmetric) {
        for (int i = 0; i < m; ++i) {
            for (int j = i + 1; j < m; ++j) {
                if (rng.uniform() >= cfg.density) continue;
                const double w = rng.uniform(cfg.weight_low, cfg.weight_high);
                triplets.emplace_back(i, j, w);
                triplets.emplace_back(j, i, w);
            }
        }
    } else {
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                if (i == j) continue;
                if (rng.uniform() >= cfg.density) continue;
                triplets.emplace_back(i, j, rng.uniform(cfg.weight_low, cfg.weight_high));
            }
        }
    }
    return CouplingMatrix::from_triplets(m, triplets);
}

}  // namespace

CouplingMatrix generate(const GeneratorConfig& config) {
    config.validate();
    Rng rng(config.seed);
    if (config.kind == GeneratorConfig::Kind::SmallWorld)
        return generate_small_world(config, rng);
    return generate_random_sparse(config, rng);
}

}  // namespace pinnet
