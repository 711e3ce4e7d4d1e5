#pragma once

#include <cstdint>

#include "pinnet/coupling_matrix.hpp"

namespace pinnet {

/// Parameters for the network generators. `small-world` is a Watts-Strogatz
/// ring lattice with k neighbours per side, rewired with probability p_rewire
/// and symmetrized; `random-sparse` fills entries (or unordered pairs when
/// symmetric) independently with probability `density`. Edge weights are
/// i.i.d. uniform in [weight_low, weight_high).
struct GeneratorConfig {
    enum class Kind { SmallWorld, RandomSparse, Explicit };

    Kind kind = Kind::SmallWorld;
    int m = 0;
    int k = 3;                // ring-lattice neighbours per side
    double p_rewire = 0.1;
    double density = 0.2;     // random-sparse nonzero fraction
    bool symmetric = true;
    double weight_low = 0.0;
    double weight_high = 1.0;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument on any violated bound.
    void validate() const;
};

/// Deterministic function of the config (including its seed).
CouplingMatrix generate(const GeneratorConfig& config);

}  // namespace pinnet
