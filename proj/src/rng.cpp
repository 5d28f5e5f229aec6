#include "pedsim/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pedsim {

std::uint64_t Rng::next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double Rng::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::gaussian(double sigma) {
    if (sigma < 0.0) {
        throw std::invalid_argument("gaussian: sigma must be >= 0");
    }
    // u1 in (0, 1] so the log stays finite; u2 in [0, 1).
    const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    if (sigma == 0.0) {
        return 0.0;
    }
    const double r = std::sqrt(-2.0 * std::log(u1));
    return sigma * r * std::cos(2.0 * std::numbers::pi * u2);
}

double draw_gaussian(Rng& rng, double sigma) {
    return rng.gaussian(sigma);
}

}  // namespace pedsim
