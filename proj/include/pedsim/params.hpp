#pragma once

namespace pedsim {

// Benefit-cost grid model constants. Defaults give roughly 1 m/s free
// walking with 0.5 m cells and a 0.5 s tick.
struct CellularParams {
    double K = 10.0;            // benefit scale
    double alpha_c = 0.7;       // m, distance of peak repulsion
    double beta_c = 0.5;        // repulsion softening, must stay > 0
    double field_radius = 2.5;  // m, repulsion cutoff
    double cell_size = 0.5;     // m
    double tick = 0.5;          // s, grid update interval
};

// Pole-force model constants. Pedestrians and obstacles carry positive
// charges (on Agent/Obstacle); the goal pole is negative.
struct MagneticParams {
    double k_coulomb = 1.0;
    double goal_charge = -100.0;
    double beta_max = 1.3962634015954636;  // rad (80 deg), caps tan(beta)
    double r_min = 0.2;                    // m, inverse-square clamp radius
};

// Relaxation-plus-repulsion model constants. sigma_xi is the per-component
// standard deviation of the additive acceleration fluctuation; 0 keeps the
// model fully deterministic.
struct SocialParams {
    double tau = 0.5;       // s, relaxation time
    double A = 2.0;         // m/s^2, pair repulsion strength
    double B = 0.3;         // m, pair repulsion range
    double sigma_xi = 0.0;  // m/s^2 per component
    double wall_A = 10.0;   // m/s^2, boundary repulsion strength
    double wall_B = 0.2;    // m, boundary repulsion range
};

struct ModelParams {
    CellularParams cellular{};
    MagneticParams magnetic{};
    SocialParams social{};
};

}  // namespace pedsim
