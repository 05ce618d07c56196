// Prints the closed-form and simulated mean attenuation for a handful of
// blocker densities at one geometry. Minimal library walkthrough.

#include <cstdio>

#include "blockage/model.hpp"
#include "blockage/sim.hpp"

int main() {
    using namespace blockage;

    const GeometryConfig geo(10.0, 0.5, 0.3, 0.4);
    const double zeta = zeta_from_db(-20.0);

    std::printf("%8s %14s %14s %14s\n", "rho", "theory_db", "exact_db", "sim_db");
    for (const double rho : {0.01, 0.05, 0.1, 0.2, 0.4}) {
        const ModelParams params(rho, zeta, geo);
        const sim::TrialPlan plan{20'000, 7, 4096};
        const sim::AttenuationEstimate est = sim::estimate_attenuation(params, geo, plan);
        std::printf("%8.3f %14.4f %14.4f %14.4f\n", rho,
                    to_db(expected_attenuation_paper(params, geo)),
                    to_db(expected_attenuation_exact(params, geo)), est.mean_db);
    }
    return 0;
}
