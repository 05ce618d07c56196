// Tabulates the analytic outage probability over link budgets for a fixed
// geometry: how often the accumulated blocker loss eats a given margin.

#include <cstdio>

#include "blockage/model.hpp"

int main() {
    using namespace blockage;

    const GeometryConfig geo(10.0, 0.5, 0.3, 0.4);
    const double zeta = zeta_from_db(-20.0);

    std::printf("%8s", "rho");
    for (const double margin : {-10.0, -25.0, -45.0}) std::printf("  P(loss < %.0f dB)", margin);
    std::printf("\n");
    for (const double rho : {0.05, 0.1, 0.2, 0.4}) {
        const ModelParams params(rho, zeta, geo);
        std::printf("%8.2f", rho);
        for (const double margin : {-10.0, -25.0, -45.0}) {
            std::printf("  %16.6g", outage_probability(params, geo, margin));
        }
        std::printf("\n");
    }
    return 0;
}
