#pragma once

#include "formcount/enumerate.hpp"
#include "formcount/expansion.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace formcount {

struct RealDensityEstimate {
    double epsilon = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    double estimate = 0;
    double standard_error = 0;
    std::uint64_t hits = 0;
};

// Monte Carlo estimate of the real density: (2eps)^{-Rr} times the volume of
// the xbar in [-1,1]^{ms} whose residuals satisfy |Phi_j - n_j| <= eps for
// every rho, j (realized through d!*Phi with the threshold scaled by d!).
// Deterministic for a fixed (seed, samples, epsilon).
RealDensityEstimate chi_infinity_volume(const ExpandedSystem& es,
                                        const TargetSystem& target, double epsilon,
                                        std::uint64_t samples, std::uint64_t seed,
                                        const RunConfig& cfg = {});

struct OscillatoryIntegral {
    std::complex<double> value{0, 0};   // midpoint rule at `grid` points/axis
    std::complex<double> coarse{0, 0};  // same at floor(grid/2) points/axis
    double refinement_delta = 0;        // |value - coarse|
    int grid = 0;
};

// Tensor-product midpoint-rule approximation of
// v_P(beta) = integral over |xi| <= P of e(F(xi; beta)) dxi.
OscillatoryIntegral v_P_numeric(const ExpandedSystem& es, const TargetSystem& target,
                                const std::vector<double>& beta, double P,
                                int grid_points_per_axis, const RunConfig& cfg = {});

}  // namespace formcount
