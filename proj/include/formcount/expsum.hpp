#pragma once

#include "formcount/archimedean.hpp"
#include "formcount/enumerate.hpp"
#include "formcount/expansion.hpp"
#include "formcount/local.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace formcount {

// A point alpha in [0,1)^{Rr}, optionally anchored at a rational a/q with a
// stored real offset beta: alpha = a/q + beta componentwise.
struct AlphaPoint {
    std::int64_t q = 0;            // 0 = purely real point
    std::vector<std::int64_t> a;   // length R*r when q > 0, reduced mod q
    std::vector<double> beta;      // length R*r, or empty for zero offset

    static AlphaPoint rational(std::vector<std::int64_t> a, std::int64_t q);
    static AlphaPoint real(std::vector<double> alpha);

    bool is_exact_rational() const;
    std::vector<double> components(int rr) const;  // reduced into [0,1)
};

// T(alpha) = sum over xbar in [-P,P]^{ms} of e(F_psi(xbar; alpha)). Rational
// points are evaluated in exact residue arithmetic modulo q*d!; real points
// use double phases with compensated accumulation.
std::complex<double> exponential_sum_T(const ExpandedSystem& es,
                                       const TargetSystem& target,
                                       const AlphaPoint& alpha, std::int64_t P,
                                       const RunConfig& cfg = {});

// Affine function of the flattened coordinates with exact coefficients.
struct AffineForm {
    std::vector<BigInt> linear;  // length ms
    BigInt constant = 0;
};

// Applies the d-1 discrete differences Delta_{j_k, h_k} (shift block j_k by
// h_k, subtract) to the expanded form sum_j E_{rho,j}(xbar), i.e. to
// F^(rho)(x_1 + ... + x_m); the result is affine in xbar and is returned
// exactly. Indices j_k are 1-based blocks.
AffineForm differenced_form(const ExpandedSystem& es, int rho,
                            const std::vector<int>& j_sequence,
                            const std::vector<std::vector<BigInt>>& h_sequence);

// The scaled linear forms d!*B_i with
// d!*Phi(x, h_1,...,h_{d-1}) = sum_i x_i * (d!*B_i)(h_1,...,h_{d-1}).
std::vector<BigInt> bilinear_B(const ExpandedSystem& es, int rho,
                               const std::vector<std::vector<BigInt>>& h_sequence);

struct MajorArcReport {
    std::complex<double> exact{0, 0};   // T(a/q + beta)
    std::complex<double> approx{0, 0};  // q^{-ms} S_q(a) v_P(beta)
    double exact_abs = 0;
    double approx_abs = 0;
    double residual = 0;  // |T - approx|
    GaussSumValue sq;
    OscillatoryIntegral vp;
};

MajorArcReport major_arc_residual(const ExpandedSystem& es, const TargetSystem& target,
                                  const std::vector<std::int64_t>& a, std::int64_t q,
                                  const std::vector<double>& beta, std::int64_t P,
                                  int vp_grid, const RunConfig& cfg = {});

}  // namespace formcount
