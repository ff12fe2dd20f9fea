#pragma once

#include "formcount/counting.hpp"
#include "formcount/enumerate.hpp"
#include "formcount/expansion.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace formcount {

struct GaussSumValue {
    std::int64_t q = 1;
    std::vector<std::int64_t> a;  // length R*r, reduced mod q
    std::complex<double> value{1.0, 0.0};
};

struct LocalDensity {
    std::int64_t p = 0;
    int l = 1;
    BigInt gamma = 0;
    BigRat chi = 0;
    std::string method;  // "congruence" or "series"
};

bool is_prime(std::int64_t n);

// sum over residues r of hist[r] * e(r/modulus).
std::complex<double> residue_histogram_value(const std::vector<std::uint64_t>& hist,
                                             std::int64_t modulus);

// Number of xbar mod p^l with E_{rho,j}(xbar) == psi_mu(j) (mod p^l) for all
// rho and j, i.e. F(t.X) == psi coefficientwise mod p^l.
BigInt gamma_congruence(const ExpandedSystem& es, const TargetSystem& target,
                        std::int64_t p, int l, const RunConfig& cfg = {});

// chi = p^{l(Rr-ms)} * Gamma(p^l) as an exact rational.
LocalDensity chi_p_congruence(const ExpandedSystem& es, const TargetSystem& target,
                              std::int64_t p, int l, const RunConfig& cfg = {});

// The phase numerator sum_{rho,j} a_{rho,j} * M(j) * (E_{rho,j}(xbar) -
// psi_mu(j)) as an integer polynomial; the actual phase divides it by
// denom * d!. Weights are taken in rho-major order matching
// flatten_equations.
Poly phase_numerator_poly(const ExpandedSystem& es, const TargetSystem& target,
                          const std::vector<std::int64_t>& a);

// S_q(a) = sum over xbar in {1..q}^{ms} of e(F(xbar; a)/q), with the phase
// realized exactly as an integer residue modulo q*d! before exponentiation.
GaussSumValue gauss_sum(const ExpandedSystem& es, const TargetSystem& target,
                        std::int64_t q, std::vector<std::int64_t> a,
                        const RunConfig& cfg = {});

// A_q = q^{-ms} * sum over a mod q with gcd(a_1,...,a_Rr,q) = 1 of S_q(a),
// the targets being carried inside the S_q phase.
std::complex<double> series_term(const ExpandedSystem& es, const TargetSystem& target,
                                 std::int64_t q, const RunConfig& cfg = {});

struct SeriesTruncation {
    double value = 0;      // sum of real parts over q <= Q
    double max_imag = 0;   // largest |Im A_q| seen (diagnostic; should vanish)
    std::vector<std::complex<double>> terms;  // terms[q-1] = A_q
};

SeriesTruncation truncated_singular_series(const ExpandedSystem& es,
                                           const TargetSystem& target, std::int64_t Q,
                                           const RunConfig& cfg = {});

}  // namespace formcount
