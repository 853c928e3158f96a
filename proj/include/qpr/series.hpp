#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qpr/forcing.hpp"
#include "qpr/frequency.hpp"
#include "qpr/trigpoly.hpp"

namespace qpr {

// Formal power-series data for the response solution: per order k the Fourier
// coefficients b^{(k)}_nu(beta0) (beta0 kept symbolic as a trig polynomial)
// and the bifurcation coefficients G^{(k)}(beta0).
struct SeriesTable {
    int K = 0;
    int Nf = 0;
    // b[k] maps nu -> b^{(k)}_nu; index 0 unused.  nu = 0 never appears.
    std::vector<std::map<Multi, TrigPoly>> b;
    // G[k], k = 0..K; G[0] = F_0.
    std::vector<TrigPoly> G;
    // omega.nu for every reachable momentum (squared on use).
    std::map<Multi, double> divisors;

    double divisor(const Multi& nu) const;
};

// Momenta reachable as sums of exactly j support modes, j = 1..k_max.
std::vector<std::vector<Multi>> reachable_momenta(const ForcingSpec& spec, int k_max);

// The nonlinear bracket [F(omega t, beta)]^{(k)}_nu assembled from orders < k
// of the table; [.]^{(0)}_nu = F_nu.  The table must hold b^(1..k).
TrigPoly bracket_F(const ForcingSpec& spec, const SeriesTable& table, int k, const Multi& nu);

// Fill the table through order K: b^{(k)}_nu = bracket^{(k-1)}_nu / (omega.nu)^2,
// G^{(k)} = bracket^{(k)}_0.
SeriesTable extend_series(const ForcingSpec& spec, const FrequencyVector& omega, int K);

// sum_{k<=K} eps^k sum_nu e^{i (omega.nu) t} b^{(k)}_nu(beta0), clamped real.
double evaluate_solution(const SeriesTable& table, double beta0, double eps, double t, int K);

// Smallest k with G^{(k)} not identically zero, or nullopt if all vanish
// through the table order.
std::optional<int> find_k0(const SeriesTable& table, double tol = 1e-12);

// Crude convergence-radius hint: max_k ||b^{(k)}||_max^{1/k}.  Diagnostic only.
double series_growth_hint(const SeriesTable& table);

}  // namespace qpr
