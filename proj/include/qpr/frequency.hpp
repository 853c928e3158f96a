#pragma once

#include <optional>
#include <vector>

#include "qpr/bigfloat.hpp"
#include "qpr/multiindex.hpp"

namespace qpr {

// Frequency vector omega in R^d at a configurable working precision.
// Source of every small divisor omega . nu used downstream.
class FrequencyVector {
  public:
    FrequencyVector(std::vector<double> components, mpfr_prec_t precision_bits = 128);
    FrequencyVector(std::vector<std::string> decimal_components, mpfr_prec_t precision_bits);

    // omega = (1, (sqrt(5)-1)/2), the standard strongly irrational test vector.
    static FrequencyVector golden(mpfr_prec_t precision_bits = 128);

    int dim() const { return static_cast<int>(comp_.size()); }
    mpfr_prec_t precision() const { return prec_; }
    const BigFloat& component(int i) const { return comp_[i]; }
    double component_d(int i) const { return comp_[i].to_double(); }

    BigFloat dot(const Multi& nu) const;
    double dot_d(const Multi& nu) const { return dot(nu).to_double(); }

    // Values |omega . nu| below this are treated as exact resonance: 2^(-prec/2).
    BigFloat resonance_threshold() const;

  private:
    void validate() const;

    std::vector<BigFloat> comp_;
    mpfr_prec_t prec_;
};

struct AlphaEntry {
    int m = 0;
    BigFloat alpha;    // exact scan minimum at working precision
    double alpha_d = 0.0;
    Multi witness;     // canonical minimizer, |witness|_1 <= 2^m
};

// alpha_m table plus the witnesses that realize each minimum.
struct BryunoTable {
    std::vector<AlphaEntry> entries;  // m = 0 .. max_m
    int max_m() const { return entries.empty() ? -1 : entries.back().m; }
    const AlphaEntry& at(int m) const;
};

// The subsequence m_0 = 0, m_{n+1} = m_n + p_n + 1 with
// p_n = max{q >= 0 : alpha_{m_n} < 2 alpha_{m_n + q}}.  Only the prefix the
// table can certify is returned.
struct ScaleSequence {
    std::vector<int> ms;  // m_n
    std::vector<int> ps;  // p_n, one fewer entry than ms when the tail is uncertified
};

inline constexpr int kDefaultScanCap = 1 << 14;  // bound on |nu|_1 for lattice scans

// Exhaustive lattice minimum of |omega . nu| over 0 < |nu|_1 <= 2^m.
// Plain full enumeration; the reference implementation.
AlphaEntry alpha_scan_exhaustive(const FrequencyVector& omega, int m,
                                 int cap_l1 = kDefaultScanCap, bool parallel = false);

// Same minimum via per-slice minimization over the pivot coordinate
// (the free coordinate's optimum is one of the two integers nearest the
// projection, so the scan stays exact).  OpenMP-parallel over slices.
AlphaEntry alpha_scan(const FrequencyVector& omega, int m,
                      int cap_l1 = kDefaultScanCap, bool parallel = true);

// d=2 continued-fraction oracle: best |nu_1 omega_1 + nu_2 omega_2| over
// convergents and intermediate fractions with |nu|_1 <= 2^m.
AlphaEntry alpha_continued_fraction(const FrequencyVector& omega, int m);

BryunoTable build_bryuno_table(const FrequencyVector& omega, int max_m,
                               int cap_l1 = kDefaultScanCap, bool parallel = true);

// sum_{m=0..M} 2^{-m} log(1/alpha_m).
double bryuno_partial_sum(const BryunoTable& table, int M);

ScaleSequence scale_sequence(const BryunoTable& table);

}  // namespace qpr
