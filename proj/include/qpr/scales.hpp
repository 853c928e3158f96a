#pragma once

#include <utility>
#include <vector>

#include "qpr/frequency.hpp"

namespace qpr {

enum class CutoffVariant { Smooth, Sharp };

// Sentinel scale for arguments smaller than the certified ladder resolves
// (conceptually "scale infinity"); also used for the zero argument.
inline constexpr int kScaleBeyond = 1 << 20;

// The nested cutoff family built on the ladder alpha_{m_0} > alpha_{m_1} > ...
//
// Smooth variant: chi(u) is the standard C-infinity step, equal to 1 for
// |u| <= 1/2 and 0 for |u| >= 1; chi_n(x) = chi(4x / alpha_{m_n}),
// psi_n = 1 - chi_n, Psi_n = chi_{n-1} psi_n (chi_{-1} = 1).
//
// Sharp variant: chi(u) = 1 for |u| <= 1 else 0, so Psi_n is the indicator
// of alpha_{m_n}/4 < |x| <= alpha_{m_{n-1}}/4 and the scales tile R\{0}.
class CutoffFamily {
  public:
    CutoffFamily(CutoffVariant variant, std::vector<double> alpha_mn);
    CutoffFamily(CutoffVariant variant, const BryunoTable& table, const ScaleSequence& seq);

    CutoffVariant variant() const { return variant_; }
    // Largest n for which Psi_n is available.
    int max_scale() const { return static_cast<int>(alpha_.size()) - 1; }
    // alpha_{m_n}; n = -1 is the unbounded sentinel and may not be queried.
    double alpha_mn(int n) const;

    // chi_n for n >= -1; chi_{-1} is identically 1.
    double chi_n(int n, double x) const;
    double psi_n(int n, double x) const;
    // Psi_n for n >= 0.
    double Psi_n(int n, double x) const;

    // |psi_p(x) + sum_{n>p} Psi_n(x) - 1|, the partition-of-unity residual.
    double partition_residual(int p, double x) const;

    // Scales n with Psi_n(x) > 0 and their weights.  Cardinality is 1 or 2
    // (smooth) and exactly 1 (sharp); weights sum to 1.
    std::vector<std::pair<int, double>> admissible_scales(double x) const;

    // The unique sharp scale of x (independent of the variant); x == 0 or
    // |x| below the ladder resolution yields kScaleBeyond.
    int sharp_scale(double x) const;

  private:
    void check_n(int n) const;

    CutoffVariant variant_;
    std::vector<double> alpha_;  // alpha_{m_n}, n = 0..max_scale
};

// xi_n regularizer: C-infinity, non-increasing, 1 for y <= alpha_{m_{n+1}}^2 / 2^9
// and 0 for y >= alpha_{m_{n+1}}^2 / 2^8 (one-sided in y, not |y|).
double xi_clamp(const CutoffFamily& fam, int n, double y);

}  // namespace qpr
