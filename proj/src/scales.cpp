#include "qpr/scales.hpp"

#include <cmath>

#include "qpr/errors.hpp"

namespace qpr {

namespace {

// exp(-1/t) for t > 0, else 0: the bump ingredient of the smooth step.
double hfun(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// Smooth non-increasing step in |u|: 1 on |u| <= 1/2, 0 on |u| >= 1.
double chi_smooth(double u) {
    u = std::fabs(u);
    if (u <= 0.5) return 1.0;
    if (u >= 1.0) return 0.0;
    double a = hfun(2.0 - 2.0 * u);
    double b = hfun(2.0 * u - 1.0);
    return a / (a + b);
}

double chi_sharp(double u) { return std::fabs(u) <= 1.0 ? 1.0 : 0.0; }

}  // namespace

CutoffFamily::CutoffFamily(CutoffVariant variant, std::vector<double> alpha_mn)
    : variant_(variant), alpha_(std::move(alpha_mn)) {
    if (alpha_.empty()) throw ConfigError("cutoff family needs at least alpha_{m_0}");
    for (size_t i = 0; i < alpha_.size(); ++i) {
        if (!(alpha_[i] > 0.0)) throw ConfigError("alpha_{m_n} must be positive");
        if (i > 0 && alpha_[i] > alpha_[i - 1] / 2.0 + 1e-15)
            throw ConfigError("alpha_{m_n} ladder must halve at each step");
    }
}

CutoffFamily::CutoffFamily(CutoffVariant variant, const BryunoTable& table, const ScaleSequence& seq)
    : variant_(variant) {
    for (int mn : seq.ms) alpha_.push_back(table.at(mn).alpha_d);
    if (alpha_.empty()) throw ConfigError("empty scale sequence");
}

double CutoffFamily::alpha_mn(int n) const {
    check_n(n);
    return alpha_[n];
}

void CutoffFamily::check_n(int n) const {
    if (n < 0 || n > max_scale())
        throw ScaleRangeError("scale n=" + std::to_string(n) + " outside certified ladder (max " +
                              std::to_string(max_scale()) + ")");
}

double CutoffFamily::chi_n(int n, double x) const {
    if (n == -1) return 1.0;
    check_n(n);
    double u = 4.0 * x / alpha_[n];
    return variant_ == CutoffVariant::Smooth ? chi_smooth(u) : chi_sharp(u);
}

double CutoffFamily::psi_n(int n, double x) const { return 1.0 - chi_n(n, x); }

double CutoffFamily::Psi_n(int n, double x) const {
    if (n < 0) throw ScaleRangeError("Psi_n needs n >= 0");
    return chi_n(n - 1, x) * psi_n(n, x);
}

double CutoffFamily::partition_residual(int p, double x) const {
    if (x == 0.0) throw ConfigError("partition residual is defined for x != 0");
    check_n(p);
    double s = psi_n(p, x);
    for (int n = p + 1; n <= max_scale(); ++n) {
        if (chi_n(n - 1, x) == 0.0) break;  // all later Psi_n vanish
        s += Psi_n(n, x);
    }
    // The truncation is exact only once some chi_n vanishes at x; otherwise
    // the tail lies beyond the certified ladder.
    if (chi_n(max_scale(), x) != 0.0)
        throw ScaleRangeError("x below ladder resolution in partition_residual");
    return std::fabs(s - 1.0);
}

std::vector<std::pair<int, double>> CutoffFamily::admissible_scales(double x) const {
    if (x == 0.0) throw ConfigError("admissible_scales is defined for x != 0");
    std::vector<std::pair<int, double>> out;
    for (int n = 0; n <= max_scale(); ++n) {
        double w = Psi_n(n, x);
        if (w > 0.0) out.emplace_back(n, w);
        if (chi_n(n, x) == 0.0) return out;  // no later scale can fire
    }
    throw ScaleRangeError("x below ladder resolution in admissible_scales");
}

int CutoffFamily::sharp_scale(double x) const {
    double ax = std::fabs(x);
    if (ax == 0.0) return kScaleBeyond;
    if (ax > alpha_[0] / 4.0) return 0;
    for (int n = 1; n <= max_scale(); ++n) {
        if (ax > alpha_[n] / 4.0) return n;  // alpha_{m_n}/4 < |x| <= alpha_{m_{n-1}}/4
    }
    return kScaleBeyond;
}

double xi_clamp(const CutoffFamily& fam, int n, double y) {
    if (n < 0) return 1.0;
    double a2 = fam.alpha_mn(n + 1);  // throws if the ladder is too short
    a2 *= a2;
    double lo = a2 / 512.0, hi = a2 / 256.0;
    if (y <= lo) return 1.0;
    if (y >= hi) return 0.0;
    // reuse the smooth step on the rescaled coordinate: u in [1/2, 1]
    double u = 0.5 + 0.5 * (y - lo) / (hi - lo);
    double a = hfun(2.0 - 2.0 * u);
    double b = hfun(2.0 * u - 1.0);
    return a / (a + b);
}

}  // namespace qpr
