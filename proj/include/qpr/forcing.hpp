#pragma once

#include <map>
#include <string>
#include <vector>

#include "qpr/multiindex.hpp"
#include "qpr/trigpoly.hpp"

namespace qpr {

// Quasi-periodic forcing potential f(alpha, beta) = sum_nu f_nu(beta) e^{i nu.alpha}
// with trigonometric-polynomial beta-dependence; F = d f / d beta drives the
// equation of motion.  Reality (f_{-nu}(beta) = conj f_nu(beta) for real beta)
// is validated at construction and preserved by every operation here.
class ForcingSpec {
  public:
    ForcingSpec(int d, std::map<Multi, TrigPoly> f_modes, std::string name = "");

    static ForcingSpec from_json_file(const std::string& path);
    static ForcingSpec from_json_text(const std::string& text);
    std::string to_json_text() const;

    int dim() const { return d_; }
    const std::string& name() const { return name_; }
    // Largest |nu|_1 with F_nu not identically zero.
    int Nf() const { return Nf_; }

    const std::map<Multi, TrigPoly>& f_modes() const { return f_; }
    // Modes nu with F_nu not identically zero, in lexicographic order.
    const std::vector<Multi>& support() const { return supportF_; }

    // F_nu = d/dbeta f_nu; the zero polynomial off the support.
    const TrigPoly& F(const Multi& nu) const;
    const TrigPoly& f(const Multi& nu) const;
    const TrigPoly& F_zero() const;  // F_0 (zero mode), possibly the zero polynomial

  private:
    void validate_reality() const;

    int d_;
    std::string name_;
    std::map<Multi, TrigPoly> f_;
    std::map<Multi, TrigPoly> F_;
    std::vector<Multi> supportF_;
    int Nf_ = 0;
};

// Node factors (1/s!) d^s/dbeta^s F_nu, cached per (nu, s).
class NodeFactorTable {
  public:
    NodeFactorTable(const ForcingSpec& spec, unsigned max_s);
    const TrigPoly& factor(const Multi& nu, unsigned s) const;
    unsigned max_s() const { return max_s_; }

  private:
    const ForcingSpec* spec_;
    unsigned max_s_;
    std::map<Multi, std::vector<TrigPoly>> cache_;
    TrigPoly zero_;
};

// Empirical analyticity profile: smallest F1 and the fitted F2, xi with
// max_beta |(1/s!) d^s F_nu| <= F1 * F2^s * exp(-xi |nu|) over s <= 6 and the
// spec support.  Always satisfiable for a finite spec; feeds diagnostics.
struct AnalyticityFit {
    double F1 = 0.0;
    double F2 = 0.0;
    double xi = 0.0;
};
AnalyticityFit fit_analyticity_constants(const ForcingSpec& spec, unsigned max_s = 6);

// Ready-made example forcings used across tests and the CLI presets.
ForcingSpec make_cos_a1_cos_b();     // f = cos(alpha_1) cos(beta), d = 2
ForcingSpec make_pendulum_like();    // f = (1 + cos(alpha_1)/2) cos(beta), F_0 = -sin(beta)
ForcingSpec make_cos_a1_plus_b();    // f = cos(alpha_1 + beta): all bifurcation coefficients vanish
ForcingSpec make_two_angle();        // f = (cos(alpha_1) + cos(alpha_2)) cos(beta)

}  // namespace qpr
