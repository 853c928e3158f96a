#include "qpr/forcing.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qpr/errors.hpp"

namespace qpr {

ForcingSpec::ForcingSpec(int d, std::map<Multi, TrigPoly> f_modes, std::string name)
    : d_(d), name_(std::move(name)), f_(std::move(f_modes)) {
    if (d_ < 1) throw ConfigError("forcing dimension must be >= 1");
    for (auto& [nu, p] : f_) {
        if (static_cast<int>(nu.size()) != d_) throw ConfigError("mode index dimension mismatch");
    }
    validate_reality();
    for (auto& [nu, p] : f_) {
        TrigPoly Fp = p.derivative(1);
        if (!Fp.is_zero()) {
            F_[nu] = Fp;
            supportF_.push_back(nu);
            Nf_ = std::max(Nf_, l1_norm(nu));
        }
    }
}

void ForcingSpec::validate_reality() const {
    for (const auto& [nu, p] : f_) {
        Multi mnu = negate(nu);
        auto it = f_.find(mnu);
        if (it == f_.end()) throw RealityError("mode " + to_string(nu) + " lacks its conjugate partner");
        // f_{-nu} must equal the conjugate-flip of f_nu coefficient-wise
        for (auto [j, c] : p.coeffs()) {
            Complex want = std::conj(c);
            if (std::abs(it->second.coeff(-j) - want) > 1e-14 * std::max(1.0, std::abs(c)))
                throw RealityError("reality violated at mode " + to_string(nu) + ", harmonic " +
                                   std::to_string(j));
        }
    }
}

const TrigPoly& ForcingSpec::F(const Multi& nu) const {
    static const TrigPoly kZero;
    auto it = F_.find(nu);
    return it == F_.end() ? kZero : it->second;
}

const TrigPoly& ForcingSpec::f(const Multi& nu) const {
    static const TrigPoly kZero;
    auto it = f_.find(nu);
    return it == f_.end() ? kZero : it->second;
}

const TrigPoly& ForcingSpec::F_zero() const { return F(Multi(d_, 0)); }

ForcingSpec ForcingSpec::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open forcing spec: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

ForcingSpec ForcingSpec::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("forcing spec parse error: ") + e.what());
    }
    if (!j.contains("d") || !j.contains("modes")) throw ConfigError("forcing spec needs 'd' and 'modes'");
    int d = j.at("d").get<int>();
    std::map<Multi, TrigPoly> modes;
    for (const auto& mj : j.at("modes")) {
        Multi nu = mj.at("nu").get<std::vector<int>>();
        TrigPoly p;
        for (const auto& cj : mj.at("coeffs")) {
            p.add_coeff(cj.at("j").get<int>(),
                        Complex(cj.at("re").get<double>(), cj.at("im").get<double>()));
        }
        if (modes.count(nu)) throw ConfigError("duplicate mode " + to_string(nu));
        modes[nu] = p;
    }
    std::string name = j.value("name", "");
    return ForcingSpec(d, std::move(modes), name);
}

std::string ForcingSpec::to_json_text() const {
    nlohmann::json j;
    j["d"] = d_;
    j["name"] = name_;
    j["modes"] = nlohmann::json::array();
    for (const auto& [nu, p] : f_) {
        nlohmann::json mj;
        mj["nu"] = nu;
        mj["coeffs"] = nlohmann::json::array();
        for (auto [h, c] : p.coeffs()) {
            mj["coeffs"].push_back({{"j", h}, {"re", c.real()}, {"im", c.imag()}});
        }
        j["modes"].push_back(mj);
    }
    return j.dump(2);
}

NodeFactorTable::NodeFactorTable(const ForcingSpec& spec, unsigned max_s)
    : spec_(&spec), max_s_(max_s) {
    for (const Multi& nu : spec.support()) {
        std::vector<TrigPoly> per_s;
        double fact = 1.0;
        for (unsigned s = 0; s <= max_s; ++s) {
            if (s > 1) fact *= s;
            per_s.push_back(spec.F(nu).derivative(s).scaled(1.0 / fact));
        }
        cache_[nu] = std::move(per_s);
    }
}

const TrigPoly& NodeFactorTable::factor(const Multi& nu, unsigned s) const {
    auto it = cache_.find(nu);
    if (it == cache_.end()) return zero_;
    if (s > max_s_) throw Error("node factor order above table cap");
    return it->second[s];
}

AnalyticityFit fit_analyticity_constants(const ForcingSpec& spec, unsigned max_s) {
    // Sample max_beta |(1/s!) d^s F_nu| on a fine grid, then pick xi from the
    // |nu|-decay of the s=0 row and F2 from consecutive-s growth ratios.
    AnalyticityFit fit;
    const int G = 512;
    std::map<int, double> by_norm;  // |nu| -> max over modes of sup_beta |F_nu|
    double f2 = 1.0;
    for (const Multi& nu : spec.support()) {
        double prev = 0.0;
        double fact = 1.0;
        for (unsigned s = 0; s <= max_s; ++s) {
            if (s > 1) fact *= s;
            TrigPoly p = spec.F(nu).derivative(s).scaled(1.0 / fact);
            double sup = 0.0;
            for (int g = 0; g < G; ++g) sup = std::max(sup, std::abs(p.evaluate(2 * M_PI * g / G)));
            if (s == 0) {
                auto& slot = by_norm[l1_norm(nu)];
                slot = std::max(slot, sup);
            } else if (prev > 0.0) {
                f2 = std::max(f2, sup / prev);
            }
            prev = sup;
        }
    }
    if (by_norm.empty()) return fit;  // trivial forcing
    // xi: steepest exponential through the farthest mode relative to the nearest
    double xi = 1.0;
    auto first = *by_norm.begin();
    for (auto& [n, v] : by_norm) {
        if (n == first.first) continue;
        double cand = std::log(first.second / v) / (n - first.first);
        xi = std::min(xi, std::max(cand, 1e-6));
    }
    fit.xi = xi;
    fit.F2 = f2;
    double f1 = 0.0;
    for (auto& [n, v] : by_norm) f1 = std::max(f1, v * std::exp(fit.xi * n));
    fit.F1 = f1;
    return fit;
}

namespace {
std::map<Multi, TrigPoly> symmetric_pair(const Multi& nu, const TrigPoly& p) {
    std::map<Multi, TrigPoly> m;
    m[nu] = p;
    TrigPoly q;
    for (auto [j, c] : p.coeffs()) q.add_coeff(-j, std::conj(c));
    m[negate(nu)] = q;
    return m;
}
}  // namespace

ForcingSpec make_cos_a1_cos_b() {
    // f = cos(a1) cos(b): f_{(1,0)} = f_{(-1,0)} = cos(b)/2
    auto m = symmetric_pair({1, 0}, TrigPoly::cosine(1, 0.5));
    return ForcingSpec(2, std::move(m), "cos_a1_cos_b");
}

ForcingSpec make_pendulum_like() {
    // f = (1 + cos(a1)/2) cos(b): zero mode cos(b), side modes cos(b)/4
    auto m = symmetric_pair({1, 0}, TrigPoly::cosine(1, 0.25));
    m[{0, 0}] = TrigPoly::cosine(1, 1.0);
    return ForcingSpec(2, std::move(m), "pendulum_like");
}

ForcingSpec make_cos_a1_plus_b() {
    // f = cos(a1 + b): f_{(1,0)} = e^{ib}/2, f_{(-1,0)} = e^{-ib}/2
    std::map<Multi, TrigPoly> m;
    m[{1, 0}] = TrigPoly::harmonic(1, Complex(0.5, 0.0));
    m[{-1, 0}] = TrigPoly::harmonic(-1, Complex(0.5, 0.0));
    return ForcingSpec(2, std::move(m), "cos_a1_plus_b");
}

ForcingSpec make_two_angle() {
    // f = (cos(a1) + cos(a2)) cos(b): momenta mix both angles, so divisors
    // omega.nu genuinely shrink along the ladder.
    auto m = symmetric_pair({1, 0}, TrigPoly::cosine(1, 0.5));
    auto m2 = symmetric_pair({0, 1}, TrigPoly::cosine(1, 0.5));
    m.insert(m2.begin(), m2.end());
    return ForcingSpec(2, std::move(m), "two_angle");
}

}  // namespace qpr
