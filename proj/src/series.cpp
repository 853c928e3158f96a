#include "qpr/series.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qpr/errors.hpp"

namespace qpr {

double SeriesTable::divisor(const Multi& nu) const {
    auto it = divisors.find(nu);
    if (it == divisors.end()) throw Error("divisor cache miss at nu=" + to_string(nu));
    return it->second;
}

std::vector<std::vector<Multi>> reachable_momenta(const ForcingSpec& spec, int k_max) {
    std::vector<std::vector<Multi>> reach(k_max + 1);
    std::set<Multi> cur(spec.support().begin(), spec.support().end());
    for (int j = 1; j <= k_max; ++j) {
        reach[j] = std::vector<Multi>(cur.begin(), cur.end());
        if (j == k_max) break;
        std::set<Multi> next;
        for (const Multi& a : cur)
            for (const Multi& m : spec.support()) next.insert(add(a, m));
        cur = std::move(next);
    }
    return reach;
}

namespace {

// Ordered tuples (nu_1..nu_s) with nu_i a key of b[k_i], summing so that
// nu0 = target - sum is a support mode; accumulates factor(nu0, s) * prod b.
void tuple_rec(const ForcingSpec& spec, const SeriesTable& table,
               const std::vector<int>& comp, size_t idx, const Multi& remaining,
               int remaining_reach, const TrigPoly& partial, TrigPoly& acc) {
    if (idx == comp.size()) {
        // remaining must be the root-node mode nu0 (possibly 0 if F_0 != 0)
        const TrigPoly& F0 = spec.F(remaining);
        if (F0.empty()) return;
        unsigned s = static_cast<unsigned>(comp.size());
        double fact = 1.0;
        for (unsigned q = 2; q <= s; ++q) fact *= q;
        acc += F0.derivative(s).scaled(1.0 / fact) * partial;
        return;
    }
    const auto& bk = table.b[comp[idx]];
    int tail_reach = remaining_reach - comp[idx] * table.Nf;
    for (const auto& [nu_i, poly] : bk) {
        // prune: the rest (tail tuples + nu0) must cover remaining - nu_i
        if (l1_norm(sub(remaining, nu_i)) > tail_reach + spec.Nf()) continue;
        tuple_rec(spec, table, comp, idx + 1, sub(remaining, nu_i), tail_reach,
                  partial * poly, acc);
    }
}

void compositions_rec(const ForcingSpec& spec, const SeriesTable& table, int k,
                      const Multi& nu, std::vector<int>& comp, int left, TrigPoly& acc) {
    if (left == 0) {
        int reach = 0;
        for (int c : comp) reach += c * table.Nf;
        tuple_rec(spec, table, comp, 0, nu, reach, TrigPoly::constant(1.0), acc);
        return;
    }
    // lexicographic composition order: first part smallest first
    for (int part = 1; part <= left; ++part) {
        comp.push_back(part);
        compositions_rec(spec, table, k, nu, comp, left - part, acc);
        comp.pop_back();
    }
}

}  // namespace

TrigPoly bracket_F(const ForcingSpec& spec, const SeriesTable& table, int k, const Multi& nu) {
    if (k == 0) return spec.F(nu);
    if (k > table.K || static_cast<int>(table.b.size()) <= k)
        throw InsufficientTableError("series table incomplete for bracket order " + std::to_string(k));
    TrigPoly acc;
    std::vector<int> comp;
    compositions_rec(spec, table, k, nu, comp, k, acc);
    return acc;
}

SeriesTable extend_series(const ForcingSpec& spec, const FrequencyVector& omega, int K) {
    SeriesTable t;
    t.K = K;
    t.Nf = spec.Nf();
    t.b.resize(K + 1);
    t.G.resize(K + 1);

    auto reach = reachable_momenta(spec, std::max(K, 1));
    BigFloat thr = omega.resonance_threshold();
    std::set<Multi> all;
    for (int j = 1; j <= std::max(K, 1); ++j) all.insert(reach[j].begin(), reach[j].end());
    for (const Multi& nu : all) {
        BigFloat x = omega.dot(nu);
        if (!qpr::is_zero(nu) && x.abs() < thr)
            throw ResonantFrequencyError("omega.nu vanishes at working precision for nu=" + to_string(nu));
        t.divisors[nu] = x.to_double();
    }
    t.divisors[Multi(spec.dim(), 0)] = 0.0;

    t.G[0] = spec.F_zero();
    for (int k = 1; k <= K; ++k) {
        for (const Multi& nu : reach[k]) {
            if (qpr::is_zero(nu)) continue;
            TrigPoly num = bracket_F(spec, t, k - 1, nu);
            if (num.empty()) continue;
            double x = t.divisor(nu);
            t.b[k][nu] = num.scaled(1.0 / (x * x));
        }
        t.G[k] = bracket_F(spec, t, k, Multi(spec.dim(), 0));
    }
    return t;
}

double evaluate_solution(const SeriesTable& table, double beta0, double eps, double t, int K) {
    if (K > table.K) throw InsufficientTableError("evaluation order above table order");
    Complex acc(0.0, 0.0);
    double ek = 1.0;
    for (int k = 1; k <= K; ++k) {
        ek *= eps;
        for (const auto& [nu, poly] : table.b[k]) {
            double phase = table.divisor(nu) * t;
            acc += ek * poly.evaluate(beta0) * std::polar(1.0, phase);
        }
    }
    return acc.real();
}

std::optional<int> find_k0(const SeriesTable& table, double tol) {
    for (int k = 0; k <= table.K; ++k) {
        if (table.G[k].max_abs_coeff() > tol) return k;
    }
    return std::nullopt;
}

double series_growth_hint(const SeriesTable& table) {
    double hint = 0.0;
    for (int k = 1; k <= table.K; ++k) {
        double m = 0.0;
        for (const auto& [nu, poly] : table.b[k]) m = std::max(m, poly.max_abs_coeff());
        if (m > 0.0) hint = std::max(hint, std::pow(m, 1.0 / k));
    }
    return hint;
}

}  // namespace qpr
