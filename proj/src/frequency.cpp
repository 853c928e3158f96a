#include "qpr/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>

#include "qpr/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qpr {

FrequencyVector::FrequencyVector(std::vector<double> components, mpfr_prec_t precision_bits)
    : prec_(precision_bits) {
    for (double x : components) comp_.emplace_back(x, prec_);
    validate();
}

FrequencyVector::FrequencyVector(std::vector<std::string> decimal_components, mpfr_prec_t precision_bits)
    : prec_(precision_bits) {
    for (const auto& s : decimal_components) comp_.emplace_back(s, prec_);
    validate();
}

FrequencyVector FrequencyVector::golden(mpfr_prec_t precision_bits) {
    FrequencyVector w(std::vector<double>{1.0, 0.0}, precision_bits);
    // (sqrt(5) - 1) / 2 at full precision
    BigFloat g = (BigFloat::sqrt_of(5.0, precision_bits) - BigFloat(1.0, precision_bits)) /
                 BigFloat(2.0, precision_bits);
    w.comp_[1] = g;
    return w;
}

void FrequencyVector::validate() const {
    if (comp_.empty()) throw ConfigError("frequency vector must have d >= 1");
    bool all_zero = true;
    for (const auto& c : comp_) {
        double x = c.to_double();
        if (!std::isfinite(x)) throw ConfigError("frequency component is not finite");
        if (!c.is_zero()) all_zero = false;
    }
    if (all_zero) throw ConfigError("frequency vector must be nonzero");
}

BigFloat FrequencyVector::dot(const Multi& nu) const {
    BigFloat acc(prec_);
    for (size_t i = 0; i < comp_.size(); ++i) {
        if (nu[i] != 0) acc.add_mul_si(nu[i], comp_[i]);
    }
    return acc;
}

BigFloat FrequencyVector::resonance_threshold() const {
    return BigFloat::pow2(-static_cast<long>(prec_ / 2), prec_);
}

const AlphaEntry& BryunoTable::at(int m) const {
    if (m < 0 || m >= static_cast<int>(entries.size()))
        throw InsufficientTableError("alpha table does not cover m=" + std::to_string(m));
    return entries[m];
}

namespace {

// Candidate ordering: smaller |omega.nu| wins; exact ties broken by the
// lexicographically smallest canonical witness.
struct Best {
    bool valid = false;
    BigFloat value;
    Multi witness;

    void offer(const BigFloat& v, const Multi& nu) {
        Multi w = canonical_sign(nu);
        if (!valid || v < value || (v == value && w < witness)) {
            valid = true;
            value = v;
            witness = std::move(w);
        }
    }
    void merge(const Best& o) {
        if (o.valid) offer(o.value, o.witness);
    }
};

int radius_for(int m, int cap_l1) {
    if (m < 0) throw ConfigError("m must be >= 0");
    if (m >= 31) throw CapExceededError("2^m overflows the scan radius");
    long long r = 1LL << m;
    if (r > cap_l1)
        throw CapExceededError("lattice scan radius 2^" + std::to_string(m) + " exceeds cap " +
                               std::to_string(cap_l1));
    return static_cast<int>(r);
}

void check_resonance(const FrequencyVector& omega, const Best& best) {
    if (best.value < omega.resonance_threshold() || best.value.is_zero())
        throw ResonantFrequencyError("|omega.nu| = " + best.value.to_string(8) + " at nu=" +
                                     to_string(best.witness) + ": frequency is resonant at working precision");
}

// Enumerate all nu with |nu|_1 <= R over coordinates [i..d), accumulating into best.
void scan_rec(const FrequencyVector& omega, Multi& nu, size_t i, int budget, Best& best) {
    size_t d = nu.size();
    if (i + 1 == d) {
        for (int c = -budget; c <= budget; ++c) {
            nu[i] = c;
            if (qpr::is_zero(nu)) continue;
            best.offer(omega.dot(nu).abs(), nu);
        }
        nu[i] = 0;
        return;
    }
    for (int c = -budget; c <= budget; ++c) {
        nu[i] = c;
        scan_rec(omega, nu, i + 1, budget - std::abs(c), best);
    }
    nu[i] = 0;
}

}  // namespace

AlphaEntry alpha_scan_exhaustive(const FrequencyVector& omega, int m, int cap_l1, bool parallel) {
    int R = radius_for(m, cap_l1);
    int d = omega.dim();
    Best best;
    if (d == 1) {
        // only nu = (c), minimum at |c| = 1
        Multi nu{1};
        best.offer(omega.dot(nu).abs(), nu);
    } else if (!parallel) {
        Multi nu(d, 0);
        scan_rec(omega, nu, 0, R, best);
    } else {
        std::vector<Best> local(2 * R + 1);
#pragma omp parallel for schedule(dynamic)
        for (int c = -R; c <= R; ++c) {
            Multi nu(d, 0);
            nu[0] = c;
            scan_rec(omega, nu, 1, R - std::abs(c), local[c + R]);
        }
        for (auto& b : local) best.merge(b);
    }
    check_resonance(omega, best);
    return AlphaEntry{m, best.value, best.value.to_double(), best.witness};
}

namespace {

// Optimal value of the pivot coordinate for fixed remaining coordinates:
// the minimizer of |c + t*w_p| over integers t in [-B, B] is the clamp of
// floor/ceil of -c/w_p (plus the nonzero-vector guard).
void offer_pivot_candidates(const FrequencyVector& omega, Multi& nu, int pivot, int budget,
                            const BigFloat& partial, Best& best) {
    bool others_zero = true;
    for (size_t i = 0; i < nu.size(); ++i)
        if (static_cast<int>(i) != pivot && nu[i] != 0) others_zero = false;

    BigFloat t = partial.neg() / omega.component(pivot);
    long f = t.floor_long();
    long cands[4] = {f, f + 1, -budget, budget};
    for (long c : cands) {
        long cc = std::clamp(c, static_cast<long>(-budget), static_cast<long>(budget));
        for (long adj : {cc, cc - 1, cc + 1}) {  // guard rounding at interval edges
            if (adj < -budget || adj > budget) continue;
            if (others_zero && adj == 0) continue;
            nu[pivot] = static_cast<int>(adj);
            best.offer(omega.dot(nu).abs(), nu);
        }
    }
    nu[pivot] = 0;
}

void pivot_rec(const FrequencyVector& omega, Multi& nu, size_t i, int pivot, int budget, Best& best) {
    if (i == nu.size()) {
        offer_pivot_candidates(omega, nu, pivot, budget, omega.dot(nu), best);
        return;
    }
    if (static_cast<int>(i) == pivot) {
        pivot_rec(omega, nu, i + 1, pivot, budget, best);
        return;
    }
    for (int c = -budget; c <= budget; ++c) {
        nu[i] = c;
        pivot_rec(omega, nu, i + 1, pivot, budget - std::abs(c), best);
    }
    nu[i] = 0;
}

}  // namespace

AlphaEntry alpha_scan(const FrequencyVector& omega, int m, int cap_l1, bool parallel) {
    int R = radius_for(m, cap_l1);
    int d = omega.dim();
    if (d == 1) return alpha_scan_exhaustive(omega, m, cap_l1, false);

    // pivot = coordinate with the largest |omega_i|
    int pivot = 0;
    for (int i = 1; i < d; ++i)
        if (omega.component(pivot).abs() < omega.component(i).abs()) pivot = i;

    int outer = (pivot == 0) ? 1 : 0;
    Best best;
    if (!parallel) {
        Multi nu(d, 0);
        pivot_rec(omega, nu, 0, pivot, R, best);
    } else {
        std::vector<Best> local(2 * R + 1);
#pragma omp parallel for schedule(dynamic)
        for (int c = -R; c <= R; ++c) {
            Multi nu(d, 0);
            nu[outer] = c;
            // recurse over the remaining non-pivot coordinates
            Best& b = local[c + R];
            int rem = R - std::abs(c);
            // walk coordinates after `outer`
            std::function<void(size_t, int)> rec = [&](size_t i, int budget) {
                if (i == nu.size()) {
                    offer_pivot_candidates(omega, nu, pivot, budget, omega.dot(nu), b);
                    return;
                }
                if (static_cast<int>(i) == pivot || i == static_cast<size_t>(outer)) {
                    rec(i + 1, budget);
                    return;
                }
                for (int cc = -budget; cc <= budget; ++cc) {
                    nu[i] = cc;
                    rec(i + 1, budget - std::abs(cc));
                }
                nu[i] = 0;
            };
            rec(0, rem);
        }
        for (auto& b : local) best.merge(b);
    }
    check_resonance(omega, best);
    return AlphaEntry{m, best.value, best.value.to_double(), best.witness};
}

AlphaEntry alpha_continued_fraction(const FrequencyVector& omega, int m) {
    if (omega.dim() != 2) throw ConfigError("continued-fraction oracle is d=2 only");
    int R = radius_for(m, std::numeric_limits<int>::max() / 2);
    mpfr_prec_t prec = omega.precision();

    // theta = |omega_2 / omega_1|; candidates nu = (p, -q sign) from the CF of theta.
    BigFloat w1 = omega.component(0), w2 = omega.component(1);
    if (w1.is_zero()) std::swap(w1, w2);  // omega nonzero by construction
    BigFloat theta = (w2 / w1).abs();

    Best best;
    // convergents p_k/q_k of theta plus intermediate fractions
    long pkm1 = 1, qkm1 = 0;  // p_{-1}/q_{-1}
    long pk = 0, qk = 1;      // p_0/q_0 with a_0 = floor(theta) folded in below
    BigFloat x = theta;
    long a0 = x.floor_long();
    pk = a0;
    // seed with (p,q) = (a0, 1) and (a0+1, 1)
    auto offer_pq = [&](long p, long q) {
        if (q <= 0) return;
        if (std::llabs(p) + q > R) return;
        // candidate nu with nu . omega = q*w2 - p*w1 (up to overall sign conventions)
        Multi nu(2, 0);
        int s2 = (omega.component(1) < BigFloat(0.0, prec)) ? -1 : 1;
        nu[1] = static_cast<int>(q) * s2;
        int s1 = (omega.component(0) < BigFloat(0.0, prec)) ? -1 : 1;
        nu[0] = -static_cast<int>(p) * s1;
        if (qpr::is_zero(nu)) return;
        best.offer(omega.dot(nu).abs(), nu);
    };
    offer_pq(a0, 1);
    offer_pq(a0 + 1, 1);

    BigFloat frac = x - BigFloat(static_cast<double>(a0), prec);
    for (int iter = 0; iter < 64; ++iter) {
        if (frac.is_zero()) break;
        x = BigFloat(1.0, prec) / frac;
        long a = x.floor_long();
        frac = x - BigFloat(static_cast<double>(a), prec);
        // intermediate fractions j = 1..a between convergents
        for (long j = 1; j <= a; ++j) {
            long p = j * pk + pkm1;
            long q = j * qk + qkm1;
            if (std::llabs(p) + q > R && j > 1) break;
            offer_pq(p, q);
        }
        long pn = a * pk + pkm1, qn = a * qk + qkm1;
        pkm1 = pk;
        qkm1 = qk;
        pk = pn;
        qk = qn;
        if (qk > R) break;
    }
    if (!best.valid) throw InsufficientTableError("no CF candidate within |nu|_1 <= 2^m");
    check_resonance(omega, best);
    return AlphaEntry{m, best.value, best.value.to_double(), best.witness};
}

BryunoTable build_bryuno_table(const FrequencyVector& omega, int max_m, int cap_l1, bool parallel) {
    BryunoTable t;
    for (int m = 0; m <= max_m; ++m) t.entries.push_back(alpha_scan(omega, m, cap_l1, parallel));
    return t;
}

double bryuno_partial_sum(const BryunoTable& table, int M) {
    if (M < 0 || M > table.max_m())
        throw InsufficientTableError("Bryuno partial sum needs alpha_m through M=" + std::to_string(M));
    double s = 0.0;
    for (int m = 0; m <= M; ++m) s += std::ldexp(1.0, -m) * std::log(1.0 / table.entries[m].alpha_d);
    return s;
}

ScaleSequence scale_sequence(const BryunoTable& table) {
    ScaleSequence seq;
    if (table.entries.empty()) return seq;
    BigFloat two(2.0, table.entries[0].alpha.precision());
    int M = table.max_m();
    int mn = 0;
    seq.ms.push_back(0);
    while (true) {
        // p_n = max{q : alpha_{m_n} < 2 alpha_{m_n+q}} ; certified only if some
        // q within the table fails the inequality (the alphas are non-increasing,
        // so the first failure determines the max).
        const BigFloat& a0 = table.entries[mn].alpha;
        int q = 1;
        bool certified = false;
        for (; mn + q <= M; ++q) {
            if (!(a0 < two * table.entries[mn + q].alpha)) {
                certified = true;
                break;
            }
        }
        if (!certified) break;
        int pn = q - 1;
        seq.ps.push_back(pn);
        mn = mn + pn + 1;
        seq.ms.push_back(mn);
        if (mn >= M) break;  // next p_n needs entries past the table
    }
    return seq;
}

}  // namespace qpr
