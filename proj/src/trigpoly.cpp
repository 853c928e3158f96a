#include "qpr/trigpoly.hpp"

#include <algorithm>
#include <cmath>

namespace qpr {

TrigPoly TrigPoly::constant(double a) { return harmonic(0, Complex(a, 0.0)); }

TrigPoly TrigPoly::harmonic(int j, Complex c) {
    TrigPoly p;
    if (c != Complex(0.0, 0.0)) {
        p.jmin_ = j;
        p.c_ = {c};
    }
    return p;
}

TrigPoly TrigPoly::cosine(int j, double a) {
    TrigPoly p = harmonic(j, Complex(a / 2, 0.0));
    if (j != 0) p.add_coeff(-j, Complex(a / 2, 0.0));
    else p = harmonic(0, Complex(a, 0.0));
    return p;
}

TrigPoly TrigPoly::sine(int j, double a) {
    TrigPoly p;
    if (j == 0) return p;
    p.add_coeff(j, Complex(0.0, -a / 2));
    p.add_coeff(-j, Complex(0.0, a / 2));
    return p;
}

Complex TrigPoly::coeff(int j) const {
    int idx = j - jmin_;
    if (idx < 0 || idx >= static_cast<int>(c_.size())) return {0.0, 0.0};
    return c_[idx];
}

void TrigPoly::add_coeff(int j, Complex z) {
    if (z == Complex(0.0, 0.0)) return;
    if (c_.empty()) {
        jmin_ = j;
        c_ = {z};
        return;
    }
    if (j < jmin_) {
        c_.insert(c_.begin(), jmin_ - j, Complex(0.0, 0.0));
        jmin_ = j;
    } else if (j > degree_hi()) {
        c_.resize(j - jmin_ + 1, Complex(0.0, 0.0));
    }
    c_[j - jmin_] += z;
}

void TrigPoly::trim() {
    size_t lo = 0, hi = c_.size();
    while (lo < hi && c_[lo] == Complex(0.0, 0.0)) ++lo;
    while (hi > lo && c_[hi - 1] == Complex(0.0, 0.0)) --hi;
    if (lo == hi) {
        c_.clear();
        jmin_ = 0;
        return;
    }
    if (lo > 0 || hi < c_.size()) {
        c_ = std::vector<Complex>(c_.begin() + lo, c_.begin() + hi);
        jmin_ += static_cast<int>(lo);
    }
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
    for (size_t i = 0; i < o.c_.size(); ++i) add_coeff(o.jmin_ + static_cast<int>(i), o.c_[i]);
    trim();
    return *this;
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
    TrigPoly r = *this;
    r += o;
    return r;
}

TrigPoly TrigPoly::operator-(const TrigPoly& o) const {
    TrigPoly r = *this;
    r += o.scaled(-1.0);
    return r;
}

TrigPoly TrigPoly::operator*(const TrigPoly& o) const {
    TrigPoly r;
    if (c_.empty() || o.c_.empty()) return r;
    r.jmin_ = jmin_ + o.jmin_;
    r.c_.assign(c_.size() + o.c_.size() - 1, Complex(0.0, 0.0));
    for (size_t a = 0; a < c_.size(); ++a) {
        if (c_[a] == Complex(0.0, 0.0)) continue;
        for (size_t b = 0; b < o.c_.size(); ++b) r.c_[a + b] += c_[a] * o.c_[b];
    }
    r.trim();
    return r;
}

TrigPoly TrigPoly::scaled(Complex s) const {
    TrigPoly r = *this;
    if (s == Complex(0.0, 0.0)) return TrigPoly();
    for (auto& z : r.c_) z *= s;
    return r;
}

TrigPoly TrigPoly::derivative(unsigned s) const {
    TrigPoly r = *this;
    for (size_t i = 0; i < r.c_.size(); ++i) {
        Complex f = Complex(0.0, static_cast<double>(r.jmin_ + static_cast<int>(i)));
        Complex m(1.0, 0.0);
        for (unsigned q = 0; q < s; ++q) m *= f;
        r.c_[i] *= m;
    }
    r.trim();
    return r;
}

Complex TrigPoly::evaluate(double beta) const {
    Complex acc(0.0, 0.0);
    for (size_t i = 0; i < c_.size(); ++i) {
        int j = jmin_ + static_cast<int>(i);
        acc += c_[i] * std::polar(1.0, j * beta);
    }
    return acc;
}

double TrigPoly::evaluate_real(double beta) const {
    Complex z = evaluate(beta);
    return z.real();
}

double TrigPoly::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& z : c_) m = std::max(m, std::abs(z));
    return m;
}

bool TrigPoly::conj_symmetric(double tol) const {
    int lo = degree_lo(), hi = degree_hi();
    for (int j = std::min(lo, -hi); j <= std::max(hi, -lo); ++j) {
        if (std::abs(coeff(-j) - std::conj(coeff(j))) > tol) return false;
    }
    return true;
}

TrigPoly TrigPoly::pruned(double tol) const {
    TrigPoly r;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (std::abs(c_[i]) > tol) r.add_coeff(jmin_ + static_cast<int>(i), c_[i]);
    }
    r.trim();
    return r;
}

std::vector<std::pair<int, Complex>> TrigPoly::coeffs() const {
    std::vector<std::pair<int, Complex>> out;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] != Complex(0.0, 0.0)) out.emplace_back(jmin_ + static_cast<int>(i), c_[i]);
    }
    return out;
}

}  // namespace qpr
