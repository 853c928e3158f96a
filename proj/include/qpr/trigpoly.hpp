#pragma once

#include <complex>
#include <vector>

namespace qpr {

using Complex = std::complex<double>;

// Finite trigonometric polynomial p(beta) = sum_j c_j e^{i j beta}, dense
// coefficient storage over the harmonic window [jmin, jmin + size).
// Real-valued on the real line iff c_{-j} = conj(c_j) for all j.
class TrigPoly {
  public:
    TrigPoly() = default;

    static TrigPoly zero() { return TrigPoly(); }
    static TrigPoly constant(double a);
    static TrigPoly harmonic(int j, Complex c);
    // a*cos(j beta) and a*sin(j beta) as conjugate-symmetric pairs.
    static TrigPoly cosine(int j, double a = 1.0);
    static TrigPoly sine(int j, double a = 1.0);

    bool empty() const { return c_.empty(); }
    int degree_lo() const { return jmin_; }
    int degree_hi() const { return jmin_ + static_cast<int>(c_.size()) - 1; }

    Complex coeff(int j) const;
    void add_coeff(int j, Complex z);

    TrigPoly& operator+=(const TrigPoly& o);
    TrigPoly operator+(const TrigPoly& o) const;
    TrigPoly operator-(const TrigPoly& o) const;
    TrigPoly operator*(const TrigPoly& o) const;  // harmonic convolution
    TrigPoly scaled(Complex s) const;
    TrigPoly scaled(double s) const { return scaled(Complex(s, 0.0)); }

    // s-th derivative in beta: c_j -> (i j)^s c_j.
    TrigPoly derivative(unsigned s = 1) const;

    Complex evaluate(double beta) const;
    // For conjugate-symmetric polynomials; clamps the (tiny) imaginary part.
    double evaluate_real(double beta) const;

    double max_abs_coeff() const;
    bool is_zero(double tol = 0.0) const { return max_abs_coeff() <= tol; }
    bool conj_symmetric(double tol = 1e-12) const;

    // Drop coefficients below tol in magnitude (used only by exports).
    TrigPoly pruned(double tol) const;

    // Deterministic listing (ascending j) of nonzero coefficients.
    std::vector<std::pair<int, Complex>> coeffs() const;

  private:
    void trim();

    int jmin_ = 0;
    std::vector<Complex> c_;
};

}  // namespace qpr
