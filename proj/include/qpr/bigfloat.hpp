#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

namespace qpr {

// Minimal RAII wrapper around an mpfr_t at a fixed precision.
// Only the handful of operations the frequency module needs.
class BigFloat {
  public:
    explicit BigFloat(mpfr_prec_t prec = 128) : prec_(prec) { mpfr_init2(v_, prec_); mpfr_set_zero(v_, 1); }
    BigFloat(double x, mpfr_prec_t prec) : prec_(prec) { mpfr_init2(v_, prec_); mpfr_set_d(v_, x, MPFR_RNDN); }
    BigFloat(const std::string& dec, mpfr_prec_t prec) : prec_(prec) {
        mpfr_init2(v_, prec_);
        mpfr_set_str(v_, dec.c_str(), 10, MPFR_RNDN);
    }
    BigFloat(const BigFloat& o) : prec_(o.prec_) { mpfr_init2(v_, prec_); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept : prec_(o.prec_) {
        mpfr_init2(v_, prec_);
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(BigFloat o) noexcept {
        std::swap(prec_, o.prec_);
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_prec_t precision() const { return prec_; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }

    static BigFloat sqrt_of(double x, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_sqrt_ui(r.v_, static_cast<unsigned long>(x), MPFR_RNDN);
        return r;
    }
    // 2^e, e possibly negative.  Used for resonance thresholds.
    static BigFloat pow2(long e, mpfr_prec_t prec) {
        BigFloat r(1.0, prec);
        mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
        return r;
    }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        BigFloat r(a.prec_);
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        BigFloat r(a.prec_);
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        BigFloat r(a.prec_);
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        BigFloat r(a.prec_);
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    BigFloat& operator+=(const BigFloat& b) { mpfr_add(v_, v_, b.v_, MPFR_RNDN); return *this; }

    // a += nu * b with integer nu (exact scaled accumulate).
    void add_mul_si(long nu, const BigFloat& b) {
        BigFloat t(prec_);
        mpfr_mul_si(t.v_, b.v_, nu, MPFR_RNDN);
        mpfr_add(v_, v_, t.v_, MPFR_RNDN);
    }

    BigFloat abs() const {
        BigFloat r(prec_);
        mpfr_abs(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat neg() const {
        BigFloat r(prec_);
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    // Nearest integers below/above this value (as long).
    long floor_long() const {
        BigFloat r(prec_);
        mpfr_floor(r.v_, v_);
        return mpfr_get_si(r.v_, MPFR_RNDN);
    }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

    std::string to_string(int digits = 40) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", digits, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

  private:
    mpfr_prec_t prec_;
    mpfr_t v_;
};

}  // namespace qpr
