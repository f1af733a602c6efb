#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace regmodels {

// A rational number or +infinity.
class ExtRat {
public:
    ExtRat() = default;
    ExtRat(long v) : q_(v) {}
    ExtRat(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    static ExtRat infinity();

    bool is_inf() const noexcept { return inf_; }
    const mpq_class& value() const;  // throws InvalidInput on infinity

    std::string str() const;

    friend ExtRat operator+(const ExtRat& a, const ExtRat& b);
    friend ExtRat operator-(const ExtRat& a, const mpq_class& b);
    friend ExtRat operator*(const ExtRat& a, const mpq_class& k);  // requires k > 0 when a is infinite
    friend bool operator==(const ExtRat& a, const ExtRat& b);
    friend std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b);

private:
    mpq_class q_{0};
    bool inf_ = false;
};

ExtRat min(const ExtRat& a, const ExtRat& b);
ExtRat max(const ExtRat& a, const ExtRat& b);

std::string rat_str(const mpq_class& q);
mpz_class floor_q(const mpq_class& q);
mpz_class ceil_q(const mpq_class& q);
bool is_integer(const mpq_class& q);
long to_long(const mpz_class& z);
mpq_class frac(const mpz_class& num, const mpz_class& den);  // canonical num/den

// Dense polynomial over Q, coefficients lowest degree first, no trailing zeros.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<mpq_class> coeffs);
    QPoly(const mpq_class& constant);
    static QPoly monomial(const mpq_class& c, int degree);
    static QPoly x() { return monomial(1, 1); }
    static QPoly linear(const mpq_class& root) { return QPoly({-root, 1}); }  // t - root

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    const mpq_class& lc() const;
    mpq_class coeff(int i) const;
    const std::vector<mpq_class>& coeffs() const { return c_; }

    QPoly monic() const;
    QPoly derivative() const;
    mpq_class eval(const mpq_class& x) const;
    QPoly compose(const QPoly& inner) const;

    friend QPoly operator+(const QPoly& a, const QPoly& b);
    friend QPoly operator-(const QPoly& a, const QPoly& b);
    friend QPoly operator-(const QPoly& a);
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    friend QPoly operator*(const QPoly& a, const mpq_class& k);
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }
    friend bool operator<(const QPoly& a, const QPoly& b);

    QPoly pow(int e) const;

    // Polynomial in the variable t, highest degree first: "t^3 - 9".
    std::string str(const std::string& var = "t") const;

private:
    void trim();
    std::vector<mpq_class> c_;
};

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly operator%(const QPoly& a, const QPoly& b);
QPoly gcd(const QPoly& a, const QPoly& b);  // monic
// Inverse of a modulo m; requires gcd(a, m) = 1.
QPoly invmod(const QPoly& a, const QPoly& m);
// Digits a_i with p = sum a_i phi^i and deg a_i < deg phi.
std::vector<QPoly> expand(const QPoly& p, const QPoly& phi);
QPoly pseudo_rem(const QPoly& a, const QPoly& b);

// Resultant via the subresultant pseudo-remainder sequence.
mpq_class resultant(const QPoly& a, const QPoly& b);
// Determinant of the Sylvester matrix; independent reference for tests.
mpq_class sylvester_resultant(const QPoly& a, const QPoly& b);
mpq_class determinant(std::vector<std::vector<mpq_class>> m);

ExtRat p_valuation(const mpq_class& x, long p);
bool is_p_integral(const QPoly& f, long p);
// v_K(phi(theta)) for any root theta of the monic p-integral g.
ExtRat root_valuation(const QPoly& phi, const QPoly& g, long p);

bool is_prime(long n);
long mod_inverse(long a, long m);  // 0 <= result < m; requires gcd(a, m) = 1
long residue_mod(const mpq_class& x, long m);  // x p-integral for every prime dividing m

// Polynomial over F_p, coefficients in [0, p), lowest degree first.
class FpPoly {
public:
    FpPoly(long p) : p_(p) {}
    FpPoly(long p, std::vector<long> coeffs);
    static FpPoly from_q(const QPoly& f, long p);  // requires p-integral coefficients

    long prime() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    long lc() const { return c_.back(); }
    long coeff(int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : 0; }
    const std::vector<long>& coeffs() const { return c_; }

    FpPoly monic() const;
    FpPoly derivative() const;
    long eval(long x) const;

    friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
    friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
    friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
    friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
    friend bool operator<(const FpPoly& a, const FpPoly& b);

    std::string str(const std::string& var = "t") const;

private:
    void trim();
    long p_;
    std::vector<long> c_;
};

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b);
FpPoly gcd(const FpPoly& a, const FpPoly& b);
FpPoly powmod(const FpPoly& base, const mpz_class& e, const FpPoly& m);

// Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
std::vector<std::pair<FpPoly, int>> factor_mod_p(const FpPoly& g);
bool is_irreducible_bruteforce(const FpPoly& g);

}  // namespace regmodels
