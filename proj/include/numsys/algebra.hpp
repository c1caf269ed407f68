#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "numsys/automata.hpp"

namespace numsys::algebra {

/// Integer polynomial, coefficients ascending by degree. The zero polynomial
/// is the empty coefficient list; otherwise the leading coefficient is
/// nonzero.
struct IntPoly {
  std::vector<mpz_class> c;

  IntPoly() = default;
  IntPoly(std::initializer_list<long> coeffs) {
    for (long x : coeffs) c.emplace_back(x);
    normalize();
  }
  explicit IntPoly(std::vector<mpz_class> coeffs) : c(std::move(coeffs)) { normalize(); }

  void normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  mpz_class coeff(int i) const {
    return i >= 0 && i < static_cast<int>(c.size()) ? c[i] : mpz_class(0);
  }
  mpz_class eval(const mpz_class& x) const;
  bool operator==(const IntPoly& o) const { return c == o.c; }

  std::string str(const std::string& var = "x") const;
};

IntPoly operator+(const IntPoly& f, const IntPoly& g);
IntPoly operator-(const IntPoly& f, const IntPoly& g);
IntPoly operator*(const IntPoly& f, const IntPoly& g);
IntPoly operator-(const IntPoly& f);

/// Exact quotient f / g over Z, or nullopt when g does not divide f.
/// Throws on division by the zero polynomial.
std::optional<IntPoly> poly_div_exact(const IntPoly& f, const IntPoly& g);

/// x^d - 1.
IntPoly x_pow_minus_one(int d);

/// d-th cyclotomic polynomial (recursive quotient definition, cached).
IntPoly cyclotomic(int d);

/// Euler totient.
long totient(long d);

struct CyclotomicPart {
  IntPoly a;                    // full cyclotomic part, sign-normalized so a(0)=1
  IntPoly b;                    // cofactor, f = a * b
  bool squarefree = true;       // every cyclotomic multiplicity <= 1
  std::map<int, int> multiplicity;  // d -> multiplicity of Phi_d in f
};

/// Splits f = A * B where A collects every cyclotomic factor Phi_d with
/// phi(d) <= k (with exact multiplicity) and B keeps the rest. Candidates d
/// range over d <= 2k^2 since phi(d) >= sqrt(d/2).
CyclotomicPart cyclotomic_part(const IntPoly& f, int degree_bound);

/// Square array of arbitrary-precision integers.
struct IntMatrix {
  int n = 0;
  std::vector<mpz_class> a;  // row-major

  IntMatrix() = default;
  explicit IntMatrix(int size) : n(size), a(static_cast<size_t>(size) * size, 0) {}
  mpz_class& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  const mpz_class& at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

/// Exact determinant (fraction-free Bareiss elimination).
mpz_class det(const IntMatrix& m);

/// Exact characteristic polynomial det(xI - M), monic of degree n.
IntPoly char_poly(const IntMatrix& m);

/// Shortest homogeneous linear recurrence t[i+k] = a1 t[i+k-1] + ... + ak t[i]
/// with ak != 0 satisfied by every supplied term, searching orders 1..max_order.
/// Coefficients are exact rationals; for the integer-recurrent sequences in
/// scope they come out integral.
std::optional<std::vector<mpq_class>> minimal_recurrence(const std::vector<mpz_class>& terms,
                                                         int max_order);

/// k x k Hankel matrix of terms[0..2k-2].
IntMatrix hankel(const std::vector<mpz_class>& terms, int k);

}  // namespace numsys::algebra
