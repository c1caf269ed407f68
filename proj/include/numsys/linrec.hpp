#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "numsys/algebra.hpp"

namespace numsys::linrec {

/// Integer linear recurrence U[i+k] = a1 U[i+k-1] + ... + ak U[i] with the
/// k initial terms U[0..k-1]. Requires ak != 0.
struct LinearRecurrence {
  std::vector<mpz_class> coeffs;   // a1..ak
  std::vector<mpz_class> initial;  // U0..U_{k-1}

  LinearRecurrence() = default;
  LinearRecurrence(std::vector<mpz_class> a, std::vector<mpz_class> init);
  LinearRecurrence(std::initializer_list<long> a, std::initializer_list<long> init);

  int order() const { return static_cast<int>(coeffs.size()); }
  const mpz_class& a_k() const { return coeffs.back(); }
};

/// Exact U[i] by iteration.
mpz_class term(const LinearRecurrence& r, long i);

/// U[0..n-1].
std::vector<mpz_class> terms(const LinearRecurrence& r, long n);

/// Eventual behavior of (U_i mod m): minimal preperiod iota, minimal period
/// pi, the values themselves and the number N of distinct values occurring in
/// one period (the residues taken infinitely often).
struct ResidueProfile {
  std::uint64_t modulus = 1;
  long preperiod = 0;                     // iota
  long period = 1;                        // pi
  std::vector<std::uint64_t> preperiod_values;
  std::vector<std::uint64_t> period_values;
  long recurring_count = 1;               // N = #distinct(period_values)
};

ResidueProfile residue_profile(const LinearRecurrence& r, std::uint64_t m);

/// Residue profile of an explicitly given sequence known to satisfy a linear
/// recurrence of order <= order_hint (used for automaton counting sequences).
/// `gen(i)` must be callable for every i the scan needs.
ResidueProfile residue_profile_of_sequence(const std::function<mpz_class(long)>& gen,
                                           int order_hint, std::uint64_t m);

/// chi_U(x) = x^k - a1 x^{k-1} - ... - ak.
algebra::IntPoly char_poly_of(const LinearRecurrence& r);

/// P_U(x) = x^k chi_U(1/x) = 1 - a1 x - ... - ak x^k.
algebra::IntPoly pu_poly(const LinearRecurrence& r);

/// k x k Hankel determinant of U[0..2k-2]; nonzero iff no shorter recurrence
/// generates the sequence (Kronecker).
mpz_class hankel_determinant(const LinearRecurrence& r);

/// Reduce to the minimal-order recurrence generating the same sequence.
/// Throws if the sequence admits no recurrence with nonzero trailing
/// coefficient at any order (possible only for degenerate inputs).
LinearRecurrence reduce_to_minimal(const LinearRecurrence& r);

/// Verdict of the N_U(p^v) growth test for one prime divisor of a_k.
struct PrimeVerdict {
  mpz_class prime;
  bool divergent = true;  // N_U(p^v) -> infinity
  algebra::IntPoly a;     // set when bounded: P_U = a * b
  algebra::IntPoly b;
};

struct GrowthVerdict {
  std::vector<PrimeVerdict> per_prime;
  bool diverges_for_all_m = true;  // lim_m N_U(m) = +infinity
};

/// Decides lim N_U(p^v) for each prime p | a_k via the cyclotomic
/// factorization test on P_U. Requires r minimal (Hankel determinant
/// nonzero); throws otherwise.
GrowthVerdict n_growth_criterion(const LinearRecurrence& r);

/// Least s < k with a_k,...,a_{k-s+1} all divisible by p and a_{k-s} not;
/// nullopt when every coefficient is divisible by p.
std::optional<int> engstrom_index(const LinearRecurrence& r, const mpz_class& p);

/// Least s >= 1 with N_U(p^s) > threshold, exploiting monotonicity in s.
/// Throws when s would exceed v_max (the divergence precondition guards
/// termination).
int smallest_v_exceeding(const LinearRecurrence& r, const mpz_class& p,
                         const mpz_class& threshold, int v_max = 64);

/// Prime factorization of |n| by trial division (small values only).
std::vector<std::pair<mpz_class, int>> factorize(const mpz_class& n);

}  // namespace numsys::linrec
