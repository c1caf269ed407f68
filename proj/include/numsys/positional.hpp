#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "numsys/automata.hpp"
#include "numsys/linrec.hpp"

namespace numsys::positional {

using automata::Dfa;
using automata::Word;
using linrec::LinearRecurrence;

/// Digit alphabet {"0", "1", ..., "C-1"}.
std::vector<std::string> digit_alphabet(int c);

/// Positional numeration system: an increasing linear scale U with U_0 = 1,
/// the digit bound C_U, and a DFA for the greedy representation language
/// rep_U(N) over {0,...,C_U-1}.
struct PositionalSystem {
  LinearRecurrence recurrence;
  int digit_bound = 2;  // C_U
  Dfa rep_language;
};

/// Builds a system, checking structural invariants (U_0 = 1, alphabet shape,
/// epsilon accepted, infinite language). Deeper semantic checks live in
/// validate().
PositionalSystem make_system(LinearRecurrence rec, int digit_bound, Dfa rep_language);

/// Cached access to the scale U_0 < U_1 < ... of a recurrence.
class Scale {
 public:
  explicit Scale(const LinearRecurrence& r);
  const mpz_class& u(long i);
  /// Largest i with U_i <= n; requires n >= 1.
  long max_index_leq(const mpz_class& n);

 private:
  LinearRecurrence rec_;
  std::vector<mpz_class> terms_;
};

/// Greedy digit word of n, most significant digit first; greedy_rep(0) = epsilon.
Word greedy_rep(const PositionalSystem& sys, const mpz_class& n);
Word greedy_rep(Scale& scale, const mpz_class& n);

/// Numerical value of a digit word (digits need not be greedy; leading zeros
/// allowed). Leftmost digit carries the highest weight.
mpz_class val(const PositionalSystem& sys, const Word& w);
mpz_class val(Scale& scale, const Word& w);

struct ValidationReport {
  bool pass = true;
  std::vector<std::string> failures;
};

/// Desk-scale semantic validation: U increasing, digit bound consistent,
/// greedy words accepted, accepted words greedy, differences U_{i+1}-U_i
/// growing.
ValidationReport validate(const PositionalSystem& sys, int depth);

/// d*_beta(1) as an eventually periodic digit stream.
struct BertrandSpec {
  std::vector<int> preperiod;
  std::vector<int> period;  // nonempty, not all zero
};

/// Builds the Bertrand system for the stream: scale by
/// U_i = t_1 U_{i-1} + ... + t_i U_0 + 1, recurrence recovered from a prefix,
/// canonical representation automaton from the stream.
PositionalSystem bertrand_from_dbeta(const BertrandSpec& spec, int depth = 32);

/// DFA over the digit alphabet accepting { w : val_U(w) in the residue
/// classes marked by `residues` mod a }. Pure value congruence; not
/// intersected with the representation language.
Dfa congruence_dfa_set(const PositionalSystem& sys, std::uint64_t a,
                       const std::vector<char>& residues);

/// Single-residue convenience: { w : val_U(w) ≡ b (mod a) }.
Dfa congruence_dfa(const PositionalSystem& sys, std::uint64_t a, std::uint64_t b);

/// Ultimately periodic set as a characteristic word u . v^omega.
struct UpSet {
  std::vector<char> pre;  // u
  std::vector<char> per;  // v, nonempty

  /// Canonical minimal form: primitive period, shortest preperiod.
  static UpSet minimal(std::vector<char> pre, std::vector<char> per);
  /// Membership bit of n.
  bool bit(const mpz_class& n) const;
  /// Residues of the periodic part: r in [0,|v|) marked when eventually
  /// n ≡ r (mod |v|) lies in the set.
  std::vector<char> residues() const;
  bool operator==(const UpSet& o) const { return pre == o.pre && per == o.per; }
  std::string str() const;
};

/// DFA accepting rep_U(X) for the ultimately periodic set X.
Dfa up_set_dfa(const PositionalSystem& sys, const UpSet& x);

struct Bounds {
  mpz_class period_bound;     // P
  mpz_class preperiod_bound;  // A (a value; admissible preperiods are <= A)
  std::vector<std::pair<mpz_class, int>> prime_exponents;  // p_j -> s_j
  long iota_max = 0;
  int dfa_states = 0;  // d
};

/// Bounds from Theorem-style estimates: P = prod p_j^{s_j} * d with
/// s_j from the N_U(p_j^v) > d^k scan, A = U_{d + max_{p<=P} iota_U(p)}.
/// Requires the growth criterion to hold; throws otherwise.
Bounds compute_bounds(const PositionalSystem& sys, int dfa_states);

struct DecisionVerdict {
  enum class Kind { UltimatelyPeriodic, NotUltimatelyPeriodic, Inapplicable };
  Kind kind = Kind::Inapplicable;
  std::optional<UpSet> up;    // set when ultimately periodic (minimal form)
  mpz_class period_bound;     // set when not ultimately periodic
  mpz_class preperiod_bound;  // ditto
  std::string reason;         // set when inapplicable

  bool ultimately_periodic() const { return kind == Kind::UltimatelyPeriodic; }
};

struct DecideOptions {
  /// Cap on candidate periods; when it truncates the computed bound the
  /// verdict degrades to Inapplicable instead of an unsound negative.
  std::optional<mpz_class> max_period;
  /// Preperiods longer than this are reported Inapplicable rather than
  /// materialized bit by bit.
  long max_preperiod_bits = 1000000;
  int validate_depth = 10;
  int threads = 1;
};

/// Decision procedure for ultimate periodicity of the set X with
/// rep_U(X) = L(x_dfa). Candidate periods are tested in increasing order;
/// for each p the single candidate read off the input automaton is compared
/// via a symmetric-difference finiteness check.
DecisionVerdict decide(const PositionalSystem& sys, const Dfa& x_dfa,
                       const DecideOptions& opts = {});

}  // namespace numsys::positional
