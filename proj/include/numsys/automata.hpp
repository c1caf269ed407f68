#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace numsys {

/// Error raised for contract violations (bad inputs, mismatched alphabets, ...).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

namespace automata {

/// A word is a sequence of symbol indices into a Dfa's alphabet.
using Word = std::vector<int>;

/// Deterministic finite automaton over an ordered symbol alphabet.
///
/// The transition function is partial: a missing transition (-1) is an
/// implicit dead sink. The alphabet array order defines the total order on
/// symbols used everywhere (genealogical enumeration, witnesses, JSON).
struct Dfa {
  std::vector<std::string> alphabet;
  int states = 1;
  int initial = 0;
  std::vector<char> finals;  // per-state acceptance flag
  std::vector<int> delta;    // states * alphabet.size(), -1 = no transition

  Dfa() : finals(1, 0) {}
  Dfa(std::vector<std::string> alpha, int n)
      : alphabet(std::move(alpha)),
        states(n),
        finals(n, 0),
        delta(static_cast<size_t>(n) * alphabet.size(), -1) {}

  int nsym() const { return static_cast<int>(alphabet.size()); }
  int tr(int q, int s) const { return delta[static_cast<size_t>(q) * alphabet.size() + s]; }
  void set_tr(int q, int s, int t) { delta[static_cast<size_t>(q) * alphabet.size() + s] = t; }
  bool is_final(int q) const { return q >= 0 && finals[q]; }

  /// State reached from `initial` on w, or nullopt if the run dies.
  std::optional<int> run(const Word& w) const;
  bool accepts(const Word& w) const;

  /// Symbol index for a (string) symbol, -1 if absent.
  int symbol(const std::string& s) const;
};

/// Nondeterministic automaton; only the operations needed as an intermediate
/// for reversal live here.
struct Nfa {
  std::vector<std::string> alphabet;
  int states = 0;
  std::vector<int> initials;
  std::vector<char> finals;
  // edges[q*nsym+s] = successor states
  std::vector<std::vector<int>> edges;

  int nsym() const { return static_cast<int>(alphabet.size()); }
};

/// DFA with per-state output over an output alphabet Gamma.
struct Dfao {
  Dfa dfa;                          // all states conceptually final
  std::vector<std::string> gamma;   // output alphabet
  std::vector<int> output;          // per state, index into gamma
};

/// Throws Error if structural invariants are violated.
void check(const Dfa& d);

/// States reachable from the initial state.
std::vector<char> accessible(const Dfa& d);
/// States from which some final state is reachable.
std::vector<char> coaccessible(const Dfa& d);

/// Drops states that are not both accessible and coaccessible.
Dfa trim(const Dfa& d);

/// True if L(d) is empty.
bool is_empty(const Dfa& d);
/// True if L(d) is infinite (the trim automaton has a cycle).
bool is_infinite(const Dfa& d);

/// Canonical minimal DFA: live states only, partial transitions,
/// states numbered by BFS over the ordered alphabet. Two equivalent inputs
/// minimize to structurally identical automata.
Dfa minimize(const Dfa& d);

enum class BoolOp { Intersect, Union, Difference, SymDiff };

/// Product construction; result is minimized. Alphabets must match.
Dfa boolean_ops(const Dfa& a, const Dfa& b, BoolOp op);

/// Raw product without minimization (used where only emptiness/finiteness of
/// the result matters).
Dfa product_raw(const Dfa& a, const Dfa& b, BoolOp op);

/// True if L(a) is a subset of L(b).
bool subset(const Dfa& a, const Dfa& b);

struct EquivalenceVerdict {
  bool equal = false;
  std::optional<Word> witness;  // genealogically first word in the symmetric difference
};

/// Language equality with a shortest (genealogically first) witness.
EquivalenceVerdict equivalent(const Dfa& a, const Dfa& b);

/// DFA accepting { reverse(w) : w in L(d) }, minimized.
Dfa reverse_determinize(const Dfa& d);

/// Per-state path counting over word lengths. u(i,q) = number of words of
/// length i accepted from q; v(i,q) = sum of u(j,q) for j <= i.
/// Counts are arbitrary precision (they grow exponentially).
class CountTable {
 public:
  explicit CountTable(const Dfa& d);

  const mpz_class& u(int i, int q);
  const mpz_class& v(int i, int q);
  const Dfa& dfa() const { return *dfa_; }

 private:
  void ensure(int depth);
  const Dfa* dfa_;
  std::vector<std::vector<mpz_class>> u_;  // u_[i][q]
  std::vector<std::vector<mpz_class>> v_;
};

/// (u_i(q), v_i(q)) for one state; convenience over CountTable.
std::pair<mpz_class, mpz_class> count_from(const Dfa& d, int q, int i);

/// Genealogical enumeration state; reuse one enumerator when asking for many
/// ranks of the same automaton.
class Enumerator {
 public:
  explicit Enumerator(const Dfa& d);

  /// n-th word (0-indexed) of L in genealogical order.
  Word nth_word(const mpz_class& n);
  /// Rank of an accepted word; throws if w is not accepted.
  mpz_class word_index(const Word& w);
  /// Number of accepted words, when the language is finite.
  mpz_class finite_size();
  bool language_infinite() const { return infinite_; }

 private:
  Dfa trim_;
  CountTable counts_;
  bool infinite_;
};

Word nth_word(const Dfa& d, const mpz_class& n);
mpz_class word_index(const Dfa& d, const Word& w);

/// Genealogical (radix) order: by length, then lexicographically by symbol
/// index. Returns <0, 0, >0.
int genealogical_cmp(const Word& a, const Word& b);

/// DFA accepting exactly the given finite set of words.
Dfa from_word_list(const std::vector<std::string>& alphabet, const std::vector<Word>& words);

/// DFA accepting every word over the alphabet.
Dfa all_words(const std::vector<std::string>& alphabet);

/// Render a word using the automaton's symbols. Single-character symbols are
/// concatenated, otherwise symbols are joined with '.'.
std::string format_word(const std::vector<std::string>& alphabet, const Word& w);
/// Parse a word formatted as by format_word.
Word parse_word(const std::vector<std::string>& alphabet, const std::string& text);

/// Graphviz DOT rendering.
std::string to_dot(const Dfa& d, const std::string& name = "dfa");

}  // namespace automata
}  // namespace numsys
