#include "numsys/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

namespace numsys::automata {

std::optional<int> Dfa::run(const Word& w) const {
  int q = initial;
  for (int s : w) {
    if (s < 0 || s >= nsym()) throw Error("symbol index out of range");
    q = tr(q, s);
    if (q < 0) return std::nullopt;
  }
  return q;
}

bool Dfa::accepts(const Word& w) const {
  auto q = run(w);
  return q && finals[*q];
}

int Dfa::symbol(const std::string& s) const {
  for (int i = 0; i < nsym(); ++i)
    if (alphabet[i] == s) return i;
  return -1;
}

void check(const Dfa& d) {
  if (d.states <= 0) throw Error("dfa: must have at least one state");
  if (d.initial < 0 || d.initial >= d.states) throw Error("dfa: initial state out of range");
  if (static_cast<int>(d.finals.size()) != d.states) throw Error("dfa: finals size mismatch");
  if (d.delta.size() != static_cast<size_t>(d.states) * d.alphabet.size())
    throw Error("dfa: transition table size mismatch");
  std::set<std::string> seen;
  for (const auto& s : d.alphabet)
    if (!seen.insert(s).second) throw Error("dfa: duplicate symbol '" + s + "'");
  for (int t : d.delta)
    if (t < -1 || t >= d.states) throw Error("dfa: transition target out of range");
}

std::vector<char> accessible(const Dfa& d) {
  std::vector<char> acc(d.states, 0);
  std::deque<int> todo{d.initial};
  acc[d.initial] = 1;
  while (!todo.empty()) {
    int q = todo.front();
    todo.pop_front();
    for (int s = 0; s < d.nsym(); ++s) {
      int t = d.tr(q, s);
      if (t >= 0 && !acc[t]) {
        acc[t] = 1;
        todo.push_back(t);
      }
    }
  }
  return acc;
}

std::vector<char> coaccessible(const Dfa& d) {
  std::vector<std::vector<int>> rev(d.states);
  for (int q = 0; q < d.states; ++q)
    for (int s = 0; s < d.nsym(); ++s) {
      int t = d.tr(q, s);
      if (t >= 0) rev[t].push_back(q);
    }
  std::vector<char> co(d.states, 0);
  std::deque<int> todo;
  for (int q = 0; q < d.states; ++q)
    if (d.finals[q]) {
      co[q] = 1;
      todo.push_back(q);
    }
  while (!todo.empty()) {
    int q = todo.front();
    todo.pop_front();
    for (int p : rev[q])
      if (!co[p]) {
        co[p] = 1;
        todo.push_back(p);
      }
  }
  return co;
}

namespace {

// Keeps only states with keep[q], remapping indices; returns the canonical
// one-state empty automaton when the initial state is dropped.
Dfa restrict_states(const Dfa& d, const std::vector<char>& keep) {
  if (!keep[d.initial]) {
    Dfa e(d.alphabet, 1);
    return e;
  }
  std::vector<int> remap(d.states, -1);
  int n = 0;
  for (int q = 0; q < d.states; ++q)
    if (keep[q]) remap[q] = n++;
  Dfa r(d.alphabet, n);
  r.initial = remap[d.initial];
  for (int q = 0; q < d.states; ++q) {
    if (!keep[q]) continue;
    r.finals[remap[q]] = d.finals[q];
    for (int s = 0; s < d.nsym(); ++s) {
      int t = d.tr(q, s);
      r.set_tr(remap[q], s, t >= 0 && keep[t] ? remap[t] : -1);
    }
  }
  return r;
}

// BFS renumbering from the initial state, expanding symbols in alphabet
// order. All states are assumed reachable.
Dfa bfs_canonical(const Dfa& d) {
  std::vector<int> order(d.states, -1);
  int n = 0;
  order[d.initial] = n++;
  std::deque<int> todo{d.initial};
  while (!todo.empty()) {
    int q = todo.front();
    todo.pop_front();
    for (int s = 0; s < d.nsym(); ++s) {
      int t = d.tr(q, s);
      if (t >= 0 && order[t] < 0) {
        order[t] = n++;
        todo.push_back(t);
      }
    }
  }
  Dfa r(d.alphabet, n);
  r.initial = 0;
  for (int q = 0; q < d.states; ++q) {
    if (order[q] < 0) continue;
    r.finals[order[q]] = d.finals[q];
    for (int s = 0; s < d.nsym(); ++s) {
      int t = d.tr(q, s);
      r.set_tr(order[q], s, t >= 0 ? order[t] : -1);
    }
  }
  return r;
}

}  // namespace

Dfa trim(const Dfa& d) {
  auto acc = accessible(d);
  auto co = coaccessible(d);
  std::vector<char> keep(d.states, 0);
  for (int q = 0; q < d.states; ++q) keep[q] = acc[q] && co[q];
  return restrict_states(d, keep);
}

bool is_empty(const Dfa& d) {
  auto acc = accessible(d);
  for (int q = 0; q < d.states; ++q)
    if (acc[q] && d.finals[q]) return false;
  return true;
}

bool is_infinite(const Dfa& d) {
  Dfa t = trim(d);
  if (is_empty(t)) return false;
  // cycle detection on live states
  std::vector<int> color(t.states, 0);
  std::vector<std::pair<int, int>> stack;  // (state, next symbol)
  for (int root = 0; root < t.states; ++root) {
    if (color[root]) continue;
    stack.push_back({root, 0});
    color[root] = 1;
    while (!stack.empty()) {
      auto& [q, s] = stack.back();
      if (s == t.nsym()) {
        color[q] = 2;
        stack.pop_back();
        continue;
      }
      int tgt = t.tr(q, s++);
      if (tgt < 0) continue;
      if (color[tgt] == 1) return true;
      if (color[tgt] == 0) {
        color[tgt] = 1;
        stack.push_back({tgt, 0});
      }
    }
  }
  return false;
}

Dfa minimize(const Dfa& d) {
  Dfa t = trim(d);
  if (is_empty(t)) {
    Dfa e(d.alphabet, 1);
    return e;
  }
  // Moore partition refinement; missing transitions form an implicit dead
  // class with id -1 that never splits.
  int n = t.states;
  std::vector<int> cls(n);
  for (int q = 0; q < n; ++q) cls[q] = t.finals[q] ? 1 : 0;
  int nclasses = 2;
  bool both = false;
  {
    std::set<int> present(cls.begin(), cls.end());
    both = present.size() == 2;
    if (!both) {
      for (int q = 0; q < n; ++q) cls[q] = 0;
      nclasses = 1;
    }
  }
  for (;;) {
    std::map<std::vector<int>, int> sig2cls;
    std::vector<int> next(n);
    for (int q = 0; q < n; ++q) {
      std::vector<int> sig;
      sig.reserve(t.nsym() + 1);
      sig.push_back(cls[q]);
      for (int s = 0; s < t.nsym(); ++s) {
        int tgt = t.tr(q, s);
        sig.push_back(tgt >= 0 ? cls[tgt] : -1);
      }
      auto [it, fresh] = sig2cls.emplace(std::move(sig), static_cast<int>(sig2cls.size()));
      next[q] = it->second;
    }
    int m = static_cast<int>(sig2cls.size());
    if (m == nclasses) break;
    cls = std::move(next);
    nclasses = m;
  }
  Dfa q(t.alphabet, nclasses);
  q.initial = cls[t.initial];
  for (int i = 0; i < n; ++i) {
    int c = cls[i];
    q.finals[c] = t.finals[i];
    for (int s = 0; s < t.nsym(); ++s) {
      int tgt = t.tr(i, s);
      q.set_tr(c, s, tgt >= 0 ? cls[tgt] : -1);
    }
  }
  return bfs_canonical(q);
}

Dfa product_raw(const Dfa& a, const Dfa& b, BoolOp op) {
  if (a.alphabet != b.alphabet) throw Error("boolean_ops: alphabet mismatch");
  auto combine = [op](bool fa, bool fb) {
    switch (op) {
      case BoolOp::Intersect: return fa && fb;
      case BoolOp::Union: return fa || fb;
      case BoolOp::Difference: return fa && !fb;
      case BoolOp::SymDiff: return fa != fb;
    }
    return false;
  };
  // pair states, -1 = dead component
  std::map<std::pair<int, int>, int> idx;
  std::vector<std::pair<int, int>> pool;
  auto intern = [&](int qa, int qb) {
    auto [it, fresh] = idx.emplace(std::make_pair(qa, qb), static_cast<int>(pool.size()));
    if (fresh) pool.push_back({qa, qb});
    return it->second;
  };
  intern(a.initial, b.initial);
  std::vector<std::vector<int>> rows;
  std::vector<char> fin;
  for (size_t i = 0; i < pool.size(); ++i) {
    auto [qa, qb] = pool[i];
    fin.push_back(combine(qa >= 0 && a.finals[qa], qb >= 0 && b.finals[qb]));
    std::vector<int> row(a.nsym(), -1);
    for (int s = 0; s < a.nsym(); ++s) {
      int ta = qa >= 0 ? a.tr(qa, s) : -1;
      int tb = qb >= 0 ? b.tr(qb, s) : -1;
      if (ta < 0 && tb < 0) continue;  // joint dead sink stays implicit
      row[s] = intern(ta, tb);
    }
    rows.push_back(std::move(row));
  }
  Dfa p(a.alphabet, static_cast<int>(pool.size()));
  p.initial = 0;
  for (int q = 0; q < p.states; ++q) {
    p.finals[q] = fin[q];
    for (int s = 0; s < p.nsym(); ++s) p.set_tr(q, s, rows[q][s]);
  }
  return p;
}

Dfa boolean_ops(const Dfa& a, const Dfa& b, BoolOp op) {
  return minimize(product_raw(a, b, op));
}

bool subset(const Dfa& a, const Dfa& b) {
  return is_empty(product_raw(a, b, BoolOp::Difference));
}

EquivalenceVerdict equivalent(const Dfa& a, const Dfa& b) {
  if (a.alphabet != b.alphabet) throw Error("equivalent: alphabet mismatch");
  Dfa p = product_raw(a, b, BoolOp::SymDiff);
  // BFS expanding symbols in order discovers each state through its
  // genealogically first word; the first difference state found yields the
  // genealogically smallest witness.
  auto co = coaccessible(p);
  if (p.finals[p.initial]) return {false, Word{}};
  std::vector<int> parent(p.states, -1), via(p.states, -1);
  std::vector<char> seen(p.states, 0);
  std::deque<int> todo{p.initial};
  seen[p.initial] = 1;
  while (!todo.empty()) {
    int q = todo.front();
    todo.pop_front();
    for (int s = 0; s < p.nsym(); ++s) {
      int t = p.tr(q, s);
      if (t < 0 || seen[t] || !co[t]) continue;
      seen[t] = 1;
      parent[t] = q;
      via[t] = s;
      if (p.finals[t]) {
        Word w;
        for (int cur = t; cur != p.initial; cur = parent[cur]) w.push_back(via[cur]);
        std::reverse(w.begin(), w.end());
        return {false, w};
      }
      todo.push_back(t);
    }
  }
  return {true, std::nullopt};
}

Dfa reverse_determinize(const Dfa& d) {
  Dfa t = trim(d);
  if (is_empty(t)) {
    Dfa e(d.alphabet, 1);
    return e;
  }
  // reversed edges
  std::vector<std::vector<std::vector<int>>> rev(
      t.states, std::vector<std::vector<int>>(t.nsym()));
  for (int q = 0; q < t.states; ++q)
    for (int s = 0; s < t.nsym(); ++s) {
      int tgt = t.tr(q, s);
      if (tgt >= 0) rev[tgt][s].push_back(q);
    }
  std::vector<int> start;
  for (int q = 0; q < t.states; ++q)
    if (t.finals[q]) start.push_back(q);
  std::sort(start.begin(), start.end());
  std::map<std::vector<int>, int> idx;
  std::vector<std::vector<int>> pool{start};
  idx.emplace(start, 0);
  std::vector<std::vector<int>> rows;
  for (size_t i = 0; i < pool.size(); ++i) {
    std::vector<int> row(t.nsym(), -1);
    for (int s = 0; s < t.nsym(); ++s) {
      std::set<int> succ;
      for (int q : pool[i])
        for (int p : rev[q][s]) succ.insert(p);
      if (succ.empty()) continue;
      std::vector<int> key(succ.begin(), succ.end());
      auto [it, fresh] = idx.emplace(key, static_cast<int>(pool.size()));
      if (fresh) pool.push_back(key);
      row[s] = it->second;
    }
    rows.push_back(std::move(row));
  }
  Dfa r(t.alphabet, static_cast<int>(pool.size()));
  r.initial = 0;
  for (int q = 0; q < r.states; ++q) {
    r.finals[q] = std::find(pool[q].begin(), pool[q].end(), t.initial) != pool[q].end();
    for (int s = 0; s < r.nsym(); ++s) r.set_tr(q, s, rows[q][s]);
  }
  return minimize(r);
}

CountTable::CountTable(const Dfa& d) : dfa_(&d) {
  u_.emplace_back(d.states);
  v_.emplace_back(d.states);
  for (int q = 0; q < d.states; ++q) {
    u_[0][q] = d.finals[q] ? 1 : 0;
    v_[0][q] = u_[0][q];
  }
}

void CountTable::ensure(int depth) {
  const Dfa& d = *dfa_;
  while (static_cast<int>(u_.size()) <= depth) {
    int i = static_cast<int>(u_.size());
    std::vector<mpz_class> row(d.states), vrow(d.states);
    for (int q = 0; q < d.states; ++q) {
      mpz_class sum = 0;
      for (int s = 0; s < d.nsym(); ++s) {
        int t = d.tr(q, s);
        if (t >= 0) sum += u_[i - 1][t];
      }
      row[q] = sum;
      vrow[q] = v_[i - 1][q] + row[q];
    }
    u_.push_back(std::move(row));
    v_.push_back(std::move(vrow));
  }
}

const mpz_class& CountTable::u(int i, int q) {
  ensure(i);
  return u_[i][q];
}

const mpz_class& CountTable::v(int i, int q) {
  ensure(i);
  return v_[i][q];
}

std::pair<mpz_class, mpz_class> count_from(const Dfa& d, int q, int i) {
  if (q < 0 || q >= d.states) throw Error("count_from: state out of range");
  CountTable c(d);
  return {c.u(i, q), c.v(i, q)};
}

Enumerator::Enumerator(const Dfa& d)
    : trim_(trim(d)), counts_(trim_), infinite_(is_infinite(d)) {}

mpz_class Enumerator::finite_size() {
  if (infinite_) throw Error("finite_size: language is infinite");
  // longest word in a finite trim language is bounded by the state count
  return counts_.v(trim_.states, trim_.initial);
}

Word Enumerator::nth_word(const mpz_class& n) {
  if (n < 0) throw Error("nth_word: negative rank");
  if (!infinite_ && n >= finite_size())
    throw Error("nth_word: rank beyond finite language of size " + finite_size().get_str());
  int len = 0;
  while (counts_.v(len, trim_.initial) <= n) ++len;
  mpz_class t = n - (len > 0 ? counts_.v(len - 1, trim_.initial) : mpz_class(0));
  Word w;
  int q = trim_.initial;
  for (int rem = len; rem > 0; --rem) {
    for (int s = 0;; ++s) {
      if (s == trim_.nsym()) throw Error("nth_word: internal counting error");
      int tgt = trim_.tr(q, s);
      if (tgt < 0) continue;
      const mpz_class& c = counts_.u(rem - 1, tgt);
      if (t < c) {
        w.push_back(s);
        q = tgt;
        break;
      }
      t -= c;
    }
  }
  return w;
}

mpz_class Enumerator::word_index(const Word& w) {
  auto end = trim_.run(w);
  if (!end || !trim_.finals[*end]) throw Error("word_index: word not accepted");
  int len = static_cast<int>(w.size());
  mpz_class rank = len > 0 ? counts_.v(len - 1, trim_.initial) : mpz_class(0);
  int q = trim_.initial;
  for (int i = 0; i < len; ++i) {
    for (int s = 0; s < w[i]; ++s) {
      int tgt = trim_.tr(q, s);
      if (tgt >= 0) rank += counts_.u(len - i - 1, tgt);
    }
    q = trim_.tr(q, w[i]);
  }
  return rank;
}

Word nth_word(const Dfa& d, const mpz_class& n) { return Enumerator(d).nth_word(n); }

mpz_class word_index(const Dfa& d, const Word& w) { return Enumerator(d).word_index(w); }

int genealogical_cmp(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  if (a < b) return -1;
  return a == b ? 0 : 1;
}

Dfa from_word_list(const std::vector<std::string>& alphabet, const std::vector<Word>& words) {
  // trie
  std::vector<std::vector<int>> next(1, std::vector<int>(alphabet.size(), -1));
  std::vector<char> fin(1, 0);
  for (const auto& w : words) {
    int q = 0;
    for (int s : w) {
      if (s < 0 || s >= static_cast<int>(alphabet.size()))
        throw Error("from_word_list: symbol out of range");
      if (next[q][s] < 0) {
        next[q][s] = static_cast<int>(next.size());
        next.emplace_back(alphabet.size(), -1);
        fin.push_back(0);
      }
      q = next[q][s];
    }
    fin[q] = 1;
  }
  Dfa d(alphabet, static_cast<int>(next.size()));
  d.initial = 0;
  for (int q = 0; q < d.states; ++q) {
    d.finals[q] = fin[q];
    for (int s = 0; s < d.nsym(); ++s) d.set_tr(q, s, next[q][s]);
  }
  return minimize(d);
}

Dfa all_words(const std::vector<std::string>& alphabet) {
  Dfa d(alphabet, 1);
  d.finals[0] = 1;
  for (int s = 0; s < d.nsym(); ++s) d.set_tr(0, s, 0);
  return d;
}

std::string format_word(const std::vector<std::string>& alphabet, const Word& w) {
  bool single = true;
  for (const auto& s : alphabet)
    if (s.size() != 1) single = false;
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (!single && i > 0) out += '.';
    out += alphabet[w[i]];
  }
  return out;
}

Word parse_word(const std::vector<std::string>& alphabet, const std::string& text) {
  bool single = true;
  for (const auto& s : alphabet)
    if (s.size() != 1) single = false;
  Word w;
  auto sym = [&](const std::string& s) {
    for (int i = 0; i < static_cast<int>(alphabet.size()); ++i)
      if (alphabet[i] == s) return i;
    throw Error("parse_word: unknown symbol '" + s + "'");
  };
  if (single) {
    for (char c : text) w.push_back(sym(std::string(1, c)));
  } else {
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, '.'))
      if (!tok.empty()) w.push_back(sym(tok));
  }
  return w;
}

std::string to_dot(const Dfa& d, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=LR;\n  node [shape=circle];\n";
  os << "  __start [shape=point];\n  __start -> q" << d.initial << ";\n";
  for (int q = 0; q < d.states; ++q)
    if (d.finals[q]) os << "  q" << q << " [shape=doublecircle];\n";
  for (int q = 0; q < d.states; ++q)
    for (int s = 0; s < d.nsym(); ++s) {
      int t = d.tr(q, s);
      if (t >= 0)
        os << "  q" << q << " -> q" << t << " [label=\"" << d.alphabet[s] << "\"];\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace numsys::automata
