#include "numsys/linrec.hpp"

#include <algorithm>
#include <memory>
#include <unordered_map>

namespace numsys::linrec {

LinearRecurrence::LinearRecurrence(std::vector<mpz_class> a, std::vector<mpz_class> init)
    : coeffs(std::move(a)), initial(std::move(init)) {
  if (coeffs.empty()) throw Error("recurrence: order must be >= 1");
  if (coeffs.back() == 0) throw Error("recurrence: a_k must be nonzero");
  if (initial.size() != coeffs.size())
    throw Error("recurrence: need exactly k initial terms");
}

LinearRecurrence::LinearRecurrence(std::initializer_list<long> a, std::initializer_list<long> init)
    : LinearRecurrence(std::vector<mpz_class>(a.begin(), a.end()),
                       std::vector<mpz_class>(init.begin(), init.end())) {}

mpz_class term(const LinearRecurrence& r, long i) {
  if (i < 0) throw Error("term: negative index");
  int k = r.order();
  if (i < k) return r.initial[i];
  std::vector<mpz_class> win = r.initial;
  mpz_class next;
  for (long t = k; t <= i; ++t) {
    next = 0;
    for (int j = 0; j < k; ++j) next += r.coeffs[j] * win[k - 1 - j];
    for (int j = 0; j + 1 < k; ++j) win[j] = win[j + 1];
    win[k - 1] = next;
  }
  return win[k - 1];
}

std::vector<mpz_class> terms(const LinearRecurrence& r, long n) {
  int k = r.order();
  std::vector<mpz_class> out;
  out.reserve(n);
  for (long i = 0; i < std::min<long>(n, k); ++i) out.push_back(r.initial[i]);
  while (static_cast<long>(out.size()) < n) {
    mpz_class next = 0;
    size_t t = out.size();
    for (int j = 0; j < k; ++j) next += r.coeffs[j] * out[t - 1 - j];
    out.push_back(std::move(next));
  }
  return out;
}

namespace {

struct TupleHash {
  size_t operator()(const std::vector<std::uint64_t>& v) const {
    size_t h = 1469598103934665603ull;
    for (auto x : v) {
      h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// Shared profile machinery: `next(i)` yields the sequence mod m, k is an order
// bound for the generating recurrence (a k-tuple repeat implies periodicity).
ResidueProfile profile_scan(const std::function<std::uint64_t(long)>& next, int k,
                            std::uint64_t m) {
  ResidueProfile out;
  out.modulus = m;
  if (m == 1) {
    out.preperiod = 0;
    out.period = 1;
    out.period_values = {0};
    out.recurring_count = 1;
    return out;
  }
  std::vector<std::uint64_t> seq;
  std::unordered_map<std::vector<std::uint64_t>, long, TupleHash> seen;
  long i1 = -1, i2 = -1;
  for (long i = 0;; ++i) {
    seq.push_back(next(i));
    if (static_cast<long>(seq.size()) >= k) {
      std::vector<std::uint64_t> tup(seq.end() - k, seq.end());
      long start = static_cast<long>(seq.size()) - k;
      auto [it, fresh] = seen.emplace(std::move(tup), start);
      if (!fresh) {
        i1 = it->second;
        i2 = start;
        break;
      }
    }
    if (seq.size() > 200000000) throw Error("residue_profile: scan exceeded hard cap");
  }
  long iota = i1, pi = i2 - i1;
  // extend so every divisor check has terms up to iota + 2*pi + k
  while (static_cast<long>(seq.size()) < iota + 2 * pi + k)
    seq.push_back(next(static_cast<long>(seq.size())));
  for (long d = 1; d <= pi; ++d) {
    if (pi % d) continue;
    bool ok = true;
    for (long j = iota; j < iota + pi && ok; ++j) ok = seq[j] == seq[j + d];
    if (ok) {
      pi = d;
      break;
    }
  }
  while (iota > 0 && seq[iota - 1] == seq[iota - 1 + pi]) --iota;
  out.preperiod = iota;
  out.period = pi;
  out.preperiod_values.assign(seq.begin(), seq.begin() + iota);
  out.period_values.assign(seq.begin() + iota, seq.begin() + iota + pi);
  std::vector<std::uint64_t> distinct = out.period_values;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  out.recurring_count = static_cast<long>(distinct.size());
  return out;
}

}  // namespace

ResidueProfile residue_profile(const LinearRecurrence& r, std::uint64_t m) {
  if (m == 0) throw Error("residue_profile: modulus must be positive");
  if (m > (1ull << 40)) throw Error("residue_profile: modulus too large");
  int k = r.order();
  // coefficients reduced mod m once; 128-bit accumulation keeps products exact
  std::vector<std::uint64_t> cm(k);
  for (int j = 0; j < k; ++j) {
    mpz_class c = r.coeffs[j] % static_cast<unsigned long>(m);
    if (c < 0) c += static_cast<unsigned long>(m);
    cm[j] = c.get_ui();
  }
  auto window = std::make_shared<std::vector<std::uint64_t>>();
  auto gen = [r, k, m, cm, window](long i) -> std::uint64_t {
    auto& w = *window;
    if (i < k) {
      mpz_class c = r.initial[i] % static_cast<unsigned long>(m);
      if (c < 0) c += static_cast<unsigned long>(m);
      w.push_back(c.get_ui());
      return w.back();
    }
    unsigned __int128 acc = 0;
    size_t t = w.size();
    for (int j = 0; j < k; ++j) {
      acc += static_cast<unsigned __int128>(cm[j]) * w[t - 1 - j];
      if ((j & 7) == 7) acc %= m;
    }
    std::uint64_t val = static_cast<std::uint64_t>(acc % m);
    w.push_back(val);
    return val;
  };
  return profile_scan(gen, k, m);
}

ResidueProfile residue_profile_of_sequence(const std::function<mpz_class(long)>& gen,
                                           int order_hint, std::uint64_t m) {
  if (m == 0) throw Error("residue_profile: modulus must be positive");
  auto next = [&gen, m](long i) -> std::uint64_t {
    mpz_class c = gen(i) % static_cast<unsigned long>(m);
    if (c < 0) c += static_cast<unsigned long>(m);
    return c.get_ui();
  };
  return profile_scan(next, order_hint, m);
}

algebra::IntPoly char_poly_of(const LinearRecurrence& r) {
  int k = r.order();
  std::vector<mpz_class> c(k + 1);
  c[k] = 1;
  for (int j = 0; j < k; ++j) c[k - 1 - j] = -r.coeffs[j];
  return algebra::IntPoly(std::move(c));
}

algebra::IntPoly pu_poly(const LinearRecurrence& r) {
  int k = r.order();
  std::vector<mpz_class> c(k + 1);
  c[0] = 1;
  for (int j = 0; j < k; ++j) c[j + 1] = -r.coeffs[j];
  return algebra::IntPoly(std::move(c));
}

mpz_class hankel_determinant(const LinearRecurrence& r) {
  int k = r.order();
  return algebra::det(algebra::hankel(terms(r, 2 * k - 1), k));
}

LinearRecurrence reduce_to_minimal(const LinearRecurrence& r) {
  int k = r.order();
  auto ts = terms(r, std::max(2 * k, 8));
  auto fit = algebra::minimal_recurrence(ts, k);
  if (!fit) throw Error("reduce_to_minimal: no recurrence with nonzero a_k fits");
  std::vector<mpz_class> a;
  for (const auto& q : *fit) {
    mpq_class c = q;
    c.canonicalize();
    if (c.get_den() != 1)
      throw Error("reduce_to_minimal: minimal recurrence has non-integer coefficients");
    a.push_back(c.get_num());
  }
  int k2 = static_cast<int>(a.size());
  std::vector<mpz_class> init(ts.begin(), ts.begin() + k2);
  return LinearRecurrence(std::move(a), std::move(init));
}

std::vector<std::pair<mpz_class, int>> factorize(const mpz_class& n) {
  mpz_class m = abs(n);
  std::vector<std::pair<mpz_class, int>> out;
  if (m <= 1) return out;
  for (mpz_class p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (m > 1) out.push_back({m, 1});
  return out;
}

GrowthVerdict n_growth_criterion(const LinearRecurrence& r) {
  if (hankel_determinant(r) == 0)
    throw Error("n_growth_criterion: recurrence is not minimal (Hankel determinant is zero); "
                "reduce it first");
  GrowthVerdict out;
  auto primes = factorize(r.a_k());
  if (primes.empty()) {
    out.diverges_for_all_m = true;  // a_k = +-1
    return out;
  }
  auto part = algebra::cyclotomic_part(pu_poly(r), r.order());
  for (const auto& [p, e] : primes) {
    PrimeVerdict v;
    v.prime = p;
    bool b_is_one_mod_p = true;
    algebra::IntPoly bm1 = part.b - algebra::IntPoly{1};
    for (const auto& cf : bm1.c)
      if (cf % p != 0) {
        b_is_one_mod_p = false;
        break;
      }
    if (part.squarefree && b_is_one_mod_p) {
      v.divergent = false;
      v.a = part.a;
      v.b = part.b;
      out.diverges_for_all_m = false;
    }
    out.per_prime.push_back(std::move(v));
  }
  return out;
}

std::optional<int> engstrom_index(const LinearRecurrence& r, const mpz_class& p) {
  if (r.a_k() % p != 0) throw Error("engstrom_index: p does not divide a_k");
  int k = r.order();
  int s = 0;
  while (s < k && r.coeffs[k - 1 - s] % p == 0) ++s;
  if (s == k) return std::nullopt;  // all coefficients divisible by p
  return s;
}

int smallest_v_exceeding(const LinearRecurrence& r, const mpz_class& p,
                         const mpz_class& threshold, int v_max) {
  mpz_class pv = 1;
  for (int v = 1; v <= v_max; ++v) {
    pv *= p;
    if (!pv.fits_ulong_p() || pv.get_ui() > (1ull << 40))
      throw Error("smallest_v_exceeding: modulus " + pv.get_str() + " too large to scan");
    auto prof = residue_profile(r, pv.get_ui());
    if (mpz_class(prof.recurring_count) > threshold) return v;
  }
  throw Error("smallest_v_exceeding: N_U(p^v) did not exceed threshold by v_max=" +
              std::to_string(v_max) + " (divergence precondition violated?)");
}

}  // namespace numsys::linrec
