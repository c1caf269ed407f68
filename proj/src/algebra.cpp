#include "numsys/algebra.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>

namespace numsys::algebra {

mpz_class IntPoly::eval(const mpz_class& x) const {
  mpz_class r = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
  return r;
}

std::string IntPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const mpz_class& a = c[i];
    if (a == 0) continue;
    mpz_class mag = abs(a);
    if (first) {
      if (a < 0) os << "-";
      first = false;
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    if (mag != 1 || i == 0) os << mag.get_str();
    if (i > 0) {
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

IntPoly operator+(const IntPoly& f, const IntPoly& g) {
  std::vector<mpz_class> r(std::max(f.c.size(), g.c.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) r[i] = f.coeff(static_cast<int>(i)) + g.coeff(static_cast<int>(i));
  return IntPoly(std::move(r));
}

IntPoly operator-(const IntPoly& f, const IntPoly& g) {
  std::vector<mpz_class> r(std::max(f.c.size(), g.c.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) r[i] = f.coeff(static_cast<int>(i)) - g.coeff(static_cast<int>(i));
  return IntPoly(std::move(r));
}

IntPoly operator-(const IntPoly& f) {
  std::vector<mpz_class> r = f.c;
  for (auto& x : r) x = -x;
  return IntPoly(std::move(r));
}

IntPoly operator*(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() || g.is_zero()) return IntPoly();
  std::vector<mpz_class> r(f.c.size() + g.c.size() - 1, 0);
  for (size_t i = 0; i < f.c.size(); ++i)
    for (size_t j = 0; j < g.c.size(); ++j) r[i + j] += f.c[i] * g.c[j];
  return IntPoly(std::move(r));
}

std::optional<IntPoly> poly_div_exact(const IntPoly& f, const IntPoly& g) {
  if (g.is_zero()) throw Error("poly_div_exact: division by zero polynomial");
  if (f.is_zero()) return IntPoly();
  if (f.degree() < g.degree()) return std::nullopt;
  std::vector<mpz_class> rem = f.c;
  std::vector<mpz_class> q(f.degree() - g.degree() + 1, 0);
  const mpz_class& lead = g.c.back();
  for (int i = f.degree(); i >= g.degree(); --i) {
    mpz_class& top = rem[i];
    if (top == 0) continue;
    if (top % lead != 0) return std::nullopt;  // not divisible over Z
    mpz_class factor = top / lead;
    q[i - g.degree()] = factor;
    for (int j = 0; j <= g.degree(); ++j) rem[i - g.degree() + j] -= factor * g.c[j];
  }
  for (const auto& x : rem)
    if (x != 0) return std::nullopt;
  return IntPoly(std::move(q));
}

IntPoly x_pow_minus_one(int d) {
  std::vector<mpz_class> c(d + 1, 0);
  c[0] = -1;
  c[d] = 1;
  return IntPoly(std::move(c));
}

long totient(long d) {
  long r = d;
  for (long p = 2; p * p <= d; ++p) {
    if (d % p) continue;
    while (d % p == 0) d /= p;
    r -= r / p;
  }
  if (d > 1) r -= r / d;
  return r;
}

IntPoly cyclotomic(int d) {
  static std::map<int, IntPoly> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  std::function<IntPoly(int)> go = [&](int n) -> IntPoly {
    auto hit = cache.find(n);
    if (hit != cache.end()) return hit->second;
    IntPoly f = x_pow_minus_one(n);
    for (int e = 1; e < n; ++e) {
      if (n % e) continue;
      auto q = poly_div_exact(f, go(e));
      if (!q) throw Error("cyclotomic: internal division failure");
      f = *q;
    }
    cache.emplace(n, f);
    return f;
  };
  if (d < 1) throw Error("cyclotomic: d must be >= 1");
  return go(d);
}

CyclotomicPart cyclotomic_part(const IntPoly& f, int degree_bound) {
  if (f.is_zero()) throw Error("cyclotomic_part: zero polynomial");
  CyclotomicPart out;
  out.a = IntPoly{1};
  out.b = f;
  int k = degree_bound;
  long dmax = 2L * k * k;
  for (long d = 1; d <= dmax; ++d) {
    if (totient(d) > k) continue;
    IntPoly phi = cyclotomic(static_cast<int>(d));
    int mult = 0;
    for (;;) {
      auto q = poly_div_exact(out.b, phi);
      if (!q) break;
      out.b = *q;
      ++mult;
    }
    if (mult > 0) {
      out.multiplicity[static_cast<int>(d)] = mult;
      for (int i = 0; i < mult; ++i) out.a = out.a * phi;
      if (mult > 1) out.squarefree = false;
    }
  }
  // Normalize signs so that A(0) = 1 whenever possible (Phi_1 contributes the
  // only negative constant term among cyclotomics).
  if (out.a.coeff(0) == -1) {
    out.a = -out.a;
    out.b = -out.b;
  }
  return out;
}

mpz_class det(const IntMatrix& m) {
  // Bareiss fraction-free elimination; every division is exact.
  int n = m.n;
  if (n == 0) return 1;
  std::vector<mpz_class> a = m.a;
  auto at = [&](int i, int j) -> mpz_class& { return a[static_cast<size_t>(i) * n + j]; };
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (at(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        mpz_class num = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        at(i, j) = num / prev;
      }
    prev = at(k, k);
  }
  return sign > 0 ? at(n - 1, n - 1) : mpz_class(-at(n - 1, n - 1));
}

IntPoly char_poly(const IntMatrix& m) {
  // Faddeev-LeVerrier over exact rationals; the outputs are integers since
  // the matrix is integral and the polynomial is monic.
  int n = m.n;
  if (n == 0) return IntPoly{1};
  std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(n, 0));
  std::vector<std::vector<mpq_class>> A(n, std::vector<mpq_class>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A[i][j] = mpq_class(m.at(i, j));
  std::vector<mpq_class> coef(n + 1, 0);
  coef[n] = 1;
  // M_0 = 0; iterate M_k = A*M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A*M_k)/k
  std::vector<std::vector<mpq_class>> AM(n, std::vector<mpq_class>(n, 0));
  mpq_class ck = 1;
  for (int k = 1; k <= n; ++k) {
    // M = AM + ck*I  (with AM from previous round; first round: M = ck*I)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M[i][j] = AM[i][j] + (i == j ? ck : mpq_class(0));
    // AM = A * M
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        mpq_class s = 0;
        for (int t = 0; t < n; ++t) s += A[i][t] * M[t][j];
        AM[i][j] = s;
      }
    mpq_class tr = 0;
    for (int i = 0; i < n; ++i) tr += AM[i][i];
    ck = -tr / k;
    coef[n - k] = ck;
  }
  std::vector<mpz_class> out(n + 1);
  for (int i = 0; i <= n; ++i) {
    mpq_class q = coef[i];
    q.canonicalize();
    if (q.get_den() != 1) throw Error("char_poly: non-integer coefficient (internal)");
    out[i] = q.get_num();
  }
  return IntPoly(std::move(out));
}

IntMatrix hankel(const std::vector<mpz_class>& terms, int k) {
  if (static_cast<int>(terms.size()) < 2 * k - 1) throw Error("hankel: insufficient terms");
  IntMatrix h(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) h.at(i, j) = terms[i + j];
  return h;
}

namespace {

// Solves the k-unknown system requiring terms[i+k] = sum_j x_j * terms[i+k-j]
// for every valid i; returns a solution with x_k != 0 when the solution space
// contains one.
std::optional<std::vector<mpq_class>> fit_order(const std::vector<mpz_class>& terms, int k) {
  int rows = static_cast<int>(terms.size()) - k;
  if (rows < 1) return std::nullopt;
  // columns: x_1..x_k ; row i: sum_j x_j * terms[i+k-j] = terms[i+k]
  std::vector<std::vector<mpq_class>> m(rows, std::vector<mpq_class>(k + 1, 0));
  for (int i = 0; i < rows; ++i) {
    for (int j = 1; j <= k; ++j) m[i][j - 1] = mpq_class(terms[i + k - j]);
    m[i][k] = mpq_class(terms[i + k]);
  }
  // Gauss-Jordan
  std::vector<int> pivot_col_of_row;
  int r = 0;
  for (int c = 0; c < k && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[r], m[piv]);
    mpq_class inv = m[r][c];
    for (int j = c; j <= k; ++j) m[r][j] /= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      mpq_class f = m[i][c];
      for (int j = c; j <= k; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_col_of_row.push_back(c);
    ++r;
  }
  for (int i = r; i < rows; ++i)
    if (m[i][k] != 0) return std::nullopt;  // inconsistent
  std::vector<char> is_pivot(k, 0);
  for (int c : pivot_col_of_row) is_pivot[c] = 1;
  // particular solution: free variables 0
  std::vector<mpq_class> x(k, 0);
  for (int i = 0; i < r; ++i) x[pivot_col_of_row[i]] = m[i][k];
  if (x[k - 1] == 0) {
    // move along the nullspace to make x_k nonzero, if possible
    auto nullvec = [&](int c) {  // nullspace basis vector for free column c
      std::vector<mpq_class> nv(k, 0);
      nv[c] = 1;
      for (int i = 0; i < r; ++i) nv[pivot_col_of_row[i]] = -m[i][c];
      return nv;
    };
    std::optional<std::vector<mpq_class>> shift;
    for (int c = 0; c < k && !shift; ++c) {
      if (is_pivot[c]) continue;
      auto nv = nullvec(c);
      if (nv[k - 1] != 0) shift = nv;
    }
    if (!shift) return std::nullopt;  // x_k = 0 forced at this order
    for (int j = 0; j < k; ++j) x[j] += (*shift)[j];
  }
  return x;
}

}  // namespace

std::optional<std::vector<mpq_class>> minimal_recurrence(const std::vector<mpz_class>& terms,
                                                         int max_order) {
  if (static_cast<int>(terms.size()) < 2 * max_order)
    throw Error("minimal_recurrence: need at least 2*max_order terms");
  bool all_zero = std::all_of(terms.begin(), terms.end(), [](const mpz_class& t) { return t == 0; });
  if (all_zero) return std::vector<mpq_class>{mpq_class(1)};  // t[i+1] = t[i] vacuously
  for (int k = 1; k <= max_order; ++k) {
    auto x = fit_order(terms, k);
    if (x) return x;
  }
  return std::nullopt;
}

}  // namespace numsys::algebra
