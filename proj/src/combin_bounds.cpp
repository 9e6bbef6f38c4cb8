#include "capkit/combin_bounds.hpp"

#include <cmath>

namespace capkit {

MatD sinkhorn(const MatD& m_in, int max_iter, double tol) {
  if (m_in.rows != m_in.cols)
    throw std::invalid_argument("sinkhorn: square input required");
  MatD m = m_in;
  m.check_nonneg();
  const int n = m.rows;
  for (int it = 0; it < max_iter; ++it) {
    for (int i = 0; i < n; ++i) {
      double s = m.row_sum(i);
      if (s <= 0) throw std::invalid_argument("sinkhorn: zero row sum");
      for (int j = 0; j < n; ++j) m.at(i, j) /= s;
    }
    for (int j = 0; j < n; ++j) {
      double s = m.col_sum(j);
      if (s <= 0) throw std::invalid_argument("sinkhorn: zero column sum");
      for (int i = 0; i < n; ++i) m.at(i, j) /= s;
    }
    double dev = 0;
    for (int i = 0; i < n; ++i) dev = std::max(dev, std::fabs(m.row_sum(i) - 1));
    for (int j = 0; j < n; ++j) dev = std::max(dev, std::fabs(m.col_sum(j) - 1));
    if (dev <= tol) break;
  }
  return m;
}

namespace {

Int count_matchings_rec(const BipartiteGraph& g, int i, int k,
                        std::uint32_t used) {
  if (k == 0) return 1;
  if (i >= g.left || g.left - i < k) return 0;
  // skip left vertex i, or match it to an unused neighbor
  Int total = count_matchings_rec(g, i + 1, k, used);
  for (int j = 0; j < g.right; ++j) {
    if (!g.edge(i, j) || ((used >> j) & 1)) continue;
    total += count_matchings_rec(g, i + 1, k - 1, used | (1u << j));
  }
  return total;
}

}  // namespace

Int count_matchings(const BipartiteGraph& g, int k) {
  if (g.left + g.right > 20)
    throw std::invalid_argument("count_matchings: graph too large");
  if (k < 0) throw std::invalid_argument("count_matchings: negative k");
  if (k > std::min(g.left, g.right)) return 0;
  return count_matchings_rec(g, 0, k, 0);
}

std::vector<Int> all_matching_counts(const BipartiteGraph& g) {
  std::vector<Int> out;
  for (int k = 0; k <= std::min(g.left, g.right); ++k)
    out.push_back(count_matchings(g, k));
  return out;
}

namespace {

double xlogx(double x) { return x <= 0 ? 0.0 : x * std::log(x); }

double lchoose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

double csikvari_log_bound(int m, int n, int a, int b, int k) {
  if (m < 1 || n < 1 || a < 1 || b < 1)
    throw std::invalid_argument("csikvari_log_bound: positive parameters required");
  if (k < 0 || k > std::min(m, n))
    throw std::invalid_argument("csikvari_log_bound: k out of range");
  if (m * a != n * b)
    throw std::invalid_argument("csikvari_log_bound: ma != nb");
  if (k > 0 && a * m < k)
    throw std::invalid_argument("csikvari_log_bound: k exceeds edge count");
  const double ma = double(m) * a;
  return lchoose(n, k) + k * (std::log(double(a)) + std::log(double(b))) +
         m * std::log(double(m)) + xlogx(ma - k) - ma * std::log(ma) -
         xlogx(double(m - k));
}

double csikvari_bound(int m, int n, int a, int b, int k) {
  return std::exp(csikvari_log_bound(m, n, a, b, k));
}

Rat csikvari_bound_exact(int m, int n, int a, int b, int k) {
  if (m * a != n * b)
    throw std::invalid_argument("csikvari_bound_exact: ma != nb");
  if (m * a > 64)
    throw std::invalid_argument("csikvari_bound_exact: ma > 64");
  if (k < 0 || k > std::min(m, n))
    throw std::invalid_argument("csikvari_bound_exact: k out of range");
  const long long ma = static_cast<long long>(m) * a;
  // C(n,k) (ab)^k m^m (ma-k)^{ma-k} / ((ma)^{ma} (m-k)^{m-k}), 0^0 = 1
  Rat num = Rat(binomial(n, k));
  num *= rat_pow(Rat(a) * Rat(b), k);
  num *= rat_pow(Rat(m), m);
  if (ma - k > 0) num *= rat_pow(Rat(ma - k), ma - k);
  Rat den = rat_pow(Rat(ma), ma);
  if (m - k > 0) den *= rat_pow(Rat(m - k), m - k);
  return num / den;
}

double schrijver_bound(int n, int d, int k) {
  return std::exp(csikvari_log_bound(n, n, d, d, k));
}

BoundReport doubly_stochastic_capacity_check(const MatD& m, double tol,
                                             const CapacityOptions& opts) {
  if (m.rows != m.cols)
    throw std::invalid_argument("doubly_stochastic_capacity_check: square input required");
  for (int i = 0; i < m.rows; ++i)
    if (std::fabs(m.row_sum(i) - 1) > 1e-6)
      throw std::invalid_argument("doubly_stochastic_capacity_check: row sums != 1");
  for (int j = 0; j < m.cols; ++j)
    if (std::fabs(m.col_sum(j) - 1) > 1e-6)
      throw std::invalid_argument("doubly_stochastic_capacity_check: column sums != 1");
  PolyD p = product_polynomial(m);
  double v = capacity_value(p, std::vector<double>(m.cols, 1.0), opts);
  return make_identity_report("doubly_stochastic_capacity", v, 1.0, tol);
}

BoundReport ab_stochastic_capacity_check(const MatD& m, double a, double b,
                                         double tol,
                                         const CapacityOptions& opts) {
  for (int i = 0; i < m.rows; ++i)
    if (std::fabs(m.row_sum(i) - a) > 1e-6)
      throw std::invalid_argument("ab_stochastic_capacity_check: row sums != a");
  for (int j = 0; j < m.cols; ++j)
    if (std::fabs(m.col_sum(j) - b) > 1e-6)
      throw std::invalid_argument("ab_stochastic_capacity_check: column sums != b");
  PolyD p = product_polynomial(m);
  std::vector<double> alpha(m.cols, double(m.rows) / m.cols);
  double lhs = capacity_value(p, alpha, opts);
  double rhs = std::exp(m.rows * std::log(a));
  return make_identity_report("ab_stochastic_capacity", lhs, rhs, tol);
}

VdwChainResult vdw_chain(const MatQ& m, double tol, const CapacityOptions& opts) {
  if (m.rows != m.cols)
    throw std::invalid_argument("vdw_chain: square input required");
  const int n = m.rows;
  if (n < 1) throw std::invalid_argument("vdw_chain: empty matrix");

  VdwChainResult res;
  res.permanent_ryser = permanent(m);

  // Operator route: strip one variable at a time with d/dx_0 at 0; the final
  // arity-0 constant is the x_1...x_n coefficient, i.e. the permanent.
  PolyQ p = product_polynomial(m);
  PolyQ cur = p;
  while (cur.arity() > 0) {
    OperatorQ t = derivative_at_zero_op<Rat>(cur.degree_profile(), 0);
    cur = capkit::apply(t, cur);
    if (cur.is_zero()) break;
  }
  res.permanent_operator = cur.is_zero() ? Rat(0) : cur.terms().begin()->second;
  res.operator_route_matches = res.permanent_operator == res.permanent_ryser;

  // prod_{k=2}^n ((k-1)/k)^{k-1} telescopes to n!/n^n.
  Rat prod(1);
  for (int k = 2; k <= n; ++k) prod *= rat_pow(Rat(k - 1) / Rat(k), k - 1);
  res.bound_factor = Rat(factorial(n)) / rat_pow(Rat(n), n);
  res.product_identity_exact = prod == res.bound_factor;

  double cpc = capacity_value(to_float(p), std::vector<double>(n, 1.0), opts);
  res.bound = make_inequality_report(
      "vdw_lower_bound", rat_to_double(res.permanent_ryser),
      rat_to_double(res.bound_factor) * cpc, tol);
  return res;
}

MatchingSymbolResult matching_operator_symbol(int n, int k, int b) {
  if (n < 1 || b < 1 || k < 0 || k > n)
    throw std::invalid_argument("matching_operator_symbol: bad parameters");
  MatchingSymbolResult res;
  DegreeProfile lambda = DegreeProfile::uniform(n, b);
  res.direct = symbol_bounded(matching_operator<Rat>(lambda, k));

  // closed form: b^k sum_{|S|=k} prod_{j in S} z_j (1+z_j)^{b-1}
  //                              prod_{j notin S} (1+z_j)^b
  PolyQ one_plus(1);
  one_plus.add_term({0}, 1);
  one_plus.add_term({1}, 1);
  auto lift = [&](const PolyQ& uni, int var) {
    PolyQ r(n);
    for (const auto& [mu, c] : uni.terms()) {
      ExponentVec full(n, 0);
      full[var] = mu[0];
      r.add_term(std::move(full), c);
    }
    return r;
  };
  PolyQ closed(n);
  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  bool more = k >= 0;
  while (more) {
    PolyQ term = PolyQ::constant(n, rat_pow(Rat(b), k));
    std::vector<bool> in_s(n, false);
    for (int idx : pick) in_s[idx] = true;
    for (int j = 0; j < n; ++j) {
      if (in_s[j]) {
        PolyQ z = PolyQ::variable(n, j);
        term = term * z * lift(one_plus.pow(b - 1), j);
      } else {
        term = term * lift(one_plus.pow(b), j);
      }
    }
    closed = closed + term;
    // next k-subset
    if (k == 0) break;
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int t = i + 1; t < k; ++t) pick[t] = pick[t - 1] + 1;
  }
  res.closed = closed;
  res.identity_exact = res.direct == res.closed;

  // diagonal: b^k C(n,k) z^k (1+z)^{nb-k}
  PolyQ diag = PolyQ::monomial({k}, rat_pow(Rat(b), k) * Rat(binomial(n, k)));
  diag = diag * one_plus.pow(n * b - k);
  res.diagonal = diag;
  res.diagonal_exact = diagonalize(res.direct) == res.diagonal;
  return res;
}

std::vector<BoundReport> csikvari_derivation_check(const BipartiteGraph& g,
                                                   int k,
                                                   const CapacityOptions& opts) {
  auto reg = g.biregular();
  if (!reg)
    throw std::invalid_argument("csikvari_derivation_check: biregular graph required");
  const int m = g.left, n = g.right;
  const int a = reg->first, b = reg->second;
  if (k < 0 || k > std::min(m, n))
    throw std::invalid_argument("csikvari_derivation_check: k out of range");

  std::vector<BoundReport> out;

  // (i) a^{m-k} mu_k = sum_{|S|=k} (d^S p_M)(1), exact.
  {
    Rat lhs = rat_pow(Rat(a), m - k) * Rat(count_matchings(g, k));
    PolyQ p = product_polynomial(g.biadjacency_rational());
    OperatorQ t = matching_operator<Rat>(p.degree_profile(), k);
    PolyQ applied = capkit::apply(t, p);
    Rat rhs = applied.is_zero() ? Rat(0) : applied.terms().begin()->second;
    BoundReport r;
    r.name = "derivation_identity";
    r.lhs = rat_to_double(lhs);
    r.rhs = rat_to_double(rhs);
    Rat slack = lhs - rhs;
    r.slack = rat_to_double(slack);
    r.tolerance = 0;
    r.status = slack == 0 ? ReportStatus::Holds : ReportStatus::Violated;
    if (slack != 0) r.detail = "exact slack " + rat_to_string(slack);
    out.push_back(std::move(r));
  }

  // (ii) cpc_{(m/n)1}(Symb) = cpc_m(diag Symb), numeric.
  MatchingSymbolResult sym = matching_operator_symbol(n, k, b);
  {
    PolyD symb = to_float(sym.direct);
    std::vector<double> alpha(n, double(m) / n);
    double lhs = capacity_value(symb, alpha, opts);
    double rhs = capacity_value(to_float(sym.diagonal), {double(m)}, opts);
    out.push_back(make_identity_report("symmetric_diagonalization_reduction",
                                       lhs, rhs, 1e-8));
  }

  // (iii) assembled chain vs the closed-form bound, 1e-10 relative.
  {
    const double N = double(n) * b;
    double abar = double(m) / n;
    double factor_log =
        n * (xlogx(abar) + xlogx(b - abar) - xlogx(double(b)));
    // cpc_m(z^k (1+z)^{N-k}) in closed form; N == m degenerates to the
    // boundary vertex with capacity 1.
    double cpc_log = 0;
    if (N > m) {
      if (m - k > 0) cpc_log += (m - k) * std::log((N - m) / double(m - k));
      cpc_log += (N - k) * std::log((N - k) / (N - m));
    }
    double symbol_log = k * std::log(double(b)) + lchoose(n, k) + cpc_log;
    double assembled_log = (k - m) * std::log(double(a)) + factor_log +
                           symbol_log + m * std::log(double(a));
    double assembled = std::exp(assembled_log);
    double closed = csikvari_bound(m, n, a, b, k);
    out.push_back(
        make_identity_report("assembled_bound", assembled, closed, 1e-10));
  }
  return out;
}

}  // namespace capkit
