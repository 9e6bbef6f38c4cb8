#pragma once

#include "capkit/bipartite.hpp"
#include "capkit/bound_report.hpp"
#include "capkit/capacity.hpp"
#include "capkit/linear_operator.hpp"
#include "capkit/matrix.hpp"

namespace capkit {

// log of the matching lower bound for (a,b)-biregular bipartite graphs with
// m left and n right vertices:
//   mu_k >= C(n,k) (ab)^k m^m (ma-k)^{ma-k} / ((ma)^{ma} (m-k)^{m-k}).
// All callers share this accumulation, so families that coincide
// analytically coincide bit for bit.
double csikvari_log_bound(int m, int n, int a, int b, int k);
double csikvari_bound(int m, int n, int a, int b, int k);

// Same bound as an exact rational; guarded to m*a <= 64 to keep the integer
// powers tame.
Rat csikvari_bound_exact(int m, int n, int a, int b, int k);

// Perfect-matching specialization for d-regular graphs on n + n vertices,
// evaluated through the shared log path with m=n, a=b=d.
double schrijver_bound(int n, int d, int k);

// |cpc_{(1,..,1)}(p_M) - 1| <= tol for a doubly stochastic M.
BoundReport doubly_stochastic_capacity_check(const MatD& m, double tol = 1e-6,
                                             const CapacityOptions& opts = {});

// cpc_{(m/n,..,m/n)}(p_M) = a^m (relative tol) for row sums a, column sums b.
BoundReport ab_stochastic_capacity_check(const MatD& m, double a, double b,
                                         double tol = 1e-6,
                                         const CapacityOptions& opts = {});

// Van der Waerden chain on a square rational matrix: the permanent computed
// by Ryser and by iterated derivative-at-zero operators (exact equality),
// the telescoping factor identity prod_{k=2}^n ((k-1)/k)^{k-1} = n!/n^n
// (exact), and the numeric bound per(M) >= n!/n^n cpc_{(1,..,1)}(p_M).
struct VdwChainResult {
  Rat permanent_ryser;
  Rat permanent_operator;
  bool operator_route_matches = false;
  bool product_identity_exact = false;
  Rat bound_factor;  // n!/n^n
  BoundReport bound;
};
VdwChainResult vdw_chain(const MatQ& m, double tol = 1e-7,
                         const CapacityOptions& opts = {});

// Symbol of the matching operator for the uniform profile (b,...,b) on n
// variables, by two routes: through the operator machinery and through the
// closed form b^k sum_{|S|=k} z^S (1+z)^{lambda-S}.  Both collapse on the
// diagonal to b^k C(n,k) z^k (1+z)^{nb-k}.  All comparisons are exact.
struct MatchingSymbolResult {
  PolyQ direct;                 // symbol_bounded(matching_operator)
  PolyQ closed;                 // expanded closed form
  PolyQ diagonal;               // b^k C(n,k) z^k (1+z)^{nb-k}
  bool identity_exact = false;  // direct == closed
  bool diagonal_exact = false;  // diagonalize(direct) == diagonal
};
MatchingSymbolResult matching_operator_symbol(int n, int k, int b);

// The three links of the matching-bound derivation on a biregular graph:
//   (i)   a^{m-k} mu_k = sum_{|S|=k} (d^S p_M)(1), exactly in rationals;
//   (ii)  the symbol capacity reduces to its diagonal restriction,
//         cpc_{(m/n)1}(Symb) = cpc_m(diag Symb), numerically;
//   (iii) the assembled chain equals csikvari_bound to 1e-10 relative.
std::vector<BoundReport> csikvari_derivation_check(const BipartiteGraph& g,
                                                   int k,
                                                   const CapacityOptions& opts = {});

}  // namespace capkit
