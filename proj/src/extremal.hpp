#pragma once

#include <string>

#include "cycles.hpp"
#include "digraph.hpp"
#include "rat.hpp"

namespace pibound {

// alpha(k) = (k-1 + sqrt((k-1)^2 + 4))/2, the positive root of
// x^2 - (k-1)x - 1. It is irrational for every k >= 2, and its powers
// satisfy alpha^n = S(n-1)*alpha + S(n-2), which keeps every comparison
// against rationals exact.

/// S(n): S(0)=1, S(1)=k-1, S(n) = (k-1)S(n-1) + S(n-2).
Int s_seq(int k, int n);
/// T(n): T(0)=1, T(1)=1, T(n) = T(n-1) + (k-1)T(n-2).
Int t_seq(int k, int n);
/// L(n) = alpha^n + beta^n (beta the conjugate root): L(0)=2, L(1)=k-1.
Int lucas_seq(int k, int n);

/// ceil(alpha(k)^n), computed exactly: L(n) for even n, L(n)+1 for odd.
Int ceil_alpha_pow(int k, int n);

/// Sign of c * alpha(k)^e - m, exactly (c >= 0 rational, m rational).
int cmp_scaled_alpha_pow(int k, int e, const Rat& c, const Rat& m);

/// Whether count <= coef * ((k+1)!)^(p/(k+1)), exactly (count >= 0, coef > 0).
bool le_scaled_factorial_pow(const Int& count, const Rat& coef, int p, int k);

/// alpha(k) rendered to `digits` decimal places.
std::string alpha_decimal(int k, int digits);

// The extremal families. G_n is the circulant with shift-1 and shift-2
// edges; G_{n,k} puts multiplicity k-1 on the shift-1 edges, G'_{n,k} on
// the shift-2 edges. G_example interleaves l hub vertices with l
// k-cliques in a big cycle.
Digraph gen_gn(int n);
Digraph gen_gnk(int n, int k);
Digraph gen_gpnk(int n, int k);
Digraph gen_gexample(int l, int k);

/// Cycle counts of the families in closed form.
Int cycles_gnk_closed(int n, int k);
Int cycles_gpnk_closed(int n, int k);
Int cycles_gexample_closed(int l, int k);

enum class Bound {
    MkBound,           // (k+1)!^(n/(k+1))
    FkUpper,           // 5 alpha^n
    FkLower,           // ceil(alpha^n)
    StarBound,         // (k-2+6^(1/3))^n
    N1Bound,           // 5 n^2 k alpha^(n-1)
    N2Bound,           // n^2 k (k+1)!^((n-1)/(k+1))
    ArbitraryPiBound,  // 5 n^3 k^2 alpha^(n-1)
    MaxGainPiBound,    // (n+1) n^2 k (k+1)!^((n-1)/(k+1))
};

const char* bound_name(Bound b);

/// Numeric value of the bound to `digits` significant decimal digits.
std::string bound_eval(Bound b, int n, int k, int digits = 12);

/// Exact bound comparisons used by the verification suites.
bool le_mk_bound(const Int& count, int n, int k);       // count <= (k+1)!^(n/(k+1))
bool le_fk_upper(const Int& count, int n, int k);       // count <= 5 alpha^n
bool le_n1_bound(const Int& count, int n, int k);       // count <= 5 n^2 k alpha^(n-1)
bool le_n2_bound(const Int& count, int n, int k);       // count <= n^2 k (k+1)!^((n-1)/(k+1))
bool le_arbitrary_pi_bound(long steps, int n, int k);   // <= 5 n^3 k^2 alpha^(n-1)
bool le_max_gain_pi_bound(long steps, int n, int k);    // <= (n+1) n^2 k (k+1)!^((n-1)/(k+1))

/// Exhaustive maxima over the graph classes (desk scale only).
Int brute_mk(int n, int k, const Int& enum_cap = Int(100000000));
Int brute_fk(int n, int k, const Int& enum_cap = Int(100000000));

}  // namespace pibound
