#include "extremal.hpp"

#include <mpfr.h>

#include <algorithm>
#include <vector>

namespace pibound {

namespace {

Int linear_recurrence(int k, int n, const Int& a0, const Int& a1, bool s_form) {
    if (k < 2) throw std::invalid_argument("k must be >= 2");
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    if (n == 0) return a0;
    Int prev = a0, cur = a1;
    for (int i = 2; i <= n; ++i) {
        // S-form: x(n) = (k-1)x(n-1) + x(n-2); T-form: x(n) = x(n-1) + (k-1)x(n-2)
        Int next = s_form ? Int((k - 1) * cur + prev) : Int(cur + (k - 1) * prev);
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace

Int s_seq(int k, int n) { return linear_recurrence(k, n, 1, Int(k - 1), true); }
Int t_seq(int k, int n) { return linear_recurrence(k, n, 1, 1, false); }
Int lucas_seq(int k, int n) { return linear_recurrence(k, n, 2, Int(k - 1), true); }

Int ceil_alpha_pow(int k, int n) {
    if (k < 2 || n < 0) throw std::invalid_argument("ceil_alpha_pow: need k >= 2, n >= 0");
    if (n == 0) return 1;
    // alpha^n = L(n) - beta^n with beta in (-1, 0)
    return lucas_seq(k, n) + (n % 2 == 1 ? 1 : 0);
}

int cmp_scaled_alpha_pow(int k, int e, const Rat& c, const Rat& m) {
    if (k < 2 || e < 0) throw std::invalid_argument("cmp_scaled_alpha_pow: need k >= 2, e >= 0");
    if (c < 0) throw std::invalid_argument("cmp_scaled_alpha_pow: need c >= 0");
    if (e == 0) return cmp(c, m);
    // c*alpha^e = A*alpha + B with A = c*S(e-1), B = c*S(e-2) (S(-1) = 0)
    Rat A = c * Rat(s_seq(k, e - 1));
    Rat B = e >= 2 ? Rat(c * Rat(s_seq(k, e - 2))) : Rat(0);
    // A*alpha + B - m = P + Q*sqrt(D), D = (k-1)^2 + 4
    Rat P = A * Rat(k - 1) / 2 + B - m;
    Rat Q = A / 2;
    Int D((k - 1) * (k - 1) + 4);
    if (Q == 0) return cmp(P, Rat(0));
    if (P >= 0) return 1;
    int s = cmp(Q * Q * Rat(D), P * P);
    return s;
}

bool le_scaled_factorial_pow(const Int& count, const Rat& coef, int p, int k) {
    if (count < 0 || coef <= 0 || p < 0 || k < 2)
        throw std::invalid_argument("le_scaled_factorial_pow: bad arguments");
    // count <= coef * F^(p/(k+1))  <=>  (count*den)^(k+1) <= num^(k+1) * F^p
    unsigned long e = static_cast<unsigned long>(k + 1);
    Int lhs = int_pow(count * coef.get_den(), e);
    Int rhs = int_pow(coef.get_num(), e) * int_pow(factorial(e), static_cast<unsigned long>(p));
    return lhs <= rhs;
}

std::string alpha_decimal(int k, int digits) {
    if (k < 2) throw std::invalid_argument("alpha_decimal: k must be >= 2");
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(digits * 4 + 64);
    mpfr_t d, a;
    mpfr_init2(d, prec);
    mpfr_init2(a, prec);
    mpfr_set_si(d, static_cast<long>(k - 1) * (k - 1) + 4, MPFR_RNDN);
    mpfr_sqrt(d, d, MPFR_RNDN);
    mpfr_add_si(a, d, k - 1, MPFR_RNDN);
    mpfr_div_si(a, a, 2, MPFR_RNDN);
    char buf[256];
    mpfr_snprintf(buf, sizeof buf, "%.*Rf", digits, a);
    mpfr_clear(d);
    mpfr_clear(a);
    return buf;
}

Digraph gen_gn(int n) {
    if (n < 3) throw std::invalid_argument("gen_gn: n must be >= 3");
    Digraph g(n);
    for (int i = 0; i < n; ++i) {
        g.set_mult(i, (i + 1) % n, 1);
        g.set_mult(i, (i + 2) % n, 1);
    }
    return g;
}

Digraph gen_gnk(int n, int k) {
    if (n < 3 || k < 2) throw std::invalid_argument("gen_gnk: need n >= 3, k >= 2");
    Digraph g(n);
    for (int i = 0; i < n; ++i) {
        g.set_mult(i, (i + 1) % n, k - 1);
        g.set_mult(i, (i + 2) % n, 1);
    }
    return g;
}

Digraph gen_gpnk(int n, int k) {
    if (n < 3 || k < 2) throw std::invalid_argument("gen_gpnk: need n >= 3, k >= 2");
    Digraph g(n);
    for (int i = 0; i < n; ++i) {
        g.set_mult(i, (i + 1) % n, 1);
        g.set_mult(i, (i + 2) % n, k - 1);
    }
    return g;
}

Digraph gen_gexample(int l, int k) {
    if (l < 1 || k < 2) throw std::invalid_argument("gen_gexample: need l >= 1, k >= 2");
    auto id = [&](int i, int j) { return i * (k + 1) + j; };
    Digraph g(l * (k + 1));
    for (int i = 0; i < l; ++i) {
        for (int j = 1; j <= k; ++j) {
            g.set_mult(id(i, 0), id(i, j), 1);            // hub into its clique
            g.set_mult(id(i, j), id((i + 1) % l, 0), 1);  // clique into next hub
            for (int j2 = 1; j2 <= k; ++j2)
                if (j2 != j) g.set_mult(id(i, j), id(i, j2), 1);
        }
    }
    return g;
}

Int cycles_gnk_closed(int n, int k) {
    if (n < 3 || k < 2) throw std::invalid_argument("cycles_gnk_closed: need n >= 3, k >= 2");
    Int v = s_seq(k, n - 2) + s_seq(k, n);
    if (n % 2 == 1) v += 1;
    return v;
}

Int cycles_gpnk_closed(int n, int k) {
    if (n < 3 || k < 2) throw std::invalid_argument("cycles_gpnk_closed: need n >= 3, k >= 2");
    Int v = Int(k - 1) * t_seq(k, n - 2) + t_seq(k, n);
    if (n % 2 == 1) v += int_pow(Int(k - 1), static_cast<unsigned long>(n));
    return v;
}

Int cycles_gexample_closed(int l, int k) {
    if (l < 1 || k < 2) throw std::invalid_argument("cycles_gexample_closed: need l >= 1, k >= 2");
    Int per_unit = int_pow(2, static_cast<unsigned long>(k + 1));
    per_unit -= Int(k) * (k - 1) / 2;  // binomial(k, 2)
    per_unit -= 2 * k + 2;
    Int fact_sum = 0;  // sum_{r=0}^{k} k!/r!
    for (int r = 0; r <= k; ++r) fact_sum += factorial(static_cast<unsigned long>(k)) / factorial(static_cast<unsigned long>(r));
    return Int(l) * per_unit + int_pow(fact_sum - 1, static_cast<unsigned long>(l));
}

const char* bound_name(Bound b) {
    switch (b) {
        case Bound::MkBound: return "MkBound";
        case Bound::FkUpper: return "FkUpper";
        case Bound::FkLower: return "FkLower";
        case Bound::StarBound: return "StarBound";
        case Bound::N1Bound: return "N1Bound";
        case Bound::N2Bound: return "N2Bound";
        case Bound::ArbitraryPiBound: return "ArbitraryPiBound";
        case Bound::MaxGainPiBound: return "MaxGainPiBound";
    }
    return "?";
}

std::string bound_eval(Bound b, int n, int k, int digits) {
    if (n < 0 || k < 2) throw std::invalid_argument("bound_eval: need n >= 0, k >= 2");
    if (b == Bound::FkLower) return ceil_alpha_pow(k, n).get_str();

    mpfr_prec_t prec = static_cast<mpfr_prec_t>(digits * 4 + 64);
    mpfr_t x, t;
    mpfr_init2(x, prec);
    mpfr_init2(t, prec);

    auto set_alpha = [&](mpfr_t out) {
        mpfr_set_si(out, static_cast<long>(k - 1) * (k - 1) + 4, MPFR_RNDN);
        mpfr_sqrt(out, out, MPFR_RNDN);
        mpfr_add_si(out, out, k - 1, MPFR_RNDN);
        mpfr_div_si(out, out, 2, MPFR_RNDN);
    };
    auto set_fact_pow = [&](mpfr_t out, int p) {
        // ((k+1)!)^(p/(k+1))
        Int f = factorial(static_cast<unsigned long>(k + 1));
        mpfr_set_z(out, f.get_mpz_t(), MPFR_RNDN);
        mpfr_t e;
        mpfr_init2(e, prec);
        mpfr_set_si(e, p, MPFR_RNDN);
        mpfr_div_si(e, e, k + 1, MPFR_RNDN);
        mpfr_pow(out, out, e, MPFR_RNDN);
        mpfr_clear(e);
    };

    switch (b) {
        case Bound::MkBound:
            set_fact_pow(x, n);
            break;
        case Bound::FkUpper:
            set_alpha(x);
            mpfr_pow_si(x, x, n, MPFR_RNDN);
            mpfr_mul_si(x, x, 5, MPFR_RNDN);
            break;
        case Bound::StarBound:
            mpfr_set_si(t, 6, MPFR_RNDN);
            mpfr_cbrt(t, t, MPFR_RNDN);
            mpfr_add_si(t, t, k - 2, MPFR_RNDN);
            mpfr_pow_si(x, t, n, MPFR_RNDN);
            break;
        case Bound::N1Bound:
            set_alpha(x);
            mpfr_pow_si(x, x, n - 1, MPFR_RNDN);
            mpfr_mul_si(x, x, 5L * n * n * k, MPFR_RNDN);
            break;
        case Bound::N2Bound:
            set_fact_pow(x, n - 1);
            mpfr_mul_si(x, x, static_cast<long>(n) * n * k, MPFR_RNDN);
            break;
        case Bound::ArbitraryPiBound:
            set_alpha(x);
            mpfr_pow_si(x, x, n - 1, MPFR_RNDN);
            mpfr_mul_si(x, x, 5L * n * n * n * k * k, MPFR_RNDN);
            break;
        case Bound::MaxGainPiBound:
            set_fact_pow(x, n - 1);
            mpfr_mul_si(x, x, static_cast<long>(n + 1) * n * n * k, MPFR_RNDN);
            break;
        case Bound::FkLower:
            break;  // handled above
    }
    char buf[512];
    mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, x);
    mpfr_clear(x);
    mpfr_clear(t);
    return buf;
}

bool le_mk_bound(const Int& count, int n, int k) {
    return le_scaled_factorial_pow(count, Rat(1), n, k);
}

bool le_fk_upper(const Int& count, int n, int k) {
    return cmp_scaled_alpha_pow(k, n, Rat(5), Rat(count)) >= 0;
}

bool le_n1_bound(const Int& count, int n, int k) {
    return cmp_scaled_alpha_pow(k, n - 1, Rat(5) * n * n * k, Rat(count)) >= 0;
}

bool le_n2_bound(const Int& count, int n, int k) {
    return le_scaled_factorial_pow(count, Rat(n) * n * k, n - 1, k);
}

bool le_arbitrary_pi_bound(long steps, int n, int k) {
    return cmp_scaled_alpha_pow(k, n - 1, Rat(5) * n * n * n * k * k, Rat(static_cast<long>(steps))) >= 0;
}

bool le_max_gain_pi_bound(long steps, int n, int k) {
    return le_scaled_factorial_pow(Int(steps), Rat(n + 1) * n * n * k, n - 1, k);
}

Int brute_mk(int n, int k, const Int& enum_cap) {
    Int best = 0;
    for_each_in_class(GraphClass::simple(n, k),
                      [&](const Digraph& g) { best = std::max(best, count_cycles(g)); }, enum_cap);
    return best;
}

Int brute_fk(int n, int k, const Int& enum_cap) {
    Int best = 0;
    for_each_in_class(GraphClass::multi(n, k),
                      [&](const Digraph& g) { best = std::max(best, count_cycles(g)); }, enum_cap);
    return best;
}

}  // namespace pibound
