#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "cycles.hpp"
#include "extremal.hpp"
#include "verify.hpp"

using namespace pibound;

namespace {

Rat decimal_to_rat(const std::string& s) {
    std::string digits;
    int scale = 0;
    bool frac = false;
    for (char c : s) {
        if (c == '.') {
            frac = true;
            continue;
        }
        digits += c;
        if (frac) ++scale;
    }
    Rat r(Int(digits, 10), int_pow(10, static_cast<unsigned long>(scale)));
    r.canonicalize();
    return r;
}

}  // namespace

TEST_CASE("recurrences") {
    const long fib[] = {1, 1, 2, 3, 5, 8, 13, 21};
    for (int n = 0; n < 8; ++n) {
        CHECK(s_seq(2, n) == fib[n]);
        CHECK(t_seq(2, n) == fib[n]);  // both collapse at k = 2
    }
    CHECK(s_seq(3, 4) == 29);
    CHECK(t_seq(3, 0) == 1);
    CHECK(t_seq(3, 1) == 1);
    CHECK(t_seq(3, 2) == 3);
}

TEST_CASE("alpha is the positive quadratic root") {
    CHECK(alpha_decimal(2, 12).substr(0, 9) == "1.6180339");
    CHECK(alpha_decimal(3, 12).substr(0, 9) == "2.4142135");  // 1 + sqrt(2)

    // residual of the defining polynomial at a 45-digit approximation
    for (int k = 2; k <= 6; ++k) {
        Rat a = decimal_to_rat(alpha_decimal(k, 45));
        Rat residual = a * a - Rat(k - 1) * a - 1;
        if (residual < 0) residual = -residual;
        CHECK(residual < Rat(Int(1), int_pow(10, 30)));
    }
}

TEST_CASE("exact ceil of alpha powers") {
    CHECK(ceil_alpha_pow(2, 1) == 2);
    CHECK(ceil_alpha_pow(2, 5) == 12);   // phi^5 = 11.09...
    CHECK(ceil_alpha_pow(3, 4) == 34);   // (1+sqrt 2)^4 = 33.97...
    for (int k = 2; k <= 5; ++k)
        for (int n = 3; n <= 12; ++n) CHECK(ceil_alpha_pow(k, n) == cycles_gnk_closed(n, k));
}

TEST_CASE("surd comparisons agree with the ceiling") {
    for (int k = 2; k <= 5; ++k)
        for (int n = 1; n <= 10; ++n) {
            Int c = ceil_alpha_pow(k, n);
            CHECK(cmp_scaled_alpha_pow(k, n, Rat(1), Rat(c)) < 0);       // alpha^n < ceil
            CHECK(cmp_scaled_alpha_pow(k, n, Rat(1), Rat(c - 1)) > 0);   // alpha^n > ceil-1
        }
    CHECK(cmp_scaled_alpha_pow(2, 0, Rat(3), Rat(3)) == 0);
}

TEST_CASE("family generators match their figures") {
    Digraph g63 = gen_gnk(6, 3);
    for (int i = 0; i < 6; ++i) {
        CHECK(g63.mult(i, (i + 1) % 6) == 2);
        CHECK(g63.mult(i, (i + 2) % 6) == 1);
        CHECK(g63.outdegree(i) == 3);
    }
    CHECK(gen_gnk(5, 2) == gen_gn(5));
    CHECK(gen_gpnk(5, 2) == gen_gn(5));

    Digraph ge = gen_gexample(3, 3);
    CHECK(ge.n_vertices() == 12);
    CHECK_FALSE(ge.has_multi_edge());
    CHECK_FALSE(ge.has_self_loop());
    // hub 0 feeds its clique, clique feeds the next hub, never its own
    CHECK(ge.mult(0, 1) == 1);
    CHECK(ge.mult(1, 2) == 1);
    CHECK(ge.mult(2, 1) == 1);
    CHECK(ge.mult(1, 4) == 1);
    CHECK(ge.mult(9, 0) == 1);  // last unit's clique wraps to hub 0
    CHECK(ge.mult(9, 8) == 0);
    CHECK(ge.mult(0, 4) == 0);
    CHECK(class_contains(GraphClass::simple(12, 3), ge));
}

TEST_CASE("closed forms equal enumeration") {
    for (int k = 2; k <= 4; ++k)
        for (int n = 3; n <= 7; ++n) {
            CHECK(count_cycles(gen_gnk(n, k)) == cycles_gnk_closed(n, k));
            CHECK(count_cycles(gen_gpnk(n, k)) == cycles_gpnk_closed(n, k));
        }
    CHECK(cycles_gexample_closed(1, 2) == 5);
    CHECK(count_cycles(gen_gexample(1, 2)) == 5);
    for (int l = 1; l <= 2; ++l)
        for (int k = 2; k <= 3; ++k)
            CHECK(count_cycles(gen_gexample(l, k)) == cycles_gexample_closed(l, k));
}

TEST_CASE("cycle-count ordering of the two assignments") {
    for (int k = 2; k <= 8; ++k)
        for (int n = 3; n <= 20; ++n) CHECK(cycles_gnk_closed(n, k) >= cycles_gpnk_closed(n, k));
}

TEST_CASE("bound evaluation") {
    CHECK(std::abs(std::strtod(bound_eval(Bound::MkBound, 3, 2).c_str(), nullptr) - 6.0) < 1e-9);
    CHECK(std::abs(std::strtod(bound_eval(Bound::FkUpper, 0, 5).c_str(), nullptr) - 5.0) < 1e-9);
    CHECK(std::abs(std::strtod(bound_eval(Bound::StarBound, 2, 2).c_str(), nullptr) - 3.30193) <
          1e-4);
    CHECK(bound_eval(Bound::FkLower, 5, 2) == "12");

    // monotone nondecreasing in n for fixed k
    for (Bound b : {Bound::MkBound, Bound::FkUpper, Bound::FkLower, Bound::StarBound,
                    Bound::N1Bound, Bound::N2Bound, Bound::ArbitraryPiBound, Bound::MaxGainPiBound})
        for (int k = 2; k <= 4; ++k) {
            double prev = -1;
            for (int n = 1; n <= 10; ++n) {
                double v = std::strtod(bound_eval(b, n, k).c_str(), nullptr);
                CHECK(v >= 0);
                CHECK(v >= prev - 1e-9);
                prev = v;
            }
        }
}

TEST_CASE("exact factorial-power comparisons") {
    CHECK(le_mk_bound(Int(6), 3, 2));        // 6 <= 6!^... = 6 exactly
    CHECK_FALSE(le_mk_bound(Int(7), 3, 2));
    CHECK(le_mk_bound(Int(5), 3, 2));
    CHECK(le_fk_upper(Int(12), 5, 2));       // F_2(5) candidates below 5 phi^5 = 55.4
    CHECK(le_fk_upper(Int(55), 5, 2));
    CHECK_FALSE(le_fk_upper(Int(56), 5, 2));
}

TEST_CASE("brute-force maxima") {
    CHECK(brute_mk(3, 2) == 5);
    CHECK(brute_fk(1, 2) == 2);
    CHECK(brute_fk(1, 3) == 3);
    CHECK(brute_fk(2, 2) == 4);  // max(2k, (k-1)^2 + 2) at k = 2
    CHECK(brute_fk(2, 3) == 6);  // max(6, 6) at k = 3

    // growth by appending a full self-loop
    for (int n = 2; n <= 4; ++n) CHECK(brute_fk(n, 2) >= brute_fk(n - 1, 2) + 2);
    for (int n = 2; n <= 3; ++n) CHECK(brute_fk(n, 3) >= brute_fk(n - 1, 3) + 3);

    // sandwich against the closed bounds
    for (int n = 1; n <= 4; ++n) {
        Int f = brute_fk(n, 2);
        CHECK(f >= ceil_alpha_pow(2, n));
        CHECK(le_fk_upper(f, n, 2));
        CHECK(le_mk_bound(brute_mk(n, 2), n, 2));
    }
    for (int n = 1; n <= 3; ++n) {
        Int f = brute_fk(n, 3);
        CHECK(f >= ceil_alpha_pow(3, n));
        CHECK(le_fk_upper(f, n, 3));
        CHECK(le_mk_bound(brute_mk(n, 3), n, 3));
    }
}

TEST_CASE("component-sum bound for circulant unions") {
    // unions whose components are the two extremal assignments
    auto union_count = [](const std::vector<Digraph>& parts) {
        Int total = 0;
        for (const Digraph& p : parts) total += count_cycles(p);
        return total;
    };
    struct Case {
        std::vector<Digraph> parts;
        int n;
        int k;
    };
    std::vector<Case> cases;
    cases.push_back({{gen_gnk(4, 2)}, 4, 2});
    cases.push_back({{gen_gnk(5, 2)}, 5, 2});
    cases.push_back({{gen_gpnk(5, 3)}, 5, 3});
    cases.push_back({{gen_gnk(4, 2), gen_gnk(5, 2)}, 9, 2});
    cases.push_back({{gen_gnk(4, 3), gen_gpnk(4, 3)}, 8, 3});
    cases.push_back({{gen_gnk(4, 2), gen_gpnk(4, 2)}, 8, 2});
    for (const auto& c : cases) {
        Int total = union_count(c.parts);
        bool brute_available = (c.k == 2 && c.n - 1 <= 4) || (c.k == 3 && c.n - 1 <= 3);
        if (brute_available) {
            CHECK(total <= Int(c.k - 1) * brute_fk(c.n - 1, c.k) + brute_fk(c.n - 2, c.k));
        } else {
            // (k-1) 5a^(n-1) + 5a^(n-2) collapses to 5a^n by the defining equation
            CHECK(le_fk_upper(total, c.n, c.k));
        }
    }
}

TEST_CASE("structure lemma sweep at n=4") {
    StructureScan scan = lemma_structure_scan(4);
    CHECK(scan.pass);
    CHECK(scan.equality_cases > 0);
    CHECK(scan.admissible > 0);
}
