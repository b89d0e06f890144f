#include "rat.hpp"

#include <cctype>

namespace pibound {

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    for (char c : s) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
            throw std::invalid_argument("bad rational literal: " + s);
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string rat_to_decimal(const Rat& r, int digits) {
    if (digits < 0) throw std::invalid_argument("negative digit count");
    Int num = r.get_num();
    Int den = r.get_den();
    bool neg = num < 0;
    if (neg) num = -num;
    Int scale = int_pow(10, static_cast<unsigned long>(digits));
    // round half away from zero: floor((2*num*scale + den) / (2*den))
    Int scaled = (2 * num * scale + den) / (2 * den);
    Int whole = scaled / scale;
    Int frac = scaled % scale;
    std::string out = (neg && scaled != 0 ? "-" : "") + whole.get_str();
    if (digits > 0) {
        std::string f = frac.get_str();
        out += "." + std::string(static_cast<size_t>(digits) - f.size(), '0') + f;
    }
    return out;
}

bool rel_close(const Rat& x, const Rat& ref, const Rat& tol) {
    Rat diff = x - ref;
    if (diff < 0) diff = -diff;
    Rat mag = ref < 0 ? Rat(-ref) : ref;
    return diff <= tol * mag;
}

Rat rat_pow(const Rat& base, unsigned long e) {
    Rat out;
    mpz_pow_ui(out.get_num().get_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(out.get_den().get_mpz_t(), base.get_den().get_mpz_t(), e);
    out.canonicalize();
    return out;
}

Int int_pow(const Int& base, unsigned long e) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

Int factorial(unsigned long m) {
    Int out;
    mpz_fac_ui(out.get_mpz_t(), m);
    return out;
}

Rat uniform_rational(std::mt19937_64& rng, const Rat& lo, const Rat& hi, unsigned long den) {
    if (!(lo < hi)) throw std::invalid_argument("uniform_rational: empty interval");
    Int d(static_cast<long>(den));
    // smallest/largest numerators with n/d strictly inside (lo, hi)
    auto bounds = [&](const Int& dd, Int& nlo, Int& nhi) {
        Rat l = lo * Rat(dd);
        Rat h = hi * Rat(dd);
        mpz_fdiv_q(nlo.get_mpz_t(), l.get_num().get_mpz_t(), l.get_den().get_mpz_t());
        nlo += 1;  // > lo
        mpz_cdiv_q(nhi.get_mpz_t(), h.get_num().get_mpz_t(), h.get_den().get_mpz_t());
        nhi -= 1;  // < hi
    };
    Int nlo, nhi;
    bounds(d, nlo, nhi);
    while (nlo > nhi) {  // interval narrower than 1/den
        d *= 10;
        bounds(d, nlo, nhi);
    }
    Int span = nhi - nlo + 1;
    // rejection-free enough: span fits in 64 bits for every use in this project
    unsigned long s = span.fits_ulong_p() ? span.get_ui() : 0;
    if (s == 0) throw std::runtime_error("uniform_rational: span too large");
    std::uniform_int_distribution<unsigned long> pick(0, s - 1);
    Rat out(nlo + Int(static_cast<long>(pick(rng))), d);
    out.canonicalize();
    return out;
}

}  // namespace pibound
