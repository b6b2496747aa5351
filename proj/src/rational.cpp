#include "homdens/rational.hpp"

#include <stdexcept>

namespace homdens {

Int int_pow(const Int& base, unsigned long exp) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

Rat rat_pow(const Rat& base, unsigned long exp) {
    Rat out;
    mpz_pow_ui(mpq_numref(out.get_mpq_t()), mpq_numref(base.get_mpq_t()), exp);
    mpz_pow_ui(mpq_denref(out.get_mpq_t()), mpq_denref(base.get_mpq_t()), exp);
    out.canonicalize();
    return out;
}

Rat parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        std::string num = text.substr(0, slash), den = text.substr(slash + 1);
        Int n, d;
        if (mpz_set_str(n.get_mpz_t(), num.c_str(), 10) != 0 ||
            mpz_set_str(d.get_mpz_t(), den.c_str(), 10) != 0)
            throw std::invalid_argument("bad rational literal: " + text);
        if (d == 0) throw std::invalid_argument("zero denominator: " + text);
        Rat q(n, d);
        q.canonicalize();
        return q;
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        size_t frac_digits = text.size() - dot - 1;
        Int n;
        if (digits.empty() || mpz_set_str(n.get_mpz_t(), digits.c_str(), 10) != 0)
            throw std::invalid_argument("bad decimal literal: " + text);
        Rat q(n, int_pow(10, frac_digits));
        q.canonicalize();
        return q;
    }
    Int n;
    if (mpz_set_str(n.get_mpz_t(), text.c_str(), 10) != 0)
        throw std::invalid_argument("bad integer literal: " + text);
    return Rat(n);
}

std::string rat_str(const Rat& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double rat_double(const Rat& q) { return q.get_d(); }

Int falling_factorial(long n, int k) {
    Int out = 1;
    for (int i = 0; i < k; ++i) out *= Int(n - i);
    return out;
}

Int binomial(long n, int k) {
    if (k < 0 || n < k) return 0;
    Int out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return out;
}

Int surjection_count(int k, int j) {
    if (j < 0 || j > k) return 0;
    Int total = 0;
    for (int i = 0; i <= j; ++i) {
        Int term = binomial(j, i) * int_pow(Int(j - i), k);
        if (i % 2 == 0)
            total += term;
        else
            total -= term;
    }
    return total;
}

}  // namespace homdens
