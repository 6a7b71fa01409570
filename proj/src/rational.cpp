#include "padic/rational.hpp"

#include <algorithm>
#include <cctype>

#include "padic/errors.hpp"

namespace padic {

Rational parse_rational(const std::string& text) {
    const auto valid = [](const std::string& s) {
        if (s.empty()) return false;
        const std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        return start < s.size() &&
               std::all_of(s.begin() + static_cast<long>(start), s.end(), [](unsigned char c) { return std::isdigit(c); });
    };
    const auto slash = text.find('/');
    const std::string num = text.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!valid(num) || !valid(den) || den[0] == '-' || den[0] == '+') {
        throw InvalidInput("'" + text + "' is not a rational of the form a/b");
    }
    mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
    mpz_class d(den, 10);
    if (d == 0) throw InvalidInput("'" + text + "' has a zero denominator");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_fraction_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational pow(const Rational& base, unsigned exponent) {
    Rational result = 1;
    for (unsigned i = 0; i < exponent; ++i) result *= base;
    return result;
}

} // namespace padic
