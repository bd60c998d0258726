#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace emd {

// Exact rational arithmetic for distortion and rate accounting. All
// distortion values in this library are carried as rationals end to end;
// floating point never touches them.
using Rational = boost::rational<long long>;

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

inline double to_double(const Rational& r) {
    return boost::rational_cast<double>(r);
}

inline std::string to_string(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Accepts "3", "1/4", "-2/7", and exact decimals like "0.25".
// Whitespace and trailing garbage are rejected.
inline Rational parse_rational(const std::string& s) {
    const auto whole = [&](const std::string& t) {
        std::size_t pos = 0;
        const long long v = std::stoll(t, &pos);
        if (pos != t.size()) throw std::invalid_argument("trailing characters");
        return v;
    };
    try {
        if (const auto slash = s.find('/'); slash != std::string::npos) {
            const long long num = whole(s.substr(0, slash));
            const long long den = whole(s.substr(slash + 1));
            if (den == 0) throw std::invalid_argument("zero denominator");
            return Rational(num, den);
        }
        if (const auto dot = s.find('.'); dot != std::string::npos) {
            const std::string frac = s.substr(dot + 1);
            if (frac.empty() || frac.size() > 15)
                throw std::invalid_argument("unsupported decimal");
            long long den = 1;
            for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
            const std::string head = s.substr(0, dot);
            const long long ip = head.empty() || head == "-" ? 0 : whole(head);
            const long long fp = whole(frac);
            if (fp < 0) throw std::invalid_argument("malformed fraction digits");
            const bool neg = !head.empty() && head[0] == '-';
            const long long num = ip * den + (neg ? -fp : fp);
            return Rational(num, den);
        }
        return Rational(whole(s));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed rational: '" + s + "'");
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational: '" + s + "'");
    }
}

}  // namespace emd
