#include "starmod/rational.hpp"

#include <cctype>

namespace starmod {

namespace {

bool valid_rational_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t pos = 0;
    if (s[pos] == '+' || s[pos] == '-') ++pos;
    bool digits = false, slash = false, digits_after = false;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            (slash ? digits_after : digits) = true;
        } else if (c == '/' && !slash && digits) {
            slash = true;
        } else {
            return false;
        }
    }
    return digits && (!slash || digits_after);
}

std::string strip_spaces(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

} // namespace

Rational rational_from_string(const std::string& s) {
    std::string t = strip_spaces(s);
    if (!valid_rational_token(t)) throw ParseError("invalid rational: '" + s + "'");
    if (!t.empty() && t[0] == '+') t = t.substr(1);
    Rational r(t);
    if (r.get_den() == 0) throw ParseError("zero denominator in rational: '" + s + "'");
    r.canonicalize();
    return r;
}

std::string rational_to_string(const Rational& r) {
    return r.get_str();
}

bool rational_is_integer(const Rational& r) {
    return r.get_den() == 1;
}

std::string GaussianRational::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    if (re_ != 0) out = rational_to_string(re_);
    if (im_ != 0) {
        if (im_ > 0 && !out.empty()) out += "+";
        out += rational_to_string(im_) + " i";
    }
    return out;
}

GaussianRational GaussianRational::from_string(const std::string& s) {
    std::string t = strip_spaces(s);
    if (t.empty()) throw ParseError("empty Gaussian rational");
    bool has_i = !t.empty() && t.back() == 'i';
    if (has_i) t.pop_back();
    if (!has_i) {
        return GaussianRational(rational_from_string(t));
    }
    // split "a/b+c/d" into real part and (signed) imaginary part; signs only
    // ever follow a digit when they separate the two parts
    std::size_t split = std::string::npos;
    for (std::size_t pos = 1; pos < t.size(); ++pos) {
        if ((t[pos] == '+' || t[pos] == '-') &&
            std::isdigit(static_cast<unsigned char>(t[pos - 1]))) {
            split = pos;
        }
    }
    std::string re_part, im_part;
    if (split == std::string::npos) {
        im_part = t;
    } else {
        re_part = t.substr(0, split);
        im_part = t.substr(split);
        if (!im_part.empty() && im_part[0] == '+') im_part = im_part.substr(1);
    }
    if (im_part.empty() || im_part == "+") im_part = "1";
    if (im_part == "-") im_part = "-1";
    Rational re = re_part.empty() ? Rational(0) : rational_from_string(re_part);
    Rational im = rational_from_string(im_part);
    return GaussianRational(std::move(re), std::move(im));
}

} // namespace starmod
