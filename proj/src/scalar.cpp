#include "qvm/scalar.hpp"

#include <cctype>
#include <ostream>

namespace qvm {

const char* error_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NonInvertibleConstantTerm: return "NonInvertibleConstantTerm";
    case ErrorKind::NotSemisimpleLeading: return "NotSemisimpleLeading";
    case ErrorKind::TopCoefficientZero: return "TopCoefficientZero";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::NegativeTargetDimension: return "NegativeTargetDimension";
    case ErrorKind::OrbitAssertionFailed: return "OrbitAssertionFailed";
    case ErrorKind::NotIrregularPole: return "NotIrregularPole";
    case ErrorKind::EmptySpace: return "EmptySpace";
    case ErrorKind::TraceConditionViolated: return "TraceConditionViolated";
    case ErrorKind::NonGeneric: return "NonGeneric";
    case ErrorKind::GraphMismatch: return "GraphMismatch";
    case ErrorKind::Parse: return "ParseError";
    }
    return "Error";
}

namespace {

Rat parse_rational(std::string_view s, bool* reduced) {
    if (s.empty()) fail(ErrorKind::Parse, "empty number");
    size_t i = 0;
    if (s[0] == '+' || s[0] == '-') i = 1;
    bool slash = false;
    bool digit_before = false, digit_after = false;
    for (size_t k = i; k < s.size(); ++k) {
        char c = s[k];
        if (c == '/') {
            if (slash) fail(ErrorKind::Parse, "bad rational '" + std::string(s) + "'");
            slash = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            (slash ? digit_after : digit_before) = true;
        } else {
            fail(ErrorKind::Parse, "bad rational '" + std::string(s) + "'");
        }
    }
    if (!digit_before || (slash && !digit_after)) fail(ErrorKind::Parse, "bad rational '" + std::string(s) + "'");
    std::string txt(s[0] == '+' ? s.substr(1) : s);
    Rat q;
    q.set_str(txt, 10);
    if (sgn(q.get_den()) == 0) fail(ErrorKind::Parse, "zero denominator in '" + std::string(s) + "'");
    Rat before = q;
    q.canonicalize();
    if (reduced && (before.get_num() != q.get_num() || before.get_den() != q.get_den())) *reduced = false;
    return q;
}

std::string strip(std::string_view s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

} // namespace

Gauss Gauss::parse(std::string_view raw, bool* reduced) {
    if (reduced) *reduced = true;
    std::string s = strip(raw);
    if (s.empty()) fail(ErrorKind::Parse, "empty scalar");
    if (s.back() != 'i') return Gauss(parse_rational(s, reduced));
    s.pop_back();
    size_t split = std::string::npos;
    for (size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/') {
            split = k;
            break;
        }
    }
    std::string re_txt = split == std::string::npos ? "" : s.substr(0, split);
    std::string im_txt = split == std::string::npos ? s : s.substr(split);
    Rat re = re_txt.empty() ? Rat(0) : parse_rational(re_txt, reduced);
    Rat im;
    if (im_txt.empty() || im_txt == "+")
        im = 1;
    else if (im_txt == "-")
        im = -1;
    else
        im = parse_rational(im_txt, reduced);
    return Gauss(re, im);
}

std::string Gauss::str() const {
    if (sgn(im_) == 0) return re_.get_str();
    std::string im;
    if (im_ == 1)
        im = "i";
    else if (im_ == -1)
        im = "-i";
    else
        im = im_.get_str() + "i";
    if (sgn(re_) == 0) return im;
    if (im[0] != '-') im = "+" + im;
    return re_.get_str() + im;
}

std::ostream& operator<<(std::ostream& os, const Gauss& g) { return os << g.str(); }

} // namespace qvm
