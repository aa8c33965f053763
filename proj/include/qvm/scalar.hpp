#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>

#include "qvm/errors.hpp"

namespace qvm {

using Rat = mpq_class;

// Element of Q(i), kept as a pair of canonical rationals.
class Gauss {
public:
    Gauss() : re_(0), im_(0) {}
    Gauss(long n) : re_(n), im_(0) {}
    Gauss(const Rat& re) : re_(re), im_(0) { re_.canonicalize(); }
    Gauss(const Rat& re, const Rat& im) : re_(re), im_(im) {
        re_.canonicalize();
        im_.canonicalize();
    }

    const Rat& re() const { return re_; }
    const Rat& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    Gauss& operator+=(const Gauss& o) {
        re_ += o.re_;
        if (sgn(o.im_) != 0) im_ += o.im_;
        return *this;
    }
    Gauss& operator-=(const Gauss& o) {
        re_ -= o.re_;
        if (sgn(o.im_) != 0) im_ -= o.im_;
        return *this;
    }
    Gauss& operator*=(const Gauss& o) {
        if (sgn(im_) == 0 && sgn(o.im_) == 0) {
            re_ *= o.re_;
            return *this;
        }
        Rat r = re_ * o.re_ - im_ * o.im_;
        Rat i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    Gauss& operator/=(const Gauss& o) { return *this *= o.inv(); }

    Gauss inv() const {
        if (is_zero()) fail(ErrorKind::NonGeneric, "division by zero");
        if (sgn(im_) == 0) return Gauss(Rat(1) / re_);
        Rat n = re_ * re_ + im_ * im_;
        return Gauss(re_ / n, -im_ / n);
    }
    Gauss conj() const { return Gauss(re_, -im_); }
    Gauss operator-() const { return Gauss(-re_, -im_); }

    friend Gauss operator+(Gauss a, const Gauss& b) { return a += b; }
    friend Gauss operator-(Gauss a, const Gauss& b) { return a -= b; }
    friend Gauss operator*(Gauss a, const Gauss& b) { return a *= b; }
    friend Gauss operator/(Gauss a, const Gauss& b) { return a /= b; }
    friend bool operator==(const Gauss& a, const Gauss& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    friend bool operator!=(const Gauss& a, const Gauss& b) { return !(a == b); }

    // Accepts "p/q", "a+bi", "-i", "3/2i". Sets *reduced=false when a fraction was not in lowest terms.
    static Gauss parse(std::string_view s, bool* reduced = nullptr);
    std::string str() const;

private:
    Rat re_, im_;
};

std::ostream& operator<<(std::ostream& os, const Gauss& g);

// Dual number over T: val + eps*tan with eps^2 = 0.
template <class T>
struct Jet {
    T val, tan;

    Jet() : val(0), tan(0) {}
    Jet(long n) : val(n), tan(0) {}
    Jet(const T& v) : val(v), tan(0) {}
    Jet(const T& v, const T& t) : val(v), tan(t) {}

    Jet& operator+=(const Jet& o) {
        val += o.val;
        tan += o.tan;
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        val -= o.val;
        tan -= o.tan;
        return *this;
    }
    Jet& operator*=(const Jet& o) {
        tan = val * o.tan + tan * o.val;
        val *= o.val;
        return *this;
    }
    Jet& operator/=(const Jet& o) {
        T iv = o.val.inv();
        tan = (tan - val * iv * o.tan) * iv;
        val *= iv;
        return *this;
    }
    Jet inv() const {
        T iv = val.inv();
        return Jet(iv, -(tan * iv * iv));
    }
    Jet operator-() const { return Jet(-val, -tan); }
    bool is_zero() const { return val.is_zero() && tan.is_zero(); }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
    friend Jet operator/(Jet a, const Jet& b) { return a /= b; }
    friend bool operator==(const Jet& a, const Jet& b) { return a.val == b.val && a.tan == b.tan; }
    friend bool operator!=(const Jet& a, const Jet& b) { return !(a == b); }
};

using GJet = Jet<Gauss>;

inline bool is_zero(const Gauss& x) { return x.is_zero(); }
inline bool is_unit(const Gauss& x) { return !x.is_zero(); }
template <class T>
bool is_zero(const Jet<T>& x) { return x.is_zero(); }
template <class T>
bool is_unit(const Jet<T>& x) { return !x.val.is_zero(); }

inline const Gauss& value_of(const Gauss& x) { return x; }
template <class T>
const T& value_of(const Jet<T>& x) { return x.val; }

template <class T>
T lift(const Gauss& g) { return T(g); }

} // namespace qvm
