#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qvm/scalar.hpp"

namespace qvm {

// Dense row-major matrix over an exact scalar ring.
template <class T>
class Mat {
public:
    Mat() : r_(0), c_(0) {}
    Mat(int r, int c) : r_(r), c_(c), a_(static_cast<size_t>(r) * c, T(0)) {
        require_shape(r >= 0 && c >= 0, "negative matrix size");
    }

    static Mat identity(int n, const T& s = T(1)) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = s;
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    bool square() const { return r_ == c_; }

    T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    bool is_zero() const {
        for (const T& x : a_)
            if (!qvm::is_zero(x)) return false;
        return true;
    }

    Mat block(int r0, int c0, int nr, int nc) const {
        require_shape(r0 >= 0 && c0 >= 0 && r0 + nr <= r_ && c0 + nc <= c_, "block out of range");
        Mat b(nr, nc);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    void set_block(int r0, int c0, const Mat& b) {
        require_shape(r0 >= 0 && c0 >= 0 && r0 + b.r_ <= r_ && c0 + b.c_ <= c_, "set_block out of range");
        for (int i = 0; i < b.r_; ++i)
            for (int j = 0; j < b.c_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    void add_block(int r0, int c0, const Mat& b) {
        require_shape(r0 >= 0 && c0 >= 0 && r0 + b.r_ <= r_ && c0 + b.c_ <= c_, "add_block out of range");
        for (int i = 0; i < b.r_; ++i)
            for (int j = 0; j < b.c_; ++j) (*this)(r0 + i, c0 + j) += b(i, j);
    }

    Mat transpose() const {
        Mat t(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    T trace() const {
        require_shape(square(), "trace of non-square matrix");
        T s(0);
        for (int i = 0; i < r_; ++i) s += (*this)(i, i);
        return s;
    }

    Mat& operator+=(const Mat& o) {
        require_shape(r_ == o.r_ && c_ == o.c_, "matrix sum shapes");
        for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        require_shape(r_ == o.r_ && c_ == o.c_, "matrix difference shapes");
        for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    Mat& operator*=(const T& s) {
        for (T& x : a_) x *= s;
        return *this;
    }
    Mat operator-() const {
        Mat m(*this);
        for (T& x : m.a_) x = -x;
        return m;
    }

    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(Mat a, const T& s) { return a *= s; }
    friend Mat operator*(const T& s, Mat a) { return a *= s; }

    friend Mat operator*(const Mat& a, const Mat& b) {
        require_shape(a.c_ == b.r_, "matrix product shapes " + std::to_string(a.r_) + "x" + std::to_string(a.c_) +
                                        " * " + std::to_string(b.r_) + "x" + std::to_string(b.c_));
        Mat m(a.r_, b.c_);
        for (int i = 0; i < a.r_; ++i)
            for (int k = 0; k < a.c_; ++k) {
                const T& x = a(i, k);
                if (qvm::is_zero(x)) continue;
                for (int j = 0; j < b.c_; ++j)
                    if (!qvm::is_zero(b(k, j))) m(i, j) += x * b(k, j);
            }
        return m;
    }

    friend bool operator==(const Mat& a, const Mat& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

private:
    int r_, c_;
    std::vector<T> a_;
};

using GMat = Mat<Gauss>;

template <class U, class T, class F>
Mat<U> map_mat(const Mat<T>& m, F f) {
    Mat<U> out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = f(m(i, j));
    return out;
}

template <class T>
Mat<T> lift_mat(const GMat& m) {
    return map_mat<T>(m, [](const Gauss& g) { return lift<T>(g); });
}

template <class T>
GMat value_mat(const Mat<T>& m) {
    return map_mat<Gauss>(m, [](const T& x) { return value_of(x); });
}

inline GMat tangent_mat(const Mat<GJet>& m) {
    return map_mat<Gauss>(m, [](const GJet& x) { return x.tan; });
}

inline Mat<GJet> make_jet(const GMat& val, const GMat& tan) {
    require_shape(val.rows() == tan.rows() && val.cols() == tan.cols(), "jet parts differ in shape");
    Mat<GJet> m(val.rows(), val.cols());
    for (int i = 0; i < val.rows(); ++i)
        for (int j = 0; j < val.cols(); ++j) m(i, j) = GJet(val(i, j), tan(i, j));
    return m;
}

template <class T>
Mat<T> hstack(const std::vector<Mat<T>>& parts, int rows) {
    int c = 0;
    for (const auto& p : parts) {
        require_shape(p.rows() == rows, "hstack row mismatch");
        c += p.cols();
    }
    Mat<T> m(rows, c);
    int off = 0;
    for (const auto& p : parts) {
        m.set_block(0, off, p);
        off += p.cols();
    }
    return m;
}

template <class T>
Mat<T> vstack(const std::vector<Mat<T>>& parts, int cols) {
    int r = 0;
    for (const auto& p : parts) {
        require_shape(p.cols() == cols, "vstack column mismatch");
        r += p.rows();
    }
    Mat<T> m(r, cols);
    int off = 0;
    for (const auto& p : parts) {
        m.set_block(off, 0, p);
        off += p.rows();
    }
    return m;
}

template <class T>
Mat<T> block_diag(const std::vector<Mat<T>>& parts) {
    int r = 0, c = 0;
    for (const auto& p : parts) {
        r += p.rows();
        c += p.cols();
    }
    Mat<T> m(r, c);
    int ro = 0, co = 0;
    for (const auto& p : parts) {
        m.set_block(ro, co, p);
        ro += p.rows();
        co += p.cols();
    }
    return m;
}

template <class T>
std::string to_string(const Mat<T>& m);

template <>
inline std::string to_string(const GMat& m) {
    std::string s = "[";
    for (int i = 0; i < m.rows(); ++i) {
        s += i ? ", [" : "[";
        for (int j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + m(i, j).str();
        s += "]";
    }
    return s + "]";
}

} // namespace qvm
