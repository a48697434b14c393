#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tvx/poly.hpp"

namespace tvx {

/*
 * Dense r x r matrix with Poly entries: an element of gl_r tensored with the
 * symbol algebra.  r = 0 models the pure torus case (no matrix factor).
 */
class Mat {
public:
    Mat() = default;
    explicit Mat(int r) : r_(r), e_(r * r) {}

    static Mat zero(int r) { return Mat(r); }
    static Mat identity(int r) {
        Mat m(r);
        for (int i = 0; i < r; ++i) m.at(i, i) = Poly{Rat(1)};
        return m;
    }
    /* Elementary matrix E_ij scaled by a polynomial. */
    static Mat elementary(int r, int i, int j, const Poly& c) {
        Mat m(r);
        m.at(i, j) = c;
        return m;
    }
    static Mat scalar(int r, const Poly& c) {
        Mat m(r);
        for (int i = 0; i < r; ++i) m.at(i, i) = c;
        return m;
    }

    int rank() const { return r_; }
    Poly& at(int i, int j) { return e_.at(i * r_ + j); }
    const Poly& at(int i, int j) const { return e_.at(i * r_ + j); }

    bool is_zero() const {
        for (const auto& p : e_)
            if (!p.is_zero()) return false;
        return true;
    }

    Mat& operator+=(const Mat& o) {
        check(o);
        for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        check(o);
        for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
        return *this;
    }
    friend Mat operator+(Mat a, const Mat& b) { a += b; return a; }
    friend Mat operator-(Mat a, const Mat& b) { a -= b; return a; }
    Mat operator-() const {
        Mat m(r_);
        for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = -e_[k];
        return m;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        a.check(b);
        Mat m(a.r_);
        for (int i = 0; i < a.r_; ++i)
            for (int k = 0; k < a.r_; ++k) {
                const Poly& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (int j = 0; j < a.r_; ++j) {
                    if (b.at(k, j).is_zero()) continue;
                    m.at(i, j) += aik * b.at(k, j);
                }
            }
        return m;
    }

    friend Mat operator*(const Poly& c, const Mat& m) {
        Mat r(m.r_);
        for (std::size_t k = 0; k < m.e_.size(); ++k) r.e_[k] = c * m.e_[k];
        return r;
    }
    friend Mat operator*(const Rat& c, const Mat& m) {
        Mat r(m.r_);
        for (std::size_t k = 0; k < m.e_.size(); ++k) r.e_[k] = c * m.e_[k];
        return r;
    }

    friend Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

    friend bool operator==(const Mat&, const Mat&) = default;

    std::string str(const SymbolTable& tab) const {
        std::string out = "[";
        for (int i = 0; i < r_; ++i) {
            out += i ? ",[" : "[";
            for (int j = 0; j < r_; ++j) {
                if (j) out += ",";
                out += at(i, j).str(tab);
            }
            out += "]";
        }
        return out + "]";
    }

private:
    void check(const Mat& o) const {
        if (r_ != o.r_) throw std::invalid_argument("matrix rank mismatch");
    }

    int r_ = 0;
    std::vector<Poly> e_;
};

}  // namespace tvx
