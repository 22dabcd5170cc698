#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>

namespace jlq {

// Exact element of Q(i): re + im*i with GMP rationals kept canonical.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long v) : re_(v) {}
    GaussianRational(const mpq_class& re) : re_(re) { re_.canonicalize(); }
    GaussianRational(const mpq_class& re, const mpq_class& im) : re_(re), im_(im) {
        re_.canonicalize();
        im_.canonicalize();
    }
    static GaussianRational i() { return {mpq_class(0), mpq_class(1)}; }
    static GaussianRational frac(long n, long d) { return GaussianRational(mpq_class(n, d)); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_integer() const { return is_real() && re_.get_den() == 1; }
    // Sign used for display and orientation: sign of re, or of im when re = 0.
    int sign() const { return sgn(re_) != 0 ? sgn(re_) : sgn(im_); }

    GaussianRational conj() const { return {re_, -im_}; }
    mpq_class norm() const { return re_ * re_ + im_ * im_; }
    GaussianRational inverse() const;
    GaussianRational pow(long n) const;
    // Exact square root when one exists with rational parts.
    std::optional<GaussianRational> sqrt() const;

    GaussianRational operator-() const { return {-re_, -im_}; }
    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
    // Arbitrary total order (re first, then im); used only for deterministic sorting.
    friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

    // Text form accepted by the parser: "3/2", "-i", "(1/2+3*i)".
    std::string str() const;
    // True when str() needs parentheses as a factor in a product.
    bool is_compound() const { return sgn(re_) != 0 && sgn(im_) != 0; }
    std::size_t hash() const;

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

using GQ = GaussianRational;

}  // namespace jlq
