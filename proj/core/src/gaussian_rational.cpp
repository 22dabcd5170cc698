#include "jlq/gaussian_rational.hpp"

#include <stdexcept>

namespace jlq {

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class m = re_ * o.im_ + im_ * o.re_;
    re_ = r;
    im_ = m;
    return *this;
}

GaussianRational GaussianRational::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero coefficient");
    if (sgn(im_) == 0) return GaussianRational(mpq_class(1) / re_);
    mpq_class n = norm();
    return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    if (sgn(o.im_) == 0) {
        if (sgn(o.re_) == 0) throw std::domain_error("division by zero coefficient");
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

GaussianRational GaussianRational::pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    GaussianRational r(1), b = *this;
    while (n) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

namespace {
std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
    if (sgn(q) < 0) return std::nullopt;
    mpz_class n = q.get_num(), d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    return mpq_class(sn, sd);
}
}  // namespace

std::optional<GaussianRational> GaussianRational::sqrt() const {
    if (is_real()) {
        if (sgn(re_) >= 0) {
            auto r = rational_sqrt(re_);
            if (r) return GaussianRational(*r);
            return std::nullopt;
        }
        auto r = rational_sqrt(-re_);
        if (r) return GaussianRational(mpq_class(0), *r);
        return std::nullopt;
    }
    // (a+bi)^2 = re + im*i  =>  a^2 = (re + |z|)/2
    auto modulus = rational_sqrt(norm());
    if (!modulus) return std::nullopt;
    auto a = rational_sqrt((re_ + *modulus) / 2);
    if (!a || sgn(*a) == 0) return std::nullopt;
    mpq_class b = im_ / (2 * *a);
    return GaussianRational(*a, b);
}

std::string GaussianRational::str() const {
    auto im_part = [&](const mpq_class& v) {
        if (v == 1) return std::string("i");
        if (v == -1) return std::string("-i");
        return v.get_str() + "*i";
    };
    if (sgn(im_) == 0) return re_.get_str();
    if (sgn(re_) == 0) return im_part(im_);
    std::string s = "(" + re_.get_str();
    if (sgn(im_) > 0) s += "+";
    s += im_part(im_) + ")";
    return s;
}

namespace {
std::size_t hash_mpz(mpz_srcptr z) {
    std::size_t h = static_cast<std::size_t>(mpz_size(z)) * 0x9e3779b97f4a7c15ULL;
    if (mpz_size(z) > 0) h ^= static_cast<std::size_t>(mpz_getlimbn(z, 0));
    return h * 31 + static_cast<std::size_t>(mpz_sgn(z) + 1);
}
}  // namespace

std::size_t GaussianRational::hash() const {
    std::size_t h = hash_mpz(re_.get_num_mpz_t());
    h = h * 1000003 ^ hash_mpz(re_.get_den_mpz_t());
    h = h * 1000003 ^ hash_mpz(im_.get_num_mpz_t());
    h = h * 1000003 ^ hash_mpz(im_.get_den_mpz_t());
    return h;
}

}  // namespace jlq
