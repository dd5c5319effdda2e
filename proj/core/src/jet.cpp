#include "sigsurf/jet.hpp"

#include <algorithm>
#include <stdexcept>

namespace sigsurf {

namespace {
constexpr double kFact[] = {1.0, 1.0, 2.0, 6.0, 24.0};
}

Jet Jet::xi(cd v, int order) {
    Jet j(v, order);
    if (order >= 1) j.coeff(1, 0) = 1.0;
    return j;
}

Jet Jet::xibar(cd v, int order) {
    Jet j(v, order);
    if (order >= 1) j.coeff(0, 1) = 1.0;
    return j;
}

Jet Jet::from_derivatives(const std::function<cd(int, int)>& d, int order) {
    Jet j(0.0, order);
    for (int a = 0; a <= order; ++a)
        for (int b = 0; a + b <= order; ++b) j.coeff(a, b) = d(a, b) / (kFact[a] * kFact[b]);
    return j;
}

cd Jet::d(int a, int b) const {
    if (a < 0 || b < 0 || a + b > order_) throw std::out_of_range("Jet::d: derivative beyond jet order");
    return c_[idx(a, b)] * (kFact[a] * kFact[b]);
}

Jet Jet::truncated(int order) const {
    Jet r = *this;
    r.order_ = std::min(order, order_);
    for (int a = 0; a <= kMax; ++a)
        for (int b = 0; b <= kMax; ++b)
            if (a + b > r.order_) r.c_[idx(a, b)] = 0.0;
    return r;
}

Jet Jet::dxi() const {
    if (order_ < 1) throw std::logic_error("Jet::dxi on order-0 jet");
    Jet r(0.0, order_ - 1);
    for (int a = 0; a < order_; ++a)
        for (int b = 0; a + b < order_; ++b) r.coeff(a, b) = double(a + 1) * coeff(a + 1, b);
    return r;
}

Jet Jet::dxibar() const {
    if (order_ < 1) throw std::logic_error("Jet::dxibar on order-0 jet");
    Jet r(0.0, order_ - 1);
    for (int a = 0; a < order_; ++a)
        for (int b = 0; a + b < order_; ++b) r.coeff(a, b) = double(b + 1) * coeff(a, b + 1);
    return r;
}

Jet Jet::conj() const {
    Jet r(0.0, order_);
    for (int a = 0; a <= order_; ++a)
        for (int b = 0; a + b <= order_; ++b) r.coeff(a, b) = std::conj(coeff(b, a));
    return r;
}

Jet& Jet::operator+=(const Jet& o) {
    const bool same = order_ == o.order_;
    order_ = std::min(order_, o.order_);
    for (int a = 0; a <= order_; ++a)
        for (int b = 0; a + b <= order_; ++b) c_[idx(a, b)] += o.c_[idx(a, b)];
    return same ? *this : (*this = truncated(order_));
}

Jet& Jet::operator-=(const Jet& o) {
    const bool same = order_ == o.order_;
    order_ = std::min(order_, o.order_);
    for (int a = 0; a <= order_; ++a)
        for (int b = 0; a + b <= order_; ++b) c_[idx(a, b)] -= o.c_[idx(a, b)];
    return same ? *this : (*this = truncated(order_));
}

Jet& Jet::operator*=(cd s) {
    for (auto& x : c_) x *= s;
    return *this;
}

Jet Jet::operator-() const {
    Jet r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Jet& Jet::operator*=(const Jet& o) {
    const int n = std::min(order_, o.order_);
    Jet r(0.0, n);
    for (int a = 0; a <= n; ++a)
        for (int b = 0; a + b <= n; ++b) {
            cd s = 0.0;
            for (int i = 0; i <= a; ++i)
                for (int j = 0; j <= b; ++j) s += coeff(i, j) * o.coeff(a - i, b - j);
            r.coeff(a, b) = s;
        }
    return *this = r;
}

Jet& Jet::operator/=(const Jet& g) {
    const int n = std::min(order_, g.order_);
    const cd g0 = g.value();
    if (g0 == 0.0) throw std::domain_error("Jet division by zero");
    Jet h(0.0, n);
    for (int deg = 0; deg <= n; ++deg)
        for (int a = 0; a <= deg; ++a) {
            const int b = deg - a;
            cd s = coeff(a, b);
            for (int i = 0; i <= a; ++i)
                for (int j = 0; j <= b; ++j)
                    if (i || j) s -= g.coeff(i, j) * h.coeff(a - i, b - j);
            h.coeff(a, b) = s / g0;
        }
    return *this = h;
}

Jet Jet::compose(const std::array<cd, kMax + 1>& derivs) const {
    Jet h = *this;
    h.c_[0] = 0.0;
    Jet r(derivs[0], order_);
    Jet hk(1.0, order_);
    for (int k = 1; k <= order_; ++k) {
        hk *= h;
        r += hk * (derivs[k] / kFact[k]);
    }
    return r;
}

Jet exp(const Jet& g) {
    const cd e = std::exp(g.value());
    return g.compose({e, e, e, e});
}

Jet log(const Jet& g) {
    const cd x = g.value();
    if (x == 0.0) throw std::domain_error("Jet log of zero");
    return g.compose({std::log(x), 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x)});
}

Jet sqrt(const Jet& g) {
    const cd x = g.value();
    if (x == 0.0) throw std::domain_error("Jet sqrt at zero");
    const cd s = std::sqrt(x);
    return g.compose({s, 0.5 / s, -0.25 / (s * x), 0.375 / (s * x * x)});
}

Jet pow(const Jet& g, cd e) {
    const cd x = g.value();
    if (x == 0.0) throw std::domain_error("Jet pow at zero");
    const cd p = std::pow(x, e);
    return g.compose({p, e * p / x, e * (e - 1.0) * p / (x * x), e * (e - 1.0) * (e - 2.0) * p / (x * x * x)});
}

Jet ipow(const Jet& g, int n) {
    if (n < 0) return 1.0 / ipow(g, -n);
    Jet r(1.0, g.order()), b = g;
    while (n) {
        if (n & 1) r *= b;
        n >>= 1;
        if (n) b *= b;
    }
    return r;
}

Jet sin(const Jet& g) {
    const cd s = std::sin(g.value()), c = std::cos(g.value());
    return g.compose({s, c, -s, -c});
}

Jet cos(const Jet& g) {
    const cd s = std::sin(g.value()), c = std::cos(g.value());
    return g.compose({c, -s, -c, s});
}

Jet sinh(const Jet& g) {
    const cd s = std::sinh(g.value()), c = std::cosh(g.value());
    return g.compose({s, c, s, c});
}

Jet cosh(const Jet& g) {
    const cd s = std::sinh(g.value()), c = std::cosh(g.value());
    return g.compose({c, s, c, s});
}

Jet tanh(const Jet& g) {
    const cd t = std::tanh(g.value());
    const cd s2 = 1.0 - t * t;
    return g.compose({t, s2, -2.0 * t * s2, s2 * (6.0 * t * t - 2.0)});
}

Jet sech(const Jet& g) {
    const cd s = 1.0 / std::cosh(g.value());
    const cd t = std::tanh(g.value());
    return g.compose({s, -s * t, s * (t * t - s * s), s * t * (5.0 * s * s - t * t)});
}

}  // namespace sigsurf
