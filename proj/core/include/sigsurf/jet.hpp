#pragma once

#include <array>
#include <complex>
#include <functional>

namespace sigsurf {

using cd = std::complex<double>;

// Truncated bivariate Taylor polynomial in (dxi, dxibar): coefficient c(a,b)
// multiplies dxi^a dxibar^b, so the Wirtinger derivative is a! b! c(a,b).
class Jet {
public:
    static constexpr int kMax = 3;

    Jet() = default;
    explicit Jet(cd v, int order = kMax) : order_(order) { c_[0] = v; }

    static Jet constant(cd v, int order = kMax) { return Jet(v, order); }
    static Jet xi(cd v, int order = kMax);
    static Jet xibar(cd v, int order = kMax);
    // from Wirtinger derivatives d(a,b)
    static Jet from_derivatives(const std::function<cd(int, int)>& d, int order);

    int order() const { return order_; }
    cd value() const { return c_[0]; }
    cd coeff(int a, int b) const { return c_[idx(a, b)]; }
    cd& coeff(int a, int b) { return c_[idx(a, b)]; }
    cd d(int a, int b) const;  // d^a/dxi^a d^b/dxibar^b

    Jet truncated(int order) const;
    Jet dxi() const;     // lowers order by one
    Jet dxibar() const;
    Jet conj() const;    // Taylor series of the complex conjugate function

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(const Jet& o);
    Jet& operator/=(const Jet& o);
    Jet& operator*=(cd s);

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
    friend Jet operator/(Jet a, const Jet& b) { return a /= b; }
    friend Jet operator*(Jet a, cd s) { return a *= s; }
    friend Jet operator*(cd s, Jet a) { return a *= s; }
    friend Jet operator+(Jet a, cd s) { a.c_[0] += s; return a; }
    friend Jet operator+(cd s, Jet a) { a.c_[0] += s; return a; }
    friend Jet operator-(Jet a, cd s) { a.c_[0] -= s; return a; }
    friend Jet operator-(cd s, const Jet& a) { return Jet(s, a.order_) - a; }
    friend Jet operator/(cd s, const Jet& a) { return Jet(s, a.order_) / a; }
    friend Jet operator/(Jet a, cd s) { return a *= (1.0 / s); }
    Jet operator-() const;

    // phi(g) with derivs[k] = phi^(k)(g(0)), k = 0..order
    Jet compose(const std::array<cd, kMax + 1>& derivs) const;

private:
    static constexpr int idx(int a, int b) { return a * (kMax + 1) + b; }
    std::array<cd, (kMax + 1) * (kMax + 1)> c_{};
    int order_ = kMax;
};

Jet exp(const Jet& g);
Jet log(const Jet& g);
Jet sqrt(const Jet& g);  // principal branch at the base value
Jet pow(const Jet& g, cd e);
Jet ipow(const Jet& g, int n);
Jet sin(const Jet& g);
Jet cos(const Jet& g);
Jet sinh(const Jet& g);
Jet cosh(const Jet& g);
Jet tanh(const Jet& g);
Jet sech(const Jet& g);

}  // namespace sigsurf
