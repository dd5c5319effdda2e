#include "sigsurf/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace sigsurf {

const GK15Rule& gk15() {
    static const GK15Rule rule = [] {
        using boost::math::quadrature::gauss;
        using boost::math::quadrature::gauss_kronrod;
        const auto& xk = gauss_kronrod<double, 15>::abscissa();
        const auto& wk = gauss_kronrod<double, 15>::weights();
        const auto& xg = gauss<double, 7>::abscissa();
        const auto& wg = gauss<double, 7>::weights();
        GK15Rule r;
        // boost stores the non-negative half, node 0 first
        int k = 0;
        for (int i = int(xk.size()) - 1; i >= 0; --i) {
            r.x[k] = -xk[i];
            r.wk[k++] = wk[i];
            if (i == 0) --k;  // centre node appears once
        }
        for (std::size_t i = 0; i < xk.size(); ++i) {
            r.x[k] = xk[i];
            r.wk[k++] = wk[i];
        }
        for (int i = 0; i < 15; ++i)
            for (std::size_t j = 0; j < xg.size(); ++j)
                if (std::abs(std::abs(r.x[i]) - xg[j]) < 1e-14) r.wg[i] = wg[j];
        return r;
    }();
    return rule;
}

}  // namespace sigsurf
