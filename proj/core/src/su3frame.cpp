#include "sigsurf/su3frame.hpp"

#include <cmath>

#include "sigsurf/basis.hpp"
#include "sigsurf/geometry.hpp"

namespace sigsurf {

namespace {

const cd I(0.0, 1.0);

struct Fields3 {
    cd w1, w2, dw1, dw2;
};

Fields3 holomorphic_fields(const SolutionEvaluator& ev, cd xi) {
    if (ev.N() != 3) throw FrameError("moving frame requires N = 3");
    const FieldJets f = ev.fields(xi, 1);
    for (const auto& w : f.w)
        if (std::abs(w.d(0, 1)) > 1e-10 * (1.0 + std::abs(w.value())))
            throw FrameError("moving frame requires a holomorphic solution");
    return {f.w[0].value(), f.w[1].value(), f.w[0].d(1, 0), f.w[1].d(1, 0)};
}

Mat su2_block(cd a, cd b) {
    Mat m = Mat::Zero(3, 3);
    m(0, 0) = 1.0;
    m(1, 1) = a;
    m(1, 2) = b;
    m(2, 1) = -std::conj(b);
    m(2, 2) = std::conj(a);
    return m;
}

FrameParams params_with_sign(const Fields3& F, const FrameTangents& t, double phi, double sign, double sign_a = 1.0) {
    const double s2 = (std::norm(F.dw1) + std::norm(F.dw2)) / t.rho;
    const double c2 = std::norm(t.W) / t.rho;
    if (!(s2 > 1e-14)) throw FrameError("degenerate alpha: sin(alpha) vanishes");
    if (!(c2 > 1e-14)) throw FrameError("degenerate alpha: cos(alpha) vanishes");
    FrameParams p;
    p.phi = phi;
    p.u = t.u;
    p.sin_alpha = std::sqrt(s2);
    p.cos_alpha = std::sqrt(c2);
    p.alpha = std::atan2(p.sin_alpha, p.cos_alpha);
    const cd e = std::polar(1.0, phi);
    const cd kappa = t.delta * p.cos_alpha / t.W / e;
    const double scale = std::exp(-t.u / 4.0) / (t.A * p.sin_alpha);
    if (t.delta == 0.0) {
        // delta kappa = delta^2 c/(W e), delta / kappa = W e / c: take the limits
        p.a1 = 0.0;
        p.b1 = sign_a * sign * std::sqrt(t.W * e / p.cos_alpha) * scale;
    } else {
        p.a1 = sign_a * std::sqrt(t.delta * kappa) * scale;
        p.b1 = sign_a * sign * std::sqrt(t.delta / kappa) * scale;
    }
    const double den = t.rho * p.sin_alpha * p.cos_alpha;
    p.a2 = -e * std::conj(F.dw2) * t.W / den;
    p.b2 = e * std::conj(F.dw1) * t.W / den;
    return p;
}

Mat eta1_from_phi(const FrameParams& p) {
    const Mat ph = su3_element(p);
    return I * std::exp(p.u / 2.0) * ph.adjoint() * y_minus() * ph;
}

// Same gauge, square-root branches chosen to stay close to `ref` (for differencing).
FrameParams params_near(const SolutionEvaluator& ev, cd xi, double phi, const Mat& ref) {
    const Fields3 F = holomorphic_fields(ev, xi);
    const FrameTangents t = frame_tangents(ev, xi);
    FrameParams best;
    double err = INFINITY;
    for (double sa : {1.0, -1.0})
        for (double sb : {1.0, -1.0}) {
            const FrameParams p = params_with_sign(F, t, phi, sb, sa);
            const double e = (su3_element(p) - ref).cwiseAbs().maxCoeff();
            if (e < err) {
                err = e;
                best = p;
            }
        }
    return best;
}

}  // namespace

FrameTangents frame_tangents(const SolutionEvaluator& ev, cd xi) {
    const Fields3 F = holomorphic_fields(ev, xi);
    FrameTangents t;
    const cd w1b = std::conj(F.w1), w2b = std::conj(F.w2);
    t.A = 1.0 + std::norm(F.w1) + std::norm(F.w2);
    t.delta = w1b * F.dw1 + w2b * F.dw2;
    t.beta = F.w1 * w2b * F.dw2 - (1.0 + std::norm(F.w2)) * F.dw1;
    t.gamma = w1b * F.w2 * F.dw1 - (1.0 + std::norm(F.w1)) * F.dw2;
    t.W = F.w2 * F.dw1 - F.w1 * F.dw2;
    t.rho = std::norm(F.dw1) + std::norm(F.dw2) + std::norm(t.W);
    if (!(t.rho > 1e-14)) throw FrameError("frame degenerate: rho = 0 (branch point)");
    t.u = std::log(t.rho / (t.A * t.A));
    const cd row[3] = {t.delta, t.beta, t.gamma};
    const cd col[3] = {1.0, w1b, w2b};
    const cd fw[3] = {1.0, F.w1, F.w2};
    t.eta1 = Mat(3, 3);
    t.eta2 = Mat(3, 3);
    const cd pre = -I / (t.A * t.A);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            t.eta1(i, j) = pre * col[i] * row[j];
            t.eta2(i, j) = pre * std::conj(row[i]) * fw[j];
        }
    return t;
}

FrameParams frame_params(const SolutionEvaluator& ev, cd xi, double phi) {
    const Fields3 F = holomorphic_fields(ev, xi);
    const FrameTangents t = frame_tangents(ev, xi);
    // the relative sign of b1 is fixed by i e^{u/2} phi^dagger y_- phi = eta_1
    FrameParams best;
    double err = INFINITY;
    for (double sign : {1.0, -1.0}) {
        const FrameParams p = params_with_sign(F, t, phi, sign);
        const double e = (eta1_from_phi(p) - t.eta1).cwiseAbs().maxCoeff();
        if (e < err) {
            err = e;
            best = p;
        }
    }
    return best;
}

Mat su3_element(const FrameParams& p) {
    const cd e = std::polar(1.0, p.phi);
    Mat M2 = Mat::Zero(3, 3);
    M2(0, 0) = e * p.cos_alpha;
    M2(0, 1) = -p.sin_alpha;
    M2(1, 0) = p.sin_alpha;
    M2(1, 1) = std::conj(e) * p.cos_alpha;
    M2(2, 2) = 1.0;
    return su2_block(p.a1, p.b1) * M2 * su2_block(p.a2, p.b2);
}

std::array<Mat, 6> frame_normals(const FrameParams& p) {
    const Mat ph = su3_element(p);
    const Mat phd = ph.adjoint();
    std::array<Mat, 6> out;
    for (int j = 0; j < 6; ++j) out[j] = phd * gellmann()[j + 2] * ph;
    return out;
}

MovingFrame moving_frame(const SolutionEvaluator& ev, cd xi, double phi) {
    const FrameTangents t = frame_tangents(ev, xi);
    MovingFrame f;
    f.params = frame_params(ev, xi, phi);
    f.phi = su3_element(f.params);
    f.eta[0] = t.eta1;
    f.eta[1] = t.eta2;
    const auto n = frame_normals(f.params);
    for (int j = 0; j < 6; ++j) f.eta[j + 2] = n[j];
    return f;
}

std::array<Mat, 6> appendix_normals(cd x, double phi) {
    if (x == 0.0) throw FrameError("appendix normals are singular at xi = 0");
    const cd xb = std::conj(x);
    const double r2 = std::norm(x), r = std::abs(x);
    auto G = [&](double j) { return j + r2; };
    const double G1 = G(1), G2 = G(2), G3 = G(3), G5 = G(5), G22 = G2 * G2;
    const cd sq = std::sqrt(x), sqb = std::sqrt(xb);
    const cd x32 = x * sq, xb32 = xb * sqb;
    const cd E = std::polar(1.0, 3.0 * phi);
    const double s3 = std::sqrt(3.0);
    const double D = G1 * G22;
    const cd x2 = x * x, xb2 = xb * xb, x3 = x2 * x, xb3 = xb2 * xb;
    auto m = [](std::initializer_list<cd> v) {
        Mat a(3, 3);
        auto it = v.begin();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a(i, j) = *it++;
        return a;
    };
    const Mat e3 = m({4.0 * (r2 - 1.0) / G22, 2.0 * x * (4.0 + r2 * G1) / D, 2.0 * x2 * G5 / D,
                      2.0 * xb * (4.0 + r2 * G1) / D, (4.0 + r2 * r2 * (5.0 + r2 * G2)) / (G1 * D),
                      -4.0 * x * (r2 - 1.0) / (G1 * D),
                      2.0 * xb2 * G5 / D, -4.0 * xb * (r2 - 1.0) / (G1 * D),
                      r2 * (4.0 - r2 * G3 * G3) / (G1 * D)});
    const Mat e4 = m({2.0 * (2.0 + r2 * (2.0 - r2)) / (s3 * G22), 2.0 * s3 * r2 * x / G22, -2.0 * s3 * x2 / G22,
                      2.0 * s3 * r2 * xb / G22, (4.0 + r2 * (r2 - 8.0)) / (s3 * G22), 4.0 * s3 * x / G22,
                      -2.0 * s3 * xb2 / G22, 4.0 * s3 * xb / G22, (r2 * G(4) - 8.0) / (s3 * G22)});
    const double L = 2.0 + r2 * G1;
    const Mat e5 = m({2.0 * r * (E * x2 - xb2) / G22, -sq * (4.0 * E * x2 * G1 + xb2 * L) / (sqb * D),
                      2.0 * x32 * (2.0 * E * x * G1 - xb3) / (xb32 * D),
                      sqb * (4.0 * xb2 * G1 + E * x2 * L) / (sq * D), -2.0 * (E * x2 - xb2) * L / (r * D),
                      2.0 * sq * (2.0 * xb3 + E * x * L) / (xb32 * D),
                      2.0 * xb32 * (E * x3 - 2.0 * xb * G1) / (x32 * D),
                      -2.0 * sqb * (2.0 * E * x3 + xb * L) / (x32 * D), 4.0 * (E * x2 - xb2) / (r * D)});
    const Mat e6 = m({-2.0 * r * (E * x - xb) / G22, 2.0 * x32 * (2.0 * E * G1 - xb2) / (sqb * D),
                      -x32 * (4.0 * E * G1 + r2 * xb2 * G3) / (xb32 * D),
                      -2.0 * xb32 * (2.0 - E * x2 + 2.0 * r2) / (sq * D), -4.0 * r * (E * x - xb) / D,
                      2.0 * x32 * (2.0 * E + xb2 * G3) / (sqb * D),
                      xb32 * (4.0 + 4.0 * r2 + E * r2 * x2 * G3) / (x32 * D),
                      -2.0 * xb32 * (2.0 + E * x2 * G3) / (sq * D), 2.0 * r * (E * x - xb) * G3 / D});
    const Mat e7 = m({-2.0 * r * (E * x2 + xb2) / G22, sq * (4.0 * E * x2 * G1 - xb2 * L) / (sqb * D),
                      -2.0 * x32 * (xb3 + 2.0 * E * x * G1) / (xb32 * D),
                      sqb * (4.0 * xb2 * G1 - E * x2 * L) / (sq * D), 2.0 * (E * x2 + xb2) * L / (r * D),
                      2.0 * sq * (2.0 * xb3 - E * x * L) / (xb32 * D),
                      -2.0 * xb32 * (E * x3 + 2.0 * xb * G1) / (x32 * D),
                      2.0 * sqb * (2.0 * E * x3 - xb * L) / (x32 * D), -4.0 * (E * x2 + xb2) / (r * D)});
    const Mat e8 = m({2.0 * r * (E * x + xb) / G22, -2.0 * x32 * (xb2 + 2.0 * E * G1) / (sqb * D),
                      x32 * (4.0 * E * G1 - r2 * xb2 * G3) / (xb32 * D),
                      -2.0 * xb32 * (2.0 + E * x2 + 2.0 * r2) / (sq * D), 4.0 * r * (E * x + xb) / D,
                      -2.0 * x32 * (2.0 * E - xb2 * G3) / (sqb * D),
                      xb32 * (4.0 + 4.0 * r2 - E * r2 * x2 * G3) / (x32 * D),
                      2.0 * xb32 * (E * x2 * G3 - 2.0) / (sq * D), -2.0 * r * (E * x + xb) * G3 / D});
    const cd pf = std::polar(1.0, -1.5 * phi);
    return {I * e3, I * e4, pf * e5, pf * e6, I * pf * e7, I * pf * e8};
}

AppendixComparison compare_appendix(const MovingFrame& f, cd xi) {
    const auto ap = appendix_normals(xi, f.params.phi);
    AppendixComparison c;
    for (int j = 0; j < 2; ++j) c.eta34 = std::max(c.eta34, (ap[j] - f.eta[j + 2]).cwiseAbs().maxCoeff());
    for (int j = 2; j < 6; ++j) {
        c.entrywise58 = std::max(c.entrywise58, (ap[j] - f.eta[j + 2]).cwiseAbs().maxCoeff());
        Mat proj = Mat::Zero(3, 3);
        for (int k = 2; k < 6; ++k) proj += inner(ap[j], f.eta[k + 2]) * f.eta[k + 2];
        c.subspace = std::max(c.subspace, (ap[j] - proj).cwiseAbs().maxCoeff());
    }
    return c;
}

double FrameChecks::max() const {
    return std::max({orthonormality, tangency, conformality, eta2_vs_K, eta1_vs_Kd, half_eu_vs_q, unitarity});
}

FrameChecks frame_checks(const SolutionEvaluator& ev, cd xi, const MovingFrame& f) {
    FrameChecks c;
    for (int j = 2; j < 8; ++j) {
        for (int k = 2; k < 8; ++k)
            c.orthonormality = std::max(c.orthonormality, std::abs(inner(f.eta[j], f.eta[k]) - (j == k ? 1.0 : 0.0)));
        c.tangency = std::max({c.tangency, std::abs(inner(f.eta[0], f.eta[j])), std::abs(inner(f.eta[1], f.eta[j]))});
    }
    const double eu2 = 0.5 * std::exp(f.params.u);
    c.conformality = std::max({std::abs(inner(f.eta[0], f.eta[0])), std::abs(inner(f.eta[1], f.eta[1])),
                               std::abs(inner(f.eta[0], f.eta[1]) - eu2)});
    const FirstOrderModel m = first_order_at(ev, xi);
    c.eta2_vs_K = (f.eta[1] - I * m.K).cwiseAbs().maxCoeff();
    c.eta1_vs_Kd = (f.eta[0] - I * m.Kd).cwiseAbs().maxCoeff();
    c.half_eu_vs_q = std::abs(eu2 - m.q);
    c.unitarity = std::max((f.phi.adjoint() * f.phi - Mat::Identity(3, 3)).cwiseAbs().maxCoeff(),
                           std::abs(f.phi.determinant() - 1.0));
    return c;
}

double GaussWeingarten::max() const { return std::max({res_dd, res_ddb, res_deta, antisymmetry, compatibility}); }

GaussWeingarten gauss_weingarten(const SolutionEvaluator& ev, cd xi, double phi, double h) {
    const MovingFrame f = moving_frame(ev, xi, phi);
    const PointModel pm = model_at(ev, xi, 3);
    const XDerivatives x = x_derivatives(pm);
    const double q = pm.q.value().real();
    const cd dq = pm.q.d(1, 0);
    GaussWeingarten g;
    Mat recon_dd = (dq / q) * x.d, recon_ddb = Mat::Zero(3, 3);
    for (int j = 0; j < 6; ++j) {
        g.Jn[j] = inner(x.dd, f.eta[j + 2]);
        g.Hn[j] = inner(x.ddb, f.eta[j + 2]);
        recon_dd += g.Jn[j] * f.eta[j + 2];
        recon_ddb += g.Hn[j] * f.eta[j + 2];
    }
    g.res_dd = (x.dd - recon_dd).cwiseAbs().maxCoeff();
    g.res_ddb = (x.ddb - recon_ddb).cwiseAbs().maxCoeff();
    g.compatibility = (x.ddb - x.ddb_alt).cwiseAbs().maxCoeff();

    // d eta_j = (d_1 - i d_2)/2 by central differences at fixed gauge
    const auto px = frame_normals(params_near(ev, xi + h, phi, f.phi));
    const auto mx = frame_normals(params_near(ev, xi - h, phi, f.phi));
    const auto py = frame_normals(params_near(ev, xi + I * h, phi, f.phi));
    const auto my = frame_normals(params_near(ev, xi - I * h, phi, f.phi));
    std::array<Mat, 6> deta;
    for (int j = 0; j < 6; ++j) deta[j] = ((px[j] - mx[j]) - I * (py[j] - my[j])) / (4.0 * h);
    for (int j = 0; j < 6; ++j) {
        Mat recon = -(g.Hn[j] * x.d + g.Jn[j] * x.db) / q;
        for (int k = 0; k < 6; ++k) {
            g.S(j, k) = inner(deta[j], f.eta[k + 2]);
            recon += g.S(j, k) * f.eta[k + 2];
        }
        g.res_deta = std::max(g.res_deta, (deta[j] - recon).cwiseAbs().maxCoeff());
    }
    g.antisymmetry = (g.S + g.S.transpose()).cwiseAbs().maxCoeff();
    return g;
}

}  // namespace sigsurf
