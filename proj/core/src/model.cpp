#include "sigsurf/model.hpp"

#include <algorithm>

namespace sigsurf {

// ---------------------------------------------------------------- JetMat

JetMat::JetMat(int rows, int cols, int order) : r_(rows), c_(cols), e_(rows * cols, Jet(0.0, order)) {}

JetMat JetMat::identity(int n, int order) {
    JetMat m(n, n, order);
    for (int i = 0; i < n; ++i) m(i, i) = Jet(1.0, order);
    return m;
}

JetMat JetMat::constant(const Mat& v, int order) {
    JetMat m(int(v.rows()), int(v.cols()), order);
    for (int i = 0; i < m.r_; ++i)
        for (int j = 0; j < m.c_; ++j) m(i, j) = Jet(v(i, j), order);
    return m;
}

int JetMat::order() const {
    int o = Jet::kMax;
    for (const auto& x : e_) o = std::min(o, x.order());
    return o;
}

Mat JetMat::value() const { return d(0, 0); }

Mat JetMat::d(int a, int b) const {
    Mat m(r_, c_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) m(i, j) = (*this)(i, j).d(a, b);
    return m;
}

JetMat JetMat::dxi() const {
    JetMat m = *this;
    for (auto& x : m.e_) x = x.dxi();
    return m;
}

JetMat JetMat::dxibar() const {
    JetMat m = *this;
    for (auto& x : m.e_) x = x.dxibar();
    return m;
}

JetMat JetMat::transpose() const {
    JetMat m(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

JetMat JetMat::conj() const {
    JetMat m = *this;
    for (auto& x : m.e_) x = x.conj();
    return m;
}

Jet JetMat::trace() const {
    Jet t(0.0, order());
    for (int i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
    return t;
}

JetMat& JetMat::operator+=(const JetMat& o) {
    for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
    return *this;
}

JetMat& JetMat::operator-=(const JetMat& o) {
    for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
    return *this;
}

JetMat operator*(const JetMat& a, const JetMat& b) {
    const int o = std::min(a.order(), b.order());
    JetMat m(a.r_, b.c_, o);
    for (int i = 0; i < a.r_; ++i)
        for (int j = 0; j < b.c_; ++j) {
            Jet s(0.0, o);
            for (int k = 0; k < a.c_; ++k) s += a(i, k) * b(k, j);
            m(i, j) = s;
        }
    return m;
}

JetMat operator*(const Jet& s, JetMat a) {
    for (auto& x : a.e_) x *= s;
    return a;
}

JetMat operator*(cd s, JetMat a) {
    for (auto& x : a.e_) x *= s;
    return a;
}

JetMat JetMat::operator-() const {
    JetMat m = *this;
    for (auto& x : m.e_) x = -x;
    return m;
}

// ---------------------------------------------------------------- solution

AffineSolution AffineSolution::from_exprs(std::vector<expr::Expr> w, std::vector<expr::Expr> wb,
                                          expr::ParamMap params, std::string name) {
    AffineSolution s;
    s.N = int(w.size()) + 1;
    if (wb.empty())
        for (const auto& e : w) wb.push_back(expr::conjugate(e));
    s.w = std::move(w);
    s.wb = std::move(wb);
    s.params = std::move(params);
    s.name = std::move(name);
    s.validate();
    return s;
}

AffineSolution AffineSolution::from_strings(const std::vector<std::string>& w, const std::vector<std::string>& wb,
                                            expr::ParamMap params, std::string name) {
    std::vector<expr::Expr> we, wbe;
    for (const auto& t : w) we.push_back(expr::parse(t));
    for (const auto& t : wb) wbe.push_back(expr::parse(t));
    return from_exprs(std::move(we), std::move(wbe), std::move(params), std::move(name));
}

void AffineSolution::validate() const {
    if (N < 2) throw ModelError("N must be at least 2");
    if (int(w.size()) != N - 1 || int(wb.size()) != N - 1)
        throw ModelError("expected " + std::to_string(N - 1) + " affine fields and conjugates");
    for (const auto* list : {&w, &wb})
        for (const auto& e : *list)
            for (const auto& p : expr::parameters(e))
                if (!params.count(p)) throw ModelError("undeclared parameter '" + p + "'");
}

SolutionEvaluator::SolutionEvaluator(AffineSolution s, int order) : s_(std::move(s)), order_(order) {
    s_.validate();
    for (const auto& e : s_.w) tw_.emplace_back(e, order_);
    for (const auto& e : s_.wb) twb_.emplace_back(e, order_);
}

FieldJets SolutionEvaluator::fields(cd xi, int order) const {
    order = std::min(order, order_);
    const expr::EvalPoint p{xi, &s_.params};
    FieldJets f;
    for (const auto& t : tw_) f.w.push_back(expr::evaluate_jet(t, p, order));
    for (const auto& t : twb_) f.wb.push_back(expr::evaluate_jet(t, p, order));
    if (!s_.formal)
        for (std::size_t i = 0; i < f.w.size(); ++i) {
            const cd a = f.w[i].value(), b = f.wb[i].value();
            if (std::abs(b - std::conj(a)) > conjugate_tolerance * (1.0 + std::abs(a)))
                throw ModelError("conjugate field w" + std::to_string(i + 1) + "bar is not the conjugate of w" +
                                 std::to_string(i + 1));
        }
    return f;
}

// ---------------------------------------------------------------- model

PointModel model_at(const SolutionEvaluator& ev, cd xi, int order) {
    PointModel m;
    m.xi = xi;
    m.N = ev.N();
    const int o = order < 0 ? ev.order() : std::min(order, ev.order());
    if (o < 1) throw ModelError("model_at needs jets of order >= 1");
    m.fields = ev.fields(xi, o);
    const int N = m.N;
    m.f = JetMat(N, 1, o);
    m.fb = JetMat(N, 1, o);
    m.f(0, 0) = Jet(1.0, o);
    m.fb(0, 0) = Jet(1.0, o);
    for (int i = 1; i < N; ++i) {
        m.f(i, 0) = m.fields.w[i - 1];
        m.fb(i, 0) = m.fields.wb[i - 1];
    }
    m.n = Jet(0.0, o);
    for (int i = 0; i < N; ++i) m.n += m.fb(i, 0) * m.f(i, 0);
    const Jet inv = 1.0 / m.n;
    m.P = JetMat::identity(N, o);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) m.P(i, j) -= m.fb(i, 0) * m.f(j, 0) * inv;

    const JetMat dP = m.P.dxi(), dbP = m.P.dxibar();
    const JetMat& P = m.P;
    m.K = dbP * P - P * dbP;
    m.Kd = P * dP - dP * P;
    m.q = 0.5 * (m.Kd * m.K).trace();
    m.J = -0.5 * (m.Kd * m.Kd).trace();
    m.Jb = -0.5 * (m.K * m.K).trace();
    return m;
}

FirstOrderModel first_order_at(const SolutionEvaluator& ev, cd xi) {
    FirstOrderModel m;
    m.N = ev.N();
    m.fields = ev.fields(xi, 1);
    const int N = m.N;
    Eigen::VectorXcd f(N), fb(N), df(N), dbf(N), dfb(N), dbfb(N);
    f(0) = fb(0) = 1.0;
    df(0) = dbf(0) = dfb(0) = dbfb(0) = 0.0;
    for (int i = 1; i < N; ++i) {
        const Jet& w = m.fields.w[i - 1];
        const Jet& wb = m.fields.wb[i - 1];
        f(i) = w.value();
        df(i) = w.d(1, 0);
        dbf(i) = w.d(0, 1);
        fb(i) = wb.value();
        dfb(i) = wb.d(1, 0);
        dbfb(i) = wb.d(0, 1);
    }
    const cd n = fb.cwiseProduct(f).sum();
    const cd dn = dfb.cwiseProduct(f).sum() + fb.cwiseProduct(df).sum();
    const cd dbn = dbfb.cwiseProduct(f).sum() + fb.cwiseProduct(dbf).sum();
    const Mat F = fb * f.transpose();
    m.P = Mat::Identity(N, N) - F / n;
    m.dP = -(dfb * f.transpose() + fb * df.transpose()) / n + F * (dn / (n * n));
    m.dbP = -(dbfb * f.transpose() + fb * dbf.transpose()) / n + F * (dbn / (n * n));
    m.K = m.dbP * m.P - m.P * m.dbP;
    m.Kd = m.P * m.dP - m.dP * m.P;
    m.q = 0.5 * (m.Kd * m.K).trace().real();
    m.J = -0.5 * (m.Kd * m.Kd).trace();
    m.Jb = -0.5 * (m.K * m.K).trace();
    return m;
}

Mat projector_at(const SolutionEvaluator& ev, cd xi) { return first_order_at(ev, xi).P; }

KPair k_matrices_at(const SolutionEvaluator& ev, cd xi) {
    const FirstOrderModel m = first_order_at(ev, xi);
    return {m.K, m.Kd};
}

KPair k_explicit(const PointModel& m) {
    // outer-product form written for the column-oriented projector, then
    // transposed into the orientation used here
    const int N = m.N;
    Eigen::VectorXcd f(N), fb(N), df(N), dfb(N), dbf(N), dbfb(N);
    for (int i = 0; i < N; ++i) {
        f(i) = m.f(i, 0).value();
        fb(i) = m.fb(i, 0).value();
        df(i) = m.f(i, 0).d(1, 0);
        dbf(i) = m.f(i, 0).d(0, 1);
        dfb(i) = m.fb(i, 0).d(1, 0);
        dbfb(i) = m.fb(i, 0).d(0, 1);
    }
    const cd n = m.n.value();
    const Mat ff = f * fb.transpose();
    const Mat Kstd = (dbf * fb.transpose() - f * dbfb.transpose()) / n +
                     ff * (dbfb.cwiseProduct(f).sum() - fb.cwiseProduct(dbf).sum()) / (n * n);
    // scalar term taken with the sign that makes K^dagger the adjoint of K
    const Mat Kdstd = (f * dfb.transpose() - df * fb.transpose()) / n +
                      ff * (fb.cwiseProduct(df).sum() - dfb.cwiseProduct(f).sum()) / (n * n);
    return {-Kstd.transpose(), -Kdstd.transpose()};
}

ELResidual el_residual(const PointModel& m) {
    ELResidual r;
    r.conservation = (m.K.d(1, 0) - m.Kd.d(0, 1)).norm();
    const auto& w = m.fields.w;
    const auto& wb = m.fields.wb;
    const cd A = m.n.value();
    const int n = m.N - 1;
    auto eq = [&](const std::vector<Jet>& u, const std::vector<Jet>& ub, int i) {
        cd s = u[i].d(1, 1) - 2.0 * ub[i].value() / A * u[i].d(1, 0) * u[i].d(0, 1);
        for (int j = 0; j < n; ++j)
            if (j != i) s -= ub[j].value() / A * (u[i].d(1, 0) * u[j].d(0, 1) + u[i].d(0, 1) * u[j].d(1, 0));
        return std::abs(s);
    };
    for (int i = 0; i < n; ++i) r.affine = std::max({r.affine, eq(w, wb, i), eq(wb, w, i)});
    return r;
}

ELResidual el_residual_at(const SolutionEvaluator& ev, cd xi) { return el_residual(model_at(ev, xi)); }

ScalarInvariants scalar_invariants(const PointModel& m) {
    ScalarInvariants s;
    s.J = m.J.value();
    s.Jb = m.Jb.value();
    s.q = m.q.value().real();
    // (d f^dagger P dbar f + dbar f^dagger P d f)/(f^dagger f), column-oriented P
    const Mat Pstd = m.P.value().transpose();
    const int N = m.N;
    Eigen::VectorXcd df(N), dbf(N), dfb(N), dbfb(N);
    for (int i = 0; i < N; ++i) {
        df(i) = m.f(i, 0).d(1, 0);
        dbf(i) = m.f(i, 0).d(0, 1);
        dfb(i) = m.fb(i, 0).d(1, 0);
        dbfb(i) = m.fb(i, 0).d(0, 1);
    }
    const cd a = (dfb.transpose() * Pstd * dbf)(0, 0) + (dbfb.transpose() * Pstd * df)(0, 0);
    s.action_density = (a / m.n.value()).real();
    return s;
}

ScalarInvariants scalar_invariants_at(const SolutionEvaluator& ev, cd xi) {
    return scalar_invariants(model_at(ev, xi));
}

double dc_residual(const PointModel& m) {
    cd a = 0.0, b = 0.0;
    for (int i = 0; i < m.N; ++i) {
        const Jet& f = m.f(i, 0);
        const Jet& fb = m.fb(i, 0);
        a += fb.value() * f.d(1, 0) - fb.d(1, 0) * f.value();
        b += fb.value() * f.d(0, 1) - fb.d(0, 1) * f.value();
    }
    return std::max(std::abs(a), std::abs(b));
}

double dc_residual_at(const SolutionEvaluator& ev, cd xi) { return dc_residual(model_at(ev, xi)); }

double k_decomposition_residual(const PointModel& m) {
    const Mat P = m.P.value(), dbP = m.P.d(0, 1), K = m.K.value();
    const Mat I = Mat::Identity(m.N, m.N);
    const Mat M = (I - P) * dbP, L = -dbP * (I - P);
    return std::max((K - M - L).norm(), (M - L - dbP).norm());
}

const char* holomorphy_name(Holomorphy h) {
    switch (h) {
        case Holomorphy::Holomorphic: return "holomorphic";
        case Holomorphy::AntiHolomorphic: return "anti-holomorphic";
        case Holomorphy::Mixed: return "mixed";
    }
    return "?";
}

HolomorphyReport holomorphy_check(const SolutionEvaluator& ev, const std::vector<cd>& points, double tol) {
    HolomorphyReport r;
    for (cd z : points) {
        const FieldJets f = ev.fields(z, 1);
        for (const auto& w : f.w) {
            r.max_dbar_w = std::max(r.max_dbar_w, std::abs(w.d(0, 1)));
            r.max_d_w = std::max(r.max_d_w, std::abs(w.d(1, 0)));
        }
    }
    if (r.max_dbar_w < tol)
        r.kind = Holomorphy::Holomorphic;
    else if (r.max_d_w < tol)
        r.kind = Holomorphy::AntiHolomorphic;
    else
        r.kind = Holomorphy::Mixed;
    return r;
}

cd inner(const Mat& a, const Mat& b) { return -0.5 * (a * b).trace(); }

}  // namespace sigsurf
