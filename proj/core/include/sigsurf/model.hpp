#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "sigsurf/expr.hpp"
#include "sigsurf/jet.hpp"

namespace sigsurf {

using Mat = Eigen::MatrixXcd;

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense matrix of jets; every entry carries the same truncation order.
class JetMat {
public:
    JetMat() = default;
    JetMat(int rows, int cols, int order = Jet::kMax);
    static JetMat identity(int n, int order = Jet::kMax);
    static JetMat constant(const Mat& m, int order = Jet::kMax);

    int rows() const { return r_; }
    int cols() const { return c_; }
    int order() const;
    Jet& operator()(int i, int j) { return e_[i * c_ + j]; }
    const Jet& operator()(int i, int j) const { return e_[i * c_ + j]; }

    Mat value() const;
    Mat d(int a, int b) const;
    JetMat dxi() const;
    JetMat dxibar() const;
    JetMat transpose() const;
    JetMat conj() const;  // entrywise Taylor series of the conjugate function
    Jet trace() const;

    JetMat& operator+=(const JetMat& o);
    JetMat& operator-=(const JetMat& o);
    friend JetMat operator+(JetMat a, const JetMat& b) { return a += b; }
    friend JetMat operator-(JetMat a, const JetMat& b) { return a -= b; }
    friend JetMat operator*(const JetMat& a, const JetMat& b);
    friend JetMat operator*(const Jet& s, JetMat a);
    friend JetMat operator*(cd s, JetMat a);
    JetMat operator-() const;

private:
    int r_ = 0, c_ = 0;
    std::vector<Jet> e_;
};

// The N-1 affine fields and their (possibly user-supplied) conjugates.
struct AffineSolution {
    int N = 2;
    std::vector<expr::Expr> w, wb;
    expr::ParamMap params;
    std::string name;
    // formal: w and wb are independent (perturbed/complexified); skips the
    // pointwise conjugate-consistency check
    bool formal = false;
    std::vector<cd> singularities;

    static AffineSolution from_exprs(std::vector<expr::Expr> w, std::vector<expr::Expr> wb = {},
                                     expr::ParamMap params = {}, std::string name = {});
    static AffineSolution from_strings(const std::vector<std::string>& w, const std::vector<std::string>& wb = {},
                                       expr::ParamMap params = {}, std::string name = {});
    void validate() const;
};

struct FieldJets {
    std::vector<Jet> w, wb;
};

// Derivative towers for every field, built once and reused across points.
class SolutionEvaluator {
public:
    explicit SolutionEvaluator(AffineSolution s, int order = Jet::kMax);
    const AffineSolution& solution() const { return s_; }
    int N() const { return s_.N; }
    int order() const { return order_; }
    FieldJets fields(cd xi, int order = Jet::kMax) const;
    double conjugate_tolerance = 1e-12;

private:
    AffineSolution s_;
    int order_;
    std::vector<expr::Tower> tw_, twb_;
};

// Everything the model derives at one point, as jets.
struct PointModel {
    cd xi;
    int N = 0;
    FieldJets fields;
    JetMat f, fb;   // N x 1 homogeneous field (f_1 = 1) and its formal conjugate
    Jet n;          // fb . f
    JetMat P;       // order 3
    JetMat K, Kd;   // K = [dbar P, P], Kd = -[d P, P]; order 2
    Jet q, J, Jb;   // order 2
};

// order: jet order of the fields (default: evaluator order); K, q, J carry order-1.
PointModel model_at(const SolutionEvaluator& ev, cd xi, int order = -1);

// First-order data as plain matrices: all that path and area quadratures need.
struct FirstOrderModel {
    int N = 0;
    FieldJets fields;
    Mat P, dP, dbP, K, Kd;
    double q = 0;
    cd J, Jb;
};
FirstOrderModel first_order_at(const SolutionEvaluator& ev, cd xi);

struct KPair {
    Mat K, Kd;
};

struct ScalarInvariants {
    cd J, Jb;
    double q = 0;
    double action_density = 0;
};

struct ELResidual {
    double conservation = 0;  // ||dK - dbar K^dagger||_F
    double affine = 0;        // max modulus of the affine equations
    double max() const { return std::max(conservation, affine); }
};

enum class Holomorphy { Holomorphic, AntiHolomorphic, Mixed };
const char* holomorphy_name(Holomorphy h);

struct HolomorphyReport {
    double max_dbar_w = 0;  // max |dbar w_i|
    double max_d_w = 0;     // max |d w_i|
    Holomorphy kind = Holomorphy::Mixed;
};

Mat projector_at(const SolutionEvaluator& ev, cd xi);
KPair k_matrices_at(const SolutionEvaluator& ev, cd xi);
// Explicit outer-product formula for K, K^dagger (independent of the commutator form).
KPair k_explicit(const PointModel& m);
ELResidual el_residual(const PointModel& m);
ELResidual el_residual_at(const SolutionEvaluator& ev, cd xi);
ScalarInvariants scalar_invariants(const PointModel& m);
ScalarInvariants scalar_invariants_at(const SolutionEvaluator& ev, cd xi);
double dc_residual(const PointModel& m);
double dc_residual_at(const SolutionEvaluator& ev, cd xi);
// K = M + L with M = (I-P) dbar P, L = -dbar P (I-P); returns max of |K-M-L| and |M-L-dbar P|.
double k_decomposition_residual(const PointModel& m);
HolomorphyReport holomorphy_check(const SolutionEvaluator& ev, const std::vector<cd>& points, double tol = 1e-10);

// -1/2 tr(AB)
cd inner(const Mat& a, const Mat& b);

}  // namespace sigsurf
