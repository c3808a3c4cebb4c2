#pragma once

#include <array>
#include <string>
#include <vector>

#include "wittenlab/complex.hpp"
#include "wittenlab/fields.hpp"
#include "wittenlab/witten.hpp"

namespace wittenlab {

// Rational-slope Kronecker foliation of the square torus [0,2pi)^2: leaves
// run along (a,b)/sqrt(a^2+b^2) and close after length 2pi sqrt(a^2+b^2).
// The transversal circle carries normalized Lebesgue measure; n_trans
// midpoint intercepts sample it, each leaf meshed as a circle of n_leaf
// vertices.
struct KroneckerModel {
    int a = 1, b = 0;
    int n_leaf = 512;
    int n_trans = 64;
    double leaf_length = 0.0;
    Mesh leaf_mesh;
    CochainComplex leaf_complex;
    std::vector<double> intercepts;  // normalized transverse coordinates in [0,1)
};

KroneckerModel build_kronecker(int a, int b, int n_leaf, int n_trans);

// Point of the leaf through intercept w at arc length s, in torus angles.
std::array<double, 3> leaf_point(const KroneckerModel& model, double intercept, double s);

// Restriction of a torus field to one leaf, as a circle field in the leaf
// angle coordinate (arc length / leaf radius), with chain-ruled derivatives.
ScalarField leafwise_restrict(const ScalarField& field, const KroneckerModel& model,
                              double intercept);

struct FoliatedSample {
    double intercept = 0.0;
    double arc = 0.0;        // arc-length position on the leaf
    double curvature = 0.0;  // leafwise second derivative in arc-length units
    int index = 0;           // 0 or 1 from the sign of the curvature
};

struct FoliatedCriticalSet {
    std::vector<FoliatedSample> samples;
    std::array<double, 2> c{};  // transverse measure of each index class
};

// Leafwise critical points on every sampled leaf; throws not_leafwise_morse
// when a leaf has a degenerate (or identically vanishing) restriction.
FoliatedCriticalSet foliated_critical_set(const ScalarField& field, const KroneckerModel& model);

struct TransversalityReport {
    bool pass = true;
    double margin = 0.0;  // min |H u| over samples, relative to field scale
    std::array<double, 2> worst{};
};

// Rank of the mixed Hessian row u' H at each sampled critical point: the
// critical set is a transverse submanifold iff the row never vanishes.
TransversalityReport transversality_check(const ScalarField& field, const KroneckerModel& model,
                                          const FoliatedCriticalSet& crit);

SpectrumTable leafwise_witten_spectrum(const KroneckerModel& model, const ScalarField& field,
                                       double intercept, double t, int p, int k,
                                       const EigOptions& opt = {});

// Lipschitz bump on the rescaled eigenvalue axis: 0 outside [a1, b2],
// 1 on [a2, b1], linear in between.
struct TestFunction {
    double a1 = 0.2, a2 = 0.7, b1 = 1.1, b2 = 1.9;
    double operator()(double x) const;
};

struct FoliationOptions {
    TestFunction phi;
    int k = 16;  // eigenvalues per leaf; must clear the support of phi
    EigOptions eig;
    int workers = 1;
};

// tau_t(phi(Delta_t^p)) = integral over the transversal of sum_j
// phi(t lambda_j), midpoint quadrature over the sampled leaves. Throws
// insufficient_k when t lambda_k fails to clear the support of phi.
double trace(const KroneckerModel& model, const ScalarField& field, double t, int p,
             const FoliationOptions& opt);

// t = 0 limit of the trace: oscillator values of the leafwise critical
// points, fed through phi and integrated in the transverse measure.
double trace_limit(const KroneckerModel& model, const ScalarField& field, int p,
                   const FoliationOptions& opt);

// Diagnostic integral of 1/|leafwise f''| over the critical set; finite
// exactly when the field stays leafwise Morse.
double hessian_singular_integral(const KroneckerModel& model, const ScalarField& field);

struct TraceReport {
    int a = 1, b = 0;
    std::vector<double> schedule;                // decreasing, 0.0 appended last
    std::array<std::vector<double>, 2> traces;   // per degree, aligned with schedule
    std::array<double, 2> c{};
    std::array<double, 2> beta{};
    std::array<double, 2> slacks{};      // alternating partial sums of c - beta
    std::array<double, 2> error_bars{};  // quadrature estimate per slack
    TestFunction phi;
    double hessian_integral = 0.0;
    double transversality_margin = 0.0;
    bool pass = false;  // every slack >= -error bar
};

// Full foliated run: critical measures, undeformed kernel measures beta,
// Morse slacks with half-resolution error bars, and the trace curves over
// the schedule plus the t = 0 oracle point.
TraceReport trace_report(const KroneckerModel& model, const ScalarField& field,
                         const std::vector<double>& schedule, const FoliationOptions& opt);

}  // namespace wittenlab
