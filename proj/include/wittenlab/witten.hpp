#pragma once

#include <Eigen/Core>
#include <map>
#include <string>
#include <vector>

#include "wittenlab/complex.hpp"
#include "wittenlab/eigs.hpp"
#include "wittenlab/fields.hpp"

namespace wittenlab {

// Deformed complex D_t = W^-1 d W with W = diag(e^{f(barycenter)/t}).
// Conjugation keeps D_t D_t = 0 and the cohomology exact; entries only see
// local differences of f. t = +infinity means the undeformed complex.
struct WittenComplex {
    const CochainComplex* complex = nullptr;
    double t = 0.0;
    std::vector<SpMat> D;
};

// Largest |f difference|/t across incident simplex pairs before deform
// refuses to exponentiate.
inline constexpr double kOverflowGuard = 30.0;

WittenComplex deform(const CochainComplex& complex, const ScalarField& field, double t);

// Mass-normalized symmetric form of (d_t + d_t*)^2 in degree p.
SpMat witten_laplacian(const WittenComplex& wc, int p);

struct SpectrumTable {
    int degree = 0;
    double t = 0.0;
    Eigen::VectorXd lambda;    // ascending
    Eigen::VectorXd residual;  // relative, per pair
    int iterations = 0;
};

SpectrumTable smallest_eigs(const SpMat& A, int degree, double t, int k,
                            const EigOptions& opt = {}, const Eigen::MatrixXd* initial = nullptr);

// Number of rescaled eigenvalues t*lambda at or below the threshold.
int cluster_count(const SpectrumTable& table, double threshold);

struct FlowResult {
    std::vector<double> schedule;  // successfully solved t values, decreasing
    // degree -> rows over the schedule, columns are t*lambda tracks
    std::map<int, Eigen::MatrixXd> degrees;
    // degree -> limit values attached from the oracle, if any
    std::map<int, std::vector<double>> oracle;
    std::vector<double> skipped_t;
    std::vector<std::string> skipped_reason;
};

// Sweep the schedule (strictly decreasing t), solving the degree-p Witten
// Laplacian at each point. A numerically failing t is reported on stderr and
// skipped; it never contaminates neighbouring rows.
FlowResult spectral_flow(const CochainComplex& complex, const ScalarField& field,
                         const std::vector<double>& schedule, int p, int k,
                         const EigOptions& opt = {});

}  // namespace wittenlab
