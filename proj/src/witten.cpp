#include "wittenlab/witten.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "wittenlab/errors.hpp"

namespace wittenlab {

WittenComplex deform(const CochainComplex& complex, const ScalarField& field, double t) {
    check_domain(field, complex.kind);
    if (std::isnan(t) || t <= 0)
        throw Error(ErrorCode::invalid_argument, "deformation parameter t must be positive");

    WittenComplex wc;
    wc.complex = &complex;
    wc.t = t;
    if (std::isinf(t)) {
        wc.D = complex.d;
        return wc;
    }

    std::vector<Eigen::VectorXd> fb(complex.dim + 1);
    for (int p = 0; p <= complex.dim; ++p) fb[p] = evaluate_field(field, complex.barycenter[p]);

    double worst = 0.0;
    for (int p = 0; p < complex.dim; ++p)
        for (int col = 0; col < complex.d[p].outerSize(); ++col)
            for (SpMat::InnerIterator it(complex.d[p], col); it; ++it)
                worst = std::max(worst, std::abs(fb[p][it.col()] - fb[p + 1][it.row()]) / t);
    if (worst > kOverflowGuard) {
        std::ostringstream msg;
        msg << "local field difference ratio " << worst << " exceeds the guard "
            << kOverflowGuard << " at t=" << t << "; refine the mesh or raise t";
        throw Error(ErrorCode::overflow_guard, msg.str());
    }

    wc.D.reserve(complex.dim);
    for (int p = 0; p < complex.dim; ++p) {
        SpMat D = complex.d[p];
        for (int col = 0; col < D.outerSize(); ++col)
            for (SpMat::InnerIterator it(D, col); it; ++it)
                it.valueRef() *= std::exp((fb[p][it.col()] - fb[p + 1][it.row()]) / t);
        wc.D.push_back(std::move(D));
    }
    return wc;
}

SpMat witten_laplacian(const WittenComplex& wc, int p) {
    const CochainComplex& c = *wc.complex;
    if (p < 0 || p > c.dim) throw Error(ErrorCode::invalid_argument, "degree out of range");
    const SpMat* up = p < c.dim ? &wc.D[p] : nullptr;
    const SpMat* down = p > 0 ? &wc.D[p - 1] : nullptr;
    return normalized_laplacian(c, p, up, down);
}

SpectrumTable smallest_eigs(const SpMat& A, int degree, double t, int k, const EigOptions& opt,
                            const Eigen::MatrixXd* initial) {
    const EigResult r = smallest_eigenpairs(A, k, opt, initial);
    SpectrumTable table;
    table.degree = degree;
    table.t = t;
    table.lambda = r.values;
    table.residual = r.residuals;
    table.iterations = r.iterations;
    return table;
}

int cluster_count(const SpectrumTable& table, double threshold) {
    if (!(threshold > 0)) throw Error(ErrorCode::invalid_argument, "threshold must be positive");
    int count = 0;
    for (Eigen::Index i = 0; i < table.lambda.size(); ++i)
        if (table.t * table.lambda[i] <= threshold) ++count;
    return count;
}

FlowResult spectral_flow(const CochainComplex& complex, const ScalarField& field,
                         const std::vector<double>& schedule, int p, int k,
                         const EigOptions& opt) {
    if (schedule.empty()) throw Error(ErrorCode::invalid_argument, "empty t schedule");
    for (size_t j = 1; j < schedule.size(); ++j)
        if (!(schedule[j] < schedule[j - 1]))
            throw Error(ErrorCode::invalid_argument, "t schedule must be strictly decreasing");
    if (p < 0 || p > complex.dim) throw Error(ErrorCode::invalid_argument, "degree out of range");
    if (k < 1 || k >= complex.dims[p])
        throw Error(ErrorCode::invalid_argument, "k must be in [1, dim of degree)");

    FlowResult flow;
    std::vector<Eigen::VectorXd> rows;
    Eigen::MatrixXd warm;
    for (double t : schedule) {
        try {
            const WittenComplex wc = deform(complex, field, t);
            const SpMat A = witten_laplacian(wc, p);
            const EigResult r = smallest_eigenpairs(A, k, opt, warm.size() ? &warm : nullptr);
            flow.schedule.push_back(t);
            rows.push_back(t * r.values);
            // Converged eigenvectors seed the next, nearby t.
            warm = r.vectors;
        } catch (const Error& e) {
            if (!e.numerical()) throw;
            std::fprintf(stderr, "warning: t=%.17g skipped: %s\n", t, e.what());
            flow.skipped_t.push_back(t);
            flow.skipped_reason.push_back(e.what());
        }
    }

    Eigen::MatrixXd mat(rows.size(), k);
    for (size_t r = 0; r < rows.size(); ++r) mat.row(r) = rows[r].transpose();
    flow.degrees[p] = std::move(mat);
    return flow;
}

}  // namespace wittenlab
