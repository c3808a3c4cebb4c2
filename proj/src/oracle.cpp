#include "wittenlab/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>

#include "wittenlab/errors.hpp"

namespace wittenlab {

namespace {

void validate_model(const OscillatorModel& model) {
    const int n = int(model.xi.size());
    if (n < 1) throw Error(ErrorCode::invalid_argument, "empty Hessian spectrum");
    if (model.degree < 0 || model.degree > n)
        throw Error(ErrorCode::invalid_argument, "degree out of range for model dimension");
    int negatives = 0;
    for (int j = 0; j < n; ++j) {
        if (model.xi[j] == 0.0)
            throw Error(ErrorCode::not_morse, "degenerate model: Hessian eigenvalue is zero");
        if (j > 0 && model.xi[j] < model.xi[j - 1])
            throw Error(ErrorCode::invalid_argument, "Hessian eigenvalues must be ascending");
        if (model.xi[j] < 0) ++negatives;
    }
    if (negatives != model.index)
        throw Error(ErrorCode::invalid_argument, "index does not match negative eigenvalue count");
}

// All values base + sum_j a_j * step_j <= cutoff over quantum numbers a >= 0.
void enumerate_ladder(const Eigen::VectorXd& step, int j, double value, double cutoff,
                      std::vector<double>& out) {
    if (j == step.size()) {
        out.push_back(value);
        return;
    }
    for (double v = value; v <= cutoff; v += step[j]) enumerate_ladder(step, j + 1, v, cutoff, out);
}

std::vector<std::pair<double, int>> merge_close(std::vector<double>& values) {
    std::sort(values.begin(), values.end());
    std::vector<std::pair<double, int>> entries;
    for (double v : values) {
        if (!entries.empty() && v - entries.back().first <= 1e-9 * std::max(1.0, std::abs(v)))
            ++entries.back().second;
        else
            entries.emplace_back(v, 1);
    }
    return entries;
}

// Lowest eigenvalues of -d2/dx2 + xi^2 x^2 on (-R, R) with Dirichlet ends,
// m interior points, dense tridiagonal diagonalization.
Eigen::VectorXd axis_spectrum(double xi, double R, int m, int count) {
    const double h = 2.0 * R / (m + 1);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        const double x = -R + (i + 1) * h;
        H(i, i) = 2.0 / (h * h) + xi * xi * x * x;
        if (i + 1 < m) H(i, i + 1) = H(i + 1, i) = -1.0 / (h * h);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw Error(ErrorCode::solver_failure, "axis oscillator diagonalization failed");
    return es.eigenvalues().head(count);
}

}  // namespace

const char* oracle_mode_name(OracleMode mode) {
    return mode == OracleMode::standard ? "standard" : "paper";
}

std::vector<double> ModelSpectrum::flattened(int count) const {
    std::vector<double> out;
    for (const auto& [value, mult] : entries)
        for (int i = 0; i < mult && int(out.size()) < count; ++i) out.push_back(value);
    return out;
}

ModelSpectrum oscillator_spectrum(const OscillatorModel& model, double cutoff, OracleMode mode) {
    validate_model(model);
    if (!(cutoff > 0)) throw Error(ErrorCode::invalid_argument, "cutoff must be positive");
    const int n = int(model.xi.size());
    const double edge = cutoff * (1.0 + 1e-12) + 1e-12;

    std::vector<double> values;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (int(std::popcount(mask)) != model.degree) continue;
        double base = 0.0;
        Eigen::VectorXd step(n);
        for (int j = 0; j < n; ++j) {
            const bool in_J = mask & (1u << j);
            if (mode == OracleMode::standard) {
                base += std::abs(model.xi[j]) + (in_J ? model.xi[j] : -model.xi[j]);
                step[j] = 2.0 * std::abs(model.xi[j]);
            } else {
                // Halved published form: occupied nonnegative directions add
                // xi, unoccupied negative directions subtract it.
                if (in_J && j >= model.index) base += model.xi[j];
                if (!in_J && j < model.index) base -= model.xi[j];
                step[j] = std::abs(model.xi[j]);
            }
        }
        if (base <= edge) enumerate_ladder(step, 0, base, edge, values);
    }

    ModelSpectrum result;
    result.entries = merge_close(values);
    result.cutoff = cutoff;
    result.mode = mode;
    result.provenance = "closed-form";
    return result;
}

ModelSpectrum brute_force_oscillator(const OscillatorModel& model, double R, int m) {
    validate_model(model);
    const int n = int(model.xi.size());
    if (n > 2)
        throw Error(ErrorCode::unsupported_dimension,
                    "brute-force oscillator supports dimension <= 2");
    const double min_abs = model.xi.cwiseAbs().minCoeff();
    if (!(R >= 6.0 / std::sqrt(min_abs)))
        throw Error(ErrorCode::invalid_argument, "box half-width too small for the weakest well");
    if (m < 200) throw Error(ErrorCode::invalid_argument, "need at least 200 grid points per axis");

    constexpr int kKeep = 10;
    const int per_axis = kKeep + 6;

    // The Dirichlet grid operator is the Kronecker sum of per-axis
    // tridiagonals, so its spectrum is exactly the set of sums of per-axis
    // eigenvalues. The fine grid 2m+1 halves h for Richardson extrapolation.
    std::vector<Eigen::VectorXd> coarse(n), fine(n);
    for (int j = 0; j < n; ++j) {
        coarse[j] = axis_spectrum(model.xi[j], R, m, per_axis);
        fine[j] = axis_spectrum(model.xi[j], R, 2 * m + 1, per_axis);
    }

    std::vector<std::pair<double, double>> collected;  // (value, error estimate)
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (int(std::popcount(mask)) != model.degree) continue;
        double c_J = 0.0;
        for (int j = 0; j < n; ++j) c_J += (mask & (1u << j)) ? model.xi[j] : -model.xi[j];

        std::vector<double> sum_c, sum_f;
        if (n == 1) {
            for (int i = 0; i < per_axis; ++i) {
                sum_c.push_back(coarse[0][i] + c_J);
                sum_f.push_back(fine[0][i] + c_J);
            }
        } else {
            for (int i = 0; i < per_axis; ++i)
                for (int l = 0; l < per_axis; ++l) {
                    sum_c.push_back(coarse[0][i] + coarse[1][l] + c_J);
                    sum_f.push_back(fine[0][i] + fine[1][l] + c_J);
                }
        }
        std::sort(sum_c.begin(), sum_c.end());
        std::sort(sum_f.begin(), sum_f.end());
        const int take = std::min<int>(kKeep + 2, int(sum_c.size()));
        for (int i = 0; i < take; ++i)
            collected.emplace_back((4.0 * sum_f[i] - sum_c[i]) / 3.0,
                                   std::abs(sum_f[i] - sum_c[i]));
    }

    std::sort(collected.begin(), collected.end());
    ModelSpectrum result;
    result.mode = OracleMode::standard;
    result.provenance = "brute-force";
    for (int i = 0; i < std::min<int>(kKeep, int(collected.size())); ++i) {
        result.entries.emplace_back(collected[i].first, 1);
        result.error_estimate.push_back(collected[i].second);
    }
    result.cutoff = result.entries.empty() ? 0.0 : result.entries.back().first;
    return result;
}

ModelSpectrum aggregate_limit_spectrum(const MorseData& data, int p, double cutoff,
                                       OracleMode mode) {
    std::vector<double> values;
    for (const auto& cp : data.points) {
        OscillatorModel model{cp.xi, cp.index, p};
        const ModelSpectrum single = oscillator_spectrum(model, cutoff, mode);
        for (const auto& [value, mult] : single.entries)
            for (int i = 0; i < mult; ++i) values.push_back(value);
    }
    ModelSpectrum result;
    result.entries = merge_close(values);
    result.cutoff = cutoff;
    result.mode = mode;
    result.provenance = "closed-form";
    return result;
}

MorseReport morse_inequalities_check(const std::vector<int>& C, const std::vector<int>& b) {
    if (C.size() != b.size())
        throw Error(ErrorCode::invalid_argument, "count vectors differ in length");
    MorseReport report;
    for (size_t k = 0; k < C.size(); ++k) {
        int slack = 0, sign = 1;
        for (int i = int(k); i >= 0; --i, sign = -sign) slack += sign * (C[i] - b[i]);
        report.slacks.push_back(slack);
    }
    report.pass = std::all_of(report.slacks.begin(), report.slacks.end(),
                              [](int s) { return s >= 0; });
    report.euler_exact = !report.slacks.empty() && report.slacks.back() == 0;
    return report;
}

}  // namespace wittenlab
