#include "wittenlab/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "wittenlab/errors.hpp"
#include "wittenlab/morse.hpp"
#include "wittenlab/oracle.hpp"
#include "wittenlab/parallel.hpp"

namespace wittenlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::vector<double> midpoint_intercepts(int n_trans) {
    std::vector<double> w(n_trans);
    for (int j = 0; j < n_trans; ++j) w[j] = (j + 0.5) / n_trans;
    return w;
}

std::string leaf_label(double intercept) {
    std::ostringstream os;
    os << "leaf w=" << intercept;
    return os.str();
}

// Per-leaf critical data, grouped by intercept for reuse.
struct LeafCriticalData {
    std::vector<FoliatedSample> samples;
};

LeafCriticalData leaf_critical_data(const ScalarField& field, const KroneckerModel& model,
                                    double intercept) {
    const ScalarField restricted = leafwise_restrict(field, model, intercept);
    MorseData morse;
    try {
        morse = find_critical_points(restricted, model.leaf_mesh);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::not_morse) throw;
        throw Error(ErrorCode::not_leafwise_morse,
                    std::string(e.what()) + " (" + leaf_label(intercept) + ")");
    }
    if (morse.points.empty())
        throw Error(ErrorCode::not_leafwise_morse,
                    "no leafwise critical point found on " + leaf_label(intercept));

    const double radius = model.leaf_length / kTwoPi;
    LeafCriticalData data;
    for (const auto& cp : morse.points) {
        FoliatedSample s;
        s.intercept = intercept;
        s.arc = cp.location[0] * radius;
        s.curvature = cp.xi[0];
        s.index = cp.xi[0] < 0 ? 1 : 0;
        data.samples.push_back(s);
    }
    return data;
}

FoliatedCriticalSet critical_set_at(const ScalarField& field, const KroneckerModel& model,
                                    const std::vector<double>& intercepts) {
    FoliatedCriticalSet out;
    const double weight = 1.0 / double(intercepts.size());
    for (double w : intercepts) {
        const LeafCriticalData data = leaf_critical_data(field, model, w);
        for (const auto& s : data.samples) {
            out.c[s.index] += weight;
            out.samples.push_back(s);
        }
    }
    return out;
}

std::array<double, 2> slacks_from(const std::array<double, 2>& c, const std::array<double, 2>& b) {
    return {c[0] - b[0], (c[1] - b[1]) - (c[0] - b[0])};
}

}  // namespace

KroneckerModel build_kronecker(int a, int b, int n_leaf, int n_trans) {
    if (a == 0 && b == 0) throw Error(ErrorCode::invalid_argument, "slope (0,0) is not a direction");
    if (std::gcd(std::abs(a), std::abs(b)) != 1)
        throw Error(ErrorCode::invalid_argument,
                    "slope (" + std::to_string(a) + "," + std::to_string(b) +
                        ") is not coprime; leaves would be traced multiple times");
    if (n_leaf < 64) throw Error(ErrorCode::invalid_argument, "n_leaf must be at least 64");
    if (n_trans < 16) throw Error(ErrorCode::invalid_argument, "n_trans must be at least 16");

    KroneckerModel model;
    model.a = a;
    model.b = b;
    model.n_leaf = n_leaf;
    model.n_trans = n_trans;
    model.leaf_length = kTwoPi * std::sqrt(double(a) * a + double(b) * b);
    model.leaf_mesh = build_circle(n_leaf, model.leaf_length / kTwoPi);
    model.leaf_complex = build_complex(model.leaf_mesh);
    model.intercepts = midpoint_intercepts(n_trans);
    return model;
}

std::array<double, 3> leaf_point(const KroneckerModel& model, double intercept, double s) {
    const double norm2 = double(model.a) * model.a + double(model.b) * model.b;
    const double norm = std::sqrt(norm2);
    // Base point advances along the transverse direction (-b, a); one unit of
    // intercept spans the full transversal width 2pi/norm.
    const double th1 = kTwoPi * intercept * (-model.b) / norm2 + s * model.a / norm;
    const double th2 = kTwoPi * intercept * model.a / norm2 + s * model.b / norm;
    return {th1, th2, 0.0};
}

ScalarField leafwise_restrict(const ScalarField& field, const KroneckerModel& model,
                              double intercept) {
    check_domain(field, ModelKind::flat_torus);
    const double norm2 = double(model.a) * model.a + double(model.b) * model.b;
    const double norm = std::sqrt(norm2);
    const double u1 = model.a / norm, u2 = model.b / norm;
    const double radius = model.leaf_length / kTwoPi;
    // Torus point of the leaf angle coordinate, captured by value so the
    // returned field outlives the model.
    const double base1 = kTwoPi * intercept * (-model.b) / norm2;
    const double base2 = kTwoPi * intercept * model.a / norm2;
    auto at = [base1, base2, radius, u1, u2](double theta) {
        const double s = theta * radius;
        return std::array<double, 3>{base1 + s * u1, base2 + s * u2, 0.0};
    };

    ScalarField leaf;
    leaf.domain = ModelKind::circle;
    leaf.name = field.name + "|" + leaf_label(intercept);
    leaf.scale = field.scale;
    leaf.value = [field, at](const std::array<double, 3>& p) { return field.value(at(p[0])); };
    leaf.gradient = [field, at, radius, u1, u2](const std::array<double, 3>& p) {
        const auto g = field.gradient(at(p[0]));
        return std::array<double, 3>{radius * (g[0] * u1 + g[1] * u2), 0.0, 0.0};
    };
    leaf.hessian = [field, at, radius, u1, u2](const std::array<double, 3>& p) {
        const auto h = field.hessian(at(p[0]));
        const double huu = h[0] * u1 * u1 + (h[1] + h[3]) * u1 * u2 + h[4] * u2 * u2;
        std::array<double, 9> out{};
        out[0] = radius * radius * huu;
        return out;
    };
    return leaf;
}

FoliatedCriticalSet foliated_critical_set(const ScalarField& field, const KroneckerModel& model) {
    return critical_set_at(field, model, model.intercepts);
}

TransversalityReport transversality_check(const ScalarField& field, const KroneckerModel& model,
                                          const FoliatedCriticalSet& crit) {
    const double norm = std::sqrt(double(model.a) * model.a + double(model.b) * model.b);
    const double u1 = model.a / norm, u2 = model.b / norm;

    TransversalityReport report;
    report.pass = true;
    report.margin = crit.samples.empty() ? 0.0 : std::numeric_limits<double>::infinity();
    for (const auto& s : crit.samples) {
        const auto p = leaf_point(model, s.intercept, s.arc);
        const auto h = field.hessian(p);
        // Row of the mixed bilinear form: full Hessian contracted with the
        // leaf direction; rank 1 means the row is nonzero.
        const double r1 = h[0] * u1 + h[1] * u2;
        const double r2 = h[3] * u1 + h[4] * u2;
        const double margin = std::hypot(r1, r2) / field.scale;
        if (margin < report.margin) {
            report.margin = margin;
            report.worst = {p[0], p[1]};
        }
    }
    if (report.margin < 1e-8) report.pass = false;
    return report;
}

SpectrumTable leafwise_witten_spectrum(const KroneckerModel& model, const ScalarField& field,
                                       double intercept, double t, int p, int k,
                                       const EigOptions& opt) {
    const ScalarField restricted = leafwise_restrict(field, model, intercept);
    try {
        const WittenComplex wc = deform(model.leaf_complex, restricted, t);
        const SpMat A = witten_laplacian(wc, p);
        return smallest_eigs(A, p, t, k, opt);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::overflow_guard) throw;
        throw Error(ErrorCode::overflow_guard,
                    std::string(e.what()) + " (" + leaf_label(intercept) + ")");
    }
}

double TestFunction::operator()(double x) const {
    if (x <= a1 || x >= b2) return 0.0;
    if (x < a2) return (x - a1) / (a2 - a1);
    if (x <= b1) return 1.0;
    return (b2 - x) / (b2 - b1);
}

namespace {

void validate_phi(const TestFunction& phi) {
    if (!(phi.a1 < phi.a2 && phi.a2 <= phi.b1 && phi.b1 < phi.b2))
        throw Error(ErrorCode::invalid_argument, "test function knots must be increasing");
}

// Sum of phi over the rescaled leaf spectrum, with the support check that
// makes the truncation at k eigenvalues exact.
double leaf_phi_sum(const KroneckerModel& model, const ScalarField& field, double intercept,
                    double t, int p, const FoliationOptions& opt, const Eigen::MatrixXd* warm,
                    Eigen::MatrixXd* vectors_out) {
    const ScalarField restricted = leafwise_restrict(field, model, intercept);
    WittenComplex wc;
    try {
        wc = deform(model.leaf_complex, restricted, t);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::overflow_guard) throw;
        throw Error(ErrorCode::overflow_guard,
                    std::string(e.what()) + " (" + leaf_label(intercept) + ")");
    }
    const SpMat A = witten_laplacian(wc, p);
    const EigResult r = smallest_eigenpairs(A, opt.k, opt.eig, warm);
    if (vectors_out) *vectors_out = r.vectors;
    const double top = t * r.values[opt.k - 1];
    if (!(top > opt.phi.b2)) {
        std::ostringstream msg;
        msg << "k=" << opt.k << " eigenvalues reach only t*lambda=" << top
            << ", inside the support of the test function (ends " << opt.phi.b2 << ") on "
            << leaf_label(intercept) << " at t=" << t << "; raise k";
        throw Error(ErrorCode::insufficient_k, msg.str());
    }
    double sum = 0.0;
    for (int j = 0; j < opt.k; ++j) sum += opt.phi(t * r.values[j]);
    return sum;
}

double leaf_phi_limit(const KroneckerModel& model, const ScalarField& field, double intercept,
                      int p, const FoliationOptions& opt) {
    const LeafCriticalData data = leaf_critical_data(field, model, intercept);
    double sum = 0.0;
    for (const auto& s : data.samples) {
        OscillatorModel osc;
        osc.xi = Eigen::VectorXd::Constant(1, s.curvature);
        osc.index = s.index;
        osc.degree = p;
        const ModelSpectrum spec =
            oscillator_spectrum(osc, opt.phi.b2 + 1.0, OracleMode::standard);
        for (const auto& [value, mult] : spec.entries) sum += mult * opt.phi(value);
    }
    return sum;
}

}  // namespace

double trace(const KroneckerModel& model, const ScalarField& field, double t, int p,
             const FoliationOptions& opt) {
    validate_phi(opt.phi);
    const int n = model.n_trans;
    std::vector<double> per_leaf(n);
    parallel_for(n, opt.workers, [&](int j) {
        per_leaf[j] = leaf_phi_sum(model, field, model.intercepts[j], t, p, opt, nullptr, nullptr);
    });
    return std::accumulate(per_leaf.begin(), per_leaf.end(), 0.0) / n;
}

double trace_limit(const KroneckerModel& model, const ScalarField& field, int p,
                   const FoliationOptions& opt) {
    validate_phi(opt.phi);
    const int n = model.n_trans;
    std::vector<double> per_leaf(n);
    parallel_for(n, opt.workers,
                 [&](int j) { per_leaf[j] = leaf_phi_limit(model, field, model.intercepts[j], p, opt); });
    return std::accumulate(per_leaf.begin(), per_leaf.end(), 0.0) / n;
}

double hessian_singular_integral(const KroneckerModel& model, const ScalarField& field) {
    const FoliatedCriticalSet crit = foliated_critical_set(field, model);
    double sum = 0.0;
    for (const auto& s : crit.samples) sum += 1.0 / std::abs(s.curvature);
    return sum / model.n_trans;
}

TraceReport trace_report(const KroneckerModel& model, const ScalarField& field,
                         const std::vector<double>& schedule, const FoliationOptions& opt) {
    validate_phi(opt.phi);
    if (schedule.empty()) throw Error(ErrorCode::invalid_argument, "empty t schedule");
    for (size_t j = 1; j < schedule.size(); ++j)
        if (!(schedule[j] < schedule[j - 1]))
            throw Error(ErrorCode::invalid_argument, "t schedule must be strictly decreasing");

    TraceReport report;
    report.a = model.a;
    report.b = model.b;
    report.phi = opt.phi;

    const FoliatedCriticalSet crit = critical_set_at(field, model, model.intercepts);
    const FoliatedCriticalSet crit_half =
        critical_set_at(field, model, midpoint_intercepts(model.n_trans / 2));

    // Undeformed leafwise kernels; every leaf carries the same complex, so
    // one kernel count spans the whole unit transverse measure.
    const std::vector<int> leaf_betti = betti(model.leaf_complex);
    report.beta = {double(leaf_betti[0]), double(leaf_betti[1])};
    report.c = crit.c;
    report.slacks = slacks_from(crit.c, report.beta);
    const std::array<double, 2> slacks_half = slacks_from(crit_half.c, report.beta);
    report.error_bars = {std::abs(report.slacks[0] - slacks_half[0]),
                         std::abs(report.slacks[1] - slacks_half[1])};
    report.pass = report.slacks[0] >= -report.error_bars[0] &&
                  report.slacks[1] >= -report.error_bars[1];

    const TransversalityReport trans = transversality_check(field, model, crit);
    report.transversality_margin = trans.margin;
    if (!trans.pass) report.pass = false;

    report.hessian_integral = 0.0;
    for (const auto& s : crit.samples) report.hessian_integral += 1.0 / std::abs(s.curvature);
    report.hessian_integral /= model.n_trans;

    const int n_sched = int(schedule.size());
    for (int p = 0; p <= 1; ++p) {
        // One warm-started schedule sweep per leaf, gathered leaf-major and
        // reduced in leaf order per schedule point.
        Eigen::MatrixXd contrib(model.n_trans, n_sched);
        parallel_for(model.n_trans, opt.workers, [&](int j) {
            Eigen::MatrixXd warm;
            for (int ti = 0; ti < n_sched; ++ti) {
                contrib(j, ti) = leaf_phi_sum(model, field, model.intercepts[j], schedule[ti], p,
                                              opt, warm.size() ? &warm : nullptr, &warm);
            }
        });
        std::vector<double>& tr = report.traces[p];
        tr.assign(n_sched, 0.0);
        for (int ti = 0; ti < n_sched; ++ti) {
            double sum = 0.0;
            for (int j = 0; j < model.n_trans; ++j) sum += contrib(j, ti);
            tr[ti] = sum / model.n_trans;
        }
        tr.push_back(trace_limit(model, field, p, opt));
    }

    report.schedule = schedule;
    report.schedule.push_back(0.0);
    return report;
}

}  // namespace wittenlab
