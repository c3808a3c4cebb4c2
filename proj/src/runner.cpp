#include "wittenlab/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "wittenlab/complex.hpp"
#include "wittenlab/errors.hpp"
#include "wittenlab/fields.hpp"
#include "wittenlab/foliation.hpp"
#include "wittenlab/io.hpp"
#include "wittenlab/morse.hpp"
#include "wittenlab/oracle.hpp"
#include "wittenlab/version.hpp"
#include "wittenlab/witten.hpp"

namespace wittenlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

Mesh build_model(const RunConfig& c) {
    if (c.model == "circle") return build_circle(c.n, c.radius);
    if (c.model == "torus") {
        const int n1 = c.n1 > 0 ? c.n1 : c.n;
        const int n2 = c.n2 > 0 ? c.n2 : c.n;
        const double L1 = c.L1 > 0 ? c.L1 : kTwoPi;
        const double L2 = c.L2 > 0 ? c.L2 : kTwoPi;
        return build_flat_torus(n1, n2, L1, L2);
    }
    if (c.model.rfind("mesh:", 0) == 0) return load_mesh(c.model.substr(5));
    throw Error(ErrorCode::config_error, "unknown model \"" + c.model + "\"");
}

ScalarField build_field(const RunConfig& c) {
    std::map<std::string, double> params;
    if (c.has_field_k) params["k"] = c.field_k;
    if (c.has_field_epsilon) params["epsilon"] = c.field_epsilon;
    return make_field(c.field, params);
}

EigOptions eig_options(const RunConfig& c) {
    EigOptions opt;
    opt.tol = c.tol;
    opt.seed = c.seed;
    return opt;
}

OracleMode oracle_mode(const RunConfig& c) {
    return c.oracle_mode == "paper" ? OracleMode::paper : OracleMode::standard;
}

std::filesystem::path ensure_out_dir(const RunConfig& c) {
    std::filesystem::path dir(c.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::io_error, "cannot create output directory " + c.out);
    return dir;
}

JsonValue config_json(const RunConfig& c) {
    JsonValue obj = JsonValue::object();
    for (const auto& [key, value] : resolved_entries(c)) obj.set(key, JsonValue::string(value));
    return obj;
}

// Small-t runs under-resolve the localization wells once the well width
// sqrt(t) shrinks toward the mesh spacing; say so, once, on stderr.
void width_note(const CochainComplex& complex, double t_min) {
    const double h = complex.max_edge_length;
    if (h > 0 && std::isfinite(t_min) && std::sqrt(t_min) < 20.0 * h)
        std::fprintf(stderr,
                     "note: sqrt(t)/h = %.3g at t=%.3g is below 20; localization wells are "
                     "resolved by few mesh cells\n",
                     std::sqrt(t_min) / h, t_min);
}

std::string spectrum_csv(const SpectrumTable& table) {
    std::string csv = "degree,t,index,lambda,t_lambda,residual\n";
    for (Eigen::Index i = 0; i < table.lambda.size(); ++i) {
        csv += std::to_string(table.degree) + ',' + format_double(table.t) + ',' +
               std::to_string(i + 1) + ',' + format_double(table.lambda[i]) + ',' +
               format_double(table.t * table.lambda[i]) + ',' +
               format_double(table.residual[i]) + '\n';
    }
    return csv;
}

std::vector<double> oracle_track_values(const MorseData& morse, int p, const RunConfig& c,
                                        int count) {
    const ModelSpectrum limits = aggregate_limit_spectrum(morse, p, c.cutoff, oracle_mode(c));
    return limits.flattened(count);
}

}  // namespace

void cmd_spectrum(const RunConfig& c) {
    const Mesh mesh = build_model(c);
    const CochainComplex complex = build_complex(mesh);
    const ScalarField field = build_field(c);
    if (c.degree > complex.dim)
        throw Error(ErrorCode::config_error, "degree exceeds model dimension");
    width_note(complex, c.t);

    const WittenComplex wc = deform(complex, field, c.t);
    const SpMat A = witten_laplacian(wc, c.degree);
    const SpectrumTable table = smallest_eigs(A, c.degree, c.t, c.k, eig_options(c));

    const auto dir = ensure_out_dir(c);
    write_text_file((dir / ("spectrum_p" + std::to_string(c.degree) + ".csv")).string(),
                    spectrum_csv(table));
}

void cmd_flow(const RunConfig& c) {
    const Mesh mesh = build_model(c);
    const CochainComplex complex = build_complex(mesh);
    const ScalarField field = build_field(c);
    if (c.degree > complex.dim)
        throw Error(ErrorCode::config_error, "degree exceeds model dimension");
    const std::vector<double> schedule = parse_schedule(c.t_grid);
    width_note(complex, schedule.back());

    const FlowResult flow =
        spectral_flow(complex, field, schedule, c.degree, c.k, eig_options(c));
    const MorseData morse = find_critical_points(field, mesh);
    const std::vector<double> oracle = oracle_track_values(morse, c.degree, c, c.k);

    const Eigen::MatrixXd& rows = flow.degrees.at(c.degree);
    JsonValue degrees = JsonValue::object();
    JsonValue matrix = JsonValue::array();
    for (Eigen::Index r = 0; r < rows.rows(); ++r) {
        JsonValue row = JsonValue::array();
        for (Eigen::Index i = 0; i < rows.cols(); ++i) row.push(JsonValue::number(rows(r, i)));
        matrix.push(std::move(row));
    }
    degrees.set(std::to_string(c.degree), std::move(matrix));

    JsonValue oracle_obj = JsonValue::object();
    oracle_obj.set(std::to_string(c.degree), json_number_array(oracle));

    JsonValue skipped = JsonValue::array();
    for (size_t i = 0; i < flow.skipped_t.size(); ++i) {
        JsonValue entry = JsonValue::object();
        entry.set("t", JsonValue::number(flow.skipped_t[i]));
        entry.set("reason", JsonValue::string(flow.skipped_reason[i]));
        skipped.push(std::move(entry));
    }

    JsonValue doc = JsonValue::object();
    doc.set("version", JsonValue::string(kVersion));
    doc.set("config", config_json(c));
    doc.set("schedule", json_number_array(flow.schedule));
    doc.set("degrees", std::move(degrees));
    doc.set("oracle", std::move(oracle_obj));
    doc.set("skipped", std::move(skipped));

    const auto dir = ensure_out_dir(c);
    write_text_file((dir / "flow.json").string(), doc.dump());

    for (int i = 0; i < c.k; ++i) {
        std::string csv = "t,t_lambda\n";
        for (size_t r = 0; r < flow.schedule.size(); ++r)
            csv += format_double(flow.schedule[r]) + "," +
                   format_double(rows(Eigen::Index(r), i)) + "\n";
        write_text_file(
            (dir / ("track_p" + std::to_string(c.degree) + "_" + std::to_string(i + 1) + ".csv"))
                .string(),
            csv);
    }
}

void cmd_morse_check(const RunConfig& c) {
    const Mesh mesh = build_model(c);
    const CochainComplex complex = build_complex(mesh);
    const ScalarField field = build_field(c);

    const MorseData morse = find_critical_points(field, mesh);
    const std::vector<int> counts = morse_counts(morse);
    const std::vector<int> b = betti(complex);
    const MorseReport report = morse_inequalities_check(counts, b);

    JsonValue points = JsonValue::array();
    for (const auto& cp : morse.points) {
        JsonValue p = JsonValue::object();
        JsonValue loc = JsonValue::array();
        for (int i = 0; i < complex.coord_dim; ++i) loc.push(JsonValue::number(cp.location[i]));
        JsonValue xi = JsonValue::array();
        for (Eigen::Index i = 0; i < cp.xi.size(); ++i) xi.push(JsonValue::number(cp.xi[i]));
        p.set("location", std::move(loc));
        p.set("xi", std::move(xi));
        p.set("index", JsonValue::integer(cp.index));
        points.push(std::move(p));
    }

    JsonValue doc = JsonValue::object();
    doc.set("version", JsonValue::string(kVersion));
    doc.set("config", config_json(c));
    doc.set("counts", json_integer_array(counts));
    doc.set("betti", json_integer_array(b));
    doc.set("slacks", json_integer_array(report.slacks));
    doc.set("pass", JsonValue::boolean(report.pass));
    doc.set("euler_exact", JsonValue::boolean(report.euler_exact));
    doc.set("critical_points", std::move(points));

    const auto dir = ensure_out_dir(c);
    write_text_file((dir / "morse_check.json").string(), doc.dump());
}

void cmd_oracle(const RunConfig& c) {
    const Mesh mesh = build_model(c);
    const ScalarField field = build_field(c);
    const MorseData morse = find_critical_points(field, mesh);
    const ModelSpectrum limits =
        aggregate_limit_spectrum(morse, c.degree, c.cutoff, oracle_mode(c));

    JsonValue entries = JsonValue::array();
    for (const auto& [value, mult] : limits.entries) {
        JsonValue pair = JsonValue::array();
        pair.push(JsonValue::number(value));
        pair.push(JsonValue::integer(mult));
        entries.push(std::move(pair));
    }

    JsonValue doc = JsonValue::object();
    doc.set("version", JsonValue::string(kVersion));
    doc.set("config", config_json(c));
    doc.set("mode", JsonValue::string(oracle_mode_name(limits.mode)));
    doc.set("entries", std::move(entries));
    doc.set("cutoff", JsonValue::number(limits.cutoff));

    const auto dir = ensure_out_dir(c);
    write_text_file((dir / "oracle.json").string(), doc.dump());
}

void cmd_foliation(const RunConfig& c) {
    const auto [a, b] = parse_slope(c.slope);
    const KroneckerModel model = build_kronecker(a, b, c.n_leaf, c.n_trans);
    const ScalarField field = build_field(c);
    const std::vector<double> schedule = parse_schedule(c.t_grid);

    FoliationOptions opt;
    opt.phi = TestFunction{c.phi_a1, c.phi_a2, c.phi_b1, c.phi_b2};
    opt.k = c.k;
    opt.eig = eig_options(c);
    opt.workers = c.workers;
    width_note(model.leaf_complex, schedule.back());

    const TraceReport report = trace_report(model, field, schedule, opt);

    JsonValue traces = JsonValue::object();
    traces.set("0", json_number_array(report.traces[0]));
    traces.set("1", json_number_array(report.traces[1]));

    JsonValue doc = JsonValue::object();
    doc.set("version", JsonValue::string(kVersion));
    doc.set("config", config_json(c));
    doc.set("slope", json_integer_array({report.a, report.b}));
    doc.set("schedule", json_number_array(report.schedule));
    doc.set("traces", std::move(traces));
    doc.set("c", json_number_array({report.c[0], report.c[1]}));
    doc.set("beta", json_number_array({report.beta[0], report.beta[1]}));
    doc.set("slacks", json_number_array({report.slacks[0], report.slacks[1]}));
    doc.set("error_bars", json_number_array({report.error_bars[0], report.error_bars[1]}));
    doc.set("phi", json_number_array({report.phi.a1, report.phi.a2, report.phi.b1, report.phi.b2}));
    doc.set("hessian_integral", JsonValue::number(report.hessian_integral));
    doc.set("transversality_margin", JsonValue::number(report.transversality_margin));
    doc.set("pass", JsonValue::boolean(report.pass));

    const auto dir = ensure_out_dir(c);
    write_text_file((dir / "trace_report.json").string(), doc.dump());
}

void run_command(const RunConfig& c) {
    if (c.command == "spectrum")
        cmd_spectrum(c);
    else if (c.command == "flow")
        cmd_flow(c);
    else if (c.command == "morse-check")
        cmd_morse_check(c);
    else if (c.command == "oracle")
        cmd_oracle(c);
    else if (c.command == "foliation")
        cmd_foliation(c);
    else
        throw Error(ErrorCode::config_error, "unknown command \"" + c.command + "\"");
}

}  // namespace wittenlab
