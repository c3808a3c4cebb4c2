#pragma once

#include <Eigen/Core>
#include <string>
#include <utility>
#include <vector>

#include "wittenlab/morse.hpp"

namespace wittenlab {

// Quadratic model at one critical point: Hessian eigenvalues xi (ascending,
// none zero), Morse index, and the form degree of interest.
struct OscillatorModel {
    Eigen::VectorXd xi;
    int index = 0;
    int degree = 0;
};

enum class OracleMode { standard, paper };
const char* oracle_mode_name(OracleMode mode);

struct ModelSpectrum {
    std::vector<std::pair<double, int>> entries;  // (eigenvalue, multiplicity), ascending
    double cutoff = 0.0;
    OracleMode mode = OracleMode::standard;
    std::string provenance;               // "closed-form" or "brute-force"
    std::vector<double> error_estimate;   // brute force only, per entry

    std::vector<double> flattened(int count) const;  // values repeated by multiplicity
};

// Closed-form model spectrum up to the cutoff. "standard" enumerates
// sum_j |xi_j|(1+2a_j) + sum_{j in J} xi_j - sum_{j not in J} xi_j over
// occupation sets J of size p and quantum numbers a; "paper" enumerates the
// halved published form. Values within 1e-9 relative are merged into one
// multiplicity.
ModelSpectrum oscillator_spectrum(const OscillatorModel& model, double cutoff, OracleMode mode);

// Independent check: the model operator discretized with central differences
// on a Dirichlet box [-R, R]^n, diagonalized at m and 2m points per axis and
// Richardson-extrapolated. Lowest 10 values, each with an error estimate.
ModelSpectrum brute_force_oscillator(const OscillatorModel& model, double R, int m);

// Multiset union of per-critical-point spectra in degree p.
ModelSpectrum aggregate_limit_spectrum(const MorseData& data, int p, double cutoff,
                                       OracleMode mode);

struct MorseReport {
    std::vector<int> slacks;  // alternating partial sums of C - b
    bool pass = false;        // all slacks nonnegative
    bool euler_exact = false; // top slack exactly zero
};

MorseReport morse_inequalities_check(const std::vector<int>& C, const std::vector<int>& b);

}  // namespace wittenlab
