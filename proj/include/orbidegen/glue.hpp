#pragma once

// Finite-dimensional approximation pairs: a Fredholm section t: R^N -> R^F,
// a chart of approximate zeros with right inverses, sampled constants, the
// Picard correction onto the zero set and probes of the resulting chart.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace orbidegen::glue {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct FredholmSystem {
    std::string name;
    int N = 1;
    int F = 1;
    std::function<Vec(const Vec&)> evaluate;
    std::function<Mat(const Vec&)> derivative;  // optional; F x N
    double K1 = 1.0;                            // radius of the working ball
};

/// Central differences with step 1e-6 * (1 + |x|).
Mat fd_jacobian(const FredholmSystem& sys, const Vec& x);

/// The supplied derivative, or the finite-difference one.
Mat jacobian(const FredholmSystem& sys, const Vec& x);

/// Evaluates t and throws NumericError on a non-finite value.
Vec evaluate_checked(const FredholmSystem& sys, const Vec& x);

struct ApproxChart {
    int d = 1;
    std::function<Vec(const Vec&)> param;          // s -> x(s)
    std::function<Mat(const Vec&)> right_inverse;  // s -> Q(s), N x F
    std::function<Vec(std::mt19937_64&)> sample;   // random s in the chart domain
};

/// |L_{x(s)} Q(s) - Id| in the operator norm.
double right_inverse_defect(const FredholmSystem& sys, const ApproxChart& chart, const Vec& s);

struct Condition {
    std::string name;
    double value = 0.0;
    bool pass = true;
    std::string witness;
};

struct GlueConstants {
    double C1 = 0.0;
    double C2 = 0.0;
    double eps1 = 0.0;
    double delta1 = 0.0;
    double K1 = 0.0;
};

struct ConstantsReport {
    GlueConstants constants;
    std::vector<Condition> conditions;  // B1-B3, C1-C6
    bool ordering_ok = false;           // eps1 <= delta1 <= C2
    bool well_separated = false;        // factor 10 at each step
};

/// Monte-Carlo estimates. delta1 = 1 / (4 C1 C2^2), or C2 when C1 C2 vanishes.
ConstantsReport estimate_constants(const FredholmSystem& sys, const ApproxChart& chart,
                                   int sample_count, std::uint64_t seed = 1);

/// Sampled quadratic remainder constant alone (the B3 quotient).
double quadratic_remainder_constant(const FredholmSystem& sys, const ApproxChart& chart,
                                    int sample_count, std::uint64_t seed = 1);

struct IterationRecord {
    int n = 0;
    double xi_norm = 0.0;
    double residual = 0.0;
};

struct Correction {
    Vec xi;
    Vec x;  // x(s) + Q(s) xi
    double residual = 0.0;
    double eps1 = 0.0;
    bool xi_bound_ok = false;  // |xi| <= 2 eps1
    std::vector<IterationRecord> history;
};

/// Picard iteration xi <- -t(x) - N_x(Q xi). eps1 defaults to |t(x(s))|.
/// Throws NonConvergence on five consecutive residual increases or when
/// max_iter is exhausted.
Correction correct(const FredholmSystem& sys, const ApproxChart& chart, const Vec& s, double tol,
                   int max_iter, std::optional<double> eps1 = std::nullopt);

struct ChartMap {
    Vec phi;
    double dphi_norm = 0.0;
    bool violation = false;  // dphi_norm > 2
};

/// Phi(s, eta) = x(s) + Q(s) eta and the norm of its derivative, with the
/// s-directions orthonormalized.
ChartMap chart_map(const FredholmSystem& sys, const ApproxChart& chart, const Vec& s, const Vec& eta);

struct Collision {
    Vec s1, eta1, s2, eta2;
    double distance = 0.0;
};

struct InjectivityReport {
    std::size_t pairs = 0;
    std::vector<Collision> collisions;
};

/// Pairs sharing s, sharing eta, or independent, with |eta| <= radius.
InjectivityReport injectivity_probe(const FredholmSystem& sys, const ApproxChart& chart,
                                    std::size_t sample_pairs, double radius, std::uint64_t seed = 1);

struct Model {
    std::string name;
    FredholmSystem system;
    ApproxChart chart;
};

/// t(x) = |x|^2 - 1 on R^3, chart scale * (unit sphere).
Model sphere_model(double scale = 1.0);
/// t(x, y) = xy - tau, chart scale * (e^s, tau e^-s).
Model node_model(double tau = 0.25, double scale = 1.0);
/// t(x) = A x - b with a seeded 2 x 4 matrix of condition number below 10.
Model linear_model(std::uint64_t seed = 7, double scale = 1.0);

std::vector<Model> builtin_models();
Model model_by_name(const std::string& name, double tau, double scale);

struct DemoReport {
    std::string model;
    ConstantsReport constants;
    Vec s;
    std::optional<Correction> correction;
    std::vector<double> nonconvergent_history;
    double max_dphi = 0.0;
    std::size_t dphi_violations = 0;
    std::size_t probes = 0;
    InjectivityReport injectivity;
};

DemoReport run_demo(const Model& m, int sample_count = 200, std::uint64_t seed = 1);

}  // namespace orbidegen::glue
