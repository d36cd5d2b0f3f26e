#include "orbidegen/glue.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "orbidegen/errors.hpp"

namespace orbidegen::glue {

namespace {

std::string fmt(const Vec& v) {
    std::ostringstream os;
    os << std::setprecision(6) << "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

double op_norm(const Mat& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
}

Vec random_ball(std::mt19937_64& rng, int n, double radius) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = normal(rng);
    const double len = v.norm();
    if (len == 0.0) return Vec::Zero(n);
    return v * (radius * std::pow(unit(rng), 1.0 / n) / len);
}

/// dx/ds by central differences.
Mat chart_tangent(const ApproxChart& chart, const Vec& s) {
    const Vec x0 = chart.param(s);
    Mat T(x0.size(), chart.d);
    for (int j = 0; j < chart.d; ++j) {
        const double h = 1e-6 * (1.0 + s.norm());
        Vec sp = s, sm = s;
        sp[j] += h;
        sm[j] -= h;
        T.col(j) = (chart.param(sp) - chart.param(sm)) / (2.0 * h);
    }
    return T;
}

Mat orthonormal_tangent(const ApproxChart& chart, const Vec& s) {
    const Mat T = chart_tangent(chart, s);
    Eigen::HouseholderQR<Mat> qr(T);
    return qr.householderQ() * Mat::Identity(T.rows(), T.cols());
}

Vec remainder(const FredholmSystem& sys, const Vec& x, const Vec& tx, const Mat& L, const Vec& v) {
    return evaluate_checked(sys, x + v) - tx - L * v;
}

}  // namespace

Vec evaluate_checked(const FredholmSystem& sys, const Vec& x) {
    Vec t = sys.evaluate(x);
    if (t.size() != sys.F) {
        throw NumericError(sys.name + ": evaluator returned " + std::to_string(t.size()) +
                           " components, expected " + std::to_string(sys.F));
    }
    if (!t.allFinite()) throw NumericError(sys.name + ": non-finite value at x=" + fmt(x));
    return t;
}

Mat fd_jacobian(const FredholmSystem& sys, const Vec& x) {
    const double h = 1e-6 * (1.0 + x.norm());
    Mat J(sys.F, sys.N);
    for (int j = 0; j < sys.N; ++j) {
        Vec xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        J.col(j) = (evaluate_checked(sys, xp) - evaluate_checked(sys, xm)) / (2.0 * h);
    }
    return J;
}

Mat jacobian(const FredholmSystem& sys, const Vec& x) {
    if (!sys.derivative) return fd_jacobian(sys, x);
    Mat J = sys.derivative(x);
    if (!J.allFinite()) throw NumericError(sys.name + ": non-finite derivative at x=" + fmt(x));
    return J;
}

double right_inverse_defect(const FredholmSystem& sys, const ApproxChart& chart, const Vec& s) {
    const Vec x = chart.param(s);
    const Mat LQ = jacobian(sys, x) * chart.right_inverse(s);
    return op_norm(LQ - Mat::Identity(sys.F, sys.F));
}

// ---------------------------------------------------------------------------

double quadratic_remainder_constant(const FredholmSystem& sys, const ApproxChart& chart,
                                    int sample_count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double best = 0.0;
    for (int i = 0; i < sample_count; ++i) {
        const Vec s = chart.sample(rng);
        const Vec x = chart.param(s);
        const Vec tx = evaluate_checked(sys, x);
        const Mat L = jacobian(sys, x);
        const double r = 0.1 * (1.0 + x.norm());
        const Vec a = random_ball(rng, sys.N, r);
        const Vec b = random_ball(rng, sys.N, r);
        const double denom = (a.norm() + b.norm()) * (a - b).norm();
        if (denom == 0.0) continue;
        const double q = (remainder(sys, x, tx, L, a) - remainder(sys, x, tx, L, b)).norm() / denom;
        best = std::max(best, q);
    }
    return best;
}

ConstantsReport estimate_constants(const FredholmSystem& sys, const ApproxChart& chart,
                                   int sample_count, std::uint64_t seed) {
    if (sample_count < 10) throw DomainError("estimate_constants needs at least 10 samples");
    std::mt19937_64 rng(seed);

    Condition b1{"B1", 0, true, ""}, b2{"B2", 0, true, ""}, b3{"B3", 0, true, ""};
    Condition c3{"C3", 0, true, ""}, c4{"C4", 0, true, ""};
    Condition c5{"C5", 0, true, ""}, c6{"C6", 0, true, ""};
    auto bump = [](Condition& c, double v, const Vec& s) {
        if (v > c.value || c.witness.empty()) {
            c.value = std::max(c.value, v);
            c.witness = "s=" + fmt(s);
        }
    };

    for (int i = 0; i < sample_count; ++i) {
        const Vec s = chart.sample(rng);
        const Vec x = chart.param(s);
        const Vec tx = evaluate_checked(sys, x);
        const Mat L = jacobian(sys, x);
        const double r = 0.1 * (1.0 + x.norm());

        const Vec y = x + random_ball(rng, sys.N, r);
        const double dxy = (y - x).norm();
        if (dxy > 0.0) {
            bump(b1, (evaluate_checked(sys, y) - tx).norm() / dxy, s);
            bump(b2, op_norm(jacobian(sys, y) - L) / dxy, s);
        }

        const Vec a = random_ball(rng, sys.N, r);
        const Vec b = random_ball(rng, sys.N, r);
        const double denom = (a.norm() + b.norm()) * (a - b).norm();
        if (denom > 0.0) {
            bump(b3, (remainder(sys, x, tx, L, a) - remainder(sys, x, tx, L, b)).norm() / denom, s);
        }

        bump(c3, tx.norm(), s);
        bump(c4, op_norm(L * orthonormal_tangent(chart, s)), s);

        const Mat Q = chart.right_inverse(s);
        bump(c5, op_norm(Q), s);
        const Vec s2 = chart.sample(rng);
        const double dx = (chart.param(s2) - x).norm();
        if (dx > 1e-12) bump(c6, op_norm(chart.right_inverse(s2) - Q) / dx, s);
    }

    ConstantsReport out;
    auto& k = out.constants;
    k.C1 = std::max({b1.value, b2.value, b3.value});
    k.eps1 = std::max(c3.value, c4.value);
    k.C2 = std::max(c5.value, c6.value);
    k.K1 = sys.K1;
    const double denom = 4.0 * k.C1 * k.C2 * k.C2;
    k.delta1 = denom > 0.0 ? 1.0 / denom : k.C2;

    // (C1) |x| <= K1 on X, (C2) Phi(X x B_delta1) stays in W
    Condition c1{"C1", 0, true, ""}, c2{"C2", 0, true, ""};
    std::mt19937_64 rng2(seed + 101);
    for (int i = 0; i < sample_count; ++i) {
        const Vec s = chart.sample(rng2);
        const Vec x = chart.param(s);
        bump(c1, x.norm(), s);
        Vec eta = random_ball(rng2, sys.F, 1.0);
        if (eta.norm() > 0.0) eta *= k.delta1 / eta.norm();
        bump(c2, (x + chart.right_inverse(s) * eta).norm(), s);
    }
    c1.pass = c1.value <= k.K1;
    c2.pass = c2.value <= k.K1;
    b1.pass = b2.pass = b3.pass = std::isfinite(k.C1);
    c3.pass = c3.value <= k.delta1;
    c4.pass = c4.value <= k.delta1;
    c5.pass = c5.value <= k.C2;
    c6.pass = c6.value <= k.C2;
    out.conditions = {b1, b2, b3, c1, c2, c3, c4, c5, c6};
    out.ordering_ok = k.eps1 <= k.delta1 && k.delta1 <= k.C2;
    out.well_separated = 10.0 * k.eps1 <= k.delta1 && 10.0 * k.delta1 <= k.C2;
    return out;
}

// ---------------------------------------------------------------------------

Correction correct(const FredholmSystem& sys, const ApproxChart& chart, const Vec& s, double tol,
                   int max_iter, std::optional<double> eps1) {
    if (!(tol > 0.0)) throw DomainError("correct needs a positive tolerance");
    const double defect = right_inverse_defect(sys, chart, s);
    if (defect > 1e-8) {
        throw DomainError("chart is not valid at s=" + fmt(s) + ": |LQ - Id| = " + std::to_string(defect));
    }
    const Vec x = chart.param(s);
    const Vec tx = evaluate_checked(sys, x);
    const Mat L = jacobian(sys, x);
    const Mat Q = chart.right_inverse(s);

    Correction c;
    c.eps1 = eps1.value_or(tx.norm());
    c.xi = Vec::Zero(sys.F);
    c.residual = tx.norm();
    c.history.push_back({0, 0.0, c.residual});
    std::vector<double> residuals{c.residual};

    int growth = 0;
    for (int n = 1; n <= max_iter && c.residual > tol; ++n) {
        c.xi = -tx - remainder(sys, x, tx, L, Q * c.xi);
        const double res = evaluate_checked(sys, x + Q * c.xi).norm();
        growth = res > c.residual ? growth + 1 : 0;
        c.residual = res;
        residuals.push_back(res);
        c.history.push_back({n, c.xi.norm(), res});
        if (growth >= 5) {
            throw NonConvergence(sys.name + ": residual grew for 5 consecutive steps", residuals);
        }
    }
    if (c.residual > tol) {
        throw NonConvergence(sys.name + ": no convergence within " + std::to_string(max_iter) +
                                 " iterations",
                             residuals);
    }
    c.x = x + Q * c.xi;
    c.xi_bound_ok = c.xi.norm() <= 2.0 * c.eps1 + 1e-15;
    return c;
}

ChartMap chart_map(const FredholmSystem& sys, const ApproxChart& chart, const Vec& s, const Vec& eta) {
    (void)sys;
    auto phi = [&](const Vec& u) -> Vec { return chart.param(u) + chart.right_inverse(u) * eta; };
    ChartMap out;
    out.phi = phi(s);

    const Vec x = chart.param(s);
    Mat Js(x.size(), chart.d);
    for (int j = 0; j < chart.d; ++j) {
        const double h = 1e-6 * (1.0 + s.norm());
        Vec sp = s, sm = s;
        sp[j] += h;
        sm[j] -= h;
        Js.col(j) = (phi(sp) - phi(sm)) / (2.0 * h);
    }
    const Mat T = chart_tangent(chart, s);
    Eigen::HouseholderQR<Mat> qr(T);
    const Mat R = qr.matrixQR().topRows(chart.d).triangularView<Eigen::Upper>();
    const Mat JsN = R.transpose().triangularView<Eigen::Lower>().solve(Js.transpose()).transpose();

    const Mat Q = chart.right_inverse(s);
    Mat D(x.size(), chart.d + Q.cols());
    D << JsN, Q;
    out.dphi_norm = op_norm(D);
    out.violation = out.dphi_norm > 2.0;
    return out;
}

InjectivityReport injectivity_probe(const FredholmSystem& sys, const ApproxChart& chart,
                                    std::size_t sample_pairs, double radius, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    InjectivityReport out;
    out.pairs = sample_pairs;
    auto phi = [&](const Vec& s, const Vec& eta) -> Vec {
        return chart.param(s) + chart.right_inverse(s) * eta;
    };
    for (std::size_t i = 0; i < sample_pairs; ++i) {
        Vec s1 = chart.sample(rng);
        Vec e1 = random_ball(rng, sys.F, radius);
        Vec s2 = chart.sample(rng);
        Vec e2 = random_ball(rng, sys.F, radius);
        switch (i % 3) {
        case 0: s2 = s1; break;
        case 1: e2 = e1; break;
        default: break;
        }
        Vec in1(s1.size() + e1.size()), in2(s2.size() + e2.size());
        in1 << s1, e1;
        in2 << s2, e2;
        const double input_gap = (in1 - in2).norm();
        const double dist = (phi(s1, e1) - phi(s2, e2)).norm();
        if (dist <= 1e-9 && input_gap > 1e-6) out.collisions.push_back({s1, e1, s2, e2, dist});
    }
    return out;
}

// ---------------------------------------------------------------------------

Model sphere_model(double scale) {
    Model m;
    m.name = "sphere";
    m.system.name = "sphere";
    m.system.N = 3;
    m.system.F = 1;
    m.system.K1 = 2.0;
    m.system.evaluate = [](const Vec& x) {
        Vec t(1);
        t[0] = x.squaredNorm() - 1.0;
        return t;
    };
    m.system.derivative = [](const Vec& x) -> Mat { return 2.0 * x.transpose(); };
    m.chart.d = 2;
    m.chart.param = [scale](const Vec& s) {
        Vec x(3);
        x << std::sin(s[0]) * std::cos(s[1]), std::sin(s[0]) * std::sin(s[1]), std::cos(s[0]);
        return Vec(scale * x);
    };
    m.chart.right_inverse = [p = m.chart.param](const Vec& s) -> Mat {
        const Vec x = p(s);
        return x / (2.0 * x.squaredNorm());
    };
    m.chart.sample = [](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> th(0.3, std::numbers::pi - 0.3);
        std::uniform_real_distribution<double> ph(0.0, 2.0 * std::numbers::pi);
        Vec s(2);
        s[0] = th(rng);
        s[1] = ph(rng);
        return s;
    };
    return m;
}

Model node_model(double tau, double scale) {
    Model m;
    m.name = "node";
    m.system.name = "node";
    m.system.N = 2;
    m.system.F = 1;
    m.system.K1 = 2.0;
    m.system.evaluate = [tau](const Vec& x) {
        Vec t(1);
        t[0] = x[0] * x[1] - tau;
        return t;
    };
    m.system.derivative = [](const Vec& x) -> Mat {
        Mat L(1, 2);
        L << x[1], x[0];
        return L;
    };
    m.chart.d = 1;
    m.chart.param = [tau, scale](const Vec& s) {
        Vec x(2);
        x << std::exp(s[0]), tau * std::exp(-s[0]);
        return Vec(scale * x);
    };
    m.chart.right_inverse = [p = m.chart.param](const Vec& s) -> Mat {
        const Vec x = p(s);
        Mat Q(2, 1);
        Q << x[1], x[0];
        return Q / x.squaredNorm();
    };
    m.chart.sample = [](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> u(-0.5, 0.5);
        Vec s(1);
        s[0] = u(rng);
        return s;
    };
    return m;
}

Model linear_model(std::uint64_t seed, double scale) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Mat A(2, 4);
    for (;;) {
        for (Eigen::Index i = 0; i < A.size(); ++i) A.data()[i] = u(rng);
        Eigen::JacobiSVD<Mat> svd(A);
        const auto sv = svd.singularValues();
        if (sv(1) > 0.0 && sv(0) / sv(1) < 10.0) break;
    }
    Vec b(2);
    b << u(rng), u(rng);
    const Mat pinv = A.transpose() * (A * A.transpose()).inverse();
    const Vec xp = pinv * b;
    Eigen::JacobiSVD<Mat> full(A, Eigen::ComputeFullV);
    const Mat kernel = full.matrixV().rightCols(2);

    Model m;
    m.name = "linear";
    m.system.name = "linear";
    m.system.N = 4;
    m.system.F = 2;
    m.system.K1 = 3.0 + xp.norm();
    m.system.evaluate = [A, b](const Vec& x) { return Vec(A * x - b); };
    m.system.derivative = [A](const Vec&) -> Mat { return A; };
    m.chart.d = 2;
    m.chart.param = [xp, kernel, scale](const Vec& s) { return Vec(scale * xp + kernel * s); };
    m.chart.right_inverse = [pinv](const Vec&) -> Mat { return pinv; };
    m.chart.sample = [](std::mt19937_64& r) {
        std::uniform_real_distribution<double> w(-1.0, 1.0);
        Vec s(2);
        s << w(r), w(r);
        return s;
    };
    return m;
}

std::vector<Model> builtin_models() { return {sphere_model(), node_model(), linear_model()}; }

Model model_by_name(const std::string& name, double tau, double scale) {
    if (name == "sphere") return sphere_model(scale);
    if (name == "node") return node_model(tau, scale);
    if (name == "linear") return linear_model(7, scale);
    throw ValidationError("unknown model '" + name + "' (expected sphere, node or linear)");
}

DemoReport run_demo(const Model& m, int sample_count, std::uint64_t seed) {
    DemoReport r;
    r.model = m.name;
    r.constants = estimate_constants(m.system, m.chart, sample_count, seed);

    std::mt19937_64 rng(seed + 1);
    r.s = m.chart.sample(rng);
    try {
        r.correction = correct(m.system, m.chart, r.s, 1e-10, 50, r.constants.constants.eps1);
    } catch (const NonConvergence& e) {
        r.nonconvergent_history = e.residuals();
    }

    const double radius = r.constants.constants.delta1;
    r.probes = 100;
    for (std::size_t i = 0; i < r.probes; ++i) {
        const Vec s = m.chart.sample(rng);
        const Vec eta = random_ball(rng, m.system.F, radius);
        const auto cm = chart_map(m.system, m.chart, s, eta);
        r.max_dphi = std::max(r.max_dphi, cm.dphi_norm);
        if (cm.violation) ++r.dphi_violations;
    }
    r.injectivity = injectivity_probe(m.system, m.chart, 500, radius, seed + 2);
    return r;
}

}  // namespace orbidegen::glue
