#include "smproof/pipeline.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>

#include "smproof/version.hpp"

namespace smproof {

namespace fs = std::filesystem;

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json bounds_json(const Interval& Y, const Interval& Z, double R, double r) {
    return json{{"Y", to_json(Y)}, {"Z", to_json(Z)}, {"R", R}, {"r", r}};
}

std::string triple_str(const std::array<double, 3>& v) {
    return "(" + shortest_repr(v[0]) + ", " + shortest_repr(v[1]) + ", " +
           shortest_repr(v[2]) + ")";
}

} // namespace

Pipeline::Pipeline(PipelineConfig cfg, LogLevel level)
    : cfg_(std::move(cfg)), level_(level) {
    cfg_.validate();
    fs::create_directories(cfg_.out_dir);
}

void Pipeline::log(LogLevel at, const std::string& msg) const {
    if (static_cast<int>(level_) >= static_cast<int>(at)) std::cout << msg << "\n";
}

json Pipeline::load_stage_file(const std::string& name) const {
    fs::path path = fs::path(cfg_.out_dir) / (name + ".json");
    if (!fs::exists(path))
        throw MissingDependency("missing certificate file " + path.string() +
                                "; run the '" + name + "' stage first");
    std::ifstream in(path);
    return json::parse(in);
}

void Pipeline::save_stage(const std::string& name, const json& certs, const json& bounds,
                          double seconds) {
    fs::path dir(cfg_.out_dir);
    {
        std::ofstream out(dir / (name + ".json"));
        out << certs.dump(2) << "\n";
    }
    // Report: bitwise-deterministic proof data; wall-clock timings go to a
    // separate sidecar so reruns compare equal.
    fs::path report_path = dir / "report.json";
    json report;
    if (fs::exists(report_path)) {
        std::ifstream in(report_path);
        report = json::parse(in);
    } else {
        report = json{{"schema", 1}, {"library", "smproof"}, {"version", kVersion}};
    }
    report["config"] = cfg_.to_text();
    report["stages"][name] = json{{"status", "ok"}, {"bounds", bounds}, {"certificates", certs}};
    {
        std::ofstream out(report_path);
        out << report.dump(2) << "\n";
    }
    fs::path timings_path = dir / "timings.json";
    json timings;
    if (fs::exists(timings_path)) {
        std::ifstream in(timings_path);
        timings = json::parse(in);
    }
    timings[name] = seconds;
    {
        std::ofstream out(timings_path);
        out << timings.dump(2) << "\n";
    }
}

// ---------------------------------------------------------------------------
// Stages.

void Pipeline::run_equilibria() {
    auto t0 = std::chrono::steady_clock::now();
    NewtonOptions opt{cfg_.newton.tol, cfg_.newton.max_iter};
    EquilibriumCertificate c1 = validate_equilibrium(params_, {1.0, 0.0, 1.0},
                                                     cfg_.manifold.R_factor, opt);
    EquilibriumCertificate c0 = validate_equilibrium(params_, {0.0, 0.0, 0.0},
                                                     cfg_.manifold.R_factor, opt);
    log(LogLevel::info, "[equilibria] c1_bar = " + triple_str(c1.c_bar));
    log(LogLevel::info, "[equilibria] Y = " + to_string(c1.Y) + ", Z = " + to_string(c1.Z));
    log(LogLevel::info, "[equilibria] r_inf = " + shortest_repr(c1.r));
    log(LogLevel::info, "[equilibria] c1_star = (" + to_string(c1.enclosure[0]) + ", " +
                            to_string(c1.enclosure[1]) + ", " + to_string(c1.enclosure[2]) + ")");
    log(LogLevel::info, "[equilibria] c0_bar = " + triple_str(c0.c_bar) +
                            ", r_inf = " + shortest_repr(c0.r));
    c0_ = c0;
    c1_ = c1;
    json certs{{"c0", to_json(c0)}, {"c1", to_json(c1)}};
    json bounds{{"c0", bounds_json(c0.Y, c0.Z, c0.R, c0.r)},
                {"c1", bounds_json(c1.Y, c1.Z, c1.R, c1.r)}};
    save_stage("equilibria", certs, bounds, seconds_since(t0));
}

void Pipeline::ensure_equilibria() {
    if (c0_ && c1_) return;
    json j = load_stage_file("equilibria");
    c0_ = equilibrium_from_json(j.at("c0"));
    c1_ = equilibrium_from_json(j.at("c1"));
}

namespace {

Eigen::Matrix3d jacobian_at(const Params& p, const std::array<double, 3>& c) {
    Vec3<double> u{c[0], c[1], c[2]};
    auto j = jacobian<double>(u, p.a_mid, p.b_mid);
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) m(i, k) = j[static_cast<size_t>(i)][static_cast<size_t>(k)];
    return m;
}

// Deterministic ordering: ascending real part, then ascending imaginary part.
void sort_guesses(std::vector<EigenGuess>& gs) {
    std::sort(gs.begin(), gs.end(), [](const EigenGuess& a, const EigenGuess& b) {
        if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
        return a.lambda.imag() < b.lambda.imag();
    });
}

std::string eig_summary(const EigenCertificate& e) {
    return "lambda = " + to_string(e.lambda.re) + " + " + to_string(e.lambda.im) + "i (" +
           (e.stability == Stability::stable ? "stable" : "unstable") +
           (e.sign_definite ? "" : ", sign-indefinite") + ")";
}

} // namespace

void Pipeline::run_eigenpairs() {
    ensure_equilibria();
    auto t0 = std::chrono::steady_clock::now();
    NewtonOptions opt{cfg_.newton.tol, cfg_.newton.max_iter};

    eigs_c0_.clear();
    eigs_c1_.clear();

    auto gs0 = eigen_initial_guesses(jacobian_at(params_, c0_->c_bar));
    sort_guesses(gs0);
    for (const auto& g : gs0) {
        if (g.lambda.imag() != 0.0)
            throw ProofFailure("eigenpairs: unexpected complex spectrum at the origin");
        eigs_c0_.push_back(validate_eigenpair(params_, *c0_, g, cfg_.manifold.R_factor, opt));
    }

    auto gs1 = eigen_initial_guesses(jacobian_at(params_, c1_->c_bar));
    sort_guesses(gs1);
    for (const auto& g : gs1) {
        if (g.lambda.imag() < 0.0) continue; // conjugate comes for free
        EigenCertificate e = validate_eigenpair(params_, *c1_, g, cfg_.manifold.R_factor, opt);
        eigs_c1_.push_back(e);
        if (g.lambda.imag() > 0.0) eigs_c1_.push_back(conjugate_pair(e));
    }

    for (const auto& e : eigs_c0_) log(LogLevel::info, "[eigen] c0: " + eig_summary(e));
    for (const auto& e : eigs_c1_) log(LogLevel::info, "[eigen] c1: " + eig_summary(e));
    for (const auto* group : {&eigs_c0_, &eigs_c1_})
        for (const auto& e : *group)
            if (!e.sign_definite)
                throw ProofFailure("eigenpairs: sign-indefinite eigenvalue enclosure");

    json certs{{"c0", json::array()}, {"c1", json::array()}};
    json bounds = json::object();
    for (const auto& e : eigs_c0_) certs["c0"].push_back(to_json(e));
    for (const auto& e : eigs_c1_) certs["c1"].push_back(to_json(e));
    save_stage("eigenpairs", certs, bounds, seconds_since(t0));
}

void Pipeline::ensure_eigenpairs() {
    if (!eigs_c0_.empty() && !eigs_c1_.empty()) return;
    json j = load_stage_file("eigenpairs");
    eigs_c0_.clear();
    eigs_c1_.clear();
    for (const auto& e : j.at("c0")) eigs_c0_.push_back(eigen_from_json(e));
    for (const auto& e : j.at("c1")) eigs_c1_.push_back(eigen_from_json(e));
}

void Pipeline::run_manifolds() {
    ensure_equilibria();
    ensure_eigenpairs();
    auto t0 = std::chrono::steady_clock::now();

    // Stable chart of the origin: the two real stable eigenpairs, slow first.
    std::vector<const EigenCertificate*> stab;
    for (const auto& e : eigs_c0_)
        if (e.stability == Stability::stable) stab.push_back(&e);
    if (stab.size() != 2 || !stab[0]->real_pair || !stab[1]->real_pair)
        throw ProofFailure("manifolds: origin does not have two real stable eigenvalues");
    if (mid(stab[0]->lambda.re) < mid(stab[1]->lambda.re)) std::swap(stab[0], stab[1]);

    // Unstable chart of c1: the complex conjugate unstable pair, Im > 0 first.
    const EigenCertificate *up = nullptr, *um = nullptr;
    for (const auto& e : eigs_c1_) {
        if (e.stability != Stability::unstable) continue;
        if (mid(e.lambda.im) > 0.0) up = &e;
        if (mid(e.lambda.im) < 0.0) um = &e;
    }
    if (!up || !um)
        throw ProofFailure("manifolds: c1 does not have a complex unstable pair");

    NewtonOptions mopt{cfg_.manifold.newton_tol, cfg_.newton.max_iter};
    auto run_unstable = [&] {
        return validate_manifold(params_, *c1_, *up, *um, cfg_.manifold.K, cfg_.manifold.nu,
                                 cfg_.manifold.scale_u, cfg_.manifold.R_factor, mopt);
    };
    auto run_stable = [&] {
        return validate_manifold(params_, *c0_, *stab[0], *stab[1], cfg_.manifold.K,
                                 cfg_.manifold.nu, cfg_.manifold.scale_s,
                                 cfg_.manifold.R_factor, mopt);
    };
    auto fut = std::async(std::launch::async, run_stable);
    ManifoldCertificate uns = run_unstable();
    ManifoldCertificate sta = fut.get();

    double res_u = manifold_invariance_residual(uns, params_);
    double res_s = manifold_invariance_residual(sta, params_);
    log(LogLevel::info, "[manifolds] unstable(c1): Y = " + to_string(uns.Y) +
                            ", Z = " + to_string(uns.Z) + ", r = " + shortest_repr(uns.r));
    log(LogLevel::info, "[manifolds] unstable invariance residual = " + shortest_repr(res_u));
    log(LogLevel::info, "[manifolds] stable(c0):   Y = " + to_string(sta.Y) +
                            ", Z = " + to_string(sta.Z) + ", r = " + shortest_repr(sta.r));
    log(LogLevel::info, "[manifolds] stable invariance residual = " + shortest_repr(res_s));

    unstable_ = std::move(uns);
    stable_ = std::move(sta);
    json certs{{"unstable_c1", to_json(*unstable_)}, {"stable_c0", to_json(*stable_)}};
    json bounds{{"unstable_c1", bounds_json(unstable_->Y, unstable_->Z, unstable_->R, unstable_->r)},
                {"stable_c0", bounds_json(stable_->Y, stable_->Z, stable_->R, stable_->r)},
                {"invariance_residual_unstable", res_u},
                {"invariance_residual_stable", res_s}};
    save_stage("manifolds", certs, bounds, seconds_since(t0));
}

void Pipeline::ensure_manifolds() {
    if (unstable_ && stable_) return;
    json j = load_stage_file("manifolds");
    unstable_ = manifold_from_json(j.at("unstable_c1"));
    stable_ = manifold_from_json(j.at("stable_c0"));
}

void Pipeline::run_connection() {
    ensure_manifolds();
    auto t0 = std::chrono::steady_clock::now();

    PipelineConfig cfg = cfg_;
    if (cfg.tau_is_auto() || cfg.alpha0_is_auto()) {
        PipelineConfig resolved = tune();
        cfg.orbit = resolved.orbit;
        log(LogLevel::info, "[connection] resolved tau = " + shortest_repr(cfg.orbit.tau) +
                                ", alpha0 = " + shortest_repr(cfg.orbit.alpha0));
    }

    ConnectionOptions opt;
    opt.K = cfg.orbit.K;
    opt.mu = cfg.orbit.mu;
    opt.tau = cfg.orbit.tau;
    opt.alpha0 = cfg.orbit.alpha0;
    opt.R_factor = cfg.orbit.R_factor;
    opt.rk_steps = cfg.orbit.rk_steps;
    opt.endpoint_tol = cfg.orbit.endpoint_tol;
    opt.newton = NewtonOptions{cfg.orbit.newton_tol, cfg.orbit.newton_max_iter};

    ConnectionCertificate cert = validate_connection(params_, *unstable_, *stable_, opt);
    double ode_res = connection_ode_residual(cert, params_);
    log(LogLevel::info, "[connection] Y = " + to_string(cert.Y) + ", Z = " + to_string(cert.Z));
    log(LogLevel::info, "[connection] r = " + shortest_repr(cert.r) +
                            ", alpha = " + shortest_repr(cert.alpha) + ", theta = (" +
                            shortest_repr(cert.theta1) + ", " + shortest_repr(cert.theta2) + ")");
    log(LogLevel::info, "[connection] ODE residual (float check) = " + shortest_repr(ode_res));

    connection_ = std::move(cert);
    json certs = to_json(*connection_);
    json bounds{{"connection", bounds_json(connection_->Y, connection_->Z, connection_->R,
                                           connection_->r)},
                {"ode_residual", ode_res},
                {"tau", connection_->tau}};
    save_stage("connection", certs, bounds, seconds_since(t0));
}

void Pipeline::ensure_connection() {
    if (connection_) return;
    connection_ = connection_from_json(load_stage_file("connection"));
}

void Pipeline::run_all() {
    c0_.reset();
    c1_.reset();
    eigs_c0_.clear();
    eigs_c1_.clear();
    unstable_.reset();
    stable_.reset();
    connection_.reset();
    run_equilibria();
    run_eigenpairs();
    run_manifolds();
    run_connection();
}

void Pipeline::export_trajectory(const std::string& csv_path) {
    ensure_connection();
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("export_trajectory: cannot open " + csv_path);
    out << "s,t,x,y,z\n";
    int n = cfg_.plot_points;
    for (int i = 0; i < n; ++i) {
        double s = -1.0 + 2.0 * static_cast<double>(i) / (n - 1);
        double t = connection_->tau * (s + 1.0) / 2.0;
        out << shortest_repr(s) << "," << shortest_repr(t);
        for (int c = 0; c < 3; ++c)
            out << "," << shortest_repr(eval(connection_->u_bar[static_cast<size_t>(c)], s));
        out << "\n";
    }
    log(LogLevel::info, "[export] wrote " + csv_path);
}

// ---------------------------------------------------------------------------
// Tuning of the open parameters (floating-point path only).

namespace {

struct FloatEigs {
    std::array<double, 3> c_bar;
    std::complex<double> l1, l2;
    std::array<std::complex<double>, 3> v1, v2;
};

// Largest-magnitude coefficient on the outermost square shell, as a function
// of the eigenvector scale (using the grading P_k ~ scale^{k1+k2}).
double shell_max(const Vec3<Taylor2Seq<std::complex<double>>>& P, int K, double scale) {
    double best = 0.0;
    for (int c = 0; c < 3; ++c)
        for (int k1 = 0; k1 <= K; ++k1)
            for (int k2 = 0; k2 <= K; ++k2) {
                if (std::max(k1, k2) != K) continue;
                double v = std::abs(P[static_cast<size_t>(c)].at(k1, k2)) *
                           std::pow(scale, k1 + k2);
                best = std::max(best, v);
            }
    return best;
}

double df_norm_estimate(const Vec3<Taylor2Seq<std::complex<double>>>& P, int K,
                        double scale, double nu, const Params& p) {
    // Rescaled float coefficients, then the column-sum norm of Df(P).
    Vec3<Taylor2Seq<std::complex<double>>> Ps;
    for (int c = 0; c < 3; ++c) {
        Taylor2Seq<std::complex<double>> u(K, K);
        for (int k1 = 0; k1 <= K; ++k1)
            for (int k2 = 0; k2 <= K; ++k2)
                u.at(k1, k2) = P[static_cast<size_t>(c)].at(k1, k2) * std::pow(scale, k1 + k2);
        Ps[static_cast<size_t>(c)] = std::move(u);
    }
    auto W = jacobian_multipliers(Ps, p.a_mid, p.b_mid);
    double best = 0.0;
    for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int i = 0; i < 3; ++i)
            s += weighted_norm_estimate(W[static_cast<size_t>(i)][static_cast<size_t>(j)], nu);
        best = std::max(best, s);
    }
    return best;
}

// Scale selection: bisect on the outermost-shell magnitude until it hits the
// decay target, then back off while the floating-point estimate of the Z0
// tail factor is too close to one.
double resolve_scale(const Params& p, const FloatEigs& fe, int K, double nu,
                     double min_re) {
    constexpr double decay_target = 1e-12;
    auto base = manifold_recursion_float(p, fe.c_bar, fe.l1, fe.l2, fe.v1, fe.v2, K);
    double lo = 1e-4, hi = 4.0;
    for (int it = 0; it < 200; ++it) {
        double mid_s = std::sqrt(lo * hi);
        if (shell_max(base, K, mid_s) > decay_target) hi = mid_s;
        else lo = mid_s;
        if (hi / lo < 1.0 + 1e-12) break;
    }
    double scale = lo;
    for (int guard = 0; guard < 60; ++guard) {
        double tail = df_norm_estimate(base, K, scale, nu, p) / ((K + 1) * min_re);
        if (tail < 0.85) break;
        scale *= 0.75;
    }
    return scale;
}

} // namespace

PipelineConfig Pipeline::tune() const {
    PipelineConfig cfg = cfg_;
    NewtonOptions opt{cfg.newton.tol, cfg.newton.max_iter};

    // Float equilibria and eigen data (no rigor needed on this path).
    EquilibriumCertificate c1 = validate_equilibrium(params_, {1.0, 0.0, 1.0},
                                                     cfg.manifold.R_factor, opt);
    EquilibriumCertificate c0 = validate_equilibrium(params_, {0.0, 0.0, 0.0},
                                                     cfg.manifold.R_factor, opt);

    auto pick = [&](const std::array<double, 3>& c, bool want_stable) {
        auto gs = eigen_initial_guesses(jacobian_at(params_, c));
        sort_guesses(gs);
        FloatEigs fe;
        fe.c_bar = c;
        std::vector<EigenGuess> sel;
        for (const auto& g : gs)
            if ((g.lambda.real() < 0.0) == want_stable) sel.push_back(g);
        if (sel.size() != 2) throw ProofFailure("tune: unexpected eigen structure");
        fe.l1 = sel[0].lambda;
        fe.l2 = sel[1].lambda;
        fe.v1 = sel[0].v;
        fe.v2 = sel[1].v;
        return fe;
    };

    FloatEigs uns = pick(c1.c_bar, false); // complex pair, either order
    FloatEigs sta = pick(c0.c_bar, true);
    // Slow stable direction first.
    if (sta.l1.real() < sta.l2.real()) {
        std::swap(sta.l1, sta.l2);
        std::swap(sta.v1, sta.v2);
    }

    cfg.manifold.scale_u = resolve_scale(params_, uns, cfg.manifold.K, cfg.manifold.nu,
                                         std::abs(uns.l1.real()));
    cfg.manifold.scale_s = resolve_scale(params_, sta, cfg.manifold.K, cfg.manifold.nu,
                                         std::abs(sta.l1.real()));
    log(LogLevel::info, "[tune] scale_u = " + shortest_repr(cfg.manifold.scale_u) +
                            ", scale_s = " + shortest_repr(cfg.manifold.scale_s));

    if (cfg.tau_is_auto() || cfg.alpha0_is_auto()) {
        // Scan the unit circle of the unstable chart for the trajectory that
        // first enters the entry ball around the origin.
        auto base = manifold_recursion_float(params_, uns.c_bar, uns.l1, uns.l2, uns.v1,
                                             uns.v2, cfg.manifold.K);
        Vec3<Taylor2Seq<std::complex<double>>> Pf;
        for (int c = 0; c < 3; ++c) {
            Taylor2Seq<std::complex<double>> u(cfg.manifold.K, cfg.manifold.K);
            for (int k1 = 0; k1 <= cfg.manifold.K; ++k1)
                for (int k2 = 0; k2 <= cfg.manifold.K; ++k2)
                    u.at(k1, k2) = base[static_cast<size_t>(c)].at(k1, k2) *
                                   std::pow(cfg.manifold.scale_u, k1 + k2);
            Pf[static_cast<size_t>(c)] = std::move(u);
        }
        double best_alpha = 0.0, best_t = -1.0;
        const double h = 0.01, t_max = 120.0;
        for (int ia = 0; ia < 360; ++ia) {
            double alpha = 2.0 * M_PI * ia / 360.0;
            std::complex<double> t1 = std::polar(1.0, alpha), t2 = std::conj(t1);
            Vec3<double> w;
            bool bad = false;
            for (int c = 0; c < 3; ++c) {
                std::complex<double> v = eval(Pf[static_cast<size_t>(c)], t1, t2);
                if (std::abs(v.imag()) > 1e-8) bad = true;
                w[static_cast<size_t>(c)] = v.real();
            }
            if (bad) continue;
            for (double t = 0.0; t < t_max; t += h) {
                double dist = std::fabs(w[0]) + std::fabs(w[1]) + std::fabs(w[2]);
                if (dist <= cfg.orbit.entry_radius) {
                    if (best_t < 0.0 || t < best_t) {
                        best_t = t;
                        best_alpha = alpha;
                    }
                    break;
                }
                if (dist > 50.0) break;
                auto k1 = vector_field(w, params_.a_mid, params_.b_mid);
                Vec3<double> tmp;
                for (int i = 0; i < 3; ++i) tmp[static_cast<size_t>(i)] = w[static_cast<size_t>(i)] + 0.5 * h * k1[static_cast<size_t>(i)];
                auto k2 = vector_field(tmp, params_.a_mid, params_.b_mid);
                for (int i = 0; i < 3; ++i) tmp[static_cast<size_t>(i)] = w[static_cast<size_t>(i)] + 0.5 * h * k2[static_cast<size_t>(i)];
                auto k3 = vector_field(tmp, params_.a_mid, params_.b_mid);
                for (int i = 0; i < 3; ++i) tmp[static_cast<size_t>(i)] = w[static_cast<size_t>(i)] + h * k3[static_cast<size_t>(i)];
                auto k4 = vector_field(tmp, params_.a_mid, params_.b_mid);
                for (int i = 0; i < 3; ++i)
                    w[static_cast<size_t>(i)] += h / 6.0 * (k1[static_cast<size_t>(i)] + 2.0 * k2[static_cast<size_t>(i)] + 2.0 * k3[static_cast<size_t>(i)] + k4[static_cast<size_t>(i)]);
            }
        }
        if (best_t < 0.0)
            throw ProofFailure("tune: no trajectory from the unstable chart reaches the "
                               "entry ball; enlarge entry_radius or rescan");
        if (cfg.alpha0_is_auto()) {
            cfg.orbit.alpha0 = best_alpha;
            cfg.orbit.alpha0_auto = false;
        }
        if (cfg.tau_is_auto()) {
            cfg.orbit.tau = std::ceil(best_t * 10.0) / 10.0;
            cfg.orbit.tau_auto = false;
        }
        log(LogLevel::info, "[tune] tau = " + shortest_repr(cfg.orbit.tau) +
                                ", alpha0 = " + shortest_repr(cfg.orbit.alpha0));
    }
    return cfg;
}

} // namespace smproof
