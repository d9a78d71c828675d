#include "smproof/serialize.hpp"

namespace smproof {

json to_json(const Interval& v) { return json::array({v.lo, v.hi}); }
Interval interval_from_json(const json& j) {
    return Interval(j.at(0).get<double>(), j.at(1).get<double>());
}

json to_json(const ComplexInterval& v) {
    return json::array({v.re.lo, v.re.hi, v.im.lo, v.im.hi});
}
ComplexInterval complex_interval_from_json(const json& j) {
    return ComplexInterval(Interval(j.at(0).get<double>(), j.at(1).get<double>()),
                           Interval(j.at(2).get<double>(), j.at(3).get<double>()));
}

json to_json(const Taylor2Seq<ComplexInterval>& u) {
    json coeffs = json::array();
    bool real = true;
    for (int i = 0; i <= u.order1(); ++i)
        for (int j = 0; j <= u.order2(); ++j) {
            const ComplexInterval& c = u.at(i, j);
            coeffs.push_back(to_json(c));
            if (!(c.im.lo == 0.0 && c.im.hi == 0.0)) real = false;
        }
    return json{{"kind", "taylor2"},
                {"orders", {u.order1(), u.order2()}},
                {"scalar_kind", real ? "interval" : "complex_interval"},
                {"coeffs", coeffs}};
}

Taylor2Seq<ComplexInterval> taylor2_from_json(const json& j) {
    if (j.at("kind") != "taylor2") throw std::runtime_error("expected taylor2 sequence");
    int k1 = j.at("orders").at(0).get<int>();
    int k2 = j.at("orders").at(1).get<int>();
    Taylor2Seq<ComplexInterval> u(k1, k2);
    const json& c = j.at("coeffs");
    size_t idx = 0;
    for (int i = 0; i <= k1; ++i)
        for (int q = 0; q <= k2; ++q) u.at(i, q) = complex_interval_from_json(c.at(idx++));
    return u;
}

json to_json(const ChebSeq<double>& u) {
    json coeffs = json::array();
    for (int k = 0; k <= u.order(); ++k)
        coeffs.push_back(json::array({u.at(k), u.at(k), 0.0, 0.0}));
    return json{{"kind", "cheb"},
                {"orders", {u.order()}},
                {"scalar_kind", "point"},
                {"coeffs", coeffs}};
}
ChebSeq<double> cheb_from_json(const json& j) {
    if (j.at("kind") != "cheb") throw std::runtime_error("expected cheb sequence");
    int K = j.at("orders").at(0).get<int>();
    ChebSeq<double> u(K);
    for (int k = 0; k <= K; ++k) u.at(k) = j.at("coeffs").at(static_cast<size_t>(k)).at(0).get<double>();
    return u;
}

json to_json(const EquilibriumCertificate& c) {
    return json{{"schema", 1},
                {"type", "equilibrium"},
                {"c_bar", c.c_bar},
                {"r", c.r},
                {"enclosure", {to_json(c.enclosure[0]), to_json(c.enclosure[1]), to_json(c.enclosure[2])}},
                {"Y", to_json(c.Y)},
                {"Z", to_json(c.Z)},
                {"R", c.R}};
}
EquilibriumCertificate equilibrium_from_json(const json& j) {
    EquilibriumCertificate c;
    for (int i = 0; i < 3; ++i) {
        c.c_bar[static_cast<size_t>(i)] = j.at("c_bar").at(static_cast<size_t>(i)).get<double>();
        c.enclosure[static_cast<size_t>(i)] = interval_from_json(j.at("enclosure").at(static_cast<size_t>(i)));
    }
    c.r = j.at("r").get<double>();
    c.Y = interval_from_json(j.at("Y"));
    c.Z = interval_from_json(j.at("Z"));
    c.R = j.at("R").get<double>();
    return c;
}

json to_json(const EigenCertificate& c) {
    return json{{"schema", 1},
                {"type", "eigenpair"},
                {"lambda", to_json(c.lambda)},
                {"v", {to_json(c.v[0]), to_json(c.v[1]), to_json(c.v[2])}},
                {"l_star", c.l_star},
                {"r", c.r},
                {"stability", c.stability == Stability::stable ? "stable" : "unstable"},
                {"sign_definite", c.sign_definite},
                {"real_pair", c.real_pair},
                {"Y", to_json(c.Y)},
                {"Z", to_json(c.Z)},
                {"R", c.R}};
}
EigenCertificate eigen_from_json(const json& j) {
    EigenCertificate c;
    c.lambda = complex_interval_from_json(j.at("lambda"));
    for (int i = 0; i < 3; ++i)
        c.v[static_cast<size_t>(i)] = complex_interval_from_json(j.at("v").at(static_cast<size_t>(i)));
    c.l_star = j.at("l_star").get<int>();
    c.r = j.at("r").get<double>();
    c.stability = j.at("stability") == "stable" ? Stability::stable : Stability::unstable;
    c.sign_definite = j.at("sign_definite").get<bool>();
    c.real_pair = j.at("real_pair").get<bool>();
    c.Y = interval_from_json(j.at("Y"));
    c.Z = interval_from_json(j.at("Z"));
    c.R = j.at("R").get<double>();
    return c;
}

json to_json(const ManifoldCertificate& c) {
    return json{{"schema", 1},
                {"type", "manifold"},
                {"P", {to_json(c.P[0]), to_json(c.P[1]), to_json(c.P[2])}},
                {"r", c.r},
                {"nu", c.nu},
                {"K", c.K},
                {"scale", c.scale},
                {"stable_side", c.stable_side},
                {"real_valued", c.real_valued},
                {"lambda1", to_json(c.lambda1)},
                {"lambda2", to_json(c.lambda2)},
                {"v1", {to_json(c.v1[0]), to_json(c.v1[1]), to_json(c.v1[2])}},
                {"v2", {to_json(c.v2[0]), to_json(c.v2[1]), to_json(c.v2[2])}},
                {"c_bar", c.c_bar},
                {"c_r", c.c_r},
                {"Y", to_json(c.Y)},
                {"Z0", to_json(c.Z0)},
                {"Z1", to_json(c.Z1)},
                {"Z", to_json(c.Z)},
                {"R", c.R}};
}
ManifoldCertificate manifold_from_json(const json& j) {
    ManifoldCertificate c;
    for (int i = 0; i < 3; ++i) {
        c.P[static_cast<size_t>(i)] = taylor2_from_json(j.at("P").at(static_cast<size_t>(i)));
        c.v1[static_cast<size_t>(i)] = complex_interval_from_json(j.at("v1").at(static_cast<size_t>(i)));
        c.v2[static_cast<size_t>(i)] = complex_interval_from_json(j.at("v2").at(static_cast<size_t>(i)));
        c.c_bar[static_cast<size_t>(i)] = j.at("c_bar").at(static_cast<size_t>(i)).get<double>();
    }
    c.r = j.at("r").get<double>();
    c.nu = j.at("nu").get<double>();
    c.K = j.at("K").get<int>();
    c.scale = j.at("scale").get<double>();
    c.stable_side = j.at("stable_side").get<bool>();
    c.real_valued = j.at("real_valued").get<bool>();
    c.lambda1 = complex_interval_from_json(j.at("lambda1"));
    c.lambda2 = complex_interval_from_json(j.at("lambda2"));
    c.c_r = j.at("c_r").get<double>();
    c.Y = interval_from_json(j.at("Y"));
    c.Z0 = interval_from_json(j.at("Z0"));
    c.Z1 = interval_from_json(j.at("Z1"));
    c.Z = interval_from_json(j.at("Z"));
    c.R = j.at("R").get<double>();
    return c;
}

json to_json(const ConnectionCertificate& c) {
    return json{{"schema", 1},
                {"type", "connection"},
                {"u", {to_json(c.u_bar[0]), to_json(c.u_bar[1]), to_json(c.u_bar[2])}},
                {"alpha", c.alpha},
                {"theta1", c.theta1},
                {"theta2", c.theta2},
                {"tau", c.tau},
                {"mu", c.mu},
                {"K", c.K},
                {"r", c.r},
                {"contraction_success", c.contraction_success},
                {"transversality_note", c.transversality_note},
                {"Y", to_json(c.Y)},
                {"Z0", to_json(c.Z0)},
                {"Z1", to_json(c.Z1)},
                {"Z", to_json(c.Z)},
                {"R", c.R}};
}
ConnectionCertificate connection_from_json(const json& j) {
    ConnectionCertificate c;
    for (int i = 0; i < 3; ++i)
        c.u_bar[static_cast<size_t>(i)] = cheb_from_json(j.at("u").at(static_cast<size_t>(i)));
    c.alpha = j.at("alpha").get<double>();
    c.theta1 = j.at("theta1").get<double>();
    c.theta2 = j.at("theta2").get<double>();
    c.tau = j.at("tau").get<double>();
    c.mu = j.at("mu").get<double>();
    c.K = j.at("K").get<int>();
    c.r = j.at("r").get<double>();
    c.contraction_success = j.at("contraction_success").get<bool>();
    c.transversality_note = j.at("transversality_note").get<std::string>();
    c.Y = interval_from_json(j.at("Y"));
    c.Z0 = interval_from_json(j.at("Z0"));
    c.Z1 = interval_from_json(j.at("Z1"));
    c.Z = interval_from_json(j.at("Z"));
    c.R = j.at("R").get<double>();
    return c;
}

} // namespace smproof
