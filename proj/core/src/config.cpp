#include "smproof/config.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "smproof/interval.hpp"

namespace smproof {

void PipelineConfig::validate() const {
    if (!(manifold.nu > 1.0)) throw ConfigError("manifold.nu must be > 1");
    if (!(orbit.mu >= 1.0)) throw ConfigError("orbit.mu must be >= 1");
    if (manifold.K < 2) throw ConfigError("manifold.K must be >= 2");
    if (orbit.K < 2) throw ConfigError("orbit.K must be >= 2");
    if (!(manifold.scale_u > 0.0) || !(manifold.scale_s > 0.0))
        throw ConfigError("eigenvector scales must be positive");
    if (!tau_is_auto() && !(orbit.tau > 0.0)) throw ConfigError("orbit.tau must be positive");
    if (newton.tol <= 0.0 || newton.max_iter < 1) throw ConfigError("invalid newton settings");
    if (plot_points < 2) throw ConfigError("output.plot_points must be >= 2");
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    size_t e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value for " + key + ": '" + v + "'");
    }
}
int parse_int(const std::string& key, const std::string& v) {
    double d = parse_double(key, v);
    int i = static_cast<int>(d);
    if (static_cast<double>(i) != d) throw ConfigError("config: expected integer for " + key);
    return i;
}

} // namespace

PipelineConfig PipelineConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    PipelineConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: missing '=' at line " + std::to_string(lineno));
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));

        if (key == "manifold.K") cfg.manifold.K = parse_int(key, val);
        else if (key == "manifold.nu") cfg.manifold.nu = parse_double(key, val);
        else if (key == "manifold.scale_u") cfg.manifold.scale_u = parse_double(key, val);
        else if (key == "manifold.scale_s") cfg.manifold.scale_s = parse_double(key, val);
        else if (key == "manifold.R_factor") cfg.manifold.R_factor = parse_double(key, val);
        else if (key == "manifold.newton_tol") cfg.manifold.newton_tol = parse_double(key, val);
        else if (key == "orbit.K") cfg.orbit.K = parse_int(key, val);
        else if (key == "orbit.mu") cfg.orbit.mu = parse_double(key, val);
        else if (key == "orbit.tau") {
            if (val == "auto") cfg.orbit.tau_auto = true;
            else { cfg.orbit.tau_auto = false; cfg.orbit.tau = parse_double(key, val); }
        } else if (key == "orbit.alpha0") {
            if (val == "auto") cfg.orbit.alpha0_auto = true;
            else { cfg.orbit.alpha0_auto = false; cfg.orbit.alpha0 = parse_double(key, val); }
        }
        else if (key == "orbit.R_factor") cfg.orbit.R_factor = parse_double(key, val);
        else if (key == "orbit.rk_steps") cfg.orbit.rk_steps = parse_int(key, val);
        else if (key == "orbit.endpoint_tol") cfg.orbit.endpoint_tol = parse_double(key, val);
        else if (key == "orbit.entry_radius") cfg.orbit.entry_radius = parse_double(key, val);
        else if (key == "orbit.newton_tol") cfg.orbit.newton_tol = parse_double(key, val);
        else if (key == "orbit.newton_max_iter") cfg.orbit.newton_max_iter = parse_int(key, val);
        else if (key == "newton.tol") cfg.newton.tol = parse_double(key, val);
        else if (key == "newton.max_iter") cfg.newton.max_iter = parse_int(key, val);
        else if (key == "output.dir") cfg.out_dir = val;
        else if (key == "output.plot_points") cfg.plot_points = parse_int(key, val);
        else throw ConfigError("config: unknown key '" + key + "' at line " + std::to_string(lineno));
    }
    cfg.validate();
    return cfg;
}

std::string PipelineConfig::to_text() const {
    std::ostringstream o;
    o << "manifold.K = " << manifold.K << "\n";
    o << "manifold.nu = " << shortest_repr(manifold.nu) << "\n";
    o << "manifold.scale_u = " << shortest_repr(manifold.scale_u) << "\n";
    o << "manifold.scale_s = " << shortest_repr(manifold.scale_s) << "\n";
    o << "manifold.R_factor = " << shortest_repr(manifold.R_factor) << "\n";
    o << "manifold.newton_tol = " << shortest_repr(manifold.newton_tol) << "\n";
    o << "orbit.K = " << orbit.K << "\n";
    o << "orbit.mu = " << shortest_repr(orbit.mu) << "\n";
    o << "orbit.tau = " << (orbit.tau_auto ? "auto" : shortest_repr(orbit.tau)) << "\n";
    o << "orbit.alpha0 = " << (orbit.alpha0_auto ? "auto" : shortest_repr(orbit.alpha0)) << "\n";
    o << "orbit.R_factor = " << shortest_repr(orbit.R_factor) << "\n";
    o << "orbit.rk_steps = " << orbit.rk_steps << "\n";
    o << "orbit.endpoint_tol = " << shortest_repr(orbit.endpoint_tol) << "\n";
    o << "orbit.entry_radius = " << shortest_repr(orbit.entry_radius) << "\n";
    o << "orbit.newton_tol = " << shortest_repr(orbit.newton_tol) << "\n";
    o << "orbit.newton_max_iter = " << orbit.newton_max_iter << "\n";
    o << "newton.tol = " << shortest_repr(newton.tol) << "\n";
    o << "newton.max_iter = " << newton.max_iter << "\n";
    o << "output.dir = " << out_dir << "\n";
    o << "output.plot_points = " << plot_points << "\n";
    return o.str();
}

} // namespace smproof
