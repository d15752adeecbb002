#include "crv/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace crv {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

RunConfig RunConfig::from_string(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (val.empty()) throw std::runtime_error("config key '" + key + "' has no value");
        try {
            if (key == "manifold") {
                if (val != "s3" && val != "heisenberg")
                    throw std::runtime_error("unknown manifold '" + val + "'");
                cfg.manifold = val;
            } else if (key == "lambda") {
                cfg.lambda = std::stod(val);
            } else if (key == "contact_scale") {
                cfg.contact_scale = std::stod(val);
            } else if (key == "n_radial") {
                cfg.n_radial = std::stoi(val);
            } else if (key == "n_angle") {
                cfg.n_angle = std::stoi(val);
            } else if (key == "heis_grid") {
                cfg.heis_grid = std::stoi(val);
            } else if (key == "truncation_order") {
                cfg.truncation_order = std::stoi(val);
            } else if (key == "seed") {
                cfg.seed = std::stoull(val);
            } else if (key == "out_dir") {
                cfg.out_dir = val;
            } else if (key == "tol_stokes") {
                cfg.tol_stokes = std::stod(val);
            } else if (key == "tol_conformal") {
                cfg.tol_conformal = std::stod(val);
            } else if (key == "tol_linear") {
                cfg.tol_linear = std::stod(val);
            } else {
                throw std::runtime_error("unknown config key '" + key + "'");
            }
        } catch (const std::invalid_argument&) {
            throw std::runtime_error("config key '" + key + "': bad value '" + val + "'");
        }
    }
    if (cfg.lambda <= 0 || cfg.contact_scale <= 0)
        throw std::runtime_error("config: lambda and contact_scale must be positive");
    if (cfg.tol_stokes <= 0 || cfg.tol_conformal <= 0 || cfg.tol_linear <= 0)
        throw std::runtime_error("config: tolerances must be positive");
    if (cfg.n_radial < 2 || cfg.n_angle < 2 || cfg.heis_grid < 2)
        throw std::runtime_error("config: grid resolutions must be at least 2");
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
}

std::unique_ptr<PseudoHermitian3> RunConfig::make_manifold() const {
    if (manifold == "heisenberg") return make_heisenberg({heis_grid});
    return make_sphere(sphere_params());
}

S3Params RunConfig::sphere_params() const {
    S3Params p;
    p.squash = lambda;
    p.contact_scale = contact_scale;
    p.n_radial = n_radial;
    p.n_angle = n_angle;
    return p;
}

}  // namespace crv
