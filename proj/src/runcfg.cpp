#include "lyap/runcfg.hpp"

#include "lyap/closed_form.hpp"
#include "lyap/fp_solver.hpp"
#include "lyap/model_maps.hpp"
#include "lyap/monte_carlo.hpp"
#include "lyap/perturbation.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>
#include <vector>

namespace lyap {

namespace {

using nlohmann::json;

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Tiny deterministic JSON writer: insertion-ordered keys, 17-digit numbers.
class JsonOut {
public:
    JsonOut& field(const std::string& k, double v) { return raw(k, num17(v)); }
    JsonOut& field(const std::string& k, long long v) { return raw(k, std::to_string(v)); }
    JsonOut& field(const std::string& k, bool v) { return raw(k, v ? "true" : "false"); }
    JsonOut& field(const std::string& k, const std::string& v) {
        return raw(k, "\"" + v + "\"");
    }
    JsonOut& object(const std::string& k, const JsonOut& v) { return raw(k, v.str()); }
    JsonOut& raw(const std::string& k, const std::string& v) {
        if (!first_) body_ += ",";
        first_ = false;
        body_ += "\"" + k + "\":" + v;
        return *this;
    }
    std::string str() const { return "{" + body_ + "}"; }

private:
    std::string body_;
    bool first_ = true;
};

DisorderModel model_from_preset(const json& j) {
    const std::string name = j.at("preset").get<std::string>();
    json args = j.value("preset_args", json::object());
    if (name == "hyperbolic_bm") return hyperbolic_bm_model(args.value("epsilon", 0.5));
    if (name == "zd_example1") return zd_to_model(zd_example1(args.value("sigma2", 1.0))).model;
    if (name == "zd_example2") return zd_to_model(zd_example2(args.value("sigma2", 1.0))).model;
    if (name == "elliptic_equal") {
        DisorderModel m;
        const double d = args.value("d", 1.0);
        m.set_cov(d, 0, 0, d, 0, 0);
        return m;
    }
    throw std::invalid_argument("unknown preset: " + name);
}

struct ParamRef {
    const char* name;
    void (*set)(DisorderModel&, double);
};

const ParamRef param_table[] = {
    {"alpha", [](DisorderModel& m, double v) { m.means.alpha = v; }},
    {"w", [](DisorderModel& m, double v) { m.means.w = v; }},
    {"u", [](DisorderModel& m, double v) { m.means.u = v; }},
    {"daa", [](DisorderModel& m, double v) { m.cov[0][0] = v; }},
    {"daw", [](DisorderModel& m, double v) { m.cov[0][1] = m.cov[1][0] = v; }},
    {"dau", [](DisorderModel& m, double v) { m.cov[0][2] = m.cov[2][0] = v; }},
    {"dww", [](DisorderModel& m, double v) { m.cov[1][1] = v; }},
    {"dwu", [](DisorderModel& m, double v) { m.cov[1][2] = m.cov[2][1] = v; }},
    {"duu", [](DisorderModel& m, double v) { m.cov[2][2] = v; }},
};

void set_param(DisorderModel& m, const std::string& name, double v) {
    for (const auto& p : param_table)
        if (name == p.name) {
            p.set(m, v);
            return;
        }
    throw std::invalid_argument("unknown sweep parameter: " + name);
}

struct Sweep {
    std::string param;
    double start = 0, stop = 0;
    int count = 0;
};

Sweep parse_sweep(const std::string& text) {
    Sweep s;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("sweep must be PARAM=START:STOP:N");
    s.param = text.substr(0, eq);
    const std::string rest = text.substr(eq + 1);
    const auto c1 = rest.find(':'), c2 = rest.rfind(':');
    if (c1 == std::string::npos || c2 == c1)
        throw std::invalid_argument("sweep must be PARAM=START:STOP:N");
    s.start = std::stod(rest.substr(0, c1));
    s.stop = std::stod(rest.substr(c1 + 1, c2 - c1 - 1));
    s.count = std::stoi(rest.substr(c2 + 1));
    if (s.count < 2) throw std::invalid_argument("sweep count must be >= 2");
    return s;
}

struct RouteOutcome {
    double gamma = 0.0, j = 0.0;
    double gamma_err = 0.0, j_err = 0.0;
    std::string family = "-";
    bool ok = false;
    std::string error;
};

RouteOutcome run_route(const DisorderModel& m, const std::string& route, const RunConfig& cfg) {
    RouteOutcome o;
    try {
        if (route == "closed") {
            ScalingEvaluation e = omega_closed(m);
            o.gamma = e.gamma();
            o.j = e.current();
            o.family = to_string(e.family);
        } else if (route == "fp") {
            DensityProfile d = stationary_density(m, cfg.grid);
            o.gamma = gamma_from_density(m, d);
            o.j = d.current;
            o.family = "fp";
        } else if (route == "mc") {
            McConfig mc;
            mc.n_steps = cfg.steps;
            mc.n_replicas = cfg.replicas;
            mc.seed = cfg.seed;
            McEstimate e = simulate_product(m, mc);
            o.gamma = e.gamma_hat;
            o.gamma_err = e.gamma_err;
            o.j = e.j_hat;
            o.j_err = e.j_err;
            o.family = "mc";
        } else if (route == "sde") {
            McConfig mc;
            mc.n_steps = cfg.steps;
            mc.n_replicas = cfg.replicas;
            mc.seed = cfg.seed;
            mc.dt = cfg.dt;
            SdeResult r = simulate_sde(m, mc);
            o.gamma = r.estimate.gamma_hat;
            o.gamma_err = r.estimate.gamma_err;
            o.j = r.estimate.j_hat;
            o.j_err = r.estimate.j_err;
            o.family = "sde";
        } else if (route == "expand") {
            cplx om = omega_weak(m, cfg.order);
            o.gamma = om.real();
            o.j = om.imag() / 3.141592653589793238462643383279502884;
            o.family = "series";
        } else {
            throw std::invalid_argument("unknown route: " + route);
        }
        o.ok = true;
    } catch (const std::exception& e) {
        o.error = e.what();
    }
    return o;
}

std::string scan_csv(const DisorderModel& base, const RunConfig& cfg) {
    const Sweep sw = parse_sweep(cfg.sweep);
    std::vector<double> values(sw.count);
    for (int i = 0; i < sw.count; ++i)
        values[i] = sw.start + (sw.stop - sw.start) * i / double(sw.count - 1);

    std::vector<std::future<RouteOutcome>> fut;
    fut.reserve(sw.count);
    for (int i = 0; i < sw.count; ++i)
        fut.push_back(std::async(std::launch::async, [&, i] {
            DisorderModel m = base;
            set_param(m, sw.param, values[i]);
            return run_route(m, cfg.route, cfg);
        }));

    std::string out = "param,value,gamma,j,family,route,stderr_gamma,stderr_j\n";
    for (int i = 0; i < sw.count; ++i) {
        RouteOutcome o = fut[i].get();
        out += sw.param + "," + num17(values[i]) + ",";
        if (o.ok)
            out += num17(o.gamma) + "," + num17(o.j) + "," + o.family + "," + cfg.route + "," +
                   num17(o.gamma_err) + "," + num17(o.j_err);
        else
            out += "nan,nan,error," + cfg.route + ",nan,nan";
        out += "\n";
    }
    return out;
}

std::string scan_json(const DisorderModel& base, const RunConfig& cfg) {
    const Sweep sw = parse_sweep(cfg.sweep);
    std::string out = "[";
    for (int i = 0; i < sw.count; ++i) {
        const double v = sw.start + (sw.stop - sw.start) * i / double(sw.count - 1);
        DisorderModel m = base;
        set_param(m, sw.param, v);
        RouteOutcome o = run_route(m, cfg.route, cfg);
        JsonOut row;
        row.field("param", std::string(sw.param)).field("value", v);
        row.field("gamma", o.gamma).field("j", o.j).field("family", o.family);
        row.field("route", cfg.route);
        row.field("stderr_gamma", o.gamma_err).field("stderr_j", o.j_err);
        out += (i ? ",\n " : "") + row.str();
    }
    return out + "]\n";
}

} // namespace

DisorderModel parse_model_json(const std::string& text) {
    json j = json::parse(text);
    DisorderModel m;
    if (j.contains("preset")) {
        m = model_from_preset(j);
    }
    if (j.contains("means")) {
        const json& mm = j.at("means");
        m.means.alpha = mm.value("alpha", m.means.alpha);
        m.means.w = mm.value("w", m.means.w);
        m.means.u = mm.value("u", m.means.u);
    }
    if (j.contains("cov")) {
        const json& c = j.at("cov");
        if (!c.is_array() || c.size() != 3)
            throw std::invalid_argument("cov must be a 3x3 array");
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) m.cov[i][k] = c.at(i).at(k).get<double>();
    }
    m.validate();
    return m;
}

RunResult run(const RunConfig& cfg) {
    RunResult res;
    try {
        std::string text = cfg.config_json;
        if (!cfg.config_path.empty()) {
            std::ifstream in(cfg.config_path);
            if (!in) throw std::invalid_argument("cannot open config: " + cfg.config_path);
            std::stringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        }
        if (text.empty()) throw std::invalid_argument("no model configuration given");
        const DisorderModel m = parse_model_json(text);

        if (cfg.command == "omega") {
            ScalingEvaluation e =
                cfg.route == "closed" ? omega_closed(m) : ScalingEvaluation{};
            RouteOutcome o = run_route(m, cfg.route, cfg);
            if (!o.ok) throw std::runtime_error(o.error);
            JsonOut out;
            out.field("command", std::string("omega")).field("route", cfg.route);
            out.field("gamma", o.gamma).field("j", o.j);
            out.field("stderr_gamma", o.gamma_err).field("stderr_j", o.j_err);
            out.field("family", o.family);
            if (cfg.route == "closed") out.field("mirrored", e.mirrored);
            res.output = out.str() + "\n";
        } else if (cfg.command == "classify") {
            CoefficientSet cs = build_coefficients(m);
            ZeroPattern zp = classify_zeros(cs);
            std::string family = "unsupported";
            try {
                family = to_string(omega_closed(m).family);
            } catch (const std::exception&) {
            }
            JsonOut out;
            out.field("command", std::string("classify"));
            out.field("label", to_string(zp.label));
            out.field("family", family);
            out.field("infinity_multiplicity", (long long)zp.multiplicity_at_infinity);
            std::string zeros = "[";
            for (size_t i = 0; i < zp.distinct.size(); ++i) {
                if (i) zeros += ",";
                zeros += "[" + num17(zp.distinct[i].real()) + "," + num17(zp.distinct[i].imag()) +
                         "," + std::to_string(zp.multiplicities[i]) + "]";
            }
            out.raw("zeros", zeros + "]");
            res.output = out.str() + "\n";
        } else if (cfg.command == "expand") {
            JsonOut out;
            out.field("command", std::string("expand")).field("order", (long long)cfg.order);
            const cplx o0 = omega_weak(m, 0);
            out.field("omega0_re", o0.real()).field("omega0_im", o0.imag());
            if (cfg.order >= 2) {
                const cplx o2 = omega_weak_second(m);
                out.field("omega2_re", o2.real()).field("omega2_im", o2.imag());
            }
            if (cfg.order >= 4) {
                const cplx o4 = omega_weak_fourth(m);
                out.field("omega4_re", o4.real()).field("omega4_im", o4.imag());
            }
            const cplx tot = omega_weak(m, cfg.order);
            out.field("gamma", tot.real())
                .field("j", tot.imag() / 3.141592653589793238462643383279502884);
            res.output = out.str() + "\n";
        } else if (cfg.command == "mc" || cfg.command == "sde" || cfg.command == "fp") {
            RouteOutcome o = run_route(m, cfg.command, cfg);
            if (!o.ok) throw std::runtime_error(o.error);
            JsonOut out;
            out.field("command", cfg.command);
            out.field("gamma", o.gamma).field("j", o.j);
            out.field("stderr_gamma", o.gamma_err).field("stderr_j", o.j_err);
            if (cfg.command != "fp") out.field("seed", (long long)cfg.seed);
            res.output = out.str() + "\n";
        } else if (cfg.command == "validate") {
            const char* routes[] = {"closed", "fp", "expand", "mc", "sde"};
            JsonOut out;
            out.field("command", std::string("validate"));
            double gmin = 1e300, gmax = -1e300;
            std::string warnings;
            for (const char* r : routes) {
                RouteOutcome o = run_route(m, r, cfg);
                JsonOut sub;
                if (o.ok) {
                    sub.field("gamma", o.gamma).field("j", o.j);
                    sub.field("stderr_gamma", o.gamma_err).field("stderr_j", o.j_err);
                    gmin = std::min(gmin, o.gamma);
                    gmax = std::max(gmax, o.gamma);
                } else {
                    sub.field("error", o.error);
                    warnings += std::string(r) + ": " + o.error + "; ";
                }
                out.object(r, sub);
            }
            out.field("max_pairwise_delta_gamma", gmax > gmin ? gmax - gmin : 0.0);
            if (!warnings.empty()) out.field("warnings", warnings);
            res.output = out.str() + "\n";
        } else if (cfg.command == "scan") {
            if (cfg.sweep.empty()) throw std::invalid_argument("scan requires --sweep");
            res.output = cfg.format == "csv" ? scan_csv(m, cfg) : scan_json(m, cfg);
        } else {
            throw std::invalid_argument("unknown command: " + cfg.command);
        }
    } catch (const unsupported_family& e) {
        res.status = 3;
        res.error = e.what();
        return res;
    } catch (const std::exception& e) {
        res.status = 2;
        res.error = e.what();
        return res;
    }

    if (!cfg.out_path.empty()) {
        std::ofstream out(cfg.out_path, std::ios::binary);
        if (!out) {
            res.status = 2;
            res.error = "cannot write: " + cfg.out_path;
            return res;
        }
        out << res.output;
    }
    return res;
}

} // namespace lyap
